#include <gtest/gtest.h>

#include <random>
#include <stdexcept>

#include "opident/exactnum.hpp"
#include "random_elems.hpp"

using namespace opident;

TEST(Rational, CanonicalForm) {
  const Rational q(6, -4);
  EXPECT_EQ(q.numerator(), -3);
  EXPECT_EQ(q.denominator(), 2);
  EXPECT_EQ(Rational(0, 7).denominator(), 1);
  EXPECT_TRUE(Rational(0, -5).is_zero());
  EXPECT_EQ(q.to_string(), "-3/2");
}

TEST(Rational, ZeroDenominatorThrows) {
  EXPECT_THROW(Rational(1, 0), std::domain_error);
  EXPECT_THROW(Rational(0).inverse(), std::domain_error);
  EXPECT_THROW(Rational(3) / Rational(0), std::domain_error);
}

TEST(Rational, Parse) {
  EXPECT_EQ(Rational::parse("3/2"), Rational(3, 2));
  EXPECT_EQ(Rational::parse("-10/4"), Rational(-5, 2));
  EXPECT_EQ(Rational::parse("7"), Rational(7));
  EXPECT_THROW(Rational::parse("1/0"), std::exception);
  EXPECT_THROW(Rational::parse("x"), std::invalid_argument);
  EXPECT_THROW(Rational::parse(""), std::invalid_argument);
}

TEST(Rational, BigValuesStayExact) {
  Rational f(1);
  for (long i = 1; i <= 40; ++i) f *= Rational(i);
  EXPECT_EQ(f.to_string(), "815915283247897734345611269596115894272000000000");
  EXPECT_EQ(f / f, Rational(1));
}

TEST(Rational, FieldAxiomsOnRandomValues) {
  proptest::RandomElems rnd(11);
  for (int trial = 0; trial < 500; ++trial) {
    const Rational a = rnd.rational(), b = rnd.rational(), c = rnd.rational();
    EXPECT_TRUE((a + (-a)).is_zero());
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    if (!a.is_zero()) EXPECT_TRUE((a * a.inverse()).is_one());
  }
}

TEST(Binomial, Examples) {
  EXPECT_EQ(binomial(4, 2), 6);
  EXPECT_EQ(binomial(7, 0), 1);
  EXPECT_EQ(binomial(5, 2), 10);
  EXPECT_EQ(binomial(5, 2), binomial(4, 1) + binomial(4, 2));
  EXPECT_EQ(binomial(3, 5), 0);
  EXPECT_EQ(binomial(0, 0), 1);
}

TEST(Binomial, MatchesPascalTriangle) {
  std::vector<std::vector<unsigned long long>> row{{1}};
  for (unsigned n = 1; n <= 60; ++n) {
    std::vector<unsigned long long> next(n + 1, 1);
    for (unsigned k = 1; k < n; ++k) next[k] = row.back()[k - 1] + row.back()[k];
    row.push_back(next);
  }
  for (unsigned n = 0; n <= 60; ++n) {
    for (unsigned k = 0; k <= n + 2; ++k) {
      const unsigned long long want = k <= n ? row[n][k] : 0;
      EXPECT_EQ(binomial(n, k), BigInt(std::to_string(want))) << n << " " << k;
    }
  }
}

TEST(LambdaPoly, CanonicalTrailingZeros) {
  const LambdaPoly p({Rational(1), Rational(0), Rational(0)});
  EXPECT_EQ(p.degree(), 0);
  EXPECT_EQ(LambdaPoly(std::vector<Rational>{Rational(0)}).degree(), -1);
  EXPECT_TRUE((LambdaPoly::lambda() - LambdaPoly::lambda()).is_zero());
  EXPECT_EQ(p.coefficient(5), Rational(0));
}

TEST(LambdaPoly, Substitute) {
  const LambdaPoly l = LambdaPoly::lambda();
  EXPECT_EQ(lpoly_substitute(l * l - LambdaPoly(1), Rational(1)), Rational(0));
  EXPECT_EQ(lpoly_substitute(LambdaPoly(3), Rational(17, 2)), Rational(3));
  EXPECT_EQ(lpoly_substitute(LambdaPoly(2) * l + LambdaPoly(Rational(1, 2)), Rational(1, 4)), Rational(1));
  EXPECT_EQ(lpoly_substitute(LambdaPoly(), Rational(5)), Rational(0));
}

TEST(LambdaPoly, Rendering) {
  const LambdaPoly l = LambdaPoly::lambda();
  EXPECT_EQ((l * l * Rational(3, 2) - l + LambdaPoly(2)).to_string(), "3/2*L^2 - L + 2");
  EXPECT_EQ(LambdaPoly().to_string(), "0");
}

TEST(LambdaPoly, DegreeAndSubstitutionHomomorphism) {
  proptest::RandomElems rnd(12);
  for (int trial = 0; trial < 300; ++trial) {
    const LambdaPoly p = rnd.lpoly(4), q = rnd.lpoly(4);
    const Rational v = rnd.rational();
    if (!p.is_zero() && !q.is_zero()) EXPECT_EQ((p * q).degree(), p.degree() + q.degree());
    EXPECT_EQ(lpoly_substitute(p * q, v), lpoly_substitute(p, v) * lpoly_substitute(q, v));
    EXPECT_EQ(lpoly_substitute(p + q, v), lpoly_substitute(p, v) + lpoly_substitute(q, v));
    EXPECT_EQ(p * (q + p), p * q + p * p);
  }
}
