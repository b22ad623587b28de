#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "opident/radon/radon.hpp"

using namespace opident;
using namespace opident::radon;

namespace {

constexpr double kPi = std::numbers::pi;

Phantom unit_disk(int size = 256, double cx = 0.0) {
  const std::vector<Ellipse> s{disk(cx, 0.0, 1.0)};
  return phantom_make(s, size, size, 1.5);
}

double peak(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TEST(Phantom, MassOfDisks) {
  EXPECT_NEAR(unit_disk().mass(), kPi, 0.01 * kPi);
  const std::vector<Ellipse> two{disk(-0.6, 0.0, 0.4), disk(0.5, 0.3, 0.5, 2.0)};
  const double want = kPi * 0.16 + 2.0 * kPi * 0.25;
  EXPECT_NEAR(phantom_make(two, 256, 256, 1.5).mass(), want, 0.01 * want);
  const std::vector<Ellipse> rotated{Ellipse{0.1, -0.2, 0.9, 0.3, 0.7, 1.0}};
  EXPECT_NEAR(phantom_make(rotated, 256, 256, 1.5).mass(), kPi * 0.27, 0.01 * kPi * 0.27);
}

TEST(Phantom, EmptyAndErrors) {
  const Phantom z = phantom_make({}, 32, 16, 1.0);
  EXPECT_EQ(peak(z.values()), 0.0);
  EXPECT_EQ(z.width(), 32);
  EXPECT_THROW(phantom_make({}, 15, 32, 1.0), std::invalid_argument);
  const std::vector<Ellipse> outside{disk(0.0, 0.0, 1.6)};
  EXPECT_THROW(phantom_make(outside, 64, 64, 1.5), std::invalid_argument);
  const std::vector<Ellipse> edge{disk(0.0, 0.0, 1.49)};  // inside the extent but within a pixel of it
  EXPECT_THROW(phantom_make(edge, 64, 64, 1.5), std::invalid_argument);
  const std::vector<Ellipse> flat{Ellipse{0, 0, 0.0, 0.5, 0, 1}};
  EXPECT_THROW(phantom_make(flat, 64, 64, 1.5), std::invalid_argument);
}

TEST(Phantom, Deterministic) {
  const auto shapes = demo_shapes();
  const Phantom a = phantom_make(shapes, 64, 64, 1.5);
  const Phantom b = phantom_make(shapes, 64, 64, 1.5);
  EXPECT_TRUE(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
}

TEST(Forward, ChordLengthOfCenteredDisk) {
  const Phantom p = unit_disk();
  const Sinogram g = radon_forward(p, 72, 151, 0.0);
  for (int i = 0; i < g.n_angles(); ++i) {
    for (int j = 0; j < g.n_offsets(); ++j) {
      const double s = g.offset(j);
      if (std::abs(s) > 0.95) continue;
      const double chord = 2.0 * std::sqrt(1.0 - s * s);
      EXPECT_NEAR(g.at(i, j), chord, 0.02 * chord) << i << " " << j;
    }
  }
}

TEST(Forward, ExponentialChordOfCenteredDisk) {
  const Phantom p = unit_disk();
  for (double mu : {0.5, 1.0}) {
    const Sinogram g = radon_forward(p, 36, 101, mu);
    for (int i = 0; i < g.n_angles(); ++i) {
      for (int j = 0; j < g.n_offsets(); ++j) {
        const double s = g.offset(j);
        if (std::abs(s) > 0.95) continue;
        const double want = 2.0 * std::sinh(mu * std::sqrt(1.0 - s * s)) / mu;
        EXPECT_NEAR(g.at(i, j), want, 0.02 * want);
      }
    }
  }
}

TEST(Forward, ZeroPhantomAndBadArguments) {
  const Phantom z = phantom_make({}, 32, 32, 1.0);
  EXPECT_EQ(peak(radon_forward(z, 8, 9, 0.3).values()), 0.0);
  EXPECT_THROW(radon_forward(z, 8, 9, -0.1), std::invalid_argument);
  EXPECT_THROW(radon_forward(z, 0, 9, 0.0), std::invalid_argument);
}

TEST(Forward, SameResultEveryRun) {
  const auto shapes = demo_shapes();
  const Phantom p = phantom_make(shapes, 96, 96, 1.5);
  const Sinogram a = radon_forward(p, 90, 97, 0.4);
  const Sinogram b = radon_forward(p, 90, 97, 0.4);
  EXPECT_TRUE(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
}

TEST(Forward, Linearity) {
  const std::vector<Ellipse> s1{disk(0.2, -0.1, 0.5)};
  const auto s2 = demo_shapes();
  const Phantom p1 = phantom_make(s1, 96, 96, 1.5);
  const Phantom p2 = phantom_make(s2, 96, 96, 1.5);
  const double alpha = -1.75;
  for (double mu : {0.0, 0.6}) {
    const Sinogram lhs = radon_forward(phantom_axpy(alpha, p1, p2), 60, 81, mu);
    const Sinogram g1 = radon_forward(p1, 60, 81, mu);
    const Sinogram g2 = radon_forward(p2, 60, 81, mu);
    const double scale = peak(lhs.values());
    for (std::size_t i = 0; i < lhs.values().size(); ++i) {
      EXPECT_NEAR(lhs.values()[i], alpha * g1.values()[i] + g2.values()[i], 1e-12 * scale);
    }
  }
}

TEST(Forward, RotationShiftsAngles) {
  const int n_angles = 120;
  const int shift = 10;
  const double delta = 2.0 * kPi * shift / n_angles;
  std::vector<Ellipse> base{Ellipse{0.3, 0.1, 0.5, 0.25, 0.3, 1.0}, disk(-0.3, -0.35, 0.2, 0.5)};
  std::vector<Ellipse> turned;
  for (Ellipse e : base) {
    const double cx = std::cos(delta) * e.cx - std::sin(delta) * e.cy;
    const double cy = std::sin(delta) * e.cx + std::cos(delta) * e.cy;
    e.cx = cx;
    e.cy = cy;
    e.rotation += delta;
    turned.push_back(e);
  }
  const Sinogram g = radon_forward(phantom_make(base, 192, 192, 1.5), n_angles, 121, 0.0);
  const Sinogram h = radon_forward(phantom_make(turned, 192, 192, 1.5), n_angles, 121, 0.0);
  const double scale = peak(g.values());
  double worst = 0.0;
  for (int i = 0; i < n_angles; ++i) {
    for (int j = 0; j < g.n_offsets(); ++j) {
      worst = std::max(worst, std::abs(h.at((i + shift) % n_angles, j) - g.at(i, j)));
    }
  }
  EXPECT_LT(worst / scale, 2e-2);
}

TEST(Evenness, Residuals) {
  const Sinogram disk_g = radon_forward(unit_disk(), 360, 363, 0.0);
  EXPECT_LT(check_evenness(disk_g), 1e-3);
  const auto shapes = demo_shapes();
  const Phantom p = phantom_make(shapes, 128, 128, 1.5);
  const Sinogram g = radon_forward(p, 180, 129, 0.0);
  EXPECT_LT(check_evenness(g), 1e-2);
  // odd angle count: the partner angle is interpolated, which costs accuracy
  EXPECT_LT(check_evenness(radon_forward(p, 181, 129, 0.0)), 5e-2);

  Sinogram bad = g;
  const double top = peak(bad.values());
  bad.at(17, 64) += 0.1 * top;
  EXPECT_GE(check_evenness(bad), 0.05);

  EXPECT_THROW(check_evenness(radon_forward(p, 8, 9, 0.5)), std::invalid_argument);
  EXPECT_EQ(check_evenness(radon_forward(phantom_make({}, 16, 16, 1.0), 8, 9, 0.0)), 0.0);
}

TEST(Moments, UnitDiskFromSinogram) {
  const MomentTable t = moments_from_sinogram(radon_forward(unit_disk(), 180, 363, 0.0), 2);
  for (int i = 0; i < 180; ++i) {
    EXPECT_NEAR(t.moments[0][i], kPi, 0.01 * kPi);
    EXPECT_NEAR(t.moments[1][i], 0.0, 1e-9);
    EXPECT_NEAR(t.moments[2][i], kPi / 4, 0.01 * kPi / 4);
  }
  EXPECT_LT(t.leakage[0], 1e-3);
  EXPECT_EQ(t.leakage[1], 0.0);  // numerically zero moment
  EXPECT_THROW(moments_from_sinogram(radon_forward(unit_disk(64), 8, 9, 0.0), -1), std::invalid_argument);
}

TEST(Moments, Direct) {
  const MomentTable t = moments_direct(unit_disk(), 1, 90);
  for (int i = 0; i < 90; ++i) {
    EXPECT_NEAR(t.moments[0][i], kPi, 0.01 * kPi);
    EXPECT_NEAR(t.moments[1][i], 0.0, 1e-12);
  }
  const double c = 0.3;
  const Phantom off = unit_disk(256, c);
  const MomentTable o = moments_direct(off, 1, 90);
  for (int i = 0; i < 90; ++i) {
    EXPECT_NEAR(o.moments[1][i], off.mass() * c * std::cos(o.angles[i]), 1e-3);
  }
  EXPECT_LT(o.leakage[1], 1e-6);
}

TEST(Moments, LeakageOnMonomialBasis) {
  // cos^a sin^b with a + b = k is a degree-k homogeneous polynomial on the circle
  const int n = 64;
  for (int k = 0; k <= 5; ++k) {
    for (int a = 0; a <= k; ++a) {
      std::vector<double> v(n);
      for (int i = 0; i < n; ++i) {
        const double th = 2 * kPi * i / n;
        v[i] = std::pow(std::cos(th), a) * std::pow(std::sin(th), k - a);
      }
      std::vector<std::vector<double>> moments(k + 1, std::vector<double>(n, 0.0));
      moments[k] = v;
      EXPECT_LT(moment_leakage(moments, {})[k], 1e-24) << k << " " << a;
      // the same function is not degree k + 1 (wrong parity) nor k - 2 when it has top frequency k
      if (k >= 1) {
        moments.emplace_back(v);
        EXPECT_GT(moment_leakage(moments, {})[k + 1], 0.99);
      }
    }
  }
  std::vector<std::vector<double>> deg3(4, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) deg3[1][i] = std::pow(std::cos(2 * kPi * i / n), 3);
  // cos^3 = (3 cos + cos 3t) / 4, so a tenth of its energy sits at frequency 3
  EXPECT_NEAR(moment_leakage(deg3, {})[1], 0.1, 1e-12);
}

TEST(Moments, SinogramAgreesWithDirect) {
  const auto shapes = demo_shapes();
  const Phantom p = phantom_make(shapes, 256, 256, 1.5);
  const MomentTable a = moments_from_sinogram(radon_forward(p, 360, 363, 0.0), 4);
  const MomentTable b = moments_direct(p, 4, 360);
  EXPECT_LT(moment_discrepancy(a, b, p.mass()), 2e-2);
}

TEST(RangeCheck, ClassicalPasses) {
  const Phantom p = unit_disk();
  const VerificationReport r = range_check(radon_forward(p, 360, 363, 0.0), 4, &p);
  EXPECT_EQ(r.outcome, Outcome::Pass) << to_human(r);
  for (int k = 0; k <= 4; ++k) EXPECT_LT(std::get<double>(r.params.at("leakage_k" + std::to_string(k))), 1e-2);
}

TEST(RangeCheck, AttenuatedDataLeaks) {
  const Phantom p = unit_disk(256, 0.3);
  const VerificationReport r = range_check(radon_forward(p, 360, 363, 0.5), 4, &p);
  EXPECT_EQ(r.outcome, Outcome::Pass) << to_human(r);
  const VerificationReport missing = range_check(radon_forward(p, 36, 63, 0.5), 4);
  EXPECT_EQ(missing.outcome, Outcome::Fail);
}

TEST(RangeCheck, ZeroSinogramPassesTrivially) {
  const Sinogram z(36, 31, 1.0, 0.0, std::vector<double>(36 * 31, 0.0));
  const VerificationReport r = range_check(z, 4);
  EXPECT_EQ(r.outcome, Outcome::Pass);
  EXPECT_EQ(std::get<double>(r.params.at("max_leakage")), 0.0);
}

TEST(Kernels, ScalarAndAvx2Agree) {
  if (!kernels::cpu_supports(kernels::Isa::Avx2)) GTEST_SKIP() << "no AVX2 on this CPU or build";
  const auto& scalar = kernels::table(kernels::Isa::Scalar);
  const auto& avx2 = kernels::table(kernels::Isa::Avx2);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<double> data(37 * 29);
  for (auto& x : data) x = uni(rng);
  const kernels::ImageView img{data, 37, 29};
  for (int trial = 0; trial < 500; ++trial) {
    kernels::LineSamples line;
    line.col0 = 18 + 30 * uni(rng);
    line.row0 = 14 + 25 * uni(rng);
    line.dcol = uni(rng);
    line.drow = uni(rng);
    line.t0 = uni(rng);
    line.dt = 0.05 * (1 + uni(rng));
    line.mu = trial % 2 == 0 ? 0.0 : 0.8 * uni(rng);
    line.count = trial % 70;
    const double a = scalar.line_integral(img, line);
    const double b = avx2.line_integral(img, line);
    EXPECT_NEAR(a, b, 1e-12 * std::max(1.0, std::abs(a))) << trial;
  }
  const kernels::PixelGrid grid{-1.0, 2.0 / 37, -1.0, 2.0 / 29};
  for (double mu : {0.0, 0.7}) {
    for (int k_max : {0, 3, 6, 40}) {
      std::vector<double> a(k_max + 1), b(k_max + 1);
      scalar.projected_moments(img, grid, std::cos(0.4), std::sin(0.4), mu, k_max, a.data());
      avx2.projected_moments(img, grid, std::cos(0.4), std::sin(0.4), mu, k_max, b.data());
      for (int k = 0; k <= k_max; ++k) EXPECT_NEAR(a[k], b[k], 1e-11 * std::max(1.0, std::abs(a[k])));
    }
  }
}

TEST(Kernels, ForwardProjectionSameOnEveryIsa) {
  if (!kernels::cpu_supports(kernels::Isa::Avx2)) GTEST_SKIP() << "no AVX2 on this CPU or build";
  const auto shapes = demo_shapes();
  const Phantom p = phantom_make(shapes, 128, 128, 1.5);
  for (double mu : {0.0, 0.5}) {
    const Sinogram a = radon_forward(p, 45, 65, mu, kernels::Isa::Scalar);
    const Sinogram b = radon_forward(p, 45, 65, mu, kernels::Isa::Avx2);
    const double scale = peak(a.values());
    for (std::size_t i = 0; i < a.values().size(); ++i) EXPECT_NEAR(a.values()[i], b.values()[i], 1e-12 * scale);
    const MomentTable ma = moments_direct(p, 4, 45, mu, kernels::Isa::Scalar);
    const MomentTable mb = moments_direct(p, 4, 45, mu, kernels::Isa::Avx2);
    for (int k = 0; k <= 4; ++k) {
      for (int i = 0; i < 45; ++i) EXPECT_NEAR(ma.moments[k][i], mb.moments[k][i], 1e-11);
    }
  }
}

TEST(Io, CsvRoundTrip) {
  const auto shapes = demo_shapes();
  const Phantom p = phantom_make(shapes, 32, 24, 1.5);
  std::stringstream ps;
  write_csv(ps, p);
  const Phantom q = read_phantom_csv(ps);
  EXPECT_EQ(q.width(), 32);
  EXPECT_EQ(q.height(), 24);
  EXPECT_TRUE(std::equal(p.values().begin(), p.values().end(), q.values().begin()));

  const Sinogram g = radon_forward(p, 12, 17, 0.25);
  std::stringstream gs;
  write_csv(gs, g);
  EXPECT_EQ(gs.str().substr(0, 2), "# ");
  const Sinogram h = read_sinogram_csv(gs);
  EXPECT_EQ(h.mu(), 0.25);
  EXPECT_EQ(h.n_angles(), 12);
  EXPECT_TRUE(std::equal(g.values().begin(), g.values().end(), h.values().begin()));
}

TEST(Io, MalformedCsv) {
  std::stringstream no_header("1,2\n");
  EXPECT_THROW(read_sinogram_csv(no_header), std::runtime_error);
  std::stringstream short_row("# 2 3 1 0\n1,2,3\n4,5\n");
  EXPECT_THROW(read_sinogram_csv(short_row), std::runtime_error);
  std::stringstream junk("# 1 2 1 0\n1,abc\n");
  EXPECT_THROW(read_sinogram_csv(junk), std::runtime_error);
}

TEST(Io, MomentTableJson) {
  const MomentTable t = moments_from_sinogram(radon_forward(unit_disk(64), 8, 33, 0.0), 2);
  const auto j = to_json(t);
  EXPECT_EQ(j["k_max"], 2);
  EXPECT_EQ(j["moments"].size(), 3u);
  EXPECT_EQ(j["leakage"].size(), 3u);
  EXPECT_EQ(j["angles"].size(), 8u);
}
