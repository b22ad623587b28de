#include "opident/jetoracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace opident {

namespace {

double binom(unsigned n, unsigned k) {
  double r = 1.0;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

constexpr double kTiny = 1e-300;

}  // namespace

Jet::Jet(Complex base_point, std::vector<Complex> coefficients) : base_(base_point), c_(std::move(coefficients)) {
  if (c_.empty()) throw std::invalid_argument("Jet: at least one coefficient required");
}

Jet Jet::constant(Complex base_point, Complex value, std::size_t order) {
  std::vector<Complex> c(order + 1);
  c[0] = value;
  return Jet(base_point, std::move(c));
}

Jet Jet::truncated(std::size_t new_order) const {
  if (new_order >= order()) return *this;
  return Jet(base_, std::vector<Complex>(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(new_order) + 1));
}

Jet Jet::derivative() const {
  if (order() == 0) throw std::domain_error("Jet: cannot differentiate an order-0 jet");
  std::vector<Complex> d(order());
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = static_cast<double>(k + 1) * c_[k + 1];
  return Jet(base_, std::move(d));
}

Jet operator+(const Jet& a, const Jet& b) {
  const std::size_t n = std::min(a.order(), b.order());
  std::vector<Complex> c(n + 1);
  for (std::size_t k = 0; k <= n; ++k) c[k] = a.c_[k] + b.c_[k];
  return Jet(a.base_, std::move(c));
}

Jet operator-(const Jet& a, const Jet& b) {
  const std::size_t n = std::min(a.order(), b.order());
  std::vector<Complex> c(n + 1);
  for (std::size_t k = 0; k <= n; ++k) c[k] = a.c_[k] - b.c_[k];
  return Jet(a.base_, std::move(c));
}

Jet operator*(const Jet& a, const Jet& b) {
  const std::size_t n = std::min(a.order(), b.order());
  std::vector<Complex> c(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    Complex s = 0.0;
    for (std::size_t i = 0; i <= k; ++i) s += a.c_[i] * b.c_[k - i];
    c[k] = s;
  }
  return Jet(a.base_, std::move(c));
}

Jet operator*(Complex s, const Jet& a) {
  Jet r = a;
  for (auto& x : r.c_) x *= s;
  return r;
}

ConcreteFunction ConcreteFunction::sin() { return {FunctionId::Sin, {1.0, 0.0}, {0.0, 1.0}, 2}; }
ConcreteFunction ConcreteFunction::cos() { return {FunctionId::Cos, {1.0, 0.0}, {0.0, 1.0}, 2}; }
ConcreteFunction ConcreteFunction::exp_a(Complex a) { return {FunctionId::ExpA, a, a, 1}; }
ConcreteFunction ConcreteFunction::exp_a_reversed(Complex a) { return {FunctionId::ExpA, a, -a, 1}; }
ConcreteFunction ConcreteFunction::linear() { return {FunctionId::Linear, {1.0, 0.0}, {0.0, 0.0}, 2}; }
ConcreteFunction ConcreteFunction::gaussian_half() {
  return {FunctionId::GaussianHalf, {1.0, 0.0}, {0.0, 0.0}, 0};
}
ConcreteFunction ConcreteFunction::cube_root_mix() {
  return {FunctionId::CubeRootMix, {1.0, 0.0}, {1.0, 0.0}, 3};
}

FunctionId function_from_name(std::string_view name) {
  if (name == "sin") return FunctionId::Sin;
  if (name == "cos") return FunctionId::Cos;
  if (name == "exp") return FunctionId::ExpA;
  if (name == "linear") return FunctionId::Linear;
  if (name == "gaussian") return FunctionId::GaussianHalf;
  if (name == "cuberoot") return FunctionId::CubeRootMix;
  throw std::invalid_argument("unknown concrete function '" + std::string(name) + "'");
}

Jet jet_of(const ConcreteFunction& f, double x0, std::size_t order) {
  if (order == 0) throw std::invalid_argument("jet_of: order must be at least 1");
  std::vector<Complex> c(order + 1);
  double inv_fact = 1.0;
  switch (f.id) {
    case FunctionId::Sin:
    case FunctionId::Cos: {
      const double s = std::sin(x0);
      const double co = std::cos(x0);
      // derivative cycle of sin: sin, cos, -sin, -cos
      const double cycle[4] = {s, co, -s, -co};
      const std::size_t shift = f.id == FunctionId::Cos ? 1 : 0;
      for (std::size_t k = 0; k <= order; ++k) {
        if (k > 0) inv_fact /= static_cast<double>(k);
        c[k] = cycle[(k + shift) % 4] * inv_fact;
      }
      break;
    }
    case FunctionId::ExpA: {
      const Complex e = std::exp(f.a * x0);
      Complex ak = 1.0;
      for (std::size_t k = 0; k <= order; ++k) {
        if (k > 0) {
          inv_fact /= static_cast<double>(k);
          ak *= f.a;
        }
        c[k] = ak * e * inv_fact;
      }
      break;
    }
    case FunctionId::Linear:
      c[0] = x0;
      c[1] = 1.0;
      break;
    case FunctionId::GaussianHalf: {
      // d^k/dx^k e^(-x^2/2) = (-1)^k He_k(x) e^(-x^2/2)
      const double g = std::exp(-0.5 * x0 * x0);
      double he_prev = 1.0;
      double he = x0;
      for (std::size_t k = 0; k <= order; ++k) {
        if (k > 0) inv_fact /= static_cast<double>(k);
        double hk;
        if (k == 0) {
          hk = 1.0;
        } else if (k == 1) {
          hk = x0;
        } else {
          const double next = x0 * he - static_cast<double>(k - 1) * he_prev;
          he_prev = he;
          he = next;
          hk = he;
        }
        c[k] = ((k % 2 == 0) ? 1.0 : -1.0) * hk * g * inv_fact;
      }
      break;
    }
    case FunctionId::CubeRootMix: {
      const Complex roots[3] = {Complex(1.0, 0.0), std::polar(1.0, 2.0 * std::numbers::pi / 3.0),
                                std::polar(1.0, 4.0 * std::numbers::pi / 3.0)};
      Complex powers[3] = {1.0, 1.0, 1.0};
      for (std::size_t k = 0; k <= order; ++k) {
        if (k > 0) inv_fact /= static_cast<double>(k);
        Complex s = 0.0;
        for (int j = 0; j < 3; ++j) {
          s += powers[j] * std::exp(roots[j] * x0);
          powers[j] *= roots[j];
        }
        c[k] = s * inv_fact;
      }
      break;
    }
    default:
      throw std::invalid_argument("jet_of: unknown function id");
  }
  return Jet(Complex(x0, 0.0), std::move(c));
}

namespace {

NumericResidual finish(Complex sum, double scale) {
  NumericResidual r;
  r.absolute = std::abs(sum);
  r.scale = std::max(scale, kTiny);
  r.relative = r.absolute / r.scale;
  return r;
}

Jet power(const Jet& u, unsigned e) {
  Jet r = Jet::constant(u.base_point(), 1.0, u.order());
  for (unsigned i = 0; i < e; ++i) r = r * u;
  return r;
}

}  // namespace

NumericResidual eval_identity_numeric(const ConcreteFunction& f, unsigned n, double x0) {
  const Jet u = jet_of(f, x0, n + 2);
  const Complex lambda = f.lambda_value;
  Complex sum = 0.0;
  double scale = 0.0;
  for (unsigned k = 0; k <= n; ++k) {
    Jet g = power(u, n - k);
    // innermost factor (D - u + (k-1) lambda) first
    for (unsigned j = k; j-- > 0;) {
      g = g.derivative() - u * g + (static_cast<double>(j) * lambda) * g;
    }
    const Complex term = binom(n, k) * g.value();
    scale = std::max(scale, std::abs(term));
    sum += term;
  }
  return finish(sum, scale);
}

NumericResidual eval_general_numeric(const ConcreteFunction& f, unsigned n, unsigned m, double x0) {
  const Jet u = jet_of(f, x0, n + m + 2);
  Complex sum = 0.0;
  double scale = 0.0;
  for (unsigned k = 0; k <= n; ++k) {
    Jet g = power(u, n - k);
    for (unsigned i = 0; i < m; ++i) g = g.derivative();
    for (unsigned j = 0; j < k; ++j) g = g.derivative() - u * g;
    const Complex term = binom(n, k) * g.value();
    scale = std::max(scale, std::abs(term));
    sum += term;
  }
  return finish(sum, scale);
}

NumericResidual eval_pn_gaussian(unsigned n, double x0) {
  const Jet x = jet_of(ConcreteFunction::linear(), x0, n + 1);
  const Jet e = jet_of(ConcreteFunction::gaussian_half(), x0, n + 1);
  Complex sum = 0.0;
  double scale = 0.0;
  for (unsigned k = 0; k <= n; ++k) {
    Jet g = power(x, n - k) * e;
    for (unsigned i = 0; i < k; ++i) g = g.derivative();
    const Complex term = binom(n, k) * g.value();
    scale = std::max(scale, std::abs(term));
    sum += term;
  }
  return finish(sum, scale);
}

double check_exponent_kernel(double x0) {
  const Jet e = jet_of(ConcreteFunction::gaussian_half(), x0, 1);
  const Jet x = jet_of(ConcreteFunction::linear(), x0, 1);
  return std::abs((e.derivative() + x * e).value());
}

double equation_residual(const ConcreteFunction& f, double x0) {
  const unsigned r = std::max(f.equation_order, 1U);
  const Jet u = jet_of(f, x0, r);
  Jet d = u;
  for (unsigned i = 0; i < r; ++i) d = d.derivative();
  Complex lambda_r = 1.0;
  for (unsigned i = 0; i < r; ++i) lambda_r *= f.lambda_value;
  const Complex rhs = lambda_r * u.value();
  return std::abs(d.value() - rhs) / std::max(std::abs(d.value()) + std::abs(rhs), kTiny);
}

std::vector<double> sample_points() {
  std::vector<double> xs;
  for (int i = 0; i < 10; ++i) xs.push_back(-0.9 + 0.2 * i);
  return xs;
}

}  // namespace opident
