#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "opident/radon/radon.hpp"

namespace opident::radon {

Sinogram::Sinogram(int n_angles, int n_offsets, double extent, double mu, std::vector<double> values)
    : n_angles_(n_angles), n_offsets_(n_offsets), extent_(extent), mu_(mu), values_(std::move(values)) {
  if (n_angles < 1 || n_offsets < 2 || !(extent > 0.0)) throw std::invalid_argument("sinogram: bad grid");
  if (!(mu >= 0.0)) throw std::invalid_argument("sinogram: mu must be nonnegative");
  if (values_.size() != static_cast<std::size_t>(n_angles) * n_offsets) {
    throw std::invalid_argument("sinogram: value count does not match grid");
  }
}

double Sinogram::angle(int i) const { return 2.0 * std::numbers::pi * i / n_angles_; }

double Sinogram::offset(int j) const { return -extent_ + j * ds(); }

namespace {

// Runs body(i) for i in [0, n) on a few threads; each index is written by
// exactly one thread, so the result does not depend on scheduling.
template <typename F>
void for_each_index(int n, F&& body) {
  const int workers = std::clamp(static_cast<int>(std::thread::hardware_concurrency()), 1, 16);
  if (workers == 1 || n < 8) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::jthread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int i = w; i < n; i += workers) body(i);
    });
  }
}

}  // namespace

Sinogram radon_forward(const Phantom& p, int n_angles, int n_offsets, double mu, std::optional<kernels::Isa> isa) {
  if (n_angles < 1 || n_offsets < 2) throw std::invalid_argument("radon_forward: need n_angles >= 1, n_offsets >= 2");
  if (!(mu >= 0.0)) throw std::invalid_argument("radon_forward: mu must be nonnegative");
  const kernels::KernelTable& k = isa ? kernels::table(*isa) : kernels::active();

  const double extent = p.extent();
  const double dx = p.dx();
  const double dy = p.dy();
  const double half_len = extent * std::numbers::sqrt2;
  const double step = std::min(dx, dy) / 2.0;
  const int count = static_cast<int>(std::ceil(2.0 * half_len / step)) + 1;
  const double dt = 2.0 * half_len / (count - 1);
  const kernels::ImageView image{p.values(), p.width(), p.height()};

  Sinogram g(n_angles, n_offsets, extent, mu, std::vector<double>(static_cast<std::size_t>(n_angles) * n_offsets));
  for_each_index(n_angles, [&](int i) {
    const double c = std::cos(g.angle(i));
    const double s = std::sin(g.angle(i));
    for (int j = 0; j < n_offsets; ++j) {
      const double off = g.offset(j);
      // x(t) = off * (c, s) + t * (s, -c), starting at t = -half_len
      const double x0 = off * c - half_len * s;
      const double y0 = off * s + half_len * c;
      kernels::LineSamples line;
      line.col0 = (x0 + extent) / dx - 0.5;
      line.row0 = (y0 + extent) / dy - 0.5;
      line.dcol = dt * s / dx;
      line.drow = -dt * c / dy;
      line.t0 = -half_len;
      line.dt = dt;
      line.mu = mu;
      line.count = count;
      g.at(i, j) = k.line_integral(image, line) * dt;
    }
  });
  return g;
}

double check_evenness(const Sinogram& g) {
  if (g.mu() != 0.0) throw std::invalid_argument("check_evenness: only defined for mu = 0");
  double peak = 0.0;
  for (double v : g.values()) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return 0.0;

  const int na = g.n_angles();
  const int no = g.n_offsets();
  // value at fractional angle index a (periodic) and fractional offset index b
  auto sample = [&](double a, double b) {
    a = std::fmod(a, na);
    if (a < 0) a += na;
    const int i0 = static_cast<int>(std::floor(a)) % na;
    const int i1 = (i0 + 1) % na;
    const double fa = a - std::floor(a);
    const int j0 = std::clamp(static_cast<int>(std::floor(b)), 0, no - 1);
    const int j1 = std::min(j0 + 1, no - 1);
    const double fb = std::clamp(b - j0, 0.0, 1.0);
    auto row = [&](int i) { return (1.0 - fb) * g.at(i, j0) + fb * g.at(i, j1); };
    return (1.0 - fa) * row(i0) + fa * row(i1);
  };

  double worst = 0.0;
  for (int i = 0; i < na; ++i) {
    const double a = i + na / 2.0;
    for (int j = 0; j < no; ++j) {
      const double b = (-g.offset(j) + g.extent()) / g.ds();
      worst = std::max(worst, std::abs(sample(a, b) - g.at(i, j)));
    }
  }
  return worst / peak;
}

}  // namespace opident::radon
