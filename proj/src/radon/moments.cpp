#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

#include "opident/radon/radon.hpp"

namespace opident::radon {

namespace {

constexpr double kZeroFloor = 1e-10;

std::vector<double> angle_grid(int n_angles) {
  std::vector<double> out(n_angles);
  for (int i = 0; i < n_angles; ++i) out[i] = 2.0 * std::numbers::pi * i / n_angles;
  return out;
}

double leakage_of(const std::vector<double>& values, int k) {
  const int n = static_cast<int>(values.size());
  double total = 0.0;
  double outside = 0.0;
  for (int f = 0; f < n; ++f) {
    std::complex<double> acc = 0.0;
    for (int i = 0; i < n; ++i) {
      const double phase = -2.0 * std::numbers::pi * static_cast<double>((static_cast<long>(f) * i) % n) / n;
      acc += values[i] * std::polar(1.0, phase);
    }
    const double energy = std::norm(acc);
    const int freq = f <= n / 2 ? f : f - n;  // signed frequency
    const int mag = std::abs(freq);
    total += energy;
    if (mag > k || (mag - k) % 2 != 0) outside += energy;
  }
  return total > 0.0 ? std::clamp(outside / total, 0.0, 1.0) : 0.0;
}

}  // namespace

std::vector<double> moment_leakage(const std::vector<std::vector<double>>& moments,
                                   const std::vector<double>& absolute_scale) {
  std::vector<double> out(moments.size(), 0.0);
  for (std::size_t k = 0; k < moments.size(); ++k) {
    double peak = 0.0;
    for (double v : moments[k]) peak = std::max(peak, std::abs(v));
    const double scale = k < absolute_scale.size() ? absolute_scale[k] : peak;
    if (peak == 0.0 || peak <= kZeroFloor * scale) continue;
    out[k] = leakage_of(moments[k], static_cast<int>(k));
  }
  return out;
}

MomentTable moments_from_sinogram(const Sinogram& g, int k_max) {
  if (k_max < 0) throw std::invalid_argument("moments: k_max must be nonnegative");
  MomentTable t;
  t.k_max = k_max;
  t.angles = angle_grid(g.n_angles());
  t.moments.assign(k_max + 1, std::vector<double>(g.n_angles(), 0.0));
  std::vector<double> scale(k_max + 1, 0.0);
  for (int i = 0; i < g.n_angles(); ++i) {
    std::vector<double> row_abs(k_max + 1, 0.0);
    for (int j = 0; j < g.n_offsets(); ++j) {
      const double s = g.offset(j);
      double w = g.at(i, j) * g.ds();
      double a = std::abs(w);
      for (int k = 0; k <= k_max; ++k) {
        t.moments[k][i] += w;
        row_abs[k] += a;
        w *= s;
        a *= std::abs(s);
      }
    }
    for (int k = 0; k <= k_max; ++k) scale[k] = std::max(scale[k], row_abs[k]);
  }
  t.leakage = moment_leakage(t.moments, scale);
  return t;
}

MomentTable moments_direct(const Phantom& p, int k_max, int n_angles, double mu, std::optional<kernels::Isa> isa) {
  if (k_max < 0) throw std::invalid_argument("moments: k_max must be nonnegative");
  if (n_angles < 1) throw std::invalid_argument("moments: n_angles must be positive");
  const kernels::KernelTable& kt = isa ? kernels::table(*isa) : kernels::active();
  const kernels::ImageView image{p.values(), p.width(), p.height()};
  const kernels::PixelGrid grid{p.x_of(0), p.dx(), p.y_of(0), p.dy()};
  const double area = p.dx() * p.dy();

  MomentTable t;
  t.k_max = k_max;
  t.angles = angle_grid(n_angles);
  t.moments.assign(k_max + 1, std::vector<double>(n_angles, 0.0));
  std::vector<double> out(k_max + 1);
  for (int i = 0; i < n_angles; ++i) {
    kt.projected_moments(image, grid, std::cos(t.angles[i]), std::sin(t.angles[i]), mu, k_max, out.data());
    for (int k = 0; k <= k_max; ++k) t.moments[k][i] = out[k] * area;
  }

  // |x . w| <= extent * sqrt 2 on the grid
  double abs_mass = 0.0;
  for (double v : p.values()) abs_mass += std::abs(v);
  abs_mass *= area;
  const double reach = p.extent() * std::numbers::sqrt2;
  std::vector<double> scale(k_max + 1);
  for (int k = 0; k <= k_max; ++k) scale[k] = abs_mass * std::pow(reach, k) * std::exp(mu * reach);
  t.leakage = moment_leakage(t.moments, scale);
  return t;
}

double moment_discrepancy(const MomentTable& a, const MomentTable& b, double mass) {
  if (a.k_max != b.k_max || a.angles.size() != b.angles.size()) {
    throw std::invalid_argument("moment_discrepancy: tables differ in shape");
  }
  const double floor = std::abs(mass);
  double worst = 0.0;
  for (int k = 0; k <= a.k_max; ++k) {
    for (std::size_t i = 0; i < a.angles.size(); ++i) {
      const double denom = std::max(std::abs(b.moments[k][i]), floor);
      if (denom == 0.0) continue;
      worst = std::max(worst, std::abs(a.moments[k][i] - b.moments[k][i]) / denom);
    }
  }
  return worst;
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

}  // namespace

VerificationReport range_check(const Sinogram& g, int k_max, const Phantom* source, const RangeTolerances& tol) {
  std::map<std::string, ParamValue> params{
      {"mu", g.mu()},
      {"k_max", long(k_max)},
      {"n_angles", long(g.n_angles())},
      {"n_offsets", long(g.n_offsets())},
      {"expect", std::string("PASS")},
  };
  const MomentTable table = moments_from_sinogram(g, k_max);
  double max_leak = 0.0;
  for (int k = 0; k <= k_max; ++k) {
    params["leakage_k" + std::to_string(k)] = table.leakage[k];
    max_leak = std::max(max_leak, table.leakage[k]);
  }
  params["max_leakage"] = max_leak;

  if (g.mu() == 0.0) {
    std::string why;
    if (max_leak >= tol.leakage) why = "moment leakage " + fmt(max_leak) + " exceeds " + fmt(tol.leakage);
    if (source != nullptr) {
      const MomentTable direct = moments_direct(*source, k_max, g.n_angles());
      const double disc = moment_discrepancy(table, direct, source->mass());
      params["discrepancy"] = disc;
      if (disc >= tol.discrepancy && why.empty()) {
        why = "sinogram vs direct moment discrepancy " + fmt(disc) + " exceeds " + fmt(tol.discrepancy);
      }
    }
    if (!why.empty()) return make_report("radon.range", std::move(params), Outcome::Fail, why);
    return make_report("radon.range", std::move(params), Outcome::Pass);
  }

  if (source == nullptr) {
    return make_report("radon.range", std::move(params), Outcome::Fail,
                       "mu > 0 needs the source phantom for a mu = 0 baseline");
  }
  const Sinogram baseline = radon_forward(*source, g.n_angles(), g.n_offsets(), 0.0);
  const MomentTable base_table = moments_from_sinogram(baseline, k_max);
  double best_ratio = 0.0;
  int best_k = -1;
  for (int k = 0; k <= k_max; ++k) {
    const double lm = table.leakage[k];
    const double l0 = base_table.leakage[k];
    params["baseline_leakage_k" + std::to_string(k)] = l0;
    double ratio = 0.0;
    if (l0 > 0.0) {
      ratio = lm / l0;
    } else if (lm > 0.0) {
      ratio = std::numeric_limits<double>::infinity();
    }
    if (best_k < 0 || ratio > best_ratio) {
      best_ratio = ratio;
      best_k = k;
    }
  }
  params["ratio_k"] = long(best_k);
  if (std::isinf(best_ratio)) {
    params["leakage_ratio"] = std::string("inf");
  } else {
    params["leakage_ratio"] = best_ratio;
  }
  if (best_ratio >= tol.leakage_ratio) return make_report("radon.range", std::move(params), Outcome::Pass);
  return make_report("radon.range", std::move(params), Outcome::Fail,
                     "largest leakage ratio " + fmt(best_ratio) + " at k=" + std::to_string(best_k) + " is below " +
                         fmt(tol.leakage_ratio));
}

nlohmann::json to_json(const MomentTable& t) {
  nlohmann::json moments = nlohmann::json::array();
  for (const auto& row : t.moments) moments.push_back(row);
  return nlohmann::json{{"k_max", t.k_max}, {"angles", t.angles}, {"moments", moments}, {"leakage", t.leakage}};
}

}  // namespace opident::radon
