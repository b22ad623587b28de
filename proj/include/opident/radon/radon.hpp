#pragma once

// Parallel-beam Radon and exponential Radon transforms of rasterized
// phantoms, with the evenness and moment range conditions.
//
// Lines are x . w = s with w = (cos t, sin t); the transform integrates
// f(s w + t w_perp) exp(mu t) dt, w_perp = (sin t, -cos t).

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "opident/radon/kernels.hpp"
#include "opident/report.hpp"

namespace opident::radon {

struct Ellipse {
  double cx = 0.0, cy = 0.0;
  double semi_x = 1.0, semi_y = 1.0;  // before rotation
  double rotation = 0.0;              // radians, counterclockwise
  double value = 1.0;                 // added inside
};

Ellipse disk(double cx, double cy, double radius, double value = 1.0);

/// Pixel (col, row) covers a square centered at
/// (-extent + (col + 1/2) dx, -extent + (row + 1/2) dy).
class Phantom {
 public:
  Phantom(int width, int height, double extent, std::vector<double> values, std::vector<Ellipse> shapes = {});

  int width() const { return width_; }
  int height() const { return height_; }
  double extent() const { return extent_; }
  double dx() const { return 2.0 * extent_ / width_; }
  double dy() const { return 2.0 * extent_ / height_; }
  double x_of(int col) const { return -extent_ + (col + 0.5) * dx(); }
  double y_of(int row) const { return -extent_ + (row + 0.5) * dy(); }
  double at(int col, int row) const { return values_[static_cast<std::size_t>(row) * width_ + col]; }
  std::span<const double> values() const { return values_; }
  const std::vector<Ellipse>& shapes() const { return shapes_; }
  /// sum f dx dy
  double mass() const;

 private:
  int width_;
  int height_;
  double extent_;
  std::vector<double> values_;
  std::vector<Ellipse> shapes_;
};

/// Rasterizes with 4x4 supersampling per pixel. Requires W, H >= 16 and each
/// ellipse's bounding box at least one pixel inside the extent; throws
/// std::invalid_argument otherwise.
Phantom phantom_make(std::span<const Ellipse> shapes, int width, int height, double extent);

/// alpha * a + b on identical grids.
Phantom phantom_axpy(double alpha, const Phantom& a, const Phantom& b);

/// Off-center ellipses used by the demo.
std::vector<Ellipse> demo_shapes();

/// values[i * n_offsets + j] = g(theta_i, s_j), theta_i = 2 pi i / n_angles,
/// s_j uniform over [-extent, extent] including both ends.
class Sinogram {
 public:
  Sinogram(int n_angles, int n_offsets, double extent, double mu, std::vector<double> values);

  int n_angles() const { return n_angles_; }
  int n_offsets() const { return n_offsets_; }
  double extent() const { return extent_; }
  double mu() const { return mu_; }
  double angle(int i) const;
  double offset(int j) const;
  double ds() const { return 2.0 * extent_ / (n_offsets_ - 1); }
  double at(int i, int j) const { return values_[static_cast<std::size_t>(i) * n_offsets_ + j]; }
  double& at(int i, int j) { return values_[static_cast<std::size_t>(i) * n_offsets_ + j]; }
  std::span<const double> values() const { return values_; }

 private:
  int n_angles_;
  int n_offsets_;
  double extent_;
  double mu_;
  std::vector<double> values_;
};

/// Trapezoidal line integrals of the bilinear interpolant, step min(dx, dy)/2,
/// angles in parallel (results do not depend on scheduling). Uses the kernel
/// table for the running CPU unless an ISA is named.
Sinogram radon_forward(const Phantom& p, int n_angles, int n_offsets, double mu,
                       std::optional<kernels::Isa> isa = std::nullopt);

/// max |g(t + pi, -s) - g(t, s)| / max |g|, interpolating in t and s.
/// Throws std::invalid_argument when mu != 0.
double check_evenness(const Sinogram& g);

struct MomentTable {
  int k_max = 0;
  std::vector<double> angles;
  std::vector<std::vector<double>> moments;  // moments[k][i] = G_k(theta_i)
  std::vector<double> leakage;               // per k, in [0, 1]
};

/// Leakage of G_k: spectral energy at frequencies other than |f| <= k with
/// f = k (mod 2), over total energy; moments below 1e-10 of their absolute
/// scale count as zero energy (leakage 0).
std::vector<double> moment_leakage(const std::vector<std::vector<double>>& moments,
                                   const std::vector<double>& absolute_scale);

/// G_k(theta_i) = sum_j s_j^k g(theta_i, s_j) ds, plus leakage.
MomentTable moments_from_sinogram(const Sinogram& g, int k_max);

/// G_k(theta_i) = sum_pixels (x . w)^k exp(mu x . w_perp) f dx dy on the
/// n_angles grid of a sinogram.
MomentTable moments_direct(const Phantom& p, int k_max, int n_angles, double mu = 0.0,
                           std::optional<kernels::Isa> isa = std::nullopt);

struct RangeTolerances {
  double leakage = 1e-2;
  double discrepancy = 2e-2;
  double leakage_ratio = 10.0;
};

/// For mu = 0: leakage < tol for all k <= k_max and (if source is given)
/// sinogram-vs-direct discrepancy < tol. For mu > 0 the source phantom is
/// required: some k must leak at least leakage_ratio times more than the
/// mu = 0 sinogram of the same phantom.
VerificationReport range_check(const Sinogram& g, int k_max, const Phantom* source = nullptr,
                               const RangeTolerances& tol = {});

/// max over k, i of |a - b| / max(|b|, |mass|)
double moment_discrepancy(const MomentTable& from_sinogram, const MomentTable& direct, double mass);

// CSV: "# rows cols extent mu", then one comma-separated row per line with
// 17 significant digits.
void write_csv(std::ostream& os, const Phantom& p);
void write_csv(std::ostream& os, const Sinogram& g);
Phantom read_phantom_csv(std::istream& is);
Sinogram read_sinogram_csv(std::istream& is);

nlohmann::json to_json(const MomentTable& t);

}  // namespace opident::radon
