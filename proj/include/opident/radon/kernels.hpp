#pragma once

// Inner loops of the tomography module. Every kernel has a scalar reference
// and, on x86-64, an AVX2 variant; the table for the running CPU is chosen
// once at first use.

#include <span>
#include <string_view>

namespace opident::radon::kernels {

/// Row-major grid, data[row * width + col].
struct ImageView {
  std::span<const double> data;
  int width = 0;
  int height = 0;
};

/// Samples along a straight line in pixel-index coordinates:
/// (col, row)(m) = (col0 + m * dcol, row0 + m * drow), m = 0..count-1,
/// each weighted by exp(mu * (t0 + m * dt)).
struct LineSamples {
  double col0 = 0.0, row0 = 0.0;
  double dcol = 0.0, drow = 0.0;
  double t0 = 0.0, dt = 0.0;
  double mu = 0.0;
  int count = 0;
};

/// Physical placement of pixel centers: x = x0 + col * dx, y = y0 + row * dy.
struct PixelGrid {
  double x0 = 0.0, dx = 1.0;
  double y0 = 0.0, dy = 1.0;
};

/// Trapezoidal sum (end samples weighted 1/2, not multiplied by dt) of the
/// bilinear interpolant of the image. Positions outside
/// [0, width-1) x [0, height-1) read as zero.
using LineIntegralFn = double (*)(const ImageView& image, const LineSamples& line);

/// out[k] = sum_pixels f * exp(mu * (x s - y c)) * (x c + y s)^k, k = 0..k_max.
using ProjectedMomentsFn = void (*)(const ImageView& image, const PixelGrid& grid, double c, double s, double mu,
                                    int k_max, double* out);

enum class Isa { Scalar, Avx2 };

struct KernelTable {
  Isa isa;
  LineIntegralFn line_integral;
  ProjectedMomentsFn projected_moments;
};

double line_integral_scalar(const ImageView& image, const LineSamples& line);
void projected_moments_scalar(const ImageView& image, const PixelGrid& grid, double c, double s, double mu,
                              int k_max, double* out);

#if defined(OPIDENT_HAVE_AVX2_KERNELS)
double line_integral_avx2(const ImageView& image, const LineSamples& line);
void projected_moments_avx2(const ImageView& image, const PixelGrid& grid, double c, double s, double mu,
                            int k_max, double* out);
#endif

bool cpu_supports(Isa isa);
/// Throws std::runtime_error if the CPU (or this build) lacks the ISA.
const KernelTable& table(Isa isa);
/// Best table for this CPU; OPIDENT_FORCE_SCALAR=1 pins the scalar one.
const KernelTable& active();
std::string_view isa_name(Isa isa);

}  // namespace opident::radon::kernels
