#include <cmath>

#include "opident/radon/kernels.hpp"

namespace opident::radon::kernels {

namespace {

inline double bilinear(const ImageView& img, double col, double row) {
  const double fc = std::floor(col);
  const double fr = std::floor(row);
  if (fc < 0.0 || fr < 0.0 || fc >= img.width - 1 || fr >= img.height - 1) return 0.0;
  const int i = static_cast<int>(fc);
  const int j = static_cast<int>(fr);
  const double ax = col - fc;
  const double ay = row - fr;
  const double* p = img.data.data() + static_cast<std::ptrdiff_t>(j) * img.width + i;
  const double top = (1.0 - ax) * p[0] + ax * p[1];
  const double bottom = (1.0 - ax) * p[img.width] + ax * p[img.width + 1];
  return (1.0 - ay) * top + ay * bottom;
}

}  // namespace

double line_integral_scalar(const ImageView& image, const LineSamples& line) {
  if (line.count <= 0) return 0.0;
  double sum = 0.0;
  for (int m = 0; m < line.count; ++m) {
    double f = bilinear(image, line.col0 + m * line.dcol, line.row0 + m * line.drow);
    if (line.mu != 0.0 && f != 0.0) f *= std::exp(line.mu * (line.t0 + m * line.dt));
    if (m == 0 || m == line.count - 1) f *= 0.5;
    sum += f;
  }
  return sum;
}

void projected_moments_scalar(const ImageView& image, const PixelGrid& grid, double c, double s, double mu,
                              int k_max, double* out) {
  for (int k = 0; k <= k_max; ++k) out[k] = 0.0;
  for (int row = 0; row < image.height; ++row) {
    const double y = grid.y0 + row * grid.dy;
    const double* line = image.data.data() + static_cast<std::ptrdiff_t>(row) * image.width;
    for (int col = 0; col < image.width; ++col) {
      double w = line[col];
      if (w == 0.0) continue;
      const double x = grid.x0 + col * grid.dx;
      if (mu != 0.0) w *= std::exp(mu * (x * s - y * c));
      const double p = x * c + y * s;
      for (int k = 0; k <= k_max; ++k) {
        out[k] += w;
        w *= p;
      }
    }
  }
}

}  // namespace opident::radon::kernels
