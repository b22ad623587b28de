// Compiled with -mavx2; only reached through kernels::table() after a CPU check.

#include <immintrin.h>

#include <cmath>

#include "opident/radon/kernels.hpp"

namespace opident::radon::kernels {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline double sample(const ImageView& img, const LineSamples& line, int m) {
  const double col = line.col0 + m * line.dcol;
  const double row = line.row0 + m * line.drow;
  const double fc = std::floor(col);
  const double fr = std::floor(row);
  if (fc < 0.0 || fr < 0.0 || fc >= img.width - 1 || fr >= img.height - 1) return 0.0;
  const double ax = col - fc;
  const double ay = row - fr;
  const double* p = img.data.data() + static_cast<std::ptrdiff_t>(fr) * img.width + static_cast<std::ptrdiff_t>(fc);
  const double top = (1.0 - ax) * p[0] + ax * p[1];
  const double bottom = (1.0 - ax) * p[img.width] + ax * p[img.width + 1];
  double f = (1.0 - ay) * top + ay * bottom;
  if (line.mu != 0.0 && f != 0.0) f *= std::exp(line.mu * (line.t0 + m * line.dt));
  return f;
}

}  // namespace

double line_integral_avx2(const ImageView& img, const LineSamples& line) {
  if (line.count <= 0) return 0.0;
  const double* base = img.data.data();
  const __m256d lane = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
  const __m256d col0 = _mm256_set1_pd(line.col0);
  const __m256d row0 = _mm256_set1_pd(line.row0);
  const __m256d dcol = _mm256_set1_pd(line.dcol);
  const __m256d drow = _mm256_set1_pd(line.drow);
  const __m256d col_max = _mm256_set1_pd(img.width - 1);
  const __m256d row_max = _mm256_set1_pd(img.height - 1);
  const __m256d width = _mm256_set1_pd(img.width);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m128i off_right = _mm_set1_epi32(1);
  const __m128i off_down = _mm_set1_epi32(img.width);

  const bool weighted = line.mu != 0.0;
  __m256d weight = one;
  __m256d weight_step = one;
  if (weighted) {
    const double e0 = line.mu * line.t0;
    const double et = line.mu * line.dt;
    weight = _mm256_set_pd(std::exp(e0 + 3 * et), std::exp(e0 + 2 * et), std::exp(e0 + et), std::exp(e0));
    weight_step = _mm256_set1_pd(std::exp(4 * et));
  }

  __m256d acc = zero;
  const int full = line.count & ~3;
  for (int m = 0; m < full; m += 4) {
    const __m256d mm = _mm256_add_pd(_mm256_set1_pd(m), lane);
    const __m256d col = _mm256_add_pd(col0, _mm256_mul_pd(mm, dcol));
    const __m256d row = _mm256_add_pd(row0, _mm256_mul_pd(mm, drow));
    const __m256d fc = _mm256_floor_pd(col);
    const __m256d fr = _mm256_floor_pd(row);
    const __m256d valid = _mm256_and_pd(
        _mm256_and_pd(_mm256_cmp_pd(fc, zero, _CMP_GE_OQ), _mm256_cmp_pd(fc, col_max, _CMP_LT_OQ)),
        _mm256_and_pd(_mm256_cmp_pd(fr, zero, _CMP_GE_OQ), _mm256_cmp_pd(fr, row_max, _CMP_LT_OQ)));
    if (_mm256_movemask_pd(valid) != 0) {
      const __m256d safe_c = _mm256_and_pd(fc, valid);
      const __m256d safe_r = _mm256_and_pd(fr, valid);
      const __m128i idx = _mm256_cvttpd_epi32(_mm256_add_pd(_mm256_mul_pd(safe_r, width), safe_c));
      const __m256d p00 = _mm256_i32gather_pd(base, idx, 8);
      const __m256d p10 = _mm256_i32gather_pd(base, _mm_add_epi32(idx, off_right), 8);
      const __m128i idx_down = _mm_add_epi32(idx, off_down);
      const __m256d p01 = _mm256_i32gather_pd(base, idx_down, 8);
      const __m256d p11 = _mm256_i32gather_pd(base, _mm_add_epi32(idx_down, off_right), 8);
      const __m256d ax = _mm256_sub_pd(col, fc);
      const __m256d ay = _mm256_sub_pd(row, fr);
      const __m256d bx = _mm256_sub_pd(one, ax);
      const __m256d top = _mm256_add_pd(_mm256_mul_pd(bx, p00), _mm256_mul_pd(ax, p10));
      const __m256d bottom = _mm256_add_pd(_mm256_mul_pd(bx, p01), _mm256_mul_pd(ax, p11));
      __m256d f = _mm256_add_pd(_mm256_mul_pd(_mm256_sub_pd(one, ay), top), _mm256_mul_pd(ay, bottom));
      f = _mm256_and_pd(f, valid);
      if (weighted) f = _mm256_mul_pd(f, weight);
      acc = _mm256_add_pd(acc, f);
    }
    if (weighted) weight = _mm256_mul_pd(weight, weight_step);
  }

  double sum = hsum(acc);
  for (int m = full; m < line.count; ++m) sum += sample(img, line, m);
  // trapezoid end weights
  sum -= 0.5 * sample(img, line, 0);
  if (line.count > 1) sum -= 0.5 * sample(img, line, line.count - 1);
  return sum;
}

void projected_moments_avx2(const ImageView& image, const PixelGrid& grid, double c, double s, double mu,
                            int k_max, double* out) {
  constexpr int kMaxAccumulators = 32;
  if (k_max + 1 > kMaxAccumulators) {
    projected_moments_scalar(image, grid, c, s, mu, k_max, out);
    return;
  }
  __m256d acc[kMaxAccumulators];
  for (int k = 0; k <= k_max; ++k) acc[k] = _mm256_setzero_pd();
  for (int k = 0; k <= k_max; ++k) out[k] = 0.0;

  const __m256d lane = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
  const __m256d vc = _mm256_set1_pd(c);
  const __m256d dx = _mm256_set1_pd(grid.dx);
  const __m256d x0 = _mm256_set1_pd(grid.x0);
  const bool weighted = mu != 0.0;
  const double col_rate = mu * s * grid.dx;
  const __m256d weight_step = _mm256_set1_pd(weighted ? std::exp(4 * col_rate) : 1.0);
  const int full = image.width & ~3;

  for (int row = 0; row < image.height; ++row) {
    const double y = grid.y0 + row * grid.dy;
    const double* line = image.data.data() + static_cast<std::ptrdiff_t>(row) * image.width;
    const __m256d ys = _mm256_set1_pd(y * s);
    __m256d weight = _mm256_set1_pd(1.0);
    if (weighted) {
      const double e0 = mu * (grid.x0 * s - y * c);
      weight = _mm256_set_pd(std::exp(e0 + 3 * col_rate), std::exp(e0 + 2 * col_rate), std::exp(e0 + col_rate),
                             std::exp(e0));
    }
    for (int col = 0; col < full; col += 4) {
      __m256d w = _mm256_loadu_pd(line + col);
      if (weighted) {
        w = _mm256_mul_pd(w, weight);
        weight = _mm256_mul_pd(weight, weight_step);
      }
      const __m256d x = _mm256_add_pd(x0, _mm256_mul_pd(_mm256_add_pd(_mm256_set1_pd(col), lane), dx));
      const __m256d p = _mm256_add_pd(_mm256_mul_pd(x, vc), ys);
      for (int k = 0; k <= k_max; ++k) {
        acc[k] = _mm256_add_pd(acc[k], w);
        w = _mm256_mul_pd(w, p);
      }
    }
    for (int col = full; col < image.width; ++col) {
      double w = line[col];
      if (w == 0.0) continue;
      const double x = grid.x0 + col * grid.dx;
      if (weighted) w *= std::exp(mu * (x * s - y * c));
      const double p = x * c + y * s;
      for (int k = 0; k <= k_max; ++k) {
        out[k] += w;
        w *= p;
      }
    }
  }
  for (int k = 0; k <= k_max; ++k) out[k] += hsum(acc[k]);
}

}  // namespace opident::radon::kernels
