#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "opident/radon/radon.hpp"

namespace opident::radon {

Ellipse disk(double cx, double cy, double radius, double value) {
  return Ellipse{cx, cy, radius, radius, 0.0, value};
}

Phantom::Phantom(int width, int height, double extent, std::vector<double> values, std::vector<Ellipse> shapes)
    : width_(width), height_(height), extent_(extent), values_(std::move(values)), shapes_(std::move(shapes)) {
  if (width <= 1 || height <= 1 || !(extent > 0.0)) throw std::invalid_argument("phantom: bad grid");
  if (values_.size() != static_cast<std::size_t>(width) * height) {
    throw std::invalid_argument("phantom: value count does not match grid");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("phantom: non-finite value");
  }
}

double Phantom::mass() const {
  double sum = 0.0;
  for (double v : values_) sum += v;
  return sum * dx() * dy();
}

namespace {

struct Placed {
  Ellipse e;
  double cos_r, sin_r;
  double half_x, half_y;  // bounding box
};

Placed place(const Ellipse& e) {
  if (!(e.semi_x > 0.0) || !(e.semi_y > 0.0) || !std::isfinite(e.value) || !std::isfinite(e.cx) ||
      !std::isfinite(e.cy) || !std::isfinite(e.rotation)) {
    throw std::invalid_argument("phantom: degenerate ellipse");
  }
  const double c = std::cos(e.rotation);
  const double s = std::sin(e.rotation);
  const double hx = std::sqrt(e.semi_x * e.semi_x * c * c + e.semi_y * e.semi_y * s * s);
  const double hy = std::sqrt(e.semi_x * e.semi_x * s * s + e.semi_y * e.semi_y * c * c);
  return Placed{e, c, s, hx, hy};
}

bool inside(const Placed& p, double x, double y) {
  const double u = x - p.e.cx;
  const double v = y - p.e.cy;
  // rotate back into the ellipse frame
  const double a = (p.cos_r * u + p.sin_r * v) / p.e.semi_x;
  const double b = (-p.sin_r * u + p.cos_r * v) / p.e.semi_y;
  return a * a + b * b <= 1.0;
}

}  // namespace

Phantom phantom_make(std::span<const Ellipse> shapes, int width, int height, double extent) {
  if (width < 16 || height < 16) throw std::invalid_argument("phantom: W and H must be at least 16");
  if (!(extent > 0.0)) throw std::invalid_argument("phantom: extent must be positive");
  const double dx = 2.0 * extent / width;
  const double dy = 2.0 * extent / height;

  std::vector<Placed> placed;
  placed.reserve(shapes.size());
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    Placed p = place(shapes[i]);
    // keep a ring of zero pixels so every line integral sees the whole support
    if (p.e.cx - p.half_x < -extent + dx || p.e.cx + p.half_x > extent - dx || p.e.cy - p.half_y < -extent + dy ||
        p.e.cy + p.half_y > extent - dy) {
      throw std::invalid_argument("phantom: shape " + std::to_string(i) + " reaches outside the extent");
    }
    placed.push_back(p);
  }

  constexpr int kSub = 4;
  std::vector<double> values(static_cast<std::size_t>(width) * height, 0.0);
  for (const Placed& p : placed) {
    const int col_lo = std::max(0, static_cast<int>(std::floor((p.e.cx - p.half_x + extent) / dx)) - 1);
    const int col_hi = std::min(width - 1, static_cast<int>(std::ceil((p.e.cx + p.half_x + extent) / dx)) + 1);
    const int row_lo = std::max(0, static_cast<int>(std::floor((p.e.cy - p.half_y + extent) / dy)) - 1);
    const int row_hi = std::min(height - 1, static_cast<int>(std::ceil((p.e.cy + p.half_y + extent) / dy)) + 1);
    for (int row = row_lo; row <= row_hi; ++row) {
      for (int col = col_lo; col <= col_hi; ++col) {
        int hits = 0;
        for (int a = 0; a < kSub; ++a) {
          const double y = -extent + (row + (a + 0.5) / kSub) * dy;
          for (int b = 0; b < kSub; ++b) {
            const double x = -extent + (col + (b + 0.5) / kSub) * dx;
            if (inside(p, x, y)) ++hits;
          }
        }
        if (hits != 0) {
          values[static_cast<std::size_t>(row) * width + col] += p.e.value * hits / double(kSub * kSub);
        }
      }
    }
  }
  return Phantom(width, height, extent, std::move(values), std::vector<Ellipse>(shapes.begin(), shapes.end()));
}

Phantom phantom_axpy(double alpha, const Phantom& a, const Phantom& b) {
  if (a.width() != b.width() || a.height() != b.height() || a.extent() != b.extent()) {
    throw std::invalid_argument("phantom_axpy: grids differ");
  }
  std::vector<double> out(a.values().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = alpha * a.values()[i] + b.values()[i];
  std::vector<Ellipse> shapes;
  for (Ellipse e : a.shapes()) {
    e.value *= alpha;
    shapes.push_back(e);
  }
  shapes.insert(shapes.end(), b.shapes().begin(), b.shapes().end());
  return Phantom(a.width(), a.height(), a.extent(), std::move(out), std::move(shapes));
}

std::vector<Ellipse> demo_shapes() {
  return {
      Ellipse{0.25, 0.1, 0.7, 0.45, 0.5, 1.0},
      disk(-0.45, -0.35, 0.3, 0.6),
      Ellipse{0.3, 0.2, 0.2, 0.12, -0.3, -0.4},
  };
}

}  // namespace opident::radon
