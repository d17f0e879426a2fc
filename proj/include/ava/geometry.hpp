#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "ava/errors.hpp"

namespace ava {

/// Axis-aligned rectangle in continuous pixel coordinates, anchored at its
/// top-left corner. Width and height must be strictly positive; degenerate
/// boxes are rejected at construction rather than scored as zero overlap.
struct BBox {
  double x = 0;
  double y = 0;
  double w = 0;
  double h = 0;

  BBox() = default;

  BBox(double x_, double y_, double w_, double h_) : x(x_), y(y_), w(w_), h(h_) {
    if (!(std::isfinite(x) && std::isfinite(y) && std::isfinite(w) && std::isfinite(h))) {
      throw InputError("box has non-finite coordinates");
    }
    if (!(w > 0 && h > 0)) {
      throw InputError("box width and height must be positive (got w=" + std::to_string(w) +
                       ", h=" + std::to_string(h) + ")");
    }
    if (x < 0 || y < 0) {
      throw InputError("box origin must be non-negative (got x=" + std::to_string(x) +
                       ", y=" + std::to_string(y) + ")");
    }
  }

  double right() const { return x + w; }
  double bottom() const { return y + h; }

  bool operator==(const BBox& o) const { return x == o.x && y == o.y && w == o.w && h == o.h; }
};

/// Area in pixels^2.
inline double area(const BBox& b) { return b.w * b.h; }

/// Area of the rectangle intersection; 0 when disjoint.
inline double intersection_area(const BBox& a, const BBox& b) {
  const double ix = std::min(a.right(), b.right()) - std::max(a.x, b.x);
  const double iy = std::min(a.bottom(), b.bottom()) - std::max(a.y, b.y);
  if (ix <= 0 || iy <= 0) return 0.0;
  return ix * iy;
}

/// Intersection over union on continuous rectangles, in [0, 1]. The member
/// areas use the same edge-difference arithmetic as the intersection, so
/// identical boxes score exactly 1 regardless of coordinate rounding.
inline double iou(const BBox& a, const BBox& b) {
  const double inter = intersection_area(a, b);
  if (inter <= 0) return 0.0;
  auto edge_area = [](const BBox& r) { return (r.right() - r.x) * (r.bottom() - r.y); };
  const double uni = edge_area(a) + edge_area(b) - inter;
  return inter / uni;
}

}  // namespace ava
