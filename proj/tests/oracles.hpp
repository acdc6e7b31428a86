#pragma once

// Brute-force reference computations for tests. Deliberately naive and independent of the
// summed-area tables and masks used by the library.

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "topiccloud/geom.hpp"

namespace oracle {

using topiccloud::Cell;
using topiccloud::Extent;
using topiccloud::Point;
using topiccloud::SliceRegion;

/// Plain boolean raster kept alongside an OccupancyGrid.
struct Raster {
  int w, h;
  std::vector<bool> cells;
  Raster(int w_, int h_) : w(w_), h(h_), cells(static_cast<std::size_t>(w_) * h_, false) {}
  bool at(int x, int y) const { return cells[static_cast<std::size_t>(y) * w + x]; }
  void mark(Cell c, Extent b) {
    for (int y = c.y; y < c.y + b.h; ++y)
      for (int x = c.x; x < c.x + b.w; ++x) cells[static_cast<std::size_t>(y) * w + x] = true;
  }
  std::int64_t count(int x0, int y0, int bw, int bh) const {
    std::int64_t n = 0;
    for (int y = y0; y < y0 + bh; ++y)
      for (int x = x0; x < x0 + bw; ++x) n += at(x, y) ? 1 : 0;
    return n;
  }
};

/// Slice membership written independently: angular distance measured from the start ray with
/// acos/atan-free vector math where possible.
inline bool in_slice(Point p, const SliceRegion& s) {
  const double dx = p.x - s.center.x, dy = p.y - s.center.y;
  if (std::hypot(dx, dy) > s.radius) return false;
  if (s.sweep >= 360.0 || (dx == 0 && dy == 0)) return true;
  double a = std::atan2(dy, dx) * 180.0 / 3.14159265358979323846;
  while (a < 0) a += 360.0;
  while (a >= 360.0) a -= 360.0;
  double rel = a - s.start_angle;
  while (rel < 0) rel += 360.0;
  while (rel >= 360.0) rel -= 360.0;
  return rel < s.sweep;
}

inline bool admissible(Cell c, Extent b, const SliceRegion& s, const Raster& r) {
  if (b.w <= 0 || b.h <= 0 || c.x < 0 || c.y < 0 || c.x + b.w > r.w || c.y + b.h > r.h)
    return false;
  const double x0 = c.x, y0 = c.y, x1 = c.x + b.w, y1 = c.y + b.h;
  const Point pts[] = {{x0, y0}, {x1, y0}, {x0, y1}, {x1, y1}, {(x0 + x1) / 2, (y0 + y1) / 2}};
  for (auto p : pts)
    if (!in_slice(p, s)) return false;
  for (int y = c.y; y < c.y + b.h; ++y)
    for (int x = c.x; x < c.x + b.w; ++x) {
      if (r.at(x, y)) return false;
      if (!in_slice({x + 0.5, y + 0.5}, s)) return false;
    }
  return true;
}

/// Every anchor of the canvas, filtered through the per-cell predicate, row-major.
inline std::vector<Cell> candidates(Extent b, const SliceRegion& s, const Raster& r) {
  std::vector<Cell> out;
  for (int y = 0; y < r.h; ++y)
    for (int x = 0; x < r.w; ++x)
      if (admissible({x, y}, b, s, r)) out.push_back({x, y});
  return out;
}

/// Cells whose centers lie within `radius` of `center`.
inline std::size_t disk_cells(Point center, double radius, int w, int h) {
  std::size_t n = 0;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (std::hypot(x + 0.5 - center.x, y + 0.5 - center.y) <= radius) ++n;
  return n;
}

/// Best weighted spherical 2-means objective over every partition into two non-empty parts.
inline double best_two_partition(const std::vector<std::vector<double>>& xs,
                                 const std::vector<double>& ws, unsigned* best_mask = nullptr) {
  const std::size_t n = xs.size(), d = xs.front().size();
  double best = std::numeric_limits<double>::infinity();
  for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
    double total = 0;
    for (unsigned side = 0; side < 2; ++side) {
      std::vector<double> c(d, 0.0);
      for (std::size_t i = 0; i < n; ++i)
        if (((mask >> i) & 1u) == side)
          for (std::size_t k = 0; k < d; ++k) c[k] += ws[i] * xs[i][k];
      double norm = 0;
      for (double v : c) norm += v * v;
      norm = std::sqrt(norm);
      for (std::size_t i = 0; i < n; ++i)
        if (((mask >> i) & 1u) == side) {
          double cos = 0;
          for (std::size_t k = 0; k < d; ++k) cos += xs[i][k] * c[k] / norm;
          total += ws[i] * (1 - cos);
        }
    }
    if (total < best) {
      best = total;
      if (best_mask) *best_mask = mask;
    }
  }
  return best;
}

}  // namespace oracle
