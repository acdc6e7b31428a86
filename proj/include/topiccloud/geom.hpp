#pragma once

// Slice regions and the occupancy grid that backs the placement search.
//
// Angles are in degrees. Angle a points along (cos a, sin a) in screen coordinates (y grows
// downward), so 0 is right of center, 90 is bottom-center, 270 is top-center, and increasing
// angles run clockwise on screen. Slice spans are half-open: [start, start + sweep).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "topiccloud/error.hpp"

namespace topiccloud {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct Cell {
  int x = 0;
  int y = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

struct Extent {
  int w = 0;
  int h = 0;
  friend bool operator==(const Extent&, const Extent&) = default;
};

struct SliceRegion {
  Point center;
  double radius = 0.0;
  double start_angle = 0.0;
  double sweep = 360.0;
};

/// Direction of `p` seen from `center`, in [0, 360).
inline double angle_of(Point p, Point center) {
  double a = std::atan2(p.y - center.y, p.x - center.x) * (180.0 / std::numbers::pi);
  if (a < 0) a += 360.0;
  if (a >= 360.0) a -= 360.0;
  return a;
}

inline bool point_in_slice(Point p, const SliceRegion& s) {
  const double dx = p.x - s.center.x;
  const double dy = p.y - s.center.y;
  if (dx * dx + dy * dy > s.radius * s.radius) return false;
  if (s.sweep >= 360.0 || (dx == 0.0 && dy == 0.0)) return true;
  double rel = angle_of(p, s.center) - s.start_angle;
  if (rel < 0) rel += 360.0;
  return rel < s.sweep;
}

/// Occupied/free map at pixel resolution with a summed-area table.
/// `integral(x, y)` counts occupied cells in [0,x) x [0,y).
class OccupancyGrid {
public:
  OccupancyGrid() = default;
  OccupancyGrid(int width, int height)
      : width_(width), height_(height),
        cells_(static_cast<std::size_t>(width) * height, 0),
        integral_(static_cast<std::size_t>(width + 1) * (height + 1), 0) {
    if (width <= 0 || height <= 0) throw ValidationError("grid dimensions must be positive");
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }

  bool occupied(int x, int y) const { return cells_[index(x, y)] != 0; }

  std::int64_t integral(int x, int y) const {
    return integral_[static_cast<std::size_t>(y) * (width_ + 1) + x];
  }

  /// Occupied cells in [x, x+w) x [y, y+h). The rectangle must lie within the grid.
  std::int64_t count(int x, int y, int w, int h) const {
    return integral(x + w, y + h) - integral(x, y + h) - integral(x + w, y) + integral(x, y);
  }

  bool in_bounds(Cell corner, Extent box) const noexcept {
    return corner.x >= 0 && corner.y >= 0 && box.w >= 0 && box.h >= 0 &&
           corner.x + box.w <= width_ && corner.y + box.h <= height_;
  }

  /// Sets every cell of the box occupied and refreshes the affected part of the integral.
  void mark(Cell corner, Extent box) {
    if (!in_bounds(corner, box))
      throw ValidationError("mark_occupied: box (" + std::to_string(corner.x) + "," +
                            std::to_string(corner.y) + ") " + std::to_string(box.w) + "x" +
                            std::to_string(box.h) + " exceeds the grid");
    for (int y = corner.y; y < corner.y + box.h; ++y)
      for (int x = corner.x; x < corner.x + box.w; ++x) cells_[index(x, y)] = 1;
    rebuild_from(corner.x, corner.y);
  }

  /// Recomputes the whole integral from the cells.
  void rebuild() { rebuild_from(0, 0); }

  const std::vector<std::int64_t>& integral_table() const noexcept { return integral_; }

private:
  std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * width_ + x; }

  // Integral entries with X <= x0 or Y <= y0 do not depend on cells at or beyond (x0, y0).
  void rebuild_from(int x0, int y0) {
    const std::size_t stride = width_ + 1;
    for (int y = y0 + 1; y <= height_; ++y) {
      std::int64_t row = 0;
      for (int x = 1; x <= x0; ++x) row += cells_[index(x - 1, y - 1)];
      for (int x = x0 + 1; x <= width_; ++x) {
        row += cells_[index(x - 1, y - 1)];
        integral_[y * stride + x] = integral_[(y - 1) * stride + x] + row;
      }
    }
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> cells_;
  std::vector<std::int64_t> integral_;
};

inline void mark_occupied(Cell corner, Extent box, OccupancyGrid& grid) { grid.mark(corner, box); }

/// Definitional admissibility test: the four box corners, the box center and every cell center
/// lie in the slice, and no cell of the box is occupied. Anchors that put the box outside the
/// canvas are inadmissible.
inline bool box_admissible(Cell corner, Extent box, const SliceRegion& s, const OccupancyGrid& g) {
  if (box.w <= 0 || box.h <= 0 || !g.in_bounds(corner, box)) return false;
  const double x0 = corner.x, y0 = corner.y, x1 = x0 + box.w, y1 = y0 + box.h;
  for (Point p : {Point{x0, y0}, Point{x1, y0}, Point{x0, y1}, Point{x1, y1},
                  Point{(x0 + x1) / 2, (y0 + y1) / 2}})
    if (!point_in_slice(p, s)) return false;
  for (int y = corner.y; y < corner.y + box.h; ++y)
    for (int x = corner.x; x < corner.x + box.w; ++x)
      if (!point_in_slice({x + 0.5, y + 0.5}, s)) return false;
  return g.count(corner.x, corner.y, box.w, box.h) == 0;
}

/// A slice rasterized onto a canvas: membership of every lattice point and every cell center,
/// plus a summed-area table of cells outside the slice. Makes each admissibility test O(1).
class SliceMask {
public:
  SliceMask(const SliceRegion& region, int width, int height)
      : region_(region), width_(width), height_(height),
        lattice_(static_cast<std::size_t>(width + 1) * (height + 1), 0),
        outside_(static_cast<std::size_t>(width + 1) * (height + 1), 0) {
    bounds_ = {width + 1, height + 1, -1, -1};
    for (int y = 0; y <= height; ++y)
      for (int x = 0; x <= width; ++x)
        if (point_in_slice({double(x), double(y)}, region)) {
          lattice_[lindex(x, y)] = 1;
          bounds_.min_x = std::min(bounds_.min_x, x);
          bounds_.min_y = std::min(bounds_.min_y, y);
          bounds_.max_x = std::max(bounds_.max_x, x);
          bounds_.max_y = std::max(bounds_.max_y, y);
        }
    const std::size_t stride = width + 1;
    for (int y = 1; y <= height; ++y) {
      std::int64_t row = 0;
      for (int x = 1; x <= width; ++x) {
        row += point_in_slice({x - 0.5, y - 0.5}, region) ? 0 : 1;
        outside_[y * stride + x] = outside_[(y - 1) * stride + x] + row;
      }
    }
  }

  const SliceRegion& region() const noexcept { return region_; }
  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }

  bool lattice_in(int x, int y) const { return lattice_[lindex(x, y)] != 0; }

  std::int64_t outside_count(int x, int y, int w, int h) const {
    const std::size_t stride = width_ + 1;
    auto at = [&](int xx, int yy) { return outside_[yy * stride + xx]; };
    return at(x + w, y + h) - at(x, y + h) - at(x + w, y) + at(x, y);
  }

  /// Same answer as box_admissible(corner, box, region(), g) for a grid of the mask's size.
  bool admissible(Cell c, Extent box, const OccupancyGrid& g) const {
    if (box.w <= 0 || box.h <= 0 || c.x < 0 || c.y < 0 || c.x + box.w > width_ ||
        c.y + box.h > height_)
      return false;
    const int x1 = c.x + box.w, y1 = c.y + box.h;
    if (!lattice_in(c.x, c.y) || !lattice_in(x1, c.y) || !lattice_in(c.x, y1) ||
        !lattice_in(x1, y1))
      return false;
    if (outside_count(c.x, c.y, box.w, box.h) != 0) return false;
    if (g.count(c.x, c.y, box.w, box.h) != 0) return false;
    return point_in_slice({c.x + box.w / 2.0, c.y + box.h / 2.0}, region_);
  }

  /// Every admissible anchor, row-major (y ascending, then x ascending).
  std::vector<Cell> candidates(Extent box, const OccupancyGrid& g) const {
    std::vector<Cell> out;
    if (box.w <= 0 || box.h <= 0 || bounds_.max_x < 0) return out;
    // All four corners must be lattice points inside the slice.
    const int y_end = std::min(bounds_.max_y - box.h, height_ - box.h);
    const int x_end = std::min(bounds_.max_x - box.w, width_ - box.w);
    for (int y = bounds_.min_y; y <= y_end; ++y)
      for (int x = bounds_.min_x; x <= x_end; ++x)
        if (admissible({x, y}, box, g)) out.push_back({x, y});
    return out;
  }

private:
  struct Bounds {
    int min_x, min_y, max_x, max_y;
  };

  std::size_t lindex(int x, int y) const { return static_cast<std::size_t>(y) * (width_ + 1) + x; }

  SliceRegion region_;
  int width_;
  int height_;
  Bounds bounds_{};
  std::vector<std::uint8_t> lattice_;
  std::vector<std::int64_t> outside_;
};

/// Every integer anchor at which `box` is admissible, in row-major order.
inline std::vector<Cell> candidate_corners(Extent box, const SliceRegion& s, const OccupancyGrid& g) {
  return SliceMask(s, g.width(), g.height()).candidates(box, g);
}

}  // namespace topiccloud
