#include <gtest/gtest.h>

#include <vector>

#include "oracles.hpp"
#include "topiccloud/geom.hpp"
#include "topiccloud/rng.hpp"

using namespace topiccloud;

namespace {

const SliceRegion kTopQuarter{{400, 400}, 300, 270, 90};

SliceRegion random_slice(Rng& rng, int w, int h) {
  const double r = 0.5 * std::min(w, h) * (0.5 + 0.5 * rng.uniform());
  const double sweep = rng.below(5) == 0 ? 360.0 : 5.0 + 340.0 * rng.uniform();
  return {{w / 2.0, h / 2.0}, r, 360.0 * rng.uniform(), sweep};
}

}  // namespace

TEST(PointInSlice, HandEvaluatedCases) {
  EXPECT_TRUE(point_in_slice({400, 150}, kTopQuarter));   // angle 270, on the start ray
  EXPECT_FALSE(point_in_slice({400, 710}, kTopQuarter));  // angle 90 and rho 310 > r
  EXPECT_FALSE(point_in_slice({400, 690}, kTopQuarter));  // inside the disk, outside the span
  EXPECT_TRUE(point_in_slice({500, 300}, kTopQuarter));   // angle 315
  EXPECT_FALSE(point_in_slice({300, 300}, kTopQuarter));  // angle 225
}

TEST(PointInSlice, EndRayBelongsToTheNextSlice) {
  // Span [270, 360): the ray at 0 degrees is excluded; the ray at 270 is included.
  EXPECT_FALSE(point_in_slice({600, 400}, kTopQuarter));
  EXPECT_TRUE(point_in_slice({600, 400}, {{400, 400}, 300, 0, 90}));
}

TEST(PointInSlice, FullDiskIsDiskMembership) {
  const SliceRegion disk{{50, 50}, 40, 123.0, 360.0};
  Rng rng(4);
  for (int i = 0; i < 2000; ++i) {
    const Point p{100 * rng.uniform(), 100 * rng.uniform()};
    EXPECT_EQ(point_in_slice(p, disk), std::hypot(p.x - 50, p.y - 50) <= 40);
  }
  EXPECT_TRUE(point_in_slice({90, 50}, disk));  // boundary rho == r is inside
}

TEST(PointInSlice, CenterBelongsToEverySlice) {
  for (double start : {0.0, 45.0, 270.0, 359.0})
    EXPECT_TRUE(point_in_slice({400, 400}, {{400, 400}, 300, start, 10}));
}

TEST(PointInSlice, AngularConvention) {
  const Point c{200, 200};
  const double r = 100;
  EXPECT_NEAR(angle_of({c.x, c.y + r}, c), 90.0, 1e-12);
  EXPECT_NEAR(angle_of({c.x, c.y - r}, c), 270.0, 1e-12);
  EXPECT_NEAR(angle_of({c.x + r, c.y}, c), 0.0, 1e-12);
  EXPECT_NEAR(angle_of({c.x - r, c.y}, c), 180.0, 1e-12);
}

TEST(PointInSlice, ContiguousSlicesPartitionTheDisk) {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> cuts;
    const int n = 2 + int(rng.below(6));
    double start = 360.0 * rng.uniform();
    std::vector<SliceRegion> slices;
    double remaining = 360.0;
    for (int k = 0; k < n; ++k) {
      const double sweep = k + 1 == n ? remaining : remaining * (0.1 + 0.5 * rng.uniform());
      slices.push_back({{0, 0}, 1.0, std::fmod(start, 360.0), sweep});
      start += sweep;
      remaining -= sweep;
    }
    for (int i = 0; i < 500; ++i) {
      const double rho = std::sqrt(rng.uniform()) * 0.999, a = 2 * std::numbers::pi * rng.uniform();
      const Point p{rho * std::cos(a), rho * std::sin(a)};
      int owners = 0;
      for (const auto& s : slices) owners += point_in_slice(p, s) ? 1 : 0;
      EXPECT_EQ(owners, 1);
    }
  }
}

TEST(OccupancyGrid, SummedAreaMatchesCellCounting) {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const int w = 1 + int(rng.below(64)), h = 1 + int(rng.below(64));
    OccupancyGrid g(w, h);
    oracle::Raster r(w, h);
    for (int m = 0; m < 12; ++m) {
      const Cell c{int(rng.below(w)), int(rng.below(h))};
      const Extent b{1 + int(rng.below(w - c.x)), 1 + int(rng.below(h - c.y))};
      if (rng.below(3) == 0) continue;
      g.mark(c, b);
      r.mark(c, b);
    }
    for (int q = 0; q < 200; ++q) {
      const int x = int(rng.below(w)), y = int(rng.below(h));
      const int bw = int(rng.below(w - x + 1)), bh = int(rng.below(h - y + 1));
      ASSERT_EQ(g.count(x, y, bw, bh), r.count(x, y, bw, bh));
    }
  }
}

TEST(OccupancyGrid, IncrementalEqualsRebuild) {
  Rng rng(6);
  OccupancyGrid g(50, 40);
  for (int m = 0; m < 30; ++m) {
    const Cell c{int(rng.below(45)), int(rng.below(35))};
    g.mark(c, {1 + int(rng.below(5)), 1 + int(rng.below(5))});
  }
  OccupancyGrid rebuilt = g;
  rebuilt.rebuild();
  EXPECT_EQ(g.integral_table(), rebuilt.integral_table());
}

TEST(OccupancyGrid, MarkIsIdempotentAndChecked) {
  OccupancyGrid once(20, 20), twice(20, 20);
  once.mark({3, 4}, {5, 6});
  twice.mark({3, 4}, {5, 6});
  twice.mark({3, 4}, {5, 6});
  EXPECT_EQ(once.integral_table(), twice.integral_table());
  EXPECT_EQ(once.count(0, 0, 20, 20), 30);
  EXPECT_THROW(once.mark({18, 0}, {5, 1}), ValidationError);
  EXPECT_THROW(once.mark({-1, 0}, {1, 1}), ValidationError);
}

TEST(BoxAdmissible, BasicCases) {
  const SliceRegion disk{{50, 50}, 45, 0, 360};
  OccupancyGrid g(100, 100);
  EXPECT_TRUE(box_admissible({40, 45}, {20, 10}, disk, g));
  g.mark({59, 54}, {1, 1});  // one occupied cell in the box
  EXPECT_FALSE(box_admissible({40, 45}, {20, 10}, disk, g));
  mark_occupied({40, 45}, {20, 10}, g);
  EXPECT_FALSE(box_admissible({40, 45}, {20, 10}, disk, g));
  EXPECT_FALSE(box_admissible({95, 0}, {10, 10}, disk, g));  // off canvas
  EXPECT_FALSE(box_admissible({-1, 50}, {3, 3}, disk, g));
}

TEST(BoxAdmissible, StraddlingABoundingRayIsRejected) {
  // Slice [270, 360) is the upper-right quarter; a box crossing x = cx sticks out of it.
  const SliceRegion quarter{{50, 50}, 45, 270, 90};
  OccupancyGrid g(100, 100);
  oracle::Raster r(100, 100);
  EXPECT_FALSE(box_admissible({45, 20}, {10, 5}, quarter, g));
  EXPECT_EQ(box_admissible({45, 20}, {10, 5}, quarter, g), oracle::admissible({45, 20}, {10, 5}, quarter, r));
  EXPECT_TRUE(box_admissible({52, 20}, {10, 5}, quarter, g));
}

TEST(CandidateCorners, BoxLargerThanCanvasIsEmpty) {
  OccupancyGrid g(30, 30);
  EXPECT_TRUE(candidate_corners({31, 2}, {{15, 15}, 15, 0, 360}, g).empty());
  EXPECT_TRUE(candidate_corners({2, 40}, {{15, 15}, 15, 0, 360}, g).empty());
}

TEST(CandidateCorners, UnitBoxCountsDiskLattice) {
  // For a 1x1 box the corner lattice points are stricter than the cell center, so compare with
  // the oracle built from the same predicate and check the cell-center disk bounds it.
  const SliceRegion disk{{40, 40}, 30, 0, 360};
  OccupancyGrid g(80, 80);
  oracle::Raster r(80, 80);
  const auto got = candidate_corners({1, 1}, disk, g);
  EXPECT_EQ(got, oracle::candidates({1, 1}, disk, r));
  EXPECT_LE(got.size(), oracle::disk_cells(disk.center, disk.radius, 80, 80));
  EXPECT_GT(got.size(), 0.95 * oracle::disk_cells(disk.center, disk.radius, 80, 80));
}

TEST(CandidateCorners, RowMajorOrder) {
  OccupancyGrid g(40, 40);
  const auto s = candidate_corners({3, 2}, {{20, 20}, 18, 30, 200}, g);
  ASSERT_FALSE(s.empty());
  for (std::size_t i = 1; i < s.size(); ++i)
    EXPECT_TRUE(s[i - 1].y < s[i].y || (s[i - 1].y == s[i].y && s[i - 1].x < s[i].x));
}

TEST(CandidateCorners, MatchesBruteForceOnRandomInstances) {
  Rng rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const int w = 8 + int(rng.below(56)), h = 8 + int(rng.below(56));
    const auto slice = random_slice(rng, w, h);
    OccupancyGrid g(w, h);
    oracle::Raster r(w, h);
    for (int m = 0; m < int(rng.below(6)); ++m) {
      const Cell c{int(rng.below(w)), int(rng.below(h))};
      const Extent b{1 + int(rng.below(std::min(8, w - c.x))), 1 + int(rng.below(std::min(8, h - c.y)))};
      g.mark(c, b);
      r.mark(c, b);
    }
    const Extent box{1 + int(rng.below(10)), 1 + int(rng.below(6))};
    ASSERT_EQ(candidate_corners(box, slice, g), oracle::candidates(box, slice, r))
        << "trial " << trial;
  }
}

TEST(CandidateCorners, ExhaustiveAgreementWithDefinitionalPredicate) {
  // Includes canvases up to 128x128 and checks every anchor, not just the returned set.
  Rng rng(77);
  for (int trial = 0; trial < 6; ++trial) {
    const int w = 64 + int(rng.below(65)), h = 64 + int(rng.below(65));
    const auto slice = random_slice(rng, w, h);
    OccupancyGrid g(w, h);
    for (int m = 0; m < 10; ++m) {
      const Cell c{int(rng.below(w - 10)), int(rng.below(h - 10))};
      g.mark(c, {1 + int(rng.below(10)), 1 + int(rng.below(10))});
    }
    const Extent box{1 + int(rng.below(16)), 1 + int(rng.below(8))};
    const SliceMask mask(slice, w, h);
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x)
        ASSERT_EQ(mask.admissible({x, y}, box, g), box_admissible({x, y}, box, slice, g))
            << x << "," << y;
  }
}
