#pragma once

// Planar helpers for nonparametric bivariate confidence regions.

#include <cstddef>
#include <span>
#include <vector>

namespace lab {

struct Point2 {
  double x;
  double y;
};

/// Coordinate-wise median (average of the two middle order statistics for
/// even counts).
Point2 bivariate_median(std::span<const Point2> points);

/// Indices (into `points`) of the strict convex hull vertices in
/// counterclockwise order, starting at the lowest-x (then lowest-y) point.
/// Collinear boundary points and duplicates are not vertices. Only indices in
/// `subset` are considered.
std::vector<std::size_t> convex_hull(std::span<const Point2> points,
                                     std::span<const std::size_t> subset);
std::vector<std::size_t> convex_hull(std::span<const Point2> points);

struct HullLayer {
  std::vector<std::size_t> indices;  // counterclockwise
  std::vector<Point2> vertices;
  double retained_fraction = 1.0;  // fraction of all points left after this layer
};

struct HullPeel {
  std::vector<HullLayer> layers;  // peeled, outermost first
  HullLayer polytope;             // hull of the retained points
  Point2 median{};
  bool degenerate = false;  // polytope has fewer than 3 vertices
};

/// Removes convex hull layers until the retained fraction of points first
/// drops to <= target_fraction, then reports the hull of what remains.
HullPeel convex_hull_peel(std::span<const Point2> points, double target_fraction = 0.95);

/// Counterclockwise polygon test; true only for points strictly inside.
bool strictly_inside(std::span<const Point2> ccw_polygon, Point2 p);

}  // namespace lab
