#include "landauer_lab/geometry.hpp"

#include "landauer_lab/errors.hpp"
#include "landauer_lab/stats.hpp"

#include <algorithm>
#include <numeric>

namespace lab {

namespace {

double cross(Point2 o, Point2 a, Point2 b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

HullLayer make_layer(std::span<const Point2> points, std::vector<std::size_t> indices,
                     double retained) {
  HullLayer layer;
  layer.vertices.reserve(indices.size());
  for (const auto i : indices) layer.vertices.push_back(points[i]);
  layer.indices = std::move(indices);
  layer.retained_fraction = retained;
  return layer;
}

}  // namespace

Point2 bivariate_median(std::span<const Point2> points) {
  if (points.empty()) throw InvalidInput("bivariate_median: no points");
  std::vector<double> xs;
  std::vector<double> ys;
  xs.reserve(points.size());
  ys.reserve(points.size());
  for (const auto& p : points) {
    xs.push_back(p.x);
    ys.push_back(p.y);
  }
  return {stats::median(xs), stats::median(ys)};
}

std::vector<std::size_t> convex_hull(std::span<const Point2> points,
                                     std::span<const std::size_t> subset) {
  std::vector<std::size_t> order(subset.begin(), subset.end());
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    const Point2 a = points[i];
    const Point2 b = points[j];
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    return i < j;
  });
  // Drop exact duplicates; the first index of each location stands for it.
  order.erase(std::unique(order.begin(), order.end(),
                          [&](std::size_t i, std::size_t j) {
                            return points[i].x == points[j].x && points[i].y == points[j].y;
                          }),
              order.end());
  if (order.size() <= 2) return order;

  // Andrew's monotone chain.
  std::vector<std::size_t> hull(2 * order.size());
  std::size_t k = 0;
  for (const auto i : order) {
    while (k >= 2 && cross(points[hull[k - 2]], points[hull[k - 1]], points[i]) <= 0.0) --k;
    hull[k++] = i;
  }
  for (std::size_t n = order.size() - 1, lower = k + 1; n-- > 0;) {
    const auto i = order[n];
    while (k >= lower && cross(points[hull[k - 2]], points[hull[k - 1]], points[i]) <= 0.0) --k;
    hull[k++] = i;
  }
  hull.resize(k - 1);
  return hull;
}

std::vector<std::size_t> convex_hull(std::span<const Point2> points) {
  std::vector<std::size_t> all(points.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return convex_hull(points, all);
}

HullPeel convex_hull_peel(std::span<const Point2> points, double target_fraction) {
  if (points.empty()) throw InvalidInput("convex_hull_peel: no points");
  if (!(target_fraction > 0.0 && target_fraction <= 1.0)) {
    throw InvalidInput("convex_hull_peel: target fraction must lie in (0, 1]");
  }
  HullPeel peel;
  peel.median = bivariate_median(points);
  const auto total = static_cast<double>(points.size());

  std::vector<std::size_t> remaining(points.size());
  std::iota(remaining.begin(), remaining.end(), std::size_t{0});
  while (!remaining.empty() && static_cast<double>(remaining.size()) / total > target_fraction) {
    auto hull = convex_hull(points, remaining);
    std::vector<std::size_t> sorted_hull = hull;
    std::sort(sorted_hull.begin(), sorted_hull.end());
    std::vector<std::size_t> next;
    next.reserve(remaining.size());
    std::set_difference(remaining.begin(), remaining.end(), sorted_hull.begin(), sorted_hull.end(),
                        std::back_inserter(next));
    remaining = std::move(next);
    peel.layers.push_back(
        make_layer(points, std::move(hull), static_cast<double>(remaining.size()) / total));
  }
  peel.polytope = make_layer(points, convex_hull(points, remaining),
                             static_cast<double>(remaining.size()) / total);
  peel.degenerate = peel.polytope.indices.size() < 3;
  return peel;
}

bool strictly_inside(std::span<const Point2> polygon, Point2 p) {
  if (polygon.size() < 3) return false;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const Point2 a = polygon[i];
    const Point2 b = polygon[(i + 1) % polygon.size()];
    if (cross(a, b, p) <= 0.0) return false;
  }
  return true;
}

}  // namespace lab
