#include "landauer_lab/stats.hpp"

#include "landauer_lab/errors.hpp"
#include "landauer_lab/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lab::stats {

namespace {

double sorted_quantile(const std::vector<double>& sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

double quantile(std::span<const double> values, double p) {
  if (values.empty()) throw InvalidInput("quantile: empty input");
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("quantile: p must lie in [0, 1]");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  return sorted_quantile(sorted, p);
}

double median(std::span<const double> values) { return quantile(values, 0.5); }

double mean(std::span<const double> values) {
  if (values.empty()) throw InvalidInput("mean: empty input");
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double standard_error(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  const double m = mean(values);
  double ss = 0.0;
  for (const double v : values) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
}

Interval bootstrap_median_difference(std::span<const double> a, std::span<const double> b,
                                     std::size_t resamples, std::uint64_t seed,
                                     double confidence) {
  if (a.empty() || b.empty()) throw InvalidInput("bootstrap: empty sample");
  if (resamples < 10) throw InvalidInput("bootstrap: need at least 10 resamples");
  RandomStream stream(seed, 0);
  std::vector<double> diffs;
  diffs.reserve(resamples);
  std::vector<double> ra(a.size());
  std::vector<double> rb(b.size());
  for (std::size_t r = 0; r < resamples; ++r) {
    for (auto& x : ra) x = a[stream.below(a.size())];
    for (auto& x : rb) x = b[stream.below(b.size())];
    diffs.push_back(median(ra) - median(rb));
  }
  std::sort(diffs.begin(), diffs.end());
  const double tail = 0.5 * (1.0 - confidence);
  return {sorted_quantile(diffs, tail), sorted_quantile(diffs, 1.0 - tail)};
}

LineFit least_squares_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw InvalidInput("least_squares_line: need at least two paired points");
  }
  const double mx = mean(x);
  const double my = mean(y);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw InvalidInput("least_squares_line: abscissae are all equal");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

std::vector<double> log_grid(double lo, double hi, std::size_t points) {
  if (!(lo > 0.0) || !(hi >= lo) || !std::isfinite(hi)) {
    throw InvalidInput("log_grid: need 0 < lo <= hi");
  }
  if (points == 0) throw InvalidInput("log_grid: need at least one point");
  if (points == 1) return {lo};
  std::vector<double> grid(points);
  const double llo = std::log(lo);
  const double step = (std::log(hi) - llo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid[i] = std::exp(llo + step * static_cast<double>(i));
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

}  // namespace lab::stats
