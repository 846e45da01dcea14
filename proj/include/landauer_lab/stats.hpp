#pragma once

// Order statistics and small regression helpers shared by the experiments.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace lab::stats {

/// Quantile with linear interpolation between order statistics (the
/// (n - 1) p rule). Throws InvalidInput on empty input or p outside [0, 1].
double quantile(std::span<const double> values, double p);
double median(std::span<const double> values);
double mean(std::span<const double> values);
/// Standard error of the mean, sample standard deviation / sqrt(n); 0 for n < 2.
double standard_error(std::span<const double> values);

struct Interval {
  double lower;
  double upper;
};

/// Percentile bootstrap interval for median(a) - median(b).
Interval bootstrap_median_difference(std::span<const double> a, std::span<const double> b,
                                     std::size_t resamples, std::uint64_t seed,
                                     double confidence = 0.95);

struct LineFit {
  double slope;
  double intercept;
};
/// Ordinary least squares y = slope * x + intercept.
LineFit least_squares_line(std::span<const double> x, std::span<const double> y);

/// `points` values from lo to hi inclusive, equally spaced in log.
std::vector<double> log_grid(double lo, double hi, std::size_t points);

}  // namespace lab::stats
