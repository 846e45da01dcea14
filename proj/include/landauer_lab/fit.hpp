#pragma once

#include <array>
#include <span>

namespace lab {

struct FitPoint {
  double t;
  double mu;
};

/// Least-squares fit of mu(T) = a (1 - exp(-b / T)).
struct FitResult {
  double a = 0.0;
  double b = 0.0;
  double cov_aa = 0.0;
  double cov_ab = 0.0;
  double cov_bb = 0.0;
  double residual_norm = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  bool degenerate = false;  // all mu == 0: a = 0 and b is arbitrary

  double evaluate(double t) const;
  /// Linearized pointwise standard error of the fitted curve at t.
  double standard_error(double t) const;
};

/// Levenberg-Marquardt from a = max mu, b = median T; stops when the relative
/// step drops below 1e-10 or after 200 iterations. Points are sorted
/// internally, so the result does not depend on input order.
FitResult fit_saturating_exponential(std::span<const FitPoint> points);

}  // namespace lab
