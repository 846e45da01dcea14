#include "landauer_lab/fit.hpp"

#include "landauer_lab/errors.hpp"
#include "landauer_lab/stats.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace lab {

namespace {

constexpr int kMaxIterations = 200;
constexpr double kRelativeStep = 1e-10;
constexpr double kGradientTolerance = 1e-8;

struct Model {
  const std::vector<FitPoint>& points;

  Eigen::VectorXd residuals(const Eigen::Vector2d& p) const {
    Eigen::VectorXd r(static_cast<Eigen::Index>(points.size()));
    for (std::size_t i = 0; i < points.size(); ++i) {
      r(static_cast<Eigen::Index>(i)) = p(0) * -std::expm1(-p(1) / points[i].t) - points[i].mu;
    }
    return r;
  }

  Eigen::MatrixX2d jacobian(const Eigen::Vector2d& p) const {
    Eigen::MatrixX2d j(static_cast<Eigen::Index>(points.size()), 2);
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double t = points[i].t;
      const double decay = std::exp(-p(1) / t);
      j(static_cast<Eigen::Index>(i), 0) = -std::expm1(-p(1) / t);
      j(static_cast<Eigen::Index>(i), 1) = p(0) * decay / t;
    }
    return j;
  }
};

}  // namespace

double FitResult::evaluate(double t) const { return a * -std::expm1(-b / t); }

double FitResult::standard_error(double t) const {
  const double g_a = -std::expm1(-b / t);
  const double g_b = a * std::exp(-b / t) / t;
  const double var = g_a * g_a * cov_aa + 2.0 * g_a * g_b * cov_ab + g_b * g_b * cov_bb;
  return std::sqrt(std::max(var, 0.0));
}

FitResult fit_saturating_exponential(std::span<const FitPoint> input) {
  std::vector<FitPoint> points(input.begin(), input.end());
  for (const auto& p : points) {
    if (!std::isfinite(p.t) || p.t <= 0.0 || !std::isfinite(p.mu)) {
      throw InvalidInput("fit: temperatures must be positive and values finite");
    }
  }
  std::sort(points.begin(), points.end(), [](const FitPoint& x, const FitPoint& y) {
    return x.t < y.t || (x.t == y.t && x.mu < y.mu);
  });
  std::size_t distinct = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i == 0 || points[i].t != points[i - 1].t) ++distinct;
  }
  if (distinct < 3) throw InvalidInput("fit: need at least 3 distinct temperatures");

  std::vector<double> ts;
  double max_mu = 0.0;
  bool all_zero = true;
  for (const auto& p : points) {
    ts.push_back(p.t);
    max_mu = std::max(max_mu, p.mu);
    all_zero = all_zero && p.mu == 0.0;
  }

  FitResult result;
  Eigen::Vector2d params(max_mu, stats::median(ts));
  if (all_zero) {
    result.a = 0.0;
    result.b = params(1);
    result.converged = true;
    result.degenerate = true;
    return result;
  }

  const Model model{points};
  Eigen::VectorXd r = model.residuals(params);
  double cost = r.squaredNorm();
  Eigen::MatrixX2d jac = model.jacobian(params);
  Eigen::Matrix2d normal = jac.transpose() * jac;
  Eigen::Vector2d gradient = jac.transpose() * r;
  double damping = 1e-3;
  bool small_step = false;

  int iter = 0;
  for (; iter < kMaxIterations && !small_step; ++iter) {
    // Marquardt scaling: damp each parameter by its own curvature.
    Eigen::Matrix2d damped = normal;
    damped.diagonal() *= 1.0 + damping;
    const Eigen::Vector2d step = damped.ldlt().solve(-gradient);
    const Eigen::Vector2d candidate = params + step;
    small_step = step.norm() <= kRelativeStep * (params.norm() + kRelativeStep);

    double candidate_cost = std::numeric_limits<double>::infinity();
    Eigen::VectorXd candidate_r;
    if (step.allFinite() && candidate(0) > 0.0 && candidate(1) > 0.0) {
      candidate_r = model.residuals(candidate);
      candidate_cost = candidate_r.squaredNorm();
    }
    if (candidate_cost <= cost) {
      params = candidate;
      r = std::move(candidate_r);
      cost = candidate_cost;
      jac = model.jacobian(params);
      normal = jac.transpose() * jac;
      gradient = jac.transpose() * r;
      damping = std::max(damping / 3.0, 1e-12);
    } else {
      damping *= 4.0;
      if (damping > 1e16) small_step = true;
    }
  }

  result.a = params(0);
  result.b = params(1);
  result.iterations = iter;
  result.residual_norm = std::sqrt(cost);
  result.gradient_norm = gradient.norm();
  const double gradient_scale = std::max(1.0, jac.norm() * result.residual_norm);
  result.converged = small_step && result.gradient_norm <= kGradientTolerance * gradient_scale;

  const auto dof = static_cast<double>(points.size()) - 2.0;
  const double sigma2 = dof > 0.0 ? cost / dof : 0.0;
  const Eigen::FullPivLU<Eigen::Matrix2d> lu(normal);
  if (lu.isInvertible()) {
    const Eigen::Matrix2d cov = sigma2 * lu.inverse();
    result.cov_aa = cov(0, 0);
    result.cov_ab = cov(0, 1);
    result.cov_bb = cov(1, 1);
  } else {
    result.cov_aa = result.cov_ab = result.cov_bb = std::numeric_limits<double>::quiet_NaN();
  }
  return result;
}

}  // namespace lab
