#pragma once

// Monte Carlo checks of concentration of measure for reduced states of
// Haar-rotated (possibly mixed) joint states.

#include "landauer_lab/numerics.hpp"
#include "landauer_lab/quantum.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lab {

/// || tr_other[U tau U^dag] - 1/d_keep ||_1
double reduced_distance(const UnitaryMatrix& u, const DensityMatrix& tau, Index d_s, Index d_r,
                        Subsystem keep);

/// 2 exp(-d_s d_r eps^2 / 16)
double levy_bound(double epsilon, Index d_s, Index d_r);

/// 16 log-spaced points in [0.01, 1.5].
std::vector<double> default_epsilon_grid();

struct TailPoint {
  double epsilon;
  double threshold;  // sqrt(d_keep / d_other) + epsilon
  double empirical_tail;
  double standard_error;  // binomial
  double bound;
};

struct TailReport {
  Index d_s = 0;
  Index d_r = 0;
  Subsystem keep = Subsystem::system;
  std::string tau_description;
  std::size_t samples = 0;
  double offset = 0.0;  // sqrt(d_keep / d_other)
  double mean_distance = 0.0;
  double mean_distance_stderr = 0.0;
  std::vector<TailPoint> points;  // ascending epsilon
};

/// Samples n Haar unitaries (stream (seed, k) for sample k) and tabulates
/// Prob[distance >= offset + eps] for each eps in the grid.
TailReport tail_experiment(Index d_s, Index d_r, const DensityMatrix& tau, Subsystem keep,
                           std::string tau_description, std::size_t n,
                           const std::vector<double>& epsilons, std::uint64_t seed,
                           unsigned workers = 1);

/// tau = (1_s / d_s) (x) rho_r, keeping the system.
TailReport tail_experiment(Index d_s, const DensityMatrix& rho_r, std::size_t n,
                           const std::vector<double>& epsilons, std::uint64_t seed,
                           unsigned workers = 1);

struct PurityReport {
  Index d_s = 0;
  Index d_r = 0;
  std::string tau_description;
  std::size_t samples = 0;
  double mean_purity = 0.0;
  double purity_stderr = 0.0;
  double pure_orbit_prediction = 0.0;  // (d_s + d_r) / (d_s d_r + 1)
  double mean_trace_distance = 0.0;
  double trace_distance_stderr = 0.0;
  double trace_distance_bound = 0.0;  // sqrt(d_s / d_r)
};

/// Purity of sigma_s = tr_r[U tau U^dag] over Haar U.
PurityReport purity_experiment(Index d_s, Index d_r, const DensityMatrix& tau,
                               std::string tau_description, std::size_t n, std::uint64_t seed,
                               unsigned workers = 1);

struct UniformityReport {
  Index d = 0;
  std::size_t samples = 0;
  double mean_scaled = 0.0;  // mean of d |U_ij|^2, exactly 1 under Haar
  double mean_scaled_stderr = 0.0;
  double variance_scaled = 0.0;  // variance of d |U_ij|^2, (d - 1) / (d + 1) under Haar
  double variance_raw = 0.0;     // variance of |U_ij|^2, (d - 1) / (d^2 (d + 1)) under Haar
};

/// One uniformly chosen entry per independent Haar draw.
UniformityReport matrix_element_uniformity(Index d, std::size_t n, std::uint64_t seed,
                                           unsigned workers = 1);

}  // namespace lab
