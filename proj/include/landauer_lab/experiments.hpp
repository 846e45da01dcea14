#pragma once

// Monte Carlo sweeps over random Landauer processes and their aggregates.

#include "landauer_lab/landauer.hpp"
#include "landauer_lab/random.hpp"
#include "landauer_lab/temperature.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lab {

enum class ProcessMode {
  haar,     // U itself
  thermal,  // energy-conserving unitary built from the Hamiltonians extracted from U
};

ProcessMode parse_process_mode(std::string_view name);
std::string to_string(ProcessMode mode);

struct TrialRecord {
  std::string experiment;
  std::size_t trial = 0;
  Index d_s = 0;
  Index d_r = 0;
  Regime regime = Regime::mid;
  double t_tilde = 0.0;
  double beta = 0.0;
  StateSampling rho_s_method = StateSampling::induced_hs;
  double q_avg = 0.0;
  double delta_s = 0.0;
  double gamma = 0.0;        // Gamma
  double gamma_bound = 0.0;  // -ln Gamma
  double mu = 0.0;
  double omega = 0.0;
  double betaq_minus_gamma = 0.0;
  double gamma_minus_omega = 0.0;
  bool skipped = false;  // degenerate reservoir spectrum; numeric fields are NaN
  std::uint64_t seed = 0;          // stream master seed
  std::uint64_t stream_index = 0;  // sample ordinal
};

struct SweepConfig {
  std::string experiment = "sweep";
  Index d_s = 2;
  Index d_r = 2;
  Regime regime = Regime::mid;
  std::vector<double> t_grid;
  std::size_t n = 100;  // samples per grid point
  StateSampling rho_s_method = StateSampling::induced_hs;
  Correction correction = Correction::zero();
  ProcessMode mode = ProcessMode::haar;
  EnergyConservation conservation = EnergyConservation::total;
  TwoLevelMid two_level_mid = TwoLevelMid::reject;
  std::uint64_t master_seed = 0;
  unsigned workers = 1;
};

/// n sampled processes, each evaluated at every grid point (common random
/// numbers across the grid). Sample k draws, from stream
/// (experiment_seed(master_seed, experiment), k): U, then rho_s, then the
/// thermal unitary if requested. Records are ordered point-major with
/// trial = point * n + k. The output is independent of the worker count.
std::vector<TrialRecord> temperature_sweep(const SweepConfig& config);

struct BoundConfig {
  std::string experiment = "bounds";
  Index d_s = 2;
  Index d_r = 2;
  Regime regime = Regime::mid;
  double t_tilde = 1.0;
  std::size_t n = 1000;
  StateSampling rho_s_method = StateSampling::induced_hs;
  Correction correction = Correction::zero();
  ProcessMode mode = ProcessMode::haar;
  EnergyConservation conservation = EnergyConservation::total;
  TwoLevelMid two_level_mid = TwoLevelMid::reject;
  std::uint64_t master_seed = 0;
  unsigned workers = 1;
};

std::vector<TrialRecord> bound_compare_sweep(const BoundConfig& config);

std::size_t count_skipped(std::span<const TrialRecord> records);

/// Fraction of non-skipped records with -ln Gamma > delta_S.
double fraction_gpm_above_landauer(std::span<const TrialRecord> records);

struct SummaryStat {
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double mean = 0.0;
  double stderr_mean = 0.0;
};

struct GroupBy {
  bool experiment = true;
  bool dims = true;
  bool regime = true;
  bool t_tilde = true;
};

/// Ungrouped keys are reported as empty / zero / NaN.
struct SummaryRow {
  std::string experiment;
  Index d_s = 0;
  Index d_r = 0;
  std::string regime;
  double t_tilde = 0.0;
  std::size_t count = 0;  // non-skipped records
  std::size_t skipped = 0;
  SummaryStat mu;
  SummaryStat betaq_minus_gamma;
  SummaryStat gamma_minus_omega;
};

/// One row per group, groups in ascending key order. Independent of record
/// order.
std::vector<SummaryRow> summarize(std::span<const TrialRecord> records, GroupBy by = {});

SummaryStat summary_stat(std::vector<double> values);

}  // namespace lab
