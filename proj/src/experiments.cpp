#include "landauer_lab/experiments.hpp"

#include "landauer_lab/errors.hpp"
#include "landauer_lab/parallel.hpp"
#include "landauer_lab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <tuple>

namespace lab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void validate(const SweepConfig& c) {
  if (c.experiment.empty()) throw InvalidInput("sweep: experiment name must not be empty");
  if (c.d_s < 1) throw InvalidInput("sweep: d_s must be >= 1");
  if (c.d_r < 2) throw InvalidInput("sweep: d_r must be >= 2");
  if (c.n < 1) throw InvalidInput("sweep: n must be >= 1");
  if (c.t_grid.empty()) throw InvalidInput("sweep: temperature grid is empty");
  for (const double t : c.t_grid) {
    if (!(t > 0.0) || !std::isfinite(t)) {
      throw InvalidInput("sweep: scaled temperatures must be positive and finite");
    }
  }
  if (c.regime == Regime::mid && c.d_r == 2 && c.two_level_mid == TwoLevelMid::reject) {
    throw DomainError(
        "sweep: the mid regime is undefined for d_r = 2 (zero numerator); choose low or high, "
        "or set two-level-mid = single-gap");
  }
}

TrialRecord base_record(const SweepConfig& c, std::size_t point, std::size_t k,
                        std::uint64_t seed) {
  TrialRecord r;
  r.experiment = c.experiment;
  r.trial = point * c.n + k;
  r.d_s = c.d_s;
  r.d_r = c.d_r;
  r.regime = c.regime;
  r.t_tilde = c.t_grid[point];
  r.rho_s_method = c.rho_s_method;
  r.seed = seed;
  r.stream_index = k;
  return r;
}

void mark_skipped(TrialRecord& r) {
  r.skipped = true;
  r.beta = r.q_avg = r.delta_s = r.gamma = r.gamma_bound = r.mu = r.omega = kNaN;
  r.betaq_minus_gamma = r.gamma_minus_omega = kNaN;
}

// All grid points for sample k.
std::vector<TrialRecord> run_sample(const SweepConfig& c, std::uint64_t seed, std::size_t k) {
  RandomStream stream(seed, k);
  const Index d = c.d_s * c.d_r;
  UnitaryMatrix u = haar_unitary(d, stream);
  const DensityMatrix rho_s = random_density_matrix(c.d_s, stream, c.rho_s_method);
  const LocalHamiltonians h = extract_hamiltonians(u, c.d_s, c.d_r);
  if (c.mode == ProcessMode::thermal) {
    u = thermal_operation(h.system, h.reservoir, stream, c.conservation);
  }
  const EigenDecomposition h_r_eig = hermitian_eig(h.reservoir);

  std::vector<TrialRecord> out;
  out.reserve(c.t_grid.size());
  std::vector<double> betas;
  try {
    for (const double t : c.t_grid) {
      betas.push_back(beta_for_target(h_r_eig.values, {c.regime, t, c.two_level_mid}));
    }
  } catch (const DegenerateSpectrum&) {
    for (std::size_t p = 0; p < c.t_grid.size(); ++p) {
      out.push_back(base_record(c, p, k, seed));
      mark_skipped(out.back());
    }
    return out;
  }

  const ProcessKernel kernel(u, rho_s, h_r_eig);
  for (std::size_t p = 0; p < c.t_grid.size(); ++p) {
    TrialRecord r = base_record(c, p, k, seed);
    const double beta = betas[p];
    const auto v = kernel.evaluate(beta);
    const BoundPair b = bounds(v.delta_s, c.d_r, c.correction);
    r.beta = beta;
    r.q_avg = v.q_avg;
    r.delta_s = v.delta_s;
    r.gamma = v.gamma;
    r.gamma_bound = gpm_bound(v.gamma);
    r.mu = mu(v.gamma);
    r.omega = b.rw;
    r.betaq_minus_gamma = beta * v.q_avg - r.gamma_bound;
    r.gamma_minus_omega = r.gamma_bound - b.rw;
    out.push_back(std::move(r));
  }
  return out;
}

SweepConfig to_sweep(const BoundConfig& b) {
  SweepConfig c;
  c.experiment = b.experiment;
  c.d_s = b.d_s;
  c.d_r = b.d_r;
  c.regime = b.regime;
  c.t_grid = {b.t_tilde};
  c.n = b.n;
  c.rho_s_method = b.rho_s_method;
  c.correction = b.correction;
  c.mode = b.mode;
  c.conservation = b.conservation;
  c.two_level_mid = b.two_level_mid;
  c.master_seed = b.master_seed;
  c.workers = b.workers;
  return c;
}

}  // namespace

ProcessMode parse_process_mode(std::string_view name) {
  if (name == "haar") return ProcessMode::haar;
  if (name == "thermal") return ProcessMode::thermal;
  throw InvalidInput("unknown process mode '" + std::string(name) +
                     "' (expected haar or thermal)");
}

std::string to_string(ProcessMode mode) {
  return mode == ProcessMode::haar ? "haar" : "thermal";
}

std::vector<TrialRecord> temperature_sweep(const SweepConfig& config) {
  validate(config);
  const std::uint64_t seed = experiment_seed(config.master_seed, config.experiment);
  auto per_sample = parallel_map(config.n, config.workers,
                                 [&](std::size_t k) { return run_sample(config, seed, k); });

  std::vector<TrialRecord> records;
  records.reserve(config.n * config.t_grid.size());
  for (std::size_t p = 0; p < config.t_grid.size(); ++p) {
    for (auto& sample : per_sample) records.push_back(std::move(sample[p]));
  }
  return records;
}

std::vector<TrialRecord> bound_compare_sweep(const BoundConfig& config) {
  if (!(config.t_tilde > 0.0) || !std::isfinite(config.t_tilde)) {
    throw InvalidInput("bounds: scaled temperature must be positive and finite");
  }
  return temperature_sweep(to_sweep(config));
}

std::size_t count_skipped(std::span<const TrialRecord> records) {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const auto& r) { return r.skipped; }));
}

double fraction_gpm_above_landauer(std::span<const TrialRecord> records) {
  std::size_t used = 0;
  std::size_t above = 0;
  for (const auto& r : records) {
    if (r.skipped) continue;
    ++used;
    if (r.gamma_bound > r.delta_s) ++above;
  }
  if (used == 0) throw InvalidInput("fraction_gpm_above_landauer: no usable records");
  return static_cast<double>(above) / static_cast<double>(used);
}

SummaryStat summary_stat(std::vector<double> values) {
  if (values.empty()) return {kNaN, kNaN, kNaN, kNaN, kNaN};
  // Sorting first makes the floating-point sums order-independent.
  std::sort(values.begin(), values.end());
  return {stats::median(values), stats::quantile(values, 0.25), stats::quantile(values, 0.75),
          stats::mean(values), stats::standard_error(values)};
}

std::vector<SummaryRow> summarize(std::span<const TrialRecord> records, GroupBy by) {
  using Key = std::tuple<std::string, Index, Index, std::string, double>;
  struct Bucket {
    std::size_t skipped = 0;
    std::vector<double> mu;
    std::vector<double> tight;
    std::vector<double> gap;
  };
  std::map<Key, Bucket> groups;
  for (const auto& r : records) {
    Key key{by.experiment ? r.experiment : std::string{}, by.dims ? r.d_s : 0,
            by.dims ? r.d_r : 0, by.regime ? to_string(r.regime) : std::string{},
            by.t_tilde ? r.t_tilde : 0.0};
    auto& bucket = groups[key];
    if (r.skipped) {
      ++bucket.skipped;
      continue;
    }
    bucket.mu.push_back(r.mu);
    bucket.tight.push_back(r.betaq_minus_gamma);
    bucket.gap.push_back(r.gamma_minus_omega);
  }

  std::vector<SummaryRow> rows;
  rows.reserve(groups.size());
  for (auto& [key, bucket] : groups) {
    SummaryRow row;
    std::tie(row.experiment, row.d_s, row.d_r, row.regime, row.t_tilde) = key;
    if (!by.t_tilde) row.t_tilde = kNaN;
    row.count = bucket.mu.size();
    row.skipped = bucket.skipped;
    row.mu = summary_stat(std::move(bucket.mu));
    row.betaq_minus_gamma = summary_stat(std::move(bucket.tight));
    row.gamma_minus_omega = summary_stat(std::move(bucket.gap));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace lab
