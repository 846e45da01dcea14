#include "landauer_lab/concentration.hpp"

#include "landauer_lab/errors.hpp"
#include "landauer_lab/parallel.hpp"
#include "landauer_lab/random.hpp"
#include "landauer_lab/stats.hpp"

#include <cmath>
#include <utility>

namespace lab {

double reduced_distance(const UnitaryMatrix& u, const DensityMatrix& tau, Index d_s, Index d_r,
                        Subsystem keep) {
  if (tau.dim() != d_s * d_r || u.dim() != d_s * d_r) {
    throw InvalidInput("reduced_distance: operators must act on d_s * d_r");
  }
  const ComplexMatrix rotated = u.matrix() * tau.matrix() * u.matrix().adjoint();
  ComplexMatrix reduced = partial_trace(rotated, d_s, d_r, keep);
  const Index d_keep = reduced.rows();
  reduced -= ComplexMatrix::Identity(d_keep, d_keep) / static_cast<double>(d_keep);
  return trace_norm(HermitianMatrix::symmetrized(reduced));
}

double levy_bound(double epsilon, Index d_s, Index d_r) {
  if (!(epsilon >= 0.0)) throw InvalidInput("levy_bound: epsilon must be nonnegative");
  const double d = static_cast<double>(d_s) * static_cast<double>(d_r);
  return 2.0 * std::exp(-d * epsilon * epsilon / 16.0);
}

std::vector<double> default_epsilon_grid() { return stats::log_grid(0.01, 1.5, 16); }

TailReport tail_experiment(Index d_s, Index d_r, const DensityMatrix& tau, Subsystem keep,
                           std::string tau_description, std::size_t n,
                           const std::vector<double>& epsilons, std::uint64_t seed,
                           unsigned workers) {
  if (n < 100) throw InvalidInput("tail_experiment: need at least 100 samples");
  if (d_s <= 0 || d_r <= 0 || tau.dim() != d_s * d_r) {
    throw InvalidInput("tail_experiment: tau must act on d_s * d_r");
  }
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] >= 0.0) || (i > 0 && epsilons[i] <= epsilons[i - 1])) {
      throw InvalidInput("tail_experiment: epsilon grid must be nonnegative and ascending");
    }
  }

  const Index d = d_s * d_r;
  const std::vector<double> distances = parallel_map(n, workers, [&](std::size_t k) {
    RandomStream stream(seed, k);
    return reduced_distance(haar_unitary(d, stream), tau, d_s, d_r, keep);
  });

  TailReport report;
  report.d_s = d_s;
  report.d_r = d_r;
  report.keep = keep;
  report.tau_description = std::move(tau_description);
  report.samples = n;
  report.offset = keep == Subsystem::system
                      ? std::sqrt(static_cast<double>(d_s) / static_cast<double>(d_r))
                      : std::sqrt(static_cast<double>(d_r) / static_cast<double>(d_s));
  report.mean_distance = stats::mean(distances);
  report.mean_distance_stderr = stats::standard_error(distances);
  const double count = static_cast<double>(n);
  for (const double eps : epsilons) {
    const double threshold = report.offset + eps;
    std::size_t hits = 0;
    for (const double x : distances) hits += x >= threshold ? 1 : 0;
    const double tail = static_cast<double>(hits) / count;
    report.points.push_back({eps, threshold, tail, std::sqrt(tail * (1.0 - tail) / count),
                             levy_bound(eps, d_s, d_r)});
  }
  return report;
}

TailReport tail_experiment(Index d_s, const DensityMatrix& rho_r, std::size_t n,
                           const std::vector<double>& epsilons, std::uint64_t seed,
                           unsigned workers) {
  const Index d_r = rho_r.dim();
  const auto tau = DensityMatrix::assume_valid(
      tensor_product(DensityMatrix::maximally_mixed(d_s).matrix(), rho_r.matrix()));
  return tail_experiment(d_s, d_r, tau, Subsystem::system, "maximally-mixed (x) rho_r", n,
                         epsilons, seed, workers);
}

PurityReport purity_experiment(Index d_s, Index d_r, const DensityMatrix& tau,
                               std::string tau_description, std::size_t n, std::uint64_t seed,
                               unsigned workers) {
  if (n < 1000) throw InvalidInput("purity_experiment: need at least 1000 samples");
  if (d_s <= 0 || d_r <= 0 || tau.dim() != d_s * d_r) {
    throw InvalidInput("purity_experiment: tau must act on d_s * d_r");
  }
  const Index d = d_s * d_r;
  struct Sample {
    double purity;
    double distance;
  };
  const auto samples = parallel_map(n, workers, [&](std::size_t k) {
    RandomStream stream(seed, k);
    const UnitaryMatrix u = haar_unitary(d, stream);
    const ComplexMatrix rotated = u.matrix() * tau.matrix() * u.matrix().adjoint();
    const auto sigma_s =
        DensityMatrix::assume_valid(partial_trace(rotated, d_s, d_r, Subsystem::system));
    const ComplexMatrix diff =
        sigma_s.matrix() - ComplexMatrix::Identity(d_s, d_s) / static_cast<double>(d_s);
    return Sample{purity(sigma_s), trace_norm(HermitianMatrix::symmetrized(diff))};
  });

  std::vector<double> purities;
  std::vector<double> distances;
  purities.reserve(n);
  distances.reserve(n);
  for (const auto& s : samples) {
    purities.push_back(s.purity);
    distances.push_back(s.distance);
  }
  PurityReport report;
  report.d_s = d_s;
  report.d_r = d_r;
  report.tau_description = std::move(tau_description);
  report.samples = n;
  report.mean_purity = stats::mean(purities);
  report.purity_stderr = stats::standard_error(purities);
  const double ds = static_cast<double>(d_s);
  const double dr = static_cast<double>(d_r);
  report.pure_orbit_prediction = (ds + dr) / (ds * dr + 1.0);
  report.mean_trace_distance = stats::mean(distances);
  report.trace_distance_stderr = stats::standard_error(distances);
  report.trace_distance_bound = std::sqrt(ds / dr);
  return report;
}

UniformityReport matrix_element_uniformity(Index d, std::size_t n, std::uint64_t seed,
                                           unsigned workers) {
  if (n < 1000) throw InvalidInput("matrix_element_uniformity: need at least 1000 samples");
  if (d <= 0) throw InvalidInput("matrix_element_uniformity: dimension must be positive");
  const auto raw = parallel_map(n, workers, [&](std::size_t k) {
    RandomStream stream(seed, k);
    const UnitaryMatrix u = haar_unitary(d, stream);
    const auto i = static_cast<Index>(stream.below(static_cast<std::uint64_t>(d)));
    const auto j = static_cast<Index>(stream.below(static_cast<std::uint64_t>(d)));
    return std::norm(u.matrix()(i, j));
  });
  std::vector<double> scaled(raw.size());
  for (std::size_t k = 0; k < raw.size(); ++k) scaled[k] = static_cast<double>(d) * raw[k];

  auto variance = [](const std::vector<double>& v) {
    const double m = stats::mean(v);
    double ss = 0.0;
    for (const double x : v) ss += (x - m) * (x - m);
    return ss / static_cast<double>(v.size() - 1);
  };
  UniformityReport report;
  report.d = d;
  report.samples = n;
  report.mean_scaled = stats::mean(scaled);
  report.mean_scaled_stderr = stats::standard_error(scaled);
  report.variance_scaled = variance(scaled);
  report.variance_raw = variance(raw);
  return report;
}

}  // namespace lab
