#include "landauer_lab/landauer.hpp"

#include "landauer_lab/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <string>
#include <utility>

namespace lab {

namespace {

constexpr double kImaginaryResidue = 1e-8;
constexpr double kDegeneracyTolerance = 1e-9;

void require_process_dims(Index d_s, Index d_r, const UnitaryMatrix& u) {
  if (u.dim() != d_s * d_r) {
    throw InvalidInput("LandauerProcess: unitary dimension " + std::to_string(u.dim()) +
                       " does not match d_s * d_r = " + std::to_string(d_s * d_r));
  }
}

// Consecutive ascending values within `tol` of their predecessor share a shell.
std::vector<Index> shell_labels(const RealVector& ascending, double tol) {
  std::vector<Index> labels(static_cast<std::size_t>(ascending.size()));
  Index shell = 0;
  for (Index k = 0; k < ascending.size(); ++k) {
    if (k > 0 && ascending(k) - ascending(k - 1) > tol) ++shell;
    labels[static_cast<std::size_t>(k)] = shell;
  }
  return labels;
}

// (1 x V_r)^dag U (V_s x V_r): columns are U applied to eigenvectors of
// rho_s (x) eigenvectors of H_r, rows are expressed in (original system basis,
// H_r eigenbasis).
ComplexMatrix rotated_unitary(const UnitaryMatrix& u, const ComplexMatrix& v_s,
                              const ComplexMatrix& v_r) {
  const Index d_s = v_s.rows();
  const ComplexMatrix id_s = ComplexMatrix::Identity(d_s, d_s);
  return tensor_product(id_s, v_r).adjoint() * u.matrix() * tensor_product(v_s, v_r);
}

// T(m | j, n) = sum_s |rotated(s * d_r + m, j * d_r + n)|^2
Eigen::MatrixXd transition_table(const ComplexMatrix& rotated, Index d_s, Index d_r) {
  Eigen::MatrixXd table = Eigen::MatrixXd::Zero(d_r, d_s * d_r);
  for (Index col = 0; col < d_s * d_r; ++col) {
    for (Index s = 0; s < d_s; ++s) {
      for (Index m = 0; m < d_r; ++m) table(m, col) += std::norm(rotated(s * d_r + m, col));
    }
  }
  return table;
}

}  // namespace

LandauerProcess::LandauerProcess(DensityMatrix rho_s, HermitianMatrix h_r, double beta,
                                 UnitaryMatrix u, std::optional<HermitianMatrix> h_s)
    : LandauerProcess(std::move(rho_s), hermitian_eig(h_r), beta, std::move(u), std::move(h_s)) {}

LandauerProcess::LandauerProcess(DensityMatrix rho_s, const EigenDecomposition& h_r_eig,
                                 double beta, UnitaryMatrix u, std::optional<HermitianMatrix> h_s)
    : rho_s_(std::move(rho_s)),
      h_r_(HermitianMatrix::symmetrized(h_r_eig.vectors.matrix() *
                                        h_r_eig.values.cast<Complex>().asDiagonal() *
                                        h_r_eig.vectors.matrix().adjoint())),
      rho_r_(h_r_eig, beta),
      u_(std::move(u)),
      h_s_(std::move(h_s)) {
  require_process_dims(d_s(), d_r(), u_);
  if (h_s_ && h_s_->dim() != d_s()) throw InvalidInput("LandauerProcess: H_s dimension mismatch");
}

LocalHamiltonians extract_hamiltonians(const UnitaryMatrix& u, Index d_s, Index d_r, double t) {
  if (d_s <= 0 || d_r <= 0 || u.dim() != d_s * d_r) {
    throw InvalidInput("extract_hamiltonians: unitary does not act on d_s * d_r");
  }
  if (!std::isfinite(t) || t <= 0.0) throw InvalidInput("extract_hamiltonians: t must be positive");
  const ComplexMatrix log_u = matrix_log_unitary(u);
  const Complex i_over_t(0.0, 1.0 / t);
  return {HermitianMatrix::symmetrized(i_over_t * partial_trace(log_u, d_s, d_r, Subsystem::system)),
          HermitianMatrix::symmetrized(i_over_t *
                                       partial_trace(log_u, d_s, d_r, Subsystem::reservoir))};
}

DensityMatrix evolve(const LandauerProcess& p) {
  const ComplexMatrix& u = p.unitary().matrix();
  return DensityMatrix::assume_valid(
      u * tensor_product(p.rho_s().matrix(), p.rho_r().state().matrix()) * u.adjoint());
}

namespace {

struct EvolvedMarginals {
  DensityMatrix joint;
  DensityMatrix system;
  DensityMatrix reservoir;
};

EvolvedMarginals evolved_marginals(const LandauerProcess& p) {
  DensityMatrix joint = evolve(p);
  auto system = DensityMatrix::assume_valid(
      partial_trace(joint.matrix(), p.d_s(), p.d_r(), Subsystem::system));
  auto reservoir = DensityMatrix::assume_valid(
      partial_trace(joint.matrix(), p.d_s(), p.d_r(), Subsystem::reservoir));
  return {std::move(joint), std::move(system), std::move(reservoir)};
}

double heat_from_marginal(const LandauerProcess& p, const DensityMatrix& rho_r_final) {
  const ComplexMatrix diff = rho_r_final.matrix() - p.rho_r().state().matrix();
  return (p.h_r().matrix() * diff).trace().real();
}

}  // namespace

double average_heat(const LandauerProcess& p) {
  const auto rho_r_final = DensityMatrix::assume_valid(
      partial_trace(evolve(p).matrix(), p.d_s(), p.d_r(), Subsystem::reservoir));
  return heat_from_marginal(p, rho_r_final);
}

double entropy_change(const LandauerProcess& p) {
  const auto rho_s_final = DensityMatrix::assume_valid(
      partial_trace(evolve(p).matrix(), p.d_s(), p.d_r(), Subsystem::system));
  return von_neumann_entropy(p.rho_s()) - von_neumann_entropy(rho_s_final);
}

double gamma_direct(const LandauerProcess& p) {
  const ComplexMatrix& u = p.unitary().matrix();
  const ComplexMatrix id_s = ComplexMatrix::Identity(p.d_s(), p.d_s());
  const ComplexMatrix id_r = ComplexMatrix::Identity(p.d_r(), p.d_r());
  const ComplexMatrix heisenberg = u.adjoint() * tensor_product(id_s, p.rho_r().state().matrix()) * u;
  const Complex gamma = (heisenberg * tensor_product(p.rho_s().matrix(), id_r)).trace();
  if (std::abs(gamma.imag()) > kImaginaryResidue) {
    throw InternalError("gamma_direct: imaginary part " + std::to_string(gamma.imag()));
  }
  return gamma.real();
}

ReducedOperators reduced_operators(const LandauerProcess& p) {
  const ComplexMatrix& u = p.unitary().matrix();
  const Index d_s = p.d_s();
  const Index d_r = p.d_r();
  const ComplexMatrix mixed_s = ComplexMatrix::Identity(d_s, d_s) / static_cast<double>(d_s);
  const ComplexMatrix mixed_r = ComplexMatrix::Identity(d_r, d_r) / static_cast<double>(d_r);
  const ComplexMatrix m_s = partial_trace(
      u.adjoint() * tensor_product(mixed_s, p.rho_r().state().matrix()) * u, d_s, d_r,
      Subsystem::system);
  const ComplexMatrix m_r = partial_trace(
      u * tensor_product(p.rho_s().matrix(), mixed_r) * u.adjoint(), d_s, d_r,
      Subsystem::reservoir);
  return {DensityMatrix::assume_valid(m_s), DensityMatrix::assume_valid(m_r)};
}

double HeatDistribution::total_probability() const {
  double total = 0.0;
  for (const auto& atom : atoms) total += atom.probability;
  return total;
}

double HeatDistribution::mean() const {
  double m = 0.0;
  for (const auto& atom : atoms) m += atom.probability * atom.q;
  return m;
}

double HeatDistribution::exponential_average(double beta) const {
  double sum = 0.0;
  for (const auto& atom : atoms) {
    if (atom.probability > 0.0) sum += std::exp(std::log(atom.probability) - beta * atom.q);
  }
  return sum;
}

HeatDistribution heat_distribution(const LandauerProcess& p) {
  const Index d_s = p.d_s();
  const Index d_r = p.d_r();
  const RealVector& energies = p.rho_r().energies();
  const RealVector& populations = p.rho_r().populations();
  const auto rho_s_eig = hermitian_eig(p.rho_s().hermitian());
  const RealVector lambdas = rho_s_eig.values.cwiseMax(0.0);

  const ComplexMatrix rotated =
      rotated_unitary(p.unitary(), rho_s_eig.vectors.matrix(), p.rho_r().eigenvectors().matrix());
  const Eigen::MatrixXd table = transition_table(rotated, d_s, d_r);

  HeatDistribution dist;
  dist.merge_tolerance = 1e-10 * std::max(1.0, energies.cwiseAbs().maxCoeff());

  // Sum transition weight inside energy shells so degenerate levels do not
  // depend on the eigenbasis chosen within them.
  const auto labels = shell_labels(energies, dist.merge_tolerance);
  const Index shells = labels.back() + 1;
  RealVector shell_energy = RealVector::Zero(shells);
  RealVector shell_size = RealVector::Zero(shells);
  for (Index n = 0; n < d_r; ++n) {
    shell_energy(labels[n]) += energies(n);
    shell_size(labels[n]) += 1.0;
  }
  shell_energy.array() /= shell_size.array();

  Eigen::MatrixXd joint = Eigen::MatrixXd::Zero(shells, shells);  // (initial, final)
  for (Index n = 0; n < d_r; ++n) {
    for (Index j = 0; j < d_s; ++j) {
      const double weight = populations(n) * lambdas(j);
      if (weight == 0.0) continue;
      for (Index m = 0; m < d_r; ++m) {
        joint(labels[n], labels[m]) += weight * table(m, j * d_r + n);
      }
    }
  }

  std::vector<HeatAtom> raw;
  raw.reserve(static_cast<std::size_t>(shells * shells));
  for (Index a = 0; a < shells; ++a) {
    for (Index b = 0; b < shells; ++b) {
      const double prob = joint(a, b);
      if (prob < -1e-12) throw InternalError("heat_distribution: negative probability");
      if (prob > 0.0) raw.push_back({shell_energy(b) - shell_energy(a), prob});
    }
  }
  std::sort(raw.begin(), raw.end(), [](const HeatAtom& x, const HeatAtom& y) { return x.q < y.q; });

  for (std::size_t k = 0; k < raw.size();) {
    std::size_t end = k;
    double prob = 0.0;
    double weighted_q = 0.0;
    while (end < raw.size() && raw[end].q - raw[k].q <= dist.merge_tolerance) {
      prob += raw[end].probability;
      weighted_q += raw[end].probability * raw[end].q;
      ++end;
    }
    dist.atoms.push_back({weighted_q / prob, prob});
    k = end;
  }
  return dist;
}

double gpm_bound(double gamma) {
  if (!(gamma > 0.0)) throw InternalError("gpm_bound: Gamma must be positive, got " + std::to_string(gamma));
  return -std::log(gamma);
}

double gpm_bound(const LandauerProcess& p) { return gpm_bound(gamma_direct(p)); }

double mu(double gamma) { return std::abs(gamma - 1.0); }

double mu(const LandauerProcess& p) { return mu(gamma_direct(p)); }

double Correction::operator()(double delta_s, Index d_r) const {
  const double r = fn(delta_s, d_r);
  if (!std::isfinite(r) || r < 0.0) {
    throw InvalidStrategy("correction '" + name + "' returned " + std::to_string(r) +
                          "; R must be finite and nonnegative");
  }
  return r;
}

Correction Correction::zero() {
  return {"zero", [](double, Index) { return 0.0; }};
}

Correction Correction::constant(double value) {
  // Name must parse back to the same value.
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return {"constant:" + std::string(buf, res.ptr), [value](double, Index) { return value; }};
}

Correction Correction::parse(std::string_view spec) {
  if (spec == "zero") return zero();
  constexpr std::string_view prefix = "constant:";
  if (spec.starts_with(prefix)) {
    const std::string_view number = spec.substr(prefix.size());
    double value = 0.0;
    const auto res = std::from_chars(number.data(), number.data() + number.size(), value);
    if (res.ec != std::errc{} || res.ptr != number.data() + number.size()) {
      throw InvalidInput("correction: cannot parse value in '" + std::string(spec) + "'");
    }
    if (!std::isfinite(value) || value < 0.0) {
      throw InvalidStrategy("correction: constant must be finite and nonnegative");
    }
    return constant(value);
  }
  throw InvalidInput("unknown correction '" + std::string(spec) +
                     "' (expected zero or constant:<value>)");
}

BoundPair bounds(double delta_s, Index d_r, const Correction& correction) {
  return {delta_s, delta_s + correction(delta_s, d_r)};
}

BoundPair bounds(const LandauerProcess& p, const Correction& correction) {
  return bounds(entropy_change(p), p.d_r(), correction);
}

double rw_equality_residual(const LandauerProcess& p) {
  const auto evolved = evolved_marginals(p);
  const double q_avg = heat_from_marginal(p, evolved.reservoir);
  const double delta_s = von_neumann_entropy(p.rho_s()) - von_neumann_entropy(evolved.system);
  const double info = von_neumann_entropy(evolved.system) + von_neumann_entropy(evolved.reservoir) -
                      von_neumann_entropy(evolved.joint);
  const double divergence = relative_entropy(evolved.reservoir, p.rho_r());
  return p.beta() * q_avg - delta_s - info - divergence;
}

ProcessStats process_stats(const LandauerProcess& p, const Correction& correction) {
  const auto evolved = evolved_marginals(p);
  ProcessStats stats{};
  stats.q_avg = heat_from_marginal(p, evolved.reservoir);
  const double s_initial = von_neumann_entropy(p.rho_s());
  const double s_final_system = von_neumann_entropy(evolved.system);
  stats.delta_s = s_initial - s_final_system;
  stats.gamma = gamma_direct(p);
  stats.gamma_bound = gpm_bound(stats.gamma);
  stats.mu = mu(stats.gamma);
  stats.mutual_info = s_final_system + von_neumann_entropy(evolved.reservoir) -
                      von_neumann_entropy(evolved.joint);
  stats.rel_entropy = relative_entropy(evolved.reservoir, p.rho_r());
  const auto bound_pair = bounds(stats.delta_s, p.d_r(), correction);
  stats.landauer_bound = bound_pair.landauer;
  stats.rw_bound = bound_pair.rw;
  stats.rw_residual = p.beta() * stats.q_avg - stats.delta_s - stats.mutual_info - stats.rel_entropy;
  return stats;
}

namespace {

// Haar blocks on the given index groups of an orthonormal basis.
ComplexMatrix block_haar(const std::vector<std::vector<Index>>& groups, Index d,
                         RandomStream& stream) {
  ComplexMatrix block = ComplexMatrix::Zero(d, d);
  for (const auto& group : groups) {
    const auto k = static_cast<Index>(group.size());
    const UnitaryMatrix w = haar_unitary(k, stream);
    for (Index x = 0; x < k; ++x) {
      for (Index y = 0; y < k; ++y) block(group[x], group[y]) = w.matrix()(x, y);
    }
  }
  return block;
}

}  // namespace

UnitaryMatrix thermal_operation(const HermitianMatrix& h_s, const HermitianMatrix& h_r,
                                RandomStream& stream, EnergyConservation mode) {
  const Index d_s = h_s.dim();
  const Index d_r = h_r.dim();
  const Index d = d_s * d_r;
  ComplexMatrix basis;
  std::vector<std::vector<Index>> groups;

  if (mode == EnergyConservation::total) {
    const ComplexMatrix total =
        tensor_product(h_s.matrix(), ComplexMatrix::Identity(d_r, d_r)) +
        tensor_product(ComplexMatrix::Identity(d_s, d_s), h_r.matrix());
    const auto eig = hermitian_eig(HermitianMatrix::symmetrized(total));
    basis = eig.vectors.matrix();
    const auto labels = shell_labels(eig.values, kDegeneracyTolerance);
    groups.resize(static_cast<std::size_t>(labels.back() + 1));
    for (Index k = 0; k < d; ++k) groups[static_cast<std::size_t>(labels[k])].push_back(k);
  } else {
    const auto eig_s = hermitian_eig(h_s);
    const auto eig_r = hermitian_eig(h_r);
    basis = tensor_product(eig_s.vectors.matrix(), eig_r.vectors.matrix());
    const auto labels_s = shell_labels(eig_s.values, kDegeneracyTolerance);
    const auto labels_r = shell_labels(eig_r.values, kDegeneracyTolerance);
    std::map<std::pair<Index, Index>, std::vector<Index>> by_shell;
    for (Index i = 0; i < d_s; ++i) {
      for (Index k = 0; k < d_r; ++k) by_shell[{labels_s[i], labels_r[k]}].push_back(i * d_r + k);
    }
    for (auto& [key, members] : by_shell) groups.push_back(std::move(members));
  }

  const ComplexMatrix block = block_haar(groups, d, stream);
  return UnitaryMatrix(basis * block * basis.adjoint());
}

ProcessKernel::ProcessKernel(const UnitaryMatrix& u, const DensityMatrix& rho_s,
                             const EigenDecomposition& h_r_eig)
    : d_s_(rho_s.dim()), d_r_(h_r_eig.values.size()), energies_(h_r_eig.values) {
  require_process_dims(d_s_, d_r_, u);
  const auto rho_s_eig = hermitian_eig(rho_s.hermitian());
  lambdas_ = rho_s_eig.values.cwiseMax(0.0);
  lambdas_ /= lambdas_.sum();
  initial_entropy_ = entropy_of_spectrum(lambdas_);

  const ComplexMatrix rotated =
      rotated_unitary(u, rho_s_eig.vectors.matrix(), h_r_eig.vectors.matrix());
  transition_ = transition_table(rotated, d_s_, d_r_);

  const Index cols = d_s_ * d_r_;
  reduced_system_ = ComplexMatrix::Zero(d_s_ * d_s_, cols);
  for (Index col = 0; col < cols; ++col) {
    if (lambdas_(col / d_r_) == 0.0) continue;
    // S(a, b) = sum_m psi(a, m) conj(psi(b, m)) with psi the output column
    // reshaped to d_s x d_r.
    const Eigen::Map<const ComplexMatrix> psi_t(rotated.col(col).data(), d_r_, d_s_);
    const ComplexMatrix reduced = psi_t.transpose() * psi_t.conjugate();
    reduced_system_.col(col) = Eigen::Map<const ComplexVector>(reduced.data(), d_s_ * d_s_);
  }
}

ProcessKernel::Values ProcessKernel::evaluate(double beta) const {
  const RealVector populations = gibbs_populations(energies_, beta);
  const RealVector to_populations = transition_.transpose() * populations;  // sum_m p_m T(m|jn)
  const RealVector to_energies = transition_.transpose() * energies_;       // sum_m E_m T(m|jn)

  RealVector weights(d_s_ * d_r_);
  double gamma = 0.0;
  for (Index j = 0; j < d_s_; ++j) {
    for (Index n = 0; n < d_r_; ++n) {
      const Index col = j * d_r_ + n;
      weights(col) = lambdas_(j) * populations(n);
      gamma += lambdas_(j) * to_populations(col);
    }
  }
  const double q_avg = weights.dot(to_energies) - populations.dot(energies_);

  const ComplexVector flat = reduced_system_ * weights.cast<Complex>();
  const Eigen::Map<const ComplexMatrix> rho_s_final(flat.data(), d_s_, d_s_);
  const double final_entropy = entropy_of_spectrum(
      hermitian_eigenvalues(HermitianMatrix::symmetrized(rho_s_final)));
  return {q_avg, initial_entropy_ - final_entropy, gamma};
}

}  // namespace lab
