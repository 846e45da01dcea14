#include "landauer_lab/quantum.hpp"

#include "landauer_lab/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace lab {

namespace {

constexpr double kNegativityTolerance = 1e-10;
constexpr double kSupportEigenvalue = 1e-12;
constexpr double kSupportWeight = 1e-10;

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

DensityMatrix::DensityMatrix(const ComplexMatrix& rho) {
  const HermitianMatrix h(rho);
  const double trace = h.matrix().trace().real();
  if (std::abs(trace - 1.0) > tolerance::kConstruction) {
    throw InvalidInput("DensityMatrix: trace " + std::to_string(trace) + " is not 1");
  }
  auto [values, vectors] = hermitian_eig(h);
  if (values(0) >= 0.0) {
    m_ = h.matrix();
    return;
  }
  if (values(0) < -kNegativityTolerance) {
    throw InvalidInput("DensityMatrix: eigenvalue " + std::to_string(values(0)) +
                       " is negative beyond tolerance");
  }
  values = values.cwiseMax(0.0);
  values /= values.sum();
  const ComplexMatrix& v = vectors.matrix();
  m_ = v * values.cast<Complex>().asDiagonal() * v.adjoint();
  m_ = 0.5 * (m_ + m_.adjoint()).eval();
}

DensityMatrix DensityMatrix::maximally_mixed(Index d) {
  if (d <= 0) throw InvalidInput("DensityMatrix::maximally_mixed: dimension must be positive");
  return DensityMatrix(ComplexMatrix::Identity(d, d) / static_cast<double>(d), Trusted{});
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  const double norm = psi.norm();
  if (psi.size() == 0 || !(norm > 0.0) || !std::isfinite(norm)) {
    throw InvalidInput("DensityMatrix::pure: vector must be nonzero and finite");
  }
  const ComplexVector unit = psi / norm;
  return DensityMatrix(unit * unit.adjoint(), Trusted{});
}

DensityMatrix DensityMatrix::diagonal(const RealVector& probabilities) {
  if (probabilities.size() == 0) throw InvalidInput("DensityMatrix::diagonal: empty");
  if ((probabilities.array() < -kNegativityTolerance).any()) {
    throw InvalidInput("DensityMatrix::diagonal: negative probability");
  }
  if (std::abs(probabilities.sum() - 1.0) > tolerance::kConstruction) {
    throw InvalidInput("DensityMatrix::diagonal: probabilities do not sum to 1");
  }
  RealVector p = probabilities.cwiseMax(0.0);
  p /= p.sum();
  return DensityMatrix(p.cast<Complex>().asDiagonal().toDenseMatrix(), Trusted{});
}

DensityMatrix DensityMatrix::assume_valid(const ComplexMatrix& rho) {
  if (rho.rows() == 0 || rho.rows() != rho.cols()) {
    throw InvalidInput("DensityMatrix::assume_valid: expected a nonempty square matrix");
  }
  return DensityMatrix(0.5 * (rho + rho.adjoint()), Trusted{});
}

RealVector gibbs_populations(const RealVector& energies, double beta) {
  if (!std::isfinite(beta) || beta < 0.0) {
    throw InvalidInput("gibbs: beta must be finite and nonnegative, got " + std::to_string(beta));
  }
  const double e_min = energies.minCoeff();
  RealVector weights = (-beta * (energies.array() - e_min)).exp().matrix();
  return weights / weights.sum();
}

GibbsState::GibbsState(const HermitianMatrix& hamiltonian, double beta)
    : GibbsState(hermitian_eig(hamiltonian), beta) {}

GibbsState::GibbsState(const EigenDecomposition& hamiltonian_eig, double beta)
    : energies_(hamiltonian_eig.values),
      vectors_(hamiltonian_eig.vectors),
      beta_(beta),
      populations_(gibbs_populations(energies_, beta)),
      state_(DensityMatrix::maximally_mixed(1)) {
  const double e_min = energies_.minCoeff();
  log_z_ = -beta_ * e_min + std::log((-beta_ * (energies_.array() - e_min)).exp().sum());
  const ComplexMatrix& v = vectors_.matrix();
  state_ = DensityMatrix::assume_valid(v * populations_.cast<Complex>().asDiagonal() * v.adjoint());
}

double GibbsState::partition_function() const { return std::exp(log_z_); }

HermitianMatrix GibbsState::hamiltonian() const {
  const ComplexMatrix& v = vectors_.matrix();
  return HermitianMatrix::symmetrized(v * energies_.cast<Complex>().asDiagonal() * v.adjoint());
}

GibbsState gibbs_state(const HermitianMatrix& h, double beta) { return GibbsState(h, beta); }

double entropy_of_spectrum(const RealVector& probabilities) {
  double s = 0.0;
  for (Index k = 0; k < probabilities.size(); ++k) s -= xlogx(probabilities(k));
  return s;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  return entropy_of_spectrum(hermitian_eigenvalues(rho.hermitian()));
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw InvalidInput("relative_entropy: dimension mismatch");
  const auto sigma_eig = hermitian_eig(sigma.hermitian());
  const ComplexMatrix& v = sigma_eig.vectors.matrix();
  const ComplexMatrix rho_in_sigma_basis = v.adjoint() * rho.matrix() * v;
  double cross = 0.0;
  for (Index k = 0; k < rho.dim(); ++k) {
    const double weight = rho_in_sigma_basis(k, k).real();
    const double s = sigma_eig.values(k);
    if (s < kSupportEigenvalue) {
      if (weight > kSupportWeight) {
        throw DomainError("relative_entropy: support of rho is not contained in support of sigma");
      }
      continue;
    }
    cross += weight * std::log(s);
  }
  return -von_neumann_entropy(rho) - cross;
}

double relative_entropy(const DensityMatrix& rho, const GibbsState& gibbs) {
  if (rho.dim() != gibbs.state().dim()) throw InvalidInput("relative_entropy: dimension mismatch");
  const ComplexMatrix& v = gibbs.eigenvectors().matrix();
  const ComplexMatrix rho_in_energy_basis = v.adjoint() * rho.matrix() * v;
  double mean_energy = 0.0;
  for (Index k = 0; k < rho.dim(); ++k) {
    mean_energy += rho_in_energy_basis(k, k).real() * gibbs.energies()(k);
  }
  // tr[rho ln gibbs] = -beta <H>_rho - ln Z
  const double cross = -gibbs.beta() * mean_energy - gibbs.log_partition_function();
  return -von_neumann_entropy(rho) - cross;
}

double mutual_information(const DensityMatrix& rho_sr, Index d_s, Index d_r) {
  if (d_s <= 0 || d_r <= 0 || rho_sr.dim() != d_s * d_r) {
    throw InvalidInput("mutual_information: dimension mismatch");
  }
  const auto rho_s = DensityMatrix::assume_valid(
      partial_trace(rho_sr.matrix(), d_s, d_r, Subsystem::system));
  const auto rho_r = DensityMatrix::assume_valid(
      partial_trace(rho_sr.matrix(), d_s, d_r, Subsystem::reservoir));
  return von_neumann_entropy(rho_s) + von_neumann_entropy(rho_r) - von_neumann_entropy(rho_sr);
}

double purity(const DensityMatrix& rho) {
  // tr[rho^2] = ||rho||_F^2 for Hermitian rho
  return rho.matrix().squaredNorm();
}

}  // namespace lab
