#pragma once

#include "landauer_lab/numerics.hpp"

namespace lab {

/// Hermitian, positive semidefinite, unit-trace matrix. Eigenvalues in
/// [-1e-10, 0) are clamped to zero and the state renormalized; anything more
/// negative is rejected.
class DensityMatrix {
 public:
  explicit DensityMatrix(const ComplexMatrix& rho);

  static DensityMatrix maximally_mixed(Index d);
  static DensityMatrix pure(const ComplexVector& psi);  // psi is normalized here
  static DensityMatrix diagonal(const RealVector& probabilities);
  /// Hermitian part of rho with no spectral check. Only for states that are
  /// valid by construction (unitary conjugation or partial trace of a valid
  /// state).
  static DensityMatrix assume_valid(const ComplexMatrix& rho);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  Index dim() const noexcept { return m_.rows(); }
  HermitianMatrix hermitian() const { return HermitianMatrix::symmetrized(m_); }

 private:
  struct Trusted {};
  DensityMatrix(ComplexMatrix rho, Trusted) : m_(std::move(rho)) {}
  ComplexMatrix m_;
};

/// rho = exp(-beta H) / Z, built in the eigenbasis of H.
class GibbsState {
 public:
  GibbsState(const HermitianMatrix& hamiltonian, double beta);
  GibbsState(const EigenDecomposition& hamiltonian_eig, double beta);

  const DensityMatrix& state() const noexcept { return state_; }
  double beta() const noexcept { return beta_; }
  const RealVector& energies() const noexcept { return energies_; }        // ascending
  const UnitaryMatrix& eigenvectors() const noexcept { return vectors_; }
  const RealVector& populations() const noexcept { return populations_; }  // per energy
  /// ln Z, finite even when Z itself would overflow.
  double log_partition_function() const noexcept { return log_z_; }
  double partition_function() const;
  HermitianMatrix hamiltonian() const;

 private:
  RealVector energies_;
  UnitaryMatrix vectors_;
  double beta_;
  RealVector populations_;
  double log_z_ = 0.0;
  DensityMatrix state_;
};

/// Gibbs populations exp(-beta (E - E_min)) / sum, for an ascending spectrum.
RealVector gibbs_populations(const RealVector& energies, double beta);

GibbsState gibbs_state(const HermitianMatrix& h, double beta);

double von_neumann_entropy(const DensityMatrix& rho);  // nats
double entropy_of_spectrum(const RealVector& probabilities);

/// D(rho || sigma) in nats. Throws DomainError when supp(rho) is not inside
/// supp(sigma).
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);
/// D(rho || gibbs) using ln(gibbs) = -beta H - ln Z, which stays finite when
/// Gibbs populations underflow.
double relative_entropy(const DensityMatrix& rho, const GibbsState& gibbs);

double mutual_information(const DensityMatrix& rho_sr, Index d_s, Index d_r);

double purity(const DensityMatrix& rho);

}  // namespace lab
