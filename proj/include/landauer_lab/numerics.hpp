#pragma once

// Dense complex linear-algebra kernels. All matrices are Eigen column-major
// storage; bipartite operators use the Kronecker ordering index = s * d_r + r
// (system factor slowest).

#include <Eigen/Dense>

#include <complex>

namespace lab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

namespace tolerance {
inline constexpr double kConstruction = 1e-10;
inline constexpr double kIdentity = 1e-9;
inline constexpr double kPrincipalBranch = 1e-12;
}  // namespace tolerance

enum class Subsystem { system, reservoir };

bool all_finite(const ComplexMatrix& m);
double hermiticity_defect(const ComplexMatrix& m);  // ||A - A^dag||_F

/// Square complex matrix with ||A - A^dag||_F <= 1e-10 * max(1, ||A||_F).
/// The stored matrix is the exact Hermitian part of the input.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const ComplexMatrix& a);
  static HermitianMatrix zero(Index d);
  static HermitianMatrix diagonal(const RealVector& diag);
  /// Returns (a + a^dag) / 2 with only shape and finiteness checks.
  static HermitianMatrix symmetrized(const ComplexMatrix& a);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  Index dim() const noexcept { return m_.rows(); }

 private:
  struct Trusted {};
  HermitianMatrix(ComplexMatrix a, Trusted) : m_(std::move(a)) {}
  ComplexMatrix m_;
};

/// Square complex matrix with ||U^dag U - 1||_F <= 1e-10 * sqrt(d).
class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(ComplexMatrix u);
  static UnitaryMatrix identity(Index d);
  /// Skips the O(d^3) unitarity check. For outputs of algorithms that are
  /// unitary by construction (QR factors, eigenvector bases).
  static UnitaryMatrix assume_unitary(ComplexMatrix u);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  Index dim() const noexcept { return m_.rows(); }
  double unitarity_defect() const;

 private:
  struct Trusted {};
  UnitaryMatrix(ComplexMatrix u, Trusted) : m_(std::move(u)) {}
  ComplexMatrix m_;
};

struct EigenDecomposition {
  RealVector values;      // ascending
  UnitaryMatrix vectors;  // columns are eigenvectors
};

EigenDecomposition hermitian_eig(const HermitianMatrix& a);
RealVector hermitian_eigenvalues(const HermitianMatrix& a);

/// Principal logarithm V diag(i theta) V^dag with theta in (-pi, pi]. The
/// result is exactly anti-Hermitian.
ComplexMatrix matrix_log_unitary(const UnitaryMatrix& u);

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix partial_trace(const ComplexMatrix& m, Index d_s, Index d_r, Subsystem keep);

double trace_norm(const HermitianMatrix& a);

}  // namespace lab
