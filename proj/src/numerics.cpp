#include "landauer_lab/numerics.hpp"

#include "landauer_lab/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace lab {

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw InvalidInput(std::string(what) + ": expected a nonempty square matrix, got " +
                       std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

void require_finite(const ComplexMatrix& m, const char* what) {
  if (!all_finite(m)) throw InvalidInput(std::string(what) + ": non-finite entry");
}

}  // namespace

bool all_finite(const ComplexMatrix& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    }
  }
  return true;
}

double hermiticity_defect(const ComplexMatrix& m) { return (m - m.adjoint()).norm(); }

HermitianMatrix::HermitianMatrix(const ComplexMatrix& a) {
  require_square(a, "HermitianMatrix");
  require_finite(a, "HermitianMatrix");
  const double defect = hermiticity_defect(a);
  if (defect > tolerance::kConstruction * std::max(1.0, a.norm())) {
    throw InvalidInput("HermitianMatrix: ||A - A^dag||_F = " + std::to_string(defect) +
                       " exceeds tolerance");
  }
  m_ = 0.5 * (a + a.adjoint());
}

HermitianMatrix HermitianMatrix::zero(Index d) {
  if (d <= 0) throw InvalidInput("HermitianMatrix::zero: dimension must be positive");
  return HermitianMatrix(ComplexMatrix::Zero(d, d), Trusted{});
}

HermitianMatrix HermitianMatrix::diagonal(const RealVector& diag) {
  if (diag.size() == 0) throw InvalidInput("HermitianMatrix::diagonal: empty diagonal");
  if (!diag.allFinite()) throw InvalidInput("HermitianMatrix::diagonal: non-finite entry");
  return HermitianMatrix(diag.cast<Complex>().asDiagonal().toDenseMatrix(), Trusted{});
}

HermitianMatrix HermitianMatrix::symmetrized(const ComplexMatrix& a) {
  require_square(a, "HermitianMatrix::symmetrized");
  require_finite(a, "HermitianMatrix::symmetrized");
  return HermitianMatrix(0.5 * (a + a.adjoint()), Trusted{});
}

UnitaryMatrix::UnitaryMatrix(ComplexMatrix u) : m_(std::move(u)) {
  require_square(m_, "UnitaryMatrix");
  require_finite(m_, "UnitaryMatrix");
  const double defect = unitarity_defect();
  if (defect > tolerance::kConstruction * std::sqrt(static_cast<double>(m_.rows()))) {
    throw InvalidInput("UnitaryMatrix: ||U^dag U - 1||_F = " + std::to_string(defect) +
                       " exceeds tolerance");
  }
}

UnitaryMatrix UnitaryMatrix::identity(Index d) {
  if (d <= 0) throw InvalidInput("UnitaryMatrix::identity: dimension must be positive");
  return UnitaryMatrix(ComplexMatrix::Identity(d, d), Trusted{});
}

UnitaryMatrix UnitaryMatrix::assume_unitary(ComplexMatrix u) {
  require_square(u, "UnitaryMatrix::assume_unitary");
  return UnitaryMatrix(std::move(u), Trusted{});
}

double UnitaryMatrix::unitarity_defect() const {
  return (m_.adjoint() * m_ - ComplexMatrix::Identity(m_.rows(), m_.cols())).norm();
}

EigenDecomposition hermitian_eig(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a.matrix(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw InternalError("hermitian_eig: eigensolver did not converge");
  }
  return {solver.eigenvalues(), UnitaryMatrix::assume_unitary(solver.eigenvectors())};
}

RealVector hermitian_eigenvalues(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw InternalError("hermitian_eigenvalues: eigensolver did not converge");
  }
  return solver.eigenvalues();
}

ComplexMatrix matrix_log_unitary(const UnitaryMatrix& u) {
  // A unitary matrix is normal, so its complex Schur form is diagonal and the
  // Schur vectors are an orthonormal eigenbasis (any basis inside degenerate
  // eigenspaces).
  Eigen::ComplexSchur<ComplexMatrix> schur(u.matrix(), true);
  if (schur.info() != Eigen::Success) {
    throw InternalError("matrix_log_unitary: Schur decomposition did not converge");
  }
  const ComplexMatrix& basis = schur.matrixU();
  const Index d = u.dim();
  ComplexVector phases(d);
  for (Index k = 0; k < d; ++k) {
    double theta = std::arg(schur.matrixT()(k, k));
    // Eigenvalue -1 belongs to the upper end of the branch.
    if (theta <= -std::numbers::pi + tolerance::kPrincipalBranch) theta = std::numbers::pi;
    phases(k) = Complex(0.0, theta);
  }
  ComplexMatrix log = basis * phases.asDiagonal() * basis.adjoint();
  return 0.5 * (log - log.adjoint());
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, Index d_s, Index d_r, Subsystem keep) {
  if (d_s <= 0 || d_r <= 0) throw InvalidInput("partial_trace: dimensions must be positive");
  if (m.rows() != d_s * d_r || m.cols() != d_s * d_r) {
    throw InvalidInput("partial_trace: matrix is " + std::to_string(m.rows()) + "x" +
                       std::to_string(m.cols()) + ", expected " + std::to_string(d_s * d_r) +
                       " square");
  }
  if (keep == Subsystem::system) {
    ComplexMatrix out(d_s, d_s);
    for (Index b = 0; b < d_s; ++b) {
      for (Index a = 0; a < d_s; ++a) {
        out(a, b) = m.block(a * d_r, b * d_r, d_r, d_r).trace();
      }
    }
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(d_r, d_r);
  for (Index s = 0; s < d_s; ++s) out += m.block(s * d_r, s * d_r, d_r, d_r);
  return out;
}

double trace_norm(const HermitianMatrix& a) {
  return hermitian_eigenvalues(a).cwiseAbs().sum();
}

}  // namespace lab
