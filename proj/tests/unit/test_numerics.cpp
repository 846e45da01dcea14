#include "landauer_lab/errors.hpp"
#include "landauer_lab/numerics.hpp"
#include "landauer_lab/random.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include <numbers>

namespace lab {
namespace {

using testing::random_hermitian;

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

TEST(HermitianEig, DiagonalInputGivesAscendingValuesAndPermutedBasis) {
  RealVector diag(2);
  diag << 3.0, 1.0;
  const auto e = hermitian_eig(HermitianMatrix::diagonal(diag));
  EXPECT_DOUBLE_EQ(e.values(0), 1.0);
  EXPECT_DOUBLE_EQ(e.values(1), 3.0);
  EXPECT_NEAR(std::abs(e.vectors.matrix()(1, 0)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(e.vectors.matrix()(0, 1)), 1.0, 1e-15);
}

TEST(HermitianEig, PauliX) {
  ComplexMatrix x(2, 2);
  x << 0, 1, 1, 0;
  const auto e = hermitian_eig(HermitianMatrix(x));
  EXPECT_NEAR(e.values(0), -1.0, 1e-15);
  EXPECT_NEAR(e.values(1), 1.0, 1e-15);
  ComplexVector minus(2), plus(2);
  minus << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  // Up to phase: |<expected|v>| = 1.
  EXPECT_NEAR(std::abs(minus.dot(e.vectors.matrix().col(0))), 1.0, 1e-14);
  EXPECT_NEAR(std::abs(plus.dot(e.vectors.matrix().col(1))), 1.0, 1e-14);
}

TEST(HermitianEig, ReconstructionResidualUpTo256) {
  RandomStream stream(11, 0);
  for (const Index d : {1, 8, 33, 128, 256}) {
    const HermitianMatrix a(random_hermitian(d, stream));
    const auto e = hermitian_eig(a);
    const auto& v = e.vectors.matrix();
    const ComplexMatrix rebuilt = v * e.values.cast<Complex>().asDiagonal() * v.adjoint();
    EXPECT_LT((a.matrix() - rebuilt).norm(), 1e-9) << "d = " << d;
    EXPECT_LE((a.matrix() * v - v * e.values.cast<Complex>().asDiagonal()).norm(),
              1e-9 * std::max(1.0, a.matrix().norm()));
    for (Index k = 1; k < d; ++k) EXPECT_LE(e.values(k - 1), e.values(k));
  }
}

TEST(HermitianEig, RejectsNonSquareAndNonHermitian) {
  EXPECT_THROW(HermitianMatrix(ComplexMatrix::Zero(2, 3)), InvalidInput);
  ComplexMatrix a(2, 2);
  a << 0, 1, 0, 0;
  EXPECT_THROW(HermitianMatrix{a}, InvalidInput);
  ComplexMatrix nan = ComplexMatrix::Zero(2, 2);
  nan(0, 0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(HermitianMatrix{nan}, InvalidInput);
}

TEST(UnitaryMatrixType, RejectsNonUnitary) {
  EXPECT_THROW(UnitaryMatrix(ComplexMatrix::Identity(3, 3) * 1.001), InvalidInput);
  EXPECT_THROW(UnitaryMatrix(ComplexMatrix::Zero(2, 3)), InvalidInput);
  EXPECT_NO_THROW(UnitaryMatrix(ComplexMatrix::Identity(3, 3)));
}

TEST(MatrixLog, IdentityGivesZero) {
  EXPECT_EQ(matrix_log_unitary(UnitaryMatrix::identity(4)).norm(), 0.0);
}

TEST(MatrixLog, KnownPhases) {
  ComplexMatrix u = ComplexMatrix::Zero(2, 2);
  u(0, 0) = kI;
  u(1, 1) = -kI;
  const ComplexMatrix l = matrix_log_unitary(UnitaryMatrix(u));
  EXPECT_NEAR(std::abs(l(0, 0) - kI * kPi / 2.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(l(1, 1) + kI * kPi / 2.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(l(0, 1)) + std::abs(l(1, 0)), 0.0, 1e-14);
}

TEST(MatrixLog, PhaseAtMinusOneIsKeptAtPlusPi) {
  ComplexMatrix u = ComplexMatrix::Identity(3, 3);
  u(1, 1) = -1.0;
  const ComplexMatrix l = matrix_log_unitary(UnitaryMatrix(u));
  EXPECT_NEAR(l(1, 1).imag(), kPi, 1e-12);

  // Same eigenvalue -1 hidden in a rotated basis.
  RandomStream stream(5, 0);
  const ComplexMatrix v = haar_unitary(3, stream).matrix();
  const ComplexMatrix l_rot = matrix_log_unitary(UnitaryMatrix(v * u * v.adjoint()));
  EXPECT_NEAR((l_rot - v * l * v.adjoint()).norm(), 0.0, 1e-9);
}

TEST(MatrixLog, ExponentiatesBackForHaarUnitaries) {
  RandomStream stream(12, 0);
  for (const Index d : {2, 6, 16, 64}) {
    const UnitaryMatrix u = haar_unitary(d, stream);
    const ComplexMatrix l = matrix_log_unitary(u);
    EXPECT_LT((l + l.adjoint()).norm(), 1e-9);
    const ComplexMatrix back = l.exp();
    EXPECT_LT((back - u.matrix()).norm(), 1e-8) << "d = " << d;
    // Principal branch: eigenphases of -iL in (-pi, pi].
    const RealVector phases = hermitian_eigenvalues(HermitianMatrix::symmetrized(-kI * l));
    EXPECT_GT(phases.minCoeff(), -kPi);
    EXPECT_LE(phases.maxCoeff(), kPi + 1e-12);
  }
}

TEST(MatrixLog, DegenerateEigenspaceBasisDoesNotMatter) {
  RandomStream stream(13, 0);
  const ComplexMatrix v = haar_unitary(4, stream).matrix();
  RealVector theta(4);
  theta << 0.7, 0.7, -2.1, 3.0;
  ComplexVector phases(4);
  for (Index k = 0; k < 4; ++k) phases(k) = std::polar(1.0, theta(k));
  const ComplexMatrix u = v * phases.asDiagonal() * v.adjoint();
  const ComplexMatrix expected = v * (kI * theta.cast<Complex>()).asDiagonal() * v.adjoint();
  EXPECT_LT((matrix_log_unitary(UnitaryMatrix(u)) - expected).norm(), 1e-9);
}

TEST(MatrixLog, RejectsNonUnitary) {
  // The checked wrapper is the only way in; it refuses non-unitary input.
  EXPECT_THROW(matrix_log_unitary(UnitaryMatrix(ComplexMatrix::Identity(2, 2) * 2.0)), InvalidInput);
}

TEST(TensorProduct, IdentityAndProjectorExamples) {
  EXPECT_EQ(tensor_product(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2)),
            ComplexMatrix(ComplexMatrix::Identity(4, 4)));
  ComplexMatrix proj = ComplexMatrix::Zero(2, 2);
  proj(0, 0) = 1.0;
  ComplexMatrix pq = ComplexMatrix::Zero(2, 2);
  pq(0, 0) = 0.3;
  pq(1, 1) = 0.7;
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(0, 0) = 0.3;
  expected(1, 1) = 0.7;
  EXPECT_EQ(tensor_product(proj, pq), expected);
}

TEST(TensorProduct, TraceFactorizesAndSystemIndexIsSlowest) {
  RandomStream stream(14, 0);
  const ComplexMatrix a = ginibre_matrix(3, stream);
  const ComplexMatrix b = ginibre_matrix(3, stream);
  const ComplexMatrix ab = tensor_product(a, b);
  EXPECT_NEAR(std::abs(ab.trace() - a.trace() * b.trace()), 0.0, 1e-12);
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 3; ++j)
      for (Index k = 0; k < 3; ++k)
        for (Index l = 0; l < 3; ++l) EXPECT_EQ(ab(i * 3 + k, j * 3 + l), a(i, j) * b(k, l));
}

TEST(PartialTrace, ProductRule) {
  RandomStream stream(15, 0);
  const ComplexMatrix a = ginibre_matrix(3, stream);
  const ComplexMatrix b = ginibre_matrix(4, stream);
  const ComplexMatrix ab = tensor_product(a, b);
  EXPECT_LT((partial_trace(ab, 3, 4, Subsystem::system) - b.trace() * a).norm(), 1e-12);
  EXPECT_LT((partial_trace(ab, 3, 4, Subsystem::reservoir) - a.trace() * b).norm(), 1e-12);
}

TEST(PartialTrace, BellStateReducesToMaximallyMixed) {
  ComplexVector phi = ComplexVector::Zero(4);
  phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
  const ComplexMatrix bell = phi * phi.adjoint();
  EXPECT_LT((partial_trace(bell, 2, 2, Subsystem::system) - ComplexMatrix::Identity(2, 2) / 2.0).norm(),
            1e-15);
  EXPECT_LT((partial_trace(bell, 2, 2, Subsystem::reservoir) - ComplexMatrix::Identity(2, 2) / 2.0).norm(),
            1e-15);
}

TEST(PartialTrace, MatchesIndexSumOracleAndIsLinear) {
  RandomStream stream(16, 0);
  const Index d_s = 2, d_r = 3;
  const ComplexMatrix m1 = ginibre_matrix(6, stream);
  const ComplexMatrix m2 = ginibre_matrix(6, stream);
  const Complex c(0.3, -1.2);
  const ComplexMatrix m = m1 + c * m2;

  ComplexMatrix keep_s = ComplexMatrix::Zero(d_s, d_s);
  ComplexMatrix keep_r = ComplexMatrix::Zero(d_r, d_r);
  for (Index i = 0; i < d_s; ++i)
    for (Index j = 0; j < d_s; ++j)
      for (Index k = 0; k < d_r; ++k) keep_s(i, j) += m(i * d_r + k, j * d_r + k);
  for (Index k = 0; k < d_r; ++k)
    for (Index l = 0; l < d_r; ++l)
      for (Index i = 0; i < d_s; ++i) keep_r(k, l) += m(i * d_r + k, i * d_r + l);

  EXPECT_LT((partial_trace(m, d_s, d_r, Subsystem::system) - keep_s).norm(), 1e-12);
  EXPECT_LT((partial_trace(m, d_s, d_r, Subsystem::reservoir) - keep_r).norm(), 1e-12);
  const ComplexMatrix linear = partial_trace(m1, d_s, d_r, Subsystem::system) +
                               c * partial_trace(m2, d_s, d_r, Subsystem::system);
  EXPECT_LT((partial_trace(m, d_s, d_r, Subsystem::system) - linear).norm(), 1e-12);
  EXPECT_NEAR(std::abs(partial_trace(m, d_s, d_r, Subsystem::reservoir).trace() - m.trace()), 0.0,
              1e-12);
}

TEST(PartialTrace, DimensionMismatchIsRejected) {
  EXPECT_THROW(partial_trace(ComplexMatrix::Identity(6, 6), 2, 2, Subsystem::system), InvalidInput);
  EXPECT_THROW(partial_trace(ComplexMatrix::Zero(4, 3), 2, 2, Subsystem::system), InvalidInput);
}

TEST(TraceNorm, Examples) {
  RealVector v(2);
  v << 0.5, -0.5;
  EXPECT_DOUBLE_EQ(trace_norm(HermitianMatrix::diagonal(v)), 1.0);

  RandomStream stream(17, 0);
  for (int i = 0; i < 20; ++i) {
    const DensityMatrix rho = random_density_matrix(4, stream, StateSampling::induced_hs);
    const DensityMatrix sigma = random_density_matrix(4, stream, StateSampling::pure_haar);
    const double t = trace_norm(HermitianMatrix::symmetrized(rho.matrix() - sigma.matrix()));
    EXPECT_GE(t, 0.0);
    EXPECT_LE(t, 2.0 + 1e-12);
  }
}

TEST(TraceNorm, EqualsAbsoluteEigenvalueSumAndIsANorm) {
  RandomStream stream(18, 0);
  for (int i = 0; i < 10; ++i) {
    const ComplexMatrix a = random_hermitian(6, stream);
    const ComplexMatrix b = random_hermitian(6, stream);
    const double ta = trace_norm(HermitianMatrix(a));
    EXPECT_NEAR(ta, hermitian_eig(HermitianMatrix(a)).values.cwiseAbs().sum(), 1e-12);
    EXPECT_GE(ta, 0.0);
    EXPECT_NEAR(trace_norm(HermitianMatrix::symmetrized(-2.5 * a)), 2.5 * ta, 1e-11);
    EXPECT_LE(trace_norm(HermitianMatrix::symmetrized(a + b)),
              ta + trace_norm(HermitianMatrix(b)) + 1e-12);
  }
  EXPECT_EQ(trace_norm(HermitianMatrix::zero(3)), 0.0);
}

}  // namespace
}  // namespace lab
