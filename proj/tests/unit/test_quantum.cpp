#include "landauer_lab/errors.hpp"
#include "landauer_lab/quantum.hpp"
#include "landauer_lab/random.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace lab {
namespace {

using testing::random_hermitian;

HermitianMatrix two_level(double e0 = 0.0, double e1 = 1.0) {
  RealVector e(2);
  e << e0, e1;
  return HermitianMatrix::diagonal(e);
}

DensityMatrix random_state(Index d, RandomStream& s) {
  return random_density_matrix(d, s, StateSampling::induced_hs);
}

TEST(DensityMatrixType, ClampsRoundoffNegativityAndRejectsRealNegativity) {
  RealVector p(2);
  p << 1.0 + 5e-11, -5e-11;
  const DensityMatrix clamped(HermitianMatrix::diagonal(p).matrix());
  EXPECT_GE(hermitian_eigenvalues(clamped.hermitian()).minCoeff(), 0.0);
  EXPECT_NEAR(clamped.matrix().trace().real(), 1.0, 1e-15);

  p << 1.0 + 1e-6, -1e-6;
  EXPECT_THROW(DensityMatrix{HermitianMatrix::diagonal(p).matrix()}, InvalidInput);
  EXPECT_THROW(DensityMatrix{ComplexMatrix::Identity(2, 2)}, InvalidInput);  // trace 2
}

TEST(GibbsState, InfiniteTemperatureIsMaximallyMixed) {
  RandomStream s(1, 0);
  const HermitianMatrix h(random_hermitian(5, s));
  EXPECT_LT((gibbs_state(h, 0.0).state().matrix() - ComplexMatrix::Identity(5, 5) / 5.0).norm(), 1e-14);
}

TEST(GibbsState, TwoLevelClosedForm) {
  const auto g = gibbs_state(two_level(), 1.0);
  const double p = 1.0 / (1.0 + std::exp(-1.0));
  EXPECT_NEAR(p, 0.731059, 1e-6);
  EXPECT_NEAR(g.state().matrix()(0, 0).real(), p, 1e-15);
  EXPECT_NEAR(g.state().matrix()(1, 1).real(), 1.0 - p, 1e-15);
  EXPECT_NEAR(g.partition_function(), 1.0 + std::exp(-1.0), 1e-14);
}

TEST(GibbsState, GroundStateLimitWithoutOverflow) {
  const auto g = gibbs_state(two_level(), 1e3);
  EXPECT_NEAR(g.state().matrix()(0, 0).real(), 1.0, 1e-12);
  EXPECT_NEAR(g.state().matrix()(1, 1).real(), 0.0, 1e-12);
  const auto far = gibbs_state(two_level(-800.0, 800.0), 5.0);
  EXPECT_TRUE(std::isfinite(far.log_partition_function()));
  EXPECT_NEAR(far.log_partition_function(), 4000.0, 1e-9);
}

TEST(GibbsState, RejectsNegativeOrNonFiniteBeta) {
  EXPECT_THROW(gibbs_state(two_level(), -0.1), InvalidInput);
  EXPECT_THROW(gibbs_state(two_level(), std::numeric_limits<double>::infinity()), InvalidInput);
  EXPECT_THROW(gibbs_state(two_level(), std::numeric_limits<double>::quiet_NaN()), InvalidInput);
}

TEST(GibbsState, MatchesMatrixExponentialAndIsShiftInvariant) {
  RandomStream s(2, 0);
  for (int i = 0; i < 5; ++i) {
    const ComplexMatrix h = random_hermitian(6, s);
    const double beta = 0.3 + i;
    const auto g = gibbs_state(HermitianMatrix(h), beta);
    const ComplexMatrix e = (-beta * h).exp();
    EXPECT_LT((g.state().matrix() - e / e.trace()).norm(), 1e-10);
    EXPECT_NEAR(g.partition_function(), e.trace().real(), 1e-10 * e.trace().real());
    const ComplexMatrix shifted = h + 17.5 * ComplexMatrix::Identity(6, 6);
    EXPECT_LT((gibbs_state(HermitianMatrix(shifted), beta).state().matrix() - g.state().matrix()).norm(),
              1e-12);
  }
}

TEST(Entropy, PureMixedAndClosedForm) {
  RandomStream s(3, 0);
  EXPECT_NEAR(von_neumann_entropy(random_density_matrix(4, s, StateSampling::pure_haar)), 0.0, 1e-12);
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix::maximally_mixed(7)), std::log(7.0), 1e-14);
  RealVector p(2);
  p << 0.731059, 0.268941;
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix::diagonal(p)), 0.582203, 1e-6);
}

TEST(Entropy, UnitarilyInvariant) {
  RandomStream s(4, 0);
  for (int i = 0; i < 20; ++i) {
    const DensityMatrix rho = random_state(6, s);
    const ComplexMatrix u = haar_unitary(6, s).matrix();
    EXPECT_NEAR(von_neumann_entropy(DensityMatrix(u * rho.matrix() * u.adjoint())),
                von_neumann_entropy(rho), 1e-9);
  }
}

TEST(RelativeEntropy, BasicValues) {
  RandomStream s(5, 0);
  const DensityMatrix rho = random_state(4, s);
  EXPECT_NEAR(relative_entropy(rho, rho), 0.0, 1e-10);
  RealVector p(2);
  p << 1.0, 0.0;
  EXPECT_NEAR(relative_entropy(DensityMatrix::diagonal(p), DensityMatrix::maximally_mixed(2)),
              std::log(2.0), 1e-14);
}

TEST(RelativeEntropy, SpectralOracleAndKleinInequality) {
  RandomStream s(6, 0);
  for (int i = 0; i < 20; ++i) {
    const DensityMatrix rho = random_state(5, s);
    const DensityMatrix sigma = random_state(5, s);
    const auto er = hermitian_eig(rho.hermitian());
    const auto es = hermitian_eig(sigma.hermitian());
    // D = sum_ij |<r_i|s_j>|^2 r_i (ln r_i - ln s_j)
    const ComplexMatrix overlap = er.vectors.matrix().adjoint() * es.vectors.matrix();
    double oracle = 0.0;
    for (Index a = 0; a < 5; ++a)
      for (Index b = 0; b < 5; ++b)
        oracle += std::norm(overlap(a, b)) * er.values(a) *
                  (std::log(er.values(a)) - std::log(es.values(b)));
    const double d = relative_entropy(rho, sigma);
    EXPECT_NEAR(d, oracle, 1e-9);
    EXPECT_GE(d, -1e-10);
  }
}

TEST(RelativeEntropy, SupportViolationIsADomainError) {
  RealVector p(2), q(2);
  p << 0.5, 0.5;
  q << 1.0, 0.0;
  EXPECT_THROW(relative_entropy(DensityMatrix::diagonal(p), DensityMatrix::diagonal(q)), DomainError);
}

TEST(RelativeEntropy, GibbsOverloadAgreesWithGeneralForm) {
  RandomStream s(7, 0);
  const HermitianMatrix h(random_hermitian(4, s));
  const auto g = gibbs_state(h, 0.8);
  const DensityMatrix rho = random_state(4, s);
  EXPECT_NEAR(relative_entropy(rho, g), relative_entropy(rho, g.state()), 1e-10);
}

TEST(MutualInformation, ProductBellAndDefinition) {
  RandomStream s(8, 0);
  const DensityMatrix a = random_state(2, s);
  const DensityMatrix b = random_state(3, s);
  EXPECT_NEAR(mutual_information(DensityMatrix(tensor_product(a.matrix(), b.matrix())), 2, 3), 0.0, 1e-10);

  ComplexVector phi = ComplexVector::Zero(4);
  phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(mutual_information(DensityMatrix::pure(phi), 2, 2), 2.0 * std::log(2.0), 1e-12);

  const DensityMatrix joint = random_state(6, s);
  const double oracle =
      von_neumann_entropy(DensityMatrix(partial_trace(joint.matrix(), 2, 3, Subsystem::system))) +
      von_neumann_entropy(DensityMatrix(partial_trace(joint.matrix(), 2, 3, Subsystem::reservoir))) -
      von_neumann_entropy(joint);
  EXPECT_NEAR(mutual_information(joint, 2, 3), oracle, 1e-12);
  EXPECT_GE(mutual_information(joint, 2, 3), -1e-9);
  EXPECT_THROW(mutual_information(joint, 2, 2), InvalidInput);
}

TEST(Purity, PureMixedAndSpectralOracle) {
  RandomStream s(9, 0);
  EXPECT_NEAR(purity(random_density_matrix(3, s, StateSampling::pure_haar)), 1.0, 1e-12);
  EXPECT_NEAR(purity(DensityMatrix::maximally_mixed(5)), 0.2, 1e-15);
  const DensityMatrix rho = random_state(5, s);
  EXPECT_NEAR(purity(rho), hermitian_eigenvalues(rho.hermitian()).squaredNorm(), 1e-12);
}

}  // namespace
}  // namespace lab
