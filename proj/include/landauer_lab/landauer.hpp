#pragma once

// Landauer processes: a system state rho_s, a Gibbs reservoir e^{-beta H_r}/Z
// and a joint unitary U, with all heat and bound quantities derived from them.
// Units: k_B = hbar = 1 and evolution time t = 1.

#include "landauer_lab/numerics.hpp"
#include "landauer_lab/quantum.hpp"
#include "landauer_lab/random.hpp"

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lab {

class LandauerProcess {
 public:
  /// d_s and d_r are taken from rho_s and h_r; u must act on d_s * d_r.
  LandauerProcess(DensityMatrix rho_s, HermitianMatrix h_r, double beta, UnitaryMatrix u,
                  std::optional<HermitianMatrix> h_s = std::nullopt);
  /// Reuses a precomputed eigendecomposition of H_r.
  LandauerProcess(DensityMatrix rho_s, const EigenDecomposition& h_r_eig, double beta,
                  UnitaryMatrix u, std::optional<HermitianMatrix> h_s = std::nullopt);

  Index d_s() const noexcept { return rho_s_.dim(); }
  Index d_r() const noexcept { return rho_r_.state().dim(); }
  double beta() const noexcept { return rho_r_.beta(); }
  const DensityMatrix& rho_s() const noexcept { return rho_s_; }
  const GibbsState& rho_r() const noexcept { return rho_r_; }
  const HermitianMatrix& h_r() const noexcept { return h_r_; }
  const std::optional<HermitianMatrix>& h_s() const noexcept { return h_s_; }
  const UnitaryMatrix& unitary() const noexcept { return u_; }

 private:
  DensityMatrix rho_s_;
  HermitianMatrix h_r_;
  GibbsState rho_r_;
  UnitaryMatrix u_;
  std::optional<HermitianMatrix> h_s_;
};

struct LocalHamiltonians {
  HermitianMatrix system;
  HermitianMatrix reservoir;
};

/// H_s = i tr_r[log U] / t and H_r = i tr_s[log U] / t with the principal
/// logarithm; both outputs are symmetrized.
LocalHamiltonians extract_hamiltonians(const UnitaryMatrix& u, Index d_s, Index d_r,
                                       double t = 1.0);

DensityMatrix evolve(const LandauerProcess& p);  // U (rho_s x rho_r) U^dag

double average_heat(const LandauerProcess& p);    // tr[H_r (rho'_r - rho_r)]
double entropy_change(const LandauerProcess& p);  // S(rho_s) - S(rho'_s)
double gamma_direct(const LandauerProcess& p);    // tr[U^dag (1 x rho_r) U (rho_s x 1)]

struct ReducedOperators {
  DensityMatrix system;     // M_s = tr_r[U^dag (1/d_s x rho_r) U]
  DensityMatrix reservoir;  // M_r = tr_s[U (rho_s x 1/d_r) U^dag]
};
ReducedOperators reduced_operators(const LandauerProcess& p);

struct HeatAtom {
  double q;
  double probability;
};

/// Two-point-measurement heat distribution, Q = E_final - E_initial of the
/// reservoir. Atoms are sorted by Q.
struct HeatDistribution {
  std::vector<HeatAtom> atoms;
  double merge_tolerance = 0.0;

  double total_probability() const;
  double mean() const;
  /// sum_Q p(Q) e^{-beta Q}, accumulated as exp(ln p - beta Q).
  double exponential_average(double beta) const;
};
HeatDistribution heat_distribution(const LandauerProcess& p);

double gpm_bound(double gamma);  // -ln Gamma
double gpm_bound(const LandauerProcess& p);

double mu(double gamma);  // |Gamma - 1|
double mu(const LandauerProcess& p);

/// Finite-reservoir correction R(delta_s, d_r) >= 0 of the bound
/// omega = delta_s + R.
struct Correction {
  std::string name;
  std::function<double(double delta_s, Index d_r)> fn;

  double operator()(double delta_s, Index d_r) const;
  static Correction zero();
  static Correction constant(double value);
  /// "zero" or "constant:<value>".
  static Correction parse(std::string_view spec);
};

struct BoundPair {
  double landauer;  // delta_s
  double rw;        // omega = delta_s + R(delta_s, d_r)
};
BoundPair bounds(double delta_s, Index d_r, const Correction& correction);
BoundPair bounds(const LandauerProcess& p, const Correction& correction = Correction::zero());

/// beta <Q> - delta_S - I(s':r') - D(rho'_r || rho_r); zero for every
/// Landauer process.
double rw_equality_residual(const LandauerProcess& p);

struct ProcessStats {
  double q_avg;
  double delta_s;
  double gamma;        // Gamma
  double gamma_bound;  // -ln Gamma
  double mu;
  double mutual_info;
  double rel_entropy;
  double landauer_bound;
  double rw_bound;
  double rw_residual;
};
ProcessStats process_stats(const LandauerProcess& p,
                           const Correction& correction = Correction::zero());

enum class EnergyConservation {
  total,  // [U, H_s x 1 + 1 x H_r] = 0
  local,  // U also commutes with H_s x 1 and 1 x H_r separately
};

/// Random energy-conserving unitary: independent Haar blocks on each
/// eigenspace (degeneracy tolerance 1e-9) rotated back to the product basis.
UnitaryMatrix thermal_operation(const HermitianMatrix& h_s, const HermitianMatrix& h_r,
                                RandomStream& stream,
                                EnergyConservation mode = EnergyConservation::total);

/// Fast evaluator for one (U, rho_s, H_r) at many inverse temperatures.
///
/// With rho_s = sum_j l_j |j><j| and H_r = sum_n E_n |n><n|, every quantity
/// needed by the sweeps is bilinear in (l_j, p_n) through the transition
/// table T(m | j, n) = sum_s |<s m| U |j n>|^2 and the reduced system states
/// S_jn = tr_r[U |j n><j n| U^dag].
class ProcessKernel {
 public:
  ProcessKernel(const UnitaryMatrix& u, const DensityMatrix& rho_s,
                const EigenDecomposition& h_r_eig);

  struct Values {
    double q_avg;
    double delta_s;
    double gamma;
  };
  Values evaluate(double beta) const;

  Index d_s() const noexcept { return d_s_; }
  Index d_r() const noexcept { return d_r_; }
  const RealVector& energies() const noexcept { return energies_; }

 private:
  Index d_s_;
  Index d_r_;
  RealVector lambdas_;
  RealVector energies_;
  double initial_entropy_;
  // transition_(m, j * d_r + n)
  Eigen::MatrixXd transition_;
  // column j * d_r + n holds S_jn flattened column-major (d_s * d_s entries)
  ComplexMatrix reduced_system_;
};

}  // namespace lab
