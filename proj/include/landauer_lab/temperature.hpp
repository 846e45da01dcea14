#pragma once

// Scaled temperatures relative to the reservoir level structure, so that
// random reservoir Hamiltonians can be compared on one axis.

#include "landauer_lab/numerics.hpp"

#include <string>
#include <string_view>

namespace lab {

enum class Regime { low, mid, high };

Regime parse_regime(std::string_view name);
std::string to_string(Regime regime);

/// How the intermediate regime treats a two-level reservoir, where
/// (N - 1) / (beta sum of gaps) has a zero numerator.
enum class TwoLevelMid {
  reject,      // DomainError
  single_gap,  // use the only gap, i.e. the low/high definition
};

TwoLevelMid parse_two_level_mid(std::string_view name);
std::string to_string(TwoLevelMid policy);

struct TemperatureSpec {
  Regime regime = Regime::mid;
  double t_tilde = 1.0;  // dimensionless, > 0
  TwoLevelMid two_level_mid = TwoLevelMid::reject;
};

/// Energy scale g with T~ = 1 / (beta g), for an ascending spectrum E_0..E_N:
///   low  g = |E_1 - E_0|
///   high g = |E_N - E_0|
///   mid  g = sum_{n=1}^{N} |E_n - E_{n-1}| / (N - 1)
double regime_energy_scale(const RealVector& ascending_energies, Regime regime,
                           TwoLevelMid two_level_mid = TwoLevelMid::reject);

double scaled_temperature(const RealVector& ascending_energies, double beta, Regime regime,
                          TwoLevelMid two_level_mid = TwoLevelMid::reject);
double scaled_temperature(const HermitianMatrix& h_r, double beta, Regime regime,
                          TwoLevelMid two_level_mid = TwoLevelMid::reject);

double beta_for_target(const RealVector& ascending_energies, const TemperatureSpec& spec);
double beta_for_target(const HermitianMatrix& h_r, const TemperatureSpec& spec);

}  // namespace lab
