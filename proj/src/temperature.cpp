#include "landauer_lab/temperature.hpp"

#include "landauer_lab/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace lab {

namespace {
constexpr double kMinimumGap = 1e-12;
}

Regime parse_regime(std::string_view name) {
  if (name == "low") return Regime::low;
  if (name == "mid") return Regime::mid;
  if (name == "high") return Regime::high;
  throw InvalidInput("unknown regime '" + std::string(name) + "' (expected low, mid or high)");
}

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::low: return "low";
    case Regime::mid: return "mid";
    case Regime::high: return "high";
  }
  throw InternalError("to_string: bad Regime");
}

TwoLevelMid parse_two_level_mid(std::string_view name) {
  if (name == "reject") return TwoLevelMid::reject;
  if (name == "single-gap") return TwoLevelMid::single_gap;
  throw InvalidInput("unknown two-level mid policy '" + std::string(name) +
                     "' (expected reject or single-gap)");
}

std::string to_string(TwoLevelMid policy) {
  return policy == TwoLevelMid::reject ? "reject" : "single-gap";
}

double regime_energy_scale(const RealVector& e, Regime regime, TwoLevelMid two_level_mid) {
  const Index levels = e.size();
  if (levels < 2) throw InvalidInput("scaled temperature needs at least two reservoir levels");
  for (Index k = 1; k < levels; ++k) {
    if (e(k) < e(k - 1)) throw InvalidInput("scaled temperature: energies must be ascending");
  }
  const Index top = levels - 1;  // N
  const double low_gap = std::abs(e(1) - e(0));
  const double span = std::abs(e(top) - e(0));
  switch (regime) {
    case Regime::low:
      if (low_gap < kMinimumGap) throw DegenerateSpectrum("scaled temperature: E_1 - E_0 vanishes");
      return low_gap;
    case Regime::high:
      if (span < kMinimumGap) throw DegenerateSpectrum("scaled temperature: E_N - E_0 vanishes");
      return span;
    case Regime::mid: {
      if (span < kMinimumGap) throw DegenerateSpectrum("scaled temperature: E_N - E_0 vanishes");
      if (top == 1) {
        if (two_level_mid == TwoLevelMid::reject) {
          throw DomainError(
              "intermediate regime is undefined for a two-level reservoir (N - 1 = 0); "
              "use --two-level-mid single-gap to fall back to the single gap");
        }
        return low_gap;
      }
      double gaps = 0.0;
      for (Index n = 1; n <= top; ++n) gaps += std::abs(e(n) - e(n - 1));
      return gaps / static_cast<double>(top - 1);
    }
  }
  throw InternalError("regime_energy_scale: bad Regime");
}

double scaled_temperature(const RealVector& e, double beta, Regime regime,
                          TwoLevelMid two_level_mid) {
  if (!std::isfinite(beta) || beta < 0.0) {
    throw InvalidInput("scaled_temperature: beta must be finite and nonnegative");
  }
  const double scale = regime_energy_scale(e, regime, two_level_mid);
  if (beta == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / (beta * scale);
}

double scaled_temperature(const HermitianMatrix& h_r, double beta, Regime regime,
                          TwoLevelMid two_level_mid) {
  return scaled_temperature(hermitian_eigenvalues(h_r), beta, regime, two_level_mid);
}

double beta_for_target(const RealVector& e, const TemperatureSpec& spec) {
  if (!std::isfinite(spec.t_tilde) || spec.t_tilde <= 0.0) {
    throw InvalidInput("beta_for_target: scaled temperature must be positive and finite");
  }
  return 1.0 / (spec.t_tilde * regime_energy_scale(e, spec.regime, spec.two_level_mid));
}

double beta_for_target(const HermitianMatrix& h_r, const TemperatureSpec& spec) {
  return beta_for_target(hermitian_eigenvalues(h_r), spec);
}

}  // namespace lab
