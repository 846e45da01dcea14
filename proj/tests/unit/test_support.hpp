#pragma once

#include "landauer_lab/numerics.hpp"
#include "landauer_lab/random.hpp"

#include <cmath>

namespace lab::testing {

inline ComplexMatrix random_hermitian(Index d, RandomStream& stream) {
  const ComplexMatrix g = ginibre_matrix(d, stream);
  return (g + g.adjoint()) / 2.0;
}

inline ComplexMatrix swap_gate(Index d) {
  ComplexMatrix s = ComplexMatrix::Zero(d * d, d * d);
  for (Index a = 0; a < d; ++a) {
    for (Index b = 0; b < d; ++b) s(b * d + a, a * d + b) = 1.0;
  }
  return s;
}

inline double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

// Qubit-swap reference process: rho_s = |0><0|, H_r = diag(0, 1), beta = 1.
inline double swap_p0() { return 1.0 / (1.0 + std::exp(-1.0)); }

}  // namespace lab::testing
