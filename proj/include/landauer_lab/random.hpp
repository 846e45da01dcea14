#pragma once

#include "landauer_lab/numerics.hpp"
#include "landauer_lab/quantum.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace lab {

/// Keyed pseudo-random stream. The draw sequence is a pure function of
/// (master_seed, stream_index): the key is mixed with splitmix64 into the seed
/// of a 64-bit Mersenne twister, and uniforms and Gaussians are derived from
/// raw engine bits so no library distribution (whose output is
/// implementation-defined) is involved.
class RandomStream {
 public:
  RandomStream(std::uint64_t master_seed, std::uint64_t stream_index);

  std::uint64_t master_seed() const noexcept { return master_seed_; }
  std::uint64_t stream_index() const noexcept { return stream_index_; }

  std::uint64_t next_u64() { return engine_(); }
  double uniform();          // [0, 1)
  double normal();           // N(0, 1)
  Complex complex_normal();  // E|z|^2 = 1
  std::uint64_t below(std::uint64_t bound);  // uniform integer in [0, bound)

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Seed for a named experiment under a master seed; different names give
/// independent stream families.
std::uint64_t experiment_seed(std::uint64_t master_seed, std::string_view experiment);

/// d x d matrix of i.i.d. standard complex Gaussians.
ComplexMatrix ginibre_matrix(Index d, RandomStream& stream);
ComplexMatrix ginibre_matrix(Index rows, Index cols, RandomStream& stream);

/// Haar-distributed unitary: Q diag(r_kk / |r_kk|) from G = QR.
UnitaryMatrix haar_unitary(Index d, RandomStream& stream);

/// Haar-random unit vector in C^d.
ComplexVector haar_state_vector(Index d, RandomStream& stream);

enum class StateSampling { pure_haar, induced_hs, maximally_mixed };

StateSampling parse_state_sampling(std::string_view name);
std::string to_string(StateSampling method);

/// pure-haar: |psi><psi| for a Haar vector. induced-hs: partial trace over a
/// d-dimensional ancilla of a Haar pure state on C^d (x) C^d.
/// maximally-mixed: 1/d, consumes no randomness.
DensityMatrix random_density_matrix(Index d, RandomStream& stream, StateSampling method);

}  // namespace lab
