#include "landauer_lab/random.hpp"

#include "landauer_lab/errors.hpp"

#include <cmath>
#include <numbers>

namespace lab {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t experiment_seed(std::uint64_t master_seed, std::string_view experiment) {
  // FNV-1a over the name, then mixed with the master seed.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : experiment) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return splitmix64(splitmix64(master_seed) ^ h);
}

RandomStream::RandomStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_seed_(master_seed),
      stream_index_(stream_index),
      engine_(splitmix64(splitmix64(master_seed) ^ splitmix64(~stream_index))) {}

double RandomStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller; u1 in (0, 1] keeps the logarithm finite.
  const double u1 = static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Complex RandomStream::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

std::uint64_t RandomStream::below(std::uint64_t bound) {
  if (bound == 0) throw InvalidInput("RandomStream::below: bound must be positive");
  // Rejection sampling removes modulo bias.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return x % bound;
}

ComplexMatrix ginibre_matrix(Index rows, Index cols, RandomStream& stream) {
  if (rows <= 0 || cols <= 0) throw InvalidInput("ginibre_matrix: dimensions must be positive");
  ComplexMatrix g(rows, cols);
  // Row-major fill order so the draw sequence does not depend on storage order.
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) g(i, j) = stream.complex_normal();
  }
  return g;
}

ComplexMatrix ginibre_matrix(Index d, RandomStream& stream) { return ginibre_matrix(d, d, stream); }

UnitaryMatrix haar_unitary(Index d, RandomStream& stream) {
  if (d <= 0) throw InvalidInput("haar_unitary: dimension must be positive");
  const ComplexMatrix g = ginibre_matrix(d, stream);
  const Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, d);
  const ComplexMatrix& r = qr.matrixQR();
  for (Index k = 0; k < d; ++k) {
    const Complex rkk = r(k, k);
    const double magnitude = std::abs(rkk);
    // |r_kk| = 0 has probability zero for Gaussian input.
    const Complex phase = magnitude > 0.0 ? rkk / magnitude : Complex(1.0, 0.0);
    q.col(k) *= phase;
  }
  return UnitaryMatrix::assume_unitary(std::move(q));
}

ComplexVector haar_state_vector(Index d, RandomStream& stream) {
  if (d <= 0) throw InvalidInput("haar_state_vector: dimension must be positive");
  ComplexVector psi(d);
  for (Index i = 0; i < d; ++i) psi(i) = stream.complex_normal();
  return psi / psi.norm();
}

StateSampling parse_state_sampling(std::string_view name) {
  if (name == "pure-haar") return StateSampling::pure_haar;
  if (name == "induced-hs") return StateSampling::induced_hs;
  if (name == "maximally-mixed") return StateSampling::maximally_mixed;
  throw InvalidInput("unknown state sampling method '" + std::string(name) +
                     "' (expected pure-haar, induced-hs or maximally-mixed)");
}

std::string to_string(StateSampling method) {
  switch (method) {
    case StateSampling::pure_haar: return "pure-haar";
    case StateSampling::induced_hs: return "induced-hs";
    case StateSampling::maximally_mixed: return "maximally-mixed";
  }
  throw InternalError("to_string: bad StateSampling");
}

DensityMatrix random_density_matrix(Index d, RandomStream& stream, StateSampling method) {
  if (d <= 0) throw InvalidInput("random_density_matrix: dimension must be positive");
  switch (method) {
    case StateSampling::pure_haar:
      return DensityMatrix::pure(haar_state_vector(d, stream));
    case StateSampling::induced_hs: {
      // Rows index the system, columns the ancilla: G G^dag is the reduced
      // state of the (unnormalized) Gaussian pure state.
      const ComplexMatrix g = ginibre_matrix(d, d, stream);
      const ComplexMatrix rho = g * g.adjoint();
      return DensityMatrix::assume_valid(rho / rho.trace().real());
    }
    case StateSampling::maximally_mixed:
      return DensityMatrix::maximally_mixed(d);
  }
  throw InvalidInput("random_density_matrix: unknown method");
}

}  // namespace lab
