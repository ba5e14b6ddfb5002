#pragma once

#include "orbitkit/core.hpp"
#include "orbitkit/spectrum.hpp"

#include <cstdint>
#include <random>

namespace orbitkit {

/// Seeded stream of random draws.
///
/// The same (seed, stream) pair produces the same sequence on every platform:
/// the engine is mt19937_64 (fully specified by the standard) and the
/// uniform/normal transforms are implemented here rather than taken from
/// <random>'s implementation-defined distributions. Parallel callers use
/// distinct stream ids.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed = 0, std::uint64_t stream = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  // Independent source for sub-task `index`, derived from this one's identity
  // (not its current position).
  RandomSource derive(std::uint64_t index) const;

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on (0, 1].
  double uniform_open_below();
  double normal();
  // (N(0,1) + i N(0,1)) / sqrt(2): unit variance complex Gaussian.
  Complex complex_normal();
  std::uint64_t next_u64() { return engine_(); }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

// Haar-distributed unitary: QR of a Ginibre matrix with the phases of diag(R)
// pushed into Q.
UnitaryMatrix haar_unitary(int dim, RandomSource& rng);

// Hilbert-Schmidt random state G G^dag / tr(G G^dag).
DensityMatrix random_density(int dim, RandomSource& rng);

// Flat Dirichlet sample on the probability simplex, sorted descending.
Spectrum random_spectrum(int dim, RandomSource& rng);

// Random Hermitian matrix with Gaussian entries (GUE-like), for tests and
// probes.
ComplexMatrix random_hermitian(int dim, RandomSource& rng);

}  // namespace orbitkit
