#include "orbitkit/random.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace orbitkit {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

void require_dim(int dim, const char* who) {
  if (dim < 1) throw InvalidInput(std::string(who) + ": dim must be >= 1");
}

}  // namespace

RandomSource::RandomSource(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), engine_(mix_seed(seed, stream)) {}

RandomSource RandomSource::derive(std::uint64_t index) const {
  return RandomSource(seed_, splitmix64(stream_ * 0x100000001b3ULL + index + 1));
}

double RandomSource::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomSource::uniform_open_below() {
  return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
}

double RandomSource::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  // Box-Muller.
  const double u1 = uniform_open_below();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  cached_normal_ = r * std::sin(theta);
  has_cached_normal_ = true;
  return r * std::cos(theta);
}

Complex RandomSource::complex_normal() {
  const double re = normal();
  const double im = normal();
  return Complex(re, im) * std::numbers::sqrt2 * 0.5;
}

namespace {

ComplexMatrix ginibre(int dim, RandomSource& rng) {
  ComplexMatrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = rng.complex_normal();
  return g;
}

}  // namespace

UnitaryMatrix haar_unitary(int dim, RandomSource& rng) {
  require_dim(dim, "haar_unitary");
  const ComplexMatrix g = ginibre(dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (int k = 0; k < dim; ++k) {
    const Complex d = r(k, k);
    const double mag = std::abs(d);
    q.col(k) *= mag > 0.0 ? d / mag : Complex(1.0, 0.0);
  }
  return UnitaryMatrix(std::move(q));
}

DensityMatrix random_density(int dim, RandomSource& rng) {
  require_dim(dim, "random_density");
  const ComplexMatrix g = ginibre(dim, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

Spectrum random_spectrum(int dim, RandomSource& rng) {
  require_dim(dim, "random_spectrum");
  std::vector<double> draws(static_cast<std::size_t>(dim));
  for (double& v : draws) v = -std::log(rng.uniform_open_below());
  return Spectrum::normalized(std::move(draws));
}

ComplexMatrix random_hermitian(int dim, RandomSource& rng) {
  require_dim(dim, "random_hermitian");
  const ComplexMatrix g = ginibre(dim, rng);
  return 0.5 * (g + g.adjoint());
}

}  // namespace orbitkit
