#pragma once

#include "orbitkit/core.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace orbitkit {

// Tolerance on sum(entries) == 1 and the clamp window at the simplex boundary.
inline constexpr double kSpectrumTolerance = 1e-12;

/// Probability vector sorted from large to small: the label of a unitary
/// orbit.
class Spectrum {
 public:
  /// Strict: entries must already lie in [0, 1], be non-increasing and sum
  /// to 1 within kSpectrumTolerance.
  explicit Spectrum(std::vector<double> entries);

  /// Sorts, clamps entries within `clamp_tol` of zero, and renormalizes.
  /// Entries below -clamp_tol, non-finite entries or a non-positive total
  /// are rejected.
  static Spectrum normalized(std::vector<double> values,
                             double clamp_tol = kSpectrumTolerance);

  static Spectrum uniform(std::size_t dim);
  static Spectrum pure(std::size_t dim);

  std::size_t size() const { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  std::span<const double> entries() const { return entries_; }
  const std::vector<double>& values() const { return entries_; }
  RealVector as_vector() const;

  friend bool operator==(const Spectrum&, const Spectrum&) = default;

 private:
  std::vector<double> entries_;
};

// max_i |a_i - b_i|; sizes must agree.
double max_abs_difference(const Spectrum& a, const Spectrum& b);

}  // namespace orbitkit
