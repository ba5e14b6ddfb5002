#include "orbitkit/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace orbitkit {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kSqrt3 = std::numbers::sqrt3;
const double kSqrt6 = std::sqrt(6.0);

void require_length(const Spectrum& s, std::size_t n, const char* who) {
  if (s.size() != n) {
    std::ostringstream os;
    os << who << ": expected a spectrum of length " << n << ", got " << s.size();
    throw InvalidInput(os.str());
  }
}

// Reject descending-order violations larger than tol, then clamp/renormalize.
Spectrum checked_spectrum(std::vector<double> entries, double tol, const char* who) {
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i] > entries[i - 1] + tol) {
      std::ostringstream os;
      os << who << ": entries " << i - 1 << " and " << i << " out of order";
      throw ChamberError(os.str());
    }
  }
  return Spectrum::normalized(std::move(entries), tol);
}

}  // namespace

Spectrum spectrum_of(const DensityMatrix& rho) {
  const RealVector w = eigenvalues_hermitian(rho.matrix());
  std::vector<double> entries(w.data(), w.data() + w.size());
  for (double& v : entries) {
    if (v < -kStateTolerance) {
      std::ostringstream os;
      os << "spectrum_of: eigenvalue " << v << " below -" << kStateTolerance;
      throw InvalidInput(os.str());
    }
    v = std::clamp(v, 0.0, 1.0);
  }
  return Spectrum::normalized(std::move(entries));
}

bool same_orbit(const DensityMatrix& a, const DensityMatrix& b, double tol) {
  if (a.dim() != b.dim()) throw InvalidInput("same_orbit: dimension mismatch");
  return max_abs_difference(spectrum_of(a), spectrum_of(b)) <= tol;
}

double entropy(const Spectrum& s) {
  double h = 0.0;
  for (double p : s.entries())
    if (p > 0.0) h -= p * std::log(p);
  return h;
}

double purity(const Spectrum& s) {
  double total = 0.0;
  for (double p : s.entries()) total += p * p;
  return total;
}

ScalarMeasures scalar_measures(const Spectrum& s) { return {entropy(s), purity(s)}; }

double coords_d2(const Spectrum& s) {
  require_length(s, 2, "coords_d2");
  return s[0] - s[1];
}

Spectrum inverse_coords_d2(double radius) {
  if (!(radius >= -kSpectrumTolerance && radius <= 1.0 + kSpectrumTolerance))
    throw ChamberError("inverse_coords_d2: radius outside [0, 1]");
  return checked_spectrum({0.5 * (1.0 + radius), 0.5 * (1.0 - radius)},
                          kSpectrumTolerance, "inverse_coords_d2");
}

PlanarPoint coords_d3(const Spectrum& s) {
  require_length(s, 3, "coords_d3");
  // Vertices: pure (0, 1/sqrt3), second (1/2, -1/(2 sqrt3)), third (-1/2, ...).
  const double u = 0.5 * (s[1] - s[2]);
  const double v = (3.0 * s[0] - 1.0) / (2.0 * kSqrt3);
  return {u, v};
}

Spectrum inverse_coords_d3(PlanarPoint p) {
  const double l1 = (2.0 * kSqrt3 * p.v + 1.0) / 3.0;
  const double rest = 1.0 - l1;
  return checked_spectrum({l1, 0.5 * (rest + 2.0 * p.u), 0.5 * (rest - 2.0 * p.u)},
                          kSpectrumTolerance, "inverse_coords_d3");
}

namespace tetrahedron {
OrbitCoords mixed() { return {0.0, 0.0, 0.0}; }
OrbitCoords three_equal() { return {0.0, 0.0, 1.0 / 3.0}; }
OrbitCoords two_equal() { return {0.0, kSqrt2 / 3.0, 1.0 / 3.0}; }
OrbitCoords pure() { return {kSqrt6 / 3.0, kSqrt2 / 3.0, 1.0 / 3.0}; }
}  // namespace tetrahedron

OrbitCoords coords_d4(const Spectrum& s) {
  require_length(s, 4, "coords_d4");
  const double z = (1.0 - 4.0 * s[3]) / 3.0;
  const double y = (1.0 + z - 4.0 * s[2]) / (2.0 * kSqrt2);
  const double x = (4.0 * s[0] - 1.0 - kSqrt2 * y - z) / kSqrt6;
  return {x, y, z};
}

std::optional<std::string> chamber_violation(const OrbitCoords& c, double tol) {
  if (!(c.x >= -tol)) return "x >= 0 (l1 >= l2)";
  if (!(c.y >= c.x / kSqrt3 - tol)) return "y >= x/sqrt(3) (l2 >= l3)";
  if (!(c.z >= c.y / kSqrt2 - tol)) return "z >= y/sqrt(2) (l3 >= l4)";
  if (!(c.z <= 1.0 / 3.0 + tol)) return "z <= 1/3 (l4 >= 0)";
  return std::nullopt;
}

Eigen::Vector4d spectrum_entries_d4(const OrbitCoords& c) {
  return Eigen::Vector4d(1.0 + kSqrt6 * c.x + kSqrt2 * c.y + c.z,
                         1.0 - kSqrt6 * c.x + kSqrt2 * c.y + c.z,
                         1.0 - 2.0 * kSqrt2 * c.y + c.z, 1.0 - 3.0 * c.z) /
         4.0;
}

Spectrum inverse_coords_d4(const OrbitCoords& c, double tol) {
  if (auto bad = chamber_violation(c, tol)) {
    std::ostringstream os;
    os.precision(17);
    os << "inverse_coords_d4: (" << c.x << ", " << c.y << ", " << c.z
       << ") outside the ordered tetrahedron, violates " << *bad;
    throw ChamberError(os.str());
  }
  const Eigen::Vector4d l = spectrum_entries_d4(c);
  return checked_spectrum({l[0], l[1], l[2], l[3]}, tol, "inverse_coords_d4");
}

}  // namespace orbitkit
