#pragma once

#include "orbitkit/core.hpp"
#include "orbitkit/spectrum.hpp"

#include <optional>
#include <string>

namespace orbitkit {

class ChamberError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// Descending eigenvalues of `rho`, clamped into [0, 1] and renormalized.
/// An eigenvalue below -kStateTolerance is an invalid state.
Spectrum spectrum_of(const DensityMatrix& rho);

/// True iff the sorted spectra differ by at most `tol` entrywise.
bool same_orbit(const DensityMatrix& a, const DensityMatrix& b, double tol = 1e-9);

struct ScalarMeasures {
  double von_neumann_entropy = 0.0;  // nats
  double purity = 0.0;
};

double entropy(const Spectrum& s);  // -sum p ln p, 0 ln 0 = 0
double purity(const Spectrum& s);   // sum p^2
ScalarMeasures scalar_measures(const Spectrum& s);

// ---------------------------------------------------------------------------
// Qubit: the orbit space is the segment [O, P] of Bloch radii.

double coords_d2(const Spectrum& s);
Spectrum inverse_coords_d2(double radius);

// ---------------------------------------------------------------------------
// Qutrit: barycentric embedding into an equilateral triangle of unit side,
// centroid (the fully mixed point) at the origin and the pure vertex at the
// apex (0, 1/sqrt(3)). The remaining two vertices carry the weights of the
// second and third eigenvalue.

struct PlanarPoint {
  double u = 0.0;
  double v = 0.0;
};

PlanarPoint coords_d3(const Spectrum& s);
Spectrum inverse_coords_d3(PlanarPoint p);

// ---------------------------------------------------------------------------
// Two qubits: the ordered tetrahedron. A sorted spectrum is written as
//
//   l1 = (1 + sqrt6 x + sqrt2 y + z) / 4
//   l2 = (1 - sqrt6 x + sqrt2 y + z) / 4
//   l3 = (1 - 2 sqrt2 y + z) / 4
//   l4 = (1 - 3 z) / 4
//
// and l1 >= l2 >= l3 >= l4 >= 0 becomes
//
//   x >= 0,  y >= x / sqrt3,  z >= y / sqrt2,  z <= 1/3.

struct OrbitCoords {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

namespace tetrahedron {
// Vertices of the ordered chamber.
OrbitCoords mixed();          // O: I/4
OrbitCoords three_equal();    // M3: (1/3, 1/3, 1/3, 0)
OrbitCoords two_equal();      // M2: (1/2, 1/2, 0, 0)
OrbitCoords pure();           // P: (1, 0, 0, 0)
}  // namespace tetrahedron

OrbitCoords coords_d4(const Spectrum& s);

// Name of the first violated chamber inequality, if any, with slack `tol`.
std::optional<std::string> chamber_violation(const OrbitCoords& c,
                                             double tol = kSpectrumTolerance);

// Raw (unsorted, unclamped) l1..l4 for arbitrary coordinates.
Eigen::Vector4d spectrum_entries_d4(const OrbitCoords& c);

/// Inverse chart. Throws ChamberError naming the violated inequality when
/// `c` lies outside the ordered tetrahedron by more than `tol`; points within
/// `tol` of a face are clamped onto it.
Spectrum inverse_coords_d4(const OrbitCoords& c, double tol = kSpectrumTolerance);

}  // namespace orbitkit
