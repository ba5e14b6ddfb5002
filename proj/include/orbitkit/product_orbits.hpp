#pragma once

#include "orbitkit/core.hpp"
#include "orbitkit/orbits.hpp"
#include "orbitkit/random.hpp"
#include "orbitkit/spectrum.hpp"

#include <optional>
#include <string>
#include <vector>

namespace orbitkit {

// Largest composite dimension handled by the exhaustive factorization search
// and the dimension estimator.
inline constexpr int kMaxCompositeDim = 12;

/// Marginal spectra whose sorted outer product reproduces a composite spectrum.
struct Factorization {
  std::vector<Spectrum> marginals;
  double residual = 0.0;  // max-abs mismatch against the input spectrum
};

struct DimensionReport {
  std::vector<int> subsystem_dims;
  int product_orbit_dim = 0;  // sum d_i - n
  int ambient_dim = 0;        // prod d_i - 1
};

/// One grid point of a surface z(x, y) inside the tetrahedron.
struct SurfaceSample {
  double x = 0.0;
  double y = 0.0;
  std::optional<double> z;
  std::optional<Spectrum> spectrum;
  // False when a level-set scan saw its predicate switch back off.
  bool monotone = true;
};

/// Rectangular (x, y) grid, sampled row-major: y is the slow index, x the
/// fast one. End points are hit exactly.
struct GridSpec {
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;
  int nx = 2;
  int ny = 2;

  // The (x, y) shadow of the ordered tetrahedron: [0, sqrt6/3] x [0, sqrt2/3].
  static GridSpec tetrahedron_shadow(int nx, int ny);
  void validate() const;
  double x_at(int i) const;
  double y_at(int j) const;
};

/// Sorted (descending) outer product of the given spectra.
Spectrum sorted_outer_product(const std::vector<Spectrum>& marginals);

/// Does the spectrum factor as a sorted outer product of a length-dA and a
/// length-dB spectrum, within `tol` (max-abs)?
///
/// Every assignment of the sorted entries to a dA x dB grid that is
/// non-increasing along rows and columns is tried (standard Young tableaux
/// of rectangular shape); any rank-1 grid with sorted marginals has this
/// form, so the search is exact. Marginals are estimated from row and column
/// sums. Returns the assignment with minimal residual.
std::optional<Factorization> factor_bipartite(const Spectrum& s, int dim_a, int dim_b,
                                              double tol);

/// n-partite version: first factor against the rest, then recurse into the
/// remainder, backtracking over every admissible bipartite split.
std::optional<Factorization> factor_multipartite(const Spectrum& s,
                                                 const std::vector<int>& dims,
                                                 double tol);

// z^2 + z + (z - 1)(sqrt3 x + y)/sqrt2 + sqrt3 x y - y^2
double product_constraint(double x, double y, double z);

/// Height of the product-orbit surface above (x, y): the larger root of the
/// constraint quadratic in z, kept only when real, inside the ordered
/// chamber and mapping to a valid spectrum.
std::optional<double> product_surface_z(double x, double y);

std::vector<SurfaceSample> sample_product_surface(const GridSpec& grid);

DimensionReport product_orbit_dims(const std::vector<int>& dims);

/// Jacobian of (free marginal parameters) -> (unsorted outer-product
/// spectrum). Each marginal of length d is parametrized by its first d-1
/// entries; the last is 1 minus their sum.
RealMatrix product_spectrum_jacobian(const std::vector<Spectrum>& marginals);

// Singular values above rel_threshold * sigma_max.
int numerical_rank(const RealMatrix& m, double rel_threshold = 1e-8);

/// Modal Jacobian rank over `trials` random interior points.
int estimate_dimension(const std::vector<int>& dims, RandomSource& rng, int trials);

struct EdgeIncidence {
  std::string edge;    // e.g. "O-M2"
  bool on_surface;     // every interior sample point factors
};

/// Checks which of the six tetrahedron edges lie in the product-orbit
/// surface by testing `samples` interior points of each edge.
std::vector<EdgeIncidence> product_surface_edge_incidence(int samples = 17,
                                                          double tol = 1e-9);

}  // namespace orbitkit
