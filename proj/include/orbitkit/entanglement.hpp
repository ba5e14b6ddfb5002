#pragma once

#include "orbitkit/core.hpp"
#include "orbitkit/orbits.hpp"
#include "orbitkit/product_orbits.hpp"
#include "orbitkit/random.hpp"
#include "orbitkit/spectrum.hpp"

#include <optional>
#include <vector>

namespace orbitkit {

/// Sum of |mu| over the negative eigenvalues mu of the partial transpose.
/// A Bell state gives 1/2.
double negativity(const DensityMatrix& rho, Bipartition dims);

/// Wootters concurrence of a two-qubit state.
double concurrence_2q(const DensityMatrix& rho);

/// max(0, l1 - l3 - 2 sqrt(l2 l4)): the largest concurrence reachable on the
/// orbit of a two-qubit spectrum (Verstraete, Audenaert, De Moor). Used as a
/// cross-check for the orbit optimizer.
double max_concurrence_closed_form(const Spectrum& s);

struct OptimizerConfig {
  int restarts = 16;
  int max_iters = 500;
  double step_init = 0.5;
  double tol_value = 1e-8;
  RandomSource seed{0};
  bool record_trace = false;

  void validate() const;
};

struct TracePoint {
  int iteration = 0;
  double value = 0.0;
};

struct NegativityReport {
  double best_negativity = 0.0;
  UnitaryMatrix best_unitary = UnitaryMatrix::identity(4);
  int restarts_used = 0;
  bool converged = false;
  // Ascent history of the winning restart when record_trace is set.
  std::vector<TracePoint> trace;
};

struct ConcurrenceReport {
  double best_concurrence = 0.0;
  UnitaryMatrix best_unitary = UnitaryMatrix::identity(4);
  int restarts_used = 0;
  bool converged = false;
};

/// Lower bound on max_U negativity(U diag(s) U^dag) for a length-4 spectrum,
/// found by random-restart ascent on the unitary group.
///
/// Each restart starts from a Haar unitary (restart 0 from `warm_start`
/// when given) and climbs with geodesic steps exp(i t H) U, H the
/// Polak-Ribiere combination of analytic gradients, t chosen by a
/// value-only line search. For two qubits the partial transpose has at most
/// one negative eigenvalue, so the climb maximizes -min eig(PT), which equals
/// the negativity wherever it is positive and stays informative where the
/// negativity is flat at zero.
NegativityReport max_negativity_orbit(const Spectrum& s, const OptimizerConfig& cfg,
                                      const std::optional<UnitaryMatrix>& warm_start = {});

/// Same search with the concurrence as objective (surrogate s1 - s2 - s3 - s4
/// before clipping at zero; finite-difference gradients).
ConcurrenceReport max_concurrence_orbit(const Spectrum& s, const OptimizerConfig& cfg);

struct LevelSetConfig {
  int coarse_samples = 9;
  double z_tolerance = 1e-6;
  // A level L > 0 counts as reached at negativity >= L - level_tolerance;
  // level 0 means negativity > level_tolerance.
  double level_tolerance = 1e-7;
};

struct Crossing {
  std::optional<double> t;  // smallest parameter reaching the level
  bool monotone = true;
};

/// First point along the chamber segment from -> to (parameter t in [0, 1])
/// where the optimized orbit negativity reaches `level`. A coarse scan looks
/// for the first hit and records whether the predicate ever switches back
/// off; bisection then refines the crossing.
Crossing negativity_crossing(const OrbitCoords& from, const OrbitCoords& to, double level,
                             const OptimizerConfig& cfg, const LevelSetConfig& ls = {});

/// Equi-negativity surface: for every grid point (x, y), the smallest z on
/// the chamber segment z in [y/sqrt2, 1/3] whose orbit reaches `level`.
std::vector<SurfaceSample> equi_negativity_surface(double level, const GridSpec& grid,
                                                   const OptimizerConfig& cfg,
                                                   const LevelSetConfig& ls = {});

}  // namespace orbitkit
