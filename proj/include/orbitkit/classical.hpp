#pragma once

#include "orbitkit/core.hpp"
#include "orbitkit/random.hpp"

namespace orbitkit {

/// lambda_ij = a_i * b_j^(i): classical weights on A and conditional
/// probability rows on B.
struct ClassicalFactorization {
  RealVector weights;        // a, length dA
  RealMatrix conditionals;   // row i is b^(i), length dB
};

/// Classically correlated state on the orbit of `input`, with the unitaries
/// that connect the two:
///
///   U_cd^dag W rho W^dag U_cd = classical_state
///
/// where W sends the eigenvector |v_ij> of rho to |ij> and
/// U_cd = sum_i |i><i| (x) u_i.
struct ClassicalizationResult {
  DensityMatrix classical_state;
  UnitaryMatrix w;
  UnitaryMatrix u_cd;
  ClassicalFactorization factorization;
};

/// Row sums become weights, normalized rows become conditionals. A row with
/// zero weight gets the uniform conditional.
ClassicalFactorization factor_classical(const RealMatrix& lambda_grid);

/// Arranges the descending eigenvalues of `rho` row-major in a dA x dB grid
/// and rebuilds the state as sum_i a_i |i><i| (x) u_i^dag diag(b^(i)) u_i.
/// The u_i are identities when `rng` is null and Haar-random otherwise.
ClassicalizationResult classicalize(const DensityMatrix& rho, Bipartition dims,
                                    RandomSource* rng = nullptr);

/// Block-diagonal in the computational basis of A: every off-diagonal
/// dB x dB block has max-abs entry <= tol.
bool is_classically_correlated(const DensityMatrix& rho, Bipartition dims,
                               double tol = 1e-9);

// Relabels A(x)B as B(x)A.
DensityMatrix swap_subsystems(const DensityMatrix& rho, Bipartition dims);

}  // namespace orbitkit
