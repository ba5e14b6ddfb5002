#include "orbitkit/classical.hpp"
#include "orbitkit/orbits.hpp"
#include "orbitkit/random.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

namespace orbitkit {
namespace {

using testing::max_abs;

RealMatrix grid2(double a, double b, double c, double d) {
  RealMatrix g(2, 2);
  g << a, b, c, d;
  return g;
}

ComplexMatrix w_rho_w(const ClassicalizationResult& r, const DensityMatrix& rho) {
  return r.u_cd.matrix().adjoint() * r.w.matrix() * rho.matrix() * r.w.matrix().adjoint() *
         r.u_cd.matrix();
}

TEST(FactorClassical, Examples) {
  const auto f = factor_classical(grid2(0.42, 0.28, 0.18, 0.12));
  EXPECT_NEAR(f.weights[0], 0.7, 1e-15);
  EXPECT_NEAR(f.weights[1], 0.3, 1e-15);
  for (int i = 0; i < 2; ++i) {
    EXPECT_NEAR(f.conditionals(i, 0), 0.6, 1e-15);
    EXPECT_NEAR(f.conditionals(i, 1), 0.4, 1e-15);
  }

  const auto z = factor_classical(grid2(1, 0, 0, 0));
  EXPECT_EQ(z.weights[0], 1.0);
  EXPECT_EQ(z.weights[1], 0.0);
  EXPECT_EQ(z.conditionals(0, 0), 1.0);
  EXPECT_EQ(z.conditionals(0, 1), 0.0);
  EXPECT_EQ(z.conditionals(1, 0), 0.5);
  EXPECT_EQ(z.conditionals(1, 1), 0.5);

  const auto u = factor_classical(grid2(0.25, 0.25, 0.25, 0.25));
  EXPECT_EQ(u.weights[0], 0.5);
  EXPECT_EQ(u.conditionals(1, 1), 0.5);
}

TEST(FactorClassical, Errors) {
  EXPECT_THROW(factor_classical(grid2(0.6, 0.6, -0.2, 0.0)), InvalidInput);
  EXPECT_THROW(factor_classical(grid2(0.5, 0.5, 0.5, 0.0)), InvalidInput);
}

TEST(FactorClassical, IdentitiesAndZeroRows) {
  RandomSource rng(201);
  for (int trial = 0; trial < 200; ++trial) {
    const int rows = 2 + trial % 3;
    const int cols = 2 + (trial / 3) % 3;
    const Spectrum s = random_spectrum(rows * cols, rng);
    RealMatrix g(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) g(i, j) = s[i * cols + j];
    // Zero out a row (or two) and put its mass on the first entry.
    const int zeroed = trial % 2 == 0 ? 1 : std::min(2, rows - 1);
    for (int r = rows - zeroed; r < rows; ++r) {
      g(0, 0) += g.row(r).sum();
      g.row(r).setZero();
    }
    g(0, 0) += 1.0 - g.sum();
    const auto f = factor_classical(g);
    ASSERT_NEAR(f.weights.sum(), 1.0, 1e-12);
    for (int i = 0; i < rows; ++i) {
      ASSERT_TRUE(f.conditionals.row(i).allFinite());
      ASSERT_NEAR(f.conditionals.row(i).sum(), 1.0, 1e-12);
      for (int j = 0; j < cols; ++j) ASSERT_NEAR(f.weights[i] * f.conditionals(i, j), g(i, j), 1e-15);
    }
  }
}

TEST(Classicalize, BellStateGoesToProductPure) {
  const auto r = classicalize(testing::bell_state(), {2, 2});
  ComplexMatrix want = ComplexMatrix::Zero(4, 4);
  want(0, 0) = 1.0;
  EXPECT_LT(max_abs(r.classical_state.matrix() - want), 1e-12);
  EXPECT_NEAR(r.factorization.weights[0], 1.0, 1e-12);
  EXPECT_NEAR(r.factorization.weights[1], 0.0, 1e-12);
  EXPECT_NEAR(r.factorization.conditionals(1, 0), 0.5, 1e-12);
}

TEST(Classicalize, MaximallyMixedIsFixed) {
  RandomSource rng(5);
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(4);
  const auto r = classicalize(mixed, {2, 2}, &rng);
  EXPECT_LT(max_abs(r.classical_state.matrix() - mixed.matrix()), 1e-15);
}

TEST(Classicalize, DimensionMismatch) {
  EXPECT_THROW(classicalize(DensityMatrix::maximally_mixed(4), {2, 3}), InvalidInput);
  EXPECT_THROW(is_classically_correlated(DensityMatrix::maximally_mixed(4), {3, 2}),
               InvalidInput);
}

TEST(Classicalize, TheoremWitness) {
  RandomSource states(202);
  const Bipartition shapes[] = {{2, 2}, {2, 3}, {3, 3}};
  for (int trial = 0; trial < 200; ++trial) {
    const Bipartition dims = shapes[trial % 3];
    const DensityMatrix rho = random_density(dims.total(), states);
    RandomSource local = states.derive(trial);
    const auto r = classicalize(rho, dims, trial % 2 ? &local : nullptr);
    ASSERT_TRUE(same_orbit(rho, r.classical_state, 1e-9));
    ASSERT_LT((w_rho_w(r, rho) - r.classical_state.matrix()).norm(), 1e-9);
    ASSERT_TRUE(is_classically_correlated(r.classical_state, dims));
    if (trial % 2 == 0)
      ASSERT_LT(max_abs(r.u_cd.matrix() - ComplexMatrix::Identity(dims.total(), dims.total())),
                1e-15);
  }
}

TEST(Classicalize, RotatedLocalBlocksAreNotDiagonal) {
  RandomSource states(203);
  const DensityMatrix rho = random_density(6, states);
  RandomSource local(9);
  const auto r = classicalize(rho, {2, 3}, &local);
  const ComplexMatrix& cl = r.classical_state.matrix();
  EXPECT_GT(std::abs(cl(0, 1)) + std::abs(cl(0, 2)) + std::abs(cl(1, 2)), 1e-6);
  EXPECT_TRUE(is_classically_correlated(r.classical_state, {2, 3}));
}

TEST(Classicalize, SwapSymmetry) {
  RandomSource rng(204);
  for (int trial = 0; trial < 30; ++trial) {
    const Bipartition dims{2, 3};
    const DensityMatrix rho = random_density(6, rng);
    const DensityMatrix swapped = swap_subsystems(rho, dims);
    EXPECT_TRUE(same_orbit(rho, swapped, 1e-9));
    EXPECT_EQ(swap_subsystems(swapped, dims.swapped()).matrix(), rho.matrix());
    RandomSource local = rng.derive(trial);
    const auto r = classicalize(swapped, dims.swapped(), &local);
    EXPECT_TRUE(same_orbit(rho, r.classical_state, 1e-9));
    EXPECT_TRUE(is_classically_correlated(r.classical_state, dims.swapped()));
  }
}

TEST(Classicalize, DegenerateSpectraWithZeroRows) {
  // Rank-deficient inputs give grids with zero rows.
  RandomSource rng(205);
  const Bipartition shapes[] = {{2, 2}, {2, 3}, {3, 3}};
  for (int trial = 0; trial < 60; ++trial) {
    const Bipartition dims = shapes[trial % 3];
    const int rank = 1 + trial % dims.dim_b;
    Eigen::VectorXd p = Eigen::VectorXd::Zero(dims.total());
    const Spectrum head = random_spectrum(rank, rng);
    for (int k = 0; k < rank; ++k) p[k] = head[k];
    const DensityMatrix rho = conjugate(DensityMatrix::diagonal(p),
                                        haar_unitary(dims.total(), rng));
    RandomSource local = rng.derive(trial);
    const auto r = classicalize(rho, dims, &local);
    for (int i = 1; i < dims.dim_a; ++i) ASSERT_NEAR(r.factorization.weights[i], 0.0, 1e-9);
    ASSERT_TRUE(r.factorization.conditionals.allFinite());
    ASSERT_TRUE(same_orbit(rho, r.classical_state, 1e-9));
    ASSERT_TRUE(is_classically_correlated(r.classical_state, dims));
  }
}

TEST(IsClassicallyCorrelated, Examples) {
  RandomSource rng(206);
  const DensityMatrix rho_b = random_density(2, rng);
  EXPECT_TRUE(is_classically_correlated(
      DensityMatrix(kron(DensityMatrix::diagonal(Eigen::Vector2d(0.3, 0.7)).matrix(),
                         rho_b.matrix())),
      {2, 2}));
  // Bell off-block <0|rho|1> carries the 1/2 coherence at (0, 3).
  EXPECT_FALSE(is_classically_correlated(testing::bell_state(), {2, 2}));
  EXPECT_NEAR(std::abs(testing::bell_state().matrix()(0, 3)), 0.5, 1e-15);
}

}  // namespace
}  // namespace orbitkit
