#include "orbitkit/orbits.hpp"
#include "orbitkit/random.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace orbitkit {
namespace {

const double kSqrt2 = std::numbers::sqrt2;
const double kSqrt6 = std::sqrt(6.0);

void expect_coords(const OrbitCoords& c, double x, double y, double z, double tol = 1e-12) {
  EXPECT_NEAR(c.x, x, tol);
  EXPECT_NEAR(c.y, y, tol);
  EXPECT_NEAR(c.z, z, tol);
}

TEST(SpectrumOf, Examples) {
  EXPECT_EQ(spectrum_of(DensityMatrix::maximally_mixed(4)), Spectrum::uniform(4));
  const Spectrum bell = spectrum_of(testing::bell_state());
  EXPECT_NEAR(bell[0], 1.0, 1e-14);
  for (int k = 1; k < 4; ++k) EXPECT_NEAR(bell[k], 0.0, 1e-14);

  RandomSource rng(4);
  Eigen::VectorXcd psi(3);
  for (int k = 0; k < 3; ++k) psi(k) = rng.complex_normal();
  const Spectrum pure = spectrum_of(DensityMatrix::pure(psi));
  EXPECT_NEAR(pure[0], 1.0, 1e-14);
}

TEST(SameOrbit, Examples) {
  RandomSource rng(21);
  const DensityMatrix rho = random_density(3, rng);
  EXPECT_TRUE(same_orbit(rho, conjugate(rho, haar_unitary(3, rng))));

  ComplexMatrix p0 = ComplexMatrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  EXPECT_FALSE(same_orbit(DensityMatrix(p0), DensityMatrix::maximally_mixed(2)));
  EXPECT_FALSE(same_orbit(random_density(4, rng), random_density(4, rng)));
  EXPECT_THROW(same_orbit(rho, DensityMatrix::maximally_mixed(2)), InvalidInput);
}

TEST(ScalarMeasures, Examples) {
  EXPECT_EQ(entropy(Spectrum::pure(4)), 0.0);
  EXPECT_EQ(purity(Spectrum::pure(4)), 1.0);
  EXPECT_NEAR(entropy(Spectrum::uniform(4)), std::log(4.0), 1e-15);
  EXPECT_NEAR(purity(Spectrum::uniform(4)), 0.25, 1e-15);
}

TEST(ScalarMeasures, EqualPurityDifferentEntropy) {
  const Spectrum a({0.5, 0.5, 0.0});
  const Spectrum b = Spectrum::normalized({2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0});
  EXPECT_NEAR(purity(a), 0.5, 1e-15);
  EXPECT_NEAR(purity(b), 0.5, 1e-15);
  // ln 2 = 0.693..., (2/3) ln(3/2) + (1/3) ln 6 = 0.867...
  EXPECT_NEAR(entropy(a), std::log(2.0), 1e-15);
  EXPECT_NEAR(entropy(b), 2.0 / 3.0 * std::log(1.5) + std::log(6.0) / 3.0, 1e-15);
  EXPECT_GT(std::abs(entropy(a) - entropy(b)), 0.1);
}

TEST(ScalarMeasures, InvariantUnderConjugation) {
  RandomSource rng(500);
  for (int trial = 0; trial < 500; ++trial) {
    const int dim = 2 + trial % 8;
    const DensityMatrix rho = random_density(dim, rng);
    const DensityMatrix moved = conjugate(rho, haar_unitary(dim, rng));
    const Spectrum s0 = spectrum_of(rho);
    const Spectrum s1 = spectrum_of(moved);
    ASSERT_LE(max_abs_difference(s0, s1), 1e-9);
    ASSERT_NEAR(entropy(s0), entropy(s1), 1e-9);
    ASSERT_NEAR(purity(s0), purity(s1), 1e-9);
  }
}

TEST(CoordsD2, Examples) {
  EXPECT_EQ(coords_d2(Spectrum::uniform(2)), 0.0);
  EXPECT_EQ(coords_d2(Spectrum::pure(2)), 1.0);
  EXPECT_EQ(coords_d2(Spectrum({0.75, 0.25})), 0.5);
  EXPECT_THROW(coords_d2(Spectrum::uniform(3)), InvalidInput);
}

TEST(CoordsD2, Roundtrip) {
  RandomSource rng(2);
  for (int i = 0; i < 1000; ++i) {
    const Spectrum s = random_spectrum(2, rng);
    ASSERT_LE(max_abs_difference(inverse_coords_d2(coords_d2(s)), s), 1e-12);
  }
}

TEST(CoordsD3, Examples) {
  const PlanarPoint c = coords_d3(Spectrum::uniform(3));
  EXPECT_NEAR(c.u, 0.0, 1e-15);
  EXPECT_NEAR(c.v, 0.0, 1e-15);

  const PlanarPoint p = coords_d3(Spectrum::pure(3));
  EXPECT_NEAR(p.u, 0.0, 1e-15);
  EXPECT_NEAR(p.v, 1.0 / std::sqrt(3.0), 1e-15);

  // The (1,0,0)-(0,1,0) edge midpoint: vertices (0, 1/sqrt3) and (1/2, -1/(2 sqrt3)).
  const PlanarPoint m = coords_d3(Spectrum({0.5, 0.5, 0.0}));
  EXPECT_NEAR(m.u, 0.25, 1e-15);
  EXPECT_NEAR(m.v, 1.0 / (4.0 * std::sqrt(3.0)), 1e-15);

  // Unit side: pure vertex to the (0,1,0) vertex.
  EXPECT_NEAR(std::hypot(0.5, -1.0 / (2.0 * std::sqrt(3.0)) - p.v), 1.0, 1e-15);
}

TEST(CoordsD3, RoundtripAndInjective) {
  RandomSource rng(3);
  for (int i = 0; i < 1000; ++i) {
    const Spectrum s = random_spectrum(3, rng);
    const PlanarPoint p = coords_d3(s);
    ASSERT_LE(max_abs_difference(inverse_coords_d3(p), s), 1e-12);
    const Spectrum t = random_spectrum(3, rng);
    const PlanarPoint q = coords_d3(t);
    if (max_abs_difference(s, t) > 1e-6) ASSERT_GT(std::hypot(p.u - q.u, p.v - q.v), 1e-9);
  }
}

TEST(CoordsD4, Vertices) {
  expect_coords(coords_d4(Spectrum::uniform(4)), 0, 0, 0);
  expect_coords(coords_d4(Spectrum::pure(4)), kSqrt6 / 3, kSqrt2 / 3, 1.0 / 3);
  expect_coords(coords_d4(Spectrum({0.5, 0.5, 0, 0})), 0, kSqrt2 / 3, 1.0 / 3);
  expect_coords(coords_d4(Spectrum::normalized({1, 1, 1, 0})), 0, 0, 1.0 / 3);

  expect_coords(tetrahedron::mixed(), 0, 0, 0);
  expect_coords(tetrahedron::three_equal(), 0, 0, 1.0 / 3);
  expect_coords(tetrahedron::two_equal(), 0, kSqrt2 / 3, 1.0 / 3);
  expect_coords(tetrahedron::pure(), kSqrt6 / 3, kSqrt2 / 3, 1.0 / 3);
}

TEST(CoordsD4, ForwardFormulas) {
  // Plug the coordinates back into the four linear forms.
  RandomSource rng(40);
  for (int i = 0; i < 100; ++i) {
    const Spectrum s = random_spectrum(4, rng);
    const OrbitCoords c = coords_d4(s);
    EXPECT_NEAR((1 + kSqrt6 * c.x + kSqrt2 * c.y + c.z) / 4, s[0], 1e-14);
    EXPECT_NEAR((1 - kSqrt6 * c.x + kSqrt2 * c.y + c.z) / 4, s[1], 1e-14);
    EXPECT_NEAR((1 - 2 * kSqrt2 * c.y + c.z) / 4, s[2], 1e-14);
    EXPECT_NEAR((1 - 3 * c.z) / 4, s[3], 1e-14);
  }
}

TEST(InverseCoordsD4, Examples) {
  EXPECT_LE(max_abs_difference(inverse_coords_d4({0, 0, 0}), Spectrum::uniform(4)), 1e-15);
  EXPECT_LE(max_abs_difference(inverse_coords_d4(tetrahedron::pure()), Spectrum::pure(4)),
            1e-12);
}

TEST(InverseCoordsD4, Roundtrip) {
  RandomSource rng(41);
  for (int i = 0; i < 1000; ++i) {
    const Spectrum s = random_spectrum(4, rng);
    ASSERT_LE(max_abs_difference(inverse_coords_d4(coords_d4(s)), s), 1e-12);
  }
}

TEST(InverseCoordsD4, ChamberInequalities) {
  // Every sorted spectrum lands inside the chamber, equivalently inside the
  // convex hull of the four vertices: barycentric weights are all >= 0.
  const OrbitCoords m3 = tetrahedron::three_equal();
  const OrbitCoords m2 = tetrahedron::two_equal();
  const OrbitCoords p = tetrahedron::pure();
  Eigen::Matrix3d edges;
  edges << m3.x, m2.x, p.x, m3.y, m2.y, p.y, m3.z, m2.z, p.z;
  const Eigen::Matrix3d inv = edges.inverse();

  RandomSource rng(42);
  for (int i = 0; i < 1000; ++i) {
    const OrbitCoords c = coords_d4(random_spectrum(4, rng));
    ASSERT_GE(c.x, -1e-15);
    ASSERT_GE(c.y - c.x / std::sqrt(3.0), -1e-15);
    ASSERT_GE(c.z - c.y / kSqrt2, -1e-15);
    ASSERT_LE(c.z, 1.0 / 3 + 1e-15);
    ASSERT_FALSE(chamber_violation(c));
    const Eigen::Vector3d w = inv * Eigen::Vector3d(c.x, c.y, c.z);
    ASSERT_GE(w.minCoeff(), -1e-12);
    ASSERT_LE(w.sum(), 1.0 + 1e-12);
  }
}

TEST(InverseCoordsD4, OutsideChamberNamesTheInequality) {
  try {
    inverse_coords_d4({-0.1, 0.2, 0.2});
    FAIL() << "expected ChamberError";
  } catch (const ChamberError& e) {
    EXPECT_NE(std::string(e.what()).find("x >= 0"), std::string::npos) << e.what();
  }
  try {
    inverse_coords_d4({0.0, 0.0, 0.5});
    FAIL() << "expected ChamberError";
  } catch (const ChamberError& e) {
    EXPECT_NE(std::string(e.what()).find("z <= 1/3"), std::string::npos) << e.what();
  }
  EXPECT_THROW(inverse_coords_d4({0.3, 0.1, 0.2}), ChamberError);
  EXPECT_THROW(inverse_coords_d4({0.0, 0.3, 0.1}), ChamberError);
}

TEST(InverseCoordsD4, ClampsFloatingPointDust) {
  const Spectrum s = inverse_coords_d4({-1e-14, 0.0, 0.0});
  EXPECT_LE(max_abs_difference(s, Spectrum::uniform(4)), 1e-13);
}

}  // namespace
}  // namespace orbitkit
