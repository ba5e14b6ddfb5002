#include "orbitkit/classical.hpp"

#include <cmath>
#include <sstream>

namespace orbitkit {

namespace {

void require_dims(int dim, Bipartition dims, const char* who) {
  if (dims.dim_a < 1 || dims.dim_b < 1 || dims.total() != dim) {
    std::ostringstream os;
    os << who << ": dims " << dims.dim_a << "x" << dims.dim_b
       << " do not match state dimension " << dim;
    throw InvalidInput(os.str());
  }
}

}  // namespace

ClassicalFactorization factor_classical(const RealMatrix& lambda_grid) {
  if (lambda_grid.size() == 0) throw InvalidInput("factor_classical: empty grid");
  if ((lambda_grid.array() < 0.0).any() || !lambda_grid.allFinite())
    throw InvalidInput("factor_classical: grid has a negative or non-finite entry");
  const double total = lambda_grid.sum();
  if (std::abs(total - 1.0) > 1e-12) {
    std::ostringstream os;
    os.precision(17);
    os << "factor_classical: grid sums to " << total << ", not 1";
    throw InvalidInput(os.str());
  }
  const auto rows = lambda_grid.rows();
  const auto cols = lambda_grid.cols();
  ClassicalFactorization f{lambda_grid.rowwise().sum(), RealMatrix(rows, cols)};
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (f.weights[i] > 0.0)
      f.conditionals.row(i) = lambda_grid.row(i) / f.weights[i];
    else
      f.conditionals.row(i).setConstant(1.0 / static_cast<double>(cols));
  }
  return f;
}

ClassicalizationResult classicalize(const DensityMatrix& rho, Bipartition dims,
                                    RandomSource* rng) {
  require_dims(rho.dim(), dims, "classicalize");
  const int da = dims.dim_a;
  const int db = dims.dim_b;

  const EigenDecomposition eig = eig_hermitian(rho.matrix());
  RealVector lambda = eig.values.cwiseMax(0.0);
  lambda /= lambda.sum();

  RealMatrix grid(da, db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j) grid(i, j) = lambda[i * db + j];
  ClassicalFactorization factorization = factor_classical(grid);

  // W |v_ij> = |ij>.
  UnitaryMatrix w = eig.vectors.adjoint();

  ComplexMatrix u_cd = ComplexMatrix::Zero(dims.total(), dims.total());
  for (int i = 0; i < da; ++i) {
    u_cd.block(i * db, i * db, db, db) =
        rng ? haar_unitary(db, *rng).matrix() : ComplexMatrix::Identity(db, db);
  }

  const ComplexMatrix diag = lambda.cast<Complex>().asDiagonal().toDenseMatrix();
  ComplexMatrix cl = u_cd.adjoint() * diag * u_cd;
  cl = 0.5 * (cl + cl.adjoint());
  return {DensityMatrix(std::move(cl)), std::move(w), UnitaryMatrix(std::move(u_cd)),
          std::move(factorization)};
}

bool is_classically_correlated(const DensityMatrix& rho, Bipartition dims, double tol) {
  require_dims(rho.dim(), dims, "is_classically_correlated");
  const int db = dims.dim_b;
  for (int i = 0; i < dims.dim_a; ++i)
    for (int k = 0; k < dims.dim_a; ++k) {
      if (i == k) continue;
      if (rho.matrix().block(i * db, k * db, db, db).cwiseAbs().maxCoeff() > tol)
        return false;
    }
  return true;
}

DensityMatrix swap_subsystems(const DensityMatrix& rho, Bipartition dims) {
  require_dims(rho.dim(), dims, "swap_subsystems");
  const int da = dims.dim_a;
  const int db = dims.dim_b;
  ComplexMatrix out(rho.dim(), rho.dim());
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j)
      for (int k = 0; k < da; ++k)
        for (int l = 0; l < db; ++l)
          out(j * da + i, l * da + k) = rho.matrix()(i * db + j, k * db + l);
  return DensityMatrix(std::move(out));
}

}  // namespace orbitkit
