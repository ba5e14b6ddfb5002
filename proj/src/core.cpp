#include "orbitkit/core.hpp"

#include <cmath>
#include <sstream>

namespace orbitkit {

namespace {

std::string describe(const char* what, double value) {
  std::ostringstream os;
  os.precision(3);
  os << what << " (defect " << std::scientific << value << ")";
  return os.str();
}

void require_square(const ComplexMatrix& m, const char* who) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    std::ostringstream os;
    os << who << ": expected a non-empty square matrix, got " << m.rows()
       << "x" << m.cols();
    throw InvalidInput(os.str());
  }
}

}  // namespace

double hermiticity_defect(const ComplexMatrix& h) {
  if (h.size() == 0) return 0.0;
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

DensityMatrix::DensityMatrix(ComplexMatrix entries, double tol)
    : entries_(std::move(entries)) {
  require_square(entries_, "DensityMatrix");
  const double herm = hermiticity_defect(entries_);
  if (herm > tol) throw InvalidInput(describe("density matrix not Hermitian", herm));
  const Complex tr = entries_.trace();
  const double trace_defect = std::abs(tr - Complex(1.0, 0.0));
  if (trace_defect > tol)
    throw InvalidInput(describe("density matrix trace differs from 1", trace_defect));
  const double lowest = eigenvalues_hermitian(entries_, tol).minCoeff();
  if (lowest < -tol)
    throw InvalidInput(describe("density matrix has a negative eigenvalue", -lowest));
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  if (dim < 1) throw InvalidInput("maximally_mixed: dim must be >= 1");
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::diagonal(const RealVector& probabilities) {
  return DensityMatrix(probabilities.cast<Complex>().asDiagonal().toDenseMatrix());
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd& psi) {
  const double norm = psi.norm();
  if (norm == 0.0) throw InvalidInput("pure: zero state vector");
  const Eigen::VectorXcd unit = psi / norm;
  return DensityMatrix(unit * unit.adjoint());
}

UnitaryMatrix::UnitaryMatrix(ComplexMatrix entries, double tol)
    : entries_(std::move(entries)) {
  require_square(entries_, "UnitaryMatrix");
  const auto n = entries_.rows();
  const double defect =
      (entries_ * entries_.adjoint() - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (defect > tol) throw InvalidInput(describe("matrix is not unitary", defect));
}

UnitaryMatrix UnitaryMatrix::identity(int dim) {
  return UnitaryMatrix(ComplexMatrix::Identity(dim, dim));
}

UnitaryMatrix UnitaryMatrix::adjoint() const {
  return UnitaryMatrix(entries_.adjoint());
}

EigenDecomposition eig_hermitian(const ComplexMatrix& h, double tol) {
  require_square(h, "eig_hermitian");
  const double defect = hermiticity_defect(h);
  if (defect > tol) throw InvalidInput(describe("eig_hermitian: input not Hermitian", defect));

  // Symmetrize so the solver sees an exactly Hermitian matrix.
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) throw Error("eig_hermitian: solver failed");

  // Eigen returns ascending order.
  const RealVector values = solver.eigenvalues().reverse();
  const ComplexMatrix vectors = solver.eigenvectors().rowwise().reverse();
  return {values, UnitaryMatrix(vectors)};
}

RealVector eigenvalues_hermitian(const ComplexMatrix& h, double tol) {
  require_square(h, "eigenvalues_hermitian");
  const double defect = hermiticity_defect(h);
  if (defect > tol)
    throw InvalidInput(describe("eigenvalues_hermitian: input not Hermitian", defect));
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().reverse();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, Bipartition dims,
                                Subsystem which) {
  if (dims.dim_a < 1 || dims.dim_b < 1 || rho.rows() != dims.total() ||
      rho.cols() != dims.total()) {
    std::ostringstream os;
    os << "partial_transpose: dims " << dims.dim_a << "x" << dims.dim_b
       << " do not match a " << rho.rows() << "x" << rho.cols() << " operator";
    throw InvalidInput(os.str());
  }
  const int da = dims.dim_a;
  const int db = dims.dim_b;
  ComplexMatrix out(rho.rows(), rho.cols());
  // Element <i j| rho |k l> lives at (i*db + j, k*db + l).
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j)
      for (int k = 0; k < da; ++k)
        for (int l = 0; l < db; ++l) {
          const Complex v = rho(i * db + j, k * db + l);
          if (which == Subsystem::A)
            out(k * db + j, i * db + l) = v;
          else
            out(i * db + l, k * db + j) = v;
        }
  return out;
}

DensityMatrix conjugate(const DensityMatrix& rho, const UnitaryMatrix& u) {
  if (rho.dim() != u.dim()) {
    std::ostringstream os;
    os << "conjugate: state dim " << rho.dim() << " != unitary dim " << u.dim();
    throw InvalidInput(os.str());
  }
  const ComplexMatrix out = u.matrix() * rho.matrix() * u.matrix().adjoint();
  return DensityMatrix(0.5 * (out + out.adjoint()));
}

}  // namespace orbitkit
