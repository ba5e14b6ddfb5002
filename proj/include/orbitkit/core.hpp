#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace orbitkit {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Absolute tolerance for Hermiticity, trace and unitarity checks.
inline constexpr double kStateTolerance = 1e-9;
// Frobenius bound on V diag(w) V^dag - H after diagonalization.
inline constexpr double kReconstructionTolerance = 1e-10;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: dimension mismatch, non-Hermitian matrix, invalid state.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Problem size beyond what an exhaustive routine supports.
class CapacityExceeded : public Error {
 public:
  using Error::Error;
};

class IoFailure : public Error {
 public:
  using Error::Error;
};

/// A positive semidefinite, unit-trace, Hermitian matrix.
///
/// Construction validates every invariant within `kStateTolerance`; once built
/// the value is immutable.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix entries, double tol = kStateTolerance);

  static DensityMatrix maximally_mixed(int dim);
  static DensityMatrix diagonal(const RealVector& probabilities);
  // |psi><psi| for a (not necessarily normalized) state vector.
  static DensityMatrix pure(const Eigen::VectorXcd& psi);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const ComplexMatrix& matrix() const { return entries_; }

 private:
  ComplexMatrix entries_;
};

/// A square matrix with U U^dag = 1 within `kStateTolerance`.
class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(ComplexMatrix entries, double tol = kStateTolerance);

  static UnitaryMatrix identity(int dim);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const ComplexMatrix& matrix() const { return entries_; }
  UnitaryMatrix adjoint() const;

 private:
  ComplexMatrix entries_;
};

struct Bipartition {
  int dim_a = 0;
  int dim_b = 0;

  int total() const { return dim_a * dim_b; }
  Bipartition swapped() const { return {dim_b, dim_a}; }
};

enum class Subsystem { A, B };

struct EigenDecomposition {
  RealVector values;     // descending
  UnitaryMatrix vectors;  // column k belongs to values[k]
};

// Max-abs entry of H - H^dag.
double hermiticity_defect(const ComplexMatrix& h);

/// Eigendecomposition of a Hermitian matrix with eigenvalues sorted from
/// large to small. Throws InvalidInput, quoting the defect, when `h` is not
/// Hermitian within `tol`.
EigenDecomposition eig_hermitian(const ComplexMatrix& h,
                                 double tol = kStateTolerance);

// Descending eigenvalues only; skips the eigenvector work.
RealVector eigenvalues_hermitian(const ComplexMatrix& h,
                                 double tol = kStateTolerance);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Transpose on one tensor factor of a dA*dB operator.
ComplexMatrix partial_transpose(const ComplexMatrix& rho, Bipartition dims,
                                Subsystem which);

/// U rho U^dag.
DensityMatrix conjugate(const DensityMatrix& rho, const UnitaryMatrix& u);

}  // namespace orbitkit
