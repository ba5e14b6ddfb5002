#include "orbitkit/entanglement.hpp"

#include "orbitkit/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

namespace orbitkit {

namespace {

constexpr Bipartition kTwoQubits{2, 2};
constexpr Complex kI(0.0, 1.0);
// Largest geodesic step for a unit-norm generator.
constexpr double kMaxStep = std::numbers::pi;
constexpr double kMinStep = 1e-12;
constexpr double kFiniteDifference = 1e-6;

void require_two_qubit_spectrum(const Spectrum& s, const char* who) {
  if (s.size() != 4) {
    std::ostringstream os;
    os << who << ": expected a length-4 spectrum, got " << s.size();
    throw InvalidInput(os.str());
  }
}

double inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a.conjugate().cwiseProduct(b)).sum().real();
}

// sigma_y (x) sigma_y
const ComplexMatrix& spin_flip() {
  static const ComplexMatrix y = [] {
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    m(0, 3) = -1.0;
    m(1, 2) = 1.0;
    m(2, 1) = 1.0;
    m(3, 0) = -1.0;
    return m;
  }();
  return y;
}

// Orthonormal (Frobenius) basis of 4x4 Hermitian matrices, and the
// finite-difference rotations exp(+-i eps G_k).
struct GeneratorBasis {
  std::vector<ComplexMatrix> generators;
  std::vector<ComplexMatrix> forward;
  std::vector<ComplexMatrix> backward;
};

ComplexMatrix exp_i_hermitian(const ComplexMatrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  const Eigen::VectorXcd phases = (kI * t * es.eigenvalues().cast<Complex>()).array().exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

const GeneratorBasis& generator_basis() {
  static const GeneratorBasis basis = [] {
    GeneratorBasis b;
    const int d = 4;
    const double r = 1.0 / std::numbers::sqrt2;
    for (int j = 0; j < d; ++j) {
      ComplexMatrix g = ComplexMatrix::Zero(d, d);
      g(j, j) = 1.0;
      b.generators.push_back(g);
      for (int k = j + 1; k < d; ++k) {
        ComplexMatrix sym = ComplexMatrix::Zero(d, d);
        sym(j, k) = r;
        sym(k, j) = r;
        ComplexMatrix asym = ComplexMatrix::Zero(d, d);
        asym(j, k) = kI * r;
        asym(k, j) = -kI * r;
        b.generators.push_back(sym);
        b.generators.push_back(asym);
      }
    }
    for (const auto& g : b.generators) {
      b.forward.push_back(exp_i_hermitian(g, kFiniteDifference));
      b.backward.push_back(exp_i_hermitian(g, -kFiniteDifference));
    }
    return b;
  }();
  return basis;
}

// Objective on the orbit, evaluated at the unitary U (state U diag U^dag).
// When `grad` is non-null it receives the Hermitian G with
// d/dt f(exp(i t H) U) = tr(H G) at t = 0.
using Objective = std::function<double(const ComplexMatrix& u, ComplexMatrix* grad)>;

ComplexMatrix orbit_state(const RealVector& lambda, const ComplexMatrix& u) {
  return u * lambda.cast<Complex>().asDiagonal() * u.adjoint();
}

// -min eig(PT_B(sigma)), with analytic gradient -i [sigma, PT_B(|w><w|)].
double negativity_surrogate(const RealVector& lambda, const ComplexMatrix& u,
                            ComplexMatrix* grad) {
  const ComplexMatrix sigma = orbit_state(lambda, u);
  const ComplexMatrix pt = partial_transpose(sigma, kTwoQubits, Subsystem::B);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(
      pt, grad ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (grad) {
    const Eigen::VectorXcd w = es.eigenvectors().col(0);
    const ComplexMatrix q =
        partial_transpose(w * w.adjoint(), kTwoQubits, Subsystem::B);
    *grad = -kI * (sigma * q - q * sigma);
  }
  return -es.eigenvalues()(0);
}

// s1 - s2 - s3 - s4 for the square roots s of the spin-flip spectrum.
double concurrence_surrogate(const RealVector& sqrt_lambda, const ComplexMatrix& u) {
  const ComplexMatrix root = orbit_state(sqrt_lambda, u);
  const ComplexMatrix sigma = root * root;
  const ComplexMatrix tilde = spin_flip() * sigma.conjugate() * spin_flip();
  ComplexMatrix m = root * tilde * root;
  m = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
  const RealVector s = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();  // ascending
  return s(3) - s(2) - s(1) - s(0);
}

Objective finite_difference_objective(std::function<double(const ComplexMatrix&)> f) {
  return [f = std::move(f)](const ComplexMatrix& u, ComplexMatrix* grad) {
    if (grad) {
      const auto& basis = generator_basis();
      grad->setZero(u.rows(), u.cols());
      for (std::size_t k = 0; k < basis.generators.size(); ++k) {
        const double up = f(basis.forward[k] * u);
        const double down = f(basis.backward[k] * u);
        *grad += ((up - down) / (2.0 * kFiniteDifference)) * basis.generators[k];
      }
    }
    return f(u);
  };
}

struct AscentResult {
  double value = 0.0;
  ComplexMatrix u;
  bool finished = false;  // stopped by the tolerance rather than max_iters
  std::vector<TracePoint> trace;
};

// Polak-Ribiere ascent along geodesics exp(i t H) U. Steps are accepted on
// function value alone; the gradient only proposes directions.
AscentResult ascend(const Objective& f, ComplexMatrix u, const OptimizerConfig& cfg) {
  AscentResult out;
  ComplexMatrix g;
  double value = f(u, &g);
  ComplexMatrix dir = g;
  bool steepest = true;
  double step = cfg.step_init;
  if (cfg.record_trace) out.trace.push_back({0, value});

  for (int it = 1; it <= cfg.max_iters; ++it) {
    const double gg = inner(g, g);
    if (gg < 1e-28) {
      out.finished = true;
      break;
    }
    if (inner(dir, g) <= 0.0) {
      dir = g;
      steepest = true;
    }
    const ComplexMatrix h = dir / dir.norm();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (h + h.adjoint()));
    const ComplexMatrix& vecs = es.eigenvectors();
    const Eigen::VectorXcd gen = es.eigenvalues().cast<Complex>();
    auto moved = [&](double t) -> ComplexMatrix {
      const Eigen::VectorXcd phases = (kI * t * gen).array().exp();
      return vecs * phases.asDiagonal() * vecs.adjoint() * u;
    };

    double t = std::min(step, kMaxStep);
    ComplexMatrix u_t = moved(t);
    double f_t = f(u_t, nullptr);
    if (f_t > value) {
      while (2.0 * t <= kMaxStep) {
        ComplexMatrix u2 = moved(2.0 * t);
        const double f2 = f(u2, nullptr);
        if (!(f2 > f_t)) break;
        t *= 2.0;
        f_t = f2;
        u_t = std::move(u2);
      }
    } else {
      while (t > kMinStep) {
        t *= 0.5;
        u_t = moved(t);
        f_t = f(u_t, nullptr);
        if (f_t > value) break;
      }
    }

    if (!(f_t > value)) {
      if (!steepest) {
        dir = g;
        steepest = true;
        continue;
      }
      out.finished = true;
      break;
    }

    const double improvement = f_t - value;
    const bool took_steepest = steepest;
    u = std::move(u_t);
    ComplexMatrix g_new;
    value = f(u, &g_new);
    const double beta = std::max(0.0, inner(g_new, g_new - g) / gg);
    dir = g_new + beta * dir;
    steepest = beta == 0.0;
    g = std::move(g_new);
    step = t;
    if (cfg.record_trace) out.trace.push_back({it, value});

    if (improvement < cfg.tol_value) {
      if (took_steepest) {
        out.finished = true;
        break;
      }
      dir = g;
      steepest = true;
    }
  }
  // Re-unitarize against rounding drift accumulated over many products.
  Eigen::HouseholderQR<ComplexMatrix> qr(u);
  ComplexMatrix q = qr.householderQ();
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    const Complex d = qr.matrixQR()(k, k);
    if (std::abs(d) > 0.0) q.col(k) *= d / std::abs(d);
  }
  out.u = std::move(q);
  out.value = f(out.u, nullptr);
  return out;
}

struct RestartSummary {
  std::size_t best = 0;
  bool converged = false;
};

std::vector<AscentResult> run_restarts(const Objective& f, const OptimizerConfig& cfg,
                                       const std::optional<UnitaryMatrix>& warm_start) {
  std::vector<AscentResult> results(static_cast<std::size_t>(cfg.restarts));
  parallel_for(results.size(), [&](std::size_t r) {
    ComplexMatrix start;
    if (r == 0 && warm_start) {
      start = warm_start->matrix();
    } else {
      RandomSource rng = cfg.seed.derive(r);
      start = haar_unitary(4, rng).matrix();
    }
    results[r] = ascend(f, std::move(start), cfg);
  });
  return results;
}

// Best by value with ties to the lowest restart index; converged when the
// best two clipped values agree within 10 tol_value.
RestartSummary summarize(const std::vector<AscentResult>& results, double tol_value) {
  RestartSummary out;
  for (std::size_t r = 1; r < results.size(); ++r)
    if (results[r].value > results[out.best].value) out.best = r;
  std::vector<double> clipped;
  for (const auto& res : results) clipped.push_back(std::max(0.0, res.value));
  std::sort(clipped.begin(), clipped.end(), std::greater<>());
  if (clipped.size() >= 2)
    out.converged = clipped[0] - clipped[1] <= 10.0 * tol_value;
  else
    out.converged = results[out.best].finished;
  return out;
}

}  // namespace

double negativity(const DensityMatrix& rho, Bipartition dims) {
  const RealVector mu =
      eigenvalues_hermitian(partial_transpose(rho.matrix(), dims, Subsystem::B));
  double total = 0.0;
  for (Eigen::Index i = 0; i < mu.size(); ++i)
    if (mu[i] < 0.0) total -= mu[i];
  return total;
}

double concurrence_2q(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw InvalidInput("concurrence_2q: expected a 4x4 state");
  const EigenDecomposition eig = eig_hermitian(rho.matrix());
  const RealVector root_values = eig.values.cwiseMax(0.0).cwiseSqrt();
  const ComplexMatrix& v = eig.vectors.matrix();
  const ComplexMatrix root = v * root_values.cast<Complex>().asDiagonal() * v.adjoint();
  const ComplexMatrix tilde = spin_flip() * rho.matrix().conjugate() * spin_flip();
  ComplexMatrix m = root * tilde * root;
  m = 0.5 * (m + m.adjoint());
  const RealVector s = eigenvalues_hermitian(m).cwiseMax(0.0).cwiseSqrt();  // descending
  return std::max(0.0, s(0) - s(1) - s(2) - s(3));
}

double max_concurrence_closed_form(const Spectrum& s) {
  require_two_qubit_spectrum(s, "max_concurrence_closed_form");
  return std::max(0.0, s[0] - s[2] - 2.0 * std::sqrt(s[1] * s[3]));
}

void OptimizerConfig::validate() const {
  if (restarts < 1) throw InvalidInput("optimizer: restarts must be >= 1");
  if (max_iters < 1) throw InvalidInput("optimizer: max_iters must be >= 1");
  if (!(step_init > 0.0)) throw InvalidInput("optimizer: step_init must be > 0");
  if (!(tol_value > 0.0)) throw InvalidInput("optimizer: tol_value must be > 0");
}

NegativityReport max_negativity_orbit(const Spectrum& s, const OptimizerConfig& cfg,
                                      const std::optional<UnitaryMatrix>& warm_start) {
  require_two_qubit_spectrum(s, "max_negativity_orbit");
  cfg.validate();
  if (warm_start && warm_start->dim() != 4)
    throw InvalidInput("max_negativity_orbit: warm start must be 4x4");
  const RealVector lambda = s.as_vector();
  const Objective f = [&lambda](const ComplexMatrix& u, ComplexMatrix* grad) {
    return negativity_surrogate(lambda, u, grad);
  };
  auto results = run_restarts(f, cfg, warm_start);
  const RestartSummary summary = summarize(results, cfg.tol_value);
  AscentResult& best = results[summary.best];

  NegativityReport report;
  report.best_unitary = UnitaryMatrix(best.u);
  const DensityMatrix state = DensityMatrix(orbit_state(lambda, best.u), 1e-8);
  report.best_negativity = negativity(state, kTwoQubits);
  report.restarts_used = cfg.restarts;
  report.converged = summary.converged;
  report.trace = std::move(best.trace);
  return report;
}

ConcurrenceReport max_concurrence_orbit(const Spectrum& s, const OptimizerConfig& cfg) {
  require_two_qubit_spectrum(s, "max_concurrence_orbit");
  cfg.validate();
  const RealVector sqrt_lambda = s.as_vector().cwiseSqrt();
  const Objective f = finite_difference_objective(
      [&sqrt_lambda](const ComplexMatrix& u) { return concurrence_surrogate(sqrt_lambda, u); });
  const auto results = run_restarts(f, cfg, std::nullopt);
  const RestartSummary summary = summarize(results, cfg.tol_value);
  const AscentResult& best = results[summary.best];

  ConcurrenceReport report;
  report.best_unitary = UnitaryMatrix(best.u);
  report.best_concurrence =
      concurrence_2q(DensityMatrix(orbit_state(s.as_vector(), best.u), 1e-8));
  report.restarts_used = cfg.restarts;
  report.converged = summary.converged;
  return report;
}

Crossing negativity_crossing(const OrbitCoords& from, const OrbitCoords& to, double level,
                             const OptimizerConfig& cfg, const LevelSetConfig& ls) {
  if (!(level >= 0.0 && level <= 0.5))
    throw InvalidInput("negativity_crossing: level must lie in [0, 1/2]");
  if (ls.coarse_samples < 2) throw InvalidInput("negativity_crossing: coarse_samples < 2");
  if (chamber_violation(from) || chamber_violation(to))
    throw ChamberError("negativity_crossing: segment end point outside the chamber");
  cfg.validate();

  const double threshold = level > 0.0 ? level - ls.level_tolerance : ls.level_tolerance;
  const double length = std::hypot(to.x - from.x, to.y - from.y, to.z - from.z);
  std::optional<UnitaryMatrix> warm;
  std::uint64_t evaluations = 0;
  auto reached = [&](double t) {
    const OrbitCoords c{std::lerp(from.x, to.x, t), std::lerp(from.y, to.y, t),
                        std::lerp(from.z, to.z, t)};
    OptimizerConfig local = cfg;
    local.seed = cfg.seed.derive(evaluations++);
    local.record_trace = false;
    const NegativityReport rep = max_negativity_orbit(inverse_coords_d4(c), local, warm);
    warm = rep.best_unitary;
    return level > 0.0 ? rep.best_negativity >= threshold : rep.best_negativity > threshold;
  };

  Crossing out;
  if (length < 1e-12) {
    if (reached(0.0)) out.t = 0.0;
    return out;
  }
  const int k = ls.coarse_samples;
  int first = -1;
  for (int i = 0; i < k; ++i) {
    const bool hit = reached(static_cast<double>(i) / (k - 1));
    if (hit && first < 0) first = i;
    if (!hit && first >= 0) out.monotone = false;
  }
  if (first < 0) return out;
  if (first == 0) {
    out.t = 0.0;
    return out;
  }
  double lo = static_cast<double>(first - 1) / (k - 1);
  double hi = static_cast<double>(first) / (k - 1);
  while ((hi - lo) * length > ls.z_tolerance) {
    const double mid = 0.5 * (lo + hi);
    (reached(mid) ? hi : lo) = mid;
  }
  out.t = hi;
  return out;
}

std::vector<SurfaceSample> equi_negativity_surface(double level, const GridSpec& grid,
                                                   const OptimizerConfig& cfg,
                                                   const LevelSetConfig& ls) {
  grid.validate();
  if (!(level >= 0.0 && level <= 0.5))
    throw InvalidInput("equi_negativity_surface: level must lie in [0, 1/2]");
  cfg.validate();
  constexpr double kSlack = 1e-12;
  const std::size_t n = static_cast<std::size_t>(grid.nx) * grid.ny;
  std::vector<SurfaceSample> out(n);
  // Inner optimizer runs stay serial; the grid is the parallel unit.
  parallel_for(n, [&](std::size_t idx) {
    const int i = static_cast<int>(idx % grid.nx);
    const int j = static_cast<int>(idx / grid.nx);
    SurfaceSample& sample = out[idx];
    sample.x = grid.x_at(i);
    sample.y = grid.y_at(j);
    const double floor_z = sample.y / std::numbers::sqrt2;
    if (sample.x < -kSlack || sample.y < sample.x / std::numbers::sqrt3 - kSlack ||
        floor_z > 1.0 / 3.0 + kSlack)
      return;
    const OrbitCoords from{sample.x, sample.y, std::min(floor_z, 1.0 / 3.0)};
    const OrbitCoords to{sample.x, sample.y, 1.0 / 3.0};
    OptimizerConfig local = cfg;
    local.seed = cfg.seed.derive(idx);
    const Crossing crossing = negativity_crossing(from, to, level, local, ls);
    sample.monotone = crossing.monotone;
    if (crossing.t) {
      const double z = std::lerp(from.z, to.z, *crossing.t);
      sample.z = z;
      sample.spectrum = inverse_coords_d4({sample.x, sample.y, z});
    }
  });
  return out;
}

}  // namespace orbitkit
