#include "orbitkit/product_orbits.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>
#include <utility>

namespace orbitkit {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kSqrt3 = std::numbers::sqrt3;
// Acceptance floor for the factorization residual; pure states give exact
// zeros that only survive rounding at this level.
constexpr double kResidualFloor = 1e-12;

int checked_product(const std::vector<int>& dims, const char* who) {
  if (dims.empty()) throw InvalidInput(std::string(who) + ": no subsystem dimensions");
  long long total = 1;
  for (int d : dims) {
    if (d < 1) throw InvalidInput(std::string(who) + ": subsystem dimension < 1");
    total *= d;
    if (total > kMaxCompositeDim) {
      std::ostringstream os;
      os << who << ": composite dimension exceeds capacity " << kMaxCompositeDim;
      throw CapacityExceeded(os.str());
    }
  }
  return static_cast<int>(total);
}

// Calls `visit(grid)` for every filling of a rows x cols grid with the
// sorted entries of `s` that is non-increasing along rows and columns.
void for_each_tableau(const Spectrum& s, int rows, int cols,
                      const std::function<void(const RealMatrix&)>& visit) {
  RealMatrix grid(rows, cols);
  std::vector<int> row_len(static_cast<std::size_t>(rows), 0);
  const int n = rows * cols;
  std::function<void(int)> place = [&](int label) {
    if (label == n) {
      visit(grid);
      return;
    }
    for (int r = 0; r < rows; ++r) {
      const int c = row_len[r];
      if (c >= cols) continue;
      if (r > 0 && row_len[r - 1] <= c) continue;
      grid(r, c) = s[static_cast<std::size_t>(label)];
      ++row_len[r];
      place(label + 1);
      --row_len[r];
    }
  };
  place(0);
}

struct BipartiteCandidate {
  Spectrum a;
  Spectrum b;
  double residual;
};

double sorted_residual(const std::vector<Spectrum>& marginals, const Spectrum& s) {
  return max_abs_difference(sorted_outer_product(marginals), s);
}

// Every grid assignment whose row/column-sum marginals reproduce `s` within
// tol, ordered by residual.
std::vector<BipartiteCandidate> bipartite_candidates(const Spectrum& s, int dim_a,
                                                     int dim_b, double tol) {
  std::vector<BipartiteCandidate> out;
  const double accept = std::max(tol, kResidualFloor);
  for_each_tableau(s, dim_a, dim_b, [&](const RealMatrix& grid) {
    const RealVector a = grid.rowwise().sum();
    const RealVector b = grid.colwise().sum().transpose();
    const double grid_residual = (grid - a * b.transpose()).cwiseAbs().maxCoeff();
    if (grid_residual > accept) return;
    Spectrum ma = Spectrum::normalized({a.data(), a.data() + a.size()});
    Spectrum mb = Spectrum::normalized({b.data(), b.data() + b.size()});
    const double residual = sorted_residual({ma, mb}, s);
    if (residual > accept) return;
    out.push_back({std::move(ma), std::move(mb), residual});
  });
  std::stable_sort(out.begin(), out.end(), [](const auto& l, const auto& r) {
    return l.residual < r.residual;
  });
  return out;
}

std::optional<std::vector<Spectrum>> factor_recursive(const Spectrum& s,
                                                      std::span<const int> dims,
                                                      double tol) {
  if (dims.size() == 1) return std::vector<Spectrum>{s};
  const int head = dims.front();
  const int rest = std::accumulate(dims.begin() + 1, dims.end(), 1, std::multiplies<>());
  std::optional<std::vector<Spectrum>> best;
  double best_residual = 0.0;
  for (const auto& cand : bipartite_candidates(s, head, rest, tol)) {
    auto tail = factor_recursive(cand.b, dims.subspan(1), tol);
    if (!tail) continue;
    std::vector<Spectrum> all{cand.a};
    all.insert(all.end(), tail->begin(), tail->end());
    const double residual = sorted_residual(all, s);
    if (residual > std::max(tol, kResidualFloor)) continue;
    if (!best || residual < best_residual) {
      best = std::move(all);
      best_residual = residual;
    }
  }
  return best;
}

}  // namespace

GridSpec GridSpec::tetrahedron_shadow(int nx, int ny) {
  return {0.0, std::sqrt(6.0) / 3.0, 0.0, kSqrt2 / 3.0, nx, ny};
}

void GridSpec::validate() const {
  if (nx < 2 || ny < 2) throw InvalidInput("grid: nx and ny must be >= 2");
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !std::isfinite(y_min) ||
      !std::isfinite(y_max) || !(x_max > x_min) || !(y_max > y_min))
    throw InvalidInput("grid: degenerate or non-finite range");
}

double GridSpec::x_at(int i) const {
  return std::lerp(x_min, x_max, static_cast<double>(i) / (nx - 1));
}

double GridSpec::y_at(int j) const {
  return std::lerp(y_min, y_max, static_cast<double>(j) / (ny - 1));
}

Spectrum sorted_outer_product(const std::vector<Spectrum>& marginals) {
  if (marginals.empty()) throw InvalidInput("sorted_outer_product: no marginals");
  std::vector<double> acc{1.0};
  for (const auto& m : marginals) {
    std::vector<double> next;
    next.reserve(acc.size() * m.size());
    for (double p : acc)
      for (double q : m.entries()) next.push_back(p * q);
    acc = std::move(next);
  }
  return Spectrum::normalized(std::move(acc));
}

std::optional<Factorization> factor_bipartite(const Spectrum& s, int dim_a, int dim_b,
                                              double tol) {
  const int n = checked_product({dim_a, dim_b}, "factor_bipartite");
  if (static_cast<int>(s.size()) != n) {
    std::ostringstream os;
    os << "factor_bipartite: spectrum length " << s.size() << " != " << dim_a << "*"
       << dim_b;
    throw InvalidInput(os.str());
  }
  auto cands = bipartite_candidates(s, dim_a, dim_b, tol);
  if (cands.empty()) return std::nullopt;
  auto& best = cands.front();
  return Factorization{{std::move(best.a), std::move(best.b)}, best.residual};
}

std::optional<Factorization> factor_multipartite(const Spectrum& s,
                                                 const std::vector<int>& dims,
                                                 double tol) {
  const int n = checked_product(dims, "factor_multipartite");
  if (static_cast<int>(s.size()) != n) {
    std::ostringstream os;
    os << "factor_multipartite: spectrum length " << s.size()
       << " != product of dims " << n;
    throw InvalidInput(os.str());
  }
  auto marginals = factor_recursive(s, dims, tol);
  if (!marginals) return std::nullopt;
  const double residual = sorted_residual(*marginals, s);
  return Factorization{std::move(*marginals), residual};
}

double product_constraint(double x, double y, double z) {
  return z * z + z + (z - 1.0) * (kSqrt3 * x + y) / kSqrt2 + kSqrt3 * x * y - y * y;
}

std::optional<double> product_surface_z(double x, double y) {
  // z^2 + B z + C = 0
  const double b = 1.0 + (kSqrt3 * x + y) / kSqrt2;
  const double c = -(kSqrt3 * x + y) / kSqrt2 + kSqrt3 * x * y - y * y;
  double disc = b * b - 4.0 * c;
  if (disc < 0.0) {
    if (disc < -1e-12) return std::nullopt;
    disc = 0.0;
  }
  const double root = std::sqrt(disc);
  // Larger root, written to avoid cancellation when b > 0.
  const double z = b + root != 0.0 ? -2.0 * c / (b + root) : 0.5 * (-b + root);
  const OrbitCoords coords{x, y, z};
  if (chamber_violation(coords)) return std::nullopt;
  try {
    (void)inverse_coords_d4(coords);
  } catch (const InvalidInput&) {
    return std::nullopt;
  }
  return z;
}

std::vector<SurfaceSample> sample_product_surface(const GridSpec& grid) {
  grid.validate();
  std::vector<SurfaceSample> out;
  out.reserve(static_cast<std::size_t>(grid.nx) * grid.ny);
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      SurfaceSample sample{grid.x_at(i), grid.y_at(j), std::nullopt, std::nullopt};
      if (auto z = product_surface_z(sample.x, sample.y)) {
        sample.z = *z;
        sample.spectrum = inverse_coords_d4({sample.x, sample.y, *z});
      }
      out.push_back(std::move(sample));
    }
  }
  return out;
}

DimensionReport product_orbit_dims(const std::vector<int>& dims) {
  if (dims.empty()) throw InvalidInput("product_orbit_dims: no subsystem dimensions");
  DimensionReport report{dims, 0, 1};
  for (int d : dims) {
    if (d < 2) throw InvalidInput("product_orbit_dims: every subsystem needs dim >= 2");
    report.product_orbit_dim += d - 1;
    report.ambient_dim *= d;
  }
  report.ambient_dim -= 1;
  return report;
}

RealMatrix product_spectrum_jacobian(const std::vector<Spectrum>& marginals) {
  if (marginals.empty()) throw InvalidInput("product_spectrum_jacobian: no marginals");
  std::vector<int> dims;
  int rows = 1;
  int cols = 0;
  for (const auto& m : marginals) {
    dims.push_back(static_cast<int>(m.size()));
    rows *= dims.back();
    cols += dims.back() - 1;
  }
  RealMatrix jac = RealMatrix::Zero(rows, cols);
  std::vector<int> index(dims.size(), 0);
  for (int row = 0; row < rows; ++row) {
    // Row-major multi-index of `row`.
    for (int k = static_cast<int>(dims.size()) - 1, rem = row; k >= 0; --k) {
      index[k] = rem % dims[k];
      rem /= dims[k];
    }
    int col = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
      double others = 1.0;
      for (std::size_t l = 0; l < dims.size(); ++l)
        if (l != k) others *= marginals[l][static_cast<std::size_t>(index[l])];
      const int last = dims[k] - 1;
      for (int m = 0; m < last; ++m) {
        double d = 0.0;
        if (index[k] == m) d += 1.0;
        if (index[k] == last) d -= 1.0;
        jac(row, col + m) = d * others;
      }
      col += last;
    }
  }
  return jac;
}

int numerical_rank(const RealMatrix& m, double rel_threshold) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<RealMatrix> svd(m);
  const RealVector& sv = svd.singularValues();
  const double top = sv.size() ? sv.maxCoeff() : 0.0;
  if (top <= 0.0) return 0;
  return static_cast<int>((sv.array() > rel_threshold * top).count());
}

int estimate_dimension(const std::vector<int>& dims, RandomSource& rng, int trials) {
  checked_product(dims, "estimate_dimension");
  if (trials < 1) throw InvalidInput("estimate_dimension: trials must be >= 1");
  std::map<int, int> histogram;
  for (int t = 0; t < trials; ++t) {
    std::vector<Spectrum> marginals;
    for (int d : dims) marginals.push_back(random_spectrum(d, rng));
    ++histogram[numerical_rank(product_spectrum_jacobian(marginals))];
  }
  // Mode; ties go to the smaller rank.
  auto best = histogram.begin();
  for (auto it = histogram.begin(); it != histogram.end(); ++it)
    if (it->second > best->second) best = it;
  return best->first;
}

std::vector<EdgeIncidence> product_surface_edge_incidence(int samples, double tol) {
  const std::pair<const char*, OrbitCoords> vertices[] = {
      {"O", tetrahedron::mixed()},
      {"M3", tetrahedron::three_equal()},
      {"M2", tetrahedron::two_equal()},
      {"P", tetrahedron::pure()}};
  std::vector<EdgeIncidence> out;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const auto& [na, a] = vertices[i];
      const auto& [nb, b] = vertices[j];
      bool all = true;
      for (int k = 1; k <= samples && all; ++k) {
        const double t = static_cast<double>(k) / (samples + 1);
        const OrbitCoords c{std::lerp(a.x, b.x, t), std::lerp(a.y, b.y, t),
                            std::lerp(a.z, b.z, t)};
        all = factor_bipartite(inverse_coords_d4(c), 2, 2, tol).has_value();
      }
      out.push_back({std::string(na) + "-" + nb, all});
    }
  }
  return out;
}

}  // namespace orbitkit
