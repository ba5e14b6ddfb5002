#include "cli.hpp"

#include "orbitkit/classical.hpp"
#include "orbitkit/core.hpp"
#include "orbitkit/entanglement.hpp"
#include "orbitkit/orbits.hpp"
#include "orbitkit/product_orbits.hpp"
#include "orbitkit/random.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace orbitkit::cli {

namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

// Command-line spectra may be off the simplex by this much and still be
// accepted (then renormalized).
constexpr double kInputSimplexTolerance = 1e-6;
// Constraint residual accepted by verify-surface.
constexpr double kSurfaceResidualTolerance = 1e-9;

class Manifest {
 public:
  Manifest(std::string command, json parameters, std::uint64_t seed, bool timing)
      : command_(std::move(command)),
        parameters_(std::move(parameters)),
        seed_(seed),
        timing_(timing),
        start_(Clock::now()) {}

  // elapsed_ms is pinned to 0 unless --timing was given, so documents stay
  // byte-identical across runs.
  json to_json() const {
    std::int64_t elapsed = 0;
    if (timing_)
      elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start_)
                    .count();
    return {{"command", command_},
            {"parameters", parameters_},
            {"seed", seed_},
            {"tool_version", kToolVersion},
            {"elapsed_ms", elapsed}};
  }

 private:
  std::string command_;
  json parameters_;
  std::uint64_t seed_;
  bool timing_;
  Clock::time_point start_;
};

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // no "-0" in output
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json matrix_json(const ComplexMatrix& m) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json re_row = json::array();
    json im_row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      re_row.push_back(m(i, j).real());
      im_row.push_back(m(i, j).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return {{"re", std::move(re)}, {"im", std::move(im)}};
}

json real_matrix_json(const RealMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json spectrum_json(const Spectrum& s) { return s.values(); }

Spectrum parse_spectrum(const std::vector<double>& values, std::ostream& err) {
  double total = 0.0;
  for (double v : values) {
    if (!std::isfinite(v) || v < -kSpectrumTolerance) {
      std::ostringstream os;
      os << "spectrum entry " << v << " is negative or not finite";
      throw InvalidInput(os.str());
    }
    total += v;
  }
  if (std::abs(total - 1.0) > kInputSimplexTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "spectrum sums to " << total << ", not 1 within " << std::setprecision(6)
       << kInputSimplexTolerance;
    throw InvalidInput(os.str());
  }
  const bool sorted = std::is_sorted(values.rbegin(), values.rend());
  if (!sorted || std::abs(total - 1.0) > kSpectrumTolerance)
    err << "warning: spectrum sorted descending and renormalized\n";
  return Spectrum::normalized(values);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, sep)) fields.push_back(field);
  if (!line.empty() && line.back() == sep) fields.emplace_back();
  return fields;
}

double parse_number(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InvalidInput(std::string("malformed ") + what + ": '" + s + "'");
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoFailure("cannot open '" + path + "' for writing");
  os << content;
  os.flush();
  if (!os) throw IoFailure("failed writing '" + path + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoFailure("cannot open '" + path + "' for reading");
  std::ostringstream os;
  os << is.rdbuf();
  if (is.bad()) throw IoFailure("failed reading '" + path + "'");
  return os.str();
}

DensityMatrix state_from_json(const json& doc, Bipartition& dims) {
  try {
    const auto d = doc.at("dims").get<std::vector<int>>();
    if (d.size() != 2) throw InvalidInput("state file: dims must have two entries");
    dims = {d[0], d[1]};
    const auto re = doc.at("re").get<std::vector<std::vector<double>>>();
    std::vector<std::vector<double>> im;
    if (doc.contains("im")) im = doc.at("im").get<std::vector<std::vector<double>>>();
    const auto n = static_cast<Eigen::Index>(re.size());
    if (n == 0 || n != dims.total())
      throw InvalidInput("state file: matrix size does not match dims");
    if (!im.empty() && static_cast<Eigen::Index>(im.size()) != n)
      throw InvalidInput("state file: re and im sizes differ");
    ComplexMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (static_cast<Eigen::Index>(re[i].size()) != n ||
          (!im.empty() && static_cast<Eigen::Index>(im[i].size()) != n))
        throw InvalidInput("state file: matrix is not square");
      for (Eigen::Index j = 0; j < n; ++j)
        m(i, j) = Complex(re[i][j], im.empty() ? 0.0 : im[i][j]);
    }
    return DensityMatrix(std::move(m));
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("state file: ") + e.what());
  }
}

// ---------------------------------------------------------------------------

json cmd_coords(const std::vector<double>& values, bool timing, std::ostream& err) {
  Manifest manifest("coords", {{"spectrum", values}}, 0, timing);
  if (values.size() != 4) throw InvalidInput("coords: expected exactly 4 values");
  const Spectrum s = parse_spectrum(values, err);
  const OrbitCoords c = coords_d4(s);
  return {{"manifest", manifest.to_json()},
          {"spectrum", spectrum_json(s)},
          {"x", c.x},
          {"y", c.y},
          {"z", c.z},
          {"chamber_ok", !chamber_violation(c).has_value()}};
}

json cmd_product_test(const std::vector<double>& values, const std::vector<int>& dims,
                      double tol, bool timing, std::ostream& err) {
  Manifest manifest("product-test", {{"spectrum", values}, {"dims", dims}, {"tol", tol}}, 0,
                    timing);
  if (dims.size() < 2) throw InvalidInput("product-test: --dims needs at least two entries");
  // Capacity before length so an oversized request reports exit 3.
  long long total = 1;
  for (int d : dims) {
    if (d < 1) throw InvalidInput("product-test: dims must be positive");
    total *= d;
    if (total > kMaxCompositeDim)
      throw CapacityExceeded("product-test: composite dimension exceeds " +
                             std::to_string(kMaxCompositeDim));
  }
  if (static_cast<long long>(values.size()) != total)
    throw InvalidInput("product-test: spectrum length does not match dims");
  const Spectrum s = parse_spectrum(values, err);
  const auto f = dims.size() == 2 ? factor_bipartite(s, dims[0], dims[1], tol)
                                  : factor_multipartite(s, dims, tol);
  json doc{{"manifest", manifest.to_json()}, {"factorable", f.has_value()}};
  if (f) {
    json marginals = json::array();
    for (const auto& m : f->marginals) marginals.push_back(spectrum_json(m));
    doc["marginals"] = std::move(marginals);
    doc["residual"] = f->residual;
  } else {
    doc["residual"] = nullptr;
  }
  return doc;
}

struct SurfaceOptions {
  std::string kind = "product";
  double level = 0.0;
  std::vector<int> grid{21, 21};
  std::string out;
  std::vector<double> x_range;
  std::vector<double> y_range;
  int restarts = 16;
  int max_iters = 500;
  std::uint64_t seed = 0;
};

json cmd_surface(const SurfaceOptions& o, bool timing) {
  json params{{"kind", o.kind}, {"grid", o.grid}, {"out", o.out}};
  if (o.kind == "negativity") {
    params["level"] = o.level;
    params["restarts"] = o.restarts;
    params["max_iters"] = o.max_iters;
  }
  if (!o.x_range.empty()) params["x_range"] = o.x_range;
  if (!o.y_range.empty()) params["y_range"] = o.y_range;
  Manifest manifest("surface", params, o.seed, timing);

  if (o.grid.size() != 2) throw InvalidInput("surface: --grid expects nx,ny");
  GridSpec grid = GridSpec::tetrahedron_shadow(o.grid[0], o.grid[1]);
  if (!o.x_range.empty()) {
    if (o.x_range.size() != 2) throw InvalidInput("surface: --x-range expects min,max");
    grid.x_min = o.x_range[0];
    grid.x_max = o.x_range[1];
  }
  if (!o.y_range.empty()) {
    if (o.y_range.size() != 2) throw InvalidInput("surface: --y-range expects min,max");
    grid.y_min = o.y_range[0];
    grid.y_max = o.y_range[1];
  }
  grid.validate();

  std::vector<SurfaceSample> samples;
  if (o.kind == "product") {
    samples = sample_product_surface(grid);
  } else if (o.kind == "negativity") {
    OptimizerConfig cfg;
    cfg.restarts = o.restarts;
    cfg.max_iters = o.max_iters;
    cfg.seed = RandomSource(o.seed);
    samples = equi_negativity_surface(o.level, grid, cfg);
  } else {
    throw InvalidInput("surface: --kind must be product or negativity");
  }

  std::ostringstream csv;
  csv << "# manifest: " << manifest.to_json().dump() << "\n";
  csv << "x,y,z,present\n";
  int present = 0;
  int non_monotone = 0;
  for (const auto& s : samples) {
    csv << format_double(s.x) << ',' << format_double(s.y) << ',';
    if (s.z) {
      csv << format_double(*s.z) << ",1\n";
      ++present;
    } else {
      csv << ",0\n";
    }
    if (!s.monotone) ++non_monotone;
  }
  write_file(o.out, csv.str());
  return {{"manifest", manifest.to_json()},
          {"out", o.out},
          {"rows", samples.size()},
          {"present", present},
          {"monotonicity_violations", non_monotone}};
}

json cmd_verify_surface(const std::string& path, bool timing) {
  Manifest manifest("verify-surface", {{"path", path}}, 0, timing);
  std::istringstream is(read_file(path));
  std::string line;
  bool header_seen = false;
  int rows = 0;
  int present = 0;
  int outside = 0;
  double max_residual = 0.0;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != "x,y,z,present") throw InvalidInput("verify-surface: unexpected header");
      header_seen = true;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 4) throw InvalidInput("verify-surface: row " + std::to_string(rows + 1) +
                                          " does not have 4 fields");
    ++rows;
    if (f[3] == "0") {
      if (!f[2].empty()) throw InvalidInput("verify-surface: absent row carries a z value");
      continue;
    }
    if (f[3] != "1") throw InvalidInput("verify-surface: present must be 0 or 1");
    const double x = parse_number(f[0], "x");
    const double y = parse_number(f[1], "y");
    const double z = parse_number(f[2], "z");
    ++present;
    max_residual = std::max(max_residual, std::abs(product_constraint(x, y, z)));
    if (chamber_violation({x, y, z})) ++outside;
  }
  if (!header_seen) throw InvalidInput("verify-surface: missing header");
  return {{"manifest", manifest.to_json()},
          {"rows", rows},
          {"present", present},
          {"max_residual", max_residual},
          {"outside_chamber", outside},
          {"ok", max_residual <= kSurfaceResidualTolerance && outside == 0}};
}

struct ClassicalizeOptions {
  std::string state_path;
  std::vector<int> random_dims;
  std::uint64_t seed = 0;
  bool rotate_local = false;
};

json cmd_classicalize(const ClassicalizeOptions& o, bool timing) {
  json params{{"rotate_local", o.rotate_local}};
  if (!o.state_path.empty()) params["state"] = o.state_path;
  if (!o.random_dims.empty()) params["random"] = o.random_dims;
  Manifest manifest("classicalize", params, o.seed, timing);

  Bipartition dims;
  std::optional<DensityMatrix> rho;
  if (!o.state_path.empty()) {
    json doc;
    try {
      doc = json::parse(read_file(o.state_path));
    } catch (const json::parse_error& e) {
      throw InvalidInput(std::string("state file: ") + e.what());
    }
    rho = state_from_json(doc, dims);
  } else if (o.random_dims.size() == 2) {
    dims = {o.random_dims[0], o.random_dims[1]};
    if (dims.dim_a < 1 || dims.dim_b < 1)
      throw InvalidInput("classicalize: --random dims must be positive");
    RandomSource rng(o.seed, 0);
    rho = random_density(dims.total(), rng);
  } else {
    throw InvalidInput("classicalize: give --state PATH or --random dA,dB");
  }

  RandomSource local_rng(o.seed, 1);
  const ClassicalizationResult res =
      classicalize(*rho, dims, o.rotate_local ? &local_rng : nullptr);
  const double check =
      max_abs_difference(spectrum_of(*rho), spectrum_of(res.classical_state));
  return {{"manifest", manifest.to_json()},
          {"dims", {dims.dim_a, dims.dim_b}},
          {"rho_cl", matrix_json(res.classical_state.matrix())},
          {"W", matrix_json(res.w.matrix())},
          {"U_cd", matrix_json(res.u_cd.matrix())},
          {"weights", std::vector<double>(res.factorization.weights.data(),
                                          res.factorization.weights.data() +
                                              res.factorization.weights.size())},
          {"conditionals", real_matrix_json(res.factorization.conditionals)},
          {"spectrum_check", check}};
}

struct NegativityOptions {
  std::vector<double> values;
  int restarts = 16;
  int max_iters = 500;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  bool trace = false;
};

json cmd_max_negativity(const NegativityOptions& o, bool timing, std::ostream& err) {
  Manifest manifest("max-negativity",
                    {{"spectrum", o.values},
                     {"restarts", o.restarts},
                     {"max_iters", o.max_iters},
                     {"tol", o.tol}},
                    o.seed, timing);
  if (o.values.size() != 4) throw InvalidInput("max-negativity: expected exactly 4 values");
  const Spectrum s = parse_spectrum(o.values, err);
  OptimizerConfig cfg;
  cfg.restarts = o.restarts;
  cfg.max_iters = o.max_iters;
  cfg.tol_value = o.tol;
  cfg.seed = RandomSource(o.seed);
  cfg.record_trace = o.trace;
  const NegativityReport rep = max_negativity_orbit(s, cfg);
  json doc{{"manifest", manifest.to_json()},
           {"spectrum", spectrum_json(s)},
           {"best_negativity", rep.best_negativity},
           {"best_unitary", matrix_json(rep.best_unitary.matrix())},
           {"restarts_used", rep.restarts_used},
           {"converged", rep.converged}};
  if (o.trace) {
    json trace = json::array();
    for (const auto& p : rep.trace) trace.push_back({p.iteration, p.value});
    doc["trace_of_iterations"] = std::move(trace);
  }
  return doc;
}

json cmd_dims(const std::vector<int>& dims, bool estimate, int trials, std::uint64_t seed,
              bool timing) {
  json params{{"dims", dims}, {"estimate", estimate}};
  if (estimate) params["trials"] = trials;
  Manifest manifest("dims", params, seed, timing);
  const DimensionReport r = product_orbit_dims(dims);
  json doc{{"manifest", manifest.to_json()},
           {"subsystem_dims", r.subsystem_dims},
           {"product_orbit_dim", r.product_orbit_dim},
           {"ambient_dim", r.ambient_dim}};
  if (estimate) {
    RandomSource rng(seed);
    doc["estimated_rank"] = estimate_dimension(dims, rng, trials);
  }
  return doc;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geometry of unitary orbits of density matrices", "orbitkit"};
  app.require_subcommand(1);
  bool timing = false;
  app.add_flag("--timing", timing, "Record wall-clock time in the manifest");

  auto* coords = app.add_subcommand("coords", "Tetrahedron coordinates of a 4-level spectrum");
  std::vector<double> coords_values;
  coords->add_option("spectrum", coords_values, "Four eigenvalues")->required();

  auto* product = app.add_subcommand("product-test", "Does the orbit contain product states?");
  std::vector<double> product_values;
  std::vector<int> product_dims;
  double product_tol = 1e-9;
  product->add_option("spectrum", product_values, "Composite eigenvalues")->required();
  product->add_option("--dims", product_dims, "Subsystem dimensions, e.g. 2,2")
      ->required()
      ->delimiter(',');
  product->add_option("--tol", product_tol, "Max-abs factorization residual");

  auto* surface = app.add_subcommand("surface", "Sample a surface in the tetrahedron to CSV");
  SurfaceOptions surface_opts;
  surface->add_option("--kind", surface_opts.kind, "product or negativity")
      ->check(CLI::IsMember({"product", "negativity"}));
  surface->add_option("--level", surface_opts.level, "Negativity level in [0, 1/2]");
  surface->add_option("--grid", surface_opts.grid, "nx,ny")->delimiter(',');
  surface->add_option("--out", surface_opts.out, "Output CSV path")->required();
  surface->add_option("--x-range", surface_opts.x_range, "xmin,xmax")->delimiter(',');
  surface->add_option("--y-range", surface_opts.y_range, "ymin,ymax")->delimiter(',');
  surface->add_option("--restarts", surface_opts.restarts, "Optimizer restarts");
  surface->add_option("--max-iters", surface_opts.max_iters, "Optimizer iterations");
  surface->add_option("--seed", surface_opts.seed, "Random seed");

  auto* verify = app.add_subcommand("verify-surface",
                                    "Recheck product-surface CSV rows against the constraint");
  std::string verify_path;
  verify->add_option("path", verify_path, "CSV written by surface --kind product")->required();

  auto* classical = app.add_subcommand("classicalize",
                                       "Classically correlated state on a state's orbit");
  ClassicalizeOptions classical_opts;
  auto* state_opt =
      classical->add_option("--state", classical_opts.state_path, "State JSON file");
  auto* random_opt = classical->add_option("--random", classical_opts.random_dims, "dA,dB")
                         ->delimiter(',');
  state_opt->excludes(random_opt);
  classical->add_option("--seed", classical_opts.seed, "Random seed");
  classical->add_flag("--rotate-local", classical_opts.rotate_local,
                      "Haar-random local unitaries in the control-unitary");

  auto* negativity_cmd =
      app.add_subcommand("max-negativity", "Maximal negativity over a two-qubit orbit");
  NegativityOptions neg_opts;
  negativity_cmd->add_option("spectrum", neg_opts.values, "Four eigenvalues")->required();
  negativity_cmd->add_option("--restarts", neg_opts.restarts, "Optimizer restarts");
  negativity_cmd->add_option("--max-iters", neg_opts.max_iters, "Iterations per restart");
  negativity_cmd->add_option("--tol", neg_opts.tol, "Stop when improvement falls below");
  negativity_cmd->add_option("--seed", neg_opts.seed, "Random seed");
  negativity_cmd->add_flag("--trace", neg_opts.trace, "Include the ascent history");

  auto* dims_cmd = app.add_subcommand("dims", "Product-orbit and orbit-space dimensions");
  std::vector<int> dims_list;
  bool dims_estimate = false;
  int dims_trials = 20;
  std::uint64_t dims_seed = 0;
  dims_cmd->add_option("--dims", dims_list, "Subsystem dimensions")
      ->required()
      ->delimiter(',');
  dims_cmd->add_flag("--estimate", dims_estimate, "Also estimate the rank numerically");
  dims_cmd->add_option("--trials", dims_trials, "Random evaluation points");
  dims_cmd->add_option("--seed", dims_seed, "Random seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kSuccess;
    }
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }

  try {
    json doc;
    if (*coords) {
      doc = cmd_coords(coords_values, timing, err);
    } else if (*product) {
      doc = cmd_product_test(product_values, product_dims, product_tol, timing, err);
    } else if (*surface) {
      doc = cmd_surface(surface_opts, timing);
    } else if (*verify) {
      doc = cmd_verify_surface(verify_path, timing);
    } else if (*classical) {
      doc = cmd_classicalize(classical_opts, timing);
    } else if (*negativity_cmd) {
      doc = cmd_max_negativity(neg_opts, timing, err);
    } else if (*dims_cmd) {
      doc = cmd_dims(dims_list, dims_estimate, dims_trials, dims_seed, timing);
    }
    out << doc.dump(2) << "\n";
    return kSuccess;
  } catch (const CapacityExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kCapacityExceeded;
  } catch (const IoFailure& e) {
    err << "error: " << e.what() << "\n";
    return kIoFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
}

}  // namespace orbitkit::cli
