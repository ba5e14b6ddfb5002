#include "orbitkit/classical.hpp"
#include "orbitkit/core.hpp"
#include "orbitkit/entanglement.hpp"
#include "orbitkit/orbits.hpp"
#include "orbitkit/product_orbits.hpp"
#include "orbitkit/random.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <vector>

namespace py = pybind11;
using namespace orbitkit;

namespace {

Spectrum to_spectrum(const std::vector<double>& values) {
  return Spectrum::normalized(values);
}

py::dict factorization_dict(const Factorization& f) {
  py::list marginals;
  for (const auto& m : f.marginals) marginals.append(m.values());
  py::dict d;
  d["marginals"] = marginals;
  d["residual"] = f.residual;
  return d;
}

std::optional<py::dict> wrap(const std::optional<Factorization>& f) {
  if (!f) return std::nullopt;
  return factorization_dict(*f);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Unitary-orbit geometry: spectra, product orbits, classical correlations, "
            "orbit negativity";

  py::register_exception<CapacityExceeded>(m, "CapacityExceeded", PyExc_OverflowError);
  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);

  m.def(
      "haar_unitary",
      [](int dim, std::uint64_t seed, std::uint64_t stream) {
        RandomSource rng(seed, stream);
        return haar_unitary(dim, rng).matrix();
      },
      py::arg("dim"), py::arg("seed") = 0, py::arg("stream") = 0);
  m.def(
      "random_density",
      [](int dim, std::uint64_t seed, std::uint64_t stream) {
        RandomSource rng(seed, stream);
        return random_density(dim, rng).matrix();
      },
      py::arg("dim"), py::arg("seed") = 0, py::arg("stream") = 0);
  m.def(
      "partial_transpose",
      [](const ComplexMatrix& rho, int da, int db, char which) {
        return partial_transpose(rho, {da, db}, which == 'A' ? Subsystem::A : Subsystem::B);
      },
      py::arg("rho"), py::arg("dim_a"), py::arg("dim_b"), py::arg("subsystem") = 'B');

  m.def(
      "spectrum_of", [](const ComplexMatrix& rho) { return spectrum_of(DensityMatrix(rho)).values(); },
      py::arg("rho"));
  m.def(
      "same_orbit",
      [](const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
        return same_orbit(DensityMatrix(a), DensityMatrix(b), tol);
      },
      py::arg("a"), py::arg("b"), py::arg("tol") = 1e-9);
  m.def("entropy", [](const std::vector<double>& s) { return entropy(to_spectrum(s)); });
  m.def("purity", [](const std::vector<double>& s) { return purity(to_spectrum(s)); });
  m.def("coords_d2", [](const std::vector<double>& s) { return coords_d2(to_spectrum(s)); });
  m.def("coords_d3", [](const std::vector<double>& s) {
    const PlanarPoint p = coords_d3(to_spectrum(s));
    return py::make_tuple(p.u, p.v);
  });
  m.def("coords_d4", [](const std::vector<double>& s) {
    const OrbitCoords c = coords_d4(to_spectrum(s));
    return py::make_tuple(c.x, c.y, c.z);
  });
  m.def(
      "inverse_coords_d4",
      [](double x, double y, double z) { return inverse_coords_d4({x, y, z}).values(); },
      py::arg("x"), py::arg("y"), py::arg("z"));

  m.def(
      "factor_bipartite",
      [](const std::vector<double>& s, int da, int db, double tol) {
        return wrap(factor_bipartite(to_spectrum(s), da, db, tol));
      },
      py::arg("spectrum"), py::arg("dim_a"), py::arg("dim_b"), py::arg("tol") = 1e-9);
  m.def(
      "factor_multipartite",
      [](const std::vector<double>& s, const std::vector<int>& dims, double tol) {
        return wrap(factor_multipartite(to_spectrum(s), dims, tol));
      },
      py::arg("spectrum"), py::arg("dims"), py::arg("tol") = 1e-9);
  m.def("product_constraint", &product_constraint, py::arg("x"), py::arg("y"), py::arg("z"));
  m.def("product_surface_z", &product_surface_z, py::arg("x"), py::arg("y"));
  m.def(
      "sample_product_surface",
      [](int nx, int ny) {
        py::list rows;
        for (const auto& s : sample_product_surface(GridSpec::tetrahedron_shadow(nx, ny)))
          rows.append(py::make_tuple(s.x, s.y, s.z));
        return rows;
      },
      py::arg("nx"), py::arg("ny"));
  m.def("product_orbit_dims", [](const std::vector<int>& dims) {
    const DimensionReport r = product_orbit_dims(dims);
    py::dict d;
    d["subsystem_dims"] = r.subsystem_dims;
    d["product_orbit_dim"] = r.product_orbit_dim;
    d["ambient_dim"] = r.ambient_dim;
    return d;
  });
  m.def(
      "estimate_dimension",
      [](const std::vector<int>& dims, std::uint64_t seed, int trials) {
        RandomSource rng(seed);
        return estimate_dimension(dims, rng, trials);
      },
      py::arg("dims"), py::arg("seed") = 0, py::arg("trials") = 20);

  m.def(
      "classicalize",
      [](const ComplexMatrix& rho, int da, int db, std::optional<std::uint64_t> seed) {
        std::optional<RandomSource> rng;
        if (seed) rng.emplace(*seed);
        const auto r = classicalize(DensityMatrix(rho), {da, db}, rng ? &*rng : nullptr);
        py::dict d;
        d["rho_cl"] = r.classical_state.matrix();
        d["W"] = r.w.matrix();
        d["U_cd"] = r.u_cd.matrix();
        d["weights"] = r.factorization.weights;
        d["conditionals"] = r.factorization.conditionals;
        return d;
      },
      py::arg("rho"), py::arg("dim_a"), py::arg("dim_b"), py::arg("seed") = py::none());
  m.def(
      "is_classically_correlated",
      [](const ComplexMatrix& rho, int da, int db, double tol) {
        return is_classically_correlated(DensityMatrix(rho), {da, db}, tol);
      },
      py::arg("rho"), py::arg("dim_a"), py::arg("dim_b"), py::arg("tol") = 1e-9);

  m.def(
      "negativity",
      [](const ComplexMatrix& rho, int da, int db) {
        return negativity(DensityMatrix(rho), {da, db});
      },
      py::arg("rho"), py::arg("dim_a") = 2, py::arg("dim_b") = 2);
  m.def(
      "concurrence_2q", [](const ComplexMatrix& rho) { return concurrence_2q(DensityMatrix(rho)); },
      py::arg("rho"));
  m.def("max_concurrence_closed_form",
        [](const std::vector<double>& s) { return max_concurrence_closed_form(to_spectrum(s)); });
  m.def(
      "max_negativity_orbit",
      [](const std::vector<double>& s, int restarts, int max_iters, double tol,
         std::uint64_t seed) {
        OptimizerConfig cfg;
        cfg.restarts = restarts;
        cfg.max_iters = max_iters;
        cfg.tol_value = tol;
        cfg.seed = RandomSource(seed);
        NegativityReport r;
        {
          py::gil_scoped_release release;
          r = max_negativity_orbit(to_spectrum(s), cfg);
        }
        py::dict d;
        d["best_negativity"] = r.best_negativity;
        d["best_unitary"] = r.best_unitary.matrix();
        d["restarts_used"] = r.restarts_used;
        d["converged"] = r.converged;
        return d;
      },
      py::arg("spectrum"), py::arg("restarts") = 16, py::arg("max_iters") = 500,
      py::arg("tol") = 1e-8, py::arg("seed") = 0);
}
