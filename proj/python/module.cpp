#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hypnls/config.hpp"
#include "hypnls/diagnostics.hpp"
#include "hypnls/errors.hpp"
#include "hypnls/experiments.hpp"
#include "hypnls/nls.hpp"
#include "hypnls/propagators.hpp"
#include "hypnls/spectral.hpp"

namespace py = pybind11;
using namespace hypnls;

namespace {

// Python-side handle; pybind11 holders cannot point to const.
struct Grid {
  DiscretizationPtr disc;
  const Discretization* operator->() const { return disc.get(); }
};

using ComplexArray = py::array_t<complex, py::array::c_style | py::array::forcecast>;

// Fields cross the boundary as arrays of u(r_j) on the interior nodes.
RadialField to_field(const Grid& g, const ComplexArray& values) {
  const auto& disc = g.disc;
  if (values.ndim() != 1 || values.shape(0) != disc->size()) {
    throw DomainError("expected a 1-d array of length " + std::to_string(disc->size()));
  }
  return RadialField::from_values(disc, std::span<const complex>(values.data(), disc->size()));
}

ComplexArray to_array(const std::vector<complex>& v) {
  ComplexArray out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::array_t<double> to_array(std::span<const double> v) {
  py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Radial NLS on H^3 and R^3";

  auto base = py::register_exception<Error>(m, "HypnlsError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

  py::class_<Grid>(m, "Discretization")
      .def(py::init([](double radius, int intervals, const std::string& geometry) {
             return Grid{Discretization::make(RadialGrid(radius, intervals), parse_geometry(geometry))};
           }),
           py::arg("radius"), py::arg("intervals"), py::arg("geometry") = "hyperbolic")
      .def_property_readonly("radius", [](const Grid& d) { return d->grid().radius(); })
      .def_property_readonly("intervals", [](const Grid& d) { return d->grid().intervals(); })
      .def_property_readonly("spacing", [](const Grid& d) { return d->grid().spacing(); })
      .def_property_readonly("geometry", [](const Grid& d) { return std::string(to_string(d->geometry())); })
      .def_property_readonly("nodes",
                             [](const Grid& d) {
                               std::vector<double> r(d->size());
                               for (int j = 0; j < d->size(); ++j) r[j] = d->grid().node(j);
                               return to_array(r);
                             })
      .def_property_readonly("frequencies", [](const Grid& d) {
        std::vector<double> k(d->size());
        for (int j = 0; j < d->size(); ++j) k[j] = d->grid().frequency(j);
        return to_array(k);
      });

  m.def("mass", [](const Grid& d, const ComplexArray& u) { return mass(to_field(d, u)); });
  m.def(
      "energy",
      [](const Grid& d, const ComplexArray& u, double sigma, double kappa) {
        const auto e = energy(to_field(d, u), sigma, kappa);
        return py::make_tuple(e.kinetic, e.potential);
      },
      py::arg("disc"), py::arg("u"), py::arg("sigma"), py::arg("kappa") = 1.0);
  m.def("sobolev_norm", [](const Grid& d, const ComplexArray& u, double s) {
    return sobolev_norm(to_field(d, u), s);
  });
  m.def("forward_transform", [](const Grid& d, const ComplexArray& u) {
    const auto F = forward_transform(to_field(d, u));
    return to_array(std::vector<complex>(F.coeffs().begin(), F.coeffs().end()));
  });
  m.def("inverse_transform", [](const Grid& d, const ComplexArray& coeffs) {
    if (coeffs.ndim() != 1 || coeffs.shape(0) != d->size()) throw DomainError("coefficient length mismatch");
    SpectralField F(d.disc, std::vector<complex>(coeffs.data(), coeffs.data() + d->size()));
    return to_array(inverse_transform(F).values());
  });
  m.def("free_evolve", [](const Grid& d, const ComplexArray& u, double t) {
    return to_array(free_evolve(to_field(d, u), t).values());
  });
  m.def("galilean_norm", [](const Grid& d, const ComplexArray& u, double t) {
    return galilean_norm(galilean_apply(to_field(d, u), t));
  });
  m.def("interaction_momentum", [](const Grid& d, const ComplexArray& u) {
    return interaction_momentum(to_field(d, u));
  });
  m.def(
      "h2_kernel_integral", [](double rho, double t, double tol) { return h2_kernel_integral(rho, t, {tol, 0, 7}); },
      py::arg("rho"), py::arg("t"), py::arg("tolerance") = 1e-6);
  m.def("h2_kernel_bound", &h2_kernel_bound);

  py::class_<Trajectory>(m, "Trajectory")
      .def_property_readonly("times", [](const Trajectory& t) { return to_array(t.times()); })
      .def_property_readonly("status", [](const Trajectory& t) { return std::string(to_string(t.status())); })
      .def_property_readonly("message", &Trajectory::message)
      .def_property_readonly("last_valid_time", &Trajectory::last_valid_time)
      .def_property_readonly("mass",
                             [](const Trajectory& t) {
                               std::vector<double> v;
                               for (const auto& r : t.records()) v.push_back(r.mass);
                               return to_array(v);
                             })
      .def_property_readonly("energy",
                             [](const Trajectory& t) {
                               std::vector<double> v;
                               for (const auto& r : t.records()) v.push_back(r.energy);
                               return to_array(v);
                             })
      .def("field", [](const Trajectory& t, std::size_t i) {
        if (i >= t.size()) throw py::index_error("snapshot index out of range");
        return to_array(t.fields()[i].values());
      });

  m.def(
      "evolve",
      [](const Grid& d, const ComplexArray& u0, double sigma, double kappa, double dt, double t_end,
         std::vector<double> snapshot_times, bool extended_precision) {
        SolverConfig cfg;
        cfg.sigma = sigma;
        cfg.kappa = kappa;
        cfg.dt = dt;
        cfg.t_end = t_end;
        cfg.snapshot_times = std::move(snapshot_times);
        cfg.extended_precision = extended_precision;
        auto field = to_field(d, u0);
        py::gil_scoped_release release;
        return evolve(field, cfg);
      },
      py::arg("disc"), py::arg("u0"), py::arg("sigma"), py::arg("kappa"), py::arg("dt"), py::arg("t_end"),
      py::arg("snapshot_times"), py::arg("extended_precision") = false);

  m.def("experiment_names", &experiment_names);
  m.def(
      "run_experiment",
      [](const std::string& name, const std::map<std::string, std::string>& overrides, const std::string& out_dir,
         bool force) {
        Config user;
        for (const auto& [k, v] : overrides) user.set(k, v);
        std::string diagnostic;
        int code;
        {
          py::gil_scoped_release release;
          code = run_experiment_to_directory(name, user, out_dir, force, &diagnostic);
        }
        return py::make_tuple(code, diagnostic);
      },
      py::arg("name"), py::arg("overrides") = std::map<std::string, std::string>{}, py::arg("out_dir"),
      py::arg("force") = false);
}
