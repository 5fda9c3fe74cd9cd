#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lempertkit/ball.hpp"
#include "lempertkit/verify.hpp"

namespace py = pybind11;
using namespace lempert;

namespace {

// Structured results cross the boundary as JSON text; the Python side parses them.
std::string dumps(const io::json& j) { return j.dump(); }

}  // namespace

PYBIND11_MODULE(_lempertkit, m) {
  m.doc() = "Native core of lempertkit";

  static py::exception<Error> error(m, "LempertError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
    }
  });

  py::class_<Domain>(m, "Domain")
      .def_static("ball", &Domain::ball, py::arg("n"))
      .def_static("perturbed_ball", &Domain::perturbed_ball, py::arg("n"), py::arg("eps"))
      .def_static("linear_ball", &Domain::linear_ball, py::arg("A"), py::arg("b"))
      .def_static("from_json", [](const std::string& s) { return io::domain_from_json(io::json::parse(s)); })
      .def("to_json", [](const Domain& d) { return dumps(io::to_json(d)); })
      .def_property_readonly("dim", &Domain::dim)
      .def_property_readonly("kind", [](const Domain& d) { return std::string(to_string(d.kind())); })
      .def("r", &Domain::r, py::arg("z"))
      .def("unit_normal", &Domain::unit_normal, py::arg("p"))
      .def("distance_to_boundary", &Domain::distance_to_boundary, py::arg("z"))
      .def("project_to_boundary", &Domain::project_to_boundary, py::arg("z"))
      .def("default_base_point", [](const Domain& d) { return verify::default_base_point(d); });

  m.def("solve_boundary", [](const Domain& d, const CVector& p, const CVector& v) {
    const GeodesicPair g = solve_stationary(d, BoundaryProblem{p, v});
    io::json j = io::to_json(g);
    j["certificate"] = io::to_json(geodesic_certificate(g, d));
    return dumps(j);
  }, py::arg("domain"), py::arg("p"), py::arg("v"));
  m.def("kobayashi_distance", [](const Domain& d, const CVector& z, const CVector& w) {
    return kobayashi_distance(d, z, w).value;
  }, py::arg("domain"), py::arg("z"), py::arg("w"));
  m.def("kobayashi_metric", [](const Domain& d, const CVector& z, const CVector& v) {
    return kobayashi_metric(d, z, v).value;
  }, py::arg("domain"), py::arg("z"), py::arg("v"));
  m.def("ball_kobayashi", &ball_kobayashi, py::arg("z"), py::arg("w"));
  m.def("ball_poisson_kernel", &ball_poisson_kernel, py::arg("z"), py::arg("p"));

  py::class_<SphericalRep>(m, "SphericalRep")
      .def(py::init<const Domain&, const CVector&>(), py::arg("domain"), py::arg("p"))
      .def_property_readonly("p", &SphericalRep::p)
      .def_property_readonly("nu", &SphericalRep::nu)
      .def("map", [](const SphericalRep& r, const CVector& z) { return r.map(z).w; }, py::arg("z"))
      .def("inverse", &SphericalRep::inverse, py::arg("w"))
      .def("kernel", [](const SphericalRep& r, const CVector& z) { return r.kernel(z); }, py::arg("z"))
      .def("busemann", [](const SphericalRep& r, const CVector& z, const CVector& z0) {
        return busemann(r, z, z0).value;
      }, py::arg("z"), py::arg("z0"));

  m.def("shoikhet_counterexample", [] { return dumps(io::to_json(shoikhet_counterexample())); });
  m.def("run_suite", [](const std::string& name, std::uint64_t seed, std::optional<Domain> domain,
                        std::optional<CVector> p, int jobs) {
    verify::SuiteOptions opts;
    opts.seed = seed;
    opts.domain = std::move(domain);
    opts.p = std::move(p);
    opts.jobs = jobs;
    py::gil_scoped_release release;
    return dumps(verify::run_suite(name, opts));
  }, py::arg("name"), py::arg("seed") = 1, py::arg("domain") = py::none(), py::arg("p") = py::none(),
     py::arg("jobs") = 1);
}
