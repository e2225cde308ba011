#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cqm/orbit.hpp"
#include "cqm/report.hpp"

namespace py = pybind11;
using namespace cqm;

namespace {

std::vector<double> at(const Field& f, const std::vector<double>& p, int dim) {
  if (static_cast<int>(p.size()) != dim) throw harness::UsageError("expected " + std::to_string(dim) + " coordinates");
  return f.values(p);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Classical and quantum structures of Galilei and Einstein spacetime models.";

  auto base = py::register_exception<harness::UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<harness::FrameworkMismatch>(m, "FrameworkMismatch", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<einstein::LightconeViolation>(m, "LightconeViolation", PyExc_ValueError);
  py::register_exception<orbit::BoxExit>(m, "BoxExit", PyExc_RuntimeError);

  py::enum_<Framework>(m, "Framework").value("galilei", Framework::Galilei).value("einstein", Framework::Einstein);

  py::class_<Model>(m, "Model")
      .def_readonly("name", &Model::name)
      .def_readonly("framework", &Model::framework)
      .def_readonly("m", &Model::m)
      .def_readonly("q", &Model::q)
      .def_readonly("hbar", &Model::hbar)
      .def_readonly("c", &Model::c)
      .def_property_readonly("constants", &Model::constant_values)
      .def_property_readonly("observers",
                             [](const Model& x) {
                               std::vector<std::string> n;
                               for (const auto& o : x.observers) n.push_back(o.name);
                               return n;
                             })
      .def_property_readonly("box", [](const Model& x) { return std::make_pair(x.box.lo, x.box.hi); })
      .def("metric_at", [](const Model& x, const std::vector<double>& p) { return x.metric_at(p); });
  m.def("load_model", &load_model, py::arg("path"), "Read and validate a model file.");
  m.def("parse_model", [](const std::string& text) {
    Model x = parse_model(text);
    validate(x);
    return x;
  }, py::arg("text"), "Parse and validate model text.");

  py::class_<galilei::Geometry>(m, "GalileiGeometry")
      .def(py::init<const Model&>())
      .def("gamma", [](const galilei::Geometry& g, const std::vector<double>& z) { return at(g.gamma(), z, 7); })
      .def("K", [](const galilei::Geometry& g, const std::vector<double>& x) { return at(g.K(), x, 4); })
      .def("Phi", [](const galilei::Geometry& g, const std::vector<double>& x) { return at(g.Phi().field(), x, 4); });

  py::class_<einstein::Geometry>(m, "EinsteinGeometry")
      .def(py::init<const Model&>())
      .def("alpha", [](const einstein::Geometry& g, const std::vector<double>& z) { return at(g.alpha(), z, 7)[0]; })
      .def("contact", [](const einstein::Geometry& g, const std::vector<double>& z) { return at(g.contact(), z, 7); })
      .def("tau", [](const einstein::Geometry& g, const std::vector<double>& z) { return at(g.tau(), z, 7); })
      .def("gamma", [](const einstein::Geometry& g, const std::vector<double>& z) { return at(g.gamma(), z, 7); })
      .def("K", [](const einstein::Geometry& g, const std::vector<double>& x) { return at(g.K(), x, 4); })
      .def("technical_identities", [](const einstein::Geometry& g, const std::vector<double>& z) {
        std::map<std::string, double> r;
        for (const auto& i : einstein::technical_identities(g, z)) r[i.name] = i.value;
        return r;
      });

  py::class_<harness::Record>(m, "Record")
      .def_readonly("name", &harness::Record::name)
      .def_readonly("anchor", &harness::Record::anchor)
      .def_readonly("residual", &harness::Record::residual)
      .def_readonly("tolerance", &harness::Record::tolerance)
      .def_readonly("passed", &harness::Record::pass)
      .def_readonly("skipped", &harness::Record::skipped)
      .def_readonly("reason", &harness::Record::reason);
  py::class_<harness::SuiteReport>(m, "SuiteReport")
      .def_readonly("suite", &harness::SuiteReport::suite)
      .def_readonly("model", &harness::SuiteReport::model)
      .def_readonly("seed", &harness::SuiteReport::seed)
      .def_readonly("points", &harness::SuiteReport::points)
      .def_readonly("records", &harness::SuiteReport::records)
      .def_readonly("wall_seconds", &harness::SuiteReport::wall_seconds)
      .def_property_readonly("passed", &harness::SuiteReport::passed)
      .def("json", [](const harness::SuiteReport& r) { return harness::emit_report(r, harness::Format::Json); })
      .def("text", [](const harness::SuiteReport& r) { return harness::emit_report(r, harness::Format::Text); });

  m.def("suites", [] {
    std::map<std::string, std::vector<std::string>> r;
    for (const auto& s : harness::suites())
      for (const auto& c : s.checks) r[s.name].push_back(c.name);
    return r;
  }, "Suite names and their checks.");
  m.def("verify", [](const std::string& model, const std::string& suite, int points, std::uint64_t seed,
                     const std::map<std::string, double>& tolerances, const std::vector<std::string>& checks) {
    py::gil_scoped_release release;
    return harness::run_suite(model, suite, points, seed, tolerances, checks);
  }, py::arg("model"), py::arg("suite"), py::arg("points") = 100, py::arg("seed") = 42,
     py::arg("tolerances") = std::map<std::string, double>{}, py::arg("checks") = std::vector<std::string>{},
     "Run a suite on the model file.");

  py::class_<orbit::Trajectory>(m, "Trajectory")
      .def_readonly("step", &orbit::Trajectory::step)
      .def_readonly("s", &orbit::Trajectory::s)
      .def_readonly("z", &orbit::Trajectory::z)
      .def_property_readonly("max_residual", &orbit::Trajectory::max_residual);
  m.def("orbit", [](const Model& model, std::array<double, 4> x0, std::array<double, 3> v, double duration,
                    double step) { return orbit::integrate(model, x0, v, duration, step); },
        py::arg("model"), py::arg("x0"), py::arg("v"), py::arg("duration"), py::arg("step") = 1e-3,
        "Integrate the law of motion with RK4.");
}
