// Python bindings: spec loading and replay, plus a few exact helpers.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "k3/fib/weierstrass.hpp"
#include "k3/ideal/ops.hpp"
#include "k3/poly/parse.hpp"
#include "k3/replay/runner.hpp"

namespace py = pybind11;
using namespace k3;
using namespace k3::replay;

namespace {

RingPtr ring_for(const std::vector<std::string>& variables, const std::vector<int>& weights) {
  return PolyRing::make(variables, weights);
}

QIdeal ideal_of(const std::vector<std::string>& equations, const RingPtr& ring) {
  std::vector<QMPoly> gens;
  for (const auto& e : equations) gens.push_back(parse_poly<Rational>(e, ring));
  return QIdeal(ring, gens);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact replay of K3 surface computations";

  static py::exception<SpecError> spec_error(m, "SpecError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const SpecError& e) {
      py::object err = py::reinterpret_borrow<py::object>(spec_error)(e.what());
      err.attr("line") = e.line();
      err.attr("column") = e.column();
      err.attr("message") = e.message();
      PyErr_SetObject(spec_error.ptr(), err.ptr());
    }
  });

  py::class_<PipelineSpec>(m, "Spec")
      .def_readonly("name", &PipelineSpec::name)
      .def_readonly("origin", &PipelineSpec::origin)
      .def_readonly("seed", &PipelineSpec::seed)
      .def_property_readonly("step_ids",
                             [](const PipelineSpec& s) {
                               std::vector<std::string> ids;
                               for (const auto& st : s.steps) ids.push_back(st.id);
                               return ids;
                             })
      .def("__repr__", [](const PipelineSpec& s) {
        return "<Spec " + s.name + " (" + std::to_string(s.steps.size()) + " steps)>";
      });

  py::class_<Report>(m, "Report")
      .def_readonly("pipeline", &Report::pipeline)
      .def_readonly("seed", &Report::seed)
      .def_property_readonly("passed", &Report::passed)
      .def_property_readonly("counts",
                             [](const Report& r) {
                               return py::dict(py::arg("pass") = r.count(Status::Pass),
                                               py::arg("fail") = r.count(Status::Fail),
                                               py::arg("skipped") = r.count(Status::Skipped));
                             })
      .def("structured", [](const Report& r) { return render_report(r, Format::Structured); })
      .def("text", [](const Report& r) { return render_report(r, Format::Text); });

  m.def("load_spec", &load_spec, py::arg("path"));
  m.def("parse_spec", &parse_spec, py::arg("text"), py::arg("origin") = "<string>", py::arg("base_dir") = ".");
  m.def(
      "run",
      [](const PipelineSpec& spec, std::optional<std::filesystem::path> data_dir, const std::string& filter,
         std::optional<unsigned> seed, int jobs) {
        RunOptions o;
        o.data_dir = std::move(data_dir);
        o.filter = filter;
        o.seed = seed;
        o.jobs = jobs;
        py::gil_scoped_release release;
        return run(spec, o);
      },
      py::arg("spec"), py::arg("data_dir") = py::none(), py::arg("filter") = "", py::arg("seed") = py::none(),
      py::arg("jobs") = 1);

  m.def(
      "degree_dimension",
      [](const std::vector<std::string>& equations, const std::vector<std::string>& variables,
         const std::vector<int>& weights) {
        HilbertData h = dimension_degree(ideal_of(equations, ring_for(variables, weights)));
        return std::make_pair(h.dimension, h.degree.to_string());
      },
      py::arg("equations"), py::arg("variables"), py::arg("weights") = std::vector<int>{},
      "Projective dimension and degree of the subscheme cut out by the equations.");
  m.def(
      "groebner_basis",
      [](const std::vector<std::string>& equations, const std::vector<std::string>& variables,
         const std::vector<int>& weights) {
        QIdeal reduced = ideal_of(equations, ring_for(variables, weights)).minimalized();
        std::vector<std::string> out;
        for (const auto& g : reduced.gens()) out.push_back(g.to_string());
        return out;
      },
      py::arg("equations"), py::arg("variables"), py::arg("weights") = std::vector<int>{},
      "Reduced basis for the weighted graded reverse lexicographic order.");
  m.def(
      "kodaira_type", [](long v_c4, long v_c6, long v_disc) { return kodaira_type(v_c4, v_c6, v_disc).name(); },
      py::arg("v_c4"), py::arg("v_c6"), py::arg("v_disc"));
}
