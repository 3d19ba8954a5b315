// Thin bindings: documents and reports cross the boundary as JSON text.
#include "relaxlab/gallery.hpp"
#include "relaxlab/report.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace relaxlab;

namespace {

Problem problem_of(const std::string& doc) {
  if (doc.rfind("gallery:", 0) == 0) return gallery_problem(doc.substr(8));
  return parse_problem_text(doc);
}

std::string report(const std::string& doc, const std::vector<std::string>& variants) {
  std::vector<Variant> vs;
  for (const auto& v : variants) vs.push_back(parse_variant(v));
  return report_to_json(run_report(problem_of(doc), vs.empty() ? all_variants() : vs)).dump();
}

std::string value(const std::string& doc, const std::string& variant) {
  Problem p = problem_of(doc);
  if (variant == "P" || variant == "p") return value_of(p).str();
  return value_of(build_relaxation(p, parse_variant(variant))).str();
}

std::string dual_ball(const std::string& query) {
  DualBallAnswer a = DualBallGallery{}.query(pattern_from_json(Json::parse(query), "query"));
  return Json{{"P", a.vP.str()}, {"PStar2", a.vPStar2.str()}, {"gap", a.gap}}.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact relaxation values for countably constrained convex programs";
  py::register_exception<RefusalError>(m, "RefusalError");
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  m.def("gallery_names", &gallery_names);
  m.def("gallery_document", [](const std::string& name) { return problem_to_json(gallery_problem(name)).dump(); });
  m.def("report", &report, py::arg("document"), py::arg("variants") = std::vector<std::string>{});
  m.def("value", &value, py::arg("document"), py::arg("variant") = "P");
  m.def("certify", [](const std::string& doc, const std::string& alpha) {
    return certify_value(problem_of(doc), Rat::parse(alpha));
  });
  m.def("dual_ball", &dual_ball);
}
