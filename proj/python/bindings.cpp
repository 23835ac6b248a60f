#include <sstream>

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tau2/cli.hpp"
#include "tau2/dioph.hpp"
#include "tau2/errors.hpp"
#include "tau2/randmodel.hpp"
#include "tau2/structure.hpp"
#include "tau2/textio.hpp"

namespace py = pybind11;
using namespace tau2;

namespace {

// Python ints cross the boundary as decimal strings, so big values survive.
py::int_ to_py(const Integer& v) { return py::int_(py::str(v.get_str())); }

Integer from_py(const py::int_& v) { return Integer(py::str(static_cast<py::handle>(v)).cast<std::string>()); }

py::list to_py(const IntVector& v) {
  py::list out;
  for (const Integer& x : v) out.append(to_py(x));
  return out;
}

IntVector vec_from_py(const std::vector<py::int_>& v) {
  IntVector out;
  for (const auto& x : v) out.push_back(from_py(x));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact arithmetic and random experiments for tau_2-presentations";

  py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", m.attr("Error"));
  py::register_exception<PreconditionError>(m, "PreconditionError", m.attr("Error"));
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", m.attr("Error"));

  py::class_<Tau2Presentation>(m, "Presentation")
      .def(py::init([](int n, int mm, const std::vector<std::vector<py::int_>>& table) {
             std::vector<IntVector> t;
             for (const auto& row : table) t.push_back(vec_from_py(row));
             return Tau2Presentation::from_table(n, mm, std::move(t));
           }),
           py::arg("n"), py::arg("m"), py::arg("table"))
      .def_static("heisenberg", &Tau2Presentation::heisenberg)
      .def_static("parse", [](const std::string& text) { return parse_presentation(text); })
      .def_property_readonly("n", &Tau2Presentation::n)
      .def_property_readonly("m", &Tau2Presentation::m)
      .def("lam", [](const Tau2Presentation& p, int t, int i, int j) { return to_py(p.lambda(t, i, j)); })
      .def("format", &format_presentation)
      .def(py::self == py::self);

  py::class_<MalcevElement>(m, "Element")
      .def(py::init([](const Tau2Presentation& p, const std::vector<py::int_>& alpha,
                       const std::vector<py::int_>& gamma) {
             return MalcevElement(p, vec_from_py(alpha), vec_from_py(gamma));
           }),
           py::arg("presentation"), py::arg("alpha"), py::arg("gamma"))
      .def_static("identity", &MalcevElement::identity)
      .def_static("a", &MalcevElement::a)
      .def_static("c", &MalcevElement::c)
      .def_static("parse", [](const Tau2Presentation& p, const std::string& s) { return parse_element(p, s); })
      .def_property_readonly("alpha", [](const MalcevElement& x) { return to_py(x.alpha()); })
      .def_property_readonly("gamma", [](const MalcevElement& x) { return to_py(x.gamma()); })
      .def("inverse", [](const MalcevElement& x) { return inverse(x); })
      .def("__pow__", [](const MalcevElement& x, const py::int_& k) { return power(x, from_py(k)); })
      .def("__repr__", &MalcevElement::to_string)
      .def(py::self * py::self)
      .def(py::self == py::self);

  m.def("commutator", [](const MalcevElement& x, const MalcevElement& y) { return commutator(x, y); });
  m.def("is_c_small", [](const MalcevElement& g) { return is_c_small(g); });
  m.def("is_regular", &is_regular);
  m.def("center_basis", [](const Tau2Presentation& p) {
    py::list out;
    for (const IntVector& v : center(p).d_basis.vectors()) out.append(to_py(v));
    return out;
  });
  m.def("analyze_json", [](const Tau2Presentation& p) { return analysis_json(p, analyze(p)); });
  m.def("encode", [](const Tau2Presentation& p, const std::string& equations) {
    return encode_system(parse_equations(p, equations)).to_text();
  });
  m.def("verify_ring_window", &verify_ring_window);
  m.def("run_experiment", [](const std::string& config, unsigned threads) {
    return run_experiment(parse_experiment_config(config), threads);
  }, py::arg("config"), py::arg("threads") = 1);
  m.def("count_bound", [](int n, int mm, int ell, const std::string& variant, const std::string& convention) {
    const auto v = variant == "regularity" ? BoundVariant::Regularity : BoundVariant::MainThm;
    const auto c = convention == "2ell+1" ? LConvention::TwoEllPlusOne : LConvention::TwoEll;
    const CountBound b = count_bound_p(n, mm, ell, v, c);
    return py::make_tuple(to_py(b.probability.get_num()), to_py(b.probability.get_den()));
  }, py::arg("n"), py::arg("m"), py::arg("ell"), py::arg("variant") = "mainthm", py::arg("convention") = "2ell");
  m.def("wilson_interval", &wilson_interval);
  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::vector<std::string> full{"tau2"};
    full.insert(full.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : full) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
