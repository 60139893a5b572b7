#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "polyalab/lab.hpp"

namespace py = pybind11;
using namespace polyalab;

namespace {

// Python numbers and decimal strings both go through the decimal parser, so
// 0.1 means the decimal 0.1 and not the nearest double.
Float num(const py::handle& h) { return parse_float(py::str(h)); }

std::vector<Float> nums(const py::iterable& seq) {
  std::vector<Float> v;
  for (const py::handle& h : seq) v.push_back(num(h));
  return v;
}

std::vector<std::string> decimals(const std::vector<Float>& v) {
  std::vector<std::string> out;
  for (const Float& x : v) out.push_back(to_decimal(x));
  return out;
}

}  // namespace

PYBIND11_MODULE(_polyalab, m) {
  m.doc() = "Total positivity lab: kernels, minor checks, sweeps and recovery.";

  static py::exception<Error> exc(m, "PolyalabError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(exc.ptr(), (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
    }
  });

  m.def("precision_bits", &precision_bits);
  m.def("set_precision_bits", &set_precision_bits, py::arg("bits"));

  m.def("eval", [](const std::string& spec, const py::object& x) {
    EvalResult r = eval(kernel_from_string(spec), num(x));
    return py::make_tuple(to_decimal(r.value), to_decimal(r.abs_error_bound, 6), r.unbounded);
  }, py::arg("spec"), py::arg("x"));

  m.def("h_values", [](const py::iterable& args, unsigned n) { return decimals(h_table(nums(args), n)); },
        py::arg("args"), py::arg("n"));
  m.def("e_values", [](const py::iterable& args) { return decimals(e_table(nums(args))); },
        py::arg("args"));

  m.def("check_tn", [](const std::string& spec, const py::iterable& xs, const py::iterable& ys,
                       unsigned p) {
    return to_json(check_tn(sample(kernel_from_string(spec), nums(xs), nums(ys)), p)).dump();
  }, py::arg("spec"), py::arg("xs"), py::arg("ys"), py::arg("p") = kFullOrder);

  m.def("check_tp", [](const std::string& spec, const py::iterable& xs, const py::iterable& ys,
                       unsigned p, bool fekete) {
    return to_json(check_tp(sample(kernel_from_string(spec), nums(xs), nums(ys)), p, fekete)).dump();
  }, py::arg("spec"), py::arg("xs"), py::arg("ys"), py::arg("p") = kFullOrder,
        py::arg("fekete") = false);

  m.def("karlin_sweep", [](const py::object& q, const py::object& r, unsigned p,
                           const py::iterable& exps) {
    return to_json(karlin_sweep(karlin_config(num(q), num(r), p, nums(exps)))).dump();
  }, py::arg("q"), py::arg("r"), py::arg("p"), py::arg("exponents"));
  m.def("wallis_sweep", [](unsigned p, const py::iterable& exps) {
    return to_json(wallis_sweep(wallis_config(p, nums(exps)))).dump();
  }, py::arg("p"), py::arg("exponents"));
  m.def("gamma_sweep", [](const py::iterable& exps, unsigned p) {
    return to_json(gamma_sweep(nums(exps), p)).dump();
  }, py::arg("exponents"), py::arg("p"));
  m.def("lambda_d_boundary", [](const py::iterable& ds, unsigned p) {
    return to_json(lambda_d_boundary(nums(ds), p)).dump();
  }, py::arg("ds"), py::arg("p"));

  m.def("recover_from_moments", [](const py::iterable& mu, unsigned k) {
    return to_json(recover_from_moments(nums(mu), k)).dump();
  }, py::arg("mu"), py::arg("m"));
  m.def("recover_from_maclaurin", [](const py::iterable& c, unsigned k) {
    return to_json(recover_from_maclaurin(nums(c), k)).dump();
  }, py::arg("c"), py::arg("m"));
  m.def("maclaurin_derivatives", [](const py::iterable& alpha) {
    return decimals(maclaurin_derivatives(ParamVector(nums(alpha))));
  }, py::arg("alpha"));
  m.def("arithmetic_progression_power", [](const py::iterable& alpha, unsigned k) {
    return to_json(arithmetic_progression_power(ParamVector(nums(alpha)), k)).dump();
  }, py::arg("alpha"), py::arg("k"));

  m.def("hciz_det", [](const py::iterable& a, const py::iterable& b) {
    return to_decimal(hciz_det(nums(a), nums(b)));
  }, py::arg("a"), py::arg("b"));
  m.def("hciz_series", [](const py::iterable& a, const py::object& x, unsigned n) {
    EvalResult r = hciz_series(nums(a), num(x), n);
    return py::make_tuple(to_decimal(r.value), to_decimal(r.abs_error_bound, 6));
  }, py::arg("a"), py::arg("x"), py::arg("n_terms") = 200);

  m.def("mbeta_power_test", [](const py::object& beta, unsigned k, unsigned p) {
    return to_json(mbeta_power_test(num(beta), k, p)).dump();
  }, py::arg("beta"), py::arg("k"), py::arg("p"));
  m.def("hw_poly_rigidity", [](const py::iterable& alpha, const py::iterable& coeffs, unsigned order) {
    return to_json(hw_poly_rigidity(ParamVector(nums(alpha)), nums(coeffs), order)).dump();
  }, py::arg("alpha"), py::arg("coeffs"), py::arg("order"));

  m.def("falsify_preserver", [](const std::string& kind, const py::iterable& args,
                                const std::string& cls, unsigned order) {
    const std::vector<Float> a = nums(args);
    auto need = [&](std::size_t n) {
      if (a.size() != n) throw Error(ErrorKind::Parse, kind + " takes " + std::to_string(n) + " arguments");
    };
    Preserver f;
    if (kind == "power") {
      need(2);
      f = Preserver::power(a[0], a[1]);
    } else if (kind == "constant") {
      need(1);
      f = Preserver::constant(a[0]);
    } else if (kind == "indicator-positive") {
      need(1);
      f = Preserver::indicator_positive(a[0]);
    } else if (kind == "affine") {
      need(2);
      f = Preserver::affine(a[0], a[1]);
    } else {
      throw Error(ErrorKind::Parse, "unknown preserver '" + kind + "'");
    }
    const BatteryClass c = battery_class_from_string(cls);
    return to_json(falsify_preserver(f, c, order), f, c).dump();
  }, py::arg("kind"), py::arg("args"), py::arg("battery_class") = "tn-grid", py::arg("order") = 4);
}
