#include <pybind11/complex.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ffhyper/backend.hpp"
#include "ffhyper/cli.hpp"
#include "ffhyper/report_json.hpp"
#include "ffhyper/verifier.hpp"

namespace py = pybind11;
using namespace ffhyper;

namespace {

// A field together with lazily built exact and float evaluators.
class PyField {
 public:
  PyField(int p, int r, int generator_rank) {
    FieldOptions o;
    o.generator_rank = generator_rank;
    field_ = build_field(p, r, o);
  }

  const FieldPtr& ptr() const { return field_; }
  const FieldCtx& k() const { return *field_; }

  ExactBackend& exact() {
    if (!exact_) exact_ = std::make_unique<ExactBackend>(field_);
    return *exact_;
  }
  FloatBackend& flt() {
    if (!float_) float_ = std::make_unique<FloatBackend>(field_);
    return *float_;
  }

  FqElem elem(int x) const {
    if (x < 0 || x >= k().q()) throw py::index_error("field element out of range");
    return {x};
  }
  std::vector<Ch> chars(const std::vector<int>& js) const {
    std::vector<Ch> out;
    const int m = k().q() - 1;
    for (int j : js) out.push_back({((j % m) + m) % m, m});
    return out;
  }

  template <class B>
  auto hyper(B& b, const std::vector<int>& up, const std::vector<int>& low, int x) {
    return b.F(chars(up), chars(low), b.el(elem(x)));
  }

  template <class B>
  auto lauricella(B& b, const std::string& family, const std::vector<int>& alpha, const std::vector<int>& beta,
                  const std::vector<int>& gamma, const std::vector<int>& xs) {
    LauricellaParams lp;
    if (family == "A") lp.family = Family::A;
    else if (family == "B") lp.family = Family::B;
    else if (family == "C") lp.family = Family::C;
    else if (family == "D") lp.family = Family::D;
    else throw py::value_error("family must be one of A, B, C, D");
    for (auto c : chars(alpha)) lp.alpha.push_back(c.mc());
    for (auto c : chars(beta)) lp.beta.push_back(c.mc());
    for (auto c : chars(gamma)) lp.gamma.push_back(c.mc());
    std::vector<Fq> pt;
    for (int x : xs) pt.push_back(b.el(elem(x)));
    if (static_cast<int>(pt.size()) != lp.arity()) throw py::value_error("point length does not match the arity");
    return b.lauricella(lp, pt);
  }

 private:
  FieldPtr field_;
  std::unique_ptr<ExactBackend> exact_;
  std::unique_ptr<FloatBackend> float_;
};

py::object fraction(const mpq_class& r) {
  py::object Fraction = py::module_::import("fractions").attr("Fraction");
  py::object to_int = py::module_::import("builtins").attr("int");
  return Fraction(to_int(r.get_num().get_str()), to_int(r.get_den().get_str()));
}

RunOptions options(const std::string& mode, std::uint64_t samples, std::uint64_t seed, const std::string& backend,
                   int max_arity, std::uint64_t budget) {
  RunOptions o;
  if (mode == "sample") o.mode = Mode::Sample;
  else if (mode != "exhaustive") throw py::value_error("mode must be 'exhaustive' or 'sample'");
  if (backend == "float") o.backend = BackendKind::Float;
  else if (backend != "exact") throw py::value_error("backend must be 'exact' or 'float'");
  o.samples = samples;
  o.seed = seed;
  o.max_arity = max_arity;
  o.budget = budget;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact hypergeometric functions over finite fields";

  py::register_exception<VerifierError>(m, "VerifierError", PyExc_ValueError);

  py::class_<CycNum>(m, "Cyclotomic", "Element of Q(zeta_N) in the power basis")
      .def_property_readonly("order", &CycNum::order)
      .def("coefficients", [](const CycNum& x) {
        py::list out;
        for (const auto& c : x.coeffs()) out.append(fraction(c));
        return out;
      }, "Power-basis coefficients as Fractions, low degree first")
      .def("as_fraction", [](const CycNum& x) -> py::object {
        auto r = x.as_rational();
        return r ? fraction(*r) : py::none();
      }, "The value as a Fraction if it is rational, else None")
      .def("galois", &CycNum::galois, py::arg("a"), "Image under zeta -> zeta^a")
      .def("__complex__", &CycNum::to_complex)
      .def("is_zero", &CycNum::is_zero)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(py::self / py::self)
      .def(-py::self)
      .def(py::self == py::self)
      .def("__ne__", [](const CycNum& a, const CycNum& b) { return !(a == b); })
      .def("__hash__", [](const CycNum& x) { return py::hash(py::str(x.to_string())); })
      .def("__repr__", [](const CycNum& x) { return "Cyclotomic(" + x.to_string() + ")"; })
      .def("__str__", &CycNum::to_string);

  py::class_<PyField>(m, "Field", "F_q with tables and cached character-sum evaluators")
      .def(py::init<int, int, int>(), py::arg("p"), py::arg("r") = 1, py::arg("generator_rank") = 0)
      .def_property_readonly("p", [](const PyField& f) { return f.k().p(); })
      .def_property_readonly("r", [](const PyField& f) { return f.k().r(); })
      .def_property_readonly("q", [](const PyField& f) { return f.k().q(); })
      .def_property_readonly("N", [](const PyField& f) { return f.k().N(); })
      .def_property_readonly("modulus", [](const PyField& f) { return f.k().modulus(); })
      .def_property_readonly("generator", [](const PyField& f) { return f.k().generator().v; })
      .def("element", [](const PyField& f, const std::vector<int>& c) { return f.k().from_coeffs(c).v; },
           py::arg("coeffs"), "Element index from coefficients over F_p, low degree first")
      .def("coeffs", [](const PyField& f, int x) { return f.k().coeffs(f.elem(x)); }, py::arg("x"))
      .def("add", [](const PyField& f, int a, int b) { return f.k().add(f.elem(a), f.elem(b)).v; })
      .def("mul", [](const PyField& f, int a, int b) { return f.k().mul(f.elem(a), f.elem(b)).v; })
      .def("dlog", [](const PyField& f, int x) { return f.k().dlog(f.elem(x)); }, py::arg("x"))
      .def("gauss", [](PyField& f, int j) { return f.exact().g(f.chars({j})[0]); }, py::arg("j"),
           "g(chi_j) = -sum_x chi_j(x) psi(x)")
      .def("gauss_circ", [](PyField& f, int j) { return f.exact().gc(f.chars({j})[0]); }, py::arg("j"))
      .def("jacobi", [](PyField& f, const std::vector<int>& js) { return f.exact().jacobi(f.chars(js)); },
           py::arg("js"))
      .def("jacobi_direct", [](PyField& f, const std::vector<int>& js) { return f.exact().jacobi_direct(f.chars(js)); },
           py::arg("js"), "Jacobi sum by direct summation")
      .def("hyper", [](PyField& f, const std::vector<int>& up, const std::vector<int>& low, int x) {
        return f.hyper(f.exact(), up, low, x);
      }, py::arg("upper"), py::arg("lower"), py::arg("x"), "mFn(upper; lower; x), exact")
      .def("hyper_float", [](PyField& f, const std::vector<int>& up, const std::vector<int>& low, int x) {
        return f.hyper(f.flt(), up, low, x);
      }, py::arg("upper"), py::arg("lower"), py::arg("x"), "mFn(upper; lower; x) in double precision")
      .def("lauricella", [](PyField& f, const std::string& fam, const std::vector<int>& a, const std::vector<int>& b,
                            const std::vector<int>& c, const std::vector<int>& x) {
        return f.lauricella(f.exact(), fam, a, b, c, x);
      }, py::arg("family"), py::arg("alpha"), py::arg("beta"), py::arg("gamma"), py::arg("x"))
      .def("lauricella_float", [](PyField& f, const std::string& fam, const std::vector<int>& a,
                                  const std::vector<int>& b, const std::vector<int>& c, const std::vector<int>& x) {
        return f.lauricella(f.flt(), fam, a, b, c, x);
      }, py::arg("family"), py::arg("alpha"), py::arg("beta"), py::arg("gamma"), py::arg("x"))
      .def("__repr__", [](const PyField& f) {
        return "Field(p=" + std::to_string(f.k().p()) + ", r=" + std::to_string(f.k().r()) + ")";
      });

  m.def("identities", [] {
    py::list out;
    for (const auto& s : registry()) {
      py::dict d;
      d["id"] = s.id;
      d["summary"] = s.summary;
      d["requires_odd_p"] = s.requires_odd_p;
      out.append(d);
    }
    return out;
  }, "Registered identities in registry order");

  m.def("_check", [](PyField& f, const std::string& id, const std::string& mode, std::uint64_t samples,
                     std::uint64_t seed, const std::string& backend, int max_arity, std::uint64_t budget) {
    RunOptions o = options(mode, samples, seed, backend, max_arity, budget);
    Report r;
    {
      py::gil_scoped_release nogil;
      r = check_identity(f.ptr(), id, o);
    }
    return to_json(r, false).dump();
  });

  m.def("_suite", [](std::vector<PyField*> fs, const std::vector<std::string>& ids, const std::string& mode,
                     std::uint64_t samples, std::uint64_t seed, const std::string& backend, int max_arity,
                     std::uint64_t budget, unsigned threads) {
    RunOptions o = options(mode, samples, seed, backend, max_arity, budget);
    o.threads = threads;
    std::vector<FieldPtr> ptrs;
    for (auto* f : fs) ptrs.push_back(f->ptr());
    SuiteReport s;
    {
      py::gil_scoped_release nogil;
      s = run_suite(ptrs, ids, o);
    }
    nlohmann::json reps = nlohmann::json::array();
    for (const auto& r : s.reports) reps.push_back(to_json(r, false));
    return nlohmann::json{{"reports", reps}, {"digest", s.digest}}.dump();
  });

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code;
    {
      py::gil_scoped_release nogil;
      code = run_cli(args, out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Runs the command-line tool in-process; returns (exit code, stdout, stderr)");
}
