// Python bindings. Exact values cross the boundary as strings ("p/q+r/s*i",
// "3*tau"); modules and pairings as JSON text in the CLI schema.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "holodist/barlet.hpp"
#include "holodist/io.hpp"
#include "holodist/mellin.hpp"
#include "holodist/parse.hpp"
#include "holodist/selftest.hpp"
#include "holodist/sesqui.hpp"
#include "holodist/vfilt.hpp"

namespace py = pybind11;
using namespace holodist;

namespace {

using StrMatrix = std::vector<std::vector<std::string>>;

GaussianRational gr(const std::string& s) { return parse_gaussian(s); }

Mat mat(const StrMatrix& rows) {
  size_t cols = rows.empty() ? 0 : rows.front().size();
  return parse_matrix(rows, cols);
}

StrMatrix strs(const ScalarMat& m) {
  StrMatrix out(m.rows(), std::vector<std::string>(m.cols()));
  for (size_t r = 0; r < m.rows(); ++r)
    for (size_t c = 0; c < m.cols(); ++c) out[r][c] = m(r, c).str();
  return out;
}

py::list ledger_list(const PoleLedger& l) {
  py::list out;
  for (const auto& [s0, pp] : l.entries()) {
    std::vector<std::string> coeffs;
    for (size_t m = pp.size(); m-- > 0;) coeffs.push_back(pp[m].str());
    py::dict d;
    d["s0"] = s0.str();
    d["order"] = pp.size();
    d["coefficients"] = coeffs;  // c_order .. c_1
    out.append(d);
  }
  return out;
}

DistPairing pairing(const std::string& text) { return pairing_from_json(Json::parse(text)); }

}  // namespace

PYBIND11_MODULE(_holodist, m) {
  m.doc() = "Exact calculus of regular holonomic distribution germs on C";
  py::register_exception<KernelError>(m, "KernelError", PyExc_ValueError);

  py::class_<Germ>(m, "Germ")
      .def(py::init([](const std::string& text) { return parse_germ(text); }), py::arg("text") = "0")
      .def("__str__", &Germ::str)
      .def("__repr__", [](const Germ& g) { return "Germ('" + g.str() + "')"; })
      .def("__eq__", [](const Germ& a, const Germ& b) { return a == b; })
      .def("__add__", [](const Germ& a, const Germ& b) { return a + b; })
      .def("__sub__", [](const Germ& a, const Germ& b) { return a - b; })
      .def("__neg__", [](const Germ& a) { return -a; })
      .def("scale", [](const Germ& g, const std::string& c) { return parse_scalar(c) * g; }, py::arg("c"))
      .def("is_zero", &Germ::is_zero)
      .def("is_moderate", &Germ::is_moderate)
      .def("d_t", [](const Germ& g) { return d_t(g); })
      .def("d_tbar", [](const Germ& g) { return d_tbar(g); })
      .def("mul_t", [](const Germ& g) { return mul_t(g); })
      .def("mul_tbar", [](const Germ& g) { return mul_tbar(g); })
      .def("conj", [](const Germ& g) { return conj_germ(g); })
      .def("localize", [](const Germ& g) { return localize(g); })
      .def("__mul__", [](const Germ& a, const Germ& b) { return mul_germ(a, b); })
      .def("orders", [](const Germ& g) {
        BiOrder o = v_orders(g);
        return std::make_pair(o.aprime.str(), o.asecond.str());
      })
      .def("graded_class", [](const Germ& g, const std::string& a1, const std::string& a2) {
        return graded_class(g, {gr(a1), gr(a2)});
      })
      .def("N", [](const Germ& g, const std::string& alpha, bool holo) {
        return nilpotent_N(g, gr(alpha), holo ? Side::holo : Side::antiholo);
      }, py::arg("alpha"), py::arg("holo") = true)
      .def("L", [](const Germ& g, const std::string& alpha) { return L_alpha(g, gr(alpha)).str(); }, py::arg("alpha"))
      .def("mellin", [](const Germ& g, long kp, long ks) { return ledger_list(mellin_ledger(g, kp, ks)); },
           py::arg("kprime") = 0, py::arg("ksecond") = 0)
      .def("in_V_by_mellin", [](const Germ& g, const std::string& a1, const std::string& a2) {
        return vorder_from_mellin(g, gr(a1), gr(a2));
      });

  m.def("parse_germ", &parse_germ, py::arg("text"));
  m.def("make_u", [](const std::string& beta, int p) { return make_u(gr(beta), p); }, py::arg("beta"), py::arg("p"));
  m.def("residue_vs_L", [](const Germ& g, const std::string& alpha) {
    auto [L, res] = residue_vs_L(g, gr(alpha));
    return std::make_pair(L.str(), res.str());
  });

  m.def("jordan_type", [](const StrMatrix& n) { return jordan_type(mat(n)); }, py::arg("N"));
  m.def("monodromy_gr_dims", [](const StrMatrix& n) {
    Mat N = mat(n);
    Filtration f = monodromy_filtration(N);
    std::map<long, size_t> out;
    for (long k = f.lo; k <= f.hi; ++k) out[k] = f.gr_dim(k);
    return out;
  }, py::arg("N"), "Dimensions of gr_k of the monodromy filtration, keyed by k.");
  m.def("stabilization_threshold", [](const StrMatrix& n) { return stabilization_threshold(mat(n)); });

  m.def("_module_check", [](const std::string& text) { return check_module(module_from_json(Json::parse(text))); });
  m.def("_module_dual", [](const std::string& text) {
    return module_to_json(hermitian_dual_quiver(module_from_json(Json::parse(text)))).dump();
  });
  m.def("_psi_S", [](const std::string& text, const std::string& alpha) {
    return strs(psi_S(pairing(text), gr(alpha)));
  });
  m.def("_phi_S", [](const std::string& text) { return strs(phi_S(pairing(text))); });
  m.def("_psi_S_via_Malphap", [](const std::string& text, const std::string& alpha, int p) {
    return strs(psi_S_via_Malphap(pairing(text), gr(alpha), p));
  });
  m.def("_check_propS", [](const std::string& text) {
    std::vector<std::tuple<std::string, bool, std::string>> out;
    for (const auto& c : check_propS(pairing(text))) out.emplace_back(c.name, c.ok, c.detail);
    return out;
  });
  m.def("_check_cor", [](const std::string& text) {
    CorReport r = check_cor_sesqui(pairing(text));
    py::dict d;
    d["full_nondegenerate"] = r.full_nondegenerate;
    d["primitive_nondegenerate"] = r.primitive_nondegenerate;
    d["equivalent"] = r.equivalent();
    d["notes"] = r.notes;
    return d;
  });

  m.def("barlet_ledger", [](const std::string& f, const std::string& form, long window) {
    MonomialMap mm = parse_monomial_map(f);
    std::string phi = form;
    if (phi.empty()) {
      phi = "a=";
      for (size_t i = 0; i < mm.n(); ++i) phi += i ? ",0" : "0";
    }
    return ledger_list(I_ledger(mm, parse_test_form(phi, mm.n())).window(window));
  }, py::arg("f"), py::arg("form") = "", py::arg("window") = 5);
  m.def("predicted_order", [](const StrMatrix& n) { return predicted_order(mat(n)); }, py::arg("N"));
  m.def("detect_tangling", [](const StrMatrix& c, const StrMatrix& v) {
    TanglingReport t = detect_tangling(mat(c), mat(v));
    py::dict d;
    d["tangled"] = t.tangled;
    d["ker_v_dim"] = t.ker_v_dim;
    d["coker_c_dim"] = t.coker_c_dim;
    d["induced_rank"] = t.induced_rank;
    return d;
  }, py::arg("c"), py::arg("v"));

  m.def("selftest", [](uint64_t seed, bool quick, const std::string& filter, unsigned threads) {
    SelftestOptions opt;
    opt.seed = seed;
    opt.quick = quick;
    opt.filter = filter;
    opt.threads = threads;
    std::vector<PropertyResult> res;
    {
      py::gil_scoped_release release;
      res = run_selftest(opt);
    }
    py::list out;
    for (const auto& r : res) {
      py::dict d;
      d["name"] = r.name;
      d["passed"] = r.passed;
      d["total"] = r.total;
      d["ok"] = r.ok();
      d["first_failure"] = r.first_failure;
      out.append(d);
    }
    return out;
  }, py::arg("seed") = 20240601, py::arg("quick") = true, py::arg("filter") = "", py::arg("threads") = 0);
}
