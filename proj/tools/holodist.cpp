// holodist: command-line front end to the kernel.
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "holodist/barlet.hpp"
#include "holodist/io.hpp"
#include "holodist/mellin.hpp"
#include "holodist/parse.hpp"
#include "holodist/quiver.hpp"
#include "holodist/selftest.hpp"
#include "holodist/sesqui.hpp"
#include "holodist/vfilt.hpp"

using namespace holodist;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

bool g_json = false;

void emit(const Json& j, const std::string& text) {
  if (g_json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
  }
}

BiOrder parse_biorder(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (ch != '(' && ch != ')' && ch != ' ') s += ch;
  size_t comma = s.find(',');
  if (comma == std::string::npos) throw KernelError("bi-order '" + text + "': expected 'a,b'");
  return {parse_gaussian(s.substr(0, comma)), parse_gaussian(s.substr(comma + 1))};
}

std::string matrix_lines(const ScalarMat& m) {
  std::string out;
  for (size_t r = 0; r < m.rows(); ++r) {
    out += "  [";
    for (size_t c = 0; c < m.cols(); ++c) out += (c ? ", " : "") + m(r, c).str();
    out += "]\n";
  }
  if (m.rows() == 0) out += "  (empty)\n";
  return out;
}

std::string matrix_lines(const Mat& m) { return matrix_lines(to_scalar(m)); }

Json ledger_json(const PoleLedger& l) { return ledger_to_json(l); }

// ---- verbs --------------------------------------------------------------

int cmd_germ(const std::string& expr) {
  Germ g = parse_germ(expr);
  emit(Json{{"germ", g.str()}}, g.str());
  return kOk;
}

int cmd_orders(const std::string& expr) {
  Germ g = parse_germ(expr);
  BiOrder o = v_orders(g);
  emit(Json{{"germ", g.str()}, {"orders", biorder_to_json(o)}}, o.str());
  return kOk;
}

int cmd_class(const std::string& expr, const std::string& order) {
  Germ g = parse_germ(expr);
  BiOrder o = parse_biorder(order);
  Germ c = graded_class(g, o);
  emit(Json{{"order", biorder_to_json(o)}, {"class", c.str()}}, c.str());
  return kOk;
}

int cmd_L(const std::string& expr, const std::string& alpha) {
  Germ g = parse_germ(expr);
  GaussianRational a = parse_gaussian(alpha);
  Scalar v = L_alpha(g, a);
  emit(Json{{"alpha", a.str()}, {"L", v.str()}}, v.str());
  return kOk;
}

int cmd_mellin(const std::string& expr, long kp, long kpp, bool residue, const std::string& alpha) {
  Germ g = parse_germ(expr);
  if (residue) {
    GaussianRational a = parse_gaussian(alpha);
    auto [L, res] = residue_vs_L(g, a);
    emit(Json{{"alpha", a.str()}, {"L", L.str()}, {"residue", res.str()}},
         "L = " + L.str() + "\nRes = " + res.str());
    return kOk;
  }
  PoleLedger l = mellin_ledger(g, kp, kpp);
  emit(Json{{"kprime", kp}, {"ksecond", kpp}, {"ledger", ledger_json(l)}}, l.is_empty() ? "(no poles)" : l.str());
  return kOk;
}

int cmd_module_check(const std::string& file) {
  VGradedModule m = module_from_json(read_json_file(file));
  auto bad = check_module(m);
  std::string text = bad.empty() ? "OK" : "INVALID";
  for (const auto& b : bad) text += "\n  " + b;
  emit(Json{{"valid", bad.empty()}, {"violations", bad}}, text);
  return bad.empty() ? kOk : kFail;
}

int cmd_module_psi(const std::string& file, const std::string& alpha, int p) {
  VGradedModule m = module_from_json(read_json_file(file));
  require_valid(m);
  GaussianRational a = parse_gaussian(alpha);
  NilSpace s = m.psi_at(a);
  int thr = stabilization_threshold(s.N);
  if (p < 0) p = thr;
  StabilityReport rep = check_stable(s.N, p);
  Filtration f = monodromy_filtration(s.N);
  Json gr = Json::object();
  std::string grs;
  for (long k = f.lo; k <= f.hi; ++k) {
    gr[std::to_string(k)] = f.gr_dim(k);
    grs += " " + std::to_string(k) + ":" + std::to_string(f.gr_dim(k));
  }
  std::vector<size_t> jt = jordan_type(s.N);
  std::string jts;
  for (size_t b : jt) jts += (jts.empty() ? "" : ",") + std::to_string(b);
  Json j{{"alpha", a.str()},  {"dim", s.dim},     {"jordan_type", jt},       {"threshold", thr},
         {"p", p},            {"stable", rep.ok}, {"ker_T", rep.ker_dim},   {"coker_T", rep.coker_dim},
         {"gr_dims", gr},     {"detail", rep.detail}};
  std::string text = "alpha = " + a.str() + "  dim = " + std::to_string(s.dim) + "  jordan = [" + jts +
                     "]\nmonodromy gr dims:" + grs + "\nthreshold p = " + std::to_string(thr) + "\np = " +
                     std::to_string(p) + ": dim ker T = " + std::to_string(rep.ker_dim) +
                     ", dim coker T = " + std::to_string(rep.coker_dim) + " -> " +
                     (rep.ok ? "stable (witnesses are isomorphisms)" : "NOT stable: " + rep.detail);
  emit(j, text);
  return rep.ok ? kOk : kFail;
}

int cmd_module_dual(const std::string& file) {
  VGradedModule m = module_from_json(read_json_file(file));
  require_valid(m);
  std::cout << module_to_json(hermitian_dual_quiver(m)).dump(2) << "\n";
  return kOk;
}

int cmd_module_localize(const std::string& file, bool co) {
  VGradedModule m = module_from_json(read_json_file(file));
  require_valid(m);
  std::cout << module_to_json(co ? colocalize_quiver(m) : localize_quiver(m)).dump(2) << "\n";
  return kOk;
}

int cmd_module_cohomology(const std::string& file) {
  VGradedModule m = module_from_json(read_json_file(file));
  require_valid(m);
  Cohomology plus = h_i_plus(m), dag = h_i_dagger(m);
  Json j{{"ker_var", plus.ker.dim}, {"coker_var", plus.coker.dim}, {"ker_can", dag.ker.dim}, {"coker_can", dag.coker.dim}};
  emit(j, "i^+ : dim ker var = " + std::to_string(plus.ker.dim) + ", dim coker var = " + std::to_string(plus.coker.dim) +
              "\ni^dagger : dim ker can = " + std::to_string(dag.ker.dim) +
              ", dim coker can = " + std::to_string(dag.coker.dim));
  return kOk;
}

std::vector<GaussianRational> pairing_alphas(const DistPairing& P, const std::string& alpha) {
  if (!alpha.empty()) return {parse_gaussian(alpha)};
  std::map<GaussianRational, int, CxLess> all;
  for (const auto& [a, s] : P.left.psi) all[a];
  for (const auto& [a, s] : P.right.psi) all[a];
  for (const auto& [a, s] : P.psi) all[a];
  std::vector<GaussianRational> out;
  for (const auto& [a, unused] : all) out.push_back(a);
  return out;
}

int cmd_pairing_psi(const std::string& file, const std::string& alpha) {
  DistPairing P = pairing_from_json(read_json_file(file));
  Json j = Json::object();
  std::string text;
  for (const auto& a : pairing_alphas(P, alpha)) {
    ScalarMat G = psi_S(P, a);
    j[a.str()] = scalar_matrix_to_json(G);
    text += "alpha = " + a.str() + ":\n" + matrix_lines(G);
    if (G.is_square() && G.rows() > 0) text += "  hermitian sign: " + std::to_string(hermitian_sign(G)) + "\n";
  }
  emit(j, text);
  return kOk;
}

int cmd_pairing_phi(const std::string& file) {
  DistPairing P = pairing_from_json(read_json_file(file));
  ScalarMat G = phi_S(P);
  emit(Json{{"phi", scalar_matrix_to_json(G)}}, "phi:\n" + matrix_lines(G));
  return kOk;
}

int cmd_pairing_props(const std::string& file) {
  DistPairing P = pairing_from_json(read_json_file(file));
  bool all = true;
  Json arr = Json::array();
  std::string text;
  for (const auto& c : check_propS(P)) {
    all = all && c.ok;
    arr.push_back({{"identity", c.name}, {"ok", c.ok}, {"detail", c.detail}});
    text += std::string(c.ok ? "PASS " : "FAIL ") + c.name + (c.ok ? "" : "\n     " + c.detail) + "\n";
  }
  emit(Json{{"all_pass", all}, {"checks", arr}}, text);
  return all ? kOk : kFail;
}

int cmd_pairing_cor(const std::string& file) {
  DistPairing P = pairing_from_json(read_json_file(file));
  CorReport rep = check_cor_sesqui(P);
  std::string text = std::string("full pairings nondegenerate: ") + (rep.full_nondegenerate ? "yes" : "no") +
                     "\nprimitive pairings nondegenerate: " + (rep.primitive_nondegenerate ? "yes" : "no") +
                     "\nequivalence: " + (rep.equivalent() ? "HOLDS" : "FAILS");
  for (const auto& n : rep.notes) text += "\n  " + n;
  emit(Json{{"full_nondegenerate", rep.full_nondegenerate},
            {"primitive_nondegenerate", rep.primitive_nondegenerate},
            {"equivalent", rep.equivalent()},
            {"notes", rep.notes}},
       text);
  return rep.equivalent() ? kOk : kFail;
}

int cmd_pairing_two_route(const std::string& file, int p_opt) {
  DistPairing P = pairing_from_json(read_json_file(file));
  bool equal = true;
  Json arr = Json::array();
  std::string detail;
  for (const auto& [a, S] : P.psi) {
    int thr = std::max(stabilization_threshold(P.left.psi_at(a).N), stabilization_threshold(P.right.psi_at(a).N));
    int p = p_opt < 0 ? thr : p_opt;
    ScalarMat lhs = psi_S(P, a), rhs = psi_S_via_Malphap(P, a, p);
    bool eq = lhs == rhs;
    equal = equal && eq;
    arr.push_back({{"alpha", a.str()}, {"p", p}, {"L_route", scalar_matrix_to_json(lhs)},
                   {"M_route", scalar_matrix_to_json(rhs)}, {"equal", eq}});
    if (!eq) detail += "\nalpha = " + a.str() + ":\n L-route\n" + matrix_lines(lhs) + " M-route\n" + matrix_lines(rhs);
  }
  emit(Json{{"equal", equal}, {"blocks", arr}}, (equal ? "EQUAL" : "DIFFERENT") + detail);
  return equal ? kOk : kFail;
}

int cmd_barlet_ledger(const std::string& fexpr, long window, const std::string& form) {
  MonomialMap f = parse_monomial_map(fexpr);
  std::string form_text = form;
  if (form_text.empty()) {
    form_text = "a=";
    for (size_t i = 0; i < f.n(); ++i) form_text += i ? ",0" : "0";
  }
  ProductTestForm phi = parse_test_form(form_text, f.n());
  PoleLedger l = I_ledger(f, phi).window(window);
  emit(Json{{"f", f.str()}, {"form", phi.str()}, {"window", window}, {"ledger", ledger_json(l)}, {"max_order", l.max_order()}},
       "f = " + f.str() + "  form " + phi.str() + "  window [-" + std::to_string(window) + ", 0)\n" +
           (l.is_empty() ? "(no poles)" : l.str()) + "max order = " + std::to_string(l.max_order()));
  return kOk;
}

int cmd_barlet_check(const std::string& manifest_path) {
  bool all = true;
  Json arr = Json::array();
  std::string text;
  for (const auto& r : check_barlet_manifest(manifest_path)) {
    all = all && r.ok;
    arr.push_back({{"f", r.f}, {"alpha", r.alpha.str()}, {"declared", r.declared}, {"predicted", r.predicted},
                   {"observed", r.observed}, {"witness", r.witness}, {"ok", r.ok}});
    text += std::string(r.ok ? "PASS " : "FAIL ") + r.f + " alpha " + r.alpha.str() + ": predicted " +
            std::to_string(r.predicted) + " (declared " + std::to_string(r.declared) + "), observed max order " +
            std::to_string(r.observed) + (r.witness.empty() ? "" : " via " + r.witness) + "\n";
  }
  emit(Json{{"all_pass", all}, {"fixtures", arr}}, text);
  return all ? kOk : kFail;
}

int cmd_barlet_tangle(const std::string& file) {
  VGradedModule m = module_from_json(read_json_file(file));
  TanglingReport t = detect_tangling(m.can, m.var);
  emit(Json{{"tangled", t.tangled}, {"ker_v", t.ker_v_dim}, {"coker_c", t.coker_c_dim}, {"induced_rank", t.induced_rank}},
       std::string(t.tangled ? "TANGLED" : "NOT TANGLED") + ": dim ker v = " + std::to_string(t.ker_v_dim) +
           ", dim coker c = " + std::to_string(t.coker_c_dim) + ", rank(ker v -> coker c) = " +
           std::to_string(t.induced_rank));
  return kOk;
}

int cmd_selftest(const SelftestOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  auto results = run_selftest(opt);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool all = true;
  Json arr = Json::array();
  std::ostringstream text;
  text << "seed " << opt.seed << (opt.quick ? " (quick)" : "") << "\n";
  for (const auto& r : results) {
    all = all && r.ok();
    Json j{{"property", r.name}, {"passed", r.passed}, {"total", r.total}, {"ok", r.ok()}};
    if (!r.first_failure.empty()) j["first_failure"] = r.first_failure;
    for (const auto& [k, v] : r.counters) j["counters"][k] = v;
    arr.push_back(j);
    text << (r.ok() ? "PASS " : "FAIL ") << r.name << " " << r.passed << "/" << r.total;
    for (const auto& [k, v] : r.counters) text << " [" << k << ": " << v << "]";
    if (!r.first_failure.empty()) text << "\n     " << r.first_failure;
    text << "\n";
  }
  text << (all ? "all properties pass" : "FAILURES") << " (" << static_cast<int>(secs * 1000) << " ms)";
  emit(Json{{"seed", opt.seed}, {"quick", opt.quick}, {"all_pass", all}, {"properties", arr}}, text.str());
  return all ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact calculus of regular holonomic distributions in one variable"};
  app.require_subcommand(1);
  app.add_flag("--json", g_json, "Machine-readable output");
  std::function<int()> action;

  std::string expr, alpha, order, file, fexpr, form;
  long kp = 0, kpp = 0, window = 5;
  int p = -1;
  bool residue = false, co = false;

  auto* germ = app.add_subcommand("germ", "Print the canonical form of a germ");
  germ->add_option("expr", expr, "Germ expression")->required();
  germ->callback([&] { action = [&] { return cmd_germ(expr); }; });

  auto* orders = app.add_subcommand("orders", "Bi-order (a', a'') of a germ");
  orders->add_option("expr", expr)->required();
  orders->callback([&] { action = [&] { return cmd_orders(expr); }; });

  auto* cls = app.add_subcommand("class", "Graded class of a germ at a bi-order");
  cls->add_option("expr", expr)->required();
  cls->add_option("-o,--order", order, "Bi-order 'a,b'")->required();
  cls->callback([&] { action = [&] { return cmd_class(expr, order); }; });

  auto* L = app.add_subcommand("L", "Coefficient functional L_alpha");
  L->add_option("-a,--alpha", alpha, "Exponent in [-1,0]")->required()->allow_extra_args(false);
  L->add_option("expr", expr)->required();
  L->callback([&] { action = [&] { return cmd_L(expr, alpha); }; });

  auto* mellin = app.add_subcommand("mellin", "Pole ledger of J^{(k',k'')}");
  mellin->add_option("expr", expr)->required();
  mellin->add_option("--kp", kp, "k'");
  mellin->add_option("--kpp", kpp, "k''");
  mellin->add_flag("--residue", residue, "Compare L_alpha with the residue at alpha");
  mellin->add_option("-a,--alpha", alpha, "Exponent for --residue");
  mellin->callback([&] {
    if (residue && alpha.empty()) throw CLI::ValidationError("--residue needs --alpha");
    action = [&] { return cmd_mellin(expr, kp, kpp, residue, alpha); };
  });

  auto* module = app.add_subcommand("module", "Quiver modules (JSON)");
  module->require_subcommand(1);
  auto* mcheck = module->add_subcommand("check", "Check var can = N_{-1}, can var = N_0");
  mcheck->add_option("file", file)->required();
  mcheck->callback([&] { action = [&] { return cmd_module_check(file); }; });
  auto* mpsi = module->add_subcommand("psi", "Monodromy data and stabilized psi limit at alpha");
  mpsi->add_option("file", file)->required();
  mpsi->add_option("-a,--alpha", alpha, "Exponent")->required();
  mpsi->add_option("-p", p, "Extension length (default: the threshold)");
  mpsi->callback([&] { action = [&] { return cmd_module_psi(file, alpha, p); }; });
  auto* mdual = module->add_subcommand("dual", "Hermitian dual quiver");
  mdual->add_option("file", file)->required();
  mdual->callback([&] { action = [&] { return cmd_module_dual(file); }; });
  auto* mloc = module->add_subcommand("localize", "Localized (or --co: colocalized) quiver");
  mloc->add_option("file", file)->required();
  mloc->add_flag("--co", co, "Colocalize instead");
  mloc->callback([&] { action = [&] { return cmd_module_localize(file, co); }; });
  auto* mcoh = module->add_subcommand("cohomology", "Kernels and cokernels of var and can");
  mcoh->add_option("file", file)->required();
  mcoh->callback([&] { action = [&] { return cmd_module_cohomology(file); }; });

  auto* pairing = app.add_subcommand("pairing", "Germ-valued sesquilinear pairings (JSON)");
  pairing->require_subcommand(1);
  auto* ppsi = pairing->add_subcommand("psi", "psi_lambda S at each alpha");
  ppsi->add_option("file", file)->required();
  ppsi->add_option("-a,--alpha", alpha, "Only this exponent");
  ppsi->callback([&] { action = [&] { return cmd_pairing_psi(file, alpha); }; });
  auto* pphi = pairing->add_subcommand("phi", "phi_1 S");
  pphi->add_option("file", file)->required();
  pphi->callback([&] { action = [&] { return cmd_pairing_phi(file); }; });
  auto* pprops = pairing->add_subcommand("check-props", "The four N / can / Var compatibilities");
  pprops->add_option("file", file)->required();
  pprops->callback([&] { action = [&] { return cmd_pairing_props(file); }; });
  auto* pcor = pairing->add_subcommand("check-cor", "Full versus primitive nondegeneracy");
  pcor->add_option("file", file)->required();
  pcor->callback([&] { action = [&] { return cmd_pairing_cor(file); }; });
  auto* ptwo = pairing->add_subcommand("two-route", "psi S via L_alpha versus via M_{alpha,p}");
  ptwo->add_option("file", file)->required();
  ptwo->add_option("-p", p, "Extension length (default: the threshold)");
  ptwo->callback([&] { action = [&] { return cmd_pairing_two_route(file, p); }; });

  auto* barlet = app.add_subcommand("barlet", "Poles of int |f|^{2s} phi for monomial f");
  barlet->require_subcommand(1);
  auto* bled = barlet->add_subcommand("ledger", "Ledger of I_phi in a window");
  bled->add_option("-f", fexpr, "Monomial, e.g. x^2*y")->required();
  bled->add_option("--window", window, "Report poles with -K <= Re s < 0")->check(CLI::PositiveNumber);
  bled->add_option("--form", form, "Test form 'a=..' or 'a=..;b=..' (default radial a=0)");
  bled->callback([&] { action = [&] { return cmd_barlet_ledger(fexpr, window, form); }; });
  auto* bchk = barlet->add_subcommand("check", "Compare fixtures against observed pole orders");
  bchk->add_option("manifest", file)->required();
  bchk->callback([&] { action = [&] { return cmd_barlet_check(file); }; });
  auto* btan = barlet->add_subcommand("tangle", "Tangling test on a module's can and var");
  btan->add_option("file", file)->required();
  btan->callback([&] { action = [&] { return cmd_barlet_tangle(file); }; });

  SelftestOptions st;
  auto* self = app.add_subcommand("selftest", "Run the invariant suite");
  self->add_option("--seed", st.seed, "Random seed");
  self->add_flag("--quick", st.quick, "Reduced sample sizes");
  self->add_option("--threads", st.threads, "Worker threads (0: all cores)");
  self->add_option("--filter", st.filter, "Only properties whose name contains this");
  self->callback([&] { action = [&] { return cmd_selftest(st); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  try {
    return action();
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
