// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: acceptance [fixtures-dir]

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "holodist/io.hpp"
#include "holodist/random.hpp"
#include "holodist/selftest.hpp"
#include "oracles.hpp"

#ifndef HOLODIST_FIXTURES
#define HOLODIST_FIXTURES "fixtures"
#endif

using namespace holodist;

namespace {

constexpr uint64_t kSeed = 20240601;

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
  void note(const std::string& s) {
    if (ok) detail = s;
  }
};

// Runs a selftest property at full size; appends its counters to `note`.
bool prop(Outcome& out, const char* name, size_t trials, std::string* note = nullptr) {
  PropertyResult r = run_property(property(name), kSeed, trials);
  if (!r.ok()) {
    out.fail(std::string(name) + " " + std::to_string(r.passed) + "/" + std::to_string(r.total) + ": " +
             r.first_failure);
    return false;
  }
  if (note) {
    *note += std::string(*note == "" ? "" : "; ") + name + " " + std::to_string(r.passed) + "/" +
             std::to_string(r.total);
    for (const auto& [k, v] : r.counters) *note += " [" + k + " " + std::to_string(v) + "]";
  }
  return true;
}

Outcome c1_uap() {
  Outcome o;
  std::string note;
  prop(o, "germ.uap", 200, &note);
  o.note(note);
  return o;
}

Outcome c2_delta_bridge() {
  Outcome o;
  Germ lhs = d_t(d_tbar(Germ::monomial(0, 0, -1, 1)));
  Germ rhs = Germ::dirac(0, 0, -Scalar::tau());
  if (!(lhs == rhs)) o.fail("d_t d_tbar u(-1,1) = " + lhs.str());
  o.note("d_t(d_tbar(u(-1,1))) = " + lhs.str());
  return o;
}

Outcome c3_operator_algebra() {
  Outcome o;
  std::string note;
  prop(o, "germ.commutators", 500, &note) && prop(o, "germ.confluence", 200, &note);
  o.note(note);
  return o;
}

Outcome c4_prop42() {
  Outcome o;
  std::string note;
  for (const char* p : {"vfilt.prop42_1", "vfilt.prop42_2", "vfilt.prop42_3", "vfilt.prop42_4", "vfilt.prop42_5"})
    if (!prop(o, p, 200, &note)) break;
  o.note(note);
  return o;
}

Outcome c5_prop46() {
  Outcome o;
  std::string note;
  prop(o, "mellin.prop46", 300, &note);
  o.note(note);
  return o;
}

Outcome c6_prop49() {
  Outcome o;
  Rng rng(kSeed);
  std::optional<Scalar> star;
  size_t samples = 0;
  for (const auto& a : test_alphas()) {
    BiOrder ord{a, a};
    for (int k = 0; k < 25; ++k) {
      GermShape shape;
      shape.max_terms = 6;
      shape.lattice_bias = a == GaussianRational(-1) ? 0.7 : 0.2;
      Germ raw = rand_germ(rng, shape), g;
      for (const auto& [key, c] : raw.moderate()) {
        Germ t = Germ::monomial(key.a, key.b, key.alpha, key.p, c);
        if (in_V(t, ord)) g += t;
      }
      g += Germ::monomial(0, 0, a, 0, rand_scalar(rng));
      auto [L, res] = residue_vs_L(g, a);
      if (res.is_zero()) continue;
      if (!star && res.is_monomial()) star = L * res.inverse();
      if (star && !(L == *star * res)) {
        o.fail("alpha " + a.str() + ": L = " + L.str() + " but star * Res = " + (*star * res).str());
        return o;
      }
      ++samples;
    }
  }
  if (!star) o.fail("no sample fixed the constant");
  else if (!(*star == Scalar(-1))) o.fail("constant is " + star->str() + ", expected -1");
  o.note("star = " + (star ? star->str() : "?") + " over " + std::to_string(samples) + " germs (25 per alpha)");
  return o;
}

Outcome c7_prop410() {
  Outcome o;
  std::string note;
  prop(o, "vfilt.prop410", 100, &note);
  o.note(note);
  return o;
}

Outcome c8_monodromy() {
  Outcome o;
  size_t exhaustive = 0, random = 0;
  auto compare = [&](const Mat& n) {
    auto flags = oracle::monodromy_flags(n);
    if (flags.size() != 1) {
      o.fail("oracle found " + std::to_string(flags.size()) + " filtrations for " + n.str());
      return false;
    }
    Filtration f = monodromy_filtration(n);
    long d = static_cast<long>(n.rows());
    for (long k = -d; k <= d; ++k)
      if (!(f.at(k) == flags[0][static_cast<size_t>(k + d)])) {
        o.fail("M_" + std::to_string(k) + " differs from the oracle for " + n.str());
        return false;
      }
    return true;
  };
  // all of dim <= 3; dim 4 capped
  for (size_t d = 1; d <= 4; ++d)
    for (const Mat& n : oracle::small_nilpotents(d, d < 4 ? 1000000 : 1500)) {
      if (!compare(n)) return o;
      ++exhaustive;
    }
  Rng rng(kSeed);
  for (int trial = 0; trial < 100; ++trial) {
    size_t d = static_cast<size_t>(rand_int(rng, 1, 6));
    auto blocks = oracle::random_partition(rng, d);
    Mat n = oracle::conjugated_jordan(rng, blocks);
    long D = static_cast<long>(d);
    Filtration f = monodromy_filtration(n);
    auto want = oracle::jordan_gr_dims(blocks, -D, D);
    for (long k = -D; k <= D; ++k)
      if (f.gr_dim(k) != want[static_cast<size_t>(k + D)]) {
        o.fail("gr_" + std::to_string(k) + " dimension differs from the Jordan oracle for " + n.str());
        return o;
      }
    if (jordan_type(n) != blocks) {
      o.fail("jordan_type differs for " + n.str());
      return o;
    }
    ++random;
  }
  o.note(std::to_string(exhaustive) + " enumerated nilpotents over {0,1,-1} (dim 4 capped at 1500), " +
         std::to_string(random) + " random Jordan conjugates up to dim 6");
  return o;
}

Outcome c9_stabilization() {
  Outcome o;
  std::string note;
  prop(o, "quiver.stabilization", 100, &note);
  o.note(note);
  return o;
}

Outcome c10_two_route() {
  Outcome o;
  std::string note;
  prop(o, "sesqui.two_route", 100, &note);
  o.note(note);
  return o;
}

Outcome c11_propS_cor() {
  Outcome o;
  std::string note;
  prop(o, "sesqui.propS_cor", 100, &note);
  o.note(note);
  return o;
}

Outcome c12_lemma34() {
  Outcome o;
  std::string note;
  for (const auto& a : test_alphas())
    for (int p = 0; p <= 4; ++p) {
      Germ det = germ_determinant(lemma_pairing_matrix(a, p));
      if (det.is_zero()) o.fail("zero determinant at alpha " + a.str() + ", p " + std::to_string(p));
      if (a == GaussianRational(Rational(-1, 2)) && (p == 0 || p == 4))
        note += (note.empty() ? "" : "; ") + std::string("det(p=") + std::to_string(p) + ") = " + det.str();
    }
  o.note(note);
  return o;
}

Outcome c13_barlet(const std::string& fixtures) {
  Outcome o;
  // the direct instances
  auto ledger = [](const char* f, const char* phi, size_t n) {
    return I_ledger(parse_monomial_map(f), parse_test_form(phi, n)).window(5);
  };
  for (const auto& phi : radial_family(1, 4)) {
    if (I_ledger(parse_monomial_map("x"), phi).max_order() > 1) o.fail("f = x has a multiple pole for " + phi.str());
    PoleLedger l = I_ledger(parse_monomial_map("x^2"), phi);
    long k = phi.ab[0].first;
    if (l.max_order() != 1 || l.order_at(GaussianRational(Rational(-(k + 1), 2))) != 1)
      o.fail("f = x^2 pole misplaced for " + phi.str());
  }
  if (ledger("x*y", "a=0,0", 2).order_at(-1) != 2) o.fail("f = xy: no double pole at -1");
  // the bundled fixtures
  std::string detail;
  size_t n = 0;
  for (const auto& r : check_barlet_manifest(fixtures + "/barlet/manifest.json")) {
    ++n;
    if (!r.ok)
      o.fail(r.f + ": predicted " + std::to_string(r.predicted) + " declared " + std::to_string(r.declared) +
             " observed " + std::to_string(r.observed));
    detail += (detail.empty() ? "" : ", ") + r.f + " order " + std::to_string(r.observed);
  }
  if (n < 3) o.fail("manifest lists " + std::to_string(n) + " fixtures");
  o.note(detail);
  return o;
}

Outcome c14_tangling() {
  Outcome o;
  Mat c(2, 2), v(2, 2);
  c(0, 0) = 1;
  v(1, 1) = 1;
  if (!detect_tangling(c, v).tangled) o.fail("c = diag(1,0), v = diag(0,1) not tangled");
  if (!detect_tangling(Mat::identity(2), oracle::jordan_matrix({2})).tangled) o.fail("c = id, v = N not tangled");
  if (detect_tangling(Mat::identity(2), Mat::identity(2)).tangled) o.fail("isomorphisms reported tangled");
  std::string note = "worked examples ok";
  prop(o, "barlet.tangling_invariance", 100, &note);
  o.note(note);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::string fixtures = argc > 1 ? argv[1] : HOLODIST_FIXTURES;
  struct Criterion {
    int id;
    const char* title;
    double budget_ms;  // 0: no budget
    std::function<Outcome()> run;
  };
  std::vector<Criterion> all = {
      {1, "eq:uap suite", 1000, c1_uap},
      {2, "delta bridge", 0, c2_delta_bridge},
      {3, "operator algebra and correction confluence", 0, c3_operator_algebra},
      {4, "Prop. 4.2 (1)-(5)", 0, c4_prop42},
      {5, "Prop. 4.6 Mellin V-criterion", 0, c5_prop46},
      {6, "Prop. 4.9 global constant", 0, c6_prop49},
      {7, "Prop. 4.10", 0, c7_prop410},
      {8, "monodromy filtration vs oracles", 0, c8_monodromy},
      {9, "psi_limit stabilization", 0, c9_stabilization},
      {10, "Theorem 4.12 two-route equality", 0, c10_two_route},
      {11, "eq:propS and Corollary 3.7", 0, c11_propS_cor},
      {12, "Lemma 3.4 nondegeneracy", 0, c12_lemma34},
      {13, "Barlet instances and fixtures", 5000, [&] { return c13_barlet(fixtures); }},
      {14, "tangling detection", 0, c14_tangling},
  };
  int failures = 0;
  for (const auto& c : all) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.fail(std::string("exception: ") + e.what());
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_ms > 0 && ms > c.budget_ms) out.fail("took " + std::to_string(ms) + " ms, budget " + std::to_string(c.budget_ms));
    char head[128];
    std::snprintf(head, sizeof head, "%s %2d %-44s %8.1f ms  ", out.ok ? "PASS" : "FAIL", c.id, c.title, ms);
    std::cout << head << out.detail << "\n" << std::flush;
    if (!out.ok) ++failures;
  }
  std::cout << (failures ? std::to_string(failures) + " criteria failed" : "all 14 criteria pass") << "\n";
  return failures ? 1 : 0;
}
