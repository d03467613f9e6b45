#include "holodist/selftest.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <thread>

#include "holodist/barlet.hpp"
#include "holodist/io.hpp"
#include "holodist/mellin.hpp"
#include "holodist/parse.hpp"
#include "holodist/vfilt.hpp"

namespace holodist {

namespace {

const GaussianRational kMinusOne(-1);
const GaussianRational kZero(0);

using Trial = std::function<std::string(Rng&)>;

PropertyResult repeat(Rng& rng, size_t n, const Trial& one) {
  PropertyResult r;
  for (size_t k = 0; k < n; ++k) {
    std::string why;
    try {
      why = one(rng);
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    ++r.total;
    if (why.empty()) {
      ++r.passed;
    } else if (r.first_failure.empty()) {
      r.first_failure = "trial " + std::to_string(k) + ": " + why;
    }
  }
  return r;
}

std::string neq(const std::string& what, const Germ& a, const Germ& b) {
  return a == b ? "" : what + ": " + a.str() + " != " + b.str();
}

// Keeps the terms of g (as single-term germs) accepted by `keep`.
template <class Pred>
Germ filter_terms(const Germ& g, Pred keep) {
  Germ out;
  for (const auto& [k, c] : g.moderate()) {
    Germ t;
    t.add_monomial(k, c);
    if (keep(t)) out += t;
  }
  for (const auto& [k, c] : g.delta()) {
    Germ t = Germ::dirac(k.first, k.second, c);
    if (keep(t)) out += t;
  }
  return out;
}

bool strictly_below_first(const Germ& h, const BiOrder& o) {
  if (h.is_zero()) return true;
  BiOrder v = v_orders(h);
  return cx_less(v.aprime, o.aprime) && cx_leq(v.asecond, o.asecond);
}

bool strictly_below_second(const Germ& h, const BiOrder& o) {
  if (h.is_zero()) return true;
  BiOrder v = v_orders(h);
  return cx_leq(v.aprime, o.aprime) && cx_less(v.asecond, o.asecond);
}

int max_log_power(const Germ& g) {
  int p = 0;
  for (const auto& [k, c] : g.moderate()) p = std::max(p, k.p);
  return p;
}

// d_tbar of a lattice monomial by rewriting it as a free d_t-image and commuting.
Germ dtbar_by_recursion(const MonoKey& k) {
  Germ m = Germ::monomial(k.a, k.b, k.alpha, k.p);
  if (!(k.alpha == kMinusOne) || k.a >= 0) return d_tbar(m);
  if (k.a == -1) return d_t(dtbar_by_recursion({0, k.b, kMinusOne, k.p + 1}));
  MonoKey y{k.a + 1, k.b, kMinusOne, k.p};
  Germ dy = d_t(Germ::monomial(y.a, y.b, y.alpha, y.p));
  Germ D = dy - localize(dy);
  Germ num = d_t(dtbar_by_recursion(y)) - d_tbar(D);
  if (k.p > 0) num -= dtbar_by_recursion({k.a, k.b, kMinusOne, k.p - 1});
  return Scalar(GaussianRational(1) / GaussianRational(k.a + 1)) * num;
}

// Mirror image: d_t of a lattice monomial through the antiholomorphic recursion.
Germ dt_by_recursion(const MonoKey& k) {
  return conj_germ(dtbar_by_recursion({k.b, k.a, k.alpha.conj(), k.p}));
}

GaussianRational rand_bound(Rng& rng, const GaussianRational& near) {
  static const Rational shifts[] = {Rational(-1), Rational(-1, 2), Rational(0), Rational(0), Rational(1, 3),
                                    Rational(1)};
  return near + GaussianRational(shifts[rand_int(rng, 0, 5)]);
}

// ---- germ ---------------------------------------------------------------

PropertyResult prop_uap(Rng& rng, size_t n) {
  return repeat(rng, n, [](Rng& r) -> std::string {
    GaussianRational a = rand_alpha(r);
    int p = static_cast<int>(rand_int(r, 0, 6));
    Germ u = Germ::monomial(0, 0, a, p);
    Germ lower = p > 0 ? Germ::monomial(0, 0, a, p - 1) : Germ();
    std::string w = neq("(d_t t + alpha) u(" + a.str() + "," + std::to_string(p) + ")", euler_t(u, a), lower);
    return w.empty() ? neq("(d_tb tb + alpha) u", euler_tbar(u, a), lower) : w;
  });
}

PropertyResult prop_delta_bridge(Rng& rng, size_t n) {
  return repeat(rng, n, [](Rng&) -> std::string {
    Germ lhs = d_t(d_tbar(Germ::monomial(0, 0, kMinusOne, 1)));
    return neq("d_t d_tb u(-1,1)", lhs, Germ::dirac(0, 0, -Scalar::tau()));
  });
}

PropertyResult prop_commutators(Rng& rng, size_t n) {
  return repeat(rng, n, [](Rng& r) -> std::string {
    GermShape s;
    s.lattice_bias = 0.7;
    Germ g = rand_germ(r, s);
    std::string w;
    if (w.empty()) w = neq("[d_t, t]", d_t(mul_t(g)) - mul_t(d_t(g)), g);
    if (w.empty()) w = neq("[d_t, tb]", d_t(mul_tbar(g)), mul_tbar(d_t(g)));
    if (w.empty()) w = neq("[d_tb, tb]", d_tbar(mul_tbar(g)) - mul_tbar(d_tbar(g)), g);
    if (w.empty()) w = neq("[d_tb, t]", d_tbar(mul_t(g)), mul_t(d_tbar(g)));
    if (w.empty()) w = neq("[d_t, d_tb]", d_t(d_tbar(g)), d_tbar(d_t(g)));
    return w.empty() ? "" : w + " on g = " + g.str();
  });
}

PropertyResult prop_confluence(Rng& rng, size_t n) {
  return repeat(rng, n, [](Rng& r) -> std::string {
    MonoKey k = rand_lattice_key(r, 3, 2);
    Germ m = Germ::monomial(k.a, k.b, k.alpha, k.p);
    std::string w = neq("d_tb of " + m.str() + " by recursion", dtbar_by_recursion(k), d_tbar(m));
    return w.empty() ? neq("d_t of " + m.str() + " by recursion", dt_by_recursion(k), d_t(m)) : w;
  });
}

PropertyResult prop_conj(Rng& rng, size_t n) {
  return repeat(rng, n, [](Rng& r) -> std::string {
    Germ g = rand_germ(r);
    std::string w = neq("conj conj", conj_germ(conj_germ(g)), g);
    if (w.empty()) w = neq("conj d_t", conj_germ(d_t(g)), d_tbar(conj_germ(g)));
    if (w.empty()) w = neq("conj t", conj_germ(mul_t(g)), mul_tbar(conj_germ(g)));
    return w.empty() ? "" : w + " on g = " + g.str();
  });
}

PropertyResult prop_products(Rng& rng, size_t n) {
  return repeat(rng, n, [](Rng& r) -> std::string {
    GermShape s;
    s.allow_delta = false;
    s.max_terms = 3;
    Germ a = rand_germ(r, s), b = rand_germ(r, s), c = rand_germ(r, s);
    std::string w = neq("commutativity", mul_germ(a, b), mul_germ(b, a));
    if (w.empty()) w = neq("associativity", mul_germ(mul_germ(a, b), c), mul_germ(a, mul_germ(b, c)));
    if (w.empty()) w = neq("unit", mul_germ(a, Germ::t_power(0, 0)), a);
    // Leibniz for the free derivative on the moderate model.
    if (w.empty())
      w = neq("Leibniz (free)", d_t_free(mul_germ(a, b)), mul_germ(d_t_free(a), b) + mul_germ(a, d_t_free(b)));
    return w;
  });
}

PropertyResult prop_localize(Rng& rng, size_t n) {
  return repeat(rng, n, [](Rng& r) -> std::string {
    Germ g = rand_germ(r);
    std::string w = neq("localize d_t", localize(d_t(g)), d_t_free(localize(g)));
    if (w.empty()) w = neq("localize d_tb", localize(d_tbar(g)), d_tbar_free(localize(g)));
    if (w.empty()) w = neq("idempotent", localize(localize(g)), localize(g));
    return w;
  });
}

// ---- scalar -------------------------------------------------------------

PropertyResult prop_order(Rng& rng, size_t n) {
  return repeat(rng, n, [](Rng& r) -> std::string {
    GaussianRational x = rand_gaussian(r), y = rand_gaussian(r), z = rand_gaussian(r);
    GaussianRational a(rand_rational(r));
    if ((cx_cmp(x, y) == 0) != (x == y)) return "antisymmetry at " + x.str() + ", " + y.str();
    if (cx_less(x, y) == cx_less(y, x) && !(x == y)) return "totality at " + x.str() + ", " + y.str();
    if (cx_leq(x, y) && cx_leq(y, z) && !cx_leq(x, z)) return "transitivity";
    if (x.is_real() && y.is_real() && cx_less(x, y) != (x.re() < y.re())) return "(a) real order";
    if (cx_less(x, a) != (x.re() < a.re())) return "(b) at " + x.str() + " vs " + a.str();
    if (cx_leq(x, y) != cx_leq(x + a, y + a)) return "(c) translation";
    bool dom = cx_leq(GaussianRational(-1), x) && cx_less(x, kZero);
    if (dom != (x.re() >= -1 && x.re() < 0)) return "fundamental domain at " + x.str();
    long k = rand_int(r, -5, 5);
    if (cx_floor(x + GaussianRational(k)) != cx_floor(x) + k) return "floor shift at " + x.str();
    GaussianRational f(cx_floor(x));
    if (!cx_leq(f, x) || cx_leq(f + GaussianRational(1), x)) return "floor at " + x.str();
    Scalar s = rand_scalar(r), t = rand_scalar(r);
    if (!(s.conj().conj() == s)) return "conj involutive";
    if (!((s * t).conj() == s.conj() * t.conj())) return "conj multiplicative";
    return "";
  });
}

// ---- vfilt --------------------------------------------------------------

PropertyResult prop_vaamo(Rng& rng, size_t n) {
  return repeat(rng, n, [](Rng& r) -> std::string {
    Germ g = rand_germ(r);
    BiOrder v = v_orders(g);
    BiOrder o{rand_bound(r, v.aprime), rand_bound(r, v.asecond)};
    bool expect = true;
    for (const auto& [k, c] : g.moderate())
      if (k.a < -cx_floor(o.aprime - k.alpha) || k.b < -cx_floor(o.asecond - k.alpha)) expect = false;
    for (const auto& [k, c] : g.delta())
      if (!cx_leq(GaussianRational(k.first), o.aprime) || !cx_leq(GaussianRational(k.second), o.asecond))
        expect = false;
    if (in_V(g, o) != expect) return "membership of " + g.str() + " in V" + o.str();
    if (expect && !(o.aprime - o.asecond).is_integer() && !graded_class(g, o).is_zero())
      return "gr" + o.str() + " should vanish";
    return "";
  });
}

PropertyResult prop_42_1(Rng& rng, size_t n) {
  return repeat(rng, n, [](Rng& r) -> std::string {
    Germ g = rand_germ(r);
    BiOrder v = v_orders(g);
    if (!in_V(mul_t(g), {v.aprime - GaussianRational(1), v.asecond})) return "t V not in V_{a'-1}";
    if (!in_V(mul_tbar(g), {v.aprime, v.asecond - GaussianRational(1)})) return "tb V not in V_{a''-1}";
    // Onto for a' < 0: solve t x = g inside V_{a'+1, a''}.
    if (cx_less(v.aprime, kZero)) {
      Germ x = mul_t_power(g, -1, 0);
      if (!(mul_t(x) == g)) return "t x != g for " + g.str();
      if (!in_V(x, {v.aprime + GaussianRational(1), v.asecond})) return "preimage order for " + g.str();
    }
    if (cx_less(v.asecond, kZero)) {
      Germ x = mul_t_power(g, 0, -1);
      if (!(mul_tbar(x) == g)) return "tb x != g for " + g.str();
      if (!in_V(x, {v.aprime, v.asecond + GaussianRational(1)})) return "tb-preimage order for " + g.str();
    }
    return "";
  });
}

PropertyResult prop_42_2(Rng& rng, size_t n) {
  return repeat(rng, n, [](Rng& r) -> std::string {
    Germ g = rand_germ(r);
    BiOrder v = v_orders(g);
    if (!in_V(d_t(g), {v.aprime + GaussianRational(1), v.asecond})) return "d_t raises a' by more than 1: " + g.str();
    if (!in_V(d_tbar(g), {v.aprime, v.asecond + GaussianRational(1)})) return "d_tb raises a'' by more than 1";
    return "";
  });
}

// Whether some power k <= kmax of (E + alpha) pushes g strictly below o in one slot.
bool pushes_below(const Germ& g, const BiOrder& o, bool first, int kmax) {
  Germ h = g;
  for (int k = 0; k <= kmax; ++k) {
    if (first ? strictly_below_first(h, o) : strictly_below_second(h, o)) return true;
    h = first ? euler_t(h, o.aprime) : euler_tbar(h, o.asecond);
  }
  return false;
}

PropertyResult prop_42_3(Rng& rng, size_t n) {
  return repeat(rng, n, [](Rng& r) -> std::string {
    Germ g = rand_germ(r);
    BiOrder v = v_orders(g);
    int K = max_log_power(g) + 3;
    // Membership at the exact order: both slots are pushed below.
    if (!pushes_below(g, v, true, K) || !pushes_below(g, v, false, K)) return "no power kills gr of " + g.str();
    // Below the order in one slot the criterion must fail.
    GaussianRational d(Rational(rand_int(r, 1, 3), 2));
    BiOrder lo1{v.aprime - d, v.asecond}, lo2{v.aprime, v.asecond - d};
    if (pushes_below(g, lo1, true, K)) return "criterion accepts " + g.str() + " in V" + lo1.str();
    if (pushes_below(g, lo2, false, K)) return "criterion accepts " + g.str() + " in V" + lo2.str();
    return "";
  });
}

// t^i d_t^j (holomorphic) or tb^i d_tb^j, applied to g; V-degree j - i.
Germ apply_op(const Germ& g, int i, int j, bool holo) {
  Germ out = g;
  for (int k = 0; k < j; ++k) out = holo ? d_t(out) : d_tbar(out);
  for (int k = 0; k < i; ++k) out = holo ? mul_t(out) : mul_tbar(out);
  return out;
}

// Coefficient vector of g over (term, tau power) rows, growing `rows` as needed.
void flatten(const Germ& g, std::map<std::string, size_t>& rows, std::vector<std::pair<size_t, GaussianRational>>& out) {
  auto put = [&](const std::string& key, const Scalar& c) {
    for (const auto& [e, x] : c.terms()) {
      auto [it, _] = rows.emplace(key + "|" + std::to_string(e), rows.size());
      out.emplace_back(it->second, x);
    }
  };
  for (const auto& [k, c] : g.moderate()) put(Germ::monomial(k.a, k.b, k.alpha, k.p).str(), c);
  for (const auto& [k, c] : g.delta()) put(Germ::dirac(k.first, k.second).str(), c);
}

// Is `target` a combination of V_{k1}D . V_{k2}Dbar . u(alpha,q), q <= qmax?
// Operators t^i d^j with j - i in {k, k-1} and min(i,j) <= 1 suffice for monomials.
bool generated(const Germ& target, const GaussianRational& alpha, long k1, long k2, int qmax) {
  auto ops = [](long k) {
    std::vector<std::pair<int, int>> v;
    for (long d : {k, k - 1})
      for (int m = 0; m <= 1; ++m) {
        long i = d >= 0 ? m : m - d, j = d >= 0 ? m + d : m;
        v.emplace_back(static_cast<int>(i), static_cast<int>(j));
      }
    return v;
  };
  std::map<std::string, size_t> rows;
  std::vector<std::vector<std::pair<size_t, GaussianRational>>> cols;
  for (int q = 0; q <= qmax; ++q) {
    Germ u = Germ::monomial(0, 0, alpha, q);
    for (auto [i2, j2] : ops(k2)) {
      Germ v = apply_op(u, i2, j2, false);
      for (auto [i1, j1] : ops(k1))
        for (int e : {-1, 0}) {
          cols.emplace_back();
          flatten(Scalar::tau(e) * apply_op(v, i1, j1, true), rows, cols.back());
        }
    }
  }
  std::vector<std::pair<size_t, GaussianRational>> b;
  flatten(target, rows, b);
  Mat m(rows.size(), cols.size()), rhs(rows.size(), 1), x;
  for (size_t c = 0; c < cols.size(); ++c)
    for (const auto& [r, v] : cols[c]) m(r, c) += v;
  for (const auto& [r, v] : b) rhs(r, 0) += v;
  return solve(m, rhs, x);
}

PropertyResult prop_42_4(Rng& rng, size_t n) {
  return repeat(rng, n, [](Rng& r) -> std::string {
    // V_{k'}D . V_{k''}Dbar . u(alpha,p) lies in V_{alpha+k', alpha+k''}.
    GaussianRational a = rand_alpha(r);
    Germ u = Germ::monomial(0, 0, a, static_cast<int>(rand_int(r, 0, 2)));
    Germ img;
    long k1 = -100, k2 = -100;
    for (int t = 0; t < 3; ++t) {
      int i1 = static_cast<int>(rand_int(r, 0, 3)), j1 = static_cast<int>(rand_int(r, 0, 3));
      int i2 = static_cast<int>(rand_int(r, 0, 3)), j2 = static_cast<int>(rand_int(r, 0, 3));
      k1 = std::max<long>(k1, j1 - i1);
      k2 = std::max<long>(k2, j2 - i2);
      img += rand_scalar(r) * apply_op(apply_op(u, i2, j2, false), i1, j1, true);
    }
    BiOrder o{a + k1, a + k2};
    if (!in_V(img, o)) return "image of u(" + a.str() + ") escapes V" + o.str() + ": " + img.str();
    // Conversely each term of a germ is generated at its own order.
    Germ g = rand_germ(r);
    for (const auto& [k, c] : g.moderate())
      if (!generated(Germ::monomial(k.a, k.b, k.alpha, k.p), k.alpha, -k.a, -k.b, k.p + 2))
        return "monomial not generated: " + Germ::monomial(k.a, k.b, k.alpha, k.p).str();
    for (const auto& [k, c] : g.delta())
      if (!generated(Germ::dirac(k.first, k.second), kMinusOne, k.first + 1, k.second + 1, 2))
        return "delta term not generated: " + Germ::dirac(k.first, k.second).str();
    // gr_{a',a''} vanishes when a' - a'' is not an integer.
    if (g.is_zero()) return "";
    BiOrder v = v_orders(g);
    GaussianRational shift = r() % 2 ? GaussianRational(Rational(1, 2)) : GaussianRational(0, Rational(1, 3));
    BiOrder off{v.aprime + shift, v.asecond};
    if (!graded_class(g, off).is_zero()) return "nonzero gr at " + off.str() + " for " + g.str();
    return "";
  });
}

PropertyResult prop_42_5(Rng& rng, size_t n) {
  return repeat(rng, n, [](Rng& r) -> std::string {
    Germ g = rand_germ(r);
    BiOrder v = v_orders(g);
    GaussianRational a = cx_max(v.aprime, v.asecond);
    BiOrder o{a, a};
    Germ nh = nilpotent_N(g, a, Side::holo), na = nilpotent_N(g, a, Side::antiholo);
    if (!same_class(nh, na, o)) return "classes of N differ on " + g.str() + " at " + a.str();
    return "";
  });
}

PropertyResult prop_L_lower(Rng& rng, size_t n) {
  return repeat(rng, n, [](Rng& r) -> std::string {
    GaussianRational a = r() % 5 == 0 ? kZero : rand_alpha(r, false);
    BiOrder o{a, a};
    Germ h = filter_terms(rand_germ(r), [&](const Germ& t) {
      return strictly_below_first(t, o) || strictly_below_second(t, o);
    });
    Scalar L = L_alpha(h, a);
    return L.is_zero() ? "" : "L_" + a.str() + "(" + h.str() + ") = " + L.str();
  });
}

PropertyResult prop_410(Rng& rng, size_t n) {
  return repeat(rng, n, [](Rng& r) -> std::string {
    GermShape s;
    s.lattice_bias = 0.8;
    Germ v = filter_terms(rand_germ(r, s), [](const Germ& t) { return in_V(t, {kMinusOne, kZero}); });
    if (!(L_alpha(-d_t(v), kZero) == L_alpha(mul_tbar(v), kMinusOne)))
      return "L_0(-d_t v) != L_-1(tb v) for v = " + v.str();
    Germ w = filter_terms(rand_germ(r, s), [](const Germ& t) { return in_V(t, {kZero, kMinusOne}); });
    if (!(L_alpha(-d_tbar(w), kZero) == L_alpha(mul_t(w), kMinusOne)))
      return "L_0(-d_tb w) != L_-1(t w) for w = " + w.str();
    return "";
  });
}

// ---- mellin -------------------------------------------------------------

PropertyResult prop_mellin_shift(Rng& rng, size_t n) {
  return repeat(rng, n, [](Rng& r) -> std::string {
    GermShape s;
    s.max_terms = 10;
    Germ g = rand_germ(r, s);
    long k2 = rand_int(r, 0, 4), k1 = rand_int(r, k2, 4);
    if (!shift_identity_check(g, k1, k2)) return "shift identity fails for " + g.str();
    // conj swaps (k', k''); the sign comes from conj(dt^dtb) = -dt^dtb.
    if (!(mellin_ledger(conj_germ(g), k2, k1) == -mellin_ledger(g, k1, k2).conj())) return "conjugation of ledgers";
    // Poles lie on alpha - a - k' lattices with orders p+1.
    for (long kp = -3; kp <= 3; ++kp) {
      PoleLedger l = mellin_ledger(g, kp, 0);
      for (const auto& [s0, pp] : l.entries()) {
        bool found = false;
        for (const auto& [k, c] : g.moderate())
          if ((k.alpha - s0).is_integer() && static_cast<int>(pp.size()) <= k.p + 1) found = true;
        if (!found) return "pole " + s0.str() + " off the exponent lattices";
      }
    }
    return "";
  });
}

PropertyResult prop_46(Rng& rng, size_t n) {
  return repeat(rng, n, [](Rng& r) -> std::string {
    Germ g = rand_germ(r);
    Germ m = localize(g);
    BiOrder base = m.is_zero() ? BiOrder{kMinusOne, kMinusOne} : v_orders(m);
    BiOrder o{rand_bound(r, base.aprime), rand_bound(r, base.asecond)};
    bool direct = in_V(m, o);
    bool mel = vorder_from_mellin(g, o.aprime, o.asecond);
    if (direct != mel)
      return "V" + o.str() + ": orders say " + std::to_string(direct) + ", Mellin says " + std::to_string(mel) +
             " for " + g.str();
    return "";
  });
}

PropertyResult prop_49(Rng& rng, size_t n) {
  // L_alpha(g) = star * Res J^{(0,0)} with one global star = -1.
  auto r = repeat(rng, n, [](Rng& r) -> std::string {
    GaussianRational a = rand_alpha(r, false);
    BiOrder o{a, a};
    GermShape s;
    s.max_terms = 6;
    s.lattice_bias = a == kMinusOne ? 0.7 : 0.2;
    Germ g = filter_terms(rand_germ(r, s), [&](const Germ& t) { return in_V(t, o); });
    g += Germ::monomial(0, 0, a, 0, rand_scalar(r));  // make the residue nonzero
    auto [L, res] = residue_vs_L(g, a);
    if (!(L == -res)) return "alpha " + a.str() + ": L = " + L.str() + ", Res = " + res.str();
    return "";
  });
  return r;
}

// ---- nilalg / quiver ----------------------------------------------------

std::vector<size_t> jordan_gr_dims(const std::vector<size_t>& blocks, long lo, long hi) {
  std::vector<size_t> out(static_cast<size_t>(hi - lo + 1));
  for (size_t s : blocks)
    for (long w = -static_cast<long>(s) + 1; w <= static_cast<long>(s) - 1; w += 2) ++out[w - lo];
  return out;
}

std::string check_filtration(const Mat& N) {
  Filtration f = monodromy_filtration(N);
  for (long k = f.lo - 2; k <= f.hi + 2; ++k) {
    if (!f.at(k - 2).contains(f.at(k).image(N))) return "N M_k not in M_{k-2} at k = " + std::to_string(k);
    if (!f.at(k).contains(f.at(k - 1))) return "not increasing";
  }
  for (long l = 0; l <= f.hi + 1; ++l) {
    Mat Nl = N.pow(static_cast<unsigned>(l));
    if (f.gr_dim(l) != f.gr_dim(-l)) return "gr dims asymmetric at " + std::to_string(l);
    if (!(f.at(l).preimage(Nl, f.at(-l - 1)) == f.at(l - 1))) return "N^l not injective on gr_l, l = " + std::to_string(l);
    if (!(f.at(l).image(Nl) + f.at(-l - 1) == f.at(-l))) return "N^l not onto gr_-l, l = " + std::to_string(l);
  }
  auto blocks = jordan_type(N);
  auto dims = jordan_gr_dims(blocks, f.lo - 1, f.hi + 1);
  for (long k = f.lo - 1; k <= f.hi + 1; ++k)
    if (f.gr_dim(k) != dims[k - f.lo + 1]) return "gr dims disagree with the Jordan type at " + std::to_string(k);
  size_t total = 0;
  for (const auto& pc : lefschetz_decompose(N)) {
    size_t expect = 0;
    for (size_t s : blocks)
      if (static_cast<long>(s) == pc.ell + 2 * pc.k + 1) ++expect;
    if (pc.basis.cols() != expect) return "Lefschetz piece dims disagree with the Jordan type";
    total += pc.basis.cols();
  }
  if (total != N.rows()) return "Lefschetz pieces do not add up";
  return "";
}

PropertyResult prop_monodromy(Rng& rng, size_t n) {
  return repeat(rng, n, [](Rng& r) -> std::string {
    Mat N = rand_nilpotent(r, static_cast<size_t>(rand_int(r, 0, 6)));
    std::string w = check_filtration(N);
    return w.empty() ? "" : w + " for N = " + N.str();
  });
}

PropertyResult prop_stabilization(Rng& rng, size_t n) {
  auto res = repeat(rng, n, [](Rng& r) -> std::string {
    Mat N = rand_nilpotent(r, static_cast<size_t>(rand_int(r, 1, 5)));
    int thr = stabilization_threshold(N);
    for (int p = thr; p <= thr + 1; ++p) {
      StabilityReport rep = check_stable(N, p);
      if (!rep.ok) return "not stable at p = " + std::to_string(p) + ": " + rep.detail;
      PsiLimit lim = psi_limit(N, p);
      ExtendedModule E = build_Malphap(N, p);
      Mat sh = shift_map(E);
      if (!(E.T * lim.a0p).is_zero()) return "a0p does not land in ker T";
      if (!(lim.bp0 * E.T).is_zero()) return "bp0 does not kill im T";
      if (!(sh * lim.a0p == lim.a0p * N)) return "a0p does not intertwine N";
      if (!(lim.bp0 * sh == N * lim.bp0)) return "bp0 does not intertwine N";
    }
    if (thr > 0 && check_stable(N, thr - 1).ok) return "already stable below the threshold " + std::to_string(thr);
    // a and b commute with T and compose to the shift.
    int p = static_cast<int>(rand_int(r, 0, 3));
    ExtendedModule Ep = build_Malphap(N, p), Eq = build_Malphap(N, p + 1);
    Mat a = a_map(Ep, Eq), b = b_map(Eq, Ep);
    if (!(Eq.T * a == a * Ep.T)) return "T a != a T";
    if (!(Ep.T * b == b * Eq.T)) return "T b != b T";
    if (!(b * a == shift_map(Ep))) return "b a != shift";
    return "";
  });
  return res;
}

PropertyResult prop_module_ops(Rng& rng, size_t n) {
  return repeat(rng, n, [](Rng& r) -> std::string {
    VGradedModule m = rand_module(r);
    if (!check_module(m).empty()) return "generator produced an invalid module";
    VGradedModule loc = localize_quiver(m), col = colocalize_quiver(m), dual = hermitian_dual_quiver(m);
    if (!check_module(loc).empty() || !check_module(col).empty() || !check_module(dual).empty())
      return "operation broke the axioms";
    if (!(localize_quiver(loc) == loc) || !(colocalize_quiver(col) == col)) return "not idempotent";
    if (!(hermitian_dual_quiver(dual) == m)) return "dual not involutive";
    if (!(hermitian_dual_quiver(loc) == colocalize_quiver(dual))) return "dual does not exchange j_+ and j_!";
    if (h_i_plus(loc).ker.dim != 0 || h_i_plus(loc).coker.dim != 0) return "var not an iso after localizing";
    if (h_i_dagger(col).ker.dim != 0 || h_i_dagger(col).coker.dim != 0) return "can not an iso after colocalizing";
    return "";
  });
}

// ---- sesqui -------------------------------------------------------------

VGradedModule partner(Rng& rng, const VGradedModule& m) {
  switch (rand_int(rng, 0, 2)) {
    case 0: return hermitian_dual_quiver(m);
    case 1: return m;
    default: return rand_module(rng);
  }
}

PropertyResult prop_two_route(Rng& rng, size_t n) {
  return repeat(rng, n, [](Rng& r) -> std::string {
    VGradedModule left = rand_module(r);
    DistPairing P = rand_pairing(r, left, partner(r, left));
    for (const auto& [a, S] : P.psi) {
      int thr = std::max(stabilization_threshold(P.left.psi_at(a).N), stabilization_threshold(P.right.psi_at(a).N));
      int p = std::max(thr, static_cast<int>(rand_int(r, 0, 3)));
      ScalarMat lhs = psi_S(P, a), rhs = psi_S_via_Malphap(P, a, p);
      if (!(lhs == rhs)) return "alpha " + a.str() + ", p " + std::to_string(p) + ": " + lhs.str() + " vs " + rhs.str();
    }
    return "";
  });
}

PropertyResult prop_propS(Rng& rng, size_t n) {
  size_t nondeg = 0, deg = 0, mutation_caught = 0;
  auto res = repeat(rng, n, [&](Rng& r) -> std::string {
    VGradedModule left = rand_module(r);
    DistPairing P = rand_pairing(r, left, partner(r, left), r() % 2 == 0);
    for (const auto& c : check_propS(P))
      if (!c.ok) return c.name + ": " + c.detail;
    CorReport cor = check_cor_sesqui(P);
    if (!cor.equivalent()) return "Corollary equivalence fails";
    (cor.full_nondegenerate ? nondeg : deg)++;
    // Mutation: perturbing var must be detected whenever it changes Var^T psi_{-1}.
    if (P.left.var.rows() && P.left.var.cols()) {
      DistPairing Q = P;
      Q.left.var(0, 0) += 1;
      ScalarMat G1 = psi_S(P, kMinusOne);
      bool visible = !(to_scalar(Q.left.var.transpose()) * G1 == to_scalar(P.left.var.transpose()) * G1);
      bool flagged = !check_propS(Q)[2].ok;
      if (visible != flagged) return "mutation of var not reflected in identity 3";
      if (flagged) ++mutation_caught;
    }
    return "";
  });
  res.counters = {{"nondegenerate", nondeg}, {"degenerate", deg}, {"mutations caught", mutation_caught}};
  if (res.total >= 10 && (nondeg == 0 || deg == 0) && res.first_failure.empty())
    res.first_failure = "only one side of the equivalence was exercised";
  return res;
}

PropertyResult prop_lemma34(Rng& rng, size_t n) {
  return repeat(rng, n, [](Rng& r) -> std::string {
    GaussianRational a = rand_alpha(r, false);
    int p = static_cast<int>(rand_int(r, 0, 4));
    Germ det = germ_determinant(lemma_pairing_matrix(a, p));
    return det.is_zero() ? "zero determinant at alpha " + a.str() + ", p " + std::to_string(p) : "";
  });
}

PropertyResult prop_hermitian(Rng& rng, size_t n) {
  return repeat(rng, n, [](Rng& r) -> std::string {
    GaussianRational a = rand_alpha(r, false);
    size_t d = static_cast<size_t>(rand_int(r, 1, 3));
    GermMat S(d, d);
    for (size_t i = 0; i < d; ++i)
      for (size_t j = i; j < d; ++j) {
        int p = static_cast<int>(rand_int(r, 0, 1));
        Germ g = Germ::monomial(0, 0, a, p, rand_scalar(r));
        if (i == j) g = g + conj_germ(g);
        S(i, j) = g;
        if (i != j) S(j, i) = conj_germ(g);
      }
    if (!is_hermitian_germ(S)) return "construction is not Hermitian";
    ScalarMat G = L_matrix(S, a);
    int sign = hermitian_sign(G);
    if (sign != -1 && !G.is_zero()) return "psi S of a Hermitian germ matrix has sign " + std::to_string(sign);
    return "";
  });
}

// ---- barlet -------------------------------------------------------------

PropertyResult prop_tangling(Rng& rng, size_t n) {
  return repeat(rng, n, [](Rng& r) -> std::string {
    VGradedModule m = rand_module(r);
    Mat c = m.can, v = m.var;
    TanglingReport t = detect_tangling(c, v);
    Mat P = rand_unimodular(r, c.cols()), Q = rand_unimodular(r, c.rows());
    TanglingReport u = detect_tangling(Q * c * inverse(P), P * v * inverse(Q));
    if (t.tangled != u.tangled || t.ker_v_dim != u.ker_v_dim || t.coker_c_dim != u.coker_c_dim ||
        t.induced_rank != u.induced_rank)
      return "tangling report changed under a change of basis";
    return "";
  });
}

PropertyResult prop_barlet_shift(Rng& rng, size_t n) {
  return repeat(rng, n, [](Rng& r) -> std::string {
    MonomialMap f;
    size_t nv = static_cast<size_t>(rand_int(r, 1, 3));
    for (size_t k = 0; k < nv; ++k) f.exps.push_back(rand_int(r, 1, 2));
    auto fam = radial_family(nv, 2);
    ProductTestForm phi = fam[rand_int(r, 0, static_cast<long>(fam.size()) - 1)];
    long k = rand_int(r, 1, 2);
    PoleLedger before = I_ledger(f, phi), after = I_ledger(f, pole_shift_witness(f, phi, k));
    if (!(after == before.translated(GaussianRational(k)))) return "pole shift by " + std::to_string(k) + " fails";
    return "";
  });
}

// ---- cli ----------------------------------------------------------------

PropertyResult prop_roundtrip(Rng& rng, size_t n) {
  return repeat(rng, n, [](Rng& r) -> std::string {
    GermShape s;
    s.max_terms = 6;
    s.max_abs_exp = 3;
    s.max_p = 4;
    Germ g = rand_germ(r, s);
    Germ back = parse_germ(g.str());
    if (!(back == g)) return "'" + g.str() + "' reparses as '" + back.str() + "'";
    if (back.str() != g.str()) return "printing is not canonical";
    return "";
  });
}

PropertyResult prop_json(Rng& rng, size_t n) {
  return repeat(rng, n, [](Rng& r) -> std::string {
    VGradedModule m = rand_module(r);
    Json jm = module_to_json(m);
    if (!(module_from_json(Json::parse(jm.dump())) == m)) return "module JSON round trip";
    DistPairing P = rand_pairing(r, m, partner(r, m));
    Json jp = pairing_to_json(P);
    Json again = pairing_to_json(pairing_from_json(Json::parse(jp.dump())));
    if (again.dump() != jp.dump()) return "pairing JSON round trip";
    return "";
  });
}

}  // namespace

const std::vector<Property>& properties() {
  static const std::vector<Property> all = {
      {"scalar.order", "scalar", 500, prop_order},
      {"germ.uap", "germ", 200, prop_uap},
      {"germ.delta_bridge", "germ", 1, prop_delta_bridge},
      {"germ.commutators", "germ", 500, prop_commutators},
      {"germ.confluence", "germ", 200, prop_confluence},
      {"germ.conj", "germ", 300, prop_conj},
      {"germ.products", "germ", 200, prop_products},
      {"germ.localize", "germ", 300, prop_localize},
      {"vfilt.eq_Vaamo", "vfilt", 200, prop_vaamo},
      {"vfilt.prop42_1", "vfilt", 200, prop_42_1},
      {"vfilt.prop42_2", "vfilt", 200, prop_42_2},
      {"vfilt.prop42_3", "vfilt", 200, prop_42_3},
      {"vfilt.prop42_4", "vfilt", 200, prop_42_4},
      {"vfilt.prop42_5", "vfilt", 200, prop_42_5},
      {"vfilt.L_vanishes_below", "vfilt", 200, prop_L_lower},
      {"vfilt.prop410", "vfilt", 100, prop_410},
      {"mellin.shift_conj_lattice", "mellin", 200, prop_mellin_shift},
      {"mellin.prop46", "mellin", 300, prop_46},
      {"mellin.prop49", "mellin", 80, prop_49},
      {"nilalg.monodromy", "nilalg", 100, prop_monodromy},
      {"quiver.stabilization", "quiver", 100, prop_stabilization},
      {"quiver.module_ops", "quiver", 100, prop_module_ops},
      {"sesqui.two_route", "sesqui", 100, prop_two_route},
      {"sesqui.propS_cor", "sesqui", 100, prop_propS},
      {"sesqui.lemma34", "sesqui", 40, prop_lemma34},
      {"sesqui.hermitian", "sesqui", 50, prop_hermitian},
      {"barlet.tangling_invariance", "barlet", 100, prop_tangling},
      {"barlet.pole_shift", "barlet", 50, prop_barlet_shift},
      {"cli.germ_roundtrip", "cli", 1000, prop_roundtrip},
      {"cli.json_roundtrip", "cli", 50, prop_json},
  };
  return all;
}

const Property& property(const std::string& name) {
  for (const auto& p : properties())
    if (p.name == name) return p;
  throw KernelError("unknown property " + name);
}

PropertyResult run_property(const Property& p, uint64_t seed, size_t trials) {
  // FNV-1a keeps the per-property streams identical across platforms.
  uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : p.name) h = (h ^ ch) * 1099511628211ull;
  std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32), static_cast<uint32_t>(h),
                    static_cast<uint32_t>(h >> 32)};
  Rng rng(seq);
  PropertyResult r = p.run(rng, trials);
  r.name = p.name;
  return r;
}

std::vector<PropertyResult> run_selftest(const SelftestOptions& opt) {
  std::vector<const Property*> todo;
  for (const auto& p : properties())
    if (opt.filter.empty() || p.name.find(opt.filter) != std::string::npos) todo.push_back(&p);
  std::vector<PropertyResult> out(todo.size());
  unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t k; (k = next++) < todo.size();) {
      size_t n = opt.quick ? std::max<size_t>(std::min<size_t>(3, todo[k]->trials), todo[k]->trials / 5)
                           : todo[k]->trials;
      out[k] = run_property(*todo[k], opt.seed, n);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<size_t>(threads, todo.size()); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace holodist
