#include "holodist/mellin.hpp"

#include <algorithm>
#include <cstdlib>

namespace holodist {

namespace {

void trim(PoleLedger::Principal& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

GaussianRational power(const GaussianRational& x, long n) {
  GaussianRational out(1);
  GaussianRational base = n >= 0 ? x : GaussianRational(1) / x;
  for (long k = 0; k < std::labs(n); ++k) out *= base;
  return out;
}

Rational binomial(long n, long k) {
  mpz_class c;
  mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(c);
}

}  // namespace

void PoleLedger::add_term(const GaussianRational& s0, int m, const Scalar& c) {
  if (m < 1) throw KernelError("pole order must be positive");
  if (c.is_zero()) return;
  Principal& p = entries_[s0];
  if (static_cast<int>(p.size()) < m) p.resize(m);
  p[m - 1] += c;
  trim(p);
  if (p.empty()) entries_.erase(s0);
}

PoleLedger PoleLedger::operator-() const { return Scalar(-1) * *this; }

PoleLedger& PoleLedger::operator+=(const PoleLedger& o) {
  for (const auto& [s0, p] : o.entries_)
    for (size_t m = 0; m < p.size(); ++m) add_term(s0, static_cast<int>(m + 1), p[m]);
  return *this;
}

PoleLedger& PoleLedger::operator-=(const PoleLedger& o) { return *this += -o; }

PoleLedger operator*(const Scalar& c, const PoleLedger& l) {
  PoleLedger out;
  for (const auto& [s0, p] : l.entries_)
    for (size_t m = 0; m < p.size(); ++m) out.add_term(s0, static_cast<int>(m + 1), c * p[m]);
  return out;
}

PoleLedger PoleLedger::translated(const GaussianRational& shift) const {
  PoleLedger out;
  for (const auto& [s0, p] : entries_) out.entries_.emplace(s0 - shift, p);
  return out;
}

PoleLedger PoleLedger::substituted(long m) const {
  if (m == 0) throw KernelError("substitution s -> 0*s");
  PoleLedger out;
  GaussianRational mm(m);
  for (const auto& [s0, p] : entries_) {
    // (m s - s0)^{-k} = m^{-k} (s - s0/m)^{-k}
    for (size_t k = 0; k < p.size(); ++k)
      out.add_term(s0 / mm, static_cast<int>(k + 1), Scalar(power(mm, -static_cast<long>(k + 1))) * p[k]);
  }
  return out;
}

PoleLedger PoleLedger::window(long K) const {
  PoleLedger out;
  for (const auto& [s0, p] : entries_)
    if (s0.re() >= -K && s0.re() < 0) out.entries_.emplace(s0, p);
  return out;
}

PoleLedger PoleLedger::conj() const {
  PoleLedger out;
  for (const auto& [s0, p] : entries_) {
    Principal q;
    for (const auto& c : p) q.push_back(c.conj());
    out.entries_.emplace(s0.conj(), q);
  }
  return out;
}

int PoleLedger::order_at(const GaussianRational& s0) const {
  auto it = entries_.find(s0);
  return it == entries_.end() ? 0 : static_cast<int>(it->second.size());
}

int PoleLedger::max_order() const {
  int out = 0;
  for (const auto& [s0, p] : entries_) out = std::max(out, static_cast<int>(p.size()));
  return out;
}

Scalar PoleLedger::residue(const GaussianRational& s0) const {
  auto it = entries_.find(s0);
  return it == entries_.end() ? Scalar() : it->second[0];
}

std::vector<Scalar> PoleLedger::laurent(const GaussianRational& z, int nmin, int nmax) const {
  std::vector<Scalar> out(nmax >= nmin ? nmax - nmin + 1 : 0);
  for (const auto& [s0, p] : entries_) {
    if (s0 == z) {
      for (size_t m = 0; m < p.size(); ++m) {
        int n = -static_cast<int>(m + 1);
        if (n >= nmin && n <= nmax) out[n - nmin] += p[m];
      }
      continue;
    }
    // (h + d)^{-m} = sum_n binom(-m, n) d^{-m-n} h^n, d = z - s0
    GaussianRational d = z - s0;
    for (size_t mi = 0; mi < p.size(); ++mi) {
      long m = static_cast<long>(mi + 1);
      for (int n = std::max(nmin, 0); n <= nmax; ++n) {
        Rational b = binomial(m + n - 1, n);
        if (n % 2 == 1) b = -b;
        out[n - nmin] += Scalar(GaussianRational(b) * power(d, -m - n)) * p[mi];
      }
    }
  }
  return out;
}

std::string PoleLedger::str() const {
  std::string out;
  for (const auto& [s0, p] : entries_) {
    out += "s0 = " + s0.str() + " order = " + std::to_string(p.size()) + " :";
    for (size_t m = p.size(); m-- > 0;) out += (m + 1 == p.size() ? " " : ", ") + p[m].str();
    out += "\n";
  }
  return out;
}

PoleLedger product(const PoleLedger& a, const PoleLedger& b) {
  // Both factors are proper rational functions, so the product equals the sum
  // of its principal parts at the union of the poles.
  PoleLedger out;
  std::map<GaussianRational, int, CxLess> poles;
  for (const auto& [s0, p] : a.entries()) poles[s0];
  for (const auto& [s0, p] : b.entries()) poles[s0];
  for (const auto& [z, unused] : poles) {
    int oa = a.order_at(z);
    int ob = b.order_at(z);
    std::vector<Scalar> la = a.laurent(z, -oa, ob - 1);
    std::vector<Scalar> lb = b.laurent(z, -ob, oa - 1);
    for (int k = 1; k <= oa + ob; ++k) {
      Scalar c;
      for (int i = -oa; i <= ob - 1; ++i) {
        int j = -k - i;
        if (j < -ob || j > oa - 1) continue;
        c += la[i + oa] * lb[j + ob];
      }
      out.add_term(z, k, c);
    }
  }
  return out;
}

PoleLedger mellin_ledger(const Germ& g, long kprime, long ksecond) {
  PoleLedger out;
  for (const auto& [k, c] : g.moderate()) {
    // Angular integration kills everything but a + k' = b + k''.
    if (k.a + kprime != k.b + ksecond) continue;
    GaussianRational s0 = k.alpha - GaussianRational(k.a + kprime);
    // int_0^1 r^{2x-1} (log r^2)^p / p! dr * 2 pi * (-2i) = tau (-1)^{p+1} / x^{p+1}
    Scalar top = Scalar::tau() * c * (k.p % 2 == 0 ? Scalar(-1) : Scalar(1));
    out.add_term(s0, k.p + 1, top);
  }
  return out;
}

bool shift_identity_check(const Germ& g, long kprime, long ksecond) {
  if (kprime < ksecond) throw KernelError("shift_identity_check requires k' >= k''");
  return mellin_ledger(g, kprime, ksecond) ==
         mellin_ledger(g, kprime - ksecond, 0).translated(GaussianRational(ksecond));
}

std::pair<long, long> mellin_k_range(const Germ& g) {
  long A = 0;
  for (const auto& [k, c] : g.moderate()) A = std::max({A, std::labs(k.a), std::labs(k.b)});
  return {-2 * A - 1, 2 * A + 1};
}

bool vorder_from_mellin(const Germ& g, const GaussianRational& aprime, const GaussianRational& asecond) {
  auto [lo, hi] = mellin_k_range(g);
  auto poles_ok = [&](long kp, long ks) {
    GaussianRational b1 = aprime - GaussianRational(kp);
    GaussianRational b2 = asecond - GaussianRational(ks);
    const GaussianRational& bound = cx_less(b1, b2) ? b1 : b2;
    PoleLedger l = mellin_ledger(g, kp, ks);
    for (const auto& [s0, p] : l.entries())
      if (!cx_leq(s0, bound)) return false;
    return true;
  };
  for (long k = lo; k <= hi; ++k)
    if (!poles_ok(k, 0) || !poles_ok(0, k)) return false;
  return true;
}

std::pair<Scalar, Scalar> residue_vs_L(const Germ& g, const GaussianRational& alpha) {
  if (!in_fundamental_domain(alpha)) throw KernelError("residue_vs_L: alpha must satisfy -1 <= alpha < 0");
  if (!in_V(g, {alpha, alpha}))
    throw KernelError("residue_vs_L: order " + v_orders(g).str() + " exceeds (" + alpha.str() + ", " +
                      alpha.str() + ")");
  return {L_alpha(g, alpha), mellin_ledger(g, 0, 0).residue(alpha)};
}

}  // namespace holodist
