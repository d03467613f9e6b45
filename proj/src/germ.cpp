#include "holodist/germ.hpp"

namespace holodist {

bool MonoKeyLess::operator()(const MonoKey& x, const MonoKey& y) const {
  if (auto c = cx_cmp(x.alpha, y.alpha); c != 0) return c < 0;
  if (x.p != y.p) return x.p < y.p;
  if (x.a != y.a) return x.a < y.a;
  return x.b < y.b;
}

Germ Germ::monomial(long a, long b, const GaussianRational& alpha, int p, const Scalar& c) {
  if (!in_fundamental_domain(alpha)) throw KernelError("exponent outside [-1,0): " + alpha.str());
  if (p < 0) throw KernelError("negative log power");
  Germ g;
  g.add_monomial({a, b, alpha, p}, c);
  return g;
}

Germ Germ::dirac(int i, int j, const Scalar& c) {
  if (i < 0 || j < 0) throw KernelError("negative derivative order on delta");
  Germ g;
  g.add_dirac(i, j, c);
  return g;
}

Scalar Germ::coeff(const MonoKey& k) const {
  auto it = moderate_.find(k);
  return it == moderate_.end() ? Scalar() : it->second;
}

Scalar Germ::coeff(int i, int j) const {
  auto it = delta_.find({i, j});
  return it == delta_.end() ? Scalar() : it->second;
}

namespace {

template <class Map, class Key>
void accumulate(Map& m, const Key& k, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = m.emplace(k, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) m.erase(it);
}

Scalar factorial(int n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return GaussianRational(Rational(f));
}

Scalar binomial(int n, int k) {
  mpz_class c;
  mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return GaussianRational(Rational(c));
}

// Residue at s = 0 of |t|^{2s} t^{-1-j} tb^{-1-k}, as a multiple of dt^j dtb^k delta:
// -tau (-1)^{j+k} / (j! k!).
Scalar residue_coeff(int j, int k) {
  Scalar c = -Scalar::tau() * ((j + k) % 2 == 0 ? Scalar(1) : Scalar(-1));
  return c * (factorial(j) * factorial(k)).inverse();
}

bool is_minus_one(const GaussianRational& alpha) { return alpha == GaussianRational(-1); }

std::string coeff_prefix(const Scalar& c) {
  if (c == Scalar(1)) return "";
  if (c == Scalar(-1)) return "-";
  if (c.is_monomial()) {
    const GaussianRational& g = c.terms().begin()->second;
    if (g.is_real() || sgn(g.re()) == 0) return c.str() + "*";
  }
  return "(" + c.str() + ")*";
}

void append_term(std::string& out, const std::string& term) {
  if (out.empty()) {
    out = term;
  } else if (term[0] == '-') {
    out += " - " + term.substr(1);
  } else {
    out += " + " + term;
  }
}

}  // namespace

void Germ::add_monomial(const MonoKey& k, const Scalar& c) {
  if (!in_fundamental_domain(k.alpha)) throw KernelError("exponent outside [-1,0): " + k.alpha.str());
  if (k.p < 0) throw KernelError("negative log power");
  accumulate(moderate_, k, c);
}

void Germ::add_dirac(int i, int j, const Scalar& c) {
  if (i < 0 || j < 0) throw KernelError("negative derivative order on delta");
  accumulate(delta_, DeltaKey{i, j}, c);
}

Germ Germ::operator-() const {
  Germ out;
  for (const auto& [k, c] : moderate_) out.moderate_.emplace(k, -c);
  for (const auto& [k, c] : delta_) out.delta_.emplace(k, -c);
  return out;
}

Germ& Germ::operator+=(const Germ& o) {
  for (const auto& [k, c] : o.moderate_) accumulate(moderate_, k, c);
  for (const auto& [k, c] : o.delta_) accumulate(delta_, k, c);
  return *this;
}

Germ& Germ::operator-=(const Germ& o) {
  for (const auto& [k, c] : o.moderate_) accumulate(moderate_, k, -c);
  for (const auto& [k, c] : o.delta_) accumulate(delta_, k, -c);
  return *this;
}

Germ operator*(const Scalar& c, const Germ& g) {
  Germ out;
  if (c.is_zero()) return out;
  for (const auto& [k, x] : g.moderate_) out.moderate_.emplace(k, c * x);
  for (const auto& [k, x] : g.delta_) out.delta_.emplace(k, c * x);
  return out;
}

std::string Germ::str() const {
  if (is_zero()) return "0";
  std::string out;
  for (const auto& [k, c] : moderate_) {
    std::string body;
    if (k.a != 0) body += (k.a == 1 ? std::string("t") : "t^" + std::to_string(k.a)) + "*";
    if (k.b != 0) body += (k.b == 1 ? std::string("tb") : "tb^" + std::to_string(k.b)) + "*";
    body += "u(" + k.alpha.str() + "," + std::to_string(k.p) + ")";
    append_term(out, coeff_prefix(c) + body);
  }
  for (const auto& [k, c] : delta_) {
    append_term(out, coeff_prefix(c) + "d(" + std::to_string(k.first) + "," + std::to_string(k.second) + ")");
  }
  return out;
}

Germ make_u(const GaussianRational& beta, int p) {
  if (p < 0) throw KernelError("make_u: negative log power");
  long fl = cx_floor(beta);
  long m = -fl - 1;
  GaussianRational alpha = beta + GaussianRational(m);
  return Germ::monomial(m, m, alpha, p);
}

Germ mul_t(const Germ& g) {
  Germ out;
  for (const auto& [k, c] : g.moderate()) out.add_monomial({k.a + 1, k.b, k.alpha, k.p}, c);
  for (const auto& [k, c] : g.delta())
    if (k.first > 0) out.add_dirac(k.first - 1, k.second, Scalar(-k.first) * c);
  return out;
}

Germ mul_tbar(const Germ& g) {
  Germ out;
  for (const auto& [k, c] : g.moderate()) out.add_monomial({k.a, k.b + 1, k.alpha, k.p}, c);
  for (const auto& [k, c] : g.delta())
    if (k.second > 0) out.add_dirac(k.first, k.second - 1, Scalar(-k.second) * c);
  return out;
}

namespace {

// d_t of the moderate part via the free rule, optionally with Dirac corrections.
Germ derive_t(const Germ& g, bool corrections) {
  Germ out;
  for (const auto& [k, c] : g.moderate()) {
    GaussianRational factor = GaussianRational(k.a) - k.alpha - GaussianRational(1);
    out.add_monomial({k.a - 1, k.b, k.alpha, k.p}, Scalar(factor) * c);
    if (k.p > 0) out.add_monomial({k.a - 1, k.b, k.alpha, k.p - 1}, c);
    // The p-1 = -1 slot is the residue at s = 0, nonzero only on the integer lattice.
    if (corrections && k.p == 0 && is_minus_one(k.alpha) && k.a <= 0 && k.b <= -1) {
      int j = static_cast<int>(-k.a);
      int l = static_cast<int>(-1 - k.b);
      out.add_dirac(j, l, residue_coeff(j, l) * c);
    }
  }
  if (corrections)
    for (const auto& [k, c] : g.delta()) out.add_dirac(k.first + 1, k.second, c);
  return out;
}

Germ derive_tbar(const Germ& g, bool corrections) {
  Germ out;
  for (const auto& [k, c] : g.moderate()) {
    GaussianRational factor = GaussianRational(k.b) - k.alpha - GaussianRational(1);
    out.add_monomial({k.a, k.b - 1, k.alpha, k.p}, Scalar(factor) * c);
    if (k.p > 0) out.add_monomial({k.a, k.b - 1, k.alpha, k.p - 1}, c);
    if (corrections && k.p == 0 && is_minus_one(k.alpha) && k.a <= -1 && k.b <= 0) {
      int j = static_cast<int>(-1 - k.a);
      int l = static_cast<int>(-k.b);
      out.add_dirac(j, l, residue_coeff(j, l) * c);
    }
  }
  if (corrections)
    for (const auto& [k, c] : g.delta()) out.add_dirac(k.first, k.second + 1, c);
  return out;
}

}  // namespace

Germ d_t(const Germ& g) { return derive_t(g, true); }
Germ d_tbar(const Germ& g) { return derive_tbar(g, true); }
Germ d_t_free(const Germ& g) { return derive_t(g, false); }
Germ d_tbar_free(const Germ& g) { return derive_tbar(g, false); }

Germ mul_germ(const Germ& g1, const Germ& g2) {
  if (!g1.is_moderate() || !g2.is_moderate())
    throw KernelError("mul_germ: product with a Dirac term is undefined");
  Germ out;
  for (const auto& [k1, c1] : g1.moderate()) {
    for (const auto& [k2, c2] : g2.moderate()) {
      Germ u = make_u(k1.alpha + k2.alpha + GaussianRational(1), k1.p + k2.p);
      const auto& [ku, cu] = *u.moderate().begin();
      out.add_monomial({ku.a + k1.a + k2.a, ku.b + k1.b + k2.b, ku.alpha, ku.p},
                       binomial(k1.p + k2.p, k1.p) * c1 * c2);
    }
  }
  return out;
}

Germ conj_germ(const Germ& g) {
  Germ out;
  for (const auto& [k, c] : g.moderate()) out.add_monomial({k.b, k.a, k.alpha.conj(), k.p}, c.conj());
  // conj(dt ^ dtb) = -dt ^ dtb, so the Dirac mass changes sign under conjugation.
  for (const auto& [k, c] : g.delta()) out.add_dirac(k.second, k.first, -c.conj());
  return out;
}

Germ localize(const Germ& g) {
  Germ out;
  for (const auto& [k, c] : g.moderate()) out.add_monomial(k, c);
  return out;
}

Germ mul_t_power(const Germ& g, long a, long b) {
  if ((a < 0 || b < 0) && !g.is_moderate())
    throw KernelError("negative power of t applied to a Dirac term");
  if (g.is_moderate()) {
    Germ out;
    for (const auto& [k, c] : g.moderate()) out.add_monomial({k.a + a, k.b + b, k.alpha, k.p}, c);
    return out;
  }
  Germ out = g;
  for (long n = 0; n < a; ++n) out = mul_t(out);
  for (long n = 0; n < b; ++n) out = mul_tbar(out);
  return out;
}

Germ euler_t(const Germ& g, const GaussianRational& alpha) { return d_t(mul_t(g)) + Scalar(alpha) * g; }
Germ euler_tbar(const Germ& g, const GaussianRational& alpha) {
  return d_tbar(mul_tbar(g)) + Scalar(alpha) * g;
}

}  // namespace holodist
