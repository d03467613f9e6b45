#include "holodist/vfilt.hpp"

namespace holodist {

BiOrder term_order(const MonoKey& k) {
  return {k.alpha - GaussianRational(k.a), k.alpha - GaussianRational(k.b)};
}

BiOrder term_order(const DeltaKey& k) { return {GaussianRational(k.first), GaussianRational(k.second)}; }

BiOrder v_orders(const Germ& g) {
  if (g.is_zero()) throw KernelError("v_orders: zero germ has no order");
  bool first = true;
  BiOrder out;
  auto absorb = [&](const BiOrder& o) {
    if (first) {
      out = o;
      first = false;
      return;
    }
    out.aprime = cx_max(out.aprime, o.aprime);
    out.asecond = cx_max(out.asecond, o.asecond);
  };
  for (const auto& [k, c] : g.moderate()) absorb(term_order(k));
  for (const auto& [k, c] : g.delta()) absorb(term_order(k));
  return out;
}

bool in_V(const Germ& g, const BiOrder& o) { return g.is_zero() || v_orders(g).leq(o); }

Germ graded_class(const Germ& g, const BiOrder& o) {
  if (!in_V(g, o)) throw KernelError("graded_class: order " + v_orders(g).str() + " exceeds " + o.str());
  Germ out;
  for (const auto& [k, c] : g.moderate())
    if (term_order(k) == o) out.add_monomial(k, c);
  for (const auto& [k, c] : g.delta())
    if (term_order(k) == o) out.add_dirac(k.first, k.second, c);
  return out;
}

bool same_class(const Germ& g1, const Germ& g2, const BiOrder& o) { return graded_class(g1 - g2, o).is_zero(); }

Germ nilpotent_N(const Germ& g, const GaussianRational& alpha, Side side) {
  if (!in_V(g, {alpha, alpha}))
    throw KernelError("nilpotent_N: order " + v_orders(g).str() + " exceeds (" + alpha.str() + ", " +
                      alpha.str() + ")");
  return side == Side::holo ? -euler_t(g, alpha) : -euler_tbar(g, alpha);
}

Scalar L_alpha(const Germ& g, const GaussianRational& alpha) {
  if (cx_less(alpha, GaussianRational(-1)) || cx_less(GaussianRational(0), alpha))
    throw KernelError("L_alpha: alpha must satisfy -1 <= alpha <= 0, got " + alpha.str());
  if (!in_V(g, {alpha, alpha})) return {};
  if (alpha.is_zero()) return g.coeff(0, 0);
  return Scalar::tau() * g.coeff(MonoKey{0, 0, alpha, 0});
}

}  // namespace holodist
