#pragma once

// V-bifiltration orders, graded classes, the nilpotent operators on
// gr_{alpha,alpha}, and the coefficient functionals L_alpha.

#include <string>

#include "holodist/germ.hpp"

namespace holodist {

struct BiOrder {
  GaussianRational aprime;
  GaussianRational asecond;

  /// Componentwise <= in the cx order.
  bool leq(const BiOrder& o) const { return cx_leq(aprime, o.aprime) && cx_leq(asecond, o.asecond); }
  friend bool operator==(const BiOrder&, const BiOrder&) = default;
  /// "(p/q, r/s)".
  std::string str() const { return "(" + aprime.str() + ", " + asecond.str() + ")"; }
};

BiOrder term_order(const MonoKey& k);
BiOrder term_order(const DeltaKey& k);

/// Componentwise cx-max of the term orders; throws on the zero germ.
BiOrder v_orders(const Germ& g);
/// Membership in V_{o}; the zero germ lies in every step.
bool in_V(const Germ& g, const BiOrder& o);

/// Sub-sum of the terms of order exactly o; requires v_orders(g) <= o.
Germ graded_class(const Germ& g, const BiOrder& o);
/// Equality of classes in gr_o.
bool same_class(const Germ& g1, const Germ& g2, const BiOrder& o);

enum class Side { holo, antiholo };

/// -(d_t t + alpha) g or -(d_tbar tbar + alpha) g; requires g in V_{alpha,alpha}.
Germ nilpotent_N(const Germ& g, const GaussianRational& alpha, Side side);

/// Coefficient functional on gr_{alpha,alpha}, -1 <= alpha <= 0:
/// tau * coeff of u(alpha,0) for alpha < 0, coeff of delta for alpha = 0;
/// zero when g is not in V_{alpha,alpha}.
Scalar L_alpha(const Germ& g, const GaussianRational& alpha);

}  // namespace holodist
