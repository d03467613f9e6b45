#pragma once

// Germs at 0 of regular holonomic distributions on C: finite sums of
// moderate monomials  c * t^a tb^b u(alpha,p)  and Dirac terms  c * dt^i dtb^j delta.
//
// u(alpha,p) = |t|^{-2(alpha+1)} (log|t|^2)^p / p!, with -1 <= Re alpha < 0.
// A moderate monomial denotes the canonical finite part: the s^p coefficient at
// s = 0 of the meromorphic family |t|^{2s} t^a tb^b |t|^{-2(alpha+1)}.

#include <map>
#include <string>
#include <utility>

#include "holodist/scalar.hpp"

namespace holodist {

struct MonoKey {
  long a = 0;
  long b = 0;
  GaussianRational alpha{-1};
  int p = 0;

  friend bool operator==(const MonoKey&, const MonoKey&) = default;
};

struct MonoKeyLess {
  bool operator()(const MonoKey& x, const MonoKey& y) const;
};

using DeltaKey = std::pair<int, int>;

class Germ {
 public:
  using Moderate = std::map<MonoKey, Scalar, MonoKeyLess>;
  using Delta = std::map<DeltaKey, Scalar>;

  Germ() = default;

  /// c * t^a tb^b u(alpha,p); alpha must lie in the fundamental domain.
  static Germ monomial(long a, long b, const GaussianRational& alpha, int p, const Scalar& c = 1);
  /// c * dt^i dtb^j delta.
  static Germ dirac(int i, int j, const Scalar& c = 1);
  /// t^a tb^b as a germ (that is, t^a tb^b u(-1,0)).
  static Germ t_power(long a, long b) { return monomial(a, b, -1, 0); }

  const Moderate& moderate() const { return moderate_; }
  const Delta& delta() const { return delta_; }
  bool is_zero() const { return moderate_.empty() && delta_.empty(); }
  bool is_moderate() const { return delta_.empty(); }
  size_t size() const { return moderate_.size() + delta_.size(); }

  Scalar coeff(const MonoKey& k) const;
  Scalar coeff(int i, int j) const;

  void add_monomial(const MonoKey& k, const Scalar& c);
  void add_dirac(int i, int j, const Scalar& c);

  Germ operator-() const;
  Germ& operator+=(const Germ& o);
  Germ& operator-=(const Germ& o);
  friend Germ operator+(Germ a, const Germ& b) { return a += b; }
  friend Germ operator-(Germ a, const Germ& b) { return a -= b; }
  friend Germ operator*(const Scalar& c, const Germ& g);
  friend bool operator==(const Germ& a, const Germ& b) {
    return a.moderate_ == b.moderate_ && a.delta_ == b.delta_;
  }

  /// Canonical text form, reparsable by parse_germ.
  std::string str() const;

 private:
  Moderate moderate_;
  Delta delta_;
};

/// u(beta,p) for arbitrary beta, renormalized: t^m tb^m u(alpha,p) with
/// alpha = beta + m in the fundamental domain.
Germ make_u(const GaussianRational& beta, int p);

inline Germ add(const Germ& a, const Germ& b) { return a + b; }
inline Germ scale(const Scalar& c, const Germ& g) { return c * g; }

Germ mul_t(const Germ& g);
Germ mul_tbar(const Germ& g);
/// Full-model derivatives, including the Dirac corrections on the integer lattice.
Germ d_t(const Germ& g);
Germ d_tbar(const Germ& g);
/// Derivatives of the moderate part only (no Dirac corrections, Dirac part dropped).
Germ d_t_free(const Germ& g);
Germ d_tbar_free(const Germ& g);

/// Product of moderate germs; throws if either factor has a Dirac part.
Germ mul_germ(const Germ& g1, const Germ& g2);
Germ conj_germ(const Germ& g);
/// Image in the moderate model: drops the Dirac part.
Germ localize(const Germ& g);

/// t^a tb^b * g for arbitrary integers (negative powers only on moderate germs).
Germ mul_t_power(const Germ& g, long a, long b);
/// (d_t t + alpha) g and (d_tbar tbar + alpha) g.
Germ euler_t(const Germ& g, const GaussianRational& alpha);
Germ euler_tbar(const Germ& g, const GaussianRational& alpha);

}  // namespace holodist
