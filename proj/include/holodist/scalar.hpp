#pragma once

// Exact coefficient arithmetic: Gaussian rationals and Laurent polynomials
// in the formal unit tau (standing for 2*pi*i).

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace holodist {

using Rational = mpq_class;

/// Thrown when an operation's precondition is violated by its arguments.
class KernelError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long n) : re_(n) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re, Rational im = 0);

  static GaussianRational i() { return {0, 1}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_integer() const { return is_real() && re_.get_den() == 1; }
  /// Requires is_integer(); throws otherwise.
  long to_long() const;

  GaussianRational conj() const { return {re_, -im_}; }
  GaussianRational operator-() const { return {-re_, -im_}; }

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// "p/q", "r/s*i" or "p/q+r/s*i".
  std::string str() const;

 private:
  Rational re_{0};
  Rational im_{0};
};

/// Total order on C: lexicographic on (Re a, |Im a|, Im a).
std::strong_ordering cx_cmp(const GaussianRational& a, const GaussianRational& b);

inline bool cx_less(const GaussianRational& a, const GaussianRational& b) { return cx_cmp(a, b) < 0; }
inline bool cx_leq(const GaussianRational& a, const GaussianRational& b) { return cx_cmp(a, b) <= 0; }
inline const GaussianRational& cx_max(const GaussianRational& a, const GaussianRational& b) {
  return cx_less(a, b) ? b : a;
}

/// Comparator for ordered containers keyed by complex exponents.
struct CxLess {
  bool operator()(const GaussianRational& a, const GaussianRational& b) const { return cx_less(a, b); }
};

/// Largest integer n with n <= gamma in the cx order; equals floor(Re gamma).
long cx_floor(const GaussianRational& gamma);

/// True iff -1 <= alpha < 0 in the cx order (equivalently -1 <= Re alpha < 0).
bool in_fundamental_domain(const GaussianRational& alpha);

std::string rational_str(const Rational& q);
Rational parse_rational(const std::string& text);
/// Accepts the forms printed by GaussianRational::str().
GaussianRational parse_gaussian(const std::string& text);

/// Finite sum  sum_k c_k tau^k  with c_k Gaussian rational, k in Z.
class Scalar {
 public:
  using Terms = std::map<int, GaussianRational>;

  Scalar() = default;
  Scalar(long n) : Scalar(GaussianRational(n)) {}  // NOLINT(google-explicit-constructor)
  Scalar(const GaussianRational& c, int tau_power = 0);  // NOLINT(google-explicit-constructor)

  static Scalar tau(int power = 1) { return {GaussianRational(1), power}; }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Coefficient of tau^k.
  GaussianRational coeff(int k) const;
  /// True when exactly one tau power carries a coefficient.
  bool is_monomial() const { return terms_.size() == 1; }

  /// i -> -i, tau^k -> (-1)^k tau^k.
  Scalar conj() const;
  Scalar operator-() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.terms_ == b.terms_; }

  /// Exact inverse; only monomials are invertible.
  Scalar inverse() const;

  /// Sum of "c*tau^k" terms, e.g. "3*tau", "1/2 - i*tau^2", "0".
  std::string str() const;

 private:
  void add_term(int k, const GaussianRational& c);
  Terms terms_;
};

}  // namespace holodist
