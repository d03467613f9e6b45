#pragma once

// Mellin transforms J^{(k',k'')}(s) = <chi u, t^k' tb^k'' |t|^{2s} dt^dtb> of germs,
// recorded by their principal parts. chi is the indicator of the unit disc, for
// which the transform of a moderate monomial is an exact rational function.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "holodist/germ.hpp"
#include "holodist/vfilt.hpp"

namespace holodist {

class PoleLedger {
 public:
  /// principal[m-1] is the coefficient of (s - s0)^{-m}.
  using Principal = std::vector<Scalar>;
  using Entries = std::map<GaussianRational, Principal, CxLess>;

  PoleLedger() = default;

  void add_term(const GaussianRational& s0, int m, const Scalar& c);
  const Entries& entries() const { return entries_; }
  bool is_empty() const { return entries_.empty(); }

  PoleLedger operator-() const;
  PoleLedger& operator+=(const PoleLedger& o);
  PoleLedger& operator-=(const PoleLedger& o);
  friend PoleLedger operator+(PoleLedger a, const PoleLedger& b) { return a += b; }
  friend PoleLedger operator-(PoleLedger a, const PoleLedger& b) { return a -= b; }
  friend PoleLedger operator*(const Scalar& c, const PoleLedger& l);
  friend bool operator==(const PoleLedger&, const PoleLedger&) = default;

  /// Ledger of s -> F(s + shift).
  PoleLedger translated(const GaussianRational& shift) const;
  /// Ledger of s -> F(m s), m a nonzero integer.
  PoleLedger substituted(long m) const;
  /// Poles with -K <= Re s0 < 0.
  PoleLedger window(long K) const;
  PoleLedger conj() const;

  int order_at(const GaussianRational& s0) const;
  int max_order() const;
  Scalar residue(const GaussianRational& s0) const;

  /// Coefficients of h^n, n = nmin..nmax, in the Laurent expansion at z of the
  /// rational function sum c_m (s - s0)^{-m} (the ledger read with zero entire part).
  std::vector<Scalar> laurent(const GaussianRational& z, int nmin, int nmax) const;

  /// One line per pole: "s0 = <s0> order = <m> : c_m, ..., c_1".
  std::string str() const;

 private:
  Entries entries_;
};

/// Exact product of the rational functions represented by two ledgers.
PoleLedger product(const PoleLedger& a, const PoleLedger& b);

PoleLedger mellin_ledger(const Germ& g, long kprime, long ksecond);

/// ledger(g,k',k'') == ledger(g,k'-k'',0) translated by k''; requires k' >= k''.
bool shift_identity_check(const Germ& g, long kprime, long ksecond);

/// The range of k' (with k'' = 0, and mirrored) used by vorder_from_mellin.
std::pair<long, long> mellin_k_range(const Germ& g);

/// Pole criterion for membership of the moderate image in V_{a',a''}.
bool vorder_from_mellin(const Germ& g, const GaussianRational& aprime, const GaussianRational& asecond);

/// (L_alpha(g), Res_{s=alpha} J^{(0,0)}); requires -1 <= alpha < 0 and g in V_{alpha,alpha}.
std::pair<Scalar, Scalar> residue_vs_L(const Germ& g, const GaussianRational& alpha);

}  // namespace holodist
