#pragma once

// Independent oracles for the test suites. Nothing here calls the routine it
// is used to check: ledgers are compared with numeric quadrature, monodromy
// filtrations with an exhaustive search over candidate flags, and Jordan data
// with matrices built from a known block structure.

#include <algorithm>
#include <array>
#include <map>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <optional>
#include <vector>

#include "holodist/mellin.hpp"
#include "holodist/nilalg.hpp"
#include "holodist/random.hpp"
#include "holodist/vfilt.hpp"

// Readable gtest failure output for the exact types.
namespace holodist {
inline void PrintTo(const Germ& g, std::ostream* os) { *os << g.str(); }
inline void PrintTo(const BiOrder& o, std::ostream* os) { *os << o.str(); }
inline void PrintTo(const Scalar& s, std::ostream* os) { *os << s.str(); }
inline void PrintTo(const GaussianRational& z, std::ostream* os) { *os << z.str(); }
}  // namespace holodist

namespace oracle {

using holodist::GaussianRational;
using holodist::Mat;
using holodist::Scalar;
using holodist::Subspace;
using cd = std::complex<double>;

inline const cd kTau{0.0, 2.0 * std::numbers::pi};

inline cd num(const GaussianRational& z) { return {z.re().get_d(), z.im().get_d()}; }

inline cd num(const Scalar& s) {
  cd out = 0;
  for (const auto& [k, c] : s.terms()) out += num(c) * std::pow(kTau, k);
  return out;
}

/// Value at s of sum c_m (s - s0)^{-m}.
inline cd ledger_value(const holodist::PoleLedger& l, cd s) {
  cd out = 0;
  for (const auto& [s0, pp] : l.entries())
    for (size_t m = 1; m <= pp.size(); ++m) out += num(pp[m - 1]) / std::pow(s - num(s0), static_cast<double>(m));
  return out;
}

/// Composite Simpson rule on [lo, hi] with n (even) panels.
inline cd simpson(const std::function<cd(double)>& f, double lo, double hi, int n = 4000) {
  double h = (hi - lo) / n;
  cd acc = f(lo) + f(hi);
  for (int k = 1; k < n; ++k) acc += (k % 2 ? 4.0 : 2.0) * f(lo + k * h);
  return acc * h / 3.0;
}

/// Integral over the unit disc of t^a tb^b |t|^{2s} |t|^{-2(alpha+1)} (log|t|^2)^p / p!
/// against dt^dtb = -2i dx^dy, by quadrature in r = e^{-x} and a trapezoid in theta.
/// Needs Re(s - alpha) + (a + b)/2 > 0.
inline cd disc_integral(long a, long b, cd alpha, int p, cd s) {
  const int nth = 64;
  cd angular = 0;
  for (int k = 0; k < nth; ++k) {
    double th = 2 * std::numbers::pi * k / nth;
    angular += std::exp(cd(0, (a - b) * th));
  }
  angular *= 2 * std::numbers::pi / nth;
  cd expo = static_cast<double>(a + b) + 2.0 * s - 2.0 * alpha;  // r^{expo - 2} r dr
  double fact = std::tgamma(p + 1.0);
  double decay = std::max(0.25, expo.real());
  auto radial = [&](double x) {
    // r = e^{-x}, dr = -r dx; integrand r^{expo-1} (-2x)^p/p! dr -> e^{-expo x} (-2x)^p / p! dx
    return std::exp(-expo * x) * std::pow(-2.0 * x, p) / fact;
  };
  cd rad = simpson(radial, 0.0, 60.0 / decay, 20000);
  return cd(0, -2) * angular * rad;
}

/// Integral over the unit polydisc in C^2 of |x|^{2 m1 s + 2 a1} |y|^{2 m2 s + 2 a2}
/// against (dx^dxb)(dy^dyb), as a nested double quadrature in (log r1, log r2).
inline cd bidisc_integral(long m1, long a1, long m2, long a2, cd s) {
  cd e1 = 2.0 * (static_cast<double>(m1) * s + static_cast<double>(a1) + 1.0);
  cd e2 = 2.0 * (static_cast<double>(m2) * s + static_cast<double>(a2) + 1.0);
  double L1 = 60.0 / std::max(0.25, e1.real()), L2 = 60.0 / std::max(0.25, e2.real());
  auto inner = [&](double x1) {
    return simpson([&](double x2) { return std::exp(-e1 * x1 - e2 * x2); }, 0.0, L2, 2000);
  };
  cd rad = simpson(inner, 0.0, L1, 2000);
  cd angular = 2 * std::numbers::pi * 2 * std::numbers::pi;
  return cd(0, -2) * cd(0, -2) * angular * rad;
}

// ---- monodromy filtration by exhaustive search ----------------------------

inline Mat power(const Mat& n, unsigned k) { return n.pow(k); }

/// All subspaces generated by ker N^a and im N^b under intersection and sum.
inline std::vector<Subspace> candidate_subspaces(const Mat& n) {
  size_t d = n.rows();
  std::vector<Subspace> pool;
  auto add = [&](const Subspace& s) {
    for (const auto& x : pool)
      if (x == s) return false;
    pool.push_back(s);
    return true;
  };
  add(Subspace(d));
  for (unsigned a = 0; a <= d; ++a)
    for (unsigned b = 0; b <= d; ++b) {
      Subspace k = holodist::kernel_space(power(n, a));
      Subspace im = holodist::image_space(power(n, b));
      add(k.intersect(im));
    }
  for (bool grew = true; grew;) {
    grew = false;
    size_t sz = pool.size();
    for (size_t i = 0; i < sz; ++i)
      for (size_t j = i + 1; j < sz; ++j) {
        grew |= add(pool[i] + pool[j]);
        grew |= add(pool[i].intersect(pool[j]));
      }
  }
  return pool;
}

/// Does the flag M_{-d..d} satisfy N M_k in M_{k-2} and N^l : gr_l -> gr_{-l} iso?
inline bool is_monodromy_flag(const Mat& n, const std::vector<Subspace>& flag, long d) {
  size_t dim = n.rows();
  auto at = [&](long k) -> Subspace {
    if (k < -d) return Subspace(dim);
    if (k > d) return Subspace::whole(dim);
    return flag[static_cast<size_t>(k + d)];
  };
  for (long k = -d; k <= d; ++k)
    if (!at(k - 2).contains(at(k).image(n))) return false;
  for (long l = 0; l <= d; ++l) {
    Mat nl = power(n, static_cast<unsigned>(l));
    Subspace src = at(l), below = at(l - 1);
    Subspace dst = at(-l), dst_below = at(-l - 1);
    size_t gr_src = src.dim() - below.dim(), gr_dst = dst.dim() - dst_below.dim();
    if (gr_src != gr_dst) return false;
    if (!dst.contains(src.image(nl))) return false;
    // Injective on gr_l: nl x in M_{-l-1} forces x in M_{l-1}.
    Subspace pre = src.preimage(nl, dst_below);
    if (!below.contains(pre)) return false;
  }
  return true;
}

/// Every flag from the candidate pool meeting the axioms; the caller expects one.
/// The search runs over pool indices with containments tabulated up front.
inline std::vector<std::vector<Subspace>> monodromy_flags(const Mat& n) {
  long d = static_cast<long>(n.rows());
  size_t dim = n.rows();
  auto pool = candidate_subspaces(n);
  size_t m = pool.size(), zero = m;
  for (size_t i = 0; i < m; ++i)
    if (pool[i].dim() == 0) zero = i;
  if (zero == m) {
    pool.push_back(Subspace(dim));
    ++m;
  }
  std::vector<std::vector<char>> inc(m, std::vector<char>(m)), img_in(m, std::vector<char>(m));
  for (size_t i = 0; i < m; ++i) {
    Subspace im = pool[i].image(n);
    for (size_t j = 0; j < m; ++j) {
      inc[i][j] = pool[j].contains(pool[i]);
      img_in[i][j] = pool[j].contains(im);
    }
  }
  std::vector<Mat> powers{Mat::identity(dim)};
  for (long k = 1; k <= d; ++k) powers.push_back(powers.back() * n);
  std::map<std::array<size_t, 5>, bool> iso_cache;
  auto iso = [&](long k, size_t below, size_t src, size_t dst, size_t dst_below) {
    if (pool[src].dim() - pool[below].dim() != pool[dst].dim() - pool[dst_below].dim()) return false;
    std::array<size_t, 5> key{static_cast<size_t>(k), below, src, dst, dst_below};
    if (auto it = iso_cache.find(key); it != iso_cache.end()) return it->second;
    const Mat& nk = powers[static_cast<size_t>(k)];
    bool ok = pool[dst].contains(pool[src].image(nk)) && pool[below].contains(pool[src].preimage(nk, pool[dst_below]));
    return iso_cache[key] = ok;
  };
  std::vector<std::vector<Subspace>> found;
  std::vector<size_t> flag;
  auto at = [&](long k) { return k < -d ? zero : flag[static_cast<size_t>(k + d)]; };
  std::function<void()> dfs = [&] {
    long k = static_cast<long>(flag.size()) - d;  // index being chosen
    if (k > d) {
      std::vector<Subspace> f;
      for (size_t i : flag) f.push_back(pool[i]);
      if (is_monodromy_flag(n, f, d)) found.push_back(f);
      return;
    }
    for (size_t i = 0; i < m; ++i) {
      if (k == d && pool[i].dim() != dim) continue;
      if (!flag.empty() && !inc[flag.back()][i]) continue;
      // N M_k in M_{k-2} can be checked as soon as M_k is placed.
      if (!img_in[i][at(k - 2)]) continue;
      // N^k : gr_k -> gr_{-k} iso; everything it needs is already placed.
      if (k >= 1 && !iso(k, flag.back(), i, at(-k), at(-k - 1))) continue;
      flag.push_back(i);
      dfs();
      flag.pop_back();
    }
  };
  dfs();
  return found;
}

/// Graded dimensions of the monodromy filtration of a nilpotent with the given
/// Jordan blocks: a block of size s contributes to weights -s+1, -s+3, ..., s-1.
inline std::vector<size_t> jordan_gr_dims(const std::vector<size_t>& blocks, long lo, long hi) {
  std::vector<size_t> out(static_cast<size_t>(hi - lo + 1));
  for (size_t s : blocks)
    for (long w = -static_cast<long>(s) + 1; w <= static_cast<long>(s) - 1; w += 2)
      if (w >= lo && w <= hi) ++out[static_cast<size_t>(w - lo)];
  return out;
}

/// Block-diagonal nilpotent in Jordan form (ones on the superdiagonal of each block).
inline Mat jordan_matrix(const std::vector<size_t>& blocks) {
  size_t d = 0;
  for (size_t s : blocks) d += s;
  Mat j(d, d);
  size_t off = 0;
  for (size_t s : blocks) {
    for (size_t k = 0; k + 1 < s; ++k) j(off + k, off + k + 1) = 1;
    off += s;
  }
  return j;
}

/// A random partition of n, decreasing.
inline std::vector<size_t> random_partition(holodist::Rng& rng, size_t n) {
  std::vector<size_t> parts;
  while (n > 0) {
    size_t s = static_cast<size_t>(holodist::rand_int(rng, 1, static_cast<long>(n)));
    parts.push_back(s);
    n -= s;
  }
  std::sort(parts.rbegin(), parts.rend());
  return parts;
}

/// S J S^{-1} with S unimodular: a nilpotent of known Jordan type.
inline Mat conjugated_jordan(holodist::Rng& rng, const std::vector<size_t>& blocks) {
  Mat j = jordan_matrix(blocks);
  Mat s = holodist::rand_unimodular(rng, j.rows());
  return s * j * holodist::inverse(s);
}

/// Enumerates n x n matrices with entries in {0, 1, -1} whose n-th power vanishes,
/// stopping after `cap` hits. Integer arithmetic for the filter.
inline std::vector<Mat> small_nilpotents(size_t n, size_t cap) {
  std::vector<Mat> out;
  size_t cells = n * n;
  std::vector<int> e(cells, 0);
  auto nilpotent = [&] {
    std::vector<long> p(e.begin(), e.end()), q(cells);
    for (size_t step = 1; step < n; ++step) {
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
          long acc = 0;
          for (size_t k = 0; k < n; ++k) acc += p[i * n + k] * e[k * n + j];
          q[i * n + j] = acc;
        }
      p.swap(q);
    }
    for (long x : p)
      if (x != 0) return false;
    return true;
  };
  static const int vals[3] = {0, 1, -1};
  std::vector<int> idx(cells, 0);
  while (out.size() < cap) {
    for (size_t c = 0; c < cells; ++c) e[c] = vals[idx[c]];
    if (nilpotent()) {
      Mat m(n, n);
      for (size_t c = 0; c < cells; ++c) m(c / n, c % n) = e[c];
      out.push_back(m);
    }
    size_t c = 0;
    while (c < cells && ++idx[c] == 3) idx[c++] = 0;
    if (c == cells) break;
  }
  return out;
}

}  // namespace oracle
