#include "holodist/random.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace holodist {

namespace {

const GaussianRational kMinusOne(-1);

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

// Nonzero small integer combination coefficient.
GaussianRational rand_coeff(Rng& rng) {
  GaussianRational c;
  while (c.is_zero()) c = GaussianRational(rand_int(rng, -2, 2), coin(rng, 0.3) ? rand_int(rng, -1, 1) : 0);
  return c;
}

}  // namespace

long rand_int(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

Rational rand_rational(Rng& rng) {
  Rational q(rand_int(rng, -3, 3), rand_int(rng, 1, 3));
  q.canonicalize();
  return q;
}

GaussianRational rand_gaussian(Rng& rng, double real_bias) {
  if (coin(rng, real_bias)) return {rand_rational(rng), 0};
  return {rand_rational(rng), rand_rational(rng)};
}

Scalar rand_scalar(Rng& rng) {
  Scalar s;
  while (s.is_zero()) {
    int n = static_cast<int>(rand_int(rng, 1, 2));
    for (int k = 0; k < n; ++k) s += Scalar(rand_gaussian(rng), static_cast<int>(rand_int(rng, -1, 2)));
  }
  return s;
}

const std::vector<GaussianRational>& test_alphas() {
  static const std::vector<GaussianRational> a = {
      GaussianRational(-1), GaussianRational(Rational(-3, 4)), GaussianRational(Rational(-1, 2)),
      GaussianRational(Rational(-1, 3))};
  return a;
}

GaussianRational rand_alpha(Rng& rng, bool allow_complex) {
  const auto& a = test_alphas();
  GaussianRational out = a[rand_int(rng, 0, static_cast<long>(a.size()) - 1)];
  if (allow_complex && coin(rng, 0.2)) out = GaussianRational(Rational(-1, 2), Rational(rand_int(rng, 1, 2), 3));
  return out;
}

MonoKey rand_lattice_key(Rng& rng, long max_abs_exp, int max_p) {
  return {rand_int(rng, -max_abs_exp, max_abs_exp), rand_int(rng, -max_abs_exp, max_abs_exp), kMinusOne,
          static_cast<int>(rand_int(rng, 0, max_p))};
}

Germ rand_germ(Rng& rng, const GermShape& shape) {
  Germ g;
  int n = static_cast<int>(rand_int(rng, 1, shape.max_terms));
  for (int k = 0; k < n; ++k) {
    if (shape.allow_delta && coin(rng, 0.2)) {
      g.add_dirac(static_cast<int>(rand_int(rng, 0, 2)), static_cast<int>(rand_int(rng, 0, 2)), rand_scalar(rng));
      continue;
    }
    GaussianRational alpha = coin(rng, shape.lattice_bias) ? kMinusOne : rand_alpha(rng, shape.allow_complex);
    g.add_monomial({rand_int(rng, -shape.max_abs_exp, shape.max_abs_exp),
                    rand_int(rng, -shape.max_abs_exp, shape.max_abs_exp), alpha,
                    static_cast<int>(rand_int(rng, 0, shape.max_p))},
                   rand_scalar(rng));
  }
  return g;
}

Mat rand_unimodular(Rng& rng, size_t n) {
  Mat lower = Mat::identity(n);
  Mat upper = Mat::identity(n);
  for (size_t r = 0; r < n; ++r)
    for (size_t c = 0; c < n; ++c) {
      if (r > c) lower(r, c) = rand_int(rng, -1, 1);
      if (r < c) upper(r, c) = rand_int(rng, -1, 1);
    }
  // A random permutation keeps the flag from always being the standard one.
  std::vector<size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  Mat p(n, n);
  for (size_t k = 0; k < n; ++k) p(k, perm[k]) = 1;
  return p * lower * upper;
}

Mat rand_nilpotent(Rng& rng, size_t n) {
  Mat u(n, n);
  double density = coin(rng, 0.5) ? 0.7 : 0.35;
  for (size_t r = 0; r < n; ++r)
    for (size_t c = r + 1; c < n; ++c)
      if (coin(rng, density)) u(r, c) = rand_coeff(rng);
  Mat s = rand_unimodular(rng, n);
  return s * u * inverse(s);
}

VGradedModule rand_module(Rng& rng, const ModuleShape& shape) {
  VGradedModule m;
  size_t d1 = static_cast<size_t>(rand_int(rng, 0, static_cast<long>(shape.max_psi_dim)));
  size_t d0 = static_cast<size_t>(rand_int(rng, 0, static_cast<long>(shape.max_phi_dim)));
  // Interleave the two bases on one line; can and var only move strictly downwards,
  // so both composites are nilpotent.
  std::vector<size_t> pos(d1 + d0);
  std::iota(pos.begin(), pos.end(), 0);
  std::shuffle(pos.begin(), pos.end(), rng);
  auto pos_psi = [&](size_t i) { return pos[i]; };
  auto pos_phi = [&](size_t i) { return pos[d1 + i]; };
  Mat can(d0, d1), var(d1, d0);
  for (size_t r = 0; r < d0; ++r)
    for (size_t c = 0; c < d1; ++c)
      if (pos_phi(r) < pos_psi(c) && coin(rng, 0.6)) can(r, c) = rand_coeff(rng);
  for (size_t r = 0; r < d1; ++r)
    for (size_t c = 0; c < d0; ++c)
      if (pos_psi(r) < pos_phi(c) && coin(rng, 0.6)) var(r, c) = rand_coeff(rng);
  Mat P = rand_unimodular(rng, d1), Q = rand_unimodular(rng, d0);
  Mat Pi = inverse(P), Qi = inverse(Q);
  m.can = Q * can * Pi;
  m.var = P * var * Qi;
  m.psi[kMinusOne] = {d1, m.var * m.can};
  m.phi = {d0, m.can * m.var};
  std::vector<GaussianRational> others(test_alphas().begin() + 1, test_alphas().end());
  std::shuffle(others.begin(), others.end(), rng);
  for (int k = 0; k < shape.extra_alphas && k < static_cast<int>(others.size()); ++k) {
    size_t d = static_cast<size_t>(rand_int(rng, 0, static_cast<long>(shape.max_other_dim)));
    m.psi[others[k]] = {d, rand_nilpotent(rng, d)};
  }
  return m;
}

namespace {

using Unknowns = std::vector<Mat>;

// Kernel of the linear map unknowns -> residuals, as a list of unknown tuples.
std::vector<Unknowns> solve_homogeneous(const std::vector<std::pair<size_t, size_t>>& shapes,
                                        const std::function<std::vector<Mat>(const Unknowns&)>& residual) {
  auto zero = [&] {
    Unknowns u;
    for (auto [r, c] : shapes) u.emplace_back(r, c);
    return u;
  };
  std::vector<std::pair<size_t, std::pair<size_t, size_t>>> slots;
  for (size_t k = 0; k < shapes.size(); ++k)
    for (size_t r = 0; r < shapes[k].first; ++r)
      for (size_t c = 0; c < shapes[k].second; ++c) slots.push_back({k, {r, c}});
  std::vector<Mat> columns;
  size_t rows = 0;
  for (const auto& [k, rc] : slots) {
    Unknowns u = zero();
    u[k](rc.first, rc.second) = 1;
    std::vector<Mat> res = residual(u);
    Mat col(0, 1);
    std::vector<GaussianRational> flat;
    for (const auto& m : res)
      for (size_t r = 0; r < m.rows(); ++r)
        for (size_t c = 0; c < m.cols(); ++c) flat.push_back(m(r, c));
    Mat v(flat.size(), 1);
    for (size_t r = 0; r < flat.size(); ++r) v(r, 0) = flat[r];
    rows = flat.size();
    columns.push_back(v);
  }
  Mat A(rows, slots.size());
  for (size_t j = 0; j < slots.size(); ++j)
    for (size_t r = 0; r < rows; ++r) A(r, j) = columns[j](r, 0);
  Mat ker = slots.empty() ? Mat(0, 0) : kernel(A);
  std::vector<Unknowns> out;
  for (size_t b = 0; b < ker.cols(); ++b) {
    Unknowns u = zero();
    for (size_t j = 0; j < slots.size(); ++j) u[slots[j].first](slots[j].second.first, slots[j].second.second) = ker(j, b);
    out.push_back(u);
  }
  return out;
}

Unknowns combine(Rng& rng, const std::vector<std::pair<size_t, size_t>>& shapes, const std::vector<Unknowns>& basis,
                 bool degenerate) {
  Unknowns u;
  for (auto [r, c] : shapes) u.emplace_back(r, c);
  if (basis.empty()) return u;
  // Degenerate mode keeps a single basis direction (or none).
  size_t keep = degenerate ? static_cast<size_t>(rand_int(rng, 0, 1)) : basis.size();
  std::vector<size_t> order(basis.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  for (size_t n = 0; n < keep; ++n) {
    GaussianRational c = rand_coeff(rng);
    for (size_t k = 0; k < u.size(); ++k) u[k] += c * basis[order[n]][k];
  }
  return u;
}

Germ junk(Rng& rng, const GaussianRational& alpha) {
  // A germ of order strictly below (alpha, alpha) in some slot.
  long a = rand_int(rng, 0, 2), b = rand_int(rng, 0, 2);
  if (a == 0 && b == 0) a = 1;
  return Germ::monomial(a, b, alpha, static_cast<int>(rand_int(rng, 0, 2)), rand_scalar(rng));
}

GermMat scalar_series(size_t rows, size_t cols, const std::function<Mat(int)>& coeff, int qmax,
                      const std::function<Germ(int)>& atom) {
  GermMat out(rows, cols);
  for (int q = 0; q <= qmax; ++q) {
    Mat c = coeff(q);
    if (c.is_zero()) continue;
    Germ g = atom(q);
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < cols; ++j)
        if (!c(i, j).is_zero()) out(i, j) += Scalar(c(i, j)) * g;
  }
  return out;
}

}  // namespace

GermMat psi_block(Rng& rng, const GaussianRational& alpha, const Mat& Nl, const Mat& C, bool with_junk) {
  int qmax = static_cast<int>(std::max(nilpotency_order(Nl), 1u));
  Mat minus_nt = -Nl.transpose();
  GermMat out = scalar_series(
      C.rows(), C.cols(), [&](int q) { return minus_nt.pow(q) * C; }, qmax,
      [&](int q) { return Germ::monomial(0, 0, alpha, q); });
  if (with_junk)
    for (size_t i = 0; i < out.rows(); ++i)
      for (size_t j = 0; j < out.cols(); ++j)
        if (coin(rng, 0.3)) out(i, j) += junk(rng, alpha);
  return out;
}

DistPairing rand_pairing(Rng& rng, const VGradedModule& left, const VGradedModule& right, bool degenerate) {
  require_valid(left);
  require_valid(right);
  DistPairing P;
  P.left = left;
  P.right = right;

  std::map<GaussianRational, int, CxLess> alphas;
  for (const auto& [a, s] : left.psi) alphas[a];
  for (const auto& [a, s] : right.psi) alphas[a];

  // alpha != -1: N_l^T C = C conj(N_r).
  for (const auto& [a, unused] : alphas) {
    if (a == kMinusOne) continue;
    NilSpace L = left.psi_at(a), R = right.psi_at(a);
    std::vector<std::pair<size_t, size_t>> shapes = {{L.dim, R.dim}};
    auto basis = solve_homogeneous(shapes, [&](const Unknowns& u) {
      return std::vector<Mat>{L.N.transpose() * u[0] - u[0] * R.N.conj()};
    });
    Mat C = combine(rng, shapes, basis, degenerate)[0];
    P.psi[a] = psi_block(rng, a, L.N, C);
  }

  // alpha = -1 together with phi.
  NilSpace L1 = left.psi_at(kMinusOne), R1 = right.psi_at(kMinusOne);
  std::vector<std::pair<size_t, size_t>> shapes = {{L1.dim, R1.dim}, {left.phi.dim, right.phi.dim}};
  auto basis = solve_homogeneous(shapes, [&](const Unknowns& u) {
    const Mat& C = u[0];
    const Mat& E = u[1];
    return std::vector<Mat>{L1.N.transpose() * C - C * R1.N.conj(), left.phi.N.transpose() * E - E * right.phi.N.conj(),
                            left.var.transpose() * C - E * right.can.conj(),
                            left.can.transpose() * E - C * right.var.conj()};
  });
  Unknowns ce = combine(rng, shapes, basis, degenerate);
  const Mat& C0 = ce[0];
  const Mat& E0 = ce[1];
  P.psi[kMinusOne] = psi_block(rng, kMinusOne, L1.N, C0);

  // phi: -sum_q E_q d_t d_tbar u(-1,q+1), E_q = (-N_l^T)^q E_0; L_0 of it is tau E_0.
  Mat mphi = -left.phi.N.transpose();
  int qphi = static_cast<int>(std::max(nilpotency_order(left.phi.N), 1u));
  P.phi = scalar_series(
      left.phi.dim, right.phi.dim, [&](int q) { return mphi.pow(q) * E0; }, qphi,
      [](int q) { return -d_t(d_tbar(Germ::monomial(0, 0, kMinusOne, q + 1))); });

  // phi x psi_{-1}: sum_q (X_0 (-conj N_r)^q) t^{-1} u(-1,q), X_0 = var_l^T C_0.
  Mat X0 = left.var.transpose() * C0;
  Mat mr = -R1.N.conj();
  int q1 = static_cast<int>(std::max(nilpotency_order(R1.N), 1u));
  P.phi_psi = scalar_series(
      left.phi.dim, R1.dim, [&](int q) { return X0 * mr.pow(q); }, q1,
      [](int q) { return Germ::monomial(-1, 0, kMinusOne, q); });

  // psi_{-1} x phi: sum_q ((-N_l^T)^q Y_0) tb^{-1} u(-1,q), Y_0 = can_l^T E_0.
  Mat Y0 = left.can.transpose() * E0;
  Mat ml = -L1.N.transpose();
  int q2 = static_cast<int>(std::max(nilpotency_order(L1.N), 1u));
  P.psi_phi = scalar_series(
      L1.dim, right.phi.dim, [&](int q) { return ml.pow(q) * Y0; }, q2,
      [](int q) { return Germ::monomial(0, -1, kMinusOne, q); });
  return P;
}

}  // namespace holodist
