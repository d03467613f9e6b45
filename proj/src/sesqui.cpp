#include "holodist/sesqui.hpp"

#include <algorithm>
#include <numeric>

namespace holodist {

namespace {

const GaussianRational kMinusOne(-1);
const GaussianRational kZero(0);

std::string idx(size_t i, size_t j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

ScalarMat zero_scalar(size_t r, size_t c) { return ScalarMat(r, c); }

// Entrywise map of a germ matrix through a functional.
template <class F>
ScalarMat map_entries(const GermMat& s, F f) {
  ScalarMat out(s.rows(), s.cols());
  for (size_t i = 0; i < s.rows(); ++i)
    for (size_t j = 0; j < s.cols(); ++j) out(i, j) = f(s(i, j));
  return out;
}

void require_order(const GermMat& s, const BiOrder& bound, const std::string& what) {
  for (size_t i = 0; i < s.rows(); ++i)
    for (size_t j = 0; j < s.cols(); ++j)
      if (!in_V(s(i, j), bound))
        throw KernelError(what + ": entry " + idx(i, j) + " = " + s(i, j).str() + " has order " +
                          v_orders(s(i, j)).str() + " exceeding " + bound.str());
}

void require_shape(const GermMat& s, size_t r, size_t c, const std::string& what) {
  if (s.rows() != r || s.cols() != c)
    throw KernelError(what + ": block is " + std::to_string(s.rows()) + "x" + std::to_string(s.cols()) +
                      ", expected " + std::to_string(r) + "x" + std::to_string(c));
}

void compare(IdentityCheck& chk, const ScalarMat& a, const ScalarMat& b, const std::string& where) {
  if (a == b) return;
  chk.ok = false;
  if (!chk.detail.empty()) chk.detail += "; ";
  chk.detail += where + ": " + a.str() + " != " + b.str();
}

}  // namespace

ScalarMat L_matrix(const GermMat& s, const GaussianRational& alpha) {
  require_order(s, {alpha, alpha}, "L_alpha at " + alpha.str());
  return map_entries(s, [&](const Germ& g) { return L_alpha(g, alpha); });
}

ScalarMat psi_S(const DistPairing& P, const GaussianRational& alpha) {
  if (!in_fundamental_domain(alpha)) throw KernelError("psi_S: alpha must lie in [-1,0)");
  size_t dl = P.left.psi_at(alpha).dim;
  size_t dr = P.right.psi_at(alpha).dim;
  auto it = P.psi.find(alpha);
  if (it == P.psi.end()) return zero_scalar(dl, dr);
  require_shape(it->second, dl, dr, "psi block at " + alpha.str());
  return L_matrix(it->second, alpha);
}

ScalarMat phi_S(const DistPairing& P) {
  size_t dl = P.left.phi.dim;
  size_t dr = P.right.phi.dim;
  if (!P.phi) return zero_scalar(dl, dr);
  require_shape(*P.phi, dl, dr, "phi block");
  return L_matrix(*P.phi, kZero);
}

std::vector<IdentityCheck> check_propS(const DistPairing& P) {
  std::vector<IdentityCheck> out;

  // (1) psi(N x, y) = psi(x, N y) at every alpha.
  IdentityCheck psiN{"psi(N.,.) = psi(.,N.)", true, ""};
  std::map<GaussianRational, int, CxLess> alphas;
  for (const auto& [a, s] : P.left.psi) alphas[a];
  for (const auto& [a, s] : P.right.psi) alphas[a];
  for (const auto& [a, s] : P.psi) alphas[a];
  for (const auto& [a, unused] : alphas) {
    ScalarMat G = psi_S(P, a);
    ScalarMat lhs = to_scalar(P.left.psi_at(a).N.transpose()) * G;
    ScalarMat rhs = G * to_scalar(P.right.psi_at(a).N.conj());
    compare(psiN, lhs, rhs, "alpha " + a.str());
    auto it = P.psi.find(a);
    if (it != P.psi.end()) {
      compare(psiN, map_entries(it->second, [&](const Germ& g) { return L_alpha(nilpotent_N(g, a, Side::holo), a); }),
              lhs, "germ-level left N at alpha " + a.str());
      compare(psiN,
              map_entries(it->second, [&](const Germ& g) { return L_alpha(nilpotent_N(g, a, Side::antiholo), a); }),
              rhs, "germ-level right N at alpha " + a.str());
    }
  }
  out.push_back(psiN);

  // (2) the same on phi.
  IdentityCheck phiN{"phi(N.,.) = phi(.,N.)", true, ""};
  ScalarMat G0 = phi_S(P);
  {
    ScalarMat lhs = to_scalar(P.left.phi.N.transpose()) * G0;
    ScalarMat rhs = G0 * to_scalar(P.right.phi.N.conj());
    compare(phiN, lhs, rhs, "phi");
    if (P.phi) {
      compare(phiN, map_entries(*P.phi, [&](const Germ& g) { return L_alpha(nilpotent_N(g, kZero, Side::holo), kZero); }),
              lhs, "germ-level left N on phi");
      compare(phiN,
              map_entries(*P.phi, [&](const Germ& g) { return L_alpha(nilpotent_N(g, kZero, Side::antiholo), kZero); }),
              rhs, "germ-level right N on phi");
    }
  }
  out.push_back(phiN);

  ScalarMat G1 = psi_S(P, kMinusOne);

  // (3) psi_1(Var x, y) = phi_1(x, can y), x in phi (left), y in psi_{-1} (right).
  IdentityCheck varcan{"psi(Var.,.) = phi(.,can.)", true, ""};
  {
    ScalarMat lhs = to_scalar(P.left.var.transpose()) * G1;
    ScalarMat rhs = G0 * to_scalar(P.right.can.conj());
    compare(varcan, lhs, rhs, "matrices");
    if (P.phi_psi) {
      const GermMat& W = *P.phi_psi;
      require_shape(W, P.left.phi.dim, P.right.psi_at(kMinusOne).dim, "phi_psi block");
      require_order(W, {kZero, kMinusOne}, "phi_psi block");
      compare(varcan, map_entries(W, [](const Germ& g) { return L_alpha(mul_t(g), kMinusOne); }), lhs,
              "germ-level L_{-1}(t w)");
      compare(varcan, map_entries(W, [](const Germ& g) { return L_alpha(-d_tbar(g), kZero); }), rhs,
              "germ-level L_0(-d_tbar w)");
    }
  }
  out.push_back(varcan);

  // (4) phi_1(can x, y) = psi_1(x, Var y), x in psi_{-1} (left), y in phi (right).
  IdentityCheck canvar{"phi(can.,.) = psi(.,Var.)", true, ""};
  {
    ScalarMat lhs = to_scalar(P.left.can.transpose()) * G0;
    ScalarMat rhs = G1 * to_scalar(P.right.var.conj());
    compare(canvar, lhs, rhs, "matrices");
    if (P.psi_phi) {
      const GermMat& Z = *P.psi_phi;
      require_shape(Z, P.left.psi_at(kMinusOne).dim, P.right.phi.dim, "psi_phi block");
      require_order(Z, {kMinusOne, kZero}, "psi_phi block");
      compare(canvar, map_entries(Z, [](const Germ& g) { return L_alpha(-d_t(g), kZero); }), lhs,
              "germ-level L_0(-d_t z)");
      compare(canvar, map_entries(Z, [](const Germ& g) { return L_alpha(mul_tbar(g), kMinusOne); }), rhs,
              "germ-level L_{-1}(tbar z)");
    }
  }
  out.push_back(canvar);
  return out;
}

namespace {

// x^T G conj(y) for column families x, y.
ScalarMat sandwich(const Mat& x, const ScalarMat& G, const Mat& y) {
  return to_scalar(x.transpose()) * G * to_scalar(y.conj());
}

void require_compatible(const ScalarMat& G, const Mat& Nl, const Mat& Nr) {
  if (G.rows() != Nl.rows() || G.cols() != Nr.rows()) throw KernelError("pairing and nilpotents: shape mismatch");
  if (!(to_scalar(Nl.transpose()) * G == G * to_scalar(Nr.conj())))
    throw KernelError("pairing is not compatible with N: psi(N.,.) != psi(.,N.)");
}

}  // namespace

ScalarMat graded_pairing(const ScalarMat& G, const Mat& Nl, const Mat& Nr, long ell) {
  require_compatible(G, Nl, Nr);
  Filtration ml = monodromy_filtration(Nl);
  Filtration mr = monodromy_filtration(Nr);
  // Well-definedness: M_{l-1} x M_{-l} and M_l x M_{-l-1} pair to zero.
  if (!sandwich(ml.at(ell - 1).columns(), G, mr.at(-ell).columns()).is_zero() ||
      !sandwich(ml.at(ell).columns(), G, mr.at(-ell - 1).columns()).is_zero())
    throw KernelError("graded pairing is not well defined at ell = " + std::to_string(ell));
  return sandwich(ml.gr_basis(ell), G, mr.gr_basis(-ell));
}

ScalarMat primitive_pairing(const ScalarMat& G, const Mat& Nl, const Mat& Nr, long ell) {
  if (ell < 0) throw KernelError("primitive pairings are defined for ell >= 0");
  require_compatible(G, Nl, Nr);
  Filtration ml = monodromy_filtration(Nl);
  Filtration mr = monodromy_filtration(Nr);
  Mat pl = primitive_part(Nl, ml, ell);
  Mat pr = primitive_part(Nr, mr, ell);
  return sandwich(pl, G, Nr.pow(static_cast<unsigned>(ell)) * pr);
}

Scalar determinant(const ScalarMat& m) {
  if (!m.is_square()) throw KernelError("determinant of a non-square matrix");
  size_t n = m.rows();
  if (n > 20) throw KernelError("determinant: dimension too large");
  // Division-free expansion over subsets of used columns, rows taken in order.
  std::vector<Scalar> f(size_t{1} << n);
  f[0] = 1;
  for (size_t mask = 0; mask < f.size(); ++mask) {
    if (f[mask].is_zero()) continue;
    size_t row = static_cast<size_t>(__builtin_popcountll(mask));
    if (row == n) continue;
    for (size_t c = 0; c < n; ++c) {
      if (mask & (size_t{1} << c) || m(row, c).is_zero()) continue;
      // Sign: number of already used columns to the right of c.
      size_t higher = static_cast<size_t>(__builtin_popcountll(mask >> (c + 1)));
      Scalar term = f[mask] * m(row, c);
      f[mask | (size_t{1} << c)] += higher % 2 ? -term : term;
    }
  }
  return f.back();
}

bool nondegenerate(const ScalarMat& m) { return m.is_square() && !determinant(m).is_zero(); }

CorReport check_cor_sesqui(const DistPairing& P) {
  CorReport rep;
  struct Piece {
    std::string name;
    ScalarMat G;
    Mat Nl, Nr;
  };
  std::vector<Piece> pieces;
  std::map<GaussianRational, int, CxLess> alphas;
  for (const auto& [a, s] : P.left.psi) alphas[a];
  for (const auto& [a, s] : P.right.psi) alphas[a];
  for (const auto& [a, unused] : alphas)
    pieces.push_back({"psi at " + a.str(), psi_S(P, a), P.left.psi_at(a).N, P.right.psi_at(a).N});
  pieces.push_back({"phi", phi_S(P), P.left.phi.N, P.right.phi.N});
  for (const auto& pc : pieces) {
    if (!nondegenerate(pc.G)) {
      rep.full_nondegenerate = false;
      rep.notes.push_back(pc.name + ": degenerate");
    }
    long top = std::max(monodromy_filtration(pc.Nl).hi, monodromy_filtration(pc.Nr).hi);
    for (long ell = 0; ell <= top; ++ell) {
      if (!nondegenerate(primitive_pairing(pc.G, pc.Nl, pc.Nr, ell))) {
        rep.primitive_nondegenerate = false;
        rep.notes.push_back(pc.name + ": primitive pairing degenerate at ell = " + std::to_string(ell));
      }
    }
  }
  return rep;
}

ScalarMat psi_S_via_Malphap(const DistPairing& P, const GaussianRational& alpha, int p) {
  if (!in_fundamental_domain(alpha)) throw KernelError("psi_S_via_Malphap: alpha must lie in [-1,0)");
  NilSpace L = P.left.psi_at(alpha);
  NilSpace R = P.right.psi_at(alpha);
  int need = std::max(stabilization_threshold(L.N), stabilization_threshold(R.N));
  if (p < need)
    throw KernelError("psi_S_via_Malphap: p = " + std::to_string(p) + " below the stabilization threshold " +
                      std::to_string(need));
  ScalarMat out(L.dim, R.dim);
  auto it = P.psi.find(alpha);
  if (it == P.psi.end()) return out;
  const GermMat& S = it->second;
  require_shape(S, L.dim, R.dim, "psi block at " + alpha.str());
  require_order(S, {alpha, alpha}, "psi block at " + alpha.str());

  ExtendedModule E = build_Malphap(L.N, p);
  size_t d = L.dim;
  size_t total = E.T.rows();
  // Representative of m_i in coker T: m_i (x) e_p, moved by an element of im T.
  Mat ones(total, 1);
  for (size_t r = 0; r < total; ++r) ones(r, 0) = 1;
  Mat shift = E.T * ones;
  Mat bp0 = bp0_map(L.N, p);

  std::vector<Germ> u_factor;  // u(-alpha-2, q), q = 0..p
  for (int q = 0; q <= p; ++q) u_factor.push_back(make_u(GaussianRational(-2) - alpha, q));

  for (size_t i = 0; i < d; ++i) {
    Mat x = shift;
    x(static_cast<size_t>(p) * d + i, 0) += 1;
    Mat img = bp0 * x;
    for (size_t r = 0; r < d; ++r)
      if (!(img(r, 0) == GaussianRational(r == i ? 1 : 0))) throw KernelError("bp0 preimage check failed");
    for (size_t j = 0; j < R.dim; ++j) {
      Germ total_germ;
      for (int l = 0; l <= p; ++l) {
        // S(x_l, conj mu_j)
        Germ a;
        for (size_t ip = 0; ip < d; ++ip) a += Scalar(x(static_cast<size_t>(l) * d + ip, 0)) * S(ip, j);
        Germ nk = a;  // [-(d_tbar tbar + alpha)]^k S(x_l, conj mu_j)
        for (int k = 0; k <= p; ++k) {
          if (k > 0) nk = nilpotent_N(nk, alpha, Side::antiholo);
          int q = k + l - p;
          if (q >= 0 && !nk.is_zero()) total_germ += mul_germ(nk, u_factor[q]);
        }
      }
      out(i, j) = L_alpha(total_germ, kMinusOne);
    }
  }
  return out;
}

GermMat lemma_pairing_matrix(const GaussianRational& alpha, int p) {
  if (p < 0) throw KernelError("lemma_pairing_matrix: p must be >= 0");
  Germ atom = Germ::monomial(0, 0, alpha, 0);
  GermMat out(p + 1, p + 1);
  for (int k = 0; k <= p; ++k)
    for (int l = 0; l <= p; ++l)
      if (k + l >= p) out(k, l) = mul_germ(atom, make_u(GaussianRational(-2) - alpha, k + l - p));
  return out;
}

Germ germ_determinant(const GermMat& m) {
  if (!m.is_square()) throw KernelError("determinant of a non-square matrix");
  size_t n = m.rows();
  std::vector<size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Germ det;
  do {
    size_t inversions = 0;
    for (size_t a = 0; a < n; ++a)
      for (size_t b = a + 1; b < n; ++b)
        if (perm[a] > perm[b]) ++inversions;
    Germ term = Germ::t_power(0, 0);
    for (size_t r = 0; r < n && !term.is_zero(); ++r) term = mul_germ(term, m(r, perm[r]));
    det += inversions % 2 ? -term : term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

int hermitian_sign(const ScalarMat& G) {
  if (!G.is_square()) return 0;
  ScalarMat adj = G.adjoint();
  if (adj == G) return 1;
  if (adj == -G) return -1;
  return 0;
}

bool is_hermitian_germ(const GermMat& S) {
  if (!S.is_square()) return false;
  for (size_t i = 0; i < S.rows(); ++i)
    for (size_t j = 0; j < S.cols(); ++j)
      if (!(conj_germ(S(j, i)) == S(i, j))) return false;
  return true;
}

}  // namespace holodist
