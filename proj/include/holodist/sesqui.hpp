#pragma once

// Sesquilinear pairings valued in germs: S(m_i, conj mu_j) on chosen bases,
// the induced forms on nearby and vanishing cycles, primitive forms, and the
// second computation of psi S through the extended modules M_{alpha,p}.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "holodist/germ.hpp"
#include "holodist/nilalg.hpp"
#include "holodist/quiver.hpp"
#include "holodist/vfilt.hpp"

namespace holodist {

using GermMat = Matrix<Germ>;

struct DistPairing {
  VGradedModule left;
  VGradedModule right;
  std::map<GaussianRational, GermMat, CxLess> psi;  // alpha in [-1,0): left psi(alpha) x right psi(alpha)
  std::optional<GermMat> phi;                       // left phi x right phi, orders <= (0,0)
  std::optional<GermMat> phi_psi;                   // left phi x right psi(-1), orders <= (0,-1)
  std::optional<GermMat> psi_phi;                   // left psi(-1) x right phi, orders <= (-1,0)
};

/// Entrywise L_alpha of a germ matrix after checking the order bound (a', a'').
ScalarMat L_matrix(const GermMat& s, const GaussianRational& alpha);
/// psi_lambda S for alpha in [-1,0); a missing block is the zero matrix.
ScalarMat psi_S(const DistPairing& P, const GaussianRational& alpha);
/// phi_1 S (alpha = 0).
ScalarMat phi_S(const DistPairing& P);

struct IdentityCheck {
  std::string name;
  bool ok = true;
  std::string detail;
};

/// The four compatibilities: N on psi, N on phi, Var/can, can/Var; both as
/// matrix identities and, where the germ blocks allow, at the germ level.
std::vector<IdentityCheck> check_propS(const DistPairing& P);

/// Pairing gr_ell^M (left) x gr_{-ell}^M (right) on echelon representatives.
ScalarMat graded_pairing(const ScalarMat& G, const Mat& Nl, const Mat& Nr, long ell);
/// psi_ell(x, N^ell y) on P gr_ell (left) x P gr_ell (right).
ScalarMat primitive_pairing(const ScalarMat& G, const Mat& Nl, const Mat& Nr, long ell);

Scalar determinant(const ScalarMat& m);
/// Square with nonzero determinant.
bool nondegenerate(const ScalarMat& m);

struct CorReport {
  bool full_nondegenerate = true;
  bool primitive_nondegenerate = true;
  bool equivalent() const { return full_nondegenerate == primitive_nondegenerate; }
  std::vector<std::string> notes;
};

CorReport check_cor_sesqui(const DistPairing& P);

/// psi S computed through M_{alpha,p}: bp0-preimages on the left, a0p on the right,
/// the Lemma pairing with u(-alpha-2, k+l-p), and the coefficient of u(-1,0).
ScalarMat psi_S_via_Malphap(const DistPairing& P, const GaussianRational& alpha, int p);

/// Lemma pairing of the rank-one atom S(m, conj mu) = u(alpha,0) on M_{alpha,p}:
/// entry (k,l) pairs mu (x) conj e_k with m (x) e_l, giving u(-alpha-2, k+l-p) u(alpha,0).
GermMat lemma_pairing_matrix(const GaussianRational& alpha, int p);
/// Leibniz determinant of a moderate germ matrix in the ring of moderate germs.
Germ germ_determinant(const GermMat& m);

/// +1 if G^dagger = G, -1 if G^dagger = -G (zero counts as +1), 0 otherwise.
int hermitian_sign(const ScalarMat& G);
/// conj_germ(S_ji) == S_ij for all entries.
bool is_hermitian_germ(const GermMat& S);

}  // namespace holodist
