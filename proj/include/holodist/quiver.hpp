#pragma once

// Regular holonomic germs as graded linear data: the spaces gr_alpha (psi) and
// the vanishing part phi, with nilpotents N and the maps can, var; the extended
// modules M_{alpha,p} and their stabilized kernels and cokernels.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "holodist/nilalg.hpp"

namespace holodist {

struct NilSpace {
  size_t dim = 0;
  Mat N;  // dim x dim, nilpotent

  static NilSpace zero(size_t d) { return {d, Mat(d, d)}; }
  friend bool operator==(const NilSpace&, const NilSpace&) = default;
};

struct VGradedModule {
  std::map<GaussianRational, NilSpace, CxLess> psi;  // keys in [-1, 0)
  NilSpace phi;
  Mat can;  // phi.dim x psi(-1).dim
  Mat var;  // psi(-1).dim x phi.dim

  /// psi(alpha), or the zero space when alpha is absent.
  NilSpace psi_at(const GaussianRational& alpha) const;
  std::vector<GaussianRational> alphas() const;
  friend bool operator==(const VGradedModule&, const VGradedModule&) = default;
};

/// Violations of the module axioms (empty when valid): shapes, nilpotency,
/// var can = N_{-1}, can var = N_0.
std::vector<std::string> check_module(const VGradedModule& m);
/// Throws KernelError listing the violations.
void require_valid(const VGradedModule& m);

struct ExtendedModule {
  size_t base_dim = 0;
  Mat N;  // on the base
  int p = 0;
  Mat T;  // t d_t on gr_{-1} M_{alpha,p} = base (x) span(e_0..e_p); index k*base_dim + i
};

/// T(m (x) e_k) = (-N m) (x) e_k + m (x) e_{k-1}.
ExtendedModule build_Malphap(const Mat& N, int p);
/// Inclusion E_p -> E_{p+1} preserving the e-index.
Mat a_map(const ExtendedModule& ep, const ExtendedModule& ep1);
/// E_{p+1} -> E_p, sum m_k e_k -> sum m_{k+1} e_k.
Mat b_map(const ExtendedModule& ep1, const ExtendedModule& ep);
/// The shift m (x) e_k -> m (x) e_{k-1} on E_p.
Mat shift_map(const ExtendedModule& e);

/// Witnesses a0p: m -> sum_k N^k m (x) e_k and bp0: sum m_k e_k -> sum_k N^k m_{p-k}.
Mat a0p_map(const Mat& N, int p);
Mat bp0_map(const Mat& N, int p);

struct PsiLimit {
  size_t dim = 0;
  Mat N;
  Mat a0p;  // base -> E_p, onto ker T
  Mat bp0;  // E_p -> base, inducing coker T = base
};

struct StabilityReport {
  bool ok = false;
  size_t ker_dim = 0;
  size_t coker_dim = 0;
  size_t base_dim = 0;
  std::string detail;
};

/// Certifies by ranks that the two witnesses are isomorphisms at this p.
StabilityReport check_stable(const Mat& N, int p);
/// Smallest p at which the witnesses are isomorphisms: nilpotency order - 1.
int stabilization_threshold(const Mat& N);
/// Throws with the rank certificate when p is below the threshold.
PsiLimit psi_limit(const Mat& N, int p);

VGradedModule localize_quiver(const VGradedModule& m);
VGradedModule colocalize_quiver(const VGradedModule& m);
VGradedModule hermitian_dual_quiver(const VGradedModule& m);

struct Induced {
  size_t dim = 0;
  Mat basis;  // representatives in the ambient space, as columns
  Mat N;      // induced endomorphism in that basis
};

struct Cohomology {
  Induced ker;
  Induced coker;
};

/// (ker var, coker var) with induced nilpotents.
Cohomology h_i_plus(const VGradedModule& m);
/// (ker can, coker can) with induced nilpotents.
Cohomology h_i_dagger(const VGradedModule& m);

/// Restriction of `endo` to ker(map) and the map it induces on coker(map) = target / im(map).
Induced induced_on_kernel(const Mat& map, const Mat& endo_src);
Induced induced_on_cokernel(const Mat& map, const Mat& endo_dst);

}  // namespace holodist
