#pragma once

// Poles of I_phi(s) = int |f|^{2s} phi for monomial f = prod x_i^{m_i} against
// product test forms, predictions from the monodromy filtration, and the
// tangling test ker v -> coker c.

#include <string>
#include <vector>

#include "holodist/mellin.hpp"
#include "holodist/nilalg.hpp"

namespace holodist {

struct MonomialMap {
  std::vector<long> exps;  // m_i >= 1
  size_t n() const { return exps.size(); }
  std::string str() const;
};

/// Parses "x^2*y", "x*y*z", "x1^3*x2".
MonomialMap parse_monomial_map(const std::string& text);

/// Per variable, the factor x^a xb^b times the unit-disc cutoff.
struct ProductTestForm {
  std::vector<std::pair<long, long>> ab;
  std::string str() const;
};

/// Parses "a=0,0" (radial exponents per variable) or "a=1,0;b=1,2".
ProductTestForm parse_test_form(const std::string& text, size_t n);

/// One-variable ledger of t^a tb^b against |t|^{2s'}: -tau/(s'+1+a) when a = b, else empty.
PoleLedger variable_ledger(long a, long b);
PoleLedger I_ledger(const MonomialMap& f, const ProductTestForm& phi);

/// Radial forms with 0 <= a_i = b_i <= max_exp.
std::vector<ProductTestForm> radial_family(size_t n, long max_exp = 2);

/// 1 + (largest ell with gr_ell^M != 0); 0 for the zero module or away from the origin.
long predicted_order(const Mat& N, bool x_at_origin = true);

ProductTestForm pole_shift_witness(const MonomialMap& f, const ProductTestForm& phi, long k);

struct ObservedOrder {
  long order = 0;       // largest pole order seen
  std::string witness;  // test form and pole realizing it
};

/// Largest pole order of I_ledger over radial_family(n, max_exp) at poles
/// s0 = alpha - k (k in N) inside the window [-window, 0).
ObservedOrder observe_pole_order(const MonomialMap& f, const GaussianRational& alpha, long window, long max_exp = 2);

struct TanglingReport {
  bool tangled = false;
  size_t ker_v_dim = 0;
  size_t coker_c_dim = 0;
  size_t induced_rank = 0;
};

/// c : Psi -> Phi, v : Phi -> Psi. Tangled iff ker v -> Phi -> coker c is not an isomorphism.
TanglingReport detect_tangling(const Mat& c, const Mat& v);

}  // namespace holodist
