#pragma once

// Seeded generators of random instances for property tests and the selftest.

#include <cstdint>
#include <random>
#include <vector>

#include "holodist/germ.hpp"
#include "holodist/quiver.hpp"
#include "holodist/sesqui.hpp"

namespace holodist {

using Rng = std::mt19937_64;

/// Uniform integer in [lo, hi].
long rand_int(Rng& rng, long lo, long hi);
/// Small rational p/q with |p| <= 3, 1 <= q <= 3.
Rational rand_rational(Rng& rng);
/// Small Gaussian rational, real with probability `real_bias`.
GaussianRational rand_gaussian(Rng& rng, double real_bias = 0.5);
/// Nonzero scalar with one or two tau powers in [-1, 2].
Scalar rand_scalar(Rng& rng);

/// The exponents used across the test suites: -1, -3/4, -1/2, -1/3.
const std::vector<GaussianRational>& test_alphas();
/// One of test_alphas, or occasionally a non-real exponent when allow_complex.
GaussianRational rand_alpha(Rng& rng, bool allow_complex = true);

struct GermShape {
  int max_terms = 4;
  long max_abs_exp = 2;
  int max_p = 2;
  bool allow_delta = true;
  bool allow_complex = true;
  double lattice_bias = 0.5;  // probability that a monomial sits on alpha = -1
};

Germ rand_germ(Rng& rng, const GermShape& shape = {});
/// Single monomial t^a tb^b u(-1,p) with small a, b.
MonoKey rand_lattice_key(Rng& rng, long max_abs_exp = 3, int max_p = 2);

/// Integer matrix with integer inverse.
Mat rand_unimodular(Rng& rng, size_t n);
/// S U S^{-1} with U strictly upper triangular.
Mat rand_nilpotent(Rng& rng, size_t n);

struct ModuleShape {
  size_t max_psi_dim = 3;
  size_t max_phi_dim = 3;
  size_t max_other_dim = 3;
  int extra_alphas = 1;  // number of alphas besides -1
};

/// A module satisfying var can = N_{-1}, can var = N_0.
VGradedModule rand_module(Rng& rng, const ModuleShape& shape = {});

/// A pairing between two modules with germ blocks satisfying the four
/// compatibilities at the germ level. When `degenerate` is set, the pairing
/// coefficients are chosen with a radical (a zero combination is not excluded
/// in either mode, so callers inspect the result).
DistPairing rand_pairing(Rng& rng, const VGradedModule& left, const VGradedModule& right, bool degenerate = false);

/// Germ matrix sum_q ((-Nl^T)^q C) u(alpha,q) plus classes of lower order.
GermMat psi_block(Rng& rng, const GaussianRational& alpha, const Mat& Nl, const Mat& C, bool junk = true);

}  // namespace holodist
