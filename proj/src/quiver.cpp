#include "holodist/quiver.hpp"

namespace holodist {

namespace {

const GaussianRational kMinusOne(-1);

bool shape(const Mat& m, size_t r, size_t c) { return m.rows() == r && m.cols() == c; }

}  // namespace

NilSpace VGradedModule::psi_at(const GaussianRational& alpha) const {
  auto it = psi.find(alpha);
  return it == psi.end() ? NilSpace::zero(0) : it->second;
}

std::vector<GaussianRational> VGradedModule::alphas() const {
  std::vector<GaussianRational> out;
  for (const auto& [a, s] : psi) out.push_back(a);
  return out;
}

std::vector<std::string> check_module(const VGradedModule& m) {
  std::vector<std::string> bad;
  for (const auto& [a, s] : m.psi) {
    if (!in_fundamental_domain(a)) bad.push_back("alpha " + a.str() + " outside [-1,0)");
    if (!shape(s.N, s.dim, s.dim)) {
      bad.push_back("N at alpha " + a.str() + " has wrong shape");
    } else if (!is_nilpotent(s.N)) {
      bad.push_back("N at alpha " + a.str() + " is not nilpotent");
    }
  }
  NilSpace p1 = m.psi_at(kMinusOne);
  if (!shape(m.phi.N, m.phi.dim, m.phi.dim)) {
    bad.push_back("N on phi has wrong shape");
  } else if (!is_nilpotent(m.phi.N)) {
    bad.push_back("N on phi is not nilpotent");
  }
  if (!shape(m.can, m.phi.dim, p1.dim)) bad.push_back("can has wrong shape");
  if (!shape(m.var, p1.dim, m.phi.dim)) bad.push_back("var has wrong shape");
  if (!bad.empty()) return bad;
  if (!(m.var * m.can == p1.N)) bad.push_back("var * can != N_{-1}");
  if (!(m.can * m.var == m.phi.N)) bad.push_back("can * var != N_0");
  return bad;
}

void require_valid(const VGradedModule& m) {
  auto bad = check_module(m);
  if (bad.empty()) return;
  std::string msg = "invalid module:";
  for (const auto& b : bad) msg += " " + b + ";";
  throw KernelError(msg);
}

ExtendedModule build_Malphap(const Mat& N, int p) {
  if (p < 0) throw KernelError("build_Malphap: p must be >= 0");
  if (!is_nilpotent(N)) throw KernelError("build_Malphap: N is not nilpotent");
  size_t d = N.rows();
  size_t total = d * static_cast<size_t>(p + 1);
  ExtendedModule e{d, N, p, Mat(total, total)};
  for (int k = 0; k <= p; ++k) {
    for (size_t i = 0; i < d; ++i) {
      size_t col = k * d + i;
      for (size_t r = 0; r < d; ++r) e.T(k * d + r, col) = -N(r, i);
      if (k > 0) e.T((k - 1) * d + i, col) += 1;
    }
  }
  return e;
}

Mat a_map(const ExtendedModule& ep, const ExtendedModule& ep1) {
  if (ep.base_dim != ep1.base_dim || ep1.p != ep.p + 1) throw KernelError("a_map: incompatible modules");
  Mat a(ep1.T.rows(), ep.T.rows());
  for (size_t k = 0; k < ep.T.rows(); ++k) a(k, k) = 1;
  return a;
}

Mat b_map(const ExtendedModule& ep1, const ExtendedModule& ep) {
  if (ep.base_dim != ep1.base_dim || ep1.p != ep.p + 1) throw KernelError("b_map: incompatible modules");
  size_t d = ep.base_dim;
  Mat b(ep.T.rows(), ep1.T.rows());
  for (int k = 0; k <= ep.p; ++k)
    for (size_t i = 0; i < d; ++i) b(k * d + i, (k + 1) * d + i) = 1;
  return b;
}

Mat shift_map(const ExtendedModule& e) {
  size_t d = e.base_dim;
  Mat s(e.T.rows(), e.T.rows());
  for (int k = 1; k <= e.p; ++k)
    for (size_t i = 0; i < d; ++i) s((k - 1) * d + i, k * d + i) = 1;
  return s;
}

Mat a0p_map(const Mat& N, int p) {
  size_t d = N.rows();
  Mat a(d * (p + 1), d);
  Mat pw = Mat::identity(d);
  for (int k = 0; k <= p; ++k) {
    for (size_t r = 0; r < d; ++r)
      for (size_t c = 0; c < d; ++c) a(k * d + r, c) = pw(r, c);
    pw = pw * N;
  }
  return a;
}

Mat bp0_map(const Mat& N, int p) {
  size_t d = N.rows();
  Mat b(d, d * (p + 1));
  Mat pw = Mat::identity(d);
  for (int k = 0; k <= p; ++k) {
    // N^k applied to the component m_{p-k}
    for (size_t r = 0; r < d; ++r)
      for (size_t c = 0; c < d; ++c) b(r, (p - k) * d + c) = pw(r, c);
    pw = pw * N;
  }
  return b;
}

StabilityReport check_stable(const Mat& N, int p) {
  ExtendedModule e = build_Malphap(N, p);
  StabilityReport rep;
  rep.base_dim = e.base_dim;
  size_t total = e.T.rows();
  size_t rk = rank(e.T);
  rep.ker_dim = total - rk;
  rep.coker_dim = total - rk;
  Mat a = a0p_map(N, p);
  Mat b = bp0_map(N, p);
  bool a_ok = (e.T * a).is_zero() && rank(a) == e.base_dim && rep.ker_dim == e.base_dim;
  bool b_ok = (b * e.T).is_zero() && rank(b) == e.base_dim && rep.coker_dim == e.base_dim;
  rep.ok = a_ok && b_ok;
  rep.detail = "p = " + std::to_string(p) + ": dim ker T = " + std::to_string(rep.ker_dim) +
               ", dim coker T = " + std::to_string(rep.coker_dim) + ", dim base = " + std::to_string(rep.base_dim) +
               (a_ok ? "" : "; a0p is not onto ker T") + (b_ok ? "" : "; bp0 does not induce coker T = base");
  return rep;
}

int stabilization_threshold(const Mat& N) {
  unsigned nu = nilpotency_order(N);
  return nu == 0 ? 0 : static_cast<int>(nu) - 1;
}

PsiLimit psi_limit(const Mat& N, int p) {
  StabilityReport rep = check_stable(N, p);
  if (!rep.ok) throw KernelError("psi_limit: not stabilized: " + rep.detail);
  return {N.rows(), N, a0p_map(N, p), bp0_map(N, p)};
}

VGradedModule localize_quiver(const VGradedModule& m) {
  VGradedModule out = m;
  NilSpace p1 = m.psi_at(kMinusOne);
  out.phi = p1;
  out.can = p1.N;
  out.var = Mat::identity(p1.dim);
  return out;
}

VGradedModule colocalize_quiver(const VGradedModule& m) {
  VGradedModule out = m;
  NilSpace p1 = m.psi_at(kMinusOne);
  out.phi = p1;
  out.can = Mat::identity(p1.dim);
  out.var = p1.N;
  return out;
}

VGradedModule hermitian_dual_quiver(const VGradedModule& m) {
  VGradedModule out;
  for (const auto& [a, s] : m.psi) out.psi[a] = {s.dim, s.N.adjoint()};
  out.phi = {m.phi.dim, m.phi.N.adjoint()};
  out.can = m.var.adjoint();
  out.var = m.can.adjoint();
  return out;
}

Induced induced_on_kernel(const Mat& map, const Mat& endo_src) {
  Mat basis = kernel(map);
  Induced out{basis.cols(), basis, Mat(basis.cols(), basis.cols())};
  for (size_t k = 0; k < basis.cols(); ++k) {
    Mat x;
    if (!solve(basis, endo_src * basis.column(k), x)) throw KernelError("endomorphism does not preserve the kernel");
    for (size_t r = 0; r < basis.cols(); ++r) out.N(r, k) = x(r, 0);
  }
  return out;
}

Induced induced_on_cokernel(const Mat& map, const Mat& endo_dst) {
  size_t n = map.rows();
  Subspace im = image_space(map);
  Mat reps = Subspace::whole(n).complement_of(im);
  Induced out{reps.cols(), reps, Mat(reps.cols(), reps.cols())};
  Mat im_cols = im.columns();
  Mat sys(n, reps.cols() + im_cols.cols());
  for (size_t r = 0; r < n; ++r) {
    for (size_t c = 0; c < reps.cols(); ++c) sys(r, c) = reps(r, c);
    for (size_t c = 0; c < im_cols.cols(); ++c) sys(r, reps.cols() + c) = im_cols(r, c);
  }
  for (size_t k = 0; k < reps.cols(); ++k) {
    Mat x;
    if (!solve(sys, endo_dst * reps.column(k), x)) throw KernelError("cokernel coordinates failed");
    for (size_t r = 0; r < reps.cols(); ++r) out.N(r, k) = x(r, 0);
  }
  return out;
}

Cohomology h_i_plus(const VGradedModule& m) {
  require_valid(m);
  return {induced_on_kernel(m.var, m.phi.N), induced_on_cokernel(m.var, m.psi_at(kMinusOne).N)};
}

Cohomology h_i_dagger(const VGradedModule& m) {
  require_valid(m);
  return {induced_on_kernel(m.can, m.psi_at(kMinusOne).N), induced_on_cokernel(m.can, m.phi.N)};
}

}  // namespace holodist
