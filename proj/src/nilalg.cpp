#include "holodist/nilalg.hpp"

#include <algorithm>

namespace holodist {

ScalarMat to_scalar(const Mat& m) {
  ScalarMat out(m.rows(), m.cols());
  for (size_t r = 0; r < m.rows(); ++r)
    for (size_t c = 0; c < m.cols(); ++c) out(r, c) = Scalar(m(r, c));
  return out;
}

Mat rref(const Mat& m, std::vector<size_t>* pivots) {
  Mat a = m;
  std::vector<size_t> piv;
  size_t row = 0;
  for (size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    size_t sel = row;
    while (sel < a.rows() && a(sel, col).is_zero()) ++sel;
    if (sel == a.rows()) continue;
    if (sel != row)
      for (size_t c = 0; c < a.cols(); ++c) std::swap(a(sel, c), a(row, c));
    GaussianRational inv = GaussianRational(1) / a(row, col);
    for (size_t c = col; c < a.cols(); ++c) a(row, c) *= inv;
    for (size_t r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, col).is_zero()) continue;
      GaussianRational f = a(r, col);
      for (size_t c = col; c < a.cols(); ++c) a(r, c) -= f * a(row, c);
    }
    piv.push_back(col);
    ++row;
  }
  if (pivots) *pivots = piv;
  return a;
}

size_t rank(const Mat& m) {
  std::vector<size_t> piv;
  rref(m, &piv);
  return piv.size();
}

Mat kernel(const Mat& m) {
  std::vector<size_t> piv;
  Mat r = rref(m, &piv);
  std::vector<bool> is_pivot(m.cols(), false);
  for (size_t p : piv) is_pivot[p] = true;
  std::vector<size_t> free;
  for (size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free.push_back(c);
  Mat out(m.cols(), free.size());
  for (size_t k = 0; k < free.size(); ++k) {
    out(free[k], k) = 1;
    for (size_t i = 0; i < piv.size(); ++i) out(piv[i], k) = -r(i, free[k]);
  }
  return out;
}

bool solve(const Mat& m, const Mat& b, Mat& x) {
  if (b.rows() != m.rows() || b.cols() != 1) throw KernelError("solve: shape mismatch");
  Mat aug(m.rows(), m.cols() + 1);
  for (size_t r = 0; r < m.rows(); ++r) {
    for (size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = b(r, 0);
  }
  std::vector<size_t> piv;
  Mat red = rref(aug, &piv);
  if (!piv.empty() && piv.back() == m.cols()) return false;
  x = Mat(m.cols(), 1);
  for (size_t i = 0; i < piv.size(); ++i) x(piv[i], 0) = red(i, m.cols());
  return true;
}

Mat inverse(const Mat& m) {
  if (!m.is_square()) throw KernelError("inverse of a non-square matrix");
  size_t n = m.rows();
  Mat aug(n, 2 * n);
  for (size_t r = 0; r < n; ++r) {
    for (size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = 1;
  }
  std::vector<size_t> piv;
  Mat red = rref(aug, &piv);
  if (piv.size() < n || (n > 0 && piv[n - 1] >= n)) throw KernelError("inverse of a singular matrix");
  Mat out(n, n);
  for (size_t r = 0; r < n; ++r)
    for (size_t c = 0; c < n; ++c) out(r, c) = red(r, n + c);
  return out;
}

bool is_nilpotent(const Mat& n) { return n.is_square() && n.pow(static_cast<unsigned>(n.rows())).is_zero(); }

unsigned nilpotency_order(const Mat& n) {
  if (!is_nilpotent(n)) throw KernelError("endomorphism is not nilpotent");
  Mat p = Mat::identity(n.rows());
  unsigned k = 0;
  while (!p.is_zero()) {
    p = p * n;
    ++k;
  }
  return k;
}

Subspace Subspace::span_columns(const Mat& vectors) {
  std::vector<size_t> piv;
  Mat r = rref(vectors.transpose(), &piv);
  Subspace s(vectors.rows());
  s.basis_ = Mat(piv.size(), vectors.rows());
  for (size_t i = 0; i < piv.size(); ++i)
    for (size_t c = 0; c < vectors.rows(); ++c) s.basis_(i, c) = r(i, c);
  return s;
}

namespace {

Mat hcat(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw KernelError("hcat: row mismatch");
  Mat out(a.rows(), a.cols() + b.cols());
  for (size_t r = 0; r < a.rows(); ++r) {
    for (size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
    for (size_t c = 0; c < b.cols(); ++c) out(r, a.cols() + c) = b(r, c);
  }
  return out;
}

}  // namespace

bool Subspace::contains(const Mat& v) const {
  if (v.rows() != ambient()) throw KernelError("subspace membership: dimension mismatch");
  return rank(hcat(columns(), v)) == dim();
}

bool Subspace::contains(const Subspace& o) const { return contains(o.columns()); }

Subspace Subspace::operator+(const Subspace& o) const { return span_columns(hcat(columns(), o.columns())); }

Subspace Subspace::intersect(const Subspace& o) const {
  // x^T A = y^T B  <=>  [A^T | -B^T] (x, y) = 0
  Mat sys = hcat(columns(), -o.columns());
  Mat ker = kernel(sys);
  Mat vecs(ambient(), ker.cols());
  Mat cols = columns();
  for (size_t k = 0; k < ker.cols(); ++k)
    for (size_t r = 0; r < ambient(); ++r)
      for (size_t i = 0; i < dim(); ++i) vecs(r, k) += cols(r, i) * ker(i, k);
  return span_columns(vecs);
}

Subspace Subspace::image(const Mat& a) const {
  if (a.cols() != ambient()) throw KernelError("subspace image: dimension mismatch");
  return span_columns(a * columns());
}

Subspace Subspace::preimage(const Mat& a, const Subspace& target) const {
  if (a.cols() != ambient() || a.rows() != target.ambient()) throw KernelError("preimage: dimension mismatch");
  Mat annihilator = kernel(target.rows()).transpose();
  Mat c = columns();
  Mat y = kernel(annihilator * a * c);
  return span_columns(c * y);
}

Mat Subspace::complement_of(const Subspace& sub) const {
  if (!contains(sub)) throw KernelError("complement_of: not a subspace");
  Mat chosen = sub.columns();
  std::vector<size_t> picked;
  Mat cols = columns();
  for (size_t k = 0; k < dim(); ++k) {
    Mat cand = hcat(chosen, cols.column(k));
    if (rank(cand) == cand.cols()) {
      chosen = cand;
      picked.push_back(k);
    }
  }
  Mat out(ambient(), picked.size());
  for (size_t k = 0; k < picked.size(); ++k)
    for (size_t r = 0; r < ambient(); ++r) out(r, k) = cols(r, picked[k]);
  return out;
}

Subspace kernel_space(const Mat& m) { return Subspace::span_columns(kernel(m)); }
Subspace image_space(const Mat& m) { return Subspace::span_columns(m); }

Subspace Filtration::at(long k) const {
  if (k < lo) return Subspace(dim);
  if (k > hi) return Subspace::whole(dim);
  return steps[static_cast<size_t>(k - lo)];
}

Filtration monodromy_filtration(const Mat& n) {
  unsigned nu = nilpotency_order(n);
  Filtration f;
  f.dim = n.rows();
  if (nu == 0) {
    f.lo = 0;
    f.hi = 0;
    f.steps.push_back(Subspace(0));
    return f;
  }
  f.lo = -static_cast<long>(nu) + 1;
  f.hi = static_cast<long>(nu) - 1;
  std::vector<Mat> pw;
  for (unsigned k = 0; k <= 2 * nu + 1; ++k) pw.push_back(n.pow(k));
  auto power = [&](long k) { return k >= static_cast<long>(pw.size()) ? Mat(f.dim, f.dim) : pw[k]; };
  // M_k = sum_{j >= max(0,-k)} N^j ker N^{k+2j+1}
  for (long k = f.lo; k <= f.hi; ++k) {
    Subspace mk(f.dim);
    for (long j = std::max(0L, -k); j < static_cast<long>(nu); ++j)
      mk = mk + kernel_space(power(k + 2 * j + 1)).image(power(j));
    f.steps.push_back(mk);
  }
  return f;
}

Mat primitive_part(const Mat& n, const Filtration& m, long ell) {
  if (ell < 0) throw KernelError("primitive parts are defined for ell >= 0");
  Subspace p = m.at(ell).preimage(n.pow(static_cast<unsigned>(ell + 1)), m.at(-ell - 3));
  return p.complement_of(m.at(ell - 1));
}

std::vector<LefschetzPiece> lefschetz_decompose(const Mat& n) {
  Filtration m = monodromy_filtration(n);
  std::vector<LefschetzPiece> out;
  for (long ell = m.lo; ell <= m.hi; ++ell) {
    Mat all = m.at(ell - 1).columns();
    size_t piece_dims = 0;
    for (long k = std::max(0L, -ell); ell + 2 * k <= m.hi; ++k) {
      Mat basis = n.pow(static_cast<unsigned>(k)) * primitive_part(n, m, ell + 2 * k);
      piece_dims += basis.cols();
      all = hcat(all, basis);
      out.push_back({ell, k, basis});
    }
    if (piece_dims != m.gr_dim(ell) || rank(all) != m.at(ell).dim() || !m.at(ell).contains(all))
      throw KernelError("Lefschetz decomposition failed at ell = " + std::to_string(ell));
  }
  return out;
}

std::vector<size_t> jordan_type(const Mat& n) {
  size_t d = n.rows();
  if (!is_nilpotent(n)) throw KernelError("jordan_type: not nilpotent");
  std::vector<long> r;
  Mat p = Mat::identity(d);
  for (size_t k = 0; k <= d + 1; ++k) {
    r.push_back(static_cast<long>(rank(p)));
    p = p * n;
  }
  std::vector<size_t> out;
  for (size_t s = d; s >= 1; --s) {
    long count = (r[s - 1] - r[s]) - (r[s] - r[s + 1]);
    for (long c = 0; c < count; ++c) out.push_back(s);
  }
  return out;
}

Mat parse_matrix(const std::vector<std::vector<std::string>>& rows, size_t expect_cols) {
  size_t cols = rows.empty() ? expect_cols : rows[0].size();
  Mat m(rows.size(), cols);
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw KernelError("ragged matrix");
    for (size_t c = 0; c < cols; ++c) m(r, c) = parse_gaussian(rows[r][c]);
  }
  return m;
}

}  // namespace holodist
