#pragma once

// Exact linear algebra over the Gaussian rationals: matrices, subspaces in
// reduced echelon form, monodromy filtrations, primitive parts, Lefschetz pieces.

#include <map>
#include <string>
#include <vector>

#include "holodist/scalar.hpp"

namespace holodist {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(size_t n) {
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!x.is_zero()) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix out(cols_, rows_);
    for (size_t r = 0; r < rows_; ++r)
      for (size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    return out;
  }

  /// Entrywise conjugate.
  Matrix conj() const {
    Matrix out(rows_, cols_);
    for (size_t k = 0; k < data_.size(); ++k) out.data_[k] = data_[k].conj();
    return out;
  }

  Matrix adjoint() const { return conj().transpose(); }

  Matrix operator-() const {
    Matrix out(rows_, cols_);
    for (size_t k = 0; k < data_.size(); ++k) out.data_[k] = -data_[k];
    return out;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw KernelError("matrix product: shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (size_t i = 0; i < a.rows_; ++i)
      for (size_t k = 0; k < a.cols_; ++k) {
        const T& x = a(i, k);
        if (x.is_zero()) continue;
        for (size_t j = 0; j < b.cols_; ++j) out(i, j) += x * b(k, j);
      }
    return out;
  }

  friend Matrix operator*(const T& c, const Matrix& m) {
    Matrix out(m.rows_, m.cols_);
    for (size_t k = 0; k < m.data_.size(); ++k) out.data_[k] = c * m.data_[k];
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  Matrix pow(unsigned n) const {
    if (!is_square()) throw KernelError("matrix power of a non-square matrix");
    Matrix out = identity(rows_);
    for (unsigned k = 0; k < n; ++k) out = out * *this;
    return out;
  }

  Matrix column(size_t c) const {
    Matrix out(rows_, 1);
    for (size_t r = 0; r < rows_; ++r) out(r, 0) = (*this)(r, c);
    return out;
  }

  std::string str() const {
    std::string out = "[";
    for (size_t r = 0; r < rows_; ++r) {
      out += r ? ", [" : "[";
      for (size_t c = 0; c < cols_; ++c) out += (c ? ", " : "") + (*this)(r, c).str();
      out += "]";
    }
    return out + "]";
  }

 private:
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw KernelError("matrix sum: shape mismatch");
  }

  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<T> data_;
};

using Mat = Matrix<GaussianRational>;
using ScalarMat = Matrix<Scalar>;

ScalarMat to_scalar(const Mat& m);

/// Reduced row echelon form; returns pivot columns through `pivots` if given.
Mat rref(const Mat& m, std::vector<size_t>* pivots = nullptr);
size_t rank(const Mat& m);
/// Basis of {x : m x = 0}, as the columns of the result (cols() x k).
Mat kernel(const Mat& m);
/// Solves m x = b for one x (column); returns false if inconsistent.
bool solve(const Mat& m, const Mat& b, Mat& x);
/// Inverse of a square matrix; throws if singular.
Mat inverse(const Mat& m);
bool is_nilpotent(const Mat& n);
/// Smallest k >= 0 with n^k = 0 (0 only for the empty space); throws if not nilpotent.
unsigned nilpotency_order(const Mat& n);

/// A subspace of C^n, stored as a reduced echelon row basis.
class Subspace {
 public:
  explicit Subspace(size_t ambient = 0) : basis_(0, ambient) {}
  /// Span of the columns of `vectors`.
  static Subspace span_columns(const Mat& vectors);
  static Subspace whole(size_t n) { return span_columns(Mat::identity(n)); }

  size_t ambient() const { return basis_.cols(); }
  size_t dim() const { return basis_.rows(); }
  /// Basis vectors as columns (ambient x dim).
  Mat columns() const { return basis_.transpose(); }
  const Mat& rows() const { return basis_; }

  bool contains(const Mat& v) const;
  bool contains(const Subspace& o) const;
  Subspace operator+(const Subspace& o) const;
  Subspace intersect(const Subspace& o) const;
  /// Image under a linear map.
  Subspace image(const Mat& a) const;
  /// {x in this : a x in target}.
  Subspace preimage(const Mat& a, const Subspace& target) const;
  /// Columns spanning a complement of `sub` inside this (sub must be contained).
  Mat complement_of(const Subspace& sub) const;

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }

 private:
  Mat basis_;
};

Subspace kernel_space(const Mat& m);
Subspace image_space(const Mat& m);

/// Increasing filtration M_k, k in [lo, hi], with M_{lo-1} = 0 and M_hi = whole space.
struct Filtration {
  size_t dim = 0;
  long lo = 0;
  long hi = -1;
  std::vector<Subspace> steps;  // steps[k - lo]

  Subspace at(long k) const;
  size_t gr_dim(long k) const { return at(k).dim() - at(k - 1).dim(); }
  /// Representatives of a basis of gr_k, as columns.
  Mat gr_basis(long k) const { return at(k).complement_of(at(k - 1)); }
  friend bool operator==(const Filtration&, const Filtration&) = default;
};

/// The unique filtration with N M_k in M_{k-2} and N^l : gr_l = gr_{-l}.
Filtration monodromy_filtration(const Mat& n);

/// Representatives (columns) of a basis of P gr_l = ker(N^{l+1} : gr_l -> gr_{-l-2}).
Mat primitive_part(const Mat& n, const Filtration& m, long ell);

struct LefschetzPiece {
  long ell;  // graded degree
  long k;    // power of N
  Mat basis; // representatives of N^k P gr_{ell+2k}, as columns
};

/// gr_l = sum_k N^k P gr_{l+2k}; the direct-sum property is verified, throwing on failure.
std::vector<LefschetzPiece> lefschetz_decompose(const Mat& n);

/// Jordan block sizes in decreasing order, from ranks of powers.
std::vector<size_t> jordan_type(const Mat& n);

/// Parses a JSON-style row-major matrix of strings into Mat.
Mat parse_matrix(const std::vector<std::vector<std::string>>& rows, size_t expect_cols = 0);

}  // namespace holodist
