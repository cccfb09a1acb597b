#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace gramspec {

using real = double;
using index_t = std::size_t;

namespace detail {

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

inline void require_finite(const std::vector<real>& v, const char* what) {
  for (real x : v)
    if (!std::isfinite(x)) throw std::invalid_argument(std::string(what) + ": non-finite entry");
}

}  // namespace detail

/// Dense row-major matrix. Data matrices store one sample per column.
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}

  Matrix(index_t rows, index_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  Matrix(index_t rows, index_t cols, std::vector<real> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    detail::require(data_.size() == rows * cols, "Matrix: entry count != rows*cols");
    detail::require_finite(data_, "Matrix");
  }

  index_t rows() const { return rows_; }
  index_t cols() const { return cols_; }

  real& operator()(index_t i, index_t j) { return data_[i * cols_ + j]; }
  real operator()(index_t i, index_t j) const { return data_[i * cols_ + j]; }

  const std::vector<real>& data() const { return data_; }

  std::vector<real> column(index_t j) const {
    std::vector<real> c(rows_);
    for (index_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  void set_column(index_t j, const std::vector<real>& c) {
    detail::require(c.size() == rows_, "set_column: length mismatch");
    for (index_t i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (index_t i = 0; i < rows_; ++i)
      for (index_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    detail::require(a.cols_ == b.rows_, "Matrix product: inner dimensions differ");
    Matrix c(a.rows_, b.cols_);
    for (index_t i = 0; i < a.rows_; ++i)
      for (index_t k = 0; k < a.cols_; ++k) {
        const real aik = a(i, k);
        if (aik == 0.0) continue;
        for (index_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

 private:
  index_t rows_, cols_;
  std::vector<real> data_;
};

/// Symmetric matrix with full storage. Construction mirrors the upper
/// triangle so entries (i,j) and (j,i) are bit-identical.
class SymmetricMatrix {
 public:
  SymmetricMatrix() : n_(0) {}

  explicit SymmetricMatrix(index_t n) : n_(n), data_(n * n, 0.0) {}

  /// Builds from an arbitrary square matrix by averaging m and m^T.
  static SymmetricMatrix symmetrized(const Matrix& m) {
    detail::require(m.rows() == m.cols(), "symmetrized: matrix not square");
    SymmetricMatrix s(m.rows());
    for (index_t i = 0; i < m.rows(); ++i)
      for (index_t j = i; j < m.cols(); ++j) s.set(i, j, 0.5 * (m(i, j) + m(j, i)));
    return s;
  }

  static SymmetricMatrix identity(index_t n) {
    SymmetricMatrix s(n);
    for (index_t i = 0; i < n; ++i) s.set(i, i, 1.0);
    return s;
  }

  static SymmetricMatrix diagonal(const std::vector<real>& d) {
    SymmetricMatrix s(d.size());
    for (index_t i = 0; i < d.size(); ++i) s.set(i, i, d[i]);
    return s;
  }

  index_t size() const { return n_; }

  real operator()(index_t i, index_t j) const { return data_[i * n_ + j]; }

  /// Sets entry (i,j) and its mirror (j,i).
  void set(index_t i, index_t j, real v) {
    detail::require(std::isfinite(v), "SymmetricMatrix::set: non-finite value");
    data_[i * n_ + j] = v;
    data_[j * n_ + i] = v;
  }

  std::vector<real> diagonal_entries() const {
    std::vector<real> d(n_);
    for (index_t i = 0; i < n_; ++i) d[i] = (*this)(i, i);
    return d;
  }

  std::vector<real> row_sums() const {
    std::vector<real> r(n_, 0.0);
    for (index_t i = 0; i < n_; ++i)
      for (index_t j = 0; j < n_; ++j) r[i] += (*this)(i, j);
    return r;
  }

  real grand_sum() const {
    real g = 0.0;
    for (real s : row_sums()) g += s;
    return g;
  }

  std::vector<real> multiply(const std::vector<real>& v) const {
    detail::require(v.size() == n_, "SymmetricMatrix::multiply: length mismatch");
    std::vector<real> out(n_, 0.0);
    for (index_t i = 0; i < n_; ++i) {
      real acc = 0.0;
      for (index_t j = 0; j < n_; ++j) acc += (*this)(i, j) * v[j];
      out[i] = acc;
    }
    return out;
  }

  real quadratic_form(const std::vector<real>& u, const std::vector<real>& v) const {
    const std::vector<real> mv = multiply(v);
    real acc = 0.0;
    for (index_t i = 0; i < n_; ++i) acc += u[i] * mv[i];
    return acc;
  }

  real frobenius_norm() const {
    real acc = 0.0;
    for (real x : data_) acc += x * x;
    return std::sqrt(acc);
  }

  Matrix to_matrix() const {
    Matrix m(n_, n_);
    for (index_t i = 0; i < n_; ++i)
      for (index_t j = 0; j < n_; ++j) m(i, j) = (*this)(i, j);
    return m;
  }

 private:
  index_t n_;
  std::vector<real> data_;
};

/// Sum of diagonal entries; equals the eigenvalue sum of the matrix.
inline real trace(const SymmetricMatrix& m) {
  real t = 0.0;
  for (index_t i = 0; i < m.size(); ++i) t += m(i, i);
  return t;
}

inline real frobenius_distance(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  detail::require(a.size() == b.size(), "frobenius_distance: dimension mismatch");
  real acc = 0.0;
  for (index_t i = 0; i < a.size(); ++i)
    for (index_t j = 0; j < a.size(); ++j) {
      const real d = a(i, j) - b(i, j);
      acc += d * d;
    }
  return std::sqrt(acc);
}

// small vector helpers used across the library

inline real dot(const std::vector<real>& a, const std::vector<real>& b) {
  detail::require(a.size() == b.size(), "dot: length mismatch");
  real acc = 0.0;
  for (index_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

inline real norm(const std::vector<real>& v) { return std::sqrt(dot(v, v)); }

inline real sum(const std::vector<real>& v) {
  real acc = 0.0;
  for (real x : v) acc += x;
  return acc;
}

}  // namespace gramspec
