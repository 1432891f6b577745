#pragma once

// Dense matrices over a commutative ring whose element type carries its own
// context (UnramifiedElement, LaurentPoly). Callers supply ADL helpers
// zero_like(x) and one_like(x).

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "dkz/errors.hpp"
#include "dkz/ring.hpp"

namespace dkz {

inline UnramifiedElement zero_like(const UnramifiedElement& x) { return x.ring().zero(); }
inline UnramifiedElement one_like(const UnramifiedElement& x) { return x.ring().one(); }

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& zero)
      : rows_(rows), cols_(cols), data_(rows * cols, zero) {}

  static Matrix identity(std::size_t n, const T& proto) {
    Matrix m(n, n, zero_like(proto));
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one_like(proto);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  T& at(std::size_t i, std::size_t j) {
    check(i, j);
    return (*this)(i, j);
  }
  const T& at(std::size_t i, std::size_t j) const {
    check(i, j);
    return (*this)(i, j);
  }

  const std::vector<T>& data() const { return data_; }

  template <class F>
  auto map(F&& f) const -> Matrix<decltype(f(std::declval<const T&>()))> {
    using U = decltype(f(std::declval<const T&>()));
    Matrix<U> out;
    out.resize_raw(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.raw()[i] = f(data_[i]);
    return out;
  }

  Matrix transpose() const {
    Matrix out(cols_, rows_, data_.empty() ? T{} : data_[0]);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  /// Submatrix with the given rows and columns, in that order.
  Matrix select(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
    Matrix out;
    out.resize_raw(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) out.raw()[i * cols.size() + j] = at(rows[i], cols[j]);
    return out;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.check_same(b);
    Matrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] = a.data_[i] + b.data_[i];
    return out;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.check_same(b);
    Matrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] = a.data_[i] - b.data_[i];
    return out;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw InvalidArgument("matrix dimension mismatch in product");
    if (a.data_.empty() || b.data_.empty()) throw InvalidArgument("empty matrix product");
    Matrix out(a.rows_, b.cols_, zero_like(a.data_[0]));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) = out(i, j) + aik * b(k, j);
      }
    return out;
  }
  /// Every entry multiplied by the scalar c (on the right).
  friend Matrix operator*(const Matrix& a, const T& c) {
    Matrix out = a;
    for (auto& x : out.data_) x = x * c;
    return out;
  }

  // Internal helpers for map/select.
  void resize_raw(std::size_t rows, std::size_t cols) {
    rows_ = rows;
    cols_ = cols;
    data_.assign(rows * cols, T{});
  }
  std::vector<T>& raw() { return data_; }

 private:
  void check(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw InvalidArgument("matrix index out of range");
  }
  void check_same(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw InvalidArgument("matrix dimension mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

namespace detail {

template <class T>
Matrix<T> minor_matrix(const Matrix<T>& a, std::size_t skip_row, std::size_t skip_col) {
  std::vector<std::size_t> rows, cols;
  for (std::size_t i = 0; i < a.rows(); ++i)
    if (i != skip_row) rows.push_back(i);
  for (std::size_t j = 0; j < a.cols(); ++j)
    if (j != skip_col) cols.push_back(j);
  return a.select(rows, cols);
}

}  // namespace detail

/// Laplace expansion along the first row. Intended for the small g x g matrices used here.
template <class T>
T determinant(const Matrix<T>& a) {
  if (a.rows() != a.cols() || a.rows() == 0) throw InvalidArgument("determinant needs a nonempty square matrix");
  const std::size_t n = a.rows();
  if (n == 1) return a(0, 0);
  if (n == 2) return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  T acc = zero_like(a(0, 0));
  for (std::size_t j = 0; j < n; ++j) {
    T term = a(0, j) * determinant(detail::minor_matrix(a, 0, j));
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

/// Classical adjoint: adj(A) * A = A * adj(A) = det(A) * I.
template <class T>
Matrix<T> adjugate(const Matrix<T>& a) {
  if (a.rows() != a.cols() || a.rows() == 0) throw InvalidArgument("adjugate needs a nonempty square matrix");
  const std::size_t n = a.rows();
  if (n == 1) return Matrix<T>::identity(1, a(0, 0));
  Matrix<T> out(n, n, zero_like(a(0, 0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      T c = determinant(detail::minor_matrix(a, j, i));
      out(i, j) = ((i + j) % 2 == 0) ? c : zero_like(c) - c;
    }
  return out;
}

/// Gauss-Jordan elimination over (Z/p^M)[w]/(h); the pivot is the first row
/// with a unit entry in the current column.
Matrix<UnramifiedElement> matrix_inverse(const Matrix<UnramifiedElement>& a);

}  // namespace dkz
