#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "isoparam/error.hpp"
#include "isoparam/exact/mpoly.hpp"
#include "isoparam/exact/quad_ext.hpp"
#include "isoparam/exact/rational.hpp"

namespace isoparam::exact {

/// Dense row-major matrix over an exact ring T.
template<class T>
class ExactMatrix
{
public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols, const T & fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static ExactMatrix from_rows(const std::vector<std::vector<T>> & rows)
  {
    if (rows.empty() || rows.front().empty()) { throw StructuralError("ExactMatrix: empty row list"); }
    ExactMatrix m(rows.size(), rows.front().size(), rows.front().front());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) { throw StructuralError("ExactMatrix: ragged rows"); }
      for (std::size_t j = 0; j < m.cols_; ++j) { m(i, j) = rows[i][j]; }
    }
    return m;
  }

  static ExactMatrix identity(std::size_t n, const T & zero, const T & one)
  {
    ExactMatrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) { m(i, i) = one; }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T & operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T & operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const
  {
    return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  std::vector<T> col(std::size_t j) const
  {
    std::vector<T> c;
    c.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) { c.push_back((*this)(i, j)); }
    return c;
  }

  ExactMatrix transpose() const
  {
    ExactMatrix t(cols_, rows_, data_.front());
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) { t(j, i) = (*this)(i, j); }
    }
    return t;
  }

  /// Keeps the listed rows and columns, in the order given.
  ExactMatrix select(const std::vector<std::size_t> & rs, const std::vector<std::size_t> & cs) const
  {
    if (rs.empty() || cs.empty()) { throw StructuralError("ExactMatrix: empty selection"); }
    ExactMatrix s(rs.size(), cs.size(), data_.front());
    for (std::size_t i = 0; i < rs.size(); ++i) {
      for (std::size_t j = 0; j < cs.size(); ++j) {
        if (rs[i] >= rows_ || cs[j] >= cols_) { throw StructuralError("ExactMatrix: selection out of range"); }
        s(i, j) = (*this)(rs[i], cs[j]);
      }
    }
    return s;
  }

  ExactMatrix minor_matrix(std::size_t drop_row, std::size_t drop_col) const
  {
    std::vector<std::size_t> rs, cs;
    for (std::size_t i = 0; i < rows_; ++i) { if (i != drop_row) { rs.push_back(i); } }
    for (std::size_t j = 0; j < cols_; ++j) { if (j != drop_col) { cs.push_back(j); } }
    return select(rs, cs);
  }

  ExactMatrix with_column(std::size_t j, const std::vector<T> & c) const
  {
    if (c.size() != rows_ || j >= cols_) { throw StructuralError("ExactMatrix: column replacement shape mismatch"); }
    ExactMatrix r = *this;
    for (std::size_t i = 0; i < rows_; ++i) { r(i, j) = c[i]; }
    return r;
  }

  ExactMatrix append_row(const std::vector<T> & r) const
  {
    if (r.size() != cols_) { throw StructuralError("ExactMatrix: appended row has wrong width"); }
    ExactMatrix out(rows_ + 1, cols_, data_.front());
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) { out(i, j) = (*this)(i, j); }
    }
    for (std::size_t j = 0; j < cols_; ++j) { out(rows_, j) = r[j]; }
    return out;
  }

  template<class F>
  auto map(F && f) const -> ExactMatrix<decltype(f(std::declval<const T &>()))>
  {
    using U = decltype(f(std::declval<const T &>()));
    ExactMatrix<U> out(rows_, cols_, f(data_.front()));
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) { out(i, j) = f((*this)(i, j)); }
    }
    return out;
  }

  friend ExactMatrix operator*(const ExactMatrix & x, const ExactMatrix & y)
  {
    if (x.cols_ != y.rows_) { throw StructuralError("ExactMatrix: product shape mismatch"); }
    const T zero = x.data_.front() - x.data_.front();
    ExactMatrix r(x.rows_, y.cols_, zero);
    for (std::size_t i = 0; i < x.rows_; ++i) {
      for (std::size_t k = 0; k < x.cols_; ++k) {
        const T & xik = x(i, k);
        if (is_zero(xik)) { continue; }
        for (std::size_t j = 0; j < y.cols_; ++j) {
          if (!is_zero(y(k, j))) { r(i, j) += xik * y(k, j); }
        }
      }
    }
    return r;
  }

  friend ExactMatrix operator+(ExactMatrix x, const ExactMatrix & y)
  {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) { throw StructuralError("ExactMatrix: sum shape mismatch"); }
    for (std::size_t i = 0; i < x.data_.size(); ++i) { x.data_[i] += y.data_[i]; }
    return x;
  }

  friend ExactMatrix operator-(ExactMatrix x, const ExactMatrix & y)
  {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) { throw StructuralError("ExactMatrix: difference shape mismatch"); }
    for (std::size_t i = 0; i < x.data_.size(); ++i) { x.data_[i] -= y.data_[i]; }
    return x;
  }

  /// Row vector times matrix.
  friend std::vector<T> operator*(const std::vector<T> & v, const ExactMatrix & x)
  {
    if (v.size() != x.rows_) { throw StructuralError("ExactMatrix: row-vector product shape mismatch"); }
    const T zero = x.data_.front() - x.data_.front();
    std::vector<T> r(x.cols_, zero);
    for (std::size_t k = 0; k < x.rows_; ++k) {
      if (is_zero(v[k])) { continue; }
      for (std::size_t j = 0; j < x.cols_; ++j) {
        if (!is_zero(x(k, j))) { r[j] += v[k] * x(k, j); }
      }
    }
    return r;
  }

  friend bool operator==(const ExactMatrix & x, const ExactMatrix & y)
  {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.data_ == y.data_;
  }
  friend bool operator!=(const ExactMatrix & x, const ExactMatrix & y) { return !(x == y); }

  bool is_zero_matrix() const
  {
    for (const auto & e : data_) {
      if (!is_zero(e)) { return false; }
    }
    return true;
  }

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

/// Fraction-free (Bareiss) determinant. Every division is exact.
template<class T>
T bareiss_det(ExactMatrix<T> a)
{
  if (!a.square()) { throw StructuralError("bareiss_det: matrix is not square"); }
  const std::size_t n = a.rows();
  if (n == 0) { throw StructuralError("bareiss_det: empty matrix"); }
  const T zero = a(0, 0) - a(0, 0);
  bool negate = false;
  std::optional<T> prev;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (is_zero(a(k, k))) {
      std::size_t p = k + 1;
      while (p < n && is_zero(a(p, k))) { ++p; }
      if (p == n) { return zero; }
      for (std::size_t j = 0; j < n; ++j) { std::swap(a(k, j), a(p, j)); }
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        T v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        a(i, j) = prev ? exact_div(v, *prev) : std::move(v);
      }
      a(i, k) = zero;
    }
    prev = a(k, k);
  }
  return negate ? -a(n - 1, n - 1) : a(n - 1, n - 1);
}

/// Rank over the rationals. Fraction-free elimination, pivot = first nonzero
/// entry scanning columns left to right and rows top to bottom.
inline std::size_t exact_rank(ExactMatrix<BigRational> a)
{
  std::size_t rank = 0;
  std::optional<BigRational> prev;
  for (std::size_t col = 0; col < a.cols() && rank < a.rows(); ++col) {
    std::size_t p = rank;
    while (p < a.rows() && a(p, col).is_zero()) { ++p; }
    if (p == a.rows()) { continue; }
    if (p != rank) {
      for (std::size_t j = 0; j < a.cols(); ++j) { std::swap(a(rank, j), a(p, j)); }
    }
    const BigRational piv = a(rank, col);
    for (std::size_t i = rank + 1; i < a.rows(); ++i) {
      const BigRational f = a(i, col);
      for (std::size_t j = col; j < a.cols(); ++j) {
        BigRational v = a(i, j) * piv - f * a(rank, j);
        a(i, j) = prev ? v / *prev : v;
      }
    }
    prev = piv;
    ++rank;
  }
  return rank;
}

/// Grounds every indeterminate from `assignment` and returns the rational rank.
inline std::size_t exact_rank(const ExactMatrix<MPoly> & a, const std::map<std::string, BigRational> & assignment)
{
  return exact_rank(a.map([&](const MPoly & p) { return p.evaluate(assignment); }));
}

/// Rank of a matrix whose polynomial entries are all constants.
inline std::size_t exact_rank(const ExactMatrix<MPoly> & a)
{
  return exact_rank(a, {});
}

/// Basis of the right nullspace {x : A x = 0} over a field T, from the
/// reduced row echelon form. Each basis vector has a 1 at its free column.
template<class T>
std::vector<std::vector<T>> nullspace(ExactMatrix<T> a, const T & one)
{
  const T zero = a(0, 0) - a(0, 0);
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < a.cols() && r < a.rows(); ++col) {
    std::size_t p = r;
    while (p < a.rows() && is_zero(a(p, col))) { ++p; }
    if (p == a.rows()) { continue; }
    for (std::size_t j = 0; j < a.cols(); ++j) { std::swap(a(r, j), a(p, j)); }
    const T piv = a(r, col);
    for (std::size_t j = 0; j < a.cols(); ++j) { a(r, j) = exact_div(a(r, j), piv); }
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || is_zero(a(i, col))) { continue; }
      const T f = a(i, col);
      for (std::size_t j = 0; j < a.cols(); ++j) { a(i, j) -= f * a(r, j); }
    }
    pivots.push_back(col);
    ++r;
  }
  std::vector<std::vector<T>> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) { continue; }
    std::vector<T> v(a.cols(), zero);
    v[free] = one;
    for (std::size_t i = 0; i < pivots.size(); ++i) { v[pivots[i]] = -a(i, free); }
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Unique solution of A x = b over a field T; StructuralError when the
/// solution is missing or not unique.
template<class T>
std::vector<T> solve_unique(const ExactMatrix<T> & a, const std::vector<T> & b, const T & one)
{
  if (b.size() != a.rows()) { throw StructuralError("solve_unique: right-hand side has wrong length"); }
  ExactMatrix<T> aug(a.rows(), a.cols() + 1, a(0, 0));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) { aug(i, j) = a(i, j); }
    aug(i, a.cols()) = -b[i];
  }
  const auto ns = nullspace(aug, one);
  if (ns.size() != 1) { throw StructuralError("solve_unique: system is not uniquely solvable"); }
  const T & last = ns.front()[a.cols()];
  if (is_zero(last)) { throw StructuralError("solve_unique: system is inconsistent"); }
  std::vector<T> x(ns.front().begin(), ns.front().begin() + static_cast<std::ptrdiff_t>(a.cols()));
  for (auto & e : x) { e = exact_div(e, last); }
  return x;
}

/// Square integer-power of a square matrix, by repeated squaring.
template<class T>
ExactMatrix<T> matrix_pow(const ExactMatrix<T> & a, unsigned e, const T & zero, const T & one)
{
  ExactMatrix<T> r = ExactMatrix<T>::identity(a.rows(), zero, one);
  ExactMatrix<T> b = a;
  while (e) {
    if (e & 1u) { r = r * b; }
    e >>= 1u;
    if (e) { b = b * b; }
  }
  return r;
}

}  // namespace isoparam::exact
