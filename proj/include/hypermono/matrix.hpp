#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hypermono/error.hpp"
#include "hypermono/rational.hpp"

namespace hypermono {

/// Dense row-major matrix over an exact ring. Value type, no aliasing.
template <class T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix from_rows(std::initializer_list<std::initializer_list<T>> rows) {
    std::vector<std::vector<T>> v;
    for (const auto& r : rows) v.emplace_back(r);
    return from_rows(v);
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.front().size();
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) fail(ErrorKind::InvalidArgument, "ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const T> data() const noexcept { return data_; }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  void set_column(std::size_t j, const std::vector<T>& v) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  T trace() const {
    T s(0);
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
    return s;
  }

  template <class U>
  Matrix<U> cast() const {
    Matrix<U> m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = U((*this)(i, j));
    return m;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) {
    check_same_shape(a, b);
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] += b.data_[k];
    return a;
  }

  friend Matrix operator-(Matrix a, const Matrix& b) {
    check_same_shape(a, b);
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] -= b.data_[k];
    return a;
  }

  friend Matrix operator*(const T& s, Matrix a) {
    for (auto& x : a.data_) x *= s;
    return a;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) fail(ErrorKind::InvalidArgument, "matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == T(0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& v) {
    if (a.cols_ != v.size()) fail(ErrorKind::InvalidArgument, "matrix-vector shape mismatch");
    std::vector<T> out(a.rows_, T(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) out[i] += a(i, j) * v[j];
    return out;
  }

 private:
  static void check_same_shape(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      fail(ErrorKind::InvalidArgument, "matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using ExactMatrix = Matrix<Rational>;

// ---------------------------------------------------------------------------
// Exact linear algebra over Q. Rank, kernel and determinant go through
// fraction-free (Bareiss) elimination on row-wise integer rescalings.

namespace detail {

/// Clears denominators row by row; returns the integer matrix and the
/// per-row multipliers.
inline std::pair<Matrix<Integer>, std::vector<Integer>> integer_rows(const ExactMatrix& m) {
  Matrix<Integer> out(m.rows(), m.cols());
  std::vector<Integer> scale(m.rows(), Integer(1));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) l = boost::multiprecision::lcm(l, denominator(m(i, j)));
    scale[i] = l;
    for (std::size_t j = 0; j < m.cols(); ++j)
      out(i, j) = numerator(m(i, j)) * (l / denominator(m(i, j)));
  }
  return {std::move(out), std::move(scale)};
}

struct Echelon {
  Matrix<Integer> rows;            // row echelon form, fraction-free
  std::vector<std::size_t> pivots; // pivot column of each nonzero row
  int sign = 1;                    // parity of row swaps
};

/// Bareiss fraction-free row echelon form. Every intermediate division is exact.
inline Echelon bareiss(Matrix<Integer> m) {
  Echelon e;
  const std::size_t R = m.rows(), C = m.cols();
  std::size_t r = 0;
  Integer prev = 1;
  for (std::size_t c = 0; c < C && r < R; ++c) {
    std::size_t p = r;
    while (p < R && m(p, c) == 0) ++p;
    if (p == R) continue;
    if (p != r) {
      for (std::size_t j = 0; j < C; ++j) std::swap(m(p, j), m(r, j));
      e.sign = -e.sign;
    }
    for (std::size_t i = r + 1; i < R; ++i) {
      for (std::size_t j = c + 1; j < C; ++j) m(i, j) = (m(r, c) * m(i, j) - m(i, c) * m(r, j)) / prev;
      m(i, c) = 0;
    }
    prev = m(r, c);
    e.pivots.push_back(c);
    ++r;
  }
  e.rows = std::move(m);
  return e;
}

inline std::vector<Rational> primitive_integer(std::vector<Rational> v) {
  Integer l = 1;
  for (const auto& x : v) l = boost::multiprecision::lcm(l, denominator(x));
  Integer g = 0;
  for (auto& x : v) {
    x *= Rational(l);
    g = boost::multiprecision::gcd(g, numerator(x));
  }
  if (g == 0) return v;
  for (auto& x : v) x /= Rational(g);
  auto first = std::find_if(v.begin(), v.end(), [](const Rational& x) { return x != 0; });
  if (first != v.end() && *first < 0)
    for (auto& x : v) x = -x;
  return v;
}

}  // namespace detail

inline std::size_t rank(const ExactMatrix& m) {
  return detail::bareiss(detail::integer_rows(m).first).pivots.size();
}

inline Rational determinant(const ExactMatrix& m) {
  if (!m.is_square()) fail(ErrorKind::InvalidArgument, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return Rational(1);
  auto [ints, scale] = detail::integer_rows(m);
  auto e = detail::bareiss(std::move(ints));
  if (e.pivots.size() < n) return Rational(0);
  Rational det(e.rows(n - 1, n - 1) * e.sign);
  for (const auto& s : scale) det /= Rational(s);
  return det;
}

/// Kernel basis in deterministic order: one vector per free column, in
/// increasing column order, each scaled to a primitive integer vector whose
/// first nonzero entry is positive.
inline std::vector<std::vector<Rational>> nullspace(const ExactMatrix& m) {
  auto e = detail::bareiss(detail::integer_rows(m).first);
  const std::size_t C = m.cols();
  std::vector<bool> is_pivot(C, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < C; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> x(C, Rational(0));
    x[f] = 1;
    for (std::size_t k = e.pivots.size(); k-- > 0;) {
      const std::size_t pc = e.pivots[k];
      Rational s = 0;
      for (std::size_t j = pc + 1; j < C; ++j)
        if (x[j] != 0 && e.rows(k, j) != 0) s += Rational(e.rows(k, j)) * x[j];
      x[pc] = -s / Rational(e.rows(k, pc));
    }
    basis.push_back(detail::primitive_integer(std::move(x)));
  }
  return basis;
}

inline ExactMatrix inverse(const ExactMatrix& m) {
  if (!m.is_square()) fail(ErrorKind::InvalidArgument, "inverse of non-square matrix");
  const std::size_t n = m.rows();
  ExactMatrix a = m, inv = ExactMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) fail(ErrorKind::InvalidArgument, "matrix is singular");
    if (p != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(p, j), a(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    const Rational piv = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      const Rational f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

/// Characteristic polynomial det(tI - M), ascending coefficients, monic.
/// Faddeev-LeVerrier recurrence; exact over Q.
inline std::vector<Rational> char_poly_coefficients(const ExactMatrix& a) {
  if (!a.is_square()) fail(ErrorKind::InvalidArgument, "char poly of non-square matrix");
  const std::size_t n = a.rows();
  std::vector<Rational> c(n + 1, Rational(0));
  c[n] = 1;
  ExactMatrix m(n, n);
  const auto id = ExactMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m + c[n - k + 1] * id;
    c[n - k] = -(a * m).trace() / Rational(static_cast<long long>(k));
  }
  return c;
}

inline ExactMatrix matrix_power(const ExactMatrix& a, std::size_t e) {
  ExactMatrix r = ExactMatrix::identity(a.rows()), b = a;
  while (e) {
    if (e & 1U) r = r * b;
    b = b * b;
    e >>= 1U;
  }
  return r;
}

/// Vertically stacks matrices with equal column counts.
template <class T>
Matrix<T> vstack(const std::vector<Matrix<T>>& blocks) {
  std::size_t rows = 0;
  const std::size_t cols = blocks.empty() ? 0 : blocks.front().cols();
  for (const auto& b : blocks) {
    if (b.cols() != cols) fail(ErrorKind::InvalidArgument, "vstack column mismatch");
    rows += b.rows();
  }
  Matrix<T> out(rows, cols);
  std::size_t r0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < cols; ++j) out(r0 + i, j) = b(i, j);
    r0 += b.rows();
  }
  return out;
}

inline std::string to_string(const ExactMatrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += i ? "; " : "";
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? " " : "") + to_short_string(m(i, j));
  }
  return s + "]";
}

}  // namespace hypermono
