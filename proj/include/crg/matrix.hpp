#pragma once

// Dense matrices over an exact field K (Rational or Cyclotomic).

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "crg/cyclotomic.hpp"

namespace crg {

template <class K>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, K(0)) {}
  Matrix(std::initializer_list<std::initializer_list<K>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    a_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw Error("ragged matrix literal");
      for (const auto& v : row) a_.push_back(v);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = K(1);
    return m;
  }
  static Matrix diagonal(const std::vector<K>& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }
  static Matrix from_rows(const std::vector<std::vector<K>>& rows) {
    Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw Error("ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  K& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const K& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  const std::vector<K>& data() const { return a_; }

  std::vector<K> row(std::size_t i) const { return {a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_}; }
  std::vector<K> col(std::size_t j) const {
    std::vector<K> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  bool is_identity() const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) {
        const K& v = (*this)(i, j);
        if (i == j ? !(v == K(1)) : !is_zero(v)) return false;
      }
    return true;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw Error("matrix dimension mismatch in product");
    Matrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const K& v = (*this)(i, k);
        if (is_zero(v)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) {
          const K& w = o(k, j);
          if (!is_zero(w)) r(i, j) += v * w;
        }
      }
    return r;
  }
  std::vector<K> operator*(const std::vector<K>& v) const {
    if (cols_ != v.size()) throw Error("matrix-vector dimension mismatch");
    std::vector<K> r(rows_, K(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!is_zero((*this)(i, j)) && !is_zero(v[j])) r[i] += (*this)(i, j) * v[j];
    return r;
  }
  Matrix operator+(const Matrix& o) const {
    check_same(o);
    Matrix r = *this;
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] += o.a_[k];
    return r;
  }
  Matrix operator-(const Matrix& o) const {
    check_same(o);
    Matrix r = *this;
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] -= o.a_[k];
    return r;
  }
  Matrix scaled(const K& s) const {
    Matrix r = *this;
    for (auto& v : r.a_) v *= s;
    return r;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  /// Reduced row echelon form; returns pivot columns.
  std::vector<std::size_t> rref_in_place() {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t p = r;
      while (p < rows_ && is_zero((*this)(p, c))) ++p;
      if (p == rows_) continue;
      swap_rows(p, r);
      const K inv = K(1) / (*this)(r, c);
      for (std::size_t j = c; j < cols_; ++j) (*this)(r, j) *= inv;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r || is_zero((*this)(i, c))) continue;
        const K f = (*this)(i, c);
        for (std::size_t j = c; j < cols_; ++j)
          if (!is_zero((*this)(r, j))) (*this)(i, j) -= f * (*this)(r, j);
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }
  Matrix rref() const {
    Matrix m = *this;
    m.rref_in_place();
    return m;
  }

  std::size_t rank() const {
    Matrix m = *this;
    return m.rref_in_place().size();
  }

  /// Basis of the right kernel {v : M v = 0}.
  std::vector<std::vector<K>> kernel() const {
    Matrix m = *this;
    auto piv = m.rref_in_place();
    std::vector<bool> is_piv(cols_, false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<std::vector<K>> basis;
    for (std::size_t f = 0; f < cols_; ++f) {
      if (is_piv[f]) continue;
      std::vector<K> v(cols_, K(0));
      v[f] = K(1);
      for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m(i, f);
      basis.push_back(std::move(v));
    }
    return basis;
  }

  K det() const {
    if (!square()) throw Error("determinant of non-square matrix");
    Matrix m = *this;
    K d(1);
    for (std::size_t c = 0; c < cols_; ++c) {
      std::size_t p = c;
      while (p < rows_ && is_zero(m(p, c))) ++p;
      if (p == rows_) return K(0);
      if (p != c) {
        m.swap_rows(p, c);
        d = -d;
      }
      d *= m(c, c);
      const K inv = K(1) / m(c, c);
      for (std::size_t i = c + 1; i < rows_; ++i) {
        if (is_zero(m(i, c))) continue;
        const K f = m(i, c) * inv;
        for (std::size_t j = c; j < cols_; ++j)
          if (!is_zero(m(c, j))) m(i, j) -= f * m(c, j);
      }
    }
    return d;
  }

  Matrix inverse() const {
    if (!square()) throw Error("inverse of non-square matrix");
    const std::size_t n = rows_;
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
      aug(i, n + i) = K(1);
    }
    auto piv = aug.rref_in_place();
    if (piv.size() < n || piv[n - 1] != n - 1) throw Error("matrix is singular");
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
  }

  /// Some solution of M x = b; throws if inconsistent.
  std::vector<K> solve(const std::vector<K>& b) const {
    if (b.size() != rows_) throw Error("solve: right-hand side has wrong length");
    Matrix aug(rows_, cols_ + 1);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
      aug(i, cols_) = b[i];
    }
    auto piv = aug.rref_in_place();
    if (!piv.empty() && piv.back() == cols_) throw Error("linear system is inconsistent");
    std::vector<K> x(cols_, K(0));
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug(i, cols_);
    return x;
  }

  /// Coefficients c_0..c_n of det(t I - M) = sum c_k t^k (Faddeev-LeVerrier).
  std::vector<K> charpoly() const {
    if (!square()) throw Error("characteristic polynomial of non-square matrix");
    const std::size_t n = rows_;
    std::vector<K> c(n + 1, K(0));
    c[n] = K(1);
    Matrix mk(n, n);  // M_0 = 0
    for (std::size_t k = 1; k <= n; ++k) {
      Matrix next = *this * mk;
      for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
      mk = std::move(next);
      Matrix am = *this * mk;
      K tr(0);
      for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
      c[n - k] = -tr / K(static_cast<long>(k));
    }
    return c;
  }

  std::size_t hash() const {
    std::size_t h = rows_ * 131 + cols_;
    for (const auto& v : a_) h = h * 1099511628211ULL ^ std::hash<std::size_t>{}(hash_of(v));
    return h;
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      s += i ? ", [" : "[";
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j) s += ", ";
        s += to_text((*this)(i, j));
      }
      s += "]";
    }
    return s + "]";
  }

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) { return os << m.to_string(); }

 private:
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix dimension mismatch");
  }
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  static std::size_t hash_of(const Rational& r) { return hash_rational(r); }
  static std::size_t hash_of(const Cyclotomic& c) { return c.hash(); }
  static std::string to_text(const Rational& r) { return r.get_str(); }
  static std::string to_text(const Cyclotomic& c) { return c.to_string(); }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<K> a_;
};

using CMatrix = Matrix<Cyclotomic>;
using QMatrix = Matrix<Rational>;

template <class K>
struct MatrixHash {
  std::size_t operator()(const Matrix<K>& m) const { return m.hash(); }
};

/// Dot product without conjugation.
template <class K>
K dot(const std::vector<K>& a, const std::vector<K>& b) {
  if (a.size() != b.size()) throw Error("dot: length mismatch");
  K s(0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!is_zero(a[i]) && !is_zero(b[i])) s += a[i] * b[i];
  return s;
}

}  // namespace crg
