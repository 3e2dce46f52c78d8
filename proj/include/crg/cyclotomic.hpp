#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_n).
//
// An element is stored as its coordinates in the power basis
// 1, z, ..., z^(phi(n)-1) of Q[x]/Phi_n(x). Conductors are kept canonical
// (never congruent to 2 mod 4, since Q(zeta_2m) = Q(zeta_m) for odd m), and
// binary operations on elements of different conductors lift both operands to
// the lcm first.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "crg/rational.hpp"

namespace crg {

namespace detail {

inline int canonical_conductor(int n) {
  if (n <= 0) throw Error("conductor must be positive");
  return n % 4 == 2 ? n / 2 : n;
}

inline int lcm_int(int a, int b) { return a / std::gcd(a, b) * b; }

inline int euler_phi(int n) {
  int result = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

inline int moebius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      result = -result;
    }
  }
  if (n > 1) result = -result;
  return result;
}

using IntPoly = std::vector<long>;  // low degree first

inline IntPoly int_poly_mul(const IntPoly& a, const IntPoly& b) {
  IntPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// Exact division by a monic divisor.
inline IntPoly int_poly_div_exact(IntPoly a, const IntPoly& monic) {
  const std::size_t db = monic.size() - 1;
  IntPoly q(a.size() - db, 0);
  for (std::size_t i = a.size(); i-- > db;) {
    const long c = a[i];
    q[i - db] = c;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * monic[j];
  }
  return q;
}

/// Phi_n via the Moebius product over divisors.
inline IntPoly cyclotomic_polynomial(int n) {
  IntPoly num{1}, den{1};
  for (int d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    const int mu = moebius(n / d);
    if (mu == 0) continue;
    IntPoly f(static_cast<std::size_t>(d) + 1, 0);
    f[0] = -1;
    f[static_cast<std::size_t>(d)] = 1;
    if (mu > 0) num = int_poly_mul(num, f);
    else den = int_poly_mul(den, f);
  }
  // den is monic up to sign; normalize both.
  if (den.back() < 0) {
    for (auto& c : den) c = -c;
    for (auto& c : num) c = -c;
  }
  return int_poly_div_exact(num, den);
}

struct CyclotomicTable {
  int n = 1;
  int phi = 1;
  IntPoly minimal_poly;
  std::vector<std::vector<long>> power;  // power[k] = x^k mod Phi_n, 0 <= k < n
};

inline std::unique_ptr<CyclotomicTable> build_table(int n) {
  auto t = std::make_unique<CyclotomicTable>();
  t->n = n;
  t->phi = euler_phi(n);
  t->minimal_poly = cyclotomic_polynomial(n);
  const auto phi = static_cast<std::size_t>(t->phi);
  t->power.assign(static_cast<std::size_t>(n), std::vector<long>(phi, 0));
  std::vector<long> cur(phi, 0);
  cur[0] = 1;
  for (int k = 0; k < n; ++k) {
    t->power[static_cast<std::size_t>(k)] = cur;
    // multiply by x
    const long top = cur[phi - 1];
    for (std::size_t j = phi - 1; j > 0; --j) cur[j] = cur[j - 1];
    cur[0] = 0;
    for (std::size_t j = 0; j < phi; ++j) cur[j] -= top * t->minimal_poly[j];
  }
  return t;
}

inline const CyclotomicTable& cyclotomic_table(int n) {
  thread_local const CyclotomicTable* last = nullptr;
  if (last != nullptr && last->n == n) return *last;
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<CyclotomicTable>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_table(n)).first;
  last = it->second.get();
  return *last;
}

}  // namespace detail

class Cyclotomic {
 public:
  Cyclotomic() : n_(1), c_(1) {}
  Cyclotomic(long value) : n_(1), c_{Rational(value)} {}  // NOLINT(google-explicit-constructor)
  Cyclotomic(int value) : Cyclotomic(static_cast<long>(value)) {}  // NOLINT
  Cyclotomic(const Rational& value) : n_(1), c_{value} {}  // NOLINT

  /// zeta_n^k with zeta_n = exp(2 pi i / n).
  static Cyclotomic zeta(int n, long k = 1) {
    if (n <= 0) throw Error("zeta: order must be positive");
    k %= n;
    if (k < 0) k += n;
    std::vector<Rational> raw(static_cast<std::size_t>(k) + 1);
    raw[static_cast<std::size_t>(k)] = 1;
    return from_power_coeffs(n, raw);
  }

  /// Reduces sum_k raw[k] zeta_n^k (any length) to the canonical representative.
  static Cyclotomic from_power_coeffs(int n, const std::vector<Rational>& raw) {
    if (n <= 0) throw Error("conductor must be positive");
    if (n % 4 == 2) {
      // zeta_n = -zeta_m^((m+1)/2) with m = n/2 odd.
      const int m = n / 2;
      const long shift = (m + 1) / 2;
      std::vector<Rational> moved(static_cast<std::size_t>(m));
      for (std::size_t k = 0; k < raw.size(); ++k) {
        if (is_zero_r(raw[k])) continue;
        const auto idx = static_cast<std::size_t>((static_cast<long>(k) * shift) % m);
        if (k % 2 == 0) moved[idx] += raw[k];
        else moved[idx] -= raw[k];
      }
      return from_power_coeffs(m, moved);
    }
    const auto& t = detail::cyclotomic_table(n);
    Cyclotomic out;
    out.n_ = n;
    out.c_.assign(static_cast<std::size_t>(t.phi), Rational(0));
    for (std::size_t k = 0; k < raw.size(); ++k) {
      if (is_zero_r(raw[k])) continue;
      const auto& rep = t.power[k % static_cast<std::size_t>(n)];
      for (std::size_t j = 0; j < rep.size(); ++j)
        if (rep[j] != 0) out.c_[j] += raw[k] * rep[j];
    }
    return out;
  }

  /// Builds directly from power-basis coordinates (length must equal phi(n)).
  static Cyclotomic from_coords(int n, std::vector<Rational> coords) {
    n = detail::canonical_conductor(n);
    if (static_cast<int>(coords.size()) != detail::euler_phi(n))
      return from_power_coeffs(n, coords);
    Cyclotomic out;
    out.n_ = n;
    out.c_ = std::move(coords);
    return out;
  }

  int conductor() const { return n_; }
  int degree() const { return static_cast<int>(c_.size()); }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return sgn(r) == 0; });
  }
  bool is_rational() const {
    return std::all_of(c_.begin() + 1, c_.end(), [](const Rational& r) { return sgn(r) == 0; });
  }
  bool is_one() const { return is_rational() && c_[0] == 1; }
  const Rational& rational_part() const { return c_[0]; }
  Rational to_rational() const {
    if (!is_rational()) throw Error("cyclotomic value is not rational: " + to_string());
    return c_[0];
  }

  /// Same value expressed with conductor m (m must be a multiple of n).
  Cyclotomic lift(int m) const {
    m = detail::canonical_conductor(m);
    if (m == n_) return *this;
    if (m % n_ != 0) throw Error("cannot lift conductor " + std::to_string(n_) + " to " + std::to_string(m));
    if (is_rational()) {
      Cyclotomic out = zero_of(m);
      out.c_[0] = c_[0];
      return out;
    }
    const int step = m / n_;
    std::vector<Rational> raw(static_cast<std::size_t>(step) * c_.size());
    for (std::size_t k = 0; k < c_.size(); ++k) raw[k * static_cast<std::size_t>(step)] = c_[k];
    return from_power_coeffs(m, raw);
  }

  /// Complex conjugate (zeta -> zeta^-1).
  Cyclotomic conj() const {
    if (n_ == 1) return *this;
    std::vector<Rational> raw(static_cast<std::size_t>(n_));
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (is_zero_r(c_[k])) continue;
      raw[(static_cast<std::size_t>(n_) - k) % static_cast<std::size_t>(n_)] += c_[k];
    }
    return from_power_coeffs(n_, raw);
  }

  Cyclotomic inverse() const;
  Cyclotomic pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Cyclotomic result(1), base = *this;
    while (e > 0) {
      if (e & 1) result *= base;
      e >>= 1;
      if (e > 0) base *= base;
    }
    return result;
  }

  /// Same value with the smallest possible conductor.
  Cyclotomic minimized() const;

  std::complex<double> to_complex() const {
    std::complex<double> z(0.0, 0.0);
    const double pi = std::acos(-1.0);
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (is_zero_r(c_[k])) continue;
      const double ang = 2.0 * pi * static_cast<double>(k) / n_;
      z += c_[k].get_d() * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return z;
  }

  std::size_t hash() const {
    if (is_rational()) return hash_rational(c_[0]);
    std::size_t h = static_cast<std::size_t>(n_) * 0x100000001b3ULL;
    for (const auto& r : c_) h = h * 1099511628211ULL ^ hash_rational(r);
    return h;
  }

  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (is_zero_r(c_[k])) continue;
      Rational coef = c_[k];
      if (!first) {
        os << (sgn(coef) < 0 ? " - " : " + ");
        coef = abs(coef);
      }
      if (k == 0) {
        os << coef.get_str();
      } else {
        if (coef == -1) os << "-";
        else if (coef != 1) os << coef.get_str() << "*";
        os << "z" << n_;
        if (k > 1) os << "^" << k;
      }
      first = false;
    }
    if (first) return "0";
    return os.str();
  }

  Cyclotomic operator-() const {
    Cyclotomic out = *this;
    for (auto& r : out.c_) r = -r;
    return out;
  }

  Cyclotomic& operator+=(const Cyclotomic& o) {
    if (o.n_ == 1 || (o.n_ != n_ && o.is_rational())) {
      c_[0] += o.c_[0];
      return *this;
    }
    if (o.n_ != n_) unify_with(o.n_);
    if (o.n_ == n_) {
      for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
      return *this;
    }
    return *this += o.lift(n_);
  }
  Cyclotomic& operator-=(const Cyclotomic& o) { return *this += -o; }

  Cyclotomic& operator*=(const Cyclotomic& o) {
    if (o.n_ == 1 || (o.n_ != n_ && o.is_rational())) {
      const Rational s = o.c_[0];
      for (auto& r : c_) r *= s;
      return *this;
    }
    if (n_ == 1 || (o.n_ != n_ && is_rational())) {
      const Rational s = c_[0];
      *this = o;
      for (auto& r : c_) r *= s;
      return *this;
    }
    if (o.n_ != n_) {
      const int m = detail::lcm_int(n_, o.n_);
      *this = lift(m);
      return *this *= o.lift(m);
    }
    const auto& t = detail::cyclotomic_table(n_);
    const std::size_t phi = c_.size();
    std::vector<Rational> prod(2 * phi - 1);
    for (std::size_t i = 0; i < phi; ++i) {
      if (is_zero_r(c_[i])) continue;
      for (std::size_t j = 0; j < phi; ++j) {
        if (is_zero_r(o.c_[j])) continue;
        prod[i + j] += c_[i] * o.c_[j];
      }
    }
    for (std::size_t k = 0; k < phi; ++k) c_[k] = prod[k];
    for (std::size_t k = phi; k < prod.size(); ++k) {
      if (is_zero_r(prod[k])) continue;
      const auto& rep = t.power[k % static_cast<std::size_t>(n_)];
      for (std::size_t j = 0; j < phi; ++j)
        if (rep[j] != 0) c_[j] += prod[k] * rep[j];
    }
    return *this;
  }
  Cyclotomic& operator/=(const Cyclotomic& o) {
    if (o.is_rational()) {
      if (is_zero_r(o.c_[0])) throw Error("division by zero");
      const Rational s = o.c_[0];
      for (auto& r : c_) r /= s;
      return *this;
    }
    return *this *= o.inverse();
  }

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.n_ == b.n_) return a.c_ == b.c_;
    if (a.is_rational() && b.is_rational()) return a.c_[0] == b.c_[0];
    const int m = detail::lcm_int(a.n_, b.n_);
    return a.lift(m).c_ == b.lift(m).c_;
  }
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const Cyclotomic& c) { return os << c.to_string(); }

 private:
  static bool is_zero_r(const Rational& r) { return sgn(r) == 0; }

  static Cyclotomic zero_of(int n) {
    Cyclotomic out;
    out.n_ = n;
    out.c_.assign(static_cast<std::size_t>(detail::euler_phi(n)), Rational(0));
    return out;
  }

  void unify_with(int other) {
    if (is_rational() && other % n_ == 0) {
      *this = lift(other);
      return;
    }
    const int m = detail::lcm_int(n_, other);
    if (m != n_) *this = lift(m);
  }

  int n_;
  std::vector<Rational> c_;
};

namespace detail {

// Solves a square rational system in place; returns false if singular.
inline bool solve_rational_system(std::vector<std::vector<Rational>>& a, std::vector<Rational>& b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && sgn(a[piv][col]) == 0) ++piv;
    if (piv == n) return false;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    const Rational inv = 1 / a[col][col];
    for (std::size_t j = col; j < n; ++j) a[col][j] *= inv;
    b[col] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || sgn(a[r][col]) == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t j = col; j < n; ++j) a[r][j] -= f * a[col][j];
      b[r] -= f * b[col];
    }
  }
  return true;
}

}  // namespace detail

inline Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw Error("division by zero");
  if (is_rational()) return Cyclotomic(Rational(1 / c_[0]));
  const std::size_t phi = c_.size();
  // Column k of the multiplication matrix is this * zeta^k.
  std::vector<std::vector<Rational>> m(phi, std::vector<Rational>(phi));
  for (std::size_t k = 0; k < phi; ++k) {
    const Cyclotomic col = *this * zeta(n_, static_cast<long>(k));
    for (std::size_t r = 0; r < phi; ++r) m[r][k] = col.c_[r];
  }
  std::vector<Rational> rhs(phi);
  rhs[0] = 1;
  if (!detail::solve_rational_system(m, rhs)) throw Error("singular multiplication matrix");
  return from_coords(n_, rhs);
}

inline Cyclotomic Cyclotomic::minimized() const {
  if (is_rational()) return Cyclotomic(c_[0]);
  for (int m = 1; m < n_; ++m) {
    if (n_ % m != 0 || m % 4 == 2) continue;
    // Try to write this as a combination of the lifted basis of Q(zeta_m).
    const int phi_m = detail::euler_phi(m);
    const std::size_t rows = c_.size();
    std::vector<std::vector<Rational>> aug(rows, std::vector<Rational>(static_cast<std::size_t>(phi_m) + 1));
    for (int k = 0; k < phi_m; ++k) {
      const Cyclotomic b = zeta(m, k).lift(n_);
      for (std::size_t r = 0; r < rows; ++r) aug[r][static_cast<std::size_t>(k)] = b.c_[r];
    }
    for (std::size_t r = 0; r < rows; ++r) aug[r][static_cast<std::size_t>(phi_m)] = c_[r];
    // Row reduce and test consistency.
    const std::size_t cols = static_cast<std::size_t>(phi_m);
    std::size_t prow = 0;
    std::vector<std::size_t> pivcol;
    for (std::size_t col = 0; col < cols && prow < rows; ++col) {
      std::size_t piv = prow;
      while (piv < rows && sgn(aug[piv][col]) == 0) ++piv;
      if (piv == rows) continue;
      std::swap(aug[piv], aug[prow]);
      const Rational inv = 1 / aug[prow][col];
      for (auto& v : aug[prow]) v *= inv;
      for (std::size_t r = 0; r < rows; ++r) {
        if (r == prow || sgn(aug[r][col]) == 0) continue;
        const Rational f = aug[r][col];
        for (std::size_t j = 0; j <= cols; ++j) aug[r][j] -= f * aug[prow][j];
      }
      pivcol.push_back(col);
      ++prow;
    }
    bool consistent = true;
    for (std::size_t r = prow; r < rows; ++r)
      if (sgn(aug[r][cols]) != 0) consistent = false;
    if (!consistent) continue;
    std::vector<Rational> coords(cols);
    for (std::size_t i = 0; i < pivcol.size(); ++i) coords[pivcol[i]] = aug[i][cols];
    return from_coords(m, coords);
  }
  return *this;
}

/// Reduced canonical representative of sum_k raw[k] zeta_n^k, moved to the
/// smallest conductor that contains it.
inline Cyclotomic cyclo_normalize(int n, const std::vector<Rational>& raw) {
  return Cyclotomic::from_power_coeffs(n, raw).minimized();
}

inline Cyclotomic cyclo_normalize(const Cyclotomic& c) { return c.minimized(); }

inline bool is_zero(const Cyclotomic& c) { return c.is_zero(); }

struct CyclotomicHash {
  std::size_t operator()(const Cyclotomic& c) const { return c.hash(); }
};

}  // namespace crg
