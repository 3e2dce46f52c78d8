#pragma once

// Sparse multivariate polynomials over an exact field, plus products of
// linear forms kept in factored form.

#include <array>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include "crg/matrix.hpp"

namespace crg {

inline constexpr std::size_t kMaxVars = 8;
using Exponent = std::array<std::uint16_t, kMaxVars>;

inline int exponent_degree(const Exponent& e) {
  int d = 0;
  for (auto v : e) d += v;
  return d;
}

inline long exponent_weighted_degree(const Exponent& e, const std::vector<int>& weights) {
  long d = 0;
  for (std::size_t i = 0; i < weights.size() && i < kMaxVars; ++i) d += static_cast<long>(weights[i]) * e[i];
  return d;
}

inline Exponent exponent_add(const Exponent& a, const Exponent& b) {
  Exponent r{};
  for (std::size_t i = 0; i < kMaxVars; ++i) r[i] = static_cast<std::uint16_t>(a[i] + b[i]);
  return r;
}

/// Every exponent vector in `nvars` variables of total degree `d`.
inline std::vector<Exponent> monomials_of_degree(int nvars, int d) {
  std::vector<Exponent> out;
  Exponent e{};
  std::function<void(int, int)> rec = [&](int var, int left) {
    if (var == nvars - 1) {
      e[static_cast<std::size_t>(var)] = static_cast<std::uint16_t>(left);
      out.push_back(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[static_cast<std::size_t>(var)] = static_cast<std::uint16_t>(k);
      rec(var + 1, left - k);
    }
    e[static_cast<std::size_t>(var)] = 0;
  };
  if (nvars == 0) {
    if (d == 0) out.push_back(e);
    return out;
  }
  rec(0, d);
  return out;
}

/// Exponent vectors e with sum_i weights[i] * e[i] == d.
inline std::vector<Exponent> monomials_of_weighted_degree(const std::vector<int>& weights, long d) {
  std::vector<Exponent> out;
  Exponent e{};
  const int n = static_cast<int>(weights.size());
  std::function<void(int, long)> rec = [&](int var, long left) {
    if (var == n) {
      if (left == 0) out.push_back(e);
      return;
    }
    const long w = weights[static_cast<std::size_t>(var)];
    for (long k = left / w; k >= 0; --k) {
      e[static_cast<std::size_t>(var)] = static_cast<std::uint16_t>(k);
      rec(var + 1, left - k * w);
    }
    e[static_cast<std::size_t>(var)] = 0;
  };
  rec(0, d);
  return out;
}

template <class K>
class Polynomial {
 public:
  using Terms = std::map<Exponent, K>;

  explicit Polynomial(int nvars = 4) : nvars_(nvars) {
    if (nvars < 0 || nvars > static_cast<int>(kMaxVars)) throw Error("unsupported number of variables");
  }

  static Polynomial constant(int nvars, const K& c) {
    Polynomial p(nvars);
    p.add_term(Exponent{}, c);
    return p;
  }
  static Polynomial variable(int nvars, int i) {
    Polynomial p(nvars);
    Exponent e{};
    e.at(static_cast<std::size_t>(i)) = 1;
    p.add_term(e, K(1));
    return p;
  }
  static Polynomial monomial(int nvars, const Exponent& e, const K& c = K(1)) {
    Polynomial p(nvars);
    p.add_term(e, c);
    return p;
  }
  /// sum_i coeffs[i] * x_i
  static Polynomial linear_form(const std::vector<K>& coeffs) {
    Polynomial p(static_cast<int>(coeffs.size()));
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      Exponent e{};
      e[i] = 1;
      p.add_term(e, coeffs[i]);
    }
    return p;
  }

  int nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Exponent& e, const K& c) {
    if (crg::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (crg::is_zero(it->second)) terms_.erase(it);
    }
  }

  K coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? K(0) : it->second;
  }

  int total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, exponent_degree(e));
    return d;
  }
  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    const int d = exponent_degree(terms_.begin()->first);
    for (const auto& [e, c] : terms_)
      if (exponent_degree(e) != d) return false;
    return true;
  }
  /// Weighted degree if weighted homogeneous, -1 otherwise (or if zero).
  long weighted_degree(const std::vector<int>& weights) const {
    long d = -1;
    for (const auto& [e, c] : terms_) {
      const long w = exponent_weighted_degree(e, weights);
      if (d >= 0 && w != d) return -1;
      d = w;
    }
    return d;
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }
  Polynomial& operator+=(const Polynomial& o) {
    check_vars(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check_vars(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Polynomial operator*(const Polynomial& o) const {
    check_vars(o);
    Polynomial r(nvars_);
    for (const auto& [e1, c1] : terms_)
      for (const auto& [e2, c2] : o.terms_) r.add_term(exponent_add(e1, e2), c1 * c2);
    return r;
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  Polynomial scaled(const K& s) const {
    if (crg::is_zero(s)) return Polynomial(nvars_);
    Polynomial r = *this;
    for (auto& [e, c] : r.terms_) c *= s;
    return r;
  }
  Polynomial pow(int k) const {
    Polynomial result = constant(nvars_, K(1)), base = *this;
    while (k > 0) {
      if (k & 1) result = result * base;
      k >>= 1;
      if (k > 0) base = base * base;
    }
    return result;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  Polynomial derivative(int var) const {
    Polynomial r(nvars_);
    const auto v = static_cast<std::size_t>(var);
    for (const auto& [e, c] : terms_) {
      if (e[v] == 0) continue;
      Exponent f = e;
      --f[v];
      r.add_term(f, c * K(static_cast<long>(e[v])));
    }
    return r;
  }

  /// Evaluates at a point whose coordinates may live in a different field.
  template <class V>
  auto eval(const std::vector<V>& pt) const {
    using R = std::conditional_t<std::is_same_v<K, Rational> && std::is_same_v<V, Rational>, Rational, Cyclotomic>;
    if (static_cast<int>(pt.size()) < nvars_) throw Error("evaluation point has too few coordinates");
    std::vector<int> maxdeg(static_cast<std::size_t>(nvars_), 0);
    for (const auto& [e, c] : terms_)
      for (int i = 0; i < nvars_; ++i)
        maxdeg[static_cast<std::size_t>(i)] = std::max<int>(maxdeg[static_cast<std::size_t>(i)], e[static_cast<std::size_t>(i)]);
    std::vector<std::vector<R>> pows(static_cast<std::size_t>(nvars_));
    for (int i = 0; i < nvars_; ++i) {
      auto& pw = pows[static_cast<std::size_t>(i)];
      pw.push_back(R(1));
      for (int k = 1; k <= maxdeg[static_cast<std::size_t>(i)]; ++k) pw.push_back(pw.back() * R(pt[static_cast<std::size_t>(i)]));
    }
    R sum(0);
    for (const auto& [e, c] : terms_) {
      R t(c);
      for (int i = 0; i < nvars_; ++i) {
        const auto k = e[static_cast<std::size_t>(i)];
        if (k) t *= pows[static_cast<std::size_t>(i)][k];
      }
      sum += t;
    }
    return sum;
  }

  /// f(g_1, ..., g_n); the result lives in the ring of the substituted polynomials.
  Polynomial compose(const std::vector<Polynomial>& subs) const {
    if (static_cast<int>(subs.size()) < nvars_) throw Error("compose: too few substitutions");
    const int out_vars = subs.empty() ? 0 : subs[0].nvars();
    std::vector<std::vector<Polynomial>> pows(static_cast<std::size_t>(nvars_));
    for (int i = 0; i < nvars_; ++i) pows[static_cast<std::size_t>(i)].push_back(constant(out_vars, K(1)));
    auto power = [&](int i, int k) -> const Polynomial& {
      auto& pw = pows[static_cast<std::size_t>(i)];
      while (static_cast<int>(pw.size()) <= k) pw.push_back(pw.back() * subs[static_cast<std::size_t>(i)]);
      return pw[static_cast<std::size_t>(k)];
    };
    Polynomial r(out_vars);
    for (const auto& [e, c] : terms_) {
      Polynomial t = constant(out_vars, c);
      for (int i = 0; i < nvars_; ++i)
        if (e[static_cast<std::size_t>(i)]) t = t * power(i, e[static_cast<std::size_t>(i)]);
      r += t;
    }
    return r;
  }

  /// f(A x): variable i is replaced by the linear form given by row i of A.
  Polynomial substitute_linear(const Matrix<K>& a) const {
    std::vector<Polynomial> subs;
    for (std::size_t i = 0; i < a.rows(); ++i) subs.push_back(linear_form(a.row(i)));
    return compose(subs);
  }

  /// Coefficient-wise conversion into another field.
  template <class L>
  Polynomial<L> convert() const {
    Polynomial<L> r(nvars_);
    for (const auto& [e, c] : terms_) r.add_term(e, L(c));
    return r;
  }

  std::string to_string(const std::vector<std::string>& names = {}) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      std::string cs = coeff_text(c);
      // A plain number carries its own sign; compound coefficients stay parenthesized.
      const bool plain = cs.find_first_of("+-* z", 1) == std::string::npos;
      if (plain && cs[0] == '-') {
        os << (first ? "-" : " - ");
        cs.erase(0, 1);
      } else if (!first) {
        os << " + ";
      }
      first = false;
      if (exponent_degree(e) == 0) {
        os << cs;
        continue;
      }
      if (cs != "1") os << (plain ? cs : "(" + cs + ")") << "*";
      bool firstv = true;
      for (int i = 0; i < nvars_; ++i) {
        const auto k = e[static_cast<std::size_t>(i)];
        if (!k) continue;
        if (!firstv) os << "*";
        firstv = false;
        os << var_name(names, i);
        if (k > 1) os << "^" << k;
      }
    }
    return os.str();
  }

 private:
  void check_vars(const Polynomial& o) const {
    if (o.nvars_ != nvars_) throw Error("polynomials live in different rings");
  }
  static std::string coeff_text(const Rational& r) { return r.get_str(); }
  static std::string coeff_text(const Cyclotomic& c) { return c.to_string(); }
  static std::string var_name(const std::vector<std::string>& names, int i) {
    if (i < static_cast<int>(names.size())) return names[static_cast<std::size_t>(i)];
    static const char* defaults[] = {"x", "y", "z", "t", "u", "v", "w", "s"};
    return defaults[i];
  }

  int nvars_;
  Terms terms_;
};

using MultiPoly = Polynomial<Cyclotomic>;
using QPoly = Polynomial<Rational>;

inline bool is_zero(const MultiPoly& p) { return p.is_zero(); }
inline bool is_zero(const QPoly& p) { return p.is_zero(); }

/// scalar * prod_i (linear form i), never expanded unless asked.
struct ProductForm {
  Cyclotomic scalar{1};
  std::vector<std::vector<Cyclotomic>> factors;

  int degree() const { return static_cast<int>(factors.size()); }

  template <class V>
  Cyclotomic eval(const std::vector<V>& pt) const {
    Cyclotomic r = scalar;
    for (const auto& f : factors) {
      Cyclotomic s(0);
      for (std::size_t i = 0; i < f.size(); ++i)
        if (!f[i].is_zero()) s += f[i] * Cyclotomic(pt[i]);
      r *= s;
      if (r.is_zero()) break;
    }
    return r;
  }

  ProductForm times(const ProductForm& o) const {
    ProductForm r = *this;
    r.scalar *= o.scalar;
    r.factors.insert(r.factors.end(), o.factors.begin(), o.factors.end());
    return r;
  }

  MultiPoly expand(int nvars = 4) const {
    MultiPoly r = MultiPoly::constant(nvars, scalar);
    for (const auto& f : factors) r = r * MultiPoly::linear_form(f);
    return r;
  }
};

}  // namespace crg
