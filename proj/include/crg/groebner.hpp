#pragma once

// Buchberger's algorithm with an elimination block order, over Q (integer,
// content-normalized generators) or a prime field.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "crg/modular.hpp"
#include "crg/polynomial.hpp"

namespace crg {

inline constexpr std::size_t kDefaultGbSteps = 100'000;

/// Block order: the first `eliminate` variables dominate, degrevlex inside each block.
struct BlockOrder {
  int nvars = 0;
  int eliminate = 0;

  static int block_cmp(const Exponent& a, const Exponent& b, int lo, int hi) {
    int da = 0, db = 0;
    for (int i = lo; i < hi; ++i) {
      da += a[static_cast<std::size_t>(i)];
      db += b[static_cast<std::size_t>(i)];
    }
    if (da != db) return da < db ? -1 : 1;
    for (int i = hi - 1; i >= lo; --i) {
      const auto x = a[static_cast<std::size_t>(i)], y = b[static_cast<std::size_t>(i)];
      if (x != y) return x > y ? -1 : 1;
    }
    return 0;
  }
  /// -1, 0, 1 as a <, =, > b.
  int cmp(const Exponent& a, const Exponent& b) const {
    if (const int c = block_cmp(a, b, 0, eliminate)) return c;
    return block_cmp(a, b, eliminate, nvars);
  }
  bool in_second_block(const Exponent& a) const {
    for (int i = 0; i < eliminate; ++i)
      if (a[static_cast<std::size_t>(i)]) return false;
    return true;
  }
};

namespace gb {

inline bool divides(const Exponent& a, const Exponent& b, int n) {
  for (int i = 0; i < n; ++i)
    if (a[static_cast<std::size_t>(i)] > b[static_cast<std::size_t>(i)]) return false;
  return true;
}
inline Exponent lcm_exp(const Exponent& a, const Exponent& b) {
  Exponent r{};
  for (std::size_t i = 0; i < kMaxVars; ++i) r[i] = std::max(a[i], b[i]);
  return r;
}
inline Exponent quotient(const Exponent& a, const Exponent& b) {
  Exponent r{};
  for (std::size_t i = 0; i < kMaxVars; ++i) r[i] = static_cast<std::uint16_t>(a[i] - b[i]);
  return r;
}
inline bool coprime(const Exponent& a, const Exponent& b) {
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (a[i] && b[i]) return false;
  return true;
}

// Coefficients in Z, generators kept primitive.
struct IntegerRing {
  using T = Integer;
  static bool is_zero(const T& a) { return a == 0; }
};

// Coefficients in F_p, generators kept monic.
struct PrimeRing {
  using T = modp::u64;
  modp::Field f;
  static bool is_zero(const T& a) { return a == 0; }
};

template <class T>
struct Poly {
  std::vector<Exponent> mon;  // strictly decreasing
  std::vector<T> coef;
  int sugar = 0;
  bool empty() const { return mon.empty(); }
  std::size_t size() const { return mon.size(); }
};

}  // namespace gb

struct GroebnerStats {
  std::size_t reductions = 0;
  std::size_t pairs = 0;
  std::size_t zero_reductions = 0;
};

/// Buchberger with sugar selection and Gebauer-Moeller pair pruning.
template <class Ring>
class Buchberger {
 public:
  using T = typename Ring::T;
  using P = gb::Poly<T>;

  Buchberger(Ring ring, BlockOrder order, std::size_t step_cap) : ring_(ring), ord_(order), cap_(step_cap) {}

  std::vector<P> run(std::vector<P> input) {
    for (auto& p : input) {
      normalize(p);
      if (p.empty()) continue;
      p = reduce(p, /*full=*/true);
      if (!p.empty()) update(std::move(p));
    }
    while (!pairs_.empty()) {
      auto it = std::min_element(pairs_.begin(), pairs_.end(), [&](const Pair& a, const Pair& b) {
        if (a.sugar != b.sugar) return a.sugar < b.sugar;
        return ord_.cmp(a.lcm, b.lcm) < 0;
      });
      const Pair pr = *it;
      pairs_.erase(it);
      ++stats.pairs;
      if (trace_ && stats.pairs % 100 == 0)
        std::fprintf(stderr, "pairs %zu left %zu basis %zu sugar %d red %zu\n", stats.pairs, pairs_.size(),
                     basis_.size(), pr.sugar, stats.reductions);
      P s = spoly(basis_[pr.i], basis_[pr.j], pr);
      s = reduce(s, true);
      if (s.empty()) {
        ++stats.zero_reductions;
        continue;
      }
      if (s.mon.front() == Exponent{}) {  // unit ideal
        basis_.clear();
        active_.clear();
        pairs_.clear();
        update(std::move(s));
        break;
      }
      update(std::move(s));
    }
    return interreduce();
  }

  /// True when every input and every S-polynomial of `basis` reduces to zero.
  bool verify(std::vector<P> basis, std::vector<P> inputs) {
    basis_ = std::move(basis);
    active_.assign(basis_.size(), 1);
    for (auto& p : inputs) {
      normalize(p);
      if (!reduce(std::move(p), true).empty()) return false;
    }
    for (std::size_t i = 0; i < basis_.size(); ++i)
      for (std::size_t j = i + 1; j < basis_.size(); ++j) {
        const auto& li = basis_[i].mon.front();
        const auto& lj = basis_[j].mon.front();
        if (gb::coprime(li, lj)) continue;
        const Pair pr{i, j, gb::lcm_exp(li, lj), 0};
        // chain criterion: lm_k divides the lcm and both pairs with k have strictly smaller lcm
        bool chain = false;
        for (std::size_t k = 0; k < basis_.size() && !chain; ++k)
          if (k != i && k != j && gb::divides(basis_[k].mon.front(), pr.lcm, ord_.nvars) &&
              gb::lcm_exp(basis_[k].mon.front(), li) != pr.lcm && gb::lcm_exp(basis_[k].mon.front(), lj) != pr.lcm)
            chain = true;
        if (chain) continue;
        ++stats.pairs;
        if (!reduce(spoly(basis_[i], basis_[j], pr), true).empty()) return false;
      }
    return true;
  }

  GroebnerStats stats;

 private:
  struct Pair {
    std::size_t i, j;
    Exponent lcm;
    int sugar;
  };

  int degree(const Exponent& e) const {
    int d = 0;
    for (int i = 0; i < ord_.nvars; ++i) d += e[static_cast<std::size_t>(i)];
    return d;
  }

  void normalize(P& p) const {
    if (p.empty()) return;
    if constexpr (std::is_same_v<T, Integer>) {
      Integer g = 0;
      for (const auto& c : p.coef) {
        g = gcd(g, c);
        if (g == 1) break;
      }
      if (p.coef.front() < 0) g = -g;
      if (g != 1)
        for (auto& c : p.coef) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    } else {
      const T inv = ring_.f.inv(p.coef.front());
      if (inv != 1)
        for (auto& c : p.coef) c = ring_.f.mul(c, inv);
    }
  }

  // a*f - b*(m*g), where f's term at `pos` cancels.
  P combine(const P& f, const T& a, const T& b, const Exponent& m, const P& g) const {
    P r;
    r.sugar = std::max(f.sugar, g.sugar + degree(m));
    r.mon.reserve(f.size() + g.size());
    r.coef.reserve(f.size() + g.size());
    std::size_t i = 0, j = 0;
    auto push = [&](const Exponent& e, T c) {
      if (!Ring::is_zero(c)) {
        r.mon.push_back(e);
        r.coef.push_back(std::move(c));
      }
    };
    while (i < f.size() || j < g.size()) {
      int c;
      Exponent gm{};
      if (j < g.size()) gm = exponent_add(g.mon[j], m);
      if (i >= f.size()) c = -1;
      else if (j >= g.size()) c = 1;
      else c = ord_.cmp(f.mon[i], gm);
      if (c > 0) {
        push(f.mon[i], mul(a, f.coef[i]));
        ++i;
      } else if (c < 0) {
        push(gm, neg(mul(b, g.coef[j])));
        ++j;
      } else {
        push(gm, sub(mul(a, f.coef[i]), mul(b, g.coef[j])));
        ++i;
        ++j;
      }
    }
    return r;
  }

  T mul(const T& x, const T& y) const {
    if constexpr (std::is_same_v<T, Integer>) return x * y;
    else return ring_.f.mul(x, y);
  }
  T sub(const T& x, const T& y) const {
    if constexpr (std::is_same_v<T, Integer>) return x - y;
    else return ring_.f.sub(x, y);
  }
  T neg(const T& x) const {
    if constexpr (std::is_same_v<T, Integer>) return -x;
    else return ring_.f.neg(x);
  }

  // Multipliers (a, b) with a*cf - b*cg = 0.
  std::pair<T, T> cancel(const T& cf, const T& cg) const {
    if constexpr (std::is_same_v<T, Integer>) {
      const Integer g = gcd(cf, cg);
      return {cg / g, cf / g};
    } else {
      return {T(1), ring_.f.mul(cf, ring_.f.inv(cg))};
    }
  }

  P reduce(P f, bool full) {
    std::size_t pos = 0;
    while (pos < f.size()) {
      const P* div = nullptr;
      for (std::size_t k = 0; k < basis_.size(); ++k) {
        if (!active_[k]) continue;
        if (gb::divides(basis_[k].mon.front(), f.mon[pos], ord_.nvars)) {
          div = &basis_[k];
          break;
        }
      }
      if (!div) {
        if (!full) break;
        ++pos;
        continue;
      }
      if (++stats.reductions > cap_)
        throw BudgetExceeded("Groebner basis computation exceeded the step cap of " + std::to_string(cap_));
      const auto [a, b] = cancel(f.coef[pos], div->coef.front());
      const Exponent m = gb::quotient(f.mon[pos], div->mon.front());
      f = combine(f, a, b, m, *div);
      if constexpr (std::is_same_v<T, Integer>) {
        if (stats.reductions % 1 == 0) normalize(f);
      }
    }
    normalize(f);
    return f;
  }

  P spoly(const P& f, const P& g, const Pair& pr) const {
    const Exponent mf = gb::quotient(pr.lcm, f.mon.front());
    const Exponent mg = gb::quotient(pr.lcm, g.mon.front());
    const auto [a, b] = cancel(f.coef.front(), g.coef.front());
    P fm;  // mf * f
    fm.sugar = f.sugar + degree(mf);
    for (std::size_t i = 0; i < f.size(); ++i) {
      fm.mon.push_back(exponent_add(f.mon[i], mf));
      fm.coef.push_back(f.coef[i]);
    }
    P r = combine(fm, a, b, mg, g);
    return r;
  }

  // Gebauer-Moeller installation of a new generator.
  void update(P h) {
    const std::size_t hi = basis_.size();
    const Exponent lh = h.mon.front();
    if (h.sugar == 0) h.sugar = degree(lh);
    basis_.push_back(std::move(h));
    active_.push_back(1);
    const int hs = basis_[hi].sugar;

    std::vector<Pair> c;
    for (std::size_t k = 0; k < hi; ++k)
      if (active_[k]) {
        const auto l = gb::lcm_exp(lh, basis_[k].mon.front());
        const int s = std::max(hs + degree(l) - degree(lh), basis_[k].sugar + degree(l) - degree(basis_[k].mon.front()));
        c.push_back({k, hi, l, s});
      }
    std::vector<Pair> d;
    for (std::size_t a = 0; a < c.size(); ++a) {
      const auto& p = c[a];
      bool keep = gb::coprime(lh, basis_[p.i].mon.front());
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < c.size() && keep; ++b)
          if (gb::divides(c[b].lcm, p.lcm, ord_.nvars)) keep = false;
        for (const auto& q : d)
          if (gb::divides(q.lcm, p.lcm, ord_.nvars)) keep = false;
      }
      if (keep) d.push_back(p);
    }
    std::vector<Pair> e;
    for (const auto& p : d)
      if (!gb::coprime(lh, basis_[p.i].mon.front())) e.push_back(p);
    std::vector<Pair> kept;
    for (const auto& p : pairs_) {
      const auto& l = p.lcm;
      const bool drop = gb::divides(lh, l, ord_.nvars) && gb::lcm_exp(basis_[p.i].mon.front(), lh) != l &&
                        gb::lcm_exp(basis_[p.j].mon.front(), lh) != l;
      if (!drop) kept.push_back(p);
    }
    kept.insert(kept.end(), e.begin(), e.end());
    pairs_ = std::move(kept);
    for (std::size_t k = 0; k < hi; ++k)
      if (active_[k] && gb::divides(lh, basis_[k].mon.front(), ord_.nvars)) active_[k] = 0;
  }

  std::vector<P> interreduce() {
    std::vector<P> g;
    for (std::size_t k = 0; k < basis_.size(); ++k)
      if (active_[k]) g.push_back(basis_[k]);
    // Minimal basis: drop elements whose leading term is divisible by another's.
    std::vector<P> minimal;
    for (std::size_t a = 0; a < g.size(); ++a) {
      bool redundant = false;
      for (std::size_t b = 0; b < g.size() && !redundant; ++b)
        if (a != b && gb::divides(g[b].mon.front(), g[a].mon.front(), ord_.nvars) &&
            (g[b].mon.front() != g[a].mon.front() || b < a))
          redundant = true;
      if (!redundant) minimal.push_back(g[a]);
    }
    basis_ = minimal;
    active_.assign(basis_.size(), 1);
    std::vector<P> out;
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      active_[k] = 0;
      P r = reduce(basis_[k], true);
      active_[k] = 1;
      basis_[k] = r;
      out.push_back(r);
    }
    std::sort(out.begin(), out.end(), [&](const P& a, const P& b) { return ord_.cmp(a.mon.front(), b.mon.front()) < 0; });
    return out;
  }

  bool trace_ = std::getenv("CRG_GB_TRACE") != nullptr;
  Ring ring_;
  BlockOrder ord_;
  std::size_t cap_;
  std::vector<P> basis_;
  std::vector<char> active_;
  std::vector<Pair> pairs_;
};

namespace gb {

inline Poly<Integer> from_qpoly(const QPoly& f, const BlockOrder& ord) {
  Integer den = 1;
  for (const auto& [e, c] : f.terms()) den = lcm(den, Integer(c.get_den()));
  std::vector<std::pair<Exponent, Integer>> t;
  for (const auto& [e, c] : f.terms()) t.emplace_back(e, Integer(c * den));
  std::sort(t.begin(), t.end(), [&](const auto& a, const auto& b) { return ord.cmp(a.first, b.first) > 0; });
  Poly<Integer> p;
  for (auto& [e, c] : t) {
    p.mon.push_back(e);
    p.coef.push_back(std::move(c));
  }
  if (!p.empty()) p.sugar = exponent_degree(p.mon.front());
  for (const auto& e : p.mon) p.sugar = std::max(p.sugar, exponent_degree(e));
  return p;
}

inline QPoly to_qpoly(const Poly<Integer>& p, int nvars) {
  QPoly f(nvars);
  for (std::size_t i = 0; i < p.size(); ++i) f.add_term(p.mon[i], Rational(p.coef[i]));
  return f;
}

}  // namespace gb

/// Buchberger directly over Z; the coefficients can swell badly.
inline std::vector<QPoly> groebner_basis_integer(const std::vector<QPoly>& gens, const BlockOrder& ord,
                                                 std::size_t step_cap = kDefaultGbSteps,
                                                 GroebnerStats* stats = nullptr) {
  Buchberger<gb::IntegerRing> bb(gb::IntegerRing{}, ord, step_cap);
  std::vector<gb::Poly<Integer>> in;
  for (const auto& g : gens) in.push_back(gb::from_qpoly(g, ord));
  const auto out = bb.run(std::move(in));
  if (stats) *stats = bb.stats;
  std::vector<QPoly> res;
  for (const auto& p : out) {
    QPoly q = gb::to_qpoly(p, ord.nvars);
    res.push_back(q.scaled(Rational(1) / Rational(p.coef.front())));
  }
  return res;
}

namespace gb {

inline Poly<modp::u64> reduce_mod(const Poly<Integer>& p, const modp::Field& f) {
  Poly<modp::u64> r;
  r.sugar = p.sugar;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto c = static_cast<modp::u64>(mpz_fdiv_ui(p.coef[i].get_mpz_t(), f.p));
    if (c == 0) continue;
    r.mon.push_back(p.mon[i]);
    r.coef.push_back(c);
  }
  return r;
}

// Reduced monic basis mod p, grouped by its monomial support.
struct ModularImage {
  std::vector<std::vector<Exponent>> support;
  std::vector<std::vector<modp::u64>> coef;
};

}  // namespace gb

struct GroebnerOptions {
  std::size_t step_cap = kDefaultGbSteps;
  std::size_t max_primes = 200;
};

/// Reduced Groebner basis over Q, generators made monic.  Computed modulo a
/// stream of primes, lifted by CRT and rational reconstruction, and accepted
/// only after an exact check over Z that the inputs and all S-polynomials
/// reduce to zero.
inline std::vector<QPoly> groebner_basis(const std::vector<QPoly>& gens, const BlockOrder& ord,
                                         GroebnerOptions opt = {}, GroebnerStats* stats = nullptr) {
  std::vector<gb::Poly<Integer>> in;
  for (const auto& g : gens)
    if (!g.is_zero()) in.push_back(gb::from_qpoly(g, ord));
  GroebnerStats total;
  if (in.empty()) return {};

  struct Group {
    std::vector<std::vector<Exponent>> support;
    std::vector<std::vector<Integer>> residue;
    Integer modulus = 1;
    std::size_t primes = 0;
    std::optional<std::vector<QPoly>> last;
  };
  std::vector<Group> groups;
  modp::PrimeStream stream(2);
  for (std::size_t used = 0; used < opt.max_primes; ++used) {
    const modp::Field f{stream.next()};
    Buchberger<gb::PrimeRing> bb(gb::PrimeRing{f}, ord, opt.step_cap);
    std::vector<gb::Poly<modp::u64>> mod_in;
    for (const auto& p : in) mod_in.push_back(gb::reduce_mod(p, f));
    const auto out = bb.run(std::move(mod_in));
    total.reductions += bb.stats.reductions;
    total.pairs += bb.stats.pairs;
    total.zero_reductions += bb.stats.zero_reductions;

    std::vector<std::vector<Exponent>> support;
    for (const auto& p : out) support.push_back(p.mon);
    auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) { return g.support == support; });
    if (it == groups.end()) {
      groups.push_back(Group{support, {}, 1, 0, std::nullopt});
      it = groups.end() - 1;
      for (const auto& p : out) it->residue.emplace_back(p.size(), Integer(0));
    }
    Group& g = *it;
    // CRT: x = r (mod M), x = c (mod p).
    const Integer pz(static_cast<unsigned long>(f.p));
    Integer minv;
    mpz_invert(minv.get_mpz_t(), Integer(g.modulus % pz).get_mpz_t(), pz.get_mpz_t());
    for (std::size_t k = 0; k < out.size(); ++k)
      for (std::size_t t = 0; t < out[k].size(); ++t) {
        Integer& r = g.residue[k][t];
        Integer diff = (Integer(static_cast<unsigned long>(out[k].coef[t])) - r % pz) % pz;
        if (diff < 0) diff += pz;
        r += g.modulus * ((diff * minv) % pz);
      }
    g.modulus *= pz;
    ++g.primes;

    // Reconstruct from the most supported group only.
    const auto best = std::max_element(groups.begin(), groups.end(),
                                       [](const Group& a, const Group& b) { return a.primes < b.primes; });
    if (&*best != &g) continue;
    std::vector<QPoly> cand;
    bool ok = true;
    for (std::size_t k = 0; k < g.support.size() && ok; ++k) {
      QPoly q(ord.nvars);
      for (std::size_t t = 0; t < g.support[k].size() && ok; ++t) {
        const auto c = modp::rational_reconstruct(g.residue[k][t], g.modulus);
        if (!c) ok = false;
        else q.add_term(g.support[k][t], *c);
      }
      cand.push_back(std::move(q));
    }
    if (!ok) continue;
    const bool stable = g.last && *g.last == cand;
    g.last = cand;
    if (!stable) continue;

    Buchberger<gb::IntegerRing> check(gb::IntegerRing{}, ord, opt.step_cap);
    std::vector<gb::Poly<Integer>> basis;
    for (const auto& q : cand) basis.push_back(gb::from_qpoly(q, ord));
    const bool verified = check.verify(basis, in);
    total.reductions += check.stats.reductions;
    if (!verified) continue;
    if (stats) *stats = total;
    return cand;
  }
  throw BudgetExceeded("modular Groebner basis did not stabilize within " + std::to_string(opt.max_primes) + " primes");
}

/// Leading monomial of a polynomial under the order.
inline Exponent leading_monomial(const QPoly& f, const BlockOrder& ord) {
  if (f.is_zero()) throw Error("zero polynomial has no leading monomial");
  Exponent best = f.terms().begin()->first;
  for (const auto& [e, c] : f.terms())
    if (ord.cmp(e, best) > 0) best = e;
  return best;
}

/// Remainder of f on division by a Groebner basis.
inline QPoly normal_form(QPoly f, const std::vector<QPoly>& basis, const BlockOrder& ord) {
  QPoly rem(ord.nvars);
  std::vector<Exponent> leads;
  for (const auto& g : basis) leads.push_back(leading_monomial(g, ord));
  while (!f.is_zero()) {
    const Exponent lt = leading_monomial(f, ord);
    const Rational c = f.coeff(lt);
    bool reduced = false;
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (gb::divides(leads[k], lt, ord.nvars)) {
        const Rational gc = basis[k].coeff(leads[k]);
        f -= basis[k] * QPoly::monomial(ord.nvars, gb::quotient(lt, leads[k]), c / gc);
        reduced = true;
        break;
      }
    if (!reduced) {
      rem.add_term(lt, c);
      f -= QPoly::monomial(ord.nvars, lt, c);
    }
  }
  return rem;
}

}  // namespace crg

namespace crg {

/// Scaled to coprime integer coefficients with a positive leading coefficient.
inline QPoly integral_primitive(const QPoly& f, const BlockOrder& ord) {
  if (f.is_zero()) return f;
  Integer den = 1, num = 0;
  for (const auto& [e, c] : f.terms()) den = lcm(den, Integer(c.get_den()));
  for (const auto& [e, c] : f.terms()) num = gcd(num, Integer(c * den));
  Rational s = Rational(den) / Rational(num);
  if (f.coeff(leading_monomial(f, ord)) < 0) s = -s;
  return f.scaled(s);
}

namespace gb {

// Dense univariate polynomials over Q, lowest degree first.
using Dense = std::vector<Rational>;

inline void trim(Dense& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Dense dense_rem(Dense a, const Dense& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    const Rational q = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= q * b[i];
    trim(a);
  }
  return a;
}

inline Dense dense_quo(Dense a, const Dense& b) {
  trim(a);
  if (a.size() < b.size()) return {};
  Dense q(a.size() - b.size() + 1, Rational(0));
  while (a.size() >= b.size() && !a.empty()) {
    const Rational c = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    trim(a);
  }
  return q;
}

inline Dense dense_gcd(Dense a, Dense b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Dense r = dense_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Rational lc = a.back();
    for (auto& c : a) c /= lc;
  }
  return a;
}

}  // namespace gb

/// Squarefree part p / gcd(p, p') of a polynomial in the single variable `var`.
inline QPoly squarefree_part(const QPoly& p, int var) {
  gb::Dense a;
  for (const auto& [e, c] : p.terms()) {
    for (int i = 0; i < p.nvars(); ++i)
      if (i != var && e[static_cast<std::size_t>(i)]) throw Error("squarefree_part: polynomial is not univariate");
    const std::size_t k = e[static_cast<std::size_t>(var)];
    if (a.size() <= k) a.resize(k + 1, Rational(0));
    a[k] = c;
  }
  gb::Dense da;
  for (std::size_t k = 1; k < a.size(); ++k) da.push_back(a[k] * Rational(static_cast<long>(k)));
  const gb::Dense g = gb::dense_gcd(a, da);
  const gb::Dense q = g.empty() ? a : gb::dense_quo(a, g);
  QPoly out(p.nvars());
  for (std::size_t k = 0; k < q.size(); ++k) {
    Exponent e{};
    e[static_cast<std::size_t>(var)] = static_cast<std::uint16_t>(k);
    if (q[k] != 0) out.add_term(e, q[k]);
  }
  return out;
}

/// Polynomials in `vars` lying in the ideal with reduced basis `basis` (for
/// `basis_order`): the reduced basis of the intersection for `target`, found
/// by linear algebra on normal forms of monomials taken in increasing order.
inline std::vector<QPoly> subring_relations(const std::vector<QPoly>& basis, const BlockOrder& basis_order,
                                            const std::vector<int>& vars, const BlockOrder& target,
                                            std::size_t staircase_cap = 4000,
                                            std::size_t* staircase_size = nullptr) {
  const int n = basis_order.nvars;
  struct Row {
    Exponent pivot;
    std::map<Exponent, Rational> vec;
    std::vector<Rational> comb;  // over the staircase
  };
  std::vector<Exponent> staircase;
  std::vector<QPoly> staircase_nf;
  std::vector<Row> rows;
  std::vector<Exponent> leads;
  std::vector<QPoly> relations;
  struct Cand {
    Exponent m;
    std::size_t parent;  // staircase index, or npos for 1
    int var;
  };
  const auto npos = static_cast<std::size_t>(-1);
  std::vector<Cand> cands{{Exponent{}, npos, -1}};
  std::set<Exponent> seen{Exponent{}};

  while (!cands.empty()) {
    auto it = std::min_element(cands.begin(), cands.end(),
                                [&](const Cand& a, const Cand& b) { return target.cmp(a.m, b.m) < 0; });
    const Cand c = *it;
    cands.erase(it);
    bool divisible = false;
    for (const auto& l : leads)
      if (gb::divides(l, c.m, n)) divisible = true;
    if (divisible) continue;

    QPoly nf = c.parent == npos ? normal_form(QPoly::constant(n, Rational(1)), basis, basis_order)
                                : normal_form(staircase_nf[c.parent] * QPoly::variable(n, c.var), basis, basis_order);
    std::map<Exponent, Rational> v(nf.terms().begin(), nf.terms().end());
    std::vector<Rational> comb(staircase.size() + 1, Rational(0));
    for (const auto& r : rows) {
      const auto f = v.find(r.pivot);
      if (f == v.end()) continue;
      const Rational factor = f->second / r.vec.at(r.pivot);
      for (const auto& [e, x] : r.vec) {
        Rational& y = v[e];
        y -= factor * x;
        if (y == 0) v.erase(e);
      }
      for (std::size_t k = 0; k < r.comb.size(); ++k) comb[k] -= factor * r.comb[k];
    }
    if (v.empty()) {
      // m + sum comb[k] s_k lies in the ideal.
      QPoly rel = QPoly::monomial(n, c.m);
      for (std::size_t k = 0; k < staircase.size(); ++k)
        if (comb[k] != 0) rel.add_term(staircase[k], comb[k]);
      relations.push_back(rel);
      leads.push_back(c.m);
      continue;
    }
    if (staircase.size() >= staircase_cap)
      throw BudgetExceeded("elimination: more than " + std::to_string(staircase_cap) +
                           " independent monomials; the projection is not finite");
    comb[staircase.size()] = Rational(1);
    Exponent piv = v.begin()->first;
    for (const auto& [e, x] : v)
      if (basis_order.cmp(e, piv) > 0) piv = e;
    rows.push_back({piv, std::move(v), std::move(comb)});
    staircase.push_back(c.m);
    staircase_nf.push_back(std::move(nf));
    for (int var : vars) {
      Exponent m = c.m;
      ++m[static_cast<std::size_t>(var)];
      if (seen.insert(m).second) cands.push_back({m, staircase.size() - 1, var});
    }
  }
  if (staircase_size) *staircase_size = staircase.size();
  std::sort(relations.begin(), relations.end(), [&](const QPoly& a, const QPoly& b) {
    return target.cmp(leading_monomial(a, target), leading_monomial(b, target)) < 0;
  });
  return relations;
}

struct EliminationResult {
  std::vector<QPoly> degrevlex_basis;
  std::vector<QPoly> ideal;        // reduced basis of the elimination ideal
  std::vector<QPoly> eliminants;   // univariate, one per kept variable
  std::vector<QPoly> squarefree;
  std::vector<QPoly> radical;      // reduced basis of its radical
  std::size_t quotient_dimension = 0;
  GroebnerStats stats;
};

/// Eliminates the first `eliminate` variables.  The result agrees with the
/// kept-block part of the reduced basis for the block order.  The radical is
/// formed by adjoining the squarefree parts of the univariate eliminants
/// (valid when the projection is finite).
inline EliminationResult groebner_eliminate(const std::vector<QPoly>& system, int eliminate,
                                            GroebnerOptions opt = {}) {
  if (system.empty()) throw Error("groebner_eliminate: empty system");
  const int n = system.front().nvars();
  const BlockOrder grevlex{n, 0}, block{n, eliminate};
  EliminationResult r;
  r.degrevlex_basis = groebner_basis(system, grevlex, opt, &r.stats);
  std::vector<int> kept;
  for (int i = eliminate; i < n; ++i) kept.push_back(i);
  r.ideal = subring_relations(r.degrevlex_basis, grevlex, kept, block, 4000, &r.quotient_dimension);
  std::vector<QPoly> rad_gens = r.ideal;
  for (int v : kept) {
    const auto rel = subring_relations(r.degrevlex_basis, grevlex, {v}, block);
    if (rel.size() != 1) throw Error("elimination: expected a single univariate eliminant");
    r.eliminants.push_back(rel.front());
    r.squarefree.push_back(squarefree_part(rel.front(), v));
    rad_gens.push_back(r.squarefree.back());
  }
  r.radical = groebner_basis(rad_gens, block, opt);
  return r;
}

}  // namespace crg
