#pragma once

// Invariant theory of an enumerated reflection group: graded invariant
// spaces, fundamental invariants, discriminant forms and relations among
// invariants found by interpolation.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include "crg/catalog.hpp"
#include "crg/modular.hpp"
#include "crg/polynomial.hpp"
#include "crg/random.hpp"
#include "crg/power_series.hpp"

namespace crg {

inline constexpr int kDefaultDegreeCap = 40;

/// ^g f (v) = f(g^{-1} v).
inline MultiPoly poly_act(const CMatrix& g, const MultiPoly& f) {
  if (static_cast<std::size_t>(f.nvars()) != g.rows()) throw Error("polynomial and matrix sizes differ");
  return f.substitute_linear(g.inverse());
}

/// Average of ^w f over the whole group.
inline MultiPoly reynolds(const ReflectionGroup& g, const MultiPoly& f) {
  MultiPoly sum(f.nvars());
  for (std::size_t i = 0; i < g.order(); ++i) sum += f.substitute_linear(g.element(i));
  return sum.scaled(Cyclotomic(make_rational(1, static_cast<long>(g.order()))));
}

namespace detail {

// Reduction of a polynomial under one embedding, ready for fast evaluation.
struct ModPoly {
  std::vector<std::pair<Exponent, modp::u64>> terms;
  int max_exp = 0;
};

inline ModPoly reduce_poly(const MultiPoly& f, const modp::Embedding& emb) {
  ModPoly m;
  for (const auto& [e, c] : f.terms()) {
    const auto v = emb.map(c);
    if (v != 0) m.terms.emplace_back(e, v);
    for (auto k : e) m.max_exp = std::max<int>(m.max_exp, k);
  }
  return m;
}

// Powers x_i^k mod p for k <= max.
inline std::vector<std::vector<modp::u64>> mod_power_table(const std::vector<modp::u64>& pt, int max, const modp::Field& f) {
  std::vector<std::vector<modp::u64>> t(pt.size());
  for (std::size_t i = 0; i < pt.size(); ++i) {
    t[i].resize(static_cast<std::size_t>(max) + 1);
    t[i][0] = 1;
    for (int k = 1; k <= max; ++k) t[i][static_cast<std::size_t>(k)] = f.mul(t[i][static_cast<std::size_t>(k - 1)], pt[i]);
  }
  return t;
}

inline modp::u64 eval_mod(const ModPoly& m, const std::vector<std::vector<modp::u64>>& pw, const modp::Field& f) {
  modp::u64 s = 0;
  for (const auto& [e, c] : m.terms) {
    modp::u64 t = c;
    for (std::size_t i = 0; i < pw.size(); ++i)
      if (e[i]) t = f.mul(t, pw[i][e[i]]);
    s = f.add(s, t);
  }
  return s;
}

inline int max_conductor(const std::vector<MultiPoly>& polys, int start = 1) {
  int n = canonical_conductor(start);
  for (const auto& p : polys)
    for (const auto& [e, c] : p.terms()) n = lcm_int(n, c.conductor());
  return n;
}

// Values of several polynomials at one point, sharing monomial values.
template <class V>
std::vector<Cyclotomic> eval_many(const std::vector<MultiPoly>& polys, const std::vector<V>& pt) {
  int maxe = 0;
  for (const auto& f : polys)
    for (const auto& [e, c] : f.terms())
      for (auto k : e) maxe = std::max<int>(maxe, k);
  std::vector<std::vector<Cyclotomic>> pw(pt.size());
  for (std::size_t i = 0; i < pt.size(); ++i) {
    pw[i].push_back(Cyclotomic(1));
    for (int k = 1; k <= maxe; ++k) pw[i].push_back(pw[i].back() * Cyclotomic(pt[i]));
  }
  std::map<Exponent, Cyclotomic> mono;
  std::vector<Cyclotomic> out;
  for (const auto& f : polys) {
    Cyclotomic s(0);
    for (const auto& [e, c] : f.terms()) {
      auto it = mono.find(e);
      if (it == mono.end()) {
        Cyclotomic v(1);
        for (std::size_t i = 0; i < pt.size(); ++i)
          if (e[i]) v *= pw[i][e[i]];
        it = mono.emplace(e, std::move(v)).first;
      }
      s += c.is_one() ? it->second : c * it->second;
    }
    out.push_back(std::move(s));
  }
  return out;
}

// Monomial matrix x -> (scale_i * x_perm(i))_i with scales as exponents of zeta_L.
struct MonomialAction {
  std::vector<int> perm;
  std::vector<long> scale;
};

}  // namespace detail

/// The monomial elements of G (they form a subgroup) as permutation-with-scalars data.
struct MonomialSubgroup {
  long root_order = 1;  // L: scales are powers of zeta_L
  std::vector<detail::MonomialAction> actions;
  std::vector<std::size_t> elements;
};

inline MonomialSubgroup monomial_subgroup(const ReflectionGroup& g) {
  MonomialSubgroup out;
  std::vector<std::vector<RootOfUnity>> scales;
  std::vector<std::vector<int>> perms;
  for (std::size_t i = 0; i < g.order(); ++i) {
    if (!g.is_monomial(i)) continue;
    const CMatrix m = g.element(i);
    std::vector<int> perm(g.dim());
    std::vector<RootOfUnity> sc(g.dim());
    for (std::size_t r = 0; r < g.dim(); ++r)
      for (std::size_t c = 0; c < g.dim(); ++c)
        if (!m(r, c).is_zero()) {
          perm[r] = static_cast<int>(c);
          sc[r] = ReflectionGroup::identify_root(m(r, c), std::lcm(2L, static_cast<long>(g.conductor())));
          out.root_order = std::lcm(out.root_order, sc[r].den);
        }
    perms.push_back(std::move(perm));
    scales.push_back(std::move(sc));
    out.elements.push_back(i);
  }
  for (std::size_t k = 0; k < perms.size(); ++k) {
    detail::MonomialAction a{perms[k], {}};
    for (const auto& z : scales[k]) a.scale.push_back(z.num * (out.root_order / z.den));
    out.actions.push_back(std::move(a));
  }
  return out;
}

/// Sums over M-orbits of the degree-d monomials (m o w summed over w in M),
/// skipping orbits whose sum vanishes.
inline std::vector<MultiPoly> monomial_orbit_sums(const MonomialSubgroup& m, int nvars, int d) {
  std::vector<MultiPoly> out;
  std::set<Exponent> visited;
  const long l = m.root_order;
  for (const auto& start : monomials_of_degree(nvars, d)) {
    if (visited.count(start)) continue;
    std::map<Exponent, std::vector<Rational>> acc;
    for (const auto& a : m.actions) {
      Exponent b{};
      long angle = 0;
      for (int i = 0; i < nvars; ++i) {
        const auto k = start[static_cast<std::size_t>(i)];
        if (!k) continue;
        b[static_cast<std::size_t>(a.perm[static_cast<std::size_t>(i)])] += k;
        angle += a.scale[static_cast<std::size_t>(i)] * k;
      }
      auto& slot = acc[b];
      if (slot.empty()) slot.assign(static_cast<std::size_t>(l), Rational(0));
      slot[static_cast<std::size_t>(angle % l)] += 1;
    }
    MultiPoly sum(nvars);
    for (const auto& [e, counts] : acc) {
      visited.insert(e);
      sum.add_term(e, Cyclotomic::from_power_coeffs(static_cast<int>(l), counts));
    }
    if (!sum.is_zero()) out.push_back(std::move(sum));
  }
  return out;
}

struct InvariantBasis {
  int degree = 0;
  std::vector<MultiPoly> basis;
  long molien_dimension = 0;
};

struct InvariantOptions {
  int degree_cap = kDefaultDegreeCap;
  std::uint64_t seed = kDefaultSeed;
  long coordinate_bound = 5;
};

/// Rational polynomials scaled to coprime integer coefficients with a
/// positive leading term; others are returned unchanged.
inline MultiPoly primitive_part(const MultiPoly& f) {
  if (f.is_zero()) return f;
  Integer den = 1, num = 0;
  for (const auto& [e, c] : f.terms()) {
    if (!c.is_rational()) return f;
    const Rational q = c.rational_part();
    den = lcm(den, Integer(q.get_den()));
    num = gcd(num, Integer(q.get_num()));
  }
  Rational scale(den, num);
  scale.canonicalize();
  if (f.terms().rbegin()->second.rational_part() < 0) scale = -scale;
  return f.scaled(Cyclotomic(scale));
}

/// Group data reused across degrees.
class InvariantContext {
 public:
  explicit InvariantContext(const ReflectionGroup& g, InvariantOptions opt = {})
      : g_(&g), opt_(opt), monomial_(monomial_subgroup(g)) {
    for (std::size_t k = 0; k < g.generator_count(); ++k)
      if (!g.is_monomial(g.generator_element(k))) extra_.push_back(g.generators()[k]);
  }

  const ReflectionGroup& group() const { return *g_; }
  const MonomialSubgroup& monomial() const { return monomial_; }
  const InvariantOptions& options() const { return opt_; }

  long molien_coefficient(int d) const {
    const auto s = g_->molien_series(d);
    return s.coeffs[static_cast<std::size_t>(d)].get_num().get_si();
  }

  InvariantBasis basis(int d) const {
    if (d < 0) throw Error("degree must be nonnegative");
    if (d > opt_.degree_cap)
      throw BudgetExceeded("degree " + std::to_string(d) + " exceeds the degree cap " + std::to_string(opt_.degree_cap));
    auto it = cache_.find(d);
    if (it != cache_.end()) return it->second;
    InvariantBasis out = compute(d);
    cache_.emplace(d, out);
    return out;
  }

 private:
  InvariantBasis compute(int d) const {
    const int nv = static_cast<int>(g_->dim());
    InvariantBasis out;
    out.degree = d;
    out.molien_dimension = molien_coefficient(d);
    auto cands = monomial_orbit_sums(monomial_, nv, d);
    if (extra_.empty() || cands.empty()) {
      if (static_cast<long>(cands.size()) != out.molien_dimension)
        throw Error("monomial orbit sums disagree with the Molien series");
      for (const auto& c : cands) out.basis.push_back(primitive_part(c));
      return out;
    }
    const std::size_t u = cands.size();
    int n = detail::max_conductor(cands, g_->conductor());
    for (const auto& g : extra_) n = detail::lcm_int(n, matrix_conductor(g));

    Rng rng(opt_.seed + static_cast<std::uint64_t>(d) * 7919);
    std::vector<std::vector<Rational>> points;
    const std::size_t need = u - static_cast<std::size_t>(out.molien_dimension);
    auto add_points = [&](std::size_t k) {
      for (std::size_t i = 0; i < k; ++i) points.push_back(rng.point(static_cast<std::size_t>(nv), opt_.coordinate_bound));
    };
    add_points(need / extra_.size() + 4);

    auto fill = [&](const modp::Embedding& emb, modp::ModMatrix& m) {
      const auto& f = emb.field();
      std::vector<detail::ModPoly> red;
      int maxe = 0;
      for (const auto& c : cands) {
        red.push_back(detail::reduce_poly(c, emb));
        maxe = std::max(maxe, red.back().max_exp);
      }
      std::vector<std::vector<std::vector<modp::u64>>> gm;  // generator entries mod p
      for (const auto& g : extra_) {
        std::vector<std::vector<modp::u64>> rows(g.rows(), std::vector<modp::u64>(g.cols()));
        for (std::size_t r = 0; r < g.rows(); ++r)
          for (std::size_t c = 0; c < g.cols(); ++c) rows[r][c] = emb.map(g(r, c));
        gm.push_back(std::move(rows));
      }
      std::size_t row = 0;
      for (const auto& p : points) {
        std::vector<modp::u64> pm;
        for (const auto& x : p) pm.push_back(emb.map(x));
        const auto pw = detail::mod_power_table(pm, maxe, f);
        std::vector<modp::u64> base(u);
        for (std::size_t j = 0; j < u; ++j) base[j] = detail::eval_mod(red[j], pw, f);
        for (const auto& g : gm) {
          std::vector<modp::u64> q(pm.size(), 0);
          for (std::size_t r = 0; r < q.size(); ++r)
            for (std::size_t c = 0; c < q.size(); ++c) q[r] = f.add(q[r], f.mul(g[r][c], pm[c]));
          const auto pq = detail::mod_power_table(q, maxe, f);
          for (std::size_t j = 0; j < u; ++j) m(row, j) = f.sub(detail::eval_mod(red[j], pq, f), base[j]);
          ++row;
        }
      }
    };

    // Probe one prime to make sure the sampled equations cut the space down to
    // the Molien dimension; kernel dimension mod p bounds the exact one from above.
    for (int attempt = 0;; ++attempt) {
      modp::PrimeStream ps(n);
      const modp::Field f{ps.next()};
      const modp::u64 root = modp::primitive_root_of_unity(f, n);
      modp::Embedding emb(f, n, root);
      modp::ModMatrix m(points.size() * extra_.size(), u);
      fill(emb, m);
      const auto piv = modp::rref(m, f);
      if (u - piv.size() == static_cast<std::size_t>(out.molien_dimension)) break;
      if (u - piv.size() < static_cast<std::size_t>(out.molien_dimension))
        throw Error("sampled invariance equations have a kernel smaller than the Molien dimension");
      if (attempt > 20) throw Error("could not certify the invariant space dimension");
      add_points(need / extra_.size() + 2);
    }

    // Exact equations, built once and only if a reconstruction needs checking.
    std::vector<std::vector<Cyclotomic>> exact;
    auto accept = [&](const modp::ExactRref& r) {
      if (exact.empty()) {
        for (const auto& p : points) {
          const auto base = detail::eval_many(cands, p);
          const std::vector<Cyclotomic> pc(p.begin(), p.end());
          for (const auto& g : extra_) {
            auto row = detail::eval_many(cands, g * pc);
            for (std::size_t j = 0; j < u; ++j) row[j] -= base[j];
            exact.push_back(std::move(row));
          }
        }
      }
      for (const auto& v : kernel_from(r, u))
        for (const auto& row : exact) {
          Cyclotomic s(0);
          for (std::size_t j = 0; j < u; ++j)
            if (!v[j].is_zero() && !row[j].is_zero()) s += v[j] * row[j];
          if (!s.is_zero()) return false;
        }
      return true;
    };
    const auto r = modp::multimodular_rref(n, points.size() * extra_.size(), u, fill, accept);
    for (const auto& v : kernel_from(r, u)) out.basis.push_back(primitive_part(combine(cands, v, nv)));
    if (static_cast<long>(out.basis.size()) != out.molien_dimension) throw Error("invariant space dimension mismatch");
    return out;
  }

  static std::vector<std::vector<Cyclotomic>> kernel_from(const modp::ExactRref& r, std::size_t u) {
    std::vector<char> is_piv(u, 0);
    for (auto c : r.pivots) is_piv[c] = 1;
    std::vector<std::vector<Cyclotomic>> out;
    for (std::size_t f = 0; f < u; ++f) {
      if (is_piv[f]) continue;
      std::vector<Cyclotomic> v(u, Cyclotomic(0));
      v[f] = Cyclotomic(1);
      for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = -r.rows[i][f];
      out.push_back(std::move(v));
    }
    return out;
  }

  static MultiPoly combine(const std::vector<MultiPoly>& polys, const std::vector<Cyclotomic>& v, int nv) {
    MultiPoly f(nv);
    for (std::size_t j = 0; j < polys.size(); ++j)
      if (!v[j].is_zero()) f += polys[j].scaled(v[j]);
    return f;
  }

  const ReflectionGroup* g_;
  InvariantOptions opt_;
  MonomialSubgroup monomial_;
  std::vector<CMatrix> extra_;
  mutable std::map<int, InvariantBasis> cache_;
};

inline InvariantBasis invariant_basis(const ReflectionGroup& g, int d, InvariantOptions opt = {}) {
  return InvariantContext(g, opt).basis(d);
}

/// sum_i x_i^k.
inline MultiPoly power_sum(int nvars, int k) {
  MultiPoly p(nvars);
  for (int i = 0; i < nvars; ++i) {
    Exponent e{};
    e[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(k);
    p.add_term(e, Cyclotomic(1));
  }
  return p;
}

/// (x_1 ... x_n)^k.
inline MultiPoly product_power(int nvars, int k) {
  Exponent e{};
  for (int i = 0; i < nvars; ++i) e[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(k);
  return MultiPoly::monomial(nvars, e);
}

struct FundamentalSystem {
  std::vector<MultiPoly> polys;
  std::vector<int> degrees;
  std::string source;  // "override" or "basis"
  Cyclotomic jacobian_at_witness;
  std::vector<Rational> witness_point;
};

inline CMatrix jacobian_at(const std::vector<MultiPoly>& polys, const std::vector<Rational>& pt) {
  const std::size_t n = pt.size();
  CMatrix j(polys.size(), n);
  for (std::size_t i = 0; i < polys.size(); ++i)
    for (std::size_t k = 0; k < n; ++k) j(i, k) = polys[i].derivative(static_cast<int>(k)).eval(pt);
  return j;
}

/// Supplied fundamental invariants for groups whose invariants have a classical form.
inline std::optional<std::vector<MultiPoly>> fundamental_override(const std::string& name) {
  const std::string canon = canonical_group_name(name);
  static const std::regex imprimitive(R"(G\((\d+),(\d+),4\))");
  std::smatch m;
  if (std::regex_match(canon, m, imprimitive)) {
    const int a = std::stoi(m[1]), b = std::stoi(m[2]);
    return std::vector<MultiPoly>{power_sum(4, a), power_sum(4, 2 * a), power_sum(4, 3 * a), product_power(4, a / b)};
  }
  if (canon == "G(1,1,5)") {
    // Power sums of the five coordinates x_1..x_4, -(x_1+...+x_4).
    std::vector<MultiPoly> out;
    const auto minus_sum = MultiPoly::linear_form({-1, -1, -1, -1});
    for (int k = 2; k <= 5; ++k) out.push_back(power_sum(4, k) + minus_sum.pow(k));
    return out;
  }
  return std::nullopt;
}

/// One invariant per catalog degree, certified algebraically independent by a
/// nonzero Jacobian determinant at a random rational point.
inline FundamentalSystem fundamental_system(const InvariantContext& ctx, const std::vector<int>& degrees,
                                            const std::optional<std::vector<MultiPoly>>& supplied = std::nullopt) {
  const auto& g = ctx.group();
  const auto nv = g.dim();
  Rng rng(ctx.options().seed ^ 0x5eedULL);
  FundamentalSystem fs;
  fs.witness_point = rng.point(nv, 50);
  auto sorted = degrees;
  std::sort(sorted.begin(), sorted.end());
  if (supplied) {
    for (const auto& f : *supplied)
      for (const auto& gen : g.generators())
        if (f.substitute_linear(gen) != f) throw Error("supplied fundamental invariant is not invariant");
    fs.polys = *supplied;
    fs.source = "override";
  } else {
    fs.source = "basis";
    std::vector<std::vector<Cyclotomic>> grads;
    auto rank_with = [&](const std::vector<Cyclotomic>& v) {
      auto rows = grads;
      rows.push_back(v);
      return CMatrix::from_rows(rows).rank();
    };
    auto gradient = [&](const MultiPoly& f) {
      std::vector<Cyclotomic> v;
      for (std::size_t k = 0; k < nv; ++k) v.push_back(f.derivative(static_cast<int>(k)).eval(fs.witness_point));
      return v;
    };
    for (int d : sorted) {
      const auto b = ctx.basis(d).basis;
      bool found = false;
      for (const auto& f : b) {
        auto gr = gradient(f);
        if (rank_with(gr) == grads.size() + 1) {
          grads.push_back(gr);
          fs.polys.push_back(f);
          found = true;
          break;
        }
      }
      for (std::size_t i = 0; i < b.size() && !found; ++i)
        for (std::size_t j = i + 1; j < b.size() && !found; ++j) {
          const MultiPoly f = b[i] + b[j];
          auto gr = gradient(f);
          if (rank_with(gr) == grads.size() + 1) {
            grads.push_back(gr);
            fs.polys.push_back(f);
            found = true;
          }
        }
      if (!found) throw Error("no invariant of degree " + std::to_string(d) + " extends the fundamental system");
    }
  }
  for (const auto& f : fs.polys) fs.degrees.push_back(f.total_degree());
  auto got = fs.degrees;
  std::sort(got.begin(), got.end());
  if (got != sorted) throw Error("fundamental invariants have the wrong degrees");
  fs.jacobian_at_witness = jacobian_at(fs.polys, fs.witness_point).det();
  if (fs.jacobian_at_witness.is_zero()) throw Error("fundamental invariants are not certified independent");
  return fs;
}

struct DiscriminantForms {
  ProductForm j;
  std::vector<ProductForm> orbit_forms;      // J_O, one per hyperplane orbit
  bool transformation_ok = false;            // ^w J = det(w)^{-1} J for all generators
  std::vector<std::vector<RootOfUnity>> orbit_characters;  // [orbit][generator]
};

/// Factor-wise check of the semi-invariance of J and the J_O.
inline DiscriminantForms discriminant_forms(const ReflectionGroup& g) {
  DiscriminantForms out;
  for (const auto& orbit : g.hyperplane_orbits()) {
    ProductForm pf;
    for (auto h : orbit) pf.factors.push_back(g.hyperplanes()[h].form);
    out.orbit_forms.push_back(pf);
    out.j.factors.insert(out.j.factors.end(), pf.factors.begin(), pf.factors.end());
  }
  out.transformation_ok = true;
  out.orbit_characters.assign(out.orbit_forms.size(), {});
  for (std::size_t k = 0; k < g.generator_count(); ++k) {
    const std::size_t w = g.generator_element(k);
    const CMatrix winv = g.element(g.inverse(w));
    RootOfUnity total;
    for (std::size_t o = 0; o < g.hyperplane_orbits().size(); ++o) {
      Cyclotomic scalar(1);
      for (auto h : g.hyperplane_orbits()[o]) {
        const auto img = row_times(g.hyperplanes()[h].form, winv);  // alpha_H o w^{-1}
        const auto target = g.transform_hyperplane(h, w);
        if (g.hyperplane_orbit_of(target) != o) out.transformation_ok = false;
        std::size_t pivot = 0;
        while (g.hyperplanes()[target].form[pivot].is_zero()) ++pivot;
        scalar *= img[pivot];  // the target form has 1 at its pivot
      }
      const RootOfUnity chi = ReflectionGroup::identify_root(scalar, std::lcm(2L, static_cast<long>(g.conductor())));
      out.orbit_characters[o].push_back(chi);
      total = total * chi;
    }
    if (total != g.det(w).inverse()) out.transformation_ok = false;
  }
  return out;
}

struct RelationResult {
  int exponent = 1;
  std::vector<int> weights;
  long weighted_degree = 0;
  std::vector<Exponent> monomials;
  std::vector<Cyclotomic> coefficients;
  std::string verified_by;  // "symbolic" or "random-<n>"
  std::size_t sample_points = 0;

  /// P as a polynomial in variables y_1..y_k of the given weights.
  MultiPoly as_polynomial() const {
    MultiPoly p(static_cast<int>(weights.size()));
    for (std::size_t i = 0; i < monomials.size(); ++i) p.add_term(monomials[i], coefficients[i]);
    return p;
  }
};

struct RelationOptions {
  std::uint64_t seed = kDefaultSeed;
  long coordinate_bound = 100;
  std::size_t margin = 10;
  std::size_t symbolic_term_budget = 5000;
  std::size_t random_checks = 100;
};

/// Target of a relation: either a product of linear forms or an expanded polynomial.
struct RelationTarget {
  std::optional<ProductForm> product;
  std::optional<MultiPoly> poly;

  int degree() const { return product ? product->degree() : poly->total_degree(); }
  Cyclotomic eval(const std::vector<Rational>& pt) const { return product ? product->eval(pt) : poly->eval(pt); }
  MultiPoly expand(int nv) const { return product ? product->expand(nv) : *poly; }
  std::vector<std::vector<Cyclotomic>> linear_factors() const { return product ? product->factors : std::vector<std::vector<Cyclotomic>>{}; }
};

inline long binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Finds P with target^e = P(f_1, ..., f_k) by sampling, then verifies it.
inline RelationResult express_in_invariants(const RelationTarget& target, int e, const std::vector<MultiPoly>& system,
                                            const std::vector<int>& weights, RelationOptions opt = {}) {
  if (system.empty() || system.size() != weights.size()) throw Error("system and weights differ in length");
  const int nv = system[0].nvars();
  RelationResult res;
  res.exponent = e;
  res.weights = weights;
  res.weighted_degree = static_cast<long>(e) * target.degree();
  res.monomials = monomials_of_weighted_degree(weights, res.weighted_degree);
  if (res.monomials.empty()) throw Error("target degree is not representable in the system's weights");
  const std::size_t u = res.monomials.size();

  int n = detail::max_conductor(system);
  if (target.product) {
    n = detail::lcm_int(n, target.product->scalar.conductor());
    for (const auto& f : target.product->factors)
      for (const auto& c : f) n = detail::lcm_int(n, c.conductor());
  } else {
    n = detail::max_conductor({*target.poly}, n);
  }

  Rng rng(opt.seed);
  std::vector<std::vector<Rational>> points;
  int maxmono = 0;
  for (const auto& m : res.monomials)
    for (auto k : m) maxmono = std::max<int>(maxmono, k);

  auto fill = [&](const modp::Embedding& emb, modp::ModMatrix& m) {
    const auto& f = emb.field();
    std::vector<detail::ModPoly> red;
    int maxe = 0;
    for (const auto& s : system) {
      red.push_back(detail::reduce_poly(s, emb));
      maxe = std::max(maxe, red.back().max_exp);
    }
    std::optional<detail::ModPoly> tpoly;
    std::vector<std::vector<modp::u64>> tfactors;
    modp::u64 tscalar = 1;
    if (target.product) {
      tscalar = emb.map(target.product->scalar);
      for (const auto& lf : target.product->factors) {
        std::vector<modp::u64> v;
        for (const auto& c : lf) v.push_back(emb.map(c));
        tfactors.push_back(std::move(v));
      }
    } else {
      tpoly = detail::reduce_poly(*target.poly, emb);
      maxe = std::max(maxe, tpoly->max_exp);
    }
    for (std::size_t r = 0; r < points.size(); ++r) {
      std::vector<modp::u64> pm;
      for (const auto& x : points[r]) pm.push_back(emb.map(x));
      const auto pw = detail::mod_power_table(pm, maxe, f);
      std::vector<modp::u64> vals;
      for (const auto& s : red) vals.push_back(detail::eval_mod(s, pw, f));
      const auto vp = detail::mod_power_table(vals, maxmono, f);
      for (std::size_t j = 0; j < u; ++j) {
        modp::u64 t = 1;
        for (std::size_t i = 0; i < vals.size(); ++i)
          if (res.monomials[j][i]) t = f.mul(t, vp[i][res.monomials[j][i]]);
        m(r, j) = t;
      }
      modp::u64 tv;
      if (target.product) {
        tv = tscalar;
        for (const auto& lf : tfactors) {
          modp::u64 s = 0;
          for (std::size_t i = 0; i < lf.size(); ++i) s = f.add(s, f.mul(lf[i], pm[i]));
          tv = f.mul(tv, s);
        }
      } else {
        tv = detail::eval_mod(*tpoly, pw, f);
      }
      m(r, u) = f.pow(tv, static_cast<modp::u64>(e));
    }
  };

  // Exact value of P(f(p)) - target(p)^e at a rational point.
  auto residual = [&](const std::vector<Cyclotomic>& coeffs, const std::vector<Rational>& p) {
    std::vector<Cyclotomic> vals;
    for (const auto& s : system) vals.push_back(s.eval(p));
    std::vector<std::vector<Cyclotomic>> pw(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) {
      pw[i].push_back(Cyclotomic(1));
      for (int k = 1; k <= maxmono; ++k) pw[i].push_back(pw[i].back() * vals[i]);
    }
    Cyclotomic sum(0);
    for (std::size_t j = 0; j < u; ++j) {
      if (coeffs[j].is_zero()) continue;
      Cyclotomic t = coeffs[j];
      for (std::size_t i = 0; i < vals.size(); ++i)
        if (res.monomials[j][i]) t *= pw[i][res.monomials[j][i]];
      sum += t;
    }
    return sum - target.eval(p).pow(e);
  };

  for (int attempt = 0; attempt < 4; ++attempt) {
    points.clear();
    for (std::size_t k = 0; k < u + opt.margin; ++k) points.push_back(rng.point(static_cast<std::size_t>(nv), opt.coordinate_bound));
    // Rank probe at one prime.
    {
      modp::PrimeStream ps(detail::canonical_conductor(n));
      const modp::Field f{ps.next()};
      modp::Embedding emb(f, detail::canonical_conductor(n), modp::primitive_root_of_unity(f, detail::canonical_conductor(n)));
      modp::ModMatrix m(points.size(), u + 1);
      fill(emb, m);
      const auto piv = modp::rref(m, f);
      if (!piv.empty() && piv.back() == u) {
        // Could be an unlucky prime; confirm with the exact solve below.
      } else if (piv.size() < u) {
        continue;  // underdetermined at these points, resample
      }
    }
    Rng check_rng(opt.seed ^ 0xc0ffeeULL);
    const auto probe = check_rng.point(static_cast<std::size_t>(nv), opt.coordinate_bound);
    auto accept = [&](const modp::ExactRref& r) {
      if (r.pivots.size() != u || r.pivots.back() != u - 1) return true;  // handled below
      std::vector<Cyclotomic> c;
      for (std::size_t j = 0; j < u; ++j) c.push_back(r.rows[j][u]);
      return residual(c, probe).is_zero();
    };
    const auto r = modp::multimodular_rref(n, points.size(), u + 1, fill, accept);
    if (!r.pivots.empty() && r.pivots.back() == u)
      throw Error("target^e is not a polynomial in the supplied invariants (inconsistent system)");
    if (r.pivots.size() < u) continue;
    res.coefficients.clear();
    for (std::size_t j = 0; j < u; ++j) res.coefficients.push_back(r.rows[j][u]);
    res.sample_points = points.size();

    // Verification.
    const long full_terms = binomial(res.weighted_degree + nv - 1, nv - 1);
    if (static_cast<std::size_t>(full_terms) <= opt.symbolic_term_budget) {
      MultiPoly lhs = target.expand(nv).pow(e);
      MultiPoly rhs = res.as_polynomial().compose(system);
      if (lhs != rhs) throw Error("relation failed symbolic verification");
      res.verified_by = "symbolic";
    } else {
      Rng vr(opt.seed ^ 0xfeedULL);
      for (std::size_t k = 0; k < opt.random_checks; ++k) {
        const auto p = vr.point(static_cast<std::size_t>(nv), opt.coordinate_bound);
        if (!residual(res.coefficients, p).is_zero()) throw Error("relation failed randomized verification");
      }
      res.verified_by = "random-" + std::to_string(opt.random_checks);
    }
    return res;
  }
  throw Error("sampled system stayed underdetermined; the invariants may be dependent");
}

}  // namespace crg
