#pragma once

// Singular loci of hypersurfaces: Jacobian systems in affine charts,
// elimination onto parameters, A1 certification by the Hessian, the F pencil
// special members, lines through pairs of reflecting hyperplanes, and pencil
// members singular along orbits of maximal-stabilizer lines.

#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "crg/catalog.hpp"
#include "crg/groebner.hpp"
#include "crg/group.hpp"

namespace crg {

inline QPoly to_rational_poly(const MultiPoly& f) {
  QPoly q(f.nvars());
  for (const auto& [e, c] : f.terms()) {
    if (!c.is_rational()) throw Error("polynomial has non-rational coefficients");
    q.add_term(e, c.rational_part());
  }
  return q;
}

/// Determinant of a square matrix of polynomials by cofactor expansion.
template <class K>
Polynomial<K> polynomial_det(const std::vector<std::vector<Polynomial<K>>>& m, int nvars) {
  const std::size_t n = m.size();
  if (n == 0) return Polynomial<K>::constant(nvars, K(1));
  if (n == 1) return m[0][0];
  Polynomial<K> r(nvars);
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<Polynomial<K>>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Polynomial<K>> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(std::move(row));
    }
    const auto t = m[0][j] * polynomial_det(minor, nvars);
    if (j % 2 == 0) r += t;
    else r -= t;
  }
  return r;
}

struct AffineChartSystem {
  int chart = 0;                  // coordinate set to 1
  int space_vars = 0;             // projective coordinates of the input
  int params = 0;
  std::vector<std::string> names; // chart variables, then parameters
  std::vector<QPoly> generators;
};

/// f(x with x_chart = 1) and its partials in the chart variables, optionally
/// followed by the Hessian determinant.  The ring of `f` has the `space_vars`
/// coordinates first, then the parameters.
inline AffineChartSystem jacobian_system(const QPoly& f, int space_vars, int chart, bool with_hessian = false,
                                         std::vector<std::string> names = {}) {
  if (chart < 0 || chart >= space_vars) throw Error("chart index out of range");
  const int n = f.nvars();
  const int out = n - 1;
  AffineChartSystem s;
  s.chart = chart;
  s.space_vars = space_vars;
  s.params = n - space_vars;
  std::vector<QPoly> subs;
  for (int i = 0, k = 0; i < n; ++i) {
    if (i == chart) {
      subs.push_back(QPoly::constant(out, Rational(1)));
      continue;
    }
    subs.push_back(QPoly::variable(out, k));
    s.names.push_back(i < static_cast<int>(names.size()) ? names[static_cast<std::size_t>(i)]
                                                         : "x" + std::to_string(i));
    ++k;
  }
  const QPoly g = f.compose(subs);
  const int chart_vars = space_vars - 1;
  s.generators.push_back(g);
  std::vector<QPoly> grad;
  for (int i = 0; i < chart_vars; ++i) grad.push_back(g.derivative(i));
  for (const auto& d : grad)
    if (!d.is_zero()) s.generators.push_back(d);
  if (with_hessian) {
    std::vector<std::vector<QPoly>> h(static_cast<std::size_t>(chart_vars));
    for (int i = 0; i < chart_vars; ++i)
      for (int j = 0; j < chart_vars; ++j) h[static_cast<std::size_t>(i)].push_back(grad[static_cast<std::size_t>(i)].derivative(j));
    const QPoly det = polynomial_det(h, out);
    if (!det.is_zero()) s.generators.push_back(det);
  }
  if (s.generators.front().is_zero()) s.generators.erase(s.generators.begin());
  return s;
}

/// Number of standard monomials of a zero-dimensional ideal (its degree).
inline std::size_t quotient_dimension(const std::vector<QPoly>& basis, const BlockOrder& ord) {
  std::vector<int> vars;
  for (int i = 0; i < ord.nvars; ++i) vars.push_back(i);
  std::size_t dim = 0;
  subring_relations(basis, ord, vars, ord, 4000, &dim);
  return dim;
}

/// True when the basis has a pure power of every variable as a leading monomial.
inline bool is_zero_dimensional(const std::vector<QPoly>& basis, const BlockOrder& ord) {
  for (int i = 0; i < ord.nvars; ++i) {
    bool found = false;
    for (const auto& g : basis) {
      const Exponent lm = leading_monomial(g, ord);
      bool pure = true;
      for (int j = 0; j < ord.nvars; ++j)
        if (j != i && lm[static_cast<std::size_t>(j)]) pure = false;
      if (pure && lm[static_cast<std::size_t>(i)]) found = true;
      if (pure && exponent_degree(lm) == 0) found = true;
    }
    if (!found) return false;
  }
  return true;
}

/// Z(f) in projective space is smooth iff the partials have only the trivial common zero.
inline bool is_smooth_hypersurface(const QPoly& f, GroebnerOptions opt = {}) {
  std::vector<QPoly> grad;
  for (int i = 0; i < f.nvars(); ++i) grad.push_back(f.derivative(i));
  const BlockOrder ord{f.nvars(), 0};
  return is_zero_dimensional(groebner_basis(grad, ord, opt), ord);
}

enum class SingularityClass { Smooth, A1, SingularUnclassified };

inline std::string singularity_name(SingularityClass c) {
  switch (c) {
    case SingularityClass::Smooth: return "smooth";
    case SingularityClass::A1: return "A1";
    default: return "singular-unclassified";
  }
}

struct SingularityVerdict {
  std::vector<Cyclotomic> point;  // scaled so the chart coordinate is 1
  int chart = 0;
  SingularityClass classification = SingularityClass::Smooth;
  std::vector<Cyclotomic> gradient;  // chart partials at the point
  CMatrix hessian;
  std::size_t hessian_rank = 0;
  MultiPoly quadratic_part{3};       // in the chart variables centred at the point
};

/// Local type of Z(f) at a point: smooth, an A1 point (nondegenerate
/// quadratic part), or some other singularity.
inline SingularityVerdict a1_certify(const MultiPoly& f, std::vector<Cyclotomic> point) {
  const int n = f.nvars();
  if (static_cast<int>(point.size()) != n) throw Error("point has the wrong number of coordinates");
  int chart = -1;
  for (int i = n - 1; i >= 0; --i)
    if (!point[static_cast<std::size_t>(i)].is_zero()) {
      chart = i;
      break;
    }
  if (chart < 0) throw Error("zero vector is not a projective point");
  const Cyclotomic s = point[static_cast<std::size_t>(chart)].inverse();
  for (auto& c : point) c *= s;
  if (!f.eval(point).is_zero()) throw Error("the point does not lie on Z(f)");

  SingularityVerdict v;
  v.point = point;
  v.chart = chart;
  std::vector<int> vars;
  for (int i = 0; i < n; ++i)
    if (i != chart) vars.push_back(i);
  const std::size_t m = vars.size();
  std::vector<MultiPoly> grad;
  bool smooth = false;
  for (int i : vars) {
    grad.push_back(f.derivative(i));
    v.gradient.push_back(grad.back().eval(point));
    if (!v.gradient.back().is_zero()) smooth = true;
  }
  v.hessian = CMatrix(m, m);
  v.quadratic_part = MultiPoly(static_cast<int>(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      const Cyclotomic h = grad[a].derivative(vars[b]).eval(point);
      v.hessian(a, b) = h;
      if (b < a || h.is_zero()) continue;
      Exponent e{};
      ++e[a];
      ++e[b];
      v.quadratic_part.add_term(e, a == b ? h * Cyclotomic(Rational(1, 2)) : h);
    }
  v.hessian_rank = v.hessian.rank();
  if (smooth) v.classification = SingularityClass::Smooth;
  else if (v.hessian_rank == m) v.classification = SingularityClass::A1;
  else v.classification = SingularityClass::SingularUnclassified;
  return v;
}

// F_{a,b,c} = a sum x^4 + b xyzt + c (sum x^2)^2 in x, y, z, t.
inline MultiPoly pencil_F(const Rational& a, const Rational& b, const Rational& c) {
  const int n = 4;
  MultiPoly s4(n), s2(n), p(n);
  Exponent all{};
  for (int i = 0; i < n; ++i) {
    Exponent e{};
    e[static_cast<std::size_t>(i)] = 4;
    s4.add_term(e, Cyclotomic(1));
    e[static_cast<std::size_t>(i)] = 2;
    s2.add_term(e, Cyclotomic(1));
    all[static_cast<std::size_t>(i)] = 1;
  }
  p.add_term(all, Cyclotomic(1));
  return s4.scaled(Cyclotomic(a)) + p.scaled(Cyclotomic(b)) + (s2 * s2).scaled(Cyclotomic(c));
}

// The a = 1 slice with b, c as variables 4 and 5.
inline QPoly pencil_F_a1_symbolic() {
  const int n = 6;
  auto v = [&](int i) { return QPoly::variable(n, i); };
  QPoly s4(n), s2(n), p = QPoly::constant(n, Rational(1));
  for (int i = 0; i < 4; ++i) {
    s4 += v(i).pow(4);
    s2 += v(i).pow(2);
    p = p * v(i);
  }
  return s4 + v(4) * p + v(5) * s2 * s2;
}

/// True when the linear form sum coeffs[i] x_i divides f (f vanishes on its zero set).
inline bool linear_form_divides(const MultiPoly& f, const std::vector<Cyclotomic>& coeffs) {
  const int n = f.nvars();
  int pivot = -1;
  for (int i = 0; i < n; ++i)
    if (!coeffs[static_cast<std::size_t>(i)].is_zero()) {
      pivot = i;
      break;
    }
  if (pivot < 0) throw Error("zero linear form");
  const Cyclotomic inv = coeffs[static_cast<std::size_t>(pivot)].inverse();
  std::vector<MultiPoly> subs;
  for (int i = 0; i < n; ++i) {
    if (i != pivot) {
      subs.push_back(MultiPoly::variable(n, i));
      continue;
    }
    MultiPoly s(n);
    for (int j = 0; j < n; ++j)
      if (j != pivot && !coeffs[static_cast<std::size_t>(j)].is_zero()) {
        Exponent e{};
        e[static_cast<std::size_t>(j)] = 1;
        s.add_term(e, -coeffs[static_cast<std::size_t>(j)] * inv);
      }
    subs.push_back(s);
  }
  return f.compose(subs).is_zero();
}

struct ParameterPoint {
  Rational b, c;
  std::vector<std::vector<int>> dividing_forms;  // signs of x, y, z, t
  bool system_consistent = false;                 // specialized system has a chart zero
};

struct OrbitCertificate {
  Rational c;
  bool reducible = false;
  std::string note;
  std::size_t orbit_size = 0;
  std::size_t orbit_in_chart = 0;
  std::size_t chart_degree = 0;  // degree of the Jacobian ideal in the chart t = 1
  std::vector<SingularityVerdict> verdicts;
  bool pass = false;
};

struct PencilReport {
  std::string family;
  std::string slice;
  std::optional<EliminationResult> elimination;
  std::vector<ParameterPoint> points;
  std::size_t locus_degree = 0;
  std::vector<OrbitCertificate> orbits;
  bool pass = false;
};

namespace detail {

inline std::vector<Integer> divisors(Integer n) {
  if (n < 0) n = -n;
  std::vector<Integer> out;
  if (n == 0 || n > Integer("1000000000000")) return out;
  for (Integer d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  return out;
}

// Rational roots of a univariate polynomial in variable `var`.
inline std::vector<Rational> rational_roots(const QPoly& p, int var) {
  const QPoly q = integral_primitive(p, BlockOrder{p.nvars(), 0});
  Integer lead = 0, tail = 0;
  int low = 1 << 30, high = -1;
  for (const auto& [e, c] : q.terms()) {
    const int k = e[static_cast<std::size_t>(var)];
    if (k < low) {
      low = k;
      tail = c.get_num();
    }
    if (k > high) {
      high = k;
      lead = c.get_num();
    }
  }
  std::vector<Rational> out;
  auto test = [&](const Rational& r) {
    std::vector<Rational> pt(static_cast<std::size_t>(p.nvars()), Rational(0));
    pt[static_cast<std::size_t>(var)] = r;
    if (q.eval(pt) == 0 && std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
  };
  if (low > 0) test(Rational(0));
  for (const auto& u : divisors(tail))
    for (const auto& v : divisors(lead)) {
      test(Rational(u) / Rational(v));
      test(-Rational(u) / Rational(v));
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// The a = 1 slice: parameters (b, c) where F has a singular point with a
/// degenerate Hessian in the chart t = 1, and the linear factors of those members.
inline PencilReport pencil_special_a1(GroebnerOptions opt = {}) {
  PencilReport r;
  r.family = "F";
  r.slice = "a=1";
  const auto sys = jacobian_system(pencil_F_a1_symbolic(), 4, 3, true, {"x", "y", "z", "t", "b", "c"});
  r.elimination = groebner_eliminate(sys.generators, 3, opt);
  const auto& el = *r.elimination;
  const BlockOrder block{5, 3};
  {
    std::size_t dim = 0;
    subring_relations(el.radical, block, {3, 4}, block, 4000, &dim);
    r.locus_degree = dim;
  }
  // Rational points of the locus.
  const auto bs = detail::rational_roots(el.squarefree.at(0), 3);
  const auto cs = detail::rational_roots(el.squarefree.at(1), 4);
  for (const auto& b : bs)
    for (const auto& c : cs) {
      std::vector<Rational> pt{Rational(0), Rational(0), Rational(0), b, c};
      bool on = true;
      for (const auto& g : el.radical)
        if (g.eval(pt) != 0) on = false;
      if (!on) continue;
      ParameterPoint p{b, c, {}, false};
      const MultiPoly f = pencil_F(Rational(1), b, c);
      for (int mask = 0; mask < 8; ++mask) {
        std::vector<int> signs{1, mask & 1 ? -1 : 1, mask & 2 ? -1 : 1, mask & 4 ? -1 : 1};
        std::vector<Cyclotomic> form;
        for (int s : signs) form.push_back(Cyclotomic(static_cast<long>(s)));
        if (linear_form_divides(f, form)) p.dividing_forms.push_back(signs);
      }
      std::vector<QPoly> spec;
      std::vector<QPoly> subs;
      for (int i = 0; i < 3; ++i) subs.push_back(QPoly::variable(3, i));
      subs.push_back(QPoly::constant(3, b));
      subs.push_back(QPoly::constant(3, c));
      for (const auto& g : sys.generators) spec.push_back(g.compose(subs));
      const auto gb = groebner_basis(spec, BlockOrder{3, 0}, opt);
      p.system_consistent = !(gb.size() == 1 && gb.front().total_degree() == 0);
      r.points.push_back(std::move(p));
    }
  r.pass = r.points.size() == r.locus_degree;
  for (const auto& p : r.points)
    if (p.dividing_forms.empty() || !p.system_consistent) r.pass = false;
  return r;
}

/// The a = 0 slice F_{0,1,c}: the singular points form the G(2,2,4)-orbit of
/// [0:0:i:1] and each is an A1 point.  c = 0 is the reducible member xyzt.
inline OrbitCertificate pencil_certify_a0(const Rational& c, GroebnerOptions opt = {}) {
  OrbitCertificate cert;
  cert.c = c;
  if (c == 0) {
    cert.reducible = true;
    cert.note = "F_{0,1,0} = xyzt is reducible";
    return cert;
  }
  const MultiPoly f = pencil_F(Rational(0), Rational(1), c);
  static const ReflectionGroup g = build_group(builtin_group("G(2,2,4)"));
  const std::vector<Cyclotomic> p{Cyclotomic(0), Cyclotomic(0), Cyclotomic::zeta(4), Cyclotomic(1)};
  const auto orbit = g.projective_orbit(p);
  cert.orbit_size = orbit.points.size();
  bool ok = true;
  for (const auto& q : orbit.points) {
    if (!q[3].is_zero()) ++cert.orbit_in_chart;
    auto v = a1_certify(f, q);
    if (v.classification != SingularityClass::A1) ok = false;
    cert.verdicts.push_back(std::move(v));
  }
  // The Jacobian ideal in t = 1 has degree equal to the number of its zeros
  // exactly when every zero is a node; compare with the orbit.
  const auto sys = jacobian_system(to_rational_poly(f), 4, 3);
  const BlockOrder ord{3, 0};
  const auto gb = groebner_basis(sys.generators, ord, opt);
  if (!is_zero_dimensional(gb, ord)) {
    cert.note = "singular locus in the chart t = 1 is not finite";
    return cert;
  }
  cert.chart_degree = quotient_dimension(gb, ord);
  cert.pass = ok && cert.chart_degree == cert.orbit_in_chart;
  return cert;
}

struct LinePair {
  std::size_t h1 = 0, h2 = 0;
  bool vanishes = false;
  int restriction_degree = -1;  // -1 when the restriction is zero
};

struct LinesReport {
  std::string group;
  std::vector<std::size_t> orbit_sizes;
  std::size_t pairs = 0;
  std::vector<LinePair> violations;
  bool degrees_ok = true;
  bool pass() const { return violations.empty() && degrees_ok; }
};

/// f restricted to the line spanned by u and v, as a binary form in (s, t).
inline MultiPoly line_restriction(const MultiPoly& f, const std::vector<Cyclotomic>& u,
                                  const std::vector<Cyclotomic>& v) {
  std::vector<MultiPoly> subs;
  for (std::size_t i = 0; i < u.size(); ++i) {
    MultiPoly l(2);
    Exponent e{};
    e[0] = 1;
    l.add_term(e, u[i]);
    e[0] = 0;
    e[1] = 1;
    l.add_term(e, v[i]);
    subs.push_back(l);
  }
  return f.compose(subs);
}

inline std::vector<std::vector<Cyclotomic>> hyperplane_pair_line(const ReflectionGroup& g, std::size_t h1,
                                                                 std::size_t h2) {
  const auto k = CMatrix::from_rows({g.hyperplanes()[h1].form, g.hyperplanes()[h2].form}).kernel();
  if (k.size() + 2 != g.dim()) throw Error("hyperplanes are not independent");
  return k;
}

/// For every H1 in the first hyperplane orbit and H2 in the second, checks
/// that f does not vanish identically on P(H1 cap H2).
inline LinesReport lines_not_in_surface(const ReflectionGroup& g, const MultiPoly& f) {
  LinesReport rep;
  rep.group = g.name();
  const auto& orbits = g.hyperplane_orbits();
  for (const auto& o : orbits) rep.orbit_sizes.push_back(o.size());
  if (orbits.size() < 2) return rep;
  const int d = f.total_degree();
  for (auto h1 : orbits[0])
    for (auto h2 : orbits[1]) {
      const auto line = hyperplane_pair_line(g, h1, h2);
      if (line.size() != 2) throw Error("lines_not_in_surface needs rank 4");
      const MultiPoly r = line_restriction(f, line[0], line[1]);
      ++rep.pairs;
      LinePair lp{h1, h2, r.is_zero(), r.is_zero() ? -1 : r.total_degree()};
      if (!r.is_zero() && (!r.is_homogeneous() || r.total_degree() != d)) rep.degrees_ok = false;
      if (lp.vanishes) rep.violations.push_back(lp);
    }
  return rep;
}

/// Number of distinct zeros on P^1 of a binary form with rational coefficients.
inline int distinct_binary_roots(const MultiPoly& r) {
  const QPoly q = to_rational_poly(r);
  if (q.is_zero()) throw Error("zero binary form");
  const int d = q.total_degree();
  QPoly affine(2);
  int top = 0;
  for (const auto& [e, c] : q.terms()) {
    Exponent a{};
    a[0] = e[0];
    affine.add_term(a, c);
    top = std::max<int>(top, e[0]);
  }
  return squarefree_part(affine, 0).total_degree() + (top < d ? 1 : 0);
}

/// Transversality of Z(f) to P(H1 cap H2): the restriction has d distinct zeros.
inline bool transversal_on_pair(const ReflectionGroup& g, const MultiPoly& f, std::size_t h1, std::size_t h2) {
  const auto line = hyperplane_pair_line(g, h1, h2);
  const MultiPoly r = line_restriction(f, line[0], line[1]);
  if (r.is_zero()) return false;
  return distinct_binary_roots(r) == f.total_degree();
}

struct PencilMember {
  Cyclotomic lambda;
  std::vector<Cyclotomic> representative;
  std::size_t orbit_size = 0;
  std::size_t normalizer_order = 0;    // setwise stabilizer N_k of the line
  std::size_t pointwise_order = 0;     // the parabolic subgroup fixing the line
  bool orbit_formula = false;          // |O_k| = |G| / |N_k|
  bool gradient_certified = false;
};

/// Lines fixed pointwise by a rank n-1 parabolic subgroup, one per orbit.
inline std::vector<std::vector<Cyclotomic>> maximal_parabolic_lines(const ReflectionGroup& g) {
  if (g.dim() != 4) throw Error("maximal_parabolic_lines: rank 4 only");
  const auto& hs = g.hyperplanes();
  std::vector<std::vector<Cyclotomic>> reps;
  std::unordered_set<std::vector<Cyclotomic>, VectorHash> covered;
  for (const auto& o : g.hyperplane_orbits()) {
    const std::size_t r = o.front();
    for (std::size_t j = 0; j < hs.size(); ++j)
      for (std::size_t k = j + 1; k < hs.size(); ++k) {
        if (j == r || k == r) continue;
        const auto ker = CMatrix::from_rows({hs[r].form, hs[j].form, hs[k].form}).kernel();
        if (ker.size() != 1) continue;
        auto v = normalize_projective(ker[0]);
        if (covered.count(v)) continue;
        const auto orbit = g.projective_orbit(v);
        for (const auto& p : orbit.points) covered.insert(p);
        reps.push_back(v);
      }
  }
  return reps;
}

/// Members f2 - lambda f1 singular along the orbit of each maximal-parabolic line.
inline std::vector<PencilMember> singular_pencil_members(const ReflectionGroup& g, const MultiPoly& f1,
                                                         const MultiPoly& f2) {
  if (f1.total_degree() != f2.total_degree()) throw Error("pencil members must have equal degree");
  std::vector<PencilMember> out;
  for (const auto& v : maximal_parabolic_lines(g)) {
    PencilMember m;
    m.representative = v;
    const Cyclotomic a = f1.eval(v);
    if (a.is_zero()) throw Error("f1 vanishes on a maximal-parabolic line");
    m.lambda = f2.eval(v) * a.inverse();
    const auto orbit = g.projective_orbit(v);
    const auto ls = g.line_stabilizer(v);
    m.orbit_size = orbit.points.size();
    m.normalizer_order = ls.stabilizer.order;
    m.pointwise_order = g.parabolic({v}).order;
    m.orbit_formula = m.orbit_size * m.normalizer_order == g.order();
    const MultiPoly h = f2 - f1.scaled(m.lambda);
    std::vector<MultiPoly> grad;
    for (int i = 0; i < h.nvars(); ++i) grad.push_back(h.derivative(i));
    m.gradient_certified = true;
    for (const auto& p : orbit.points)
      for (const auto& d : grad)
        if (!d.eval(p).is_zero()) m.gradient_certified = false;
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace crg
