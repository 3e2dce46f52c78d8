// Acceptance run: one PASS/FAIL line per criterion.  All comparisons are exact.
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>

#include "crg/catalog.hpp"
#include "crg/invariants.hpp"
#include "crg/power_series.hpp"
#include "crg/runs.hpp"
#include "crg/singular.hpp"
#include "crg/springer.hpp"
#include "crg/wps.hpp"

using namespace crg;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::map<std::string, std::unique_ptr<ReflectionGroup>> groups;

const ReflectionGroup& group(const std::string& name) {
  auto& slot = groups[name];
  if (!slot) slot = std::make_unique<ReflectionGroup>(build_group(builtin_group(name)));
  return *slot;
}

Cyclotomic q(long n, long d = 1) { return Cyclotomic(make_rational(n, d)); }

// Collects failures of one criterion; the first few are printed under it.
struct Criterion {
  int id;
  std::string title;
  std::vector<std::string> failures;
  std::size_t checks = 0;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) failures.push_back(what);
  }
};

int failed = 0;

void report(const Criterion& c, double seconds, double limit) {
  const bool in_time = limit <= 0 || seconds <= limit;
  const bool ok = c.failures.empty() && in_time;
  if (!ok) ++failed;
  std::printf("%s  [%d] %s  (%zu checks, %.1f s%s)\n", ok ? "PASS" : "FAIL", c.id, c.title.c_str(), c.checks, seconds,
              limit > 0 ? (", limit " + std::to_string(static_cast<int>(limit)) + " s").c_str() : "");
  for (std::size_t k = 0; k < c.failures.size() && k < 8; ++k) std::printf("        %s\n", c.failures[k].c_str());
  if (!in_time) std::printf("        over the time limit\n");
  std::fflush(stdout);
}

template <class F>
void run(int id, const std::string& title, double limit, F body) {
  Criterion c{id, title, {}, 0};
  const auto t0 = Clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.failures.push_back(std::string("exception: ") + e.what());
  }
  report(c, since(t0), limit);
}

std::string str(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

// ---- 1. Table 1 ----

struct Table1Row {
  std::string name;
  std::size_t order, projective, derived;
  std::vector<int> degrees, codegrees;
};

// Reference values; the G(e,e,4) and G(2e,e,4) families evaluated at each e.
std::vector<Table1Row> table1() {
  auto dee = [](int e) {
    const auto e3 = static_cast<std::size_t>(e * e * e);
    return Table1Row{"G(" + std::to_string(e) + "," + std::to_string(e) + ",4)", 24 * e3,
                     24 * e3 / static_cast<std::size_t>(std::gcd(e, 4)), 12 * e3, {e, 2 * e, 3 * e, 4},
                     {0, e, 2 * e, 3 * e - 4}};
  };
  auto d2ee = [](int e) {
    const auto e3 = static_cast<std::size_t>(e * e * e);
    return Table1Row{"G(" + std::to_string(2 * e) + "," + std::to_string(e) + ",4)", 384 * e3,
                     192 * e3 / static_cast<std::size_t>(std::gcd(e, 4)), 96 * e3, {2 * e, 4 * e, 6 * e, 8},
                     {0, 2 * e, 4 * e, 6 * e}};
  };
  return {{"G(1,1,5)", 120, 120, 60, {2, 3, 4, 5}, {0, 1, 2, 3}},
          dee(2),
          dee(3),
          dee(4),
          d2ee(1),
          d2ee(2),
          {"G28", 1152, 576, 288, {2, 6, 8, 12}, {0, 4, 6, 10}},
          {"G29", 7680, 1920, 3840, {4, 8, 12, 20}, {0, 8, 12, 16}},
          {"G30", 14400, 7200, 7200, {2, 12, 20, 30}, {0, 10, 18, 28}},
          {"G31", 46080, 11520, 23040, {8, 12, 20, 24}, {0, 12, 16, 28}}};
}

// Coefficients of prod 1/(1 - t^d) by direct counting.
std::vector<long> degree_product_counts(const std::vector<int>& degrees, int n) {
  std::vector<long> c(static_cast<std::size_t>(n + 1), 0);
  c[0] = 1;
  for (int d : degrees)
    for (int k = d; k <= n; ++k) c[static_cast<std::size_t>(k)] += c[static_cast<std::size_t>(k - d)];
  return c;
}

void criterion1(Criterion& c) {
  for (const auto& row : table1()) {
    const auto& g = group(row.name);
    const std::string n = row.name + ": ";
    const std::size_t z = g.center().order;
    c.expect(g.order() == row.order, n + "|W| = " + std::to_string(g.order()));
    c.expect(g.order() / z == row.projective, n + "|W/Z(W)| = " + std::to_string(g.order() / z));
    c.expect(g.derived_subgroup().order == row.derived, n + "|W'| = " + std::to_string(g.derived_subgroup().order));
    c.expect(g.sl_subgroup().order * 2 == g.order(), n + "|W^sl| != |W|/2");
    const std::size_t prod = std::accumulate(row.degrees.begin(), row.degrees.end(), std::size_t{1},
                                             [](std::size_t a, int d) { return a * static_cast<std::size_t>(d); });
    c.expect(prod == g.order(), n + "|W| != product of degrees");
    int refl = 0, hyp = 0, gd = 0;
    for (int d : row.degrees) refl += d - 1, gd = std::gcd(gd, d);
    for (int d : row.codegrees) hyp += d + 1;
    c.expect(static_cast<int>(g.reflections().size()) == refl, n + "reflections = " + std::to_string(g.reflections().size()));
    c.expect(static_cast<int>(g.hyperplanes().size()) == hyp, n + "hyperplanes = " + std::to_string(g.hyperplanes().size()));
    c.expect(static_cast<int>(z) == gd, n + "|Z(W)| = " + std::to_string(z) + " vs gcd " + std::to_string(gd));
    const auto molien = g.molien_series(40);
    const auto counts = degree_product_counts(row.degrees, 40);
    bool same = molien.order() == 40;
    for (int k = 0; same && k <= 40; ++k) same = molien.coeffs[static_cast<std::size_t>(k)] == Rational(counts[static_cast<std::size_t>(k)]);
    c.expect(same, n + "Molien series differs from prod 1/(1-t^d) below t^41");
  }
}

// ---- 2. Table 2 ----

struct Table2Row {
  std::string group;
  int d;
  std::string gamma;
  std::vector<int> ambient, degrees, zf;
};

std::vector<Table2Row> table2() {
  return {{"G(1,1,5)", 4, "both", {2, 3, 5, 10}, {20}, {2, 3, 5}},
          {"G(2,1,4)", 4, "derived", {1, 3, 4, 6, 2}, {12, 4}, {1, 3, 4}},
          {"G(2,1,4)", 4, "sl", {1, 3, 4, 8}, {16}, {1, 3, 4}},
          {"G(2,1,4)", 6, "derived", {1, 1, 2, 3, 1}, {6, 2}, {1, 1, 2}},
          {"G(2,1,4)", 6, "sl", {1, 1, 2, 4}, {8}, {1, 1, 2}},
          {"G(4,2,4)", 4, "derived", {2, 3, 2, 1, 6}, {2, 12}, {1, 3, 1}},
          {"G(4,2,4)", 4, "sl", {2, 3, 2, 7}, {14}, {1, 3, 1}},
          {"G(2,2,4)", 4, "both", {1, 3, 2, 6}, {12}, {1, 3, 2}},
          {"G(2,2,4)", 6, "both", {1, 1, 1, 3}, {6}, {1, 1, 1}},
          {"G(4,4,4)", 4, "both", {2, 3, 1, 6}, {12}, {2, 3, 1}},
          {"G28", 6, "derived", {1, 2, 3, 3, 3}, {6, 6}, {1, 2, 3}},
          {"G28", 6, "sl", {1, 2, 3, 6}, {12}, {1, 2, 3}},
          {"G28", 8, "derived", {1, 1, 2, 2, 2}, {4, 4}, {1, 1, 2}},
          {"G28", 8, "sl", {1, 1, 2, 4}, {8}, {1, 1, 2}},
          {"G29", 4, "both", {2, 3, 5, 10}, {20}, {2, 3, 5}},
          {"G30", 12, "both", {1, 2, 3, 6}, {12}, {1, 2, 3}},
          {"G31", 20, "both", {2, 1, 2, 5}, {10}, {1, 1, 1}}};
}

void criterion2(Criterion& c) {
  for (const auto& row : table2()) {
    const auto& g = group(row.group);
    const auto spec = builtin_group(row.group);
    const std::string n = "(" + row.group + ", " + std::to_string(row.d) + ", " + row.gamma + "): ";
    std::vector<Gamma> gammas;
    if (row.gamma != "sl") gammas.push_back(Gamma::Derived);
    if (row.gamma != "derived") gammas.push_back(Gamma::SpecialLinear);
    for (Gamma gm : gammas) {
      const auto s = quotient_presentation(g, spec.ref, row.d, gm);
      const auto& w = s.ambient.weights;
      const auto nz = row.zf.size();
      bool ok = w.size() == row.ambient.size() && s.ambient.degrees.size() == row.degrees.size() && s.zf.weights == row.zf;
      // the three coordinates of Z(f)/W in place; extra coordinates paired with their equations, in any order
      if (ok) ok = std::equal(row.ambient.begin(), row.ambient.begin() + static_cast<long>(nz), w.begin());
      if (ok) {
        std::vector<std::pair<int, int>> a, b;
        for (std::size_t k = 0; k < row.degrees.size(); ++k) {
          a.emplace_back(w[nz + k], s.ambient.degrees[k]);
          b.emplace_back(row.ambient[nz + k], row.degrees[k]);
        }
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        ok = a == b;
      }
      c.expect(ok, n + gamma_name(gm) + " gives P(" + str(w) + ") degrees (" + str(s.ambient.degrees) + ") Z(f)/W P(" +
                       str(s.zf.weights) + ")");
      c.expect(!row.gamma.empty() && (row.gamma != "both" || s.derived_equals_sl), n + "W' and W^sl should coincide");
    }
  }
}

// ---- 3. elimination ----

void criterion3(Criterion& c) {
  const auto r = pencil_special_a1();
  const auto& rad = r.elimination->radical;
  // x, y, z, b, c
  const int n = 5;
  const QPoly b = QPoly::variable(n, 3), cc = QPoly::variable(n, 4);
  const std::vector<QPoly> want{cc + QPoly::constant(n, make_rational(1, 2)), b * b - QPoly::constant(n, Rational(16))};
  bool match = rad.size() == want.size();
  for (const auto& w : want) {
    bool found = false;
    for (const auto& g : rad) {
      // equal up to a unit: compare after scaling to the leading coefficient of w
      const auto lm = leading_monomial(g, BlockOrder{n, 0});
      if (lm != leading_monomial(w, BlockOrder{n, 0})) continue;
      found = found || g.scaled(w.coeff(lm) / g.coeff(lm)) == w;
    }
    match = match && found;
  }
  std::string got;
  for (const auto& g : rad) got += (got.empty() ? "" : ", ") + g.to_string({"x", "y", "z", "b", "c"});
  c.expect(match, "radical is {" + got + "}");
}

// ---- 4. relations ----

bool expands_to_zero(const RelationResult& r, const MultiPoly& target, const std::vector<MultiPoly>& fs) {
  MultiPoly rhs(4);
  for (std::size_t m = 0; m < r.monomials.size(); ++m) {
    MultiPoly t = MultiPoly::constant(4, r.coefficients[m]);
    for (std::size_t i = 0; i < fs.size(); ++i)
      if (r.monomials[m][i]) t = t * fs[i].pow(r.monomials[m][i]);
    rhs += t;
  }
  return target.pow(r.exponent) == rhs;
}

void criterion4(Criterion& c) {
  for (const auto& name : {"G(2,2,4)", "G28"}) {
    const auto& g = group(name);
    InvariantContext ctx(g);
    const auto [fs, df] = fundamentals(ctx, builtin_group(name));
    const auto& orbits = g.hyperplane_orbits();
    for (std::size_t k = 0; k < orbits.size(); ++k) {
      const ProductForm& pf = orbits.size() == 1 ? df.j : df.orbit_forms[k];
      RelationTarget t;
      t.product = pf;
      const auto r = express_in_invariants(t, 2, fs.polys, fs.degrees);
      c.expect(expands_to_zero(r, pf.expand(), fs.polys),
               std::string(name) + " orbit " + std::to_string(k + 1) + ": J^2 - P(f) does not expand to zero");
    }
  }
  const auto& g = group("G30");
  InvariantContext ctx(g);
  const auto [fs, df] = fundamentals(ctx, builtin_group("G30"));
  RelationTarget t;
  t.product = df.j;
  const auto r = express_in_invariants(t, 2, fs.polys, fs.degrees);
  c.expect(r.weighted_degree == 120, "G30 weighted degree " + std::to_string(r.weighted_degree));
  const MultiPoly p = r.as_polynomial();
  Rng rng(401);
  for (int k = 0; k < 100; ++k) {
    const auto pt = rng.point(4, 1000);
    std::vector<Cyclotomic> vals;
    for (const auto& f : fs.polys) vals.push_back(f.eval(pt));
    c.expect(df.j.eval(pt).pow(2) == p.eval(vals), "G30: J^2 != P(f) at a random point");
  }
}

// ---- 5. Springer ----

void criterion5(Criterion& c) {
  const std::vector<std::pair<std::string, int>> pairs{{"G(2,1,4)", 8}, {"G28", 8}, {"G28", 12}, {"G30", 20}, {"G30", 30}};
  for (const auto& [name, e] : pairs) {
    const auto& g = group(name);
    const auto& ref = builtin_group(name).ref;
    const std::string n = name + " e=" + std::to_string(e) + ": ";
    int delta = 0, dstar = 0;
    for (int d : ref.degrees) delta += d % e == 0;
    for (int d : ref.codegrees) dstar += d % e == 0;
    c.expect(delta == 1 && dstar == 1, n + "delta, delta* = " + std::to_string(delta) + ", " + std::to_string(dstar));
    const Cyclotomic z = Cyclotomic::zeta(e);
    std::size_t best = 0;
    for (std::size_t i = 0; i < g.order(); ++i) {
      CMatrix a = g.element(i);
      for (std::size_t k = 0; k < 4; ++k) a(k, k) -= z;
      best = std::max(best, a.kernel().size());
    }
    c.expect(static_cast<int>(best) == delta, n + "brute-force max eigenspace " + std::to_string(best));
    const auto s = regular_eigenvector_element(g, ref, e);
    c.expect(s.delta == delta && s.delta_star == dstar, n + "delta_data disagrees");
    if (!s.w_e) {
      c.expect(false, n + "no regular element");
      continue;
    }
    // eigenvalues zeta_e^{1 - d_k}, with multiplicity
    std::map<long, int> mult;
    for (int d : ref.degrees) mult[((1 - d) % e + e) % e]++;
    for (const auto& [k, m] : mult) {
      CMatrix a = *s.w_e;
      for (std::size_t i = 0; i < 4; ++i) a(i, i) -= Cyclotomic::zeta(e, k);
      c.expect(static_cast<int>(a.kernel().size()) == m, n + "eigenvalue zeta^" + std::to_string(k) + " multiplicity");
    }
    c.expect(s.w_e->det() == Cyclotomic(1), n + "det(w_e) != 1");
    const auto st = g.line_stabilizer(s.ve_basis[0]);
    bool cyclic = false;
    for (auto i : st.stabilizer.elements()) cyclic = cyclic || g.element_order(i) == e;
    c.expect(st.stabilizer.order == static_cast<std::size_t>(e) && cyclic,
             n + "line stabilizer of order " + std::to_string(st.stabilizer.order));
  }
}

// ---- 6. A1 ----

void criterion6(Criterion& c) {
  Rng rng(601);
  int done = 0;
  while (done < 5) {
    const Rational cv = rng.rational(30, 11);
    if (cv == 0) continue;
    const auto cert = pencil_certify_a0(cv);
    if (cert.reducible) continue;
    ++done;
    const std::string n = "c=" + cv.get_str() + ": ";
    c.expect(cert.pass, n + "certificate failed");
    const std::vector<Cyclotomic> p{q(0), q(0), Cyclotomic::zeta(4), q(1)};
    const SingularityVerdict* at = nullptr;
    for (const auto& v : cert.verdicts)
      if (v.point == p) at = &v;
    c.expect(at != nullptr, n + "[0:0:i:1] not among the certified points");
    if (!at) continue;
    c.expect(at->classification == SingularityClass::A1, n + "not A1");
    // oracle: Hessian of the chart t = 1 at (0, 0, i)
    const MultiPoly f = pencil_F(Rational(0), Rational(1), cv);
    CMatrix h(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) h(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = f.derivative(i).derivative(j).eval(p);
    c.expect(h.rank() == 3, n + "Hessian rank " + std::to_string(h.rank()));
    for (int i = 0; i < 3; ++i) c.expect(f.derivative(i).eval(p).is_zero(), n + "gradient does not vanish");
    // the witness i x y - 4 c z^2
    MultiPoly w(3);
    w.add_term(Exponent{1, 1, 0}, Cyclotomic::zeta(4));
    w.add_term(Exponent{0, 0, 2}, Cyclotomic(Rational(-4) * cv));
    c.expect(at->quadratic_part == w, n + "quadratic part " + at->quadratic_part.to_string({"x", "y", "z"}));
  }
}

// ---- 7. lines ----

void criterion7(Criterion& c) {
  const auto& g = group("G28");
  InvariantContext ctx(g);
  const auto basis = ctx.basis(6).basis;
  c.expect(basis.size() == 2, "degree-6 invariants have dimension " + std::to_string(basis.size()));
  Rng rng(701);
  const auto& o = g.hyperplane_orbits();
  for (int trial = 0; trial < 3; ++trial) {
    MultiPoly f(4);
    for (const auto& b : basis) {
      Rational a = rng.rational(50, 13);
      if (a == 0) a = 1;
      f += b.scaled(Cyclotomic(a));
    }
    const auto rep = lines_not_in_surface(g, f);
    c.expect(rep.pairs == 144 && rep.pass(), "trial " + std::to_string(trial) + ": " + std::to_string(rep.violations.size()) +
                                                 " of " + std::to_string(rep.pairs) + " lines inside Z(f)");
    // oracle: some point of each line off the surface
    std::size_t off = 0;
    for (auto h1 : o[0])
      for (auto h2 : o[1]) {
        const auto line = CMatrix::from_rows({g.hyperplanes()[h1].form, g.hyperplanes()[h2].form}).kernel();
        bool hit = false;
        for (long s = 1; s <= 7 && !hit; ++s) {
          std::vector<Cyclotomic> pt;
          for (std::size_t i = 0; i < 4; ++i) pt.push_back(line[0][i] + line[1][i] * Cyclotomic(s));
          hit = !f.eval(pt).is_zero();
        }
        off += hit;
      }
    c.expect(off == 144, "oracle finds " + std::to_string(off) + " of 144 lines leaving Z(f)");
  }
}

// ---- 8. property suites ----

void criterion8(Criterion& c) {
  const int cases = 100;
  {
    Rng rng(801);
    const auto& g = group("G(2,1,4)");
    for (int k = 0; k < cases; ++k) {
      const auto i = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(g.order()) - 1));
      const auto j = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(g.order()) - 1));
      MultiPoly f(4);
      const auto mons = monomials_of_degree(4, 3);
      for (int t = 0; t < 4; ++t)
        f.add_term(mons[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(mons.size()) - 1))], Cyclotomic(rng.rational(9, 5)));
      c.expect(poly_act(g.element(i) * g.element(j), f) == poly_act(g.element(i), poly_act(g.element(j), f)),
               "contravariance");
    }
  }
  {
    Rng rng(802);
    const auto& g = group("G(2,2,4)");
    for (int k = 0; k < cases; ++k) {
      MultiPoly f(4);
      const auto mons = monomials_of_degree(4, static_cast<int>(rng.uniform(1, 4)));
      for (int t = 0; t < 3; ++t)
        f.add_term(mons[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(mons.size()) - 1))], Cyclotomic(rng.rational(9, 5)));
      const MultiPoly r = reynolds(g, f);
      c.expect(reynolds(g, r) == r, "Reynolds idempotence");
    }
  }
  {
    Rng rng(803);
    const std::vector<std::string> names{"G(2,2,4)", "G(2,1,4)", "G28", "G(3,3,4)"};
    for (int k = 0; k < cases; ++k) {
      const auto& g = group(names[static_cast<std::size_t>(k) % names.size()]);
      std::vector<Cyclotomic> v;
      for (int i = 0; i < 4; ++i) v.emplace_back(rng.uniform(-1, 1));
      if (std::all_of(v.begin(), v.end(), [](const Cyclotomic& x) { return x.is_zero(); })) v[0] = 1;
      const auto orbit = g.projective_orbit(v);
      c.expect(orbit.points.size() * g.line_stabilizer(v).stabilizer.order == g.order(), "orbit-stabilizer");
    }
  }
  {
    // random subgroups of G(2,1,4) and G28: Molien coefficients are integers
    Rng rng(804);
    for (int k = 0; k < cases; ++k) {
      const auto& g = group(k % 2 ? "G28" : "G(2,1,4)");
      std::vector<CMatrix> gens;
      for (int t = 0; t < 2; ++t) gens.push_back(g.element(static_cast<std::size_t>(rng.uniform(0, static_cast<long>(g.order()) - 1))));
      const auto h = ReflectionGroup::generate("H", gens);
      std::vector<CMatrix> els;
      for (std::size_t i = 0; i < h.order(); ++i) els.push_back(h.element(i));
      c.expect(molien_series(els, 12).all_integral(), "Molien integrality");
    }
  }
  {
    Rng rng(805);
    for (int k = 0; k < cases; ++k) {
      const auto n = static_cast<std::size_t>(rng.uniform(4, 5));
      std::vector<int> w;
      const int common = static_cast<int>(rng.uniform(1, 3));
      for (std::size_t i = 0; i < n; ++i) w.push_back(common * static_cast<int>(rng.uniform(1, 12)));
      const int l = std::accumulate(w.begin(), w.end(), 1, [](int a, int b) { return std::lcm(a, b); });
      std::vector<int> deg(n - 3, l * static_cast<int>(rng.uniform(1, 2)));
      const auto r = normalize_weights(w, deg);
      const auto again = normalize_weights(r.weights, r.degrees);
      c.expect(again.weights == r.weights && again.degrees == r.degrees && again.steps.empty(), "normalize idempotence");
      // balance B = sum w - sum deg: B/g after a gcd step, (B + (q-1) l_j)/q after a reduction fixing l_j
      std::vector<int> cw = w, cd = deg;
      bool law = true;
      for (const auto& s : r.steps) {
        const long before = std::accumulate(cw.begin(), cw.end(), 0L) - std::accumulate(cd.begin(), cd.end(), 0L);
        const long lj = s.kind == "delorme" ? cw[static_cast<std::size_t>(s.position)] : 0;
        for (std::size_t i = 0; i < cw.size(); ++i)
          if (s.kind == "gcd" || static_cast<int>(i) != s.position) cw[i] /= s.factor;
        for (auto& d : cd) d /= s.factor;
        const long after = std::accumulate(cw.begin(), cw.end(), 0L) - std::accumulate(cd.begin(), cd.end(), 0L);
        law = law && after * s.factor == before + (s.factor - 1) * lj;
      }
      c.expect(law && cw == r.weights && cd == r.degrees, "balance law");
    }
  }
  {
    Rng rng(806);
    const int n = 3;
    const BlockOrder ord{n, 0};
    int k = 0;
    while (k < cases) {
      std::vector<QPoly> gens;
      for (int i = 0; i < 3; ++i) {
        QPoly p(n);
        const int deg = static_cast<int>(rng.uniform(1, 3));
        for (int t = 0; t < 4; ++t) {
          const auto mons = monomials_of_degree(n, static_cast<int>(rng.uniform(0, deg)));
          p.add_term(mons[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(mons.size()) - 1))], Rational(rng.uniform(-5, 5)));
        }
        if (!p.is_zero()) gens.push_back(p);
      }
      if (gens.empty()) continue;
      ++k;
      const auto basis = groebner_basis(gens, ord);
      bool ok = groebner_basis(basis, ord) == basis;
      for (const auto& g : gens) ok = ok && normal_form(g, basis, ord).is_zero();
      c.expect(ok, "Buchberger self-consistency");
    }
  }
}

}  // namespace

int main() {
  std::printf("acceptance: exact comparisons, zero tolerance\n");
  run(1, "Table 1: orders, reflections, hyperplanes, centres, Molien to t^40", 900, criterion1);
  run(2, "Table 2: ambient weights, equation degrees, Z(f)/W", 60, criterion2);
  run(3, "elimination: radical {c + 1/2, b^2 - 16}", 120, criterion3);
  run(4, "relations: G(2,2,4) and G28 symbolic, G30 at 100 points", 600, criterion4);
  run(5, "Springer pairs (G(2,1,4),8) (G28,8) (G28,12) (G30,20) (G30,30)", 600, criterion5);
  run(6, "A1 at [0:0:i:1] for 5 random c", 60, criterion6);
  run(7, "G28: 144 lines off Z(f) for 3 random sextics", 120, criterion7);
  run(8, "property suites, 100 cases each", 0, criterion8);
  std::printf("%s: %d of 8 criteria failed\n", failed ? "FAIL" : "PASS", failed);
  return failed ? 1 : 0;
}
