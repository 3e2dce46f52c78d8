#pragma once

// Command implementations: each fills a Report with verdicts and data.

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "crg/catalog.hpp"
#include "crg/invariants.hpp"
#include "crg/report.hpp"
#include "crg/serialize.hpp"
#include "crg/singular.hpp"
#include "crg/springer.hpp"
#include "crg/wps.hpp"

#ifndef CRG_DEFAULT_CATALOG
#define CRG_DEFAULT_CATALOG "catalog"
#endif

namespace crg {

/// --catalog, then CRG_CATALOG, then the compiled-in directory.
inline std::string resolve_catalog_path(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("CRG_CATALOG"); env && *env) return env;
  return CRG_DEFAULT_CATALOG;
}

class Catalog {
 public:
  explicit Catalog(const std::string& dir) : specs_(load_catalog(dir)) {}
  explicit Catalog(std::vector<GroupSpec> specs) : specs_(std::move(specs)) {}

  const std::vector<GroupSpec>& specs() const { return specs_; }

  /// Catalog entry by name; imprimitive groups outside the catalog come from the builtin models.
  GroupSpec find(const std::string& name) const {
    const std::string canon = canonical_group_name(name);
    for (const auto& s : specs_)
      if (canonical_group_name(s.name) == canon) return s;
    if (canon.rfind("G(", 0) == 0) return builtin_group(canon);
    throw ConfigError("group '" + name + "' is not in the catalog");
  }

 private:
  std::vector<GroupSpec> specs_;
};

inline std::vector<GroupSpec> builtin_table_specs() {
  std::vector<GroupSpec> out;
  for (const auto& n : table_group_names()) out.push_back(builtin_group(n));
  return out;
}

inline ReflectionGroup build_checked(const GroupSpec& spec, const RunConfig& cfg) {
  return build_group(spec, cfg.closure_cap);
}

inline InvariantOptions invariant_options(const RunConfig& cfg) {
  InvariantOptions o;
  o.degree_cap = cfg.degree_cap;
  o.seed = cfg.seed;
  return o;
}

inline GroebnerOptions groebner_options(const RunConfig& cfg) {
  GroebnerOptions o;
  o.step_cap = cfg.gb_steps;
  return o;
}

inline Json exponent_key_map(const RelationResult& r) {
  Json out = Json::object();
  for (std::size_t m = 0; m < r.monomials.size(); ++m) {
    if (r.coefficients[m].is_zero()) continue;
    std::string key = "(";
    for (std::size_t i = 0; i < r.weights.size(); ++i) key += (i ? "," : "") + std::to_string(r.monomials[m][i]);
    out[key + ")"] = to_json(r.coefficients[m]);
  }
  return out;
}

// ---- group ----

inline void run_group_build(Report& rep, const RunConfig& cfg, const GroupSpec& spec) {
  Stopwatch sw;
  const auto g = build_checked(spec, cfg);
  rep.time("enumeration", sw.seconds());
  std::vector<int> orbits;
  for (const auto& o : g.hyperplane_orbits()) orbits.push_back(static_cast<int>(o.size()));
  rep.line(g.name() + ": order " + std::to_string(g.order()) + ", " + std::to_string(g.generator_count()) +
           " generators, " + std::to_string(g.reflections().size()) + " reflections, " +
           std::to_string(g.hyperplanes().size()) + " hyperplanes in orbits (" + join(orbits) + "), conductor " +
           std::to_string(g.conductor()));
  rep.data() = Json{{"group", g.name()},
                    {"order", g.order()},
                    {"generators", g.generator_count()},
                    {"reflections", g.reflections().size()},
                    {"hyperplanes", g.hyperplanes().size()},
                    {"hyperplane_orbits", orbits},
                    {"center_order", g.center().order},
                    {"conductor", g.conductor()}};
  rep.check("enumerated within closure cap", g.order() <= cfg.closure_cap, std::to_string(g.order()) + " elements");
}

inline void run_group_verify(Report& rep, const RunConfig& cfg, const GroupSpec& spec) {
  const auto g = build_checked(spec, cfg);
  const auto nr = verify_numerology(g, spec.ref, 40);
  Json checks = Json::array();
  for (const auto& c : nr.checks) {
    rep.check(g.name() + ": " + c.name, c.pass, "expected " + c.expected + ", got " + c.actual);
    checks.push_back(Json{{"name", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"pass", c.pass}});
  }
  rep.data() = Json{{"group", g.name()}, {"numerology", checks}};
}

// ---- catalog ----

inline void run_catalog_list(Report& rep, const Catalog& cat) {
  Json list = Json::array();
  for (const auto& s : cat.specs()) {
    rep.line(s.name + "  degrees " + join(s.ref.degrees) + "  codegrees " + join(s.ref.codegrees) + "  order " +
             (s.ref.expected_order ? std::to_string(*s.ref.expected_order) : "?"));
    list.push_back(to_json(s));
    list.back().erase("generators");
  }
  rep.data() = list;
  rep.check("catalog entries pass schema validation", !cat.specs().empty(), std::to_string(cat.specs().size()) + " entries");
}

inline void run_catalog_k3(Report& rep) {
  Json list = Json::array();
  for (const auto& k : k3_catalog()) {
    rep.line("(" + k.group + ", " + k.d + ")" + (k.distinct_gammas ? "  W' != W^sl" : ""));
    list.push_back(Json{{"group", k.group}, {"d", k.d}, {"derived_differs_from_sl", k.distinct_gammas}});
  }
  rep.data() = list;
  rep.check("K3 list has 12 entries", list.size() == 12, std::to_string(list.size()));
}

// ---- invariants ----

inline void run_invariants(Report& rep, const RunConfig& cfg, const GroupSpec& spec, int d, bool explicit_basis) {
  const auto g = build_checked(spec, cfg);
  InvariantContext ctx(g, invariant_options(cfg));
  Stopwatch sw;
  const auto b = ctx.basis(d);
  rep.time("basis", sw.seconds());
  rep.line(g.name() + " degree " + std::to_string(d) + ": dimension " + std::to_string(b.basis.size()) +
           ", Molien coefficient " + std::to_string(b.molien_dimension));
  Json j{{"group", g.name()}, {"degree", d}, {"dimension", b.basis.size()}, {"molien", b.molien_dimension}};
  if (explicit_basis) {
    Json polys = Json::array();
    for (const auto& f : b.basis) {
      polys.push_back(to_json(f));
      rep.line("  " + f.to_string({"x", "y", "z", "t"}));
    }
    j["basis"] = polys;
  }
  rep.data() = j;
  rep.check("dimension equals Molien coefficient", static_cast<long>(b.basis.size()) == b.molien_dimension);
}

struct Fundamentals {
  FundamentalSystem fs;
  DiscriminantForms df;
};

inline Fundamentals fundamentals(const InvariantContext& ctx, const GroupSpec& spec) {
  return {fundamental_system(ctx, spec.ref.degrees, fundamental_override(spec.name)), discriminant_forms(ctx.group())};
}

// ---- jrel ----

/// J^e for one hyperplane orbit, J_O^{e_O} for each of several.
inline void run_jrel(Report& rep, const RunConfig& cfg, const GroupSpec& spec) {
  const auto g = build_checked(spec, cfg);
  InvariantContext ctx(g, invariant_options(cfg));
  const auto [fs, df] = fundamentals(ctx, spec);
  rep.check("discriminant forms transform by det^-1", df.transformation_ok);
  RelationOptions ro;
  ro.seed = cfg.seed;
  Json rels = Json::array();
  const auto& orbits = g.hyperplane_orbits();
  for (std::size_t k = 0; k < orbits.size(); ++k) {
    RelationTarget t;
    t.product = orbits.size() == 1 ? df.j : df.orbit_forms[k];
    const int e = g.hyperplanes()[orbits[k].front()].order;
    const std::string label = orbits.size() == 1 ? "J" : "J_" + std::to_string(k + 1);
    Stopwatch sw;
    const auto r = express_in_invariants(t, e, fs.polys, fs.degrees, ro);
    rep.time(label, sw.seconds());
    std::size_t nonzero = 0;
    for (const auto& c : r.coefficients) nonzero += !c.is_zero();
    rep.line(label + "^" + std::to_string(e) + " = P(f) in weighted degree " + std::to_string(r.weighted_degree) + ": " +
             std::to_string(r.monomials.size()) + " unknowns, " + std::to_string(nonzero) + " nonzero, verified " +
             r.verified_by);
    rep.check(label + "^" + std::to_string(e) + " relation verified", !r.verified_by.empty(), r.verified_by);
    rels.push_back(Json{{"target", label},
                        {"exponent", e},
                        {"weights", fs.degrees},
                        {"weighted_degree", r.weighted_degree},
                        {"unknowns", r.monomials.size()},
                        {"verified_by", r.verified_by},
                        {"coefficients", exponent_key_map(r)}});
  }
  Json fpolys = Json::array();
  for (const auto& f : fs.polys) fpolys.push_back(to_json(f));
  rep.data() = Json{{"group", g.name()}, {"fundamental", fpolys}, {"degrees", fs.degrees}, {"relations", rels}};
}

// ---- quotient ----

/// f = f_d + sum_k coeffs[k] m_k over the products m_k of the other
/// fundamental invariants of degree d; random coefficients unless given.
inline ExplicitInput explicit_input_for(const FundamentalSystem& fs, int d, std::optional<std::vector<Rational>> coeffs,
                                        std::uint64_t seed, std::vector<Rational>* used = nullptr) {
  ExplicitInput in{fs.polys, fs.degrees, 0, {}};
  in.options.seed = seed;
  std::size_t fi = fs.degrees.size();
  for (std::size_t k = 0; k < fs.degrees.size(); ++k)
    if (fs.degrees[k] == d) {
      fi = k;
      break;
    }
  if (fi == fs.degrees.size()) throw ConfigError("d is not a degree of the group");
  in.f_index = fi;
  std::vector<int> others;
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < fs.degrees.size(); ++k)
    if (k != fi) {
      others.push_back(fs.degrees[k]);
      idx.push_back(k);
    }
  const auto mons = monomials_of_weighted_degree(others, d);
  Rng rng(seed);
  std::vector<Rational> c;
  if (coeffs) {
    if (coeffs->size() > mons.size()) throw ConfigError("too many coefficients for this degree");
    c = *coeffs;
    c.resize(mons.size(), Rational(0));
  } else {
    for (std::size_t m = 0; m < mons.size(); ++m) c.push_back(rng.rational(9, 5));
  }
  MultiPoly f = fs.polys[fi];
  for (std::size_t m = 0; m < mons.size(); ++m) {
    MultiPoly t = MultiPoly::constant(f.nvars(), Cyclotomic(c[m]));
    for (std::size_t i = 0; i < idx.size(); ++i)
      if (mons[m][i]) t = t * fs.polys[idx[i]].pow(mons[m][i]);
    f += t;
  }
  in.system[fi] = f;
  if (used) *used = c;
  return in;
}

inline Json presentation_json(const SurfacePresentation& s) {
  Json j{{"group", s.group},
         {"d", s.d},
         {"gamma", gamma_name(s.gamma)},
         {"ambient", s.ambient.weights},
         {"degrees", s.ambient.degrees},
         {"zf_mod_w", s.zf.weights},
         {"raw_weights", s.raw_weights},
         {"raw_degrees", s.raw_degrees}};
  if (!s.note.empty()) j["note"] = s.note;
  if (!s.ambient.equations.empty()) {
    Json eqs = Json::array();
    for (const auto& e : s.ambient.equations) eqs.push_back(to_json(e));
    j["equations"] = eqs;
  }
  return j;
}

inline void run_quotient(Report& rep, const RunConfig& cfg, const GroupSpec& spec, int d, Gamma gamma,
                         bool explicit_eq, std::optional<std::vector<Rational>> coeffs) {
  const auto g = build_checked(spec, cfg);
  std::optional<ExplicitInput> in;
  std::vector<Rational> used;
  if (explicit_eq) {
    InvariantContext ctx(g, invariant_options(cfg));
    const auto fs = fundamental_system(ctx, spec.ref.degrees, fundamental_override(spec.name));
    in = explicit_input_for(fs, d, coeffs, cfg.seed, &used);
  }
  Stopwatch sw;
  const auto s = quotient_presentation(g, spec.ref, d, gamma, in);
  rep.time("presentation", sw.seconds());
  rep.line(s.group + ", d = " + std::to_string(d) + ", " + gamma_name(s.gamma) + ": P(" + join(s.ambient.weights) +
           ") degrees (" + join(s.ambient.degrees) + "), Z(f)/W = P(" + join(s.zf.weights) + ")");
  if (!s.note.empty()) rep.line("note: " + s.note);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < s.ambient.weights.size(); ++i) names.push_back("y" + std::to_string(i + 1));
  for (const auto& e : s.ambient.equations) rep.line("  0 = " + e.to_string(names));
  const auto wf = wellformed_checks(s.ambient.weights, s.ambient.degrees);
  for (const auto& v : wf.verdicts) {
    if (v.pass) rep.check("well-formedness " + v.name, *v.pass, v.detail);
    else rep.line("well-formedness " + v.name + ": not evaluated (" + v.detail + ")");
  }
  for (const auto& row : quotient_reference_rows()) {
    if (canonical_group_name(row.group) != canonical_group_name(s.group) || row.d != d) continue;
    if (row.gamma != "both" && row.gamma != gamma_name(s.gamma)) continue;
    const auto c = compare_row(s, row);
    rep.check("matches reference row", c.up_to_orbit_order, c.exact ? "exact" : c.detail);
  }
  if (explicit_eq) {
    for (const auto& r : s.relations)
      rep.check("equation relation verified", !r.verified_by.empty(), r.verified_by);
  }
  Json j = presentation_json(s);
  if (explicit_eq) {
    Json cj = Json::array();
    for (const auto& c : used) cj.push_back(to_json(c));
    j["f_coefficients"] = cj;
  }
  rep.data() = j;
}

// ---- springer ----

inline Json springer_json(const SpringerDatum& s, const SpringerReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  Json basis = Json::array();
  for (const auto& v : s.ve_basis) basis.push_back(to_json(v));
  Json j{{"e", s.e}, {"delta", s.delta}, {"delta_star", s.delta_star}, {"max_dimension", s.max_dimension},
         {"eigenspace_basis", basis}, {"checks", checks}};
  if (s.w_e) j["w_e"] = to_json(*s.w_e);
  return j;
}

inline std::optional<SpringerDatum> springer_one(Report& rep, const ReflectionGroup& g, const GroupSpec& spec,
                                                 const FundamentalSystem* fs, int e, Json& out) {
  const auto [delta, delta_star] = delta_data(spec.ref.degrees, spec.ref.codegrees, e);
  SpringerDatum s;
  try {
    s = regular_eigenvector_element(g, spec.ref, e);
  } catch (const Error& err) {
    rep.check(g.name() + " e=" + std::to_string(e) + ": regular element", false, err.what());
    return std::nullopt;
  }
  const auto r = springer_verify(g, spec.ref, s, fs ? fs->polys : std::vector<MultiPoly>{});
  for (const auto& c : r.checks) rep.check(g.name() + " e=" + std::to_string(e) + ": " + c.name, c.pass, c.detail);
  rep.line(g.name() + " e=" + std::to_string(e) + ": delta " + std::to_string(delta) + ", delta* " +
           std::to_string(delta_star) + ", max dim V(w,zeta_e) " + std::to_string(s.max_dimension));
  out.push_back(springer_json(s, r));
  return s;
}

inline void run_springer(Report& rep, const RunConfig& cfg, const GroupSpec& spec, int e) {
  const auto g = build_checked(spec, cfg);
  InvariantContext ctx(g, invariant_options(cfg));
  const auto fs = fundamental_system(ctx, spec.ref.degrees, fundamental_override(spec.name));
  Json out = Json::array();
  springer_one(rep, g, spec, &fs, e, out);
  rep.data() = Json{{"group", g.name()}, {"results", out}};
}

/// The positions of Z(f)/W singular weights: (G(2,1,4),8), (G28,8),(G28,12), (G30,20),(G30,30).
inline std::vector<int> springer_sweep_degrees(const std::string& name) {
  const std::string c = canonical_group_name(name);
  if (c == "G(2,1,4)") return {8};
  if (c == "G28") return {8, 12};
  if (c == "G30") return {20, 30};
  throw ConfigError("springer sweep covers G(2,1,4), G28 and G30 only; '" + name + "' is not among them");
}

inline void run_springer_sweep(Report& rep, const RunConfig& cfg, const GroupSpec& spec) {
  const auto degrees = springer_sweep_degrees(spec.name);
  const auto g = build_checked(spec, cfg);
  Json out = Json::array();
  for (int e : degrees) {
    const auto [delta, delta_star] = delta_data(spec.ref.degrees, spec.ref.codegrees, e);
    rep.check(g.name() + " e=" + std::to_string(e) + ": delta = delta* = 1", delta == 1 && delta_star == 1,
              std::to_string(delta) + ", " + std::to_string(delta_star));
    const auto s = springer_one(rep, g, spec, nullptr, e, out);
    if (s && s->w_e)
      rep.check(g.name() + " e=" + std::to_string(e) + ": det(w_e) = 1", s->w_e->det() == Cyclotomic(1),
                s->w_e->det().to_string());
  }
  rep.data() = Json{{"group", g.name()}, {"results", out}};
}

// ---- pencil ----

inline Json poly_list_json(const std::vector<QPoly>& ps, const std::vector<std::string>& names) {
  Json out = Json::array();
  for (const auto& p : ps) out.push_back(p.to_string(names));
  return out;
}

inline bool matches_expected_locus(const std::vector<QPoly>& radical) {
  // {c + 1/2, b^2 - 16} up to order and unit scaling; variables x,y,z,b,c.
  const int n = 5;
  const QPoly b = QPoly::variable(n, 3), c = QPoly::variable(n, 4);
  const std::vector<QPoly> want{c + QPoly::constant(n, Rational(1, 2)), b * b - QPoly::constant(n, Rational(16))};
  if (radical.size() != want.size()) return false;
  const BlockOrder ord{n, 3};
  std::vector<QPoly> got;
  for (const auto& g : radical) {
    const Rational lc = g.coeff(leading_monomial(g, ord));
    got.push_back(g.scaled(Rational(1) / lc));
  }
  for (const auto& w : want)
    if (std::find(got.begin(), got.end(), w) == got.end()) return false;
  return true;
}

inline void run_pencil_special(Report& rep, const RunConfig& cfg, const std::string& family, const std::string& slice) {
  if (family != "F") throw ConfigError("only the F family has a parameter elimination; got '" + family + "'");
  if (slice != "a=1") throw ConfigError("the elimination runs on the slice a=1; got '" + slice + "'");
  Stopwatch sw;
  const auto r = pencil_special_a1(groebner_options(cfg));
  rep.time("elimination", sw.seconds());
  const std::vector<std::string> names{"x", "y", "z", "b", "c"};
  const auto& el = *r.elimination;
  rep.line("elimination ideal: " + poly_list_json(el.ideal, names).dump());
  rep.line("univariate eliminants: " + poly_list_json(el.eliminants, names).dump());
  rep.line("radical: " + poly_list_json(el.radical, names).dump());
  Json pts = Json::array();
  for (const auto& p : r.points) {
    std::string forms;
    Json fj = Json::array();
    for (const auto& s : p.dividing_forms) {
      std::string f = "x";
      const char* v[] = {"x", "y", "z", "t"};
      for (int i = 1; i < 4; ++i) f += std::string(s[static_cast<std::size_t>(i)] > 0 ? "+" : "-") + v[i];
      forms += (forms.empty() ? "" : ", ") + f;
      fj.push_back(f);
    }
    rep.line("(b, c) = (" + p.b.get_str() + ", " + p.c.get_str() + "): linear factors " + forms);
    rep.check("F_{1," + p.b.get_str() + "," + p.c.get_str() + "} has a linear factor", !p.dividing_forms.empty(), forms);
    rep.check("specialized system at (" + p.b.get_str() + ", " + p.c.get_str() + ") has a common zero",
              p.system_consistent);
    pts.push_back(Json{{"b", to_json(p.b)}, {"c", to_json(p.c)}, {"linear_factors", fj}, {"system_consistent", p.system_consistent}});
  }
  rep.check("rational points exhaust the locus", r.points.size() == r.locus_degree,
            std::to_string(r.points.size()) + " of " + std::to_string(r.locus_degree));
  rep.data() = Json{{"family", family},
                    {"slice", slice},
                    {"eliminated", {"x", "y", "z"}},
                    {"degrevlex_basis_size", el.degrevlex_basis.size()},
                    {"ideal", poly_list_json(el.ideal, names)},
                    {"eliminants", poly_list_json(el.eliminants, names)},
                    {"squarefree", poly_list_json(el.squarefree, names)},
                    {"radical", poly_list_json(el.radical, names)},
                    {"points", pts}};
}

inline Json verdict_json(const SingularityVerdict& v) {
  return Json{{"point", to_json(v.point)},
              {"chart", v.chart},
              {"classification", singularity_name(v.classification)},
              {"gradient", to_json(v.gradient)},
              {"hessian_rank", v.hessian_rank},
              {"quadratic_part", v.quadratic_part.to_string({"x", "y", "z"})}};
}

inline void run_pencil_certify(Report& rep, const RunConfig& cfg, const std::string& family, const Rational& a,
                               const Rational& b, const Rational& c) {
  if (family != "F") throw ConfigError("certification is implemented for the F family");
  if (a != 0 || b == 0) throw ConfigError("certification covers the slice a = 0, b != 0");
  const Rational q = c / b;
  const auto cert = pencil_certify_a0(q, groebner_options(cfg));
  Json j{{"family", family}, {"a", to_json(a)}, {"b", to_json(b)}, {"c", to_json(c)}, {"c_over_b", to_json(q)}};
  if (cert.reducible) {
    rep.line(cert.note);
    rep.check("member is irreducible", false, cert.note);
    j["reducible"] = true;
    rep.data() = j;
    return;
  }
  Json vs = Json::array();
  for (const auto& v : cert.verdicts) vs.push_back(verdict_json(v));
  rep.line("orbit of [0:0:i:1] under G(2,2,4): " + std::to_string(cert.orbit_size) + " points, " +
           std::to_string(cert.orbit_in_chart) + " with t != 0");
  if (!cert.verdicts.empty())
    rep.line("quadratic part at [0:0:i:1]: " + cert.verdicts.front().quadratic_part.to_string({"x", "y", "z"}));
  bool all_a1 = !cert.verdicts.empty();
  for (const auto& v : cert.verdicts) all_a1 = all_a1 && v.classification == SingularityClass::A1;
  rep.check("every orbit point is an A1 singularity", all_a1, std::to_string(cert.verdicts.size()) + " points");
  rep.check("Jacobian ideal degree in t = 1 equals the orbit points there", cert.chart_degree == cert.orbit_in_chart,
            std::to_string(cert.chart_degree) + " vs " + std::to_string(cert.orbit_in_chart));
  j["orbit_size"] = cert.orbit_size;
  j["chart_degree"] = cert.chart_degree;
  j["verdicts"] = vs;
  rep.data() = j;
}

// ---- surface lines ----

/// sum_i coeffs[i] b_i over an invariant basis of degree d (random unless given, leading 1).
inline MultiPoly invariant_combination(const InvariantContext& ctx, int d, std::optional<std::vector<Rational>> coeffs,
                                       std::uint64_t seed, std::vector<Rational>* used = nullptr) {
  const auto b = ctx.basis(d);
  std::vector<Rational> c;
  if (coeffs) {
    if (coeffs->size() > b.basis.size()) throw ConfigError("more coefficients than invariants of this degree");
    c = *coeffs;
    c.resize(b.basis.size(), Rational(0));
  } else {
    Rng rng(seed);
    c.push_back(Rational(1));
    while (c.size() < b.basis.size()) c.push_back(rng.rational(9, 5));
  }
  MultiPoly f(static_cast<int>(ctx.group().dim()));
  for (std::size_t i = 0; i < b.basis.size(); ++i) f += b.basis[i].scaled(Cyclotomic(c[i]));
  if (used) *used = c;
  return f;
}

inline void run_surface_lines(Report& rep, const RunConfig& cfg, const GroupSpec& spec, int d,
                              std::optional<std::vector<Rational>> coeffs) {
  const auto g = build_checked(spec, cfg);
  InvariantContext ctx(g, invariant_options(cfg));
  std::vector<Rational> used;
  const MultiPoly f = invariant_combination(ctx, d, coeffs, cfg.seed, &used);
  const auto lr = lines_not_in_surface(g, f);
  rep.line(g.name() + ", degree " + std::to_string(d) + ": " + std::to_string(lr.pairs) + " hyperplane pairs, " +
           std::to_string(lr.violations.size()) + " lines inside Z(f)");
  rep.check("f does not vanish on any line P(H1 cap H2)", lr.violations.empty(),
            std::to_string(lr.pairs) + " pairs");
  rep.check("restrictions are zero or binary forms of degree d", lr.degrees_ok);
  Json viol = Json::array();
  for (const auto& v : lr.violations) viol.push_back({v.h1, v.h2});
  Json cj = Json::array();
  for (const auto& c : used) cj.push_back(to_json(c));
  std::vector<std::size_t> sizes = lr.orbit_sizes;
  rep.data() = Json{{"group", g.name()}, {"degree", d},         {"coefficients", cj},
                    {"orbit_sizes", sizes}, {"pairs", lr.pairs}, {"violations", viol}};
}

// ---- tables ----

inline void run_table1(Report& rep, const RunConfig& cfg, const std::vector<GroupSpec>& specs, Json& rows) {
  rep.line("Group      |W|      |W'|     degrees        codegrees");
  for (const auto& spec : specs) {
    Stopwatch sw;
    const auto g = build_checked(spec, cfg);
    const auto nr = verify_numerology(g, spec.ref, 40);
    rep.time(spec.name, sw.seconds());
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-10s %-8zu %-8zu %-14s %s", g.name().c_str(), g.order(), g.derived_subgroup().order,
                  join(spec.ref.degrees).c_str(), join(spec.ref.codegrees).c_str());
    rep.line(buf);
    Json checks = Json::array();
    for (const auto& c : nr.checks) {
      rep.check(g.name() + ": " + c.name, c.pass, "expected " + c.expected + ", got " + c.actual);
      checks.push_back(Json{{"name", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"pass", c.pass}});
    }
    rows.push_back(Json{{"group", g.name()},
                        {"order", g.order()},
                        {"derived_order", g.derived_subgroup().order},
                        {"degrees", spec.ref.degrees},
                        {"codegrees", spec.ref.codegrees},
                        {"checks", checks}});
  }
}

inline void run_table2(Report& rep, const RunConfig& cfg, const Catalog& cat, const std::string& only, Json& rows) {
  rep.line("");
  rep.line("(W, d)            Gamma    ambient            degrees   Z(f)/W");
  std::string current;
  std::optional<ReflectionGroup> g;
  GroupSpec spec;
  for (const auto& row : quotient_reference_rows()) {
    if (!only.empty() && canonical_group_name(row.group) != canonical_group_name(only)) continue;
    if (row.group != current) {
      spec = cat.find(row.group);
      g.emplace(build_checked(spec, cfg));
      current = row.group;
    }
    const Gamma gamma = row.gamma == "sl" || row.gamma == "both" ? Gamma::SpecialLinear : Gamma::Derived;
    const std::string label = "(" + row.group + ", " + std::to_string(row.d) + ", " + row.gamma + ")";
    std::optional<SurfacePresentation> computed;
    try {
      computed = quotient_presentation(*g, spec.ref, row.d, gamma);
    } catch (const BudgetExceeded&) {
      throw;
    } catch (const Error& e) {
      // a broken catalog entry should fail its rows, not abort the run
      rep.check(label + " presentation", false, e.what());
      continue;
    }
    const auto& s = *computed;
    const auto c = compare_row(s, row);
    const auto wf = wellformed_checks(s.ambient.weights, s.ambient.degrees);
    const std::string head = "(" + row.group + ", " + std::to_string(row.d) + ")";
    const std::string amb = "P(" + join(s.ambient.weights) + ")", degs = "(" + join(s.ambient.degrees) + ")";
    char buf[200];
    std::snprintf(buf, sizeof buf, "%-17s %-8s %-18s %-9s P(%s)", head.c_str(),
                  row.gamma == "both" ? "W'=Wsl" : (row.gamma == "sl" ? "Wsl" : "W'"), amb.c_str(), degs.c_str(),
                  join(s.zf.weights).c_str());
    rep.line(buf);
    rep.check(label + " presentation", c.up_to_orbit_order, c.exact ? "exact" : c.detail);
    rep.check(label + " well-formed (H1-H4)", wf.all_evaluated_pass());
    Json r = presentation_json(s);
    r["reference_gamma"] = row.gamma;
    r["exact"] = c.exact;
    r["match"] = c.up_to_orbit_order;
    rows.push_back(r);
  }
}

inline void run_verify_tables(Report& rep, const RunConfig& cfg, const Catalog& cat, const std::string& only) {
  std::vector<GroupSpec> specs;
  for (const auto& s : cat.specs())
    if (only.empty() || canonical_group_name(s.name) == canonical_group_name(only)) specs.push_back(s);
  if (specs.empty()) throw ConfigError("no catalog group matches '" + only + "'");
  Json t1 = Json::array(), t2 = Json::array();
  run_table1(rep, cfg, specs, t1);
  run_table2(rep, cfg, cat, only, t2);
  rep.data() = Json{{"table1", t1}, {"table2", t2}};
}

inline void run_reproduce_elimination(Report& rep, const RunConfig& cfg) {
  Stopwatch sw;
  const auto r = pencil_special_a1(groebner_options(cfg));
  rep.time("elimination", sw.seconds());
  const std::vector<std::string> names{"x", "y", "z", "b", "c"};
  const auto& el = *r.elimination;
  const Json got = poly_list_json(el.radical, names);
  rep.line("radical of the elimination ideal: " + got.dump());
  rep.line("expected: [\"c + 1/2\",\"b^2 - 16\"]");
  rep.check("reduced basis equals {c + 1/2, b^2 - 16}", matches_expected_locus(el.radical), got.dump());
  for (const auto& p : r.points) {
    const std::string at = "(" + p.b.get_str() + ", " + p.c.get_str() + ")";
    const bool want = p.b > 0 ? std::find(p.dividing_forms.begin(), p.dividing_forms.end(), std::vector<int>{1, -1, -1, 1}) !=
                                    p.dividing_forms.end()
                              : std::find(p.dividing_forms.begin(), p.dividing_forms.end(), std::vector<int>{1, 1, 1, -1}) !=
                                    p.dividing_forms.end();
    rep.check(std::string("F at ") + at + " divisible by " + (p.b > 0 ? "x-y-z+t" : "x+y+z-t"), want);
  }
  rep.data() = Json{{"radical", got},
                    {"expected", {"c + 1/2", "b^2 - 16"}},
                    {"ideal", poly_list_json(el.ideal, names)},
                    {"eliminants", poly_list_json(el.eliminants, names)}};
}

}  // namespace crg
