#pragma once

// Weighted projective spaces: normalization of weights, well-formedness,
// the list of (W, d) giving K3 quotients and the quotient presentations.

#include <numeric>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "crg/invariants.hpp"

namespace crg {

struct NormalizationStep {
  std::string kind;  // "gcd" or "delorme"
  int position = -1;  // for delorme: the weight left untouched
  int factor = 1;
};

struct NormalizedSpace {
  std::vector<int> weights;
  std::vector<int> degrees;
  std::vector<MultiPoly> equations;  // rewritten alongside, when supplied
  std::vector<NormalizationStep> steps;
  std::vector<std::string> skipped;
};

namespace detail {

inline int gcd_of(const std::vector<int>& v, int skip = -1) {
  int g = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (static_cast<int>(i) != skip) g = std::gcd(g, v[i]);
  return g;
}

// x_j^a -> x_j^(a/q) in every term; false if some exponent is not divisible.
inline bool root_variable(MultiPoly& p, int j, int q) {
  MultiPoly out(p.nvars());
  for (const auto& [exp, c] : p.terms()) {
    Exponent e = exp;
    auto& a = e[static_cast<std::size_t>(j)];
    if (a % q != 0) return false;
    a = static_cast<std::uint16_t>(a / q);
    out.add_term(e, c);
  }
  p = std::move(out);
  return true;
}

}  // namespace detail

/// Global gcd division, then reductions P(..,l_j,..) = P(..l_i/q..,l_j,..) with
/// q = gcd of the other weights coprime to l_j, scanning j upward, to a fixpoint.
inline NormalizedSpace normalize_weights(std::vector<int> weights, std::vector<int> degrees,
                                         std::vector<MultiPoly> equations = {}) {
  if (weights.empty()) throw Error("weighted projective space needs at least one weight");
  for (int w : weights)
    if (w <= 0) throw Error("weights must be positive");
  NormalizedSpace out;
  auto divisible = [&](int q) {
    return std::all_of(degrees.begin(), degrees.end(), [q](int d) { return d % q == 0; });
  };
  for (bool changed = true; changed;) {
    changed = false;
    const int g = detail::gcd_of(weights);
    if (g > 1) {
      if (divisible(g)) {
        for (auto& w : weights) w /= g;
        for (auto& d : degrees) d /= g;
        out.steps.push_back({"gcd", -1, g});
        changed = true;
        continue;
      }
      out.skipped.push_back("common factor " + std::to_string(g) + " does not divide the equation degrees");
    }
    if (weights.size() < 2) break;
    for (std::size_t j = 0; j < weights.size(); ++j) {
      const int q = detail::gcd_of(weights, static_cast<int>(j));
      if (q <= 1 || std::gcd(q, weights[j]) != 1) continue;
      if (!divisible(q)) {
        const std::string note = "reduction at position " + std::to_string(j) + " by " + std::to_string(q) +
                                 " skipped: degrees not divisible";
        if (std::find(out.skipped.begin(), out.skipped.end(), note) == out.skipped.end()) out.skipped.push_back(note);
        continue;
      }
      bool ok = true;
      auto eqs = equations;
      for (auto& p : eqs) ok = ok && detail::root_variable(p, static_cast<int>(j), q);
      if (!ok) {
        out.skipped.push_back("reduction at position " + std::to_string(j) + " by " + std::to_string(q) +
                              " skipped: an equation has a power of that coordinate not divisible by " + std::to_string(q));
        continue;
      }
      equations = std::move(eqs);
      for (std::size_t i = 0; i < weights.size(); ++i)
        if (i != j) weights[i] /= q;
      for (auto& d : degrees) d /= q;
      out.steps.push_back({"delorme", static_cast<int>(j), q});
      changed = true;
      break;
    }
  }
  out.weights = std::move(weights);
  out.degrees = std::move(degrees);
  out.equations = std::move(equations);
  return out;
}

struct Verdict {
  std::string name;
  std::optional<bool> pass;  // empty when not evaluated
  std::string detail;
};

struct WellFormedReport {
  std::vector<Verdict> verdicts;
  bool all_evaluated_pass() const {
    return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return !v.pass || *v.pass; });
  }
  std::optional<bool> verdict(const std::string& name) const {
    for (const auto& v : verdicts)
      if (v.name == name) return v.pass;
    return std::nullopt;
  }
};

/// (H1) well-formed ambient, (H2) dimension 2, (H3) well-formed surface, (H4) balance.
inline WellFormedReport wellformed_checks(const std::vector<int>& w, const std::vector<int>& deg) {
  WellFormedReport r;
  bool h1 = true;
  for (std::size_t j = 0; j < w.size(); ++j)
    if (detail::gcd_of(w, static_cast<int>(j)) != 1) h1 = false;
  r.verdicts.push_back({"H1", h1, "gcd of the weights with one omitted is 1"});
  const long dim = static_cast<long>(w.size()) - 1 - static_cast<long>(deg.size());
  r.verdicts.push_back({"H2", dim == 2, "dimension " + std::to_string(dim)});
  if (deg.size() == 1) {
    bool ok = true;
    for (std::size_t a = 0; a < w.size(); ++a)
      for (std::size_t b = a + 1; b < w.size(); ++b)
        if (deg[0] % std::gcd(w[a], w[b]) != 0) ok = false;
    r.verdicts.push_back({"H3", ok, "pairwise gcds divide the degree"});
  } else if (deg.size() == 2) {
    bool ok = true;
    for (std::size_t a = 0; a < w.size(); ++a)
      for (std::size_t b = a + 1; b < w.size(); ++b) {
        const int g = std::gcd(w[a], w[b]);
        if (deg[0] % g != 0 && deg[1] % g != 0) ok = false;
        for (std::size_t c = b + 1; c < w.size(); ++c) {
          const int h = std::gcd(g, w[c]);
          if (deg[0] % h != 0 || deg[1] % h != 0) ok = false;
        }
      }
    r.verdicts.push_back({"H3", ok, "pairwise gcds divide a degree, triple gcds divide both"});
  } else {
    r.verdicts.push_back({"H3", std::nullopt, "no rule for this codimension"});
  }
  const long sw = std::accumulate(w.begin(), w.end(), 0L), sd = std::accumulate(deg.begin(), deg.end(), 0L);
  r.verdicts.push_back({"H4", sw == sd, std::to_string(sw) + " vs " + std::to_string(sd)});
  r.verdicts.push_back({"H5", std::nullopt, "ADE singularities: not independently certified here"});
  return r;
}

struct K3Entry {
  std::string group;   // a group name, or a family with parameter e
  std::string d;       // the degree, possibly in terms of e
  bool distinct_gammas = false;  // W' differs from W^sl
};

inline std::vector<K3Entry> k3_catalog() {
  return {{"G(1,1,5)", "4", false}, {"G(4,2,4)", "4", true},  {"G29", "4", false},
          {"G(2e,2e,4), e odd", "4e", false}, {"G(2e,2e,4), e odd", "6e", false},
          {"G(4e,4e,4)", "4e", false}, {"G(2,1,4)", "4", true}, {"G(2,1,4)", "6", true},
          {"G28", "6", true}, {"G28", "8", true}, {"G30", "12", false}, {"G31", "20", false}};
}

inline bool in_k3(const std::string& name, int d) {
  const std::string g = canonical_group_name(name);
  if (g == "G(1,1,5)" || g == "G(4,2,4)" || g == "G29") return d == 4;
  if (g == "G(2,1,4)") return d == 4 || d == 6;
  if (g == "G28") return d == 6 || d == 8;
  if (g == "G30") return d == 12;
  if (g == "G31") return d == 20;
  static const std::regex same(R"(G\((\d+),(\d+),4\))");
  std::smatch m;
  if (std::regex_match(g, m, same) && m[1] == m[2]) {
    const int a = std::stoi(m[1]);
    if (a % 4 == 0) return d == a;
    if (a % 2 == 0 && (a / 2) % 2 == 1) return d == 2 * a || d == 3 * a;
  }
  return false;
}

enum class Gamma { Derived, SpecialLinear };

inline std::string gamma_name(Gamma g) { return g == Gamma::Derived ? "derived" : "sl"; }

inline Gamma parse_gamma(const std::string& s) {
  if (s == "derived" || s == "W'" || s == "prime") return Gamma::Derived;
  if (s == "sl" || s == "Wsl") return Gamma::SpecialLinear;
  throw Error("unknown subgroup '" + s + "' (expected derived or sl)");
}

struct SurfacePresentation {
  std::string group;
  int d = 0;
  Gamma gamma = Gamma::SpecialLinear;
  bool derived_equals_sl = false;
  std::string note;
  std::vector<int> raw_weights, raw_degrees;
  NormalizedSpace ambient;            // normalized weights and equation degrees
  std::vector<std::string> coordinate_names;
  std::vector<int> zf_raw;
  NormalizedSpace zf;                 // Z(f)/W as a weighted projective plane
  std::vector<RelationResult> relations;  // explicit mode only
};

/// Fundamental system with f placed first, for explicit equations.
struct ExplicitInput {
  std::vector<MultiPoly> system;
  std::vector<int> weights;
  std::size_t f_index = 0;
  RelationOptions options;
};

inline SurfacePresentation quotient_presentation(const ReflectionGroup& g, const ReferenceData& ref, int d, Gamma gamma,
                                                 const std::optional<ExplicitInput>& explicit_input = std::nullopt) {
  if (!in_k3(g.name(), d)) throw Error("(" + g.name() + ", " + std::to_string(d) + ") is not in the K3 list");
  SurfacePresentation s;
  s.group = g.name();
  s.d = d;
  s.gamma = gamma;
  const long det_order = g.det_image_order();
  s.derived_equals_sl = g.derived_subgroup().order * static_cast<std::size_t>(det_order) == g.order();
  if (gamma == Gamma::Derived && s.derived_equals_sl) {
    s.gamma = Gamma::SpecialLinear;
    s.note = "W' = W^sl for this group; the W^sl presentation is returned";
  }
  const auto pos = std::find(ref.degrees.begin(), ref.degrees.end(), d);
  if (pos == ref.degrees.end()) throw Error("d is not a degree of the group");
  const auto skip = static_cast<std::size_t>(pos - ref.degrees.begin());
  for (std::size_t k = 0; k < ref.degrees.size(); ++k)
    if (k != skip) {
      s.raw_weights.push_back(ref.degrees[k]);
      s.coordinate_names.push_back("x" + std::to_string(ref.degrees[k]));
    }
  s.zf_raw = s.raw_weights;
  const std::size_t nx = s.raw_weights.size();

  std::vector<ProductForm> forms;
  std::vector<int> exps;
  if (s.gamma == Gamma::SpecialLinear) {
    s.raw_weights.push_back(static_cast<int>(g.hyperplanes().size()));
    s.raw_degrees.push_back(static_cast<int>(det_order) * static_cast<int>(g.hyperplanes().size()));
    s.coordinate_names.push_back("j");
    exps.push_back(static_cast<int>(det_order));
  } else {
    std::size_t k = 0;
    for (const auto& orbit : g.hyperplane_orbits()) {
      const int eo = g.hyperplanes()[orbit.front()].order;
      s.raw_weights.push_back(static_cast<int>(orbit.size()));
      s.raw_degrees.push_back(eo * static_cast<int>(orbit.size()));
      s.coordinate_names.push_back("j" + std::to_string(++k));
      exps.push_back(eo);
    }
  }

  std::vector<MultiPoly> equations;
  if (explicit_input) {
    const auto& in = *explicit_input;
    if (in.system.size() != ref.degrees.size() || in.f_index >= in.system.size() ||
        in.system[in.f_index].total_degree() != d)
      throw Error("explicit mode needs a fundamental system containing f of degree d");
    const auto df = discriminant_forms(g);
    if (s.gamma == Gamma::SpecialLinear) forms.push_back(df.j);
    else forms = df.orbit_forms;
    const int nv = static_cast<int>(s.raw_weights.size());
    for (std::size_t k = 0; k < forms.size(); ++k) {
      RelationTarget t;
      t.product = forms[k];
      auto rel = express_in_invariants(t, exps[k], in.system, in.weights, in.options);
      // j_k^e - P(0, x): drop terms containing f, renumber the rest.
      MultiPoly eq(nv);
      Exponent je{};
      je[nx + k] = static_cast<std::uint16_t>(exps[k]);
      eq.add_term(je, Cyclotomic(1));
      for (std::size_t m = 0; m < rel.monomials.size(); ++m) {
        if (rel.monomials[m][in.f_index] != 0 || rel.coefficients[m].is_zero()) continue;
        Exponent e{};
        std::size_t at = 0;
        for (std::size_t i = 0; i < in.system.size(); ++i)
          if (i != in.f_index) e[at++] = rel.monomials[m][i];
        eq.add_term(e, -rel.coefficients[m]);
      }
      equations.push_back(std::move(eq));
      s.relations.push_back(std::move(rel));
    }
  }
  s.ambient = normalize_weights(s.raw_weights, s.raw_degrees, std::move(equations));
  s.zf = normalize_weights(s.zf_raw, {});
  return s;
}

/// A row of the reference table of quotient presentations.
struct QuotientRow {
  std::string group;
  int d;
  std::string gamma;  // "derived", "sl" or "both" when W' = W^sl
  std::vector<int> ambient;
  std::vector<int> degrees;
  std::vector<int> zf;
};

inline std::vector<QuotientRow> quotient_reference_rows() {
  return {
      {"G(1,1,5)", 4, "both", {2, 3, 5, 10}, {20}, {2, 3, 5}},
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
      {"G31", 20, "both", {2, 1, 2, 5}, {10}, {1, 1, 1}},
  };
}

struct RowComparison {
  bool exact = false;            // positions agree
  bool up_to_orbit_order = false;  // agree after permuting the orbit coordinates
  std::string detail;
};

/// Compares a presentation with a reference row; the orbit coordinates of a
/// two-equation presentation may be listed in either order.
inline RowComparison compare_row(const SurfacePresentation& s, const QuotientRow& row) {
  RowComparison c;
  const auto& w = s.ambient.weights;
  const auto& deg = s.ambient.degrees;
  c.exact = w == row.ambient && deg == row.degrees && s.zf.weights == row.zf;
  if (c.exact) {
    c.up_to_orbit_order = true;
    return c;
  }
  const std::size_t nx = s.zf_raw.size();
  if (w.size() == row.ambient.size() && deg.size() == row.degrees.size() && s.zf.weights == row.zf &&
      std::equal(w.begin(), w.begin() + static_cast<long>(nx), row.ambient.begin())) {
    std::vector<std::pair<int, int>> a, b;
    for (std::size_t k = 0; k < deg.size(); ++k) {
      a.emplace_back(w[nx + k], deg[k]);
      b.emplace_back(row.ambient[nx + k], row.degrees[k]);
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    c.up_to_orbit_order = a == b;
    if (c.up_to_orbit_order) c.detail = "orbit coordinates listed in a different order";
  }
  if (!c.up_to_orbit_order) c.detail = "mismatch";
  return c;
}

}  // namespace crg
