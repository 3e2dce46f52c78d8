#pragma once

// Generator models and reference data for the rank-4 reflection groups
// generated by reflections of order 2.
//
// Models:
//   G(m,p,4)  monomial matrices: transpositions, the reflection
//             [[0, z^-1], [z, 0]] when p > 1, diag(z^p, 1, 1, 1) when p < m.
//   G(1,1,5)  S5 on the sum-zero hyperplane, basis e_i - e_5.
//   G28       W(F4): roots e2-e3, e3-e4, e4, (e1-e2-e3-e4)/2.
//   G29       G(2,1,4) plus the reflection in (1,1,i,i).
//   G30       W(H4): the standard 600-cell simple roots over Q(sqrt 5).
//   G31       G(4,2,4) plus the reflection in (1,1,1,1).

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "crg/group.hpp"

namespace crg {

struct GroupSpec {
  std::string name;
  int conductor = 1;
  std::vector<CMatrix> generators;
  ReferenceData ref;
  std::optional<long> expected_central_quotient_order;
  std::vector<std::string> aliases;
};

/// Order-2 reflection in the root r (unitary form): I - 2 r r^* / (r^* r).
inline CMatrix unitary_reflection(const std::vector<Cyclotomic>& r) {
  const std::size_t n = r.size();
  Cyclotomic norm(0);
  for (const auto& c : r) norm += c * c.conj();
  if (norm.is_zero()) throw Error("reflection root has zero norm");
  CMatrix s = CMatrix::identity(n);
  const Cyclotomic f = Cyclotomic(-2) / norm;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s(i, j) += f * r[i] * r[j].conj();
  return s;
}

inline CMatrix permutation_matrix(std::size_t n, std::size_t a, std::size_t b) {
  CMatrix m = CMatrix::identity(n);
  m(a, a) = 0;
  m(b, b) = 0;
  m(a, b) = 1;
  m(b, a) = 1;
  return m;
}

inline std::vector<CMatrix> imprimitive_generators(int m, int p, std::size_t n = 4) {
  if (m < 1 || p < 1 || m % p != 0) throw Error("G(m,p,n) needs p dividing m");
  std::vector<CMatrix> gens;
  if (p < m) {
    CMatrix t = CMatrix::identity(n);
    t(0, 0) = Cyclotomic::zeta(m, p);
    gens.push_back(t);
  }
  if (p > 1) {
    CMatrix s = CMatrix::identity(n);
    s(0, 0) = 0;
    s(1, 1) = 0;
    s(0, 1) = Cyclotomic::zeta(m, -1);
    s(1, 0) = Cyclotomic::zeta(m, 1);
    gens.push_back(s);
  }
  for (std::size_t i = 0; i + 1 < n; ++i) gens.push_back(permutation_matrix(n, i, i + 1));
  return gens;
}

inline GroupSpec imprimitive_spec(int m, int p) {
  GroupSpec s;
  s.name = "G(" + std::to_string(m) + "," + std::to_string(p) + ",4)";
  s.conductor = detail::canonical_conductor(m);
  s.generators = imprimitive_generators(m, p);
  s.ref.degrees = {m, 2 * m, 3 * m, 4 * m / p};
  s.ref.codegrees = {0, m, 2 * m, p == m ? 3 * m - 4 : 3 * m};
  const long order = 24L * m * m * m * m / p;
  s.ref.expected_order = order;
  long z = 0;
  for (int d : s.ref.degrees) z = std::gcd(z, static_cast<long>(d));
  s.expected_central_quotient_order = order / z;
  // Abelianization has order 2 for G(e,e,4) and 4 for G(2e,e,4).
  if (p == m) s.ref.expected_derived_order = order / 2;
  else if (m == 2 * p) s.ref.expected_derived_order = order / 4;
  if (m == 2 && p == 1) s.aliases = {"B4", "W(B4)"};
  if (m == 2 && p == 2) s.aliases = {"D4", "W(D4)"};
  return s;
}

inline GroupSpec symmetric5_spec() {
  GroupSpec s;
  s.name = "G(1,1,5)";
  s.aliases = {"W(A4)", "S5", "A4"};
  s.conductor = 1;
  for (std::size_t i = 0; i < 3; ++i) s.generators.push_back(permutation_matrix(4, i, i + 1));
  CMatrix t(4, 4);
  for (std::size_t i = 0; i < 3; ++i) {
    t(i, i) = 1;
    t(3, i) = -1;
  }
  t(3, 3) = -1;
  s.generators.push_back(t);
  s.ref.degrees = {2, 3, 4, 5};
  s.ref.codegrees = {0, 1, 2, 3};
  s.ref.expected_order = 120;
  s.ref.expected_derived_order = 60;
  s.expected_central_quotient_order = 120;
  return s;
}

inline GroupSpec g28_spec() {
  GroupSpec s;
  s.name = "G28";
  s.aliases = {"F4", "W(F4)"};
  s.conductor = 1;
  const Rational h = make_rational(1, 2);
  const std::vector<std::vector<Cyclotomic>> roots = {
      {0, 1, -1, 0}, {0, 0, 1, -1}, {0, 0, 0, 1}, {Cyclotomic(h), Cyclotomic(-h), Cyclotomic(-h), Cyclotomic(-h)}};
  for (const auto& r : roots) s.generators.push_back(unitary_reflection(r));
  s.ref.degrees = {2, 6, 8, 12};
  s.ref.codegrees = {0, 4, 6, 10};
  s.ref.expected_order = 1152;
  s.ref.expected_derived_order = 288;
  s.expected_central_quotient_order = 576;
  return s;
}

inline GroupSpec g29_spec() {
  GroupSpec s;
  s.name = "G29";
  s.conductor = 4;
  s.generators = imprimitive_generators(2, 1);
  const Cyclotomic i = Cyclotomic::zeta(4);
  s.generators.push_back(unitary_reflection({1, 1, i, i}));
  s.ref.degrees = {4, 8, 12, 20};
  s.ref.codegrees = {0, 8, 12, 16};
  s.ref.expected_order = 7680;
  s.ref.expected_derived_order = 3840;
  s.expected_central_quotient_order = 1920;
  return s;
}

inline GroupSpec g30_spec() {
  GroupSpec s;
  s.name = "G30";
  s.aliases = {"H4", "W(H4)"};
  s.conductor = 5;
  const Cyclotomic tau = Cyclotomic(1) + Cyclotomic::zeta(5) + Cyclotomic::zeta(5, 4);  // golden ratio
  const Cyclotomic sigma = tau - Cyclotomic(1);                                        // 1 / tau
  const Cyclotomic h(make_rational(1, 2));
  const std::vector<std::vector<Cyclotomic>> roots = {
      {-1, 0, 0, 0},
      {h * tau, -h, -h * sigma, 0},
      {0, h, h * tau, -h * sigma},
      {0, h * sigma, -h, h * tau},
  };
  for (const auto& r : roots) s.generators.push_back(unitary_reflection(r));
  s.ref.degrees = {2, 12, 20, 30};
  s.ref.codegrees = {0, 10, 18, 28};
  s.ref.expected_order = 14400;
  s.ref.expected_derived_order = 7200;
  s.expected_central_quotient_order = 7200;
  return s;
}

inline GroupSpec g31_spec() {
  GroupSpec s;
  s.name = "G31";
  s.conductor = 4;
  s.generators = imprimitive_generators(4, 2);
  s.generators.push_back(unitary_reflection({1, 1, 1, 1}));
  s.ref.degrees = {8, 12, 20, 24};
  s.ref.codegrees = {0, 12, 16, 28};
  s.ref.expected_order = 46080;
  s.ref.expected_derived_order = 23040;
  s.expected_central_quotient_order = 11520;
  return s;
}

/// The ten groups checked against the reference table, in table order.
inline std::vector<std::string> table_group_names() {
  return {"G(1,1,5)", "G(2,2,4)", "G(3,3,4)", "G(4,4,4)", "G(2,1,4)", "G(4,2,4)", "G28", "G29", "G30", "G31"};
}

inline std::string canonical_group_name(std::string name) {
  name.erase(std::remove_if(name.begin(), name.end(), [](unsigned char c) { return std::isspace(c); }), name.end());
  std::string upper = name;
  std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
  static const std::map<std::string, std::string> aliases = {
      {"W(A4)", "G(1,1,5)"}, {"S5", "G(1,1,5)"},  {"A4", "G(1,1,5)"},  {"B4", "G(2,1,4)"},  {"W(B4)", "G(2,1,4)"},
      {"D4", "G(2,2,4)"},    {"W(D4)", "G(2,2,4)"}, {"F4", "G28"},       {"W(F4)", "G28"},    {"H4", "G30"},
      {"W(H4)", "G30"},      {"G_28", "G28"},     {"G_29", "G29"},     {"G_30", "G30"},     {"G_31", "G31"}};
  if (auto it = aliases.find(upper); it != aliases.end()) return it->second;
  return upper;
}

/// Builtin model for a name (aliases and any G(m,p,4) accepted).
inline GroupSpec builtin_group(const std::string& raw) {
  const std::string name = canonical_group_name(raw);
  if (name == "G(1,1,5)") return symmetric5_spec();
  if (name == "G28") return g28_spec();
  if (name == "G29") return g29_spec();
  if (name == "G30") return g30_spec();
  if (name == "G31") return g31_spec();
  static const std::regex imprimitive(R"(G\((\d+),(\d+),4\))");
  std::smatch m;
  if (std::regex_match(name, m, imprimitive)) {
    const int a = std::stoi(m[1]), b = std::stoi(m[2]);
    if (a >= 2 && b >= 1 && a % b == 0 && a <= 60) return imprimitive_spec(a, b);
  }
  throw Error("unknown group '" + raw + "'");
}

inline ReflectionGroup build_group(const GroupSpec& spec, std::size_t closure_cap = kDefaultClosureCap) {
  return ReflectionGroup::generate(spec.name, spec.generators, closure_cap, spec.conductor);
}

}  // namespace crg
