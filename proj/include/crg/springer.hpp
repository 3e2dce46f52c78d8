#pragma once

// Eigenspaces of group elements for roots of unity (Springer theory):
// delta(e), regular eigenvectors, eigenvalue and stabilizer checks.

#include <algorithm>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "crg/invariants.hpp"

namespace crg {

struct SpringerDatum {
  int e = 1;
  int delta = 0;
  int delta_star = 0;
  int max_dimension = 0;  // brute-force max over the group of dim V(w, zeta_e)
  std::optional<std::size_t> w_index;
  std::optional<CMatrix> w_e;
  std::vector<std::vector<Cyclotomic>> ve_basis;
};

struct SpringerCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SpringerReport {
  std::string group;
  int e = 1;
  std::vector<SpringerCheck> checks;
  bool all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const SpringerCheck& c) { return c.pass; });
  }
};

/// (number of degrees divisible by e, number of codegrees divisible by e); 0 counts.
inline std::pair<int, int> delta_data(const std::vector<int>& degrees, const std::vector<int>& codegrees, int e) {
  if (e <= 0) throw Error("e must be positive");
  int d = 0, ds = 0;
  for (int x : degrees) d += (x % e == 0);
  for (int x : codegrees) ds += (x % e == 0);
  return {d, ds};
}

/// Maximal dim V(w, zeta_e) over all elements, and the first element attaining it.
inline std::pair<int, std::size_t> max_eigenspace(const ReflectionGroup& g, int e) {
  const auto z = RootOfUnity::make(1, e);
  int best = -1;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < g.order(); ++i) {
    const int m = g.eigenspace_dimension(i, z);
    if (m > best) {
      best = m;
      arg = i;
    }
  }
  return {best, arg};
}

/// Basis of ker(m - z I).
inline std::vector<std::vector<Cyclotomic>> eigenspace(const CMatrix& m, const Cyclotomic& z) {
  CMatrix a = m;
  for (std::size_t i = 0; i < a.rows(); ++i) a(i, i) -= z;
  return a.kernel();
}

inline SpringerDatum regular_eigenvector_element(const ReflectionGroup& g, const ReferenceData& ref, int e) {
  SpringerDatum s;
  s.e = e;
  std::tie(s.delta, s.delta_star) = delta_data(ref.degrees, ref.codegrees, e);
  const auto [best, arg] = max_eigenspace(g, e);
  s.max_dimension = best;
  if (best != s.delta)
    throw Error("maximal eigenspace dimension " + std::to_string(best) + " differs from delta(" + std::to_string(e) +
                ") = " + std::to_string(s.delta));
  if (s.delta == 0) return s;
  s.w_index = arg;
  s.w_e = g.element(arg);
  s.ve_basis = eigenspace(*s.w_e, Cyclotomic::zeta(e));
  if (static_cast<int>(s.ve_basis.size()) != s.delta) throw Error("eigenspace basis has the wrong dimension");
  return s;
}

/// Eigenvalue, determinant, stabilizer and vanishing checks for w_e.
inline SpringerReport springer_verify(const ReflectionGroup& g, const ReferenceData& ref, const SpringerDatum& s,
                                      const std::vector<MultiPoly>& fundamental = {}) {
  SpringerReport rep;
  rep.group = g.name();
  rep.e = s.e;
  auto add = [&](std::string name, bool pass, std::string detail) {
    rep.checks.push_back({std::move(name), pass, std::move(detail)});
  };
  add("max dim V(w,zeta_e) = delta", s.max_dimension == s.delta,
      std::to_string(s.max_dimension) + " vs " + std::to_string(s.delta));
  add("delta* >= delta", s.delta_star >= s.delta, std::to_string(s.delta_star) + " vs " + std::to_string(s.delta));
  if (!s.w_index) {
    add("regular element exists", false, "delta(e) = 0");
    return rep;
  }
  const std::size_t w = *s.w_index;
  const int e = s.e;
  if (s.delta == s.delta_star) {
    std::vector<RootOfUnity> expected;
    long sum = 0;
    for (int d : ref.degrees) {
      expected.push_back(RootOfUnity::make(1 - d, e));
      sum += d;
    }
    std::sort(expected.begin(), expected.end());
    auto got = g.spectral(w).eigenvalues;
    std::sort(got.begin(), got.end());
    std::string text;
    for (const auto& z : got) text += z.to_string() + " ";
    add("eigenvalues = (zeta_e^(1-d_k))", got == expected, text);
    const auto det_expected = RootOfUnity::make(static_cast<long>(g.dim()) - sum, e);
    add("det(w_e) = zeta_e^(n - sum d_k)", g.det(w) == det_expected, g.det(w).to_string());
  }
  if (s.delta == 1) {
    const auto ls = g.line_stabilizer(s.ve_basis[0]);
    const bool cyclic = ls.stabilizer.order == static_cast<std::size_t>(e) && ls.stabilizer.contains(w) &&
                        g.element_order(w) == e;
    add("line stabilizer cyclic of order e, generated by w_e", cyclic,
        "order " + std::to_string(ls.stabilizer.order) + ", ord(w_e) " + std::to_string(g.element_order(w)));
  }
  if (!fundamental.empty()) {
    bool ok = true;
    for (const auto& f : fundamental) {
      if (f.total_degree() % e == 0) continue;
      for (const auto& v : s.ve_basis)
        if (!f.eval(v).is_zero()) ok = false;
      if (s.ve_basis.size() > 1) {
        std::vector<Cyclotomic> sum(g.dim(), Cyclotomic(0));
        for (std::size_t k = 0; k < s.ve_basis.size(); ++k)
          for (std::size_t i = 0; i < g.dim(); ++i) sum[i] += s.ve_basis[k][i] * Cyclotomic(static_cast<long>(k + 1));
        if (!f.eval(sum).is_zero()) ok = false;
      }
    }
    add("f_k vanishes on V(e) when e does not divide d_k", ok, "");
  }
  return rep;
}

struct TangentReport {
  int e = 1;
  int degree = 0;
  std::vector<RootOfUnity> tangent_eigenvalues;    // on T_z P(V)
  bool b1_applies = false;                         // d differs from every d_k (k != k0) mod e
  bool gradient_vanishes = false;                  // direct check at v
  bool consistent = false;
  std::vector<RootOfUnity> surface_tangent_eigenvalues;  // when Z(f) is smooth at z
  std::string verdict;
};

/// Tangent-space eigenvalues at z = [V(e)] and the singularity criterion for Z(f).
inline TangentReport tangent_analysis(const SpringerDatum& s, const ReferenceData& ref, const MultiPoly& f) {
  if (s.delta != 1 || s.delta_star != 1) throw Error("tangent analysis needs delta(e) = delta*(e) = 1");
  const int e = s.e;
  TangentReport r;
  r.e = e;
  r.degree = f.total_degree();
  if (r.degree % e == 0) throw Error("precondition violated: e divides deg f");
  const auto& v = s.ve_basis.at(0);
  if (!f.eval(v).is_zero()) throw Error("f does not vanish on V(e)");
  std::size_t k0 = ref.degrees.size();
  for (std::size_t k = 0; k < ref.degrees.size(); ++k)
    if (ref.degrees[k] % e == 0) k0 = k;
  r.b1_applies = true;
  std::optional<std::size_t> k1;
  for (std::size_t k = 0; k < ref.degrees.size(); ++k) {
    if (k == k0) continue;
    r.tangent_eigenvalues.push_back(RootOfUnity::make(-ref.degrees[k], e));
    if (((r.degree - ref.degrees[k]) % e + e) % e == 0) {
      r.b1_applies = false;
      if (!k1) k1 = k;
    }
  }
  std::sort(r.tangent_eigenvalues.begin(), r.tangent_eigenvalues.end());
  r.gradient_vanishes = true;
  for (int i = 0; i < f.nvars(); ++i)
    if (!f.derivative(i).eval(v).is_zero()) r.gradient_vanishes = false;
  if (r.b1_applies) {
    r.consistent = r.gradient_vanishes;
    r.verdict = "singular at z";
  } else if (r.gradient_vanishes) {
    r.consistent = true;
    r.verdict = "singular at z (criterion not decisive)";
  } else {
    r.consistent = true;
    r.verdict = "smooth at z";
    for (std::size_t k = 0; k < ref.degrees.size(); ++k)
      if (k != k0 && k != *k1) r.surface_tangent_eigenvalues.push_back(RootOfUnity::make(-ref.degrees[k], e));
    std::sort(r.surface_tangent_eigenvalues.begin(), r.surface_tangent_eigenvalues.end());
  }
  return r;
}

}  // namespace crg
