#pragma once

// Truncated power series and the Molien series of a finite matrix group.

#include <string>
#include <vector>

#include "crg/matrix.hpp"

namespace crg {

struct PowerSeries {
  std::vector<Rational> coeffs;  // coeffs[k] is the coefficient of t^k

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
  bool all_integral() const {
    for (const auto& c : coeffs)
      if (c.get_den() != 1) return false;
    return true;
  }
  friend bool operator==(const PowerSeries& a, const PowerSeries& b) { return a.coeffs == b.coeffs; }
};

/// Expansion of prod_i 1/(1 - t^{d_i}) up to t^n.
inline PowerSeries degree_product_series(const std::vector<int>& degrees, int n) {
  std::vector<Rational> c(static_cast<std::size_t>(n) + 1);
  c[0] = 1;
  for (int d : degrees) {
    if (d <= 0) throw Error("degrees must be positive");
    for (int k = d; k <= n; ++k) c[static_cast<std::size_t>(k)] += c[static_cast<std::size_t>(k - d)];
  }
  return {c};
}

/// Series of 1/q(t) to order n, where q has nonzero constant term.
inline std::vector<Cyclotomic> invert_series(const std::vector<Cyclotomic>& q, int n) {
  if (q.empty() || q[0].is_zero()) throw Error("series inversion needs a unit constant term");
  const Cyclotomic inv0 = q[0].inverse();
  std::vector<Cyclotomic> r(static_cast<std::size_t>(n) + 1, Cyclotomic(0));
  r[0] = inv0;
  for (int k = 1; k <= n; ++k) {
    Cyclotomic s(0);
    for (int j = 1; j <= k && j < static_cast<int>(q.size()); ++j)
      if (!q[static_cast<std::size_t>(j)].is_zero()) s += q[static_cast<std::size_t>(j)] * r[static_cast<std::size_t>(k - j)];
    r[static_cast<std::size_t>(k)] = -s * inv0;
  }
  return r;
}

/// (1/|G|) sum_g 1/det(1 - t g), given the characteristic polynomials
/// det(tI - g) (low degree first) of the elements with multiplicities.
inline PowerSeries molien_from_charpolys(const std::vector<std::pair<std::vector<Cyclotomic>, long>>& classes, int n) {
  std::vector<Cyclotomic> acc(static_cast<std::size_t>(n) + 1, Cyclotomic(0));
  long total = 0;
  for (const auto& [cp, count] : classes) {
    // det(1 - t g) = t^dim * chi(1/t): reverse the coefficient list.
    std::vector<Cyclotomic> q(cp.rbegin(), cp.rend());
    const auto series = invert_series(q, n);
    for (int k = 0; k <= n; ++k) acc[static_cast<std::size_t>(k)] += series[static_cast<std::size_t>(k)] * Cyclotomic(count);
    total += count;
  }
  if (total == 0) throw Error("Molien series of an empty element list");
  PowerSeries out;
  for (const auto& c : acc) {
    if (!c.is_rational()) throw Error("Molien coefficient is not rational");
    out.coeffs.push_back(c.rational_part() / total);
  }
  return out;
}

/// Molien series from an explicit element list (which must form a group).
inline PowerSeries molien_series(const std::vector<CMatrix>& elements, int n) {
  std::vector<std::pair<std::vector<Cyclotomic>, long>> classes;
  for (const auto& g : elements) {
    auto cp = g.charpoly();
    bool found = false;
    for (auto& [c, cnt] : classes)
      if (c == cp) {
        ++cnt;
        found = true;
        break;
      }
    if (!found) classes.emplace_back(std::move(cp), 1);
  }
  return molien_from_charpolys(classes, n);
}

}  // namespace crg
