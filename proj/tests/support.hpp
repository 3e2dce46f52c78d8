#pragma once

#include <map>
#include <memory>
#include <string>

#include "crg/catalog.hpp"
#include "crg/invariants.hpp"

namespace crg::test {

// Groups are expensive to enumerate; each test binary builds each one once.
inline const ReflectionGroup& group(const std::string& name) {
  static std::map<std::string, std::unique_ptr<ReflectionGroup>> cache;
  auto& slot = cache[name];
  if (!slot) slot = std::make_unique<ReflectionGroup>(build_group(builtin_group(name)));
  return *slot;
}

inline const GroupSpec& spec(const std::string& name) {
  static std::map<std::string, GroupSpec> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, builtin_group(name)).first;
  return it->second;
}

inline const InvariantContext& context(const std::string& name) {
  static std::map<std::string, std::unique_ptr<InvariantContext>> cache;
  auto& slot = cache[name];
  if (!slot) slot = std::make_unique<InvariantContext>(group(name));
  return *slot;
}

inline Cyclotomic q(long n, long d = 1) { return Cyclotomic(make_rational(n, d)); }

inline Cyclotomic random_cyclotomic(Rng& rng, int n) {
  std::vector<Rational> c;
  for (int k = 0; k < n; ++k) c.push_back(rng.rational(7, 4));
  return Cyclotomic::from_power_coeffs(n, c);
}

inline MultiPoly random_poly(Rng& rng, int nvars, int degree, int terms, int conductor = 1) {
  MultiPoly p(nvars);
  const auto mons = monomials_of_degree(nvars, degree);
  for (int k = 0; k < terms; ++k)
    p.add_term(mons[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(mons.size()) - 1))],
               random_cyclotomic(rng, conductor));
  return p;
}

}  // namespace crg::test
