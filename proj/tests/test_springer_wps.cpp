#include <gtest/gtest.h>

#include <numeric>

#include "crg/springer.hpp"
#include "crg/wps.hpp"
#include "support.hpp"

using namespace crg;
using crg::test::q;

namespace {

SpringerDatum datum(const std::string& name, int e) {
  return regular_eigenvector_element(test::group(name), test::spec(name).ref, e);
}

bool check_named(const SpringerReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return c.pass;
  ADD_FAILURE() << "no check named " << name;
  return false;
}

}  // namespace

TEST(Springer, DeltaData) {
  const auto& b4 = test::spec("G(2,1,4)").ref;
  EXPECT_EQ(delta_data(b4.degrees, b4.codegrees, 8), std::make_pair(1, 1));
  const auto& h4 = test::spec("G30").ref;
  EXPECT_EQ(delta_data(h4.degrees, h4.codegrees, 20), std::make_pair(1, 1));
  for (const auto& name : table_group_names()) {
    const auto& r = test::spec(name).ref;
    EXPECT_EQ(delta_data(r.degrees, r.codegrees, 1), std::make_pair(4, 4));
  }
}

TEST(Springer, RegularElements) {
  const auto s8 = datum("G(2,1,4)", 8);
  ASSERT_TRUE(s8.w_e);
  EXPECT_EQ(s8.ve_basis.size(), 1u);
  EXPECT_EQ(eigenspace(*s8.w_e, Cyclotomic::zeta(8)).size(), 1u);
  const auto s12 = datum("G28", 12);
  EXPECT_EQ(s12.delta, 1);
  EXPECT_TRUE(s12.w_e);
  const auto s7 = datum("G30", 7);
  EXPECT_EQ(s7.delta, 0);
  EXPECT_FALSE(s7.w_e);
}

TEST(Springer, EigenvaluesOfW8) {
  const auto s = datum("G(2,1,4)", 8);
  const auto rep = springer_verify(test::group("G(2,1,4)"), test::spec("G(2,1,4)").ref, s);
  EXPECT_TRUE(rep.all_pass());
  // (zeta^-5, zeta^-1, zeta^-3, zeta) directly from the characteristic polynomial
  std::vector<Cyclotomic> expected;
  for (long k : {-5, -1, -3, 1}) expected.push_back(Cyclotomic::zeta(8, k));
  for (const auto& z : expected) EXPECT_EQ(eigenspace(*s.w_e, z).size(), 1u) << z;
  EXPECT_EQ(s.w_e->det(), Cyclotomic(1));
}

TEST(Springer, DeterminantOfW12) {
  const auto s = datum("G28", 12);
  EXPECT_EQ(s.w_e->det(), Cyclotomic::zeta(12, -24));
  EXPECT_EQ(s.w_e->det(), Cyclotomic(1));
}

TEST(Springer, StabilizerOfV30IsCyclic) {
  const auto s = datum("G30", 30);
  const auto rep = springer_verify(test::group("G30"), test::spec("G30").ref, s);
  EXPECT_TRUE(check_named(rep, "line stabilizer cyclic of order e, generated by w_e"));
  EXPECT_EQ(test::group("G30").line_stabilizer(s.ve_basis[0]).stabilizer.order, 30u);
}

TEST(Springer, BruteForceMaximumMatchesDelta) {
  for (const auto& name : table_group_names()) {
    const auto& g = test::group(name);
    const auto& ref = test::spec(name).ref;
    std::set<int> es;
    for (int d : ref.degrees)
      for (int e = 1; e <= d; ++e)
        if (d % e == 0) es.insert(e);
    for (int e : es) {
      const auto [delta, delta_star] = delta_data(ref.degrees, ref.codegrees, e);
      EXPECT_EQ(max_eigenspace(g, e).first, delta) << name << " e=" << e;
      EXPECT_GE(delta_star, delta) << name << " e=" << e;
    }
  }
}

TEST(Springer, DeltaStarDominatesUpToSixty) {
  for (const auto& name : table_group_names()) {
    const auto& ref = test::spec(name).ref;
    for (int e = 1; e <= 60; ++e) {
      const auto [delta, delta_star] = delta_data(ref.degrees, ref.codegrees, e);
      EXPECT_GE(delta_star, delta) << name << " e=" << e;
    }
  }
}

TEST(Springer, InvariantsOutsideDVanishOnTheEigenspace) {
  for (const auto& [name, e] : std::vector<std::pair<std::string, int>>{{"G28", 8}, {"G28", 12}, {"G(2,1,4)", 8}}) {
    const auto& spec = test::spec(name);
    const auto fs = fundamental_system(test::context(name), spec.ref.degrees, fundamental_override(spec.name));
    const auto s = datum(name, e);
    for (std::size_t k = 0; k < fs.polys.size(); ++k)
      if (fs.degrees[k] % e != 0) {
        EXPECT_TRUE(fs.polys[k].eval(s.ve_basis[0]).is_zero()) << name << " " << k;
      }
    EXPECT_TRUE(springer_verify(test::group(name), spec.ref, s, fs.polys).all_pass());
  }
}

TEST(Tangent, ForcedVanishingAndGradientCrossCheck) {
  const auto& spec = test::spec("G(2,1,4)");
  const auto fs = fundamental_system(test::context("G(2,1,4)"), spec.ref.degrees, fundamental_override(spec.name));
  const auto s = datum("G(2,1,4)", 8);
  const auto r = tangent_analysis(s, spec.ref, fs.polys[2]);  // degree 6, 8 does not divide it
  EXPECT_TRUE(r.consistent);
  EXPECT_EQ(r.tangent_eigenvalues.size(), 3u);
  EXPECT_THROW(tangent_analysis(s, spec.ref, fs.polys[3]), Error);  // degree 8
}

TEST(Tangent, G30AtTwenty) {
  const auto& spec = test::spec("G30");
  const auto s = datum("G30", 20);
  const MultiPoly f = test::context("G30").basis(12).basis.front();
  const auto r = tangent_analysis(s, spec.ref, f);
  EXPECT_TRUE(r.consistent);
  // independent gradient evaluation at the eigenvector
  bool vanishes = true;
  for (int i = 0; i < 4; ++i) vanishes = vanishes && f.derivative(i).eval(s.ve_basis[0]).is_zero();
  EXPECT_EQ(vanishes, r.gradient_vanishes);
}

TEST(Weights, KnownNormalizations) {
  const auto a = normalize_weights({8, 12, 24, 60}, {120});
  EXPECT_EQ(a.weights, (std::vector<int>{2, 1, 2, 5}));
  EXPECT_EQ(a.degrees, (std::vector<int>{10}));
  const auto b = normalize_weights({2, 8, 12, 12, 12}, {24, 24});
  EXPECT_EQ(b.weights, (std::vector<int>{1, 2, 3, 3, 3}));
  EXPECT_EQ(b.degrees, (std::vector<int>{6, 6}));
  const auto c = normalize_weights({1, 1, 1, 1}, {4});
  EXPECT_EQ(c.weights, (std::vector<int>{1, 1, 1, 1}));
  EXPECT_TRUE(c.steps.empty());
}

TEST(Weights, IdempotentWithExactBalanceLaw) {
  // Balance B = sum(w) - sum(deg): a gcd step by g gives B/g; a reduction by q
  // fixing l_j gives B' with q B' = B + (q - 1) l_j.
  Rng rng(41);
  int cases = 0;
  while (cases < 150) {
    const auto n = static_cast<std::size_t>(rng.uniform(4, 5));
    std::vector<int> w;
    const int common = static_cast<int>(rng.uniform(1, 3));
    for (std::size_t i = 0; i < n; ++i) w.push_back(common * static_cast<int>(rng.uniform(1, 12)));
    const int lcm_all = std::accumulate(w.begin(), w.end(), 1, [](int a, int b) { return std::lcm(a, b); });
    std::vector<int> deg(n - 3, lcm_all * static_cast<int>(rng.uniform(1, 2)));
    const auto r = normalize_weights(w, deg);
    const auto again = normalize_weights(r.weights, r.degrees);
    ASSERT_EQ(again.weights, r.weights);
    ASSERT_EQ(again.degrees, r.degrees);
    ASSERT_TRUE(again.steps.empty());
    std::vector<int> cw = w, cd = deg;
    for (const auto& s : r.steps) {
      const long before = std::accumulate(cw.begin(), cw.end(), 0L) - std::accumulate(cd.begin(), cd.end(), 0L);
      const int lj = s.kind == "delorme" ? cw[static_cast<std::size_t>(s.position)] : 0;
      for (std::size_t i = 0; i < cw.size(); ++i)
        if (s.kind == "gcd" || static_cast<int>(i) != s.position) cw[i] /= s.factor;
      for (auto& d : cd) d /= s.factor;
      const long after = std::accumulate(cw.begin(), cw.end(), 0L) - std::accumulate(cd.begin(), cd.end(), 0L);
      if (s.kind == "gcd") {
        ASSERT_EQ(after * s.factor, before);
      } else {
        ASSERT_EQ(after * s.factor, before + static_cast<long>(s.factor - 1) * lj);
      }
    }
    ASSERT_EQ(cw, r.weights);
    ASSERT_EQ(cd, r.degrees);
    ++cases;
  }
}

TEST(Weights, WellFormedness) {
  const auto g30 = wellformed_checks({1, 2, 3, 6}, {12});
  EXPECT_TRUE(g30.all_evaluated_pass());
  EXPECT_EQ(g30.verdict("H4"), true);
  const auto g28 = wellformed_checks({1, 2, 3, 3, 3}, {6, 6});
  EXPECT_EQ(g28.verdict("H3"), true);
  EXPECT_EQ(g28.verdict("H1"), true);
  EXPECT_EQ(wellformed_checks({2, 2, 2, 2}, {3}).verdict("H1"), false);
}

TEST(K3, Catalog) {
  EXPECT_TRUE(in_k3("G31", 20));
  EXPECT_TRUE(in_k3("G(2,1,4)", 4));
  EXPECT_TRUE(in_k3("G(2,1,4)", 6));
  EXPECT_FALSE(in_k3("G(3,3,4)", 4));
  EXPECT_TRUE(in_k3("G(6,6,4)", 12));
  EXPECT_TRUE(in_k3("G(8,8,4)", 8));
  EXPECT_EQ(k3_catalog().size(), 12u);
}

TEST(Quotient, ReferenceRows) {
  const auto g31 = quotient_presentation(test::group("G31"), test::spec("G31").ref, 20, Gamma::SpecialLinear);
  EXPECT_EQ(g31.ambient.weights, (std::vector<int>{2, 1, 2, 5}));
  EXPECT_EQ(g31.ambient.degrees, (std::vector<int>{10}));
  const auto a4 = quotient_presentation(test::group("G(1,1,5)"), test::spec("G(1,1,5)").ref, 4, Gamma::Derived);
  EXPECT_EQ(a4.ambient.weights, (std::vector<int>{2, 3, 5, 10}));
  EXPECT_EQ(a4.ambient.degrees, (std::vector<int>{20}));
  const auto g28 = quotient_presentation(test::group("G28"), test::spec("G28").ref, 6, Gamma::Derived);
  EXPECT_EQ(g28.ambient.weights, (std::vector<int>{1, 2, 3, 3, 3}));
  EXPECT_EQ(g28.ambient.degrees, (std::vector<int>{6, 6}));
  EXPECT_EQ(g28.zf.weights, (std::vector<int>{1, 2, 3}));
  EXPECT_THROW(quotient_presentation(test::group("G(3,3,4)"), test::spec("G(3,3,4)").ref, 4, Gamma::Derived), Error);
}

TEST(Quotient, EveryK3RowIsWellFormed) {
  for (const auto& row : quotient_reference_rows()) {
    const Gamma gamma = row.gamma == "derived" ? Gamma::Derived : Gamma::SpecialLinear;
    const auto s = quotient_presentation(test::group(row.group), test::spec(row.group).ref, row.d, gamma);
    EXPECT_TRUE(wellformed_checks(s.ambient.weights, s.ambient.degrees).all_evaluated_pass()) << row.group;
    EXPECT_EQ(static_cast<int>(s.ambient.weights.size() - s.ambient.degrees.size()), 3) << row.group;
  }
}

TEST(Quotient, ImprimitiveFamiliesCollapse) {
  // (G(2e,2e,4), 4e) and (G(2e,2e,4), 6e) agree at e = 1 and e = 3 after normalization
  for (int k : {4, 6}) {
    const auto a = quotient_presentation(test::group("G(2,2,4)"), test::spec("G(2,2,4)").ref, k, Gamma::Derived);
    const auto b = quotient_presentation(test::group("G(6,6,4)"), test::spec("G(6,6,4)").ref, 3 * k, Gamma::Derived);
    EXPECT_EQ(a.ambient.weights, b.ambient.weights) << k;
    EXPECT_EQ(a.ambient.degrees, b.ambient.degrees) << k;
    EXPECT_EQ(a.zf.weights, b.zf.weights) << k;
  }
  const auto c = quotient_presentation(test::group("G(4,4,4)"), test::spec("G(4,4,4)").ref, 4, Gamma::Derived);
  const auto d = quotient_presentation(test::group("G(8,8,4)"), test::spec("G(8,8,4)").ref, 8, Gamma::Derived);
  EXPECT_EQ(c.ambient.weights, d.ambient.weights);
  EXPECT_EQ(c.ambient.degrees, d.ambient.degrees);
}

TEST(Quotient, ExplicitEquationsAreWeightedHomogeneous) {
  const auto& spec = test::spec("G28");
  const auto fs = fundamental_system(test::context("G28"), spec.ref.degrees, fundamental_override(spec.name));
  ExplicitInput in{fs.polys, fs.degrees, 1, {}};
  const auto s = quotient_presentation(test::group("G28"), spec.ref, 6, Gamma::Derived, in);
  ASSERT_EQ(s.ambient.equations.size(), 2u);
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_EQ(s.ambient.equations[k].weighted_degree(s.ambient.weights), s.ambient.degrees[k]);
    for (const auto& [e, c] : s.ambient.equations[k].terms())
      EXPECT_EQ(exponent_weighted_degree(e, s.ambient.weights), s.ambient.degrees[k]);
  }
}
