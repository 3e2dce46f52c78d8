#include <gtest/gtest.h>

#include "support.hpp"

using namespace crg;
using crg::test::q;

namespace {

MultiPoly var(int i) { return MultiPoly::variable(4, i); }

// Independent oracle: P expanded back in the f's against target^e.
bool relation_expands_to_zero(const RelationResult& r, const MultiPoly& target, const std::vector<MultiPoly>& fs) {
  MultiPoly rhs(4);
  for (std::size_t m = 0; m < r.monomials.size(); ++m) {
    MultiPoly t = MultiPoly::constant(4, r.coefficients[m]);
    for (std::size_t i = 0; i < fs.size(); ++i)
      if (r.monomials[m][i]) t = t * fs[i].pow(r.monomials[m][i]);
    rhs += t;
  }
  return target.pow(r.exponent) == rhs;
}

}  // namespace

TEST(InvariantBasis, SmallDimensions) {
  EXPECT_EQ(test::context("G(1,1,5)").basis(2).basis.size(), 1u);
  EXPECT_EQ(test::context("G29").basis(4).basis.size(), 1u);
  for (const auto& name : {"G28", "G31", "G(3,3,4)"}) {
    const auto b = test::context(name).basis(0);
    ASSERT_EQ(b.basis.size(), 1u);
    EXPECT_EQ(b.basis[0].total_degree(), 0);
  }
}

TEST(InvariantBasis, BasisIsFixedByGenerators) {
  const auto& g = test::group("G30");
  for (const auto& f : test::context("G30").basis(20).basis)
    for (const auto& s : g.generators()) EXPECT_EQ(poly_act(s, f), f);
}

TEST(InvariantBasis, DimensionMatchesMolienForAllGroups) {
  for (const auto& name : table_group_names()) {
    const auto& ctx = test::context(name);
    for (int d = 0; d <= 20; ++d) {
      const auto b = ctx.basis(d);
      ASSERT_EQ(static_cast<long>(b.basis.size()), ctx.molien_coefficient(d)) << name << " d=" << d;
    }
  }
}

TEST(InvariantBasis, DegreeCapIsABudget) {
  InvariantContext ctx(test::group("G28"), InvariantOptions{10, kDefaultSeed, 5});
  EXPECT_THROW(ctx.basis(12), BudgetExceeded);
}

TEST(Reynolds, FixesInvariantsAndKillsOddDegrees) {
  const auto& g = test::group("G(2,1,4)");
  const MultiPoly f = test::context("G(2,1,4)").basis(4).basis.front();
  EXPECT_EQ(reynolds(g, f), f);
  EXPECT_TRUE(reynolds(g, var(0)).is_zero());
}

TEST(Reynolds, QuarticPowerLandsInTheInvariants) {
  const auto& g = test::group("G(2,2,4)");
  const MultiPoly r = reynolds(g, var(0).pow(4));
  ASSERT_FALSE(r.is_zero());
  // oracle: r must be a combination of the degree-4 basis; solve for it
  const auto basis = test::context("G(2,2,4)").basis(4).basis;
  std::vector<Exponent> mons;
  for (const auto& b : basis)
    for (const auto& [e, c] : b.terms()) mons.push_back(e);
  for (const auto& [e, c] : r.terms()) mons.push_back(e);
  std::sort(mons.begin(), mons.end());
  mons.erase(std::unique(mons.begin(), mons.end()), mons.end());
  CMatrix a(mons.size(), basis.size() + 1);
  for (std::size_t i = 0; i < mons.size(); ++i) {
    for (std::size_t k = 0; k < basis.size(); ++k) a(i, k) = basis[k].coeff(mons[i]);
    a(i, basis.size()) = r.coeff(mons[i]);
  }
  EXPECT_EQ(a.rank(), basis.size());
}

TEST(Reynolds, IsIdempotent) {
  Rng rng(31);
  const auto& g = test::group("G(2,2,4)");
  for (int trial = 0; trial < 100; ++trial) {
    const MultiPoly f = test::random_poly(rng, 4, static_cast<int>(rng.uniform(1, 4)), 3);
    const MultiPoly r = reynolds(g, f);
    ASSERT_EQ(reynolds(g, r), r);
  }
}

TEST(Fundamental, SymmetricGroupPowerSums) {
  const auto fs = fundamental_system(test::context("G(1,1,5)"), {2, 3, 4, 5}, fundamental_override("G(1,1,5)"));
  EXPECT_EQ(fs.degrees, (std::vector<int>{2, 3, 4, 5}));
  EXPECT_EQ(fs.source, "override");
  EXPECT_FALSE(fs.jacobian_at_witness.is_zero());
}

TEST(Fundamental, ImprimitiveOverride) {
  // (sigma_1[2e], sigma_1[4e], sigma_1[6e], sigma_4) at e = 2
  const auto supplied = fundamental_override("G(4,4,4)");
  ASSERT_TRUE(supplied);
  EXPECT_EQ((*supplied)[0], power_sum(4, 4));
  EXPECT_EQ((*supplied)[3], product_power(4, 1));
  const auto fs = fundamental_system(test::context("G(4,4,4)"), test::spec("G(4,4,4)").ref.degrees, supplied);
  EXPECT_FALSE(fs.jacobian_at_witness.is_zero());
}

TEST(Fundamental, G31Degrees) {
  const auto fs = fundamental_system(test::context("G31"), {8, 12, 20, 24});
  EXPECT_EQ(fs.degrees, (std::vector<int>{8, 12, 20, 24}));
  for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(fs.polys[k].total_degree(), fs.degrees[k]);
  const auto jac = jacobian_at(fs.polys, fs.witness_point).det();
  EXPECT_FALSE(jac.is_zero());
}

TEST(Discriminant, DegreesAndTransformation) {
  const auto d31 = discriminant_forms(test::group("G31"));
  EXPECT_EQ(d31.j.degree(), 60);
  EXPECT_TRUE(d31.transformation_ok);
  const auto d28 = discriminant_forms(test::group("G28"));
  ASSERT_EQ(d28.orbit_forms.size(), 2u);
  EXPECT_EQ(d28.orbit_forms[0].degree(), 12);
  EXPECT_EQ(d28.orbit_forms[1].degree(), 12);
  EXPECT_EQ(d28.j.degree(), 24);
}

TEST(Discriminant, GeneratorsActByTheDeterminantInverse) {
  // direct expansion, independent of the factor-wise check
  for (const auto& name : {"G(2,2,4)", "G28", "G(2,1,4)"}) {
    const auto& g = test::group(name);
    const MultiPoly j = discriminant_forms(g).j.expand();
    for (std::size_t k = 0; k < g.generator_count(); ++k) {
      const auto w = g.generator_element(k);
      EXPECT_EQ(poly_act(g.element(w), j), j.scaled(g.det(w).inverse().value())) << name;
    }
  }
}

TEST(Discriminant, OrbitFormsPermuteConsistently) {
  const auto& g = test::group("G28");
  const auto d = discriminant_forms(g);
  for (std::size_t o = 0; o < d.orbit_forms.size(); ++o) {
    const MultiPoly jo = d.orbit_forms[o].expand();
    for (std::size_t k = 0; k < g.generator_count(); ++k) {
      const MultiPoly img = poly_act(g.element(g.generator_element(k)), jo);
      EXPECT_EQ(img, jo.scaled(d.orbit_characters[o][k].value()));
    }
  }
}

TEST(Relation, SymmetricDiscriminant) {
  // J_1 = prod (x_i - x_j); J_1^2 in sigma_1, sigma_1[2], sigma_1[3], sigma_4
  ProductForm j1;
  for (int i = 0; i < 4; ++i)
    for (int k = i + 1; k < 4; ++k) {
      std::vector<Cyclotomic> f(4, q(0));
      f[static_cast<std::size_t>(i)] = 1;
      f[static_cast<std::size_t>(k)] = -1;
      j1.factors.push_back(f);
    }
  const std::vector<MultiPoly> sys{power_sum(4, 1), power_sum(4, 2), power_sum(4, 3), product_power(4, 1)};
  RelationTarget t;
  t.product = j1;
  const auto r = express_in_invariants(t, 2, sys, {1, 2, 3, 4});
  EXPECT_EQ(r.weighted_degree, 12);
  EXPECT_EQ(r.verified_by, "symbolic");
  EXPECT_TRUE(relation_expands_to_zero(r, j1.expand(), sys));
}

TEST(Relation, JOfD4NeedsTheSquare) {
  const auto& g = test::group("G(2,2,4)");
  const auto spec = test::spec("G(2,2,4)");
  const auto fs = fundamental_system(test::context("G(2,2,4)"), spec.ref.degrees, fundamental_override(spec.name));
  RelationTarget t;
  t.product = discriminant_forms(g).j;
  EXPECT_THROW(express_in_invariants(t, 1, fs.polys, fs.degrees), Error);  // J itself is not invariant
  const auto r = express_in_invariants(t, 2, fs.polys, fs.degrees);
  EXPECT_EQ(r.monomials.size(), 57u);
  EXPECT_TRUE(relation_expands_to_zero(r, t.product->expand(), fs.polys));
}

TEST(Relation, InvariantTargetWithExponentOne) {
  const auto spec = test::spec("G(2,2,4)");
  const auto fs = fundamental_system(test::context("G(2,2,4)"), spec.ref.degrees, fundamental_override(spec.name));
  RelationTarget t;
  // homogeneous of degree d0 * d3 whatever order the degrees come in
  t.poly = fs.polys[3].pow(fs.degrees[0]) + fs.polys[0].pow(fs.degrees[3]).scaled(Cyclotomic(q(2, 3)));
  const auto r = express_in_invariants(t, 1, fs.polys, fs.degrees);
  EXPECT_TRUE(relation_expands_to_zero(r, *t.poly, fs.polys));
}

TEST(Relation, G28OrbitFormsRandomOracle) {
  const auto& g = test::group("G28");
  const auto fs = fundamental_system(test::context("G28"), {2, 6, 8, 12});
  const auto d = discriminant_forms(g);
  Rng rng(32);
  for (const auto& jo : d.orbit_forms) {
    RelationTarget t;
    t.product = jo;
    const auto r = express_in_invariants(t, 2, fs.polys, fs.degrees);
    EXPECT_EQ(r.weighted_degree, 24);
    // oracle: 100 random integer points, evaluated without expanding J
    const MultiPoly p = r.as_polynomial();
    for (int k = 0; k < 100; ++k) {
      const auto pt = rng.point(4, 1000);
      std::vector<Cyclotomic> vals;
      for (const auto& f : fs.polys) vals.push_back(f.eval(pt));
      ASSERT_EQ(jo.eval(pt).pow(2), p.eval(vals));
    }
  }
}
