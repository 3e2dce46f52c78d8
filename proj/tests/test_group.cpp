#include <gtest/gtest.h>

#include "crg/springer.hpp"
#include "support.hpp"

using namespace crg;
using crg::test::q;

TEST(Group, OrdersOfTheTableGroups) {
  EXPECT_EQ(test::group("G(2,2,4)").order(), 192u);
  EXPECT_EQ(test::group("G31").order(), 46080u);
  EXPECT_EQ(test::group("G(4,2,4)").order(), 3072u);  // 24 e^4 / 2 at e = 2, with m = 4
}

TEST(Group, SingleReflectionInRankTwo) {
  const auto g = ReflectionGroup::generate("C2", {CMatrix::diagonal({q(-1), q(1)})});
  EXPECT_EQ(g.order(), 2u);
  EXPECT_EQ(g.reflections().size(), 1u);
  ASSERT_EQ(g.hyperplanes().size(), 1u);
  EXPECT_EQ(g.hyperplanes()[0].order, 2);
}

TEST(Group, TrivialGroupHasNoReflections) {
  const auto g = ReflectionGroup::generate("1", {CMatrix::identity(4)});
  EXPECT_EQ(g.order(), 1u);
  EXPECT_TRUE(g.reflections().empty());
  EXPECT_TRUE(g.hyperplanes().empty());
  ReferenceData ref{{1, 1, 1, 1}, {0, 0, 0, 0}, 1, 1};
  for (const auto& c : verify_numerology(g, ref).checks)
    if (c.name.find("reflections = sum(d_i - 1)") != std::string::npos) EXPECT_TRUE(c.pass);
}

TEST(Group, ClosureCapIsABudget) {
  EXPECT_THROW(build_group(builtin_group("G31"), 1000), BudgetExceeded);
}

TEST(Group, ReflectionsAndHyperplanes) {
  const auto& b4 = test::group("G(2,1,4)");
  EXPECT_EQ(b4.reflections().size(), 16u);
  EXPECT_EQ(b4.hyperplanes().size(), 16u);
  for (const auto& h : b4.hyperplanes()) EXPECT_EQ(h.order, 2);
  EXPECT_EQ(test::group("G28").reflections().size(), 24u);
  EXPECT_EQ(test::group("G28").hyperplanes().size(), 24u);
  for (const auto& name : table_group_names()) {
    const auto& g = test::group(name);
    std::size_t sum = 0;
    for (const auto& h : g.hyperplanes()) sum += static_cast<std::size_t>(h.order - 1);
    EXPECT_EQ(sum, g.reflections().size()) << name;
    for (auto r : g.reflections()) EXPECT_EQ((g.element(r) - CMatrix::identity(4)).rank(), 1u) << name;
  }
}

TEST(Group, HyperplaneOrbits) {
  const auto sizes = [](const ReflectionGroup& g) {
    std::vector<std::size_t> s;
    for (const auto& o : g.hyperplane_orbits()) s.push_back(o.size());
    std::sort(s.begin(), s.end());
    return s;
  };
  EXPECT_EQ(sizes(test::group("G28")), (std::vector<std::size_t>{12, 12}));
  EXPECT_EQ(sizes(test::group("G30")), (std::vector<std::size_t>{60}));
  // coordinate hyperplanes and the difference hyperplanes x_i = +-x_j
  EXPECT_EQ(sizes(test::group("G(2,1,4)")), (std::vector<std::size_t>{4, 12}));
  const auto& b4 = test::group("G(2,1,4)");
  for (const auto& o : b4.hyperplane_orbits()) {
    std::size_t nonzero = 0;
    for (const auto& c : b4.hyperplanes()[o.front()].form) nonzero += !c.is_zero();
    EXPECT_EQ(nonzero, o.size() == 4 ? 1u : 2u);
  }
}

TEST(Group, DerivedSlAndCenter) {
  EXPECT_EQ(test::group("G30").derived_subgroup().order, 7200u);
  EXPECT_EQ(test::group("G29").derived_subgroup().order, 3840u);
  EXPECT_EQ(test::group("G(2,1,4)").sl_subgroup().order, 192u);
  EXPECT_EQ(test::group("G(2,1,4)").center().order, 2u);
  EXPECT_EQ(test::group("G31").sl_subgroup().order, 23040u);
  EXPECT_EQ(test::group("G31").center().order, 4u);
  EXPECT_EQ(test::group("G(3,3,4)").center().order, 1u);
  const auto abelian = ReflectionGroup::generate("C4", {CMatrix::diagonal({Cyclotomic::zeta(4), q(1)})});
  EXPECT_EQ(abelian.derived_subgroup().order, 1u);
}

TEST(Group, DeterminantImageHasOrderTwo) {
  for (const auto& name : table_group_names()) {
    const auto& g = test::group(name);
    EXPECT_EQ(g.det_image_order(), 2) << name;
    Rng rng(21);
    for (int k = 0; k < 20; ++k) {
      const auto a = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(g.order()) - 1));
      const auto b = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(g.order()) - 1));
      EXPECT_EQ(g.det(g.multiply(a, b)), g.det(a) * g.det(b));
    }
  }
}

TEST(Group, ClosureUnderRandomProducts) {
  Rng rng(22);
  for (const auto& name : {"G28", "G30", "G(4,4,4)"}) {
    const auto& g = test::group(name);
    for (int k = 0; k < 100; ++k) {
      const auto a = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(g.order()) - 1));
      const auto b = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(g.order()) - 1));
      const auto prod = g.find(g.element(a) * g.element(b));
      ASSERT_TRUE(prod.has_value()) << name;
      ASSERT_EQ(*prod, g.multiply(a, b));
    }
  }
}

TEST(Group, StabilizerOfAGenericPointIsTrivial) {
  const auto& g = test::group("G28");
  const auto st = g.line_stabilizer({q(1), q(3), q(7), q(19)});
  EXPECT_EQ(st.pointwise.order, 1u);
  EXPECT_EQ(g.pointwise_stabilizer({{q(1), q(3), q(7), q(19)}}).order, 1u);
}

TEST(Group, StabilizerOfTheRegularLineIsCyclic) {
  const auto& g = test::group("G(2,1,4)");
  const auto s = regular_eigenvector_element(g, test::spec("G(2,1,4)").ref, 8);
  ASSERT_EQ(s.ve_basis.size(), 1u);
  const auto st = g.line_stabilizer(s.ve_basis[0]);
  EXPECT_EQ(st.stabilizer.order, 8u);
  EXPECT_TRUE(st.stabilizer.contains(*s.w_index));
  EXPECT_EQ(g.element_order(*s.w_index), 8);
  EXPECT_EQ(st.image_order, 8);
}

TEST(Group, ParabolicOfTwoHyperplanesFromDistinctOrbits) {
  const auto& g = test::group("G28");
  const auto& o = g.hyperplane_orbits();
  const std::size_t h1 = o[0][0];
  for (std::size_t h2 : o[1]) {
    const auto line = CMatrix::from_rows({g.hyperplanes()[h1].form, g.hyperplanes()[h2].form}).kernel();
    ASSERT_EQ(line.size(), 2u);
    const auto par = g.parabolic(line);
    const auto brute = g.pointwise_stabilizer(line);
    ASSERT_EQ(par.order, brute.order);
    EXPECT_TRUE(par.contains(g.hyperplanes()[h1].reflections.front()));
    EXPECT_TRUE(par.contains(g.hyperplanes()[h2].reflections.front()));
  }
}

TEST(Group, SteinbergOnRandomIntersections) {
  // W(X) generated by reflections equals the pointwise stabilizer of X
  Rng rng(23);
  for (const auto& name : {"G(2,1,4)", "G28", "G(4,2,4)"}) {
    const auto& g = test::group(name);
    const auto n = static_cast<long>(g.hyperplanes().size());
    for (int k = 0; k < 34; ++k) {
      const auto a = static_cast<std::size_t>(rng.uniform(0, n - 1)), b = static_cast<std::size_t>(rng.uniform(0, n - 1));
      if (a == b) continue;
      const auto x = CMatrix::from_rows({g.hyperplanes()[a].form, g.hyperplanes()[b].form}).kernel();
      ASSERT_EQ(g.parabolic(x).order, g.pointwise_stabilizer(x).order) << name;
    }
  }
}

TEST(Group, ProjectiveOrbits) {
  const auto& d4 = test::group("G(2,2,4)");
  const auto orbit = d4.projective_orbit({q(0), q(0), Cyclotomic::zeta(4), q(1)});
  EXPECT_EQ(orbit.points.size(), 12u);
  EXPECT_EQ(orbit.points.size() * orbit.stabilizer_order, d4.order());
  const auto trivial = ReflectionGroup::generate("1", {CMatrix::identity(4)});
  EXPECT_EQ(trivial.projective_orbit({q(1), q(2), q(3), q(4)}).points.size(), 1u);
  const auto& g30 = test::group("G30");
  const auto s = regular_eigenvector_element(g30, test::spec("G30").ref, 30);
  EXPECT_EQ(g30.projective_orbit(s.ve_basis[0]).points.size(), g30.order() / 30);
}

TEST(Group, OrbitStabilizerOnRandomPoints) {
  Rng rng(24);
  int checked = 0;
  for (const auto& name : {"G(2,2,4)", "G(2,1,4)", "G28", "G(3,3,4)"}) {
    const auto& g = test::group(name);
    for (int k = 0; k < 25; ++k) {
      std::vector<Cyclotomic> v;
      for (int i = 0; i < 4; ++i) v.emplace_back(rng.uniform(-1, 1));
      if (std::all_of(v.begin(), v.end(), [](const Cyclotomic& c) { return c.is_zero(); })) v[0] = 1;
      const auto o = g.projective_orbit(v);
      ASSERT_EQ(o.points.size() * o.stabilizer_order, g.order());
      ASSERT_EQ(g.line_stabilizer(v).stabilizer.order, o.stabilizer_order);
      ++checked;
    }
  }
  EXPECT_EQ(checked, 100);
}

TEST(Numerology, G28) {
  const auto rep = verify_numerology(test::group("G28"), test::spec("G28").ref);
  EXPECT_TRUE(rep.all_pass());
  EXPECT_GE(rep.checks.size(), 8u);
}

TEST(Numerology, AllTableGroups) {
  for (const auto& name : table_group_names()) {
    const auto rep = verify_numerology(test::group(name), test::spec(name).ref);
    for (const auto& c : rep.checks) EXPECT_TRUE(c.pass) << name << ": " << c.name << " " << c.expected << " vs " << c.actual;
  }
}

TEST(Numerology, PerturbedDegreeIsNamed) {
  auto ref = test::spec("G30").ref;
  ref.degrees[1] = 14;
  const auto rep = verify_numerology(test::group("G30"), ref);
  EXPECT_FALSE(rep.all_pass());
  bool order_failed = false;
  for (const auto& c : rep.checks)
    if (!c.pass && c.name == "order = product of degrees") order_failed = true;
  EXPECT_TRUE(order_failed);
}
