#include <gtest/gtest.h>

#include <map>

#include "family.hpp"
#include "unitreg/unitreg.hpp"

using namespace unitreg;
using unitreg::testing::ring;

namespace {

struct SweepCounts {
  std::size_t idempotents = 0;
  std::size_t verdicts = 0;
  std::size_t cond1_true = 0;
  std::size_t mismatches = 0;
  std::size_t cond4prime_true = 0;
};

SweepCounts sweep(const FiniteRing& r) {
  SweepCounts c;
  for (const auto& e : idempotents(r)) {
    ++c.idempotents;
    for (const auto& v : verify_equivalences(r, e)) {
      ++c.verdicts;
      if (v.holds(Condition::C1)) ++c.cond1_true;
      if (v.holds(Condition::C4Prime)) ++c.cond4prime_true;
      if (!v.consistent) ++c.mismatches;
    }
  }
  return c;
}

}  // namespace

// Counts frozen from tests/oracles/brute_force.py.
TEST(Equivalence, FamilySweepMatchesOracle) {
  const std::map<std::string, std::array<std::size_t, 3>> expected = {
      {"Z4", {2, 5, 4}},         {"Z6", {4, 12, 12}},      {"Z8", {2, 9, 6}},
      {"Z12", {4, 20, 16}},      {"Z2xZ4", {4, 15, 12}},   {"T2(Z2)", {6, 17, 16}},
      {"T2(Z3)", {8, 46, 44}},   {"M2(Z2)", {8, 29, 29}},  {"M2(Z3)", {14, 118, 118}},
      {"M2(Z2)xZ2", {16, 87, 87}},
  };
  for (const auto& [spec, want] : expected) {
    auto c = sweep(ring(spec));
    EXPECT_EQ(c.idempotents, want[0]) << spec;
    EXPECT_EQ(c.verdicts, want[1]) << spec;
    EXPECT_EQ(c.cond1_true, want[2]) << spec;
    EXPECT_EQ(c.mismatches, 0u) << spec;
    EXPECT_EQ(c.cond4prime_true, c.cond1_true) << spec;
  }
}

TEST(Equivalence, ChainAndReverify) {
  for (const auto& r : unitreg::testing::curated()) {
    for (const auto& e : idempotents(r)) {
      const CornerContext ctx(r, e);
      for (const auto& v : verify_equivalences(ctx)) {
        ASSERT_TRUE(chain_violations(v).empty()) << r.describe();
        ASSERT_TRUE(reverify(ctx, v)) << r.describe();
      }
    }
  }
}

TEST(Equivalence, Z4NilpotentFailsEverything) {
  auto z = make_zmod(4);
  auto v = verify_equivalences(z, make_idempotent(z, Element{1}));
  ASSERT_EQ(v.size(), 4u);
  const auto& two = v[2];
  EXPECT_EQ(two.a, Element{2});
  for (Condition c : kAllConditions) EXPECT_FALSE(two.holds(c)) << label(c);
  EXPECT_TRUE(two.consistent);
}

TEST(Equivalence, Z6Witnesses) {
  auto z = make_zmod(6);
  const CornerContext ctx(z, make_idempotent(z, Element{3}));
  EXPECT_EQ(ctx.units_f(), (std::vector<Element>{Element{2}, Element{4}}));
  auto c2 = check_condition(ctx, Element{3}, Condition::C2);
  ASSERT_TRUE(c2.holds);
  ASSERT_EQ(c2.witnesses.size(), 1u);
  EXPECT_EQ(c2.witnesses[0].b, Element{4});
  auto c3 = check_condition(ctx, Element{3}, Condition::C3);
  EXPECT_TRUE(c3.holds);
  EXPECT_EQ(c3.witnesses.size(), 2u);  // one per unit of fRf
}

TEST(Equivalence, UniversalFailureNamesB) {
  // In Z4 with e = 1, f = 0 and fRf = {0}; a = 2 fails (3) at b = 0.
  auto z = make_zmod(4);
  auto r3 = condition_check(z, make_idempotent(z, Element{1}), Element{2}, Condition::C3);
  EXPECT_FALSE(r3.holds);
  EXPECT_EQ(r3.failing_b, Element{0});
  EXPECT_TRUE(r3.witnesses.empty());
}

TEST(Equivalence, ElementOutsideCornerRejected) {
  auto z = make_zmod(6);
  EXPECT_THROW(condition_check(z, make_idempotent(z, Element{3}), Element{2}, Condition::C1),
               std::invalid_argument);
}

TEST(Equivalence, LabelsAndKeys) {
  EXPECT_STREQ(label(Condition::C3Prime), "(3')");
  EXPECT_STREQ(label(Condition::C4Prime), "(4')");
  EXPECT_STREQ(key(Condition::C3Prime), "cond3prime");
  EXPECT_STREQ(key(Condition::C5), "cond5");
}

TEST(Equivalence, TamperedReportIsDetected) {
  auto z = make_zmod(6);
  const CornerContext ctx(z, make_idempotent(z, Element{3}));
  auto v = verdict(ctx, Element{3});
  ASSERT_TRUE(v.consistent);
  v.get(Condition::C2).holds = false;
  v.refresh_consistency();
  EXPECT_FALSE(v.consistent);
  EXPECT_FALSE(chain_violations(v).empty());

  auto w = verdict(ctx, Element{3});
  w.get(Condition::C2).witnesses[0].u = Element{2};
  EXPECT_FALSE(reverify(ctx, w));
}

TEST(Extraction, Z6Example) {
  auto z = make_zmod(6);
  auto w = corner_witness_from_global(z, make_idempotent(z, Element{3}), Element{3}, Element{4},
                                      Element{1});
  EXPECT_EQ(w.u_prime, Element{3});
  EXPECT_EQ(w.v_prime, Element{3});
  EXPECT_TRUE(w.ok());
  EXPECT_TRUE(w.proof.all());
}

TEST(Extraction, M2Z4Example) {
  auto m = ring("M2(Z4)");
  // e = [[1,0],[0,0]], a = [[3,0],[0,0]], b = [[0,0],[0,1]]
  const auto idem = make_idempotent(m, Element{64});
  const CornerContext ctx(m, idem);
  const Element a{192}, b{1};
  ASSERT_EQ(m.encode({3, 0, 0, 0}), a);
  std::optional<Element> first;
  std::size_t count = 0;
  for (const auto& p : m.units().pairs())
    if (fixes(m, m.add(a, b), p.unit)) {
      if (!first) first = p.unit;
      ++count;
    }
  ASSERT_EQ(first, Element{193});
  EXPECT_EQ(count, 1u);
  auto w = corner_witness_from_global(ctx, a, b, Element{193});
  EXPECT_TRUE(w.ok());
  EXPECT_TRUE(w.proof.all());
  EXPECT_EQ(w.u_prime, Element{192});
  EXPECT_EQ(w.v_prime, Element{192});
}

TEST(Extraction, SweepFullHypotheses) {
  for (const char* spec : {"Z6", "Z8", "T2(Z2)", "M2(Z2)"}) {
    auto s = sweep_witness_extraction(ring(spec), false);
    EXPECT_GT(s.instances, 0u) << spec;
    EXPECT_EQ(s.non_invertible_instances, 0u) << spec;
    EXPECT_EQ(s.partner_not_inverse, 0u) << spec;
    EXPECT_TRUE(s.ok()) << spec;
  }
}

TEST(Extraction, SweepWeakenedHypotheses) {
  for (const char* spec : {"Z6", "M2(Z2)"}) {
    auto s = sweep_witness_extraction(ring(spec), true);
    EXPECT_GT(s.partner_not_inverse, 0u) << spec;
    EXPECT_TRUE(s.ok()) << spec;
  }
}

TEST(Extraction, WeakenedCountsMatchOracle) {
  // Z6 and M2(Z2) together, frozen from an independent Python enumeration.
  auto a = sweep_witness_extraction(ring("Z6"), true);
  auto b = sweep_witness_extraction(ring("M2(Z2)"), true);
  EXPECT_EQ(a.instances + b.instances, 244u);
  EXPECT_EQ(a.partner_not_inverse + b.partner_not_inverse, 142u);
}

TEST(Extraction, WeakenedPartnerStillForcesUnitHere) {
  // With b invertible in fRf, (uv - 1)e = 0 and bub = b already make u a unit
  // in these rings; only v is freed from being u^-1.
  for (const char* spec : {"Z6", "M2(Z2)", "T2(Z2)"}) {
    auto s = sweep_witness_extraction(ring(spec), true);
    EXPECT_EQ(s.non_invertible_instances, 0u) << spec;
  }
}

TEST(Extraction, NonInversePartnerExample) {
  // Z6, e = 3: v = 5 is not 1^-1, yet (1*5 - 1)*3 = 12 = 0 and 3*(5 - 1) = 0.
  auto z = make_zmod(6);
  auto w = corner_witness_from_global(z, make_idempotent(z, Element{3}), Element{3}, Element{4},
                                      Element{1}, Element{5});
  EXPECT_TRUE(w.ok());
  EXPECT_EQ(w.v_prime, Element{3});
}

TEST(Extraction, PreconditionsAreListed) {
  auto z = make_zmod(6);
  const CornerContext ctx(z, make_idempotent(z, Element{3}));
  try {
    corner_witness_from_global(ctx, Element{2}, Element{3}, Element{1});
    FAIL();
  } catch (const PreconditionError& e) {
    const auto& v = e.violations();
    EXPECT_NE(std::ranges::find(v, Precondition::AOutsideCorner), v.end());
    EXPECT_NE(std::ranges::find(v, Precondition::BOutsideComplement), v.end());
  }
  // b = 0 is a zero divisor of fRf on both sides
  try {
    corner_witness_from_global(ctx, Element{3}, Element{0}, Element{1});
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_EQ(e.violations(), (std::vector<Precondition>{Precondition::BLeftZeroDivisor,
                                                          Precondition::BRightZeroDivisor}));
  }
  // u = 0 does not fix a + b and has no inverse
  try {
    corner_witness_from_global(ctx, Element{3}, Element{4}, Element{0});
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_EQ(e.violations(),
              (std::vector<Precondition>{Precondition::SumNotFixed, Precondition::MissingPartner}));
  }
  // explicit partner that fails both partner identities
  try {
    corner_witness_from_global(ctx, Element{3}, Element{4}, Element{1}, Element{0});
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_EQ(e.violations(), (std::vector<Precondition>{Precondition::RightPartnerFails,
                                                          Precondition::LeftPartnerFails}));
  }
  EXPECT_THROW(corner_witness_from_global(ctx, Element{3}, Element{4}, Element{6}),
               std::out_of_range);
}

TEST(Extraction, OneSided) {
  auto m = ring("M2(Z2)");
  const CornerContext ctx(m, make_idempotent(m, Element{8}));
  const Element a{8}, b{1};
  for (Side side : {Side::Right, Side::Left}) {
    auto w = corner_one_sided_witness(ctx, a, b, m.one(), side);
    EXPECT_TRUE(w.guaranteed_holds);
    EXPECT_EQ(w.witness.u_prime, Element{8});
  }
  // a right zero divisor b is allowed for the left-sided version only if it
  // is not a left zero divisor; b = 0 is both
  EXPECT_THROW(corner_one_sided_witness(ctx, a, Element{0}, m.one(), Side::Right),
               PreconditionError);
}

TEST(ProductInclusion, Family) {
  for (const auto& r : unitreg::testing::curated())
    for (const auto& e : idempotents(r)) {
      auto rep = verify_ur_product_inclusion(CornerContext(r, e));
      EXPECT_TRUE(rep.ok()) << r.describe();
    }
}

TEST(Corollary, UnitRegularRingsHaveUnitRegularCorners) {
  for (const char* spec : {"M2(Z2)", "M2(Z3)", "Z2xZ3"}) {
    auto rep = verify_star_and_corollary(ring(spec));
    EXPECT_TRUE(rep.ring_unit_regular) << spec;
    EXPECT_TRUE(rep.ok()) << spec;
    for (const auto& en : rep.entries) {
      EXPECT_TRUE(en.corner_unit_regular) << spec;
      EXPECT_EQ(en.corollary_route_ok, true) << spec;
    }
  }
}

TEST(Corollary, StarHoldsWithoutUnitRegularity) {
  auto rep = verify_star_and_corollary(ring("T2(Z3)"));
  EXPECT_FALSE(rep.ring_unit_regular);
  EXPECT_TRUE(rep.ok());
  for (const auto& en : rep.entries) EXPECT_FALSE(en.corollary_route_ok.has_value());
}

TEST(Counterexample, FiniteScaffold) {
  auto z = make_zmod(4);
  auto rep = build_m2_counterexample(z, Element{3}, Element{3});
  EXPECT_TRUE(rep.scaffold_ok());
  EXPECT_EQ(rep.a_in_corner_ur, true);
  ASSERT_TRUE(rep.corner_unit.has_value());
  EXPECT_EQ(rep.ring, "M2(Z4)");

  auto zero = build_m2_counterexample(z, Element{0}, Element{0});
  EXPECT_TRUE(zero.scaffold_ok());
  EXPECT_EQ(zero.a_in_corner_ur, true);

  EXPECT_THROW(build_m2_counterexample(z, Element{2}, Element{1}), std::invalid_argument);
}

TEST(Counterexample, EverySolutionOfStsInZ4) {
  auto z = make_zmod(4);
  for (Element s : z.elements())
    for (Element t : z.elements()) {
      if (mul3(z, s, t, s) != s) continue;
      auto rep = build_m2_counterexample(z, s, t);
      EXPECT_TRUE(rep.scaffold_ok());
      EXPECT_EQ(rep.a_in_corner_ur, true);
    }
}
