#include <gtest/gtest.h>

#include <set>

#include "family.hpp"
#include "unitreg/unitreg.hpp"

using namespace unitreg;
using unitreg::testing::codes;
using unitreg::testing::ring;

namespace {
std::vector<std::uint64_t> carrier(const CornerRing& c) {
  std::vector<std::uint64_t> out;
  for (Element x : c.elements()) out.push_back(x.code);
  return out;
}
}  // namespace

TEST(Idempotent, RejectsNonIdempotent) {
  auto z = make_zmod(6);
  EXPECT_THROW(make_idempotent(z, Element{2}), std::invalid_argument);
  EXPECT_THROW(make_idempotent(z, Element{6}), std::out_of_range);
  auto e = make_idempotent(z, Element{3});
  EXPECT_EQ(e.f, Element{4});
}

TEST(Corner, Z6) {
  auto z = make_zmod(6);
  auto e = make_idempotent(z, Element{3});
  auto ce = corner_ring(z, e);
  EXPECT_EQ(carrier(ce), (std::vector<std::uint64_t>{0, 3}));
  EXPECT_EQ(ce.one(), Element{3});
  EXPECT_EQ(carrier(complement_corner(z, e)), (std::vector<std::uint64_t>{0, 2, 4}));
  EXPECT_EQ(codes(ce.units().units()), (std::vector<std::uint64_t>{3}));
}

TEST(Corner, TrivialIdempotents) {
  for (const auto& r : unitreg::testing::curated()) {
    auto c0 = corner_ring(r, make_idempotent(r, r.zero()));
    EXPECT_EQ(c0.size(), 1u);
    auto c1 = corner_ring(r, make_idempotent(r, r.one()));
    EXPECT_EQ(c1.size(), r.size());
  }
}

TEST(Corner, MatrixUnitCornerIsBaseRing) {
  auto m = ring("M2(Z3)");
  auto e = make_idempotent(m, m.encode({1, 0, 0, 0}));
  auto ce = corner_ring(m, e);
  EXPECT_EQ(ce.size(), 3u);
  EXPECT_EQ(ce.units().size(), 2u);
  EXPECT_TRUE(check_ring_axioms(ce).all_passed());
}

TEST(Corner, CornersAreClosedWithIdentityE) {
  for (const auto& r : unitreg::testing::curated()) {
    for (const auto& e : idempotents(r)) {
      auto ce = corner_ring(r, e);
      for (Element x : ce.elements()) {
        ASSERT_EQ(r.mul(e.e, x), x);
        ASSERT_EQ(r.mul(x, e.e), x);
        ASSERT_TRUE(ce.contains(r.neg(x)));
        for (Element y : ce.elements()) {
          ASSERT_TRUE(ce.contains(r.add(x, y)));
          ASSERT_TRUE(ce.contains(r.mul(x, y)));
        }
      }
    }
  }
}

TEST(Peirce, MatrixExample) {
  auto m = ring("M2(Z2)");
  auto e = make_idempotent(m, Element{8});
  auto p = peirce_decompose(m, e, Element{14});
  EXPECT_EQ(p, (PeirceParts{Element{8}, Element{4}, Element{2}, Element{0}}));
}

TEST(Peirce, SumAndPartsSweep) {
  for (const auto& r : unitreg::testing::curated()) {
    for (const auto& e : idempotents(r)) {
      for (Element x : r.elements()) {
        auto p = peirce_decompose(r, e, x);
        ASSERT_EQ(peirce_sum(r, p), x) << r.describe();
        // each part lives in its block
        ASSERT_EQ(mul3(r, e.e, p.ee, e.e), p.ee);
        ASSERT_EQ(mul3(r, e.e, p.ef, e.f), p.ef);
        ASSERT_EQ(mul3(r, e.f, p.fe, e.e), p.fe);
        ASSERT_EQ(mul3(r, e.f, p.ff, e.f), p.ff);
      }
    }
  }
}

TEST(Peirce, DecompositionIsUnique) {
  // The blocks meet only in 0, so the four-part split of x is unique.
  for (const char* spec : {"M2(Z2)", "T2(Z3)", "Z12"}) {
    auto r = ring(spec);
    for (const auto& e : idempotents(r)) {
      std::set<PeirceParts> seen;
      for (Element x : r.elements()) seen.insert(peirce_decompose(r, e, x));
      EXPECT_EQ(seen.size(), r.size());
    }
  }
}

TEST(Peirce, CrossCornerProductsVanish) {
  // a in eRe, b in fRf: ab = ba = 0, e(a + b) = a, (a + b)f = b.
  for (const auto& r : unitreg::testing::curated()) {
    for (const auto& e : idempotents(r)) {
      auto ce = corner_ring(r, e);
      auto cf = complement_corner(r, e);
      for (Element a : ce.elements())
        for (Element b : cf.elements()) {
          ASSERT_EQ(r.mul(a, b), r.zero());
          ASSERT_EQ(r.mul(b, a), r.zero());
          ASSERT_EQ(r.mul(e.e, r.add(a, b)), a);
          ASSERT_EQ(r.mul(r.add(a, b), e.f), b);
        }
    }
  }
}

TEST(Embedding, Z6IsFullProduct) {
  auto z = make_zmod(6);
  auto rec = product_subring_embed(z, make_idempotent(z, Element{3}));
  EXPECT_TRUE(rec.ok());
  std::set<std::uint64_t> image;
  for (const auto& m : rec.map) image.insert(m.image.code);
  EXPECT_EQ(image, (std::set<std::uint64_t>{0, 1, 2, 3, 4, 5}));
}

TEST(Embedding, MatrixDiagonal) {
  auto m = ring("M2(Z2)");
  auto rec = product_subring_embed(m, make_idempotent(m, Element{8}));
  EXPECT_TRUE(rec.ok());
  std::set<std::uint64_t> image;
  for (const auto& e : rec.map) image.insert(e.image.code);
  // diagonal matrices
  EXPECT_EQ(image, (std::set<std::uint64_t>{0, 1, 8, 9}));

  auto whole = product_subring_embed(m, make_idempotent(m, Element{9}));
  std::set<std::uint64_t> all;
  for (const auto& e : whole.map) all.insert(e.image.code);
  EXPECT_EQ(all.size(), 16u);
  EXPECT_TRUE(whole.ok());
}

TEST(Embedding, EveryIdempotentInFamily) {
  for (const char* spec : {"Z12", "Z2xZ4", "T2(Z2)", "T2(Z3)", "M2(Z2)"}) {
    auto r = ring(spec);
    for (const auto& e : idempotents(r)) EXPECT_TRUE(product_subring_embed(r, e).ok()) << spec;
  }
}
