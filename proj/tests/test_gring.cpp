#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace tambara;
using namespace tambara::testing;

namespace {

std::vector<GRingDescriptor> descriptors() {
  return {{2, 1, 0, gf(2, 2), FieldAut::trivial()},   {2, 1, 1, gf(2, 2), FieldAut::frobenius(1)},
          {2, 2, 1, gf(2, 2), FieldAut::frobenius(1)}, {2, 3, 1, gf(2, 4), FieldAut::frobenius(2)},
          {2, 3, 2, gf(2, 4), FieldAut::frobenius(1)}, {3, 2, 1, gf(3, 3), FieldAut::frobenius(1)},
          {2, 2, 0, ratfunc(2), FieldAut::trivial()},  {2, 2, 1, ratfunc(2), shift_t()},
          {3, 2, 1, ratfunc(3), shift_t()},            {2, 2, 1, gf(3, 2), FieldAut::frobenius(1)},
          {3, 3, 3, ratfunc(3), shift_t()}};
}

}  // namespace

TEST(GRing, SwapWithoutWrap) {
  const auto f = gf(2, 2);
  const GRingDescriptor d{2, 1, 0, f, FieldAut::trivial()};
  const FieldElem a = t_of(f), b = c_of(f, 1);
  EXPECT_EQ(act(d, 1, GRingElem{{a, b}}), (GRingElem{{b, a}}));
  EXPECT_EQ(act(d, 0, GRingElem{{a, b}}), (GRingElem{{a, b}}));
}

TEST(GRing, WrapAppliesOnSingleCoordinate) {
  const auto f = gf(2, 2);
  const GRingDescriptor d{2, 1, 1, f, FieldAut::frobenius(1)};
  const FieldElem w = t_of(f);
  EXPECT_EQ(act(d, 1, single(w)), single(w + c_of(f, 1)));
}

TEST(GRing, OrbitSumAndProductInGf4) {
  const auto f = gf(2, 2);
  const GRingDescriptor d{2, 1, 1, f, FieldAut::frobenius(1)};
  const GRingElem w = single(t_of(f));
  EXPECT_EQ(orbit_sum(d, 0, 1, w), single(c_of(f, 1)));
  EXPECT_EQ(orbit_product(d, 0, 1, w), single(c_of(f, 1)));
  EXPECT_EQ(orbit_sum(d, 1, 1, single(c_of(f, 1))), single(c_of(f, 1)));
  EXPECT_EQ(orbit_sum(d, 0, 0, w), w);
}

TEST(GRing, FixedByExamples) {
  const auto f = gf(2, 2);
  const GRingDescriptor swap{2, 1, 0, f, FieldAut::trivial()};
  const FieldElem a = t_of(f), b = c_of(f, 1);
  EXPECT_TRUE(fixed_by(swap, 0, GRingElem{{a, b}}));
  EXPECT_TRUE(fixed_by(swap, 1, GRingElem{{a, a}}));
  EXPECT_FALSE(fixed_by(swap, 1, GRingElem{{a, b}}));
  const GRingDescriptor wrap{2, 1, 1, f, FieldAut::frobenius(1)};
  EXPECT_FALSE(fixed_by(wrap, 1, single(a)));
  EXPECT_TRUE(fixed_by(wrap, 1, single(b)));
}

TEST(GRing, OrbitSumNeedsFixedInput) {
  const auto f = gf(2, 2);
  const GRingDescriptor swap{2, 2, 0, f, FieldAut::trivial()};
  const GRingElem v{{t_of(f), c_of(f, 1), c_of(f, 0), c_of(f, 0)}};
  EXPECT_THROW(orbit_sum(swap, 1, 2, v), PreconditionError);
  EXPECT_THROW(orbit_product(swap, 2, 1, v), UsageError);
}

TEST(GRing, StandardIdempotents) {
  const auto f = gf(2, 2);
  const GRingDescriptor d{2, 1, 0, f, FieldAut::trivial()};
  const auto idem = standard_idempotents(d);
  ASSERT_EQ(idem.size(), 2u);
  EXPECT_EQ(idem[0], (GRingElem{{c_of(f, 1), c_of(f, 0)}}));
  EXPECT_EQ(idem[1], (GRingElem{{c_of(f, 0), c_of(f, 1)}}));
  EXPECT_EQ(idem[0] + idem[1], gring_one(d));
  EXPECT_EQ(act(d, 1, idem[0]), idem[1]);
}

TEST(GRing, InvariantIdealFree) {
  for (const auto& d : descriptors()) EXPECT_TRUE(invariant_ideal_free(d));
  const GRingDescriptor two{2, 1, 0, gf(2, 2), FieldAut::trivial()};
  const std::vector<std::size_t> identity{0, 1};
  EXPECT_FALSE(invariant_ideal_free(two, identity));
  const GRingDescriptor c4{2, 2, 1, gf(2, 2), FieldAut::trivial()};
  EXPECT_TRUE(invariant_ideal_free(c4));
  EXPECT_EQ(coordinate_permutation(c4), (std::vector<std::size_t>{1, 0}));
}

TEST(GRing, DescriptorChecks) {
  EXPECT_THROW(check_descriptor({4, 1, 0, gf(2, 2), FieldAut::trivial()}), UsageError);
  EXPECT_THROW(check_descriptor({2, 1, 2, gf(2, 2), FieldAut::trivial()}), UsageError);
  EXPECT_THROW(check_descriptor({2, 1, 1, gf(2, 2), shift_t()}), UsageError);
  const GRingDescriptor d{2, 2, 1, gf(2, 2), FieldAut::trivial()};
  EXPECT_THROW(check_element(d, single(c_of(gf(2, 2), 1))), UsageError);
}

TEST(GRingProperty, ActionIsAGroupAction) {
  std::mt19937_64 rng(1);
  for (const auto& d : descriptors()) {
    const auto order = static_cast<std::int64_t>(d.group_order());
    for (int it = 0; it < 50; ++it) {
      const GRingElem v = random_gring(d, rng);
      const std::int64_t a = static_cast<std::int64_t>(rng() % 40) - 20, b = static_cast<std::int64_t>(rng() % 40);
      ASSERT_EQ(act(d, a, act(d, b, v)), act(d, a + b, v));
      ASSERT_EQ(act(d, order, v), v);
      ASSERT_EQ(act(d, b, v), oracle_act(d, static_cast<std::uint64_t>(b), v));
    }
  }
}

TEST(GRingProperty, OrbitSumsAreAdditiveAndFixed) {
  std::mt19937_64 rng(2);
  for (const auto& d : descriptors()) {
    for (unsigned j = 0; j <= d.n; ++j) {
      for (unsigned l = j; l <= d.n; ++l) {
        for (int it = 0; it < 10; ++it) {
          // Fixed inputs: orbit sums from the bottom are fixed by C_{p^j}.
          const GRingElem x = orbit_sum(d, 0, j, random_gring(d, rng));
          const GRingElem y = orbit_product(d, 0, j, random_gring(d, rng));
          const GRingElem s = orbit_sum(d, j, l, x + y);
          ASSERT_EQ(s, orbit_sum(d, j, l, x) + orbit_sum(d, j, l, y));
          ASSERT_EQ(orbit_product(d, j, l, x * y), orbit_product(d, j, l, x) * orbit_product(d, j, l, y));
          ASSERT_TRUE(fixed_by(d, l, s));
          ASSERT_TRUE(fixed_by(d, l, orbit_product(d, j, l, y)));
          if (ipow(d.p, l - j) <= 8) {
            ASSERT_EQ(s, oracle_orbit(d, j, l, x + y, false));
            ASSERT_EQ(orbit_product(d, j, l, y), oracle_orbit(d, j, l, y, true));
          }
        }
      }
    }
  }
}

TEST(GRingProperty, GeneratorPermutesIdempotentsTransitively) {
  for (const auto& d : descriptors()) {
    const auto idem = standard_idempotents(d);
    for (const auto& e : idem) {
      std::vector<bool> seen(idem.size(), false);
      GRingElem cur = e;
      for (std::size_t step = 0; step < idem.size(); ++step) {
        const auto it = std::find(idem.begin(), idem.end(), cur);
        ASSERT_NE(it, idem.end());
        const auto idx = static_cast<std::size_t>(it - idem.begin());
        ASSERT_FALSE(seen[idx]);
        seen[idx] = true;
        cur = act(d, 1, cur);
      }
      ASSERT_EQ(cur, e);
    }
    for (std::size_t a = 0; a < idem.size(); ++a)
      for (std::size_t b = 0; b < idem.size(); ++b)
        ASSERT_EQ(idem[a] * idem[b], a == b ? idem[a] : gring_zero(d));
  }
}
