#include <gtest/gtest.h>

#include <random>
#include <set>

#include "support.hpp"

using namespace tambara;
using namespace tambara::testing;

namespace {

std::set<std::string> failing_checks(const ValidationReport& r) {
  std::set<std::string> out;
  for (const auto& f : r.failures) out.insert(f.check);
  return out;
}

bool has_element_witness(const ValidationReport& r, const std::string& check) {
  for (const auto& f : r.failures)
    if (f.check == check && f.witness.contains("level")) return true;
  return false;
}

}  // namespace

TEST(Validate, ValidSamples) {
  for (const char* name : {"fixed_point_gf4.json", "frobenius_top_f2t.json", "artin_schreier_f2t.json",
                           "coinduced_gf4.json", "c4_frobenius_chain_f2t.json"}) {
    const auto r = validate(sample(name), {});
    EXPECT_EQ(r.verdict, Verdict::ValidFieldLike) << name << ": " << to_json(r).dump();
  }
}

TEST(Validate, ArtinSchreierWithFrobeniusTopIsRejected) {
  const auto r = validate(sample("artin_schreier_proper_top.json"), {});
  EXPECT_EQ(r.verdict, Verdict::Invalid);
  EXPECT_TRUE(r.has_failure("transfer(0->1)"));
  EXPECT_TRUE(has_element_witness(r, "transfer(0->1)"));
}

TEST(Validate, CharNotPProperTopIsRejected) {
  // GF(81) with C_2 acting by phi^2; the top Fix(phi) = GF(3) is smaller than
  // the fixed field GF(9).
  const auto r = validate(sample("char_not_p_gf81.json"), {});
  EXPECT_EQ(r.verdict, Verdict::Invalid);
  EXPECT_TRUE(r.has_failure("transfer(0->1)"));
  EXPECT_TRUE(has_element_witness(r, "transfer(0->1)"));
  // GF(9) with a trivial C_2-action and top GF(3): 2x leaves GF(3).
  const auto k = make_spec(2, 1, 1, gf(3, 2), FieldAut::trivial(), {full(), fixed({FieldAut::frobenius(1)})});
  const auto r2 = validate(k, {});
  EXPECT_EQ(r2.verdict, Verdict::Invalid);
  EXPECT_TRUE(has_element_witness(r2, "transfer(0->1)"));
}

TEST(Validate, BadChainOrder) {
  const auto r = validate(sample("bad_chain_order.json"), {});
  EXPECT_EQ(r.verdict, Verdict::Invalid);
  EXPECT_TRUE(r.has_failure("chain_descending"));
}

TEST(Validate, WrapOrderMustDivide) {
  const auto k = make_spec(2, 1, 1, gf(2, 3), FieldAut::frobenius(1), {full(), full()});
  const auto r = validate(k, {});
  EXPECT_EQ(r.verdict, Verdict::Invalid);
  EXPECT_EQ(failing_checks(r), (std::set<std::string>{"wrap_order"}));
  EXPECT_EQ(r.failures.front().witness["order"], 3);
}

TEST(Validate, NonNormalLevelIsNotWeylStable) {
  const FieldAut inv = FieldAut::mobius(0, 1, 1, 0);
  const auto k = make_spec(2, 2, 2, ratfunc(2), shift_t(), {full(), fixed({inv}), fixed({inv})});
  const auto r = validate(k, {});
  EXPECT_EQ(r.verdict, Verdict::Invalid);
  EXPECT_TRUE(r.has_failure("weyl_stable"));
}

TEST(Validate, D0MustBeFull) {
  const auto k = make_spec(2, 1, 1, ratfunc(2), FieldAut::trivial(), {frob(1), frob(1)});
  EXPECT_TRUE(validate(k, {}).has_failure("d0_full"));
}

TEST(Validate, PermutationOverrideGivesValidNotFieldLike) {
  const auto k = coinduce(fixed_point_functor(gf(2, 2), FieldAut::frobenius(1), 1), 2);
  ASSERT_EQ(validate(k, {}).verdict, Verdict::ValidFieldLike);
  ValidateOptions opts;
  opts.permutation = std::vector<std::size_t>{0, 1};
  const auto r = validate(k, {}, opts);
  EXPECT_EQ(r.verdict, Verdict::ValidNotFieldLike);
  EXPECT_EQ(failing_checks(r), (std::set<std::string>{"invariant_ideal_free"}));
  EXPECT_EQ(to_json(r)["verdict"], "valid_not_field_like");
}

TEST(Validate, ZeroSamplesIsUsageError) {
  SamplingPolicy p;
  p.samples = 0;
  EXPECT_THROW(validate(fixed_point_functor(ratfunc(2), shift_t(), 1), p), UsageError);
}

TEST(Validate, OversizedGroupIsUndecided) {
  // <t+1, 1/t> is PGL_2(F_37), far larger than the group cap.
  const auto k = make_spec(37, 1, 1, ratfunc(37), FieldAut::trivial(),
                           {full(), fixed({shift_t(), FieldAut::mobius(0, 1, 1, 0)})});
  const auto r = validate(k, {});
  EXPECT_EQ(r.verdict, Verdict::Invalid);
  EXPECT_TRUE(r.has_failure("symbolic_undecided"));
}

TEST(Validate, ReportJsonShape) {
  const auto r = validate(sample("artin_schreier_proper_top.json"), {});
  const Json j = to_json(r);
  EXPECT_EQ(j["verdict"], "invalid");
  ASSERT_TRUE(j["failures"].is_array());
  for (const auto& f : j["failures"]) {
    EXPECT_TRUE(f.contains("check"));
    EXPECT_TRUE(f.contains("witness"));
  }
  const auto sorted = r.failures;
  EXPECT_TRUE(std::is_sorted(sorted.begin(), sorted.end(),
                             [](const Failure& a, const Failure& b) { return a.check < b.check; }));
}

TEST(ValidateProperty, DeterministicForFixedSeed) {
  for (const char* name : {"artin_schreier_proper_top.json", "frobenius_top_f2t.json", "char_not_p_gf81.json"}) {
    const auto k = sample(name);
    SamplingPolicy p;
    p.seed = 77;
    EXPECT_EQ(to_json(validate(k, p)).dump(), to_json(validate(k, p)).dump()) << name;
  }
}

TEST(ValidateProperty, VerdictDoesNotDependOnSeedOrMode) {
  std::vector<TambaraSpec> specs{
      sample("artin_schreier_proper_top.json"), sample("char_not_p_gf81.json"), sample("bad_chain_order.json"),
      sample("fixed_point_gf4.json"), sample("coinduced_gf4.json"),
      make_spec(2, 1, 1, gf(3, 2), FieldAut::trivial(), {full(), fixed({FieldAut::frobenius(1)})}),
      make_spec(2, 1, 1, gf(2, 2), FieldAut::trivial(), {full(), frob(1)}),
      fixed_point_functor(gf(3, 2), FieldAut::frobenius(1), 1, 2)};
  for (const auto& k : specs) {
    const auto base = validate(k, {});
    for (std::uint64_t seed : {1u, 2u, 99u}) {
      SamplingPolicy p;
      p.seed = seed;
      p.samples = 64;
      p.exhaustive_limit = 0;
      const auto r = validate(k, p);
      ASSERT_EQ(r.verdict, base.verdict) << canonical_key(k);
      ASSERT_EQ(failing_checks(r), failing_checks(base)) << canonical_key(k);
    }
  }
}

TEST(ValidateProperty, ValidSpecsPassProbesWithManySeeds) {
  std::mt19937_64 rng(31);
  const std::vector<TambaraSpec> specs{fixed_point_functor(ratfunc(2), shift_t(), 1),
                                       fixed_point_functor(ratfunc(3), shift_t(), 2),
                                       coinduce(fixed_point_functor(ratfunc(2), shift_t(), 1), 2),
                                       fixed_point_functor(gf(2, 4), FieldAut::frobenius(1), 2),
                                       sample("c4_frobenius_chain_f2t.json")};
  for (const auto& k : specs) {
    for (int it = 0; it < 5; ++it) {
      SamplingPolicy p;
      p.seed = rng();
      p.samples = 32;
      ASSERT_EQ(validate(k, p).verdict, Verdict::ValidFieldLike) << canonical_key(k);
    }
  }
}

TEST(ValidateProperty, SymbolicAgreesWithExhaustiveProbesOnSmallFields) {
  // Every two-level chain over GF(4) and GF(9) with C_2: the symbolic rules
  // reject a spec exactly when an exhaustive probe finds an element witness.
  for (const auto& [f, a] : std::vector<std::pair<FieldRef, FieldAut>>{
           {gf(2, 2), FieldAut::trivial()}, {gf(2, 2), FieldAut::frobenius(1)}, {gf(3, 2), FieldAut::trivial()},
           {gf(3, 2), FieldAut::frobenius(1)}}) {
    const std::vector<SubfieldDescriptor> subs{full(), fixed({FieldAut::frobenius(1)})};
    for (const auto& d1 : subs) {
      const auto k = make_spec(2, 1, 1, f, a, {full(), d1});
      const auto r = validate(k, {});
      const bool symbolic = std::any_of(r.failures.begin(), r.failures.end(),
                                        [](const Failure& x) { return !x.witness.contains("level"); });
      const bool probed = std::any_of(r.failures.begin(), r.failures.end(),
                                      [](const Failure& x) { return x.witness.contains("level"); });
      EXPECT_EQ(symbolic, probed) << canonical_key(k) << " " << to_json(r).dump();
    }
  }
}
