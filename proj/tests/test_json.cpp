#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace tambara;
using namespace tambara::testing;

TEST(Json, PolyIsLittleEndian) {
  EXPECT_EQ(to_json(Poly(3, {1, 0, 2})).dump(), "[1,0,2]");
  EXPECT_EQ(poly_from_json(Json::parse("[1,1]"), 2), Poly(2, {1, 1}));
  EXPECT_EQ(poly_from_json(Json::array(), 2), Poly(2));
}

TEST(Json, PolyIsStrict) {
  EXPECT_THROW(poly_from_json(Json::parse("[1,2]"), 2), UsageError);
  EXPECT_THROW(poly_from_json(Json::parse("[1,-1]"), 3), UsageError);
  EXPECT_THROW(poly_from_json(Json::parse("[1,0]"), 3), UsageError);
  EXPECT_THROW(poly_from_json(Json::parse("[1.5]"), 3), UsageError);
  EXPECT_THROW(poly_from_json(Json::parse("{}"), 3), UsageError);
}

TEST(Json, FieldDescriptors) {
  const Json g = to_json(*gf(2, 3));
  EXPECT_EQ(g.dump(), R"({"kind":"gf","p":2,"k":3,"modulus":[1,1,0,1]})");
  EXPECT_TRUE(same_field(make_field(field_from_json(g)), gf(2, 3)));
  EXPECT_EQ(to_json(*ratfunc(5)).dump(), R"({"kind":"ratfunc","p":5})");
  EXPECT_TRUE(same_field(make_field(field_from_json(Json::parse(R"({"kind":"gf","p":3,"k":2})"))), gf(3, 2)));
  EXPECT_THROW(field_from_json(Json::parse(R"({"kind":"gf","p":4,"k":1})")), UsageError);
  EXPECT_THROW(field_from_json(Json::parse(R"({"kind":"gf","p":2,"k":0})")), UsageError);
  EXPECT_THROW(field_from_json(Json::parse(R"({"kind":"gf","p":2,"k":2,"modulus":[1,0,1]})")), UsageError);
  EXPECT_THROW(field_from_json(Json::parse(R"({"kind":"padic","p":2})")), UsageError);
  EXPECT_THROW(field_from_json(Json::parse(R"({"kind":"gf","k":2})")), UsageError);
}

TEST(Json, ElementsAreCanonicalOnly) {
  const auto r = ratfunc(2);
  const auto x = element_from_json(Json::parse(R"({"num":[0,1],"den":[1,1]})"), r);
  EXPECT_EQ(x, t_of(r) / (t_of(r) + c_of(r, 1)));
  EXPECT_THROW(element_from_json(Json::parse(R"({"num":[0,1,1],"den":[0,1]})"), r), UsageError);
  EXPECT_THROW(element_from_json(Json::parse(R"({"num":[1],"den":[]})"), r), UsageError);
  EXPECT_THROW(element_from_json(Json::parse(R"({"residue":[1]})"), r), UsageError);
  const auto f = gf(2, 2);
  EXPECT_THROW(element_from_json(Json::parse(R"({"residue":[1,0,1]})"), f), UsageError);
  EXPECT_EQ(element_from_json(Json::parse(R"({"residue":[0,1]})"), f), t_of(f));
}

TEST(Json, AutomorphismsAndSubfields) {
  EXPECT_EQ(to_json(FieldAut::mobius(1, 1, 0, 1)).dump(), R"({"kind":"mobius","matrix":[1,1,0,1]})");
  EXPECT_EQ(aut_from_json(Json::parse(R"({"kind":"frobenius","m":2})")), FieldAut::frobenius(2));
  EXPECT_THROW(aut_from_json(Json::parse(R"({"kind":"mobius","matrix":[1,1,0]})")), UsageError);
  EXPECT_THROW(aut_from_json(Json::parse(R"({"kind":"frobenius","m":0})")), UsageError);
  const auto s = SubfieldDescriptor::intersect({frob(2), fixed({shift_t()})});
  EXPECT_EQ(to_json(s).dump(),
            R"({"kind":"intersect","parts":[{"kind":"frob_image","m":2},{"kind":"fixed","auts":[{"kind":"mobius","matrix":[1,1,0,1]}]}]})");
  EXPECT_EQ(subfield_from_json(to_json(s)), s);
  EXPECT_THROW(subfield_from_json(Json::parse(R"({"kind":"fixed"})")), UsageError);
  EXPECT_THROW(subfield_from_json(Json::parse(R"({"kind":"frob_image","m":0})")), UsageError);
}

TEST(Json, GRingRoundTrip) {
  const GRingDescriptor d{2, 2, 1, ratfunc(2), shift_t()};
  EXPECT_EQ(gring_from_json(to_json(d)), d);
  std::mt19937_64 rng(5);
  const GRingElem v = random_gring(d, rng);
  EXPECT_EQ(gring_elem_from_json(to_json(v), d), v);
  EXPECT_THROW(gring_elem_from_json(Json::parse(R"({"coords":[]})"), d), UsageError);
}

TEST(Json, SpecRoundTripOmitsFullBase) {
  const TambaraSpec k = make_spec(2, 1, 1, ratfunc(2), FieldAut::trivial(), {full(), frob(1)});
  const Json j = to_json(k);
  EXPECT_FALSE(j.contains("base"));
  EXPECT_EQ(canonical_key(spec_from_json(j)), canonical_key(k));
  TambaraSpec b = k;
  b.base = frob(1);
  EXPECT_TRUE(to_json(b).contains("base"));
  EXPECT_EQ(spec_from_json(to_json(b)).base, frob(1));
}

TEST(Json, SpecChainOfLengthNPlusOne) {
  Json j = to_json(make_spec(2, 2, 1, ratfunc(2), FieldAut::trivial(), {full(), frob(1)}));
  j["chain"].push_back(to_json(SubfieldDescriptor::intersect({frob(1), full()})));
  const TambaraSpec k = spec_from_json(j);
  EXPECT_EQ(k.chain.size(), 2u);
  j["chain"][2] = to_json(frob(2));
  EXPECT_THROW(spec_from_json(j), UsageError);
  j["chain"].push_back(to_json(frob(2)));
  EXPECT_THROW(spec_from_json(j), UsageError);
}

TEST(Json, SpecMissingPiecesAreUsageErrors) {
  EXPECT_THROW(spec_from_json(Json::parse(R"({"p":2,"n":1,"s":1,"field":{"kind":"ratfunc","p":2}})")), UsageError);
  EXPECT_THROW(spec_from_json(Json::parse(R"({"p":2,"n":1,"s":1,"chain":[]})")), UsageError);
  EXPECT_THROW(spec_from_json(Json::parse(R"({"n":1,"s":1,"field":{"kind":"ratfunc","p":2},"chain":[]})")),
               UsageError);
  EXPECT_THROW(spec_from_json(Json::parse(R"({"p":"two","n":1,"s":1,"field":{"kind":"ratfunc","p":2},"chain":[]})")),
               UsageError);
}

TEST(JsonProperty, RandomSpecsRoundTrip) {
  std::mt19937_64 rng(6);
  const std::vector<SubfieldDescriptor> pool{full(), frob(1), frob(2), fixed({shift_t()}),
                                             SubfieldDescriptor::intersect({frob(1), fixed({shift_t()})})};
  for (int it = 0; it < 200; ++it) {
    const unsigned n = static_cast<unsigned>(rng() % 4);
    const unsigned s = static_cast<unsigned>(rng() % (n + 1));
    std::vector<SubfieldDescriptor> chain;
    for (unsigned i = 0; i <= s; ++i) chain.push_back(pool[rng() % pool.size()]);
    const FieldAut a = rng() % 2 ? shift_t() : FieldAut::trivial();
    TambaraSpec k = make_spec(2, n, s, ratfunc(2), a, chain, pool[rng() % pool.size()]);
    const Json j = to_json(k);
    const TambaraSpec back = spec_from_json(Json::parse(j.dump()));
    ASSERT_EQ(to_json(back), j);
  }
}
