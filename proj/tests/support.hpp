#pragma once

#include <cstdlib>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "tambara.hpp"

namespace tambara::testing {

inline FieldRef gf(Coeff p, unsigned k) { return make_field(FieldDescriptor::gf(p, k)); }
inline FieldRef ratfunc(Coeff p) { return make_field(FieldDescriptor::ratfunc(p)); }

inline FieldElem t_of(const FieldRef& f) { return FieldElem::generator(f); }
inline FieldElem c_of(const FieldRef& f, std::int64_t c) { return FieldElem::from_int(f, c); }
inline FieldElem poly_of(const FieldRef& f, std::vector<std::int64_t> c) {
  return FieldElem::fraction(f, Poly(f->p, std::move(c)), Poly::constant(f->p, 1));
}

inline SubfieldDescriptor full() { return SubfieldDescriptor::full(); }
inline SubfieldDescriptor frob(unsigned m) { return SubfieldDescriptor::frob_image(m); }
inline SubfieldDescriptor fixed(std::vector<FieldAut> a) { return SubfieldDescriptor::fixed(std::move(a)); }
inline FieldAut shift_t() { return FieldAut::mobius(1, 1, 0, 1); }

inline TambaraSpec make_spec(Coeff p, unsigned n, unsigned s, FieldRef f, FieldAut a,
                             std::vector<SubfieldDescriptor> chain, SubfieldDescriptor base = SubfieldDescriptor::full()) {
  TambaraSpec k;
  k.gring = GRingDescriptor{p, n, s, std::move(f), a};
  k.base = std::move(base);
  k.chain = std::move(chain);
  return k;
}

inline std::string sample_path(const std::string& name) {
  const char* dir = std::getenv("TAMBARA_SAMPLES_DIR");
  return std::string(dir ? dir : "samples") + "/" + name;
}

inline Json sample_json(const std::string& name) {
  std::ifstream in(sample_path(name));
  if (!in) throw UsageError("cannot open sample " + name);
  return Json::parse(in);
}

inline TambaraSpec sample(const std::string& name) { return spec_from_json(sample_json(name)); }

inline GRingElem single(const FieldElem& x) { return GRingElem{{x}}; }

template <typename Rng>
FieldElem random_nonzero(const FieldRef& f, Rng& rng, unsigned max_degree = 2) {
  for (;;) {
    FieldElem x = random_element(f, rng, max_degree);
    if (!x.is_zero()) return x;
  }
}

template <typename Rng>
GRingElem random_gring(const GRingDescriptor& d, Rng& rng, unsigned max_degree = 2) {
  GRingElem v;
  for (std::size_t i = 0; i < d.coordinate_count(); ++i) v.coords.push_back(random_element(d.field, rng, max_degree));
  return v;
}

// ---------------------------------------------------------------------------
// Independent model of the generator: move every coordinate one step right;
// the one leaving the last slot re-enters slot 0 through the wrap.

inline GRingElem oracle_step(const GRingDescriptor& d, const GRingElem& v) {
  const std::size_t n = v.coords.size();
  GRingElem out = v;
  out.coords[0] = apply(d.wrap, v.coords[n - 1]);
  for (std::size_t i = 1; i < n; ++i) out.coords[i] = v.coords[i - 1];
  return out;
}

inline GRingElem oracle_act(const GRingDescriptor& d, std::uint64_t e, const GRingElem& v) {
  GRingElem cur = v;
  for (std::uint64_t i = 0; i < e; ++i) cur = oracle_step(d, cur);
  return cur;
}

/// Sum (or product) of the translates g^(c * p^(n-i)) v, c < p^(i-j), by
/// stepping one generator at a time.
inline GRingElem oracle_orbit(const GRingDescriptor& d, unsigned j, unsigned i, const GRingElem& v, bool product) {
  const std::uint64_t step = ipow(d.p, d.n - i);
  const std::uint64_t count = ipow(d.p, i - j);
  GRingElem acc = v;
  GRingElem cur = v;
  for (std::uint64_t c = 1; c < count; ++c) {
    for (std::uint64_t s = 0; s < step; ++s) cur = oracle_step(d, cur);
    acc = product ? acc * cur : acc + cur;
  }
  return acc;
}

/// A random element of level j of k.
template <typename Rng>
GRingElem random_level_element(const TambaraSpec& k, unsigned j, Rng& rng) {
  return tambara::detail::build_level_element(k, j, [&](unsigned i) {
    return random_member(*level_normal(k, i), k.field(), rng);
  });
}

inline std::size_t count_level(const TambaraSpec& k, unsigned j) {
  std::size_t c = 0;
  for (const auto& v : tambara::detail::enumerate_bottom(k))
    if (level_contains(k, j, v)) ++c;
  return c;
}

}  // namespace tambara::testing
