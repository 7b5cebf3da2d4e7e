#pragma once

#include <string>
#include <vector>

#include "tambara/error.hpp"
#include "tambara/json.hpp"
#include "tambara/spec.hpp"
#include "tambara/subfield.hpp"

namespace tambara {

/// The fixed-point functor of base (a subfield of f, Full by default) with
/// C_{p^n} acting through a. p defaults to the characteristic.
inline TambaraSpec fixed_point_functor(const FieldRef& f, const FieldAut& a, unsigned n, Coeff p = 0,
                                       const SubfieldDescriptor& base = SubfieldDescriptor::full()) {
  if (p == 0) p = f->p;
  TambaraSpec k;
  k.gring = GRingDescriptor{p, n, n, f, canonical(a, *f)};
  check_descriptor(k.gring);
  k.base = base;
  k.chain.assign(n + 1, SubfieldDescriptor::full());
  const std::uint64_t ord = action_order_on_base(k);
  if (ipow(p, n) % ord != 0)
    throw UsageError("action " + a.to_string() + " has order " + std::to_string(ord) + ", which does not divide " +
                     std::to_string(p) + "^" + std::to_string(n));
  return k;
}

inline TambaraSpec coinduce(const TambaraSpec& ell, unsigned n) {
  check_spec(ell);
  if (!is_clarified(ell)) throw UsageError("coinduce needs a clarified spec");
  if (n < ell.s()) throw UsageError("coinduce target exponent " + std::to_string(n) + " is below s = " +
                                    std::to_string(ell.s()));
  TambaraSpec k = ell;
  k.gring.n = n;
  return k;
}

inline TambaraSpec restrict_clarified(const TambaraSpec& k, unsigned m) {
  check_spec(k);
  if (!is_clarified(k)) throw UsageError("restrict_clarified needs a clarified spec");
  if (m > k.n()) throw UsageError("cannot restrict to a larger group");
  TambaraSpec out = k;
  out.gring.n = m;
  out.gring.s = m;
  out.gring.wrap = power(k.action(), ipow(k.p(), k.n() - m), *k.field());
  out.chain.resize(m + 1);
  return out;
}

/// The top piece: a C_{p^(n-1)}-spec whose bottom field is level 1 of k,
/// kept as a subfield of the same backend.
inline TambaraSpec extract_top(const TambaraSpec& k) {
  check_spec(k);
  if (!is_clarified(k)) throw UsageError("extract_top needs a clarified spec");
  if (k.n() == 0) throw UsageError("extract_top needs n >= 1");
  const FieldDescriptor& fd = *k.field();
  auto l1 = level_normal(k, 1);
  if (!l1) throw UsageError("level 1 has no computable normal form");
  TambaraSpec t;
  t.gring = GRingDescriptor{k.p(), k.n() - 1, k.n() - 1, k.field(), k.action()};
  t.base = render(*l1, fd);
  t.chain.assign(k.chain.begin() + 1, k.chain.end());
  return canonical(t);
}

inline TambaraSpec extract_bottom(const TambaraSpec& k) {
  if (k.n() == 0) throw UsageError("extract_bottom needs n >= 1");
  return restrict_clarified(k, 1);
}

struct GlueData {
  TambaraSpec top;     // clarified, C_{p^(n-1)}
  TambaraSpec bottom;  // clarified, C_p
  FieldRef field;
  FieldAut action;
};

inline Json to_json(const GlueData& g) {
  Json j;
  j["top"] = to_json(g.top);
  j["bottom"] = to_json(g.bottom);
  j["field"] = to_json(*g.field);
  j["action"] = to_json(g.action);
  return j;
}

inline GlueData glue_from_json(const Json& j) {
  for (const char* key : {"top", "bottom", "field", "action"})
    if (!j.is_object() || !j.contains(key)) throw UsageError(std::string("glue data needs \"") + key + "\"");
  return GlueData{spec_from_json(j.at("top")), spec_from_json(j.at("bottom")),
                  make_field(field_from_json(j.at("field"))), aut_from_json(j.at("action"))};
}

namespace detail {

inline std::string pair_text(const SubfieldNormal& a, const SubfieldNormal& b, const FieldDescriptor& d) {
  return render(a, d).to_string() + " vs " + render(b, d).to_string();
}

}  // namespace detail

/// Reassembles a clarified C_{p^n}-spec from its top and bottom pieces and the
/// bottom C_{p^n}-field (field, action).
inline TambaraSpec glue(const GlueData& g) {
  const TambaraSpec& lt = g.top;
  const TambaraSpec& lb = g.bottom;
  check_spec(lt);
  check_spec(lb);
  if (!is_clarified(lt) || !is_clarified(lb)) throw UsageError("glue pieces must be clarified");
  if (lb.n() != 1) throw UsageError("bottom piece must be a C_p-spec");
  if (lt.p() != lb.p()) throw UsageError("pieces use different primes");
  const Coeff p = lt.p();
  const unsigned n = lt.n() + 1;
  const FieldDescriptor& fd = *g.field;
  const FieldAut sigma = canonical(g.action, fd);

  // (2) the bottom piece is F with the restricted C_p-action.
  if (!same_field(lb.field(), g.field))
    throw GlueError(2, "bottom piece lives over " + lb.field()->label() + ", not " + fd.label());
  const SubfieldNormal fb = require_normal(lb.base, fd);
  if (!(fb == full_normal()))
    throw GlueError(2, "bottom piece's bottom field " + lb.base.to_string() + " is not the whole of " + fd.label());
  const FieldAut restricted = power(sigma, ipow(p, n - 1), fd);
  if (canonical(lb.action(), fd) != restricted)
    throw GlueError(2, "bottom piece acts by " + lb.action().to_string() + ", the restriction of F is " +
                           restricted.to_string());

  // (1) top of the bottom piece equals bottom of the top piece.
  if (!same_field(lt.field(), g.field))
    throw GlueError(1, "top piece lives over " + lt.field()->label() + ", not " + fd.label());
  const auto b1 = level_normal(lb, 1);
  const auto t0 = level_normal(lt, 0);
  if (!b1 || !t0) throw GlueError(1, "level fields have no computable normal form");
  if (!(*b1 == *t0))
    throw GlueError(1, "bottom piece's top field differs from top piece's bottom field: " +
                           detail::pair_text(*b1, *t0, fd));

  // (3) the top piece's action is the one induced from F.
  const FieldAut diff = compose(inverse(sigma, fd), canonical(lt.action(), fd), fd);
  if (!t0->group.contains(diff))
    throw GlueError(3, "top piece acts by " + lt.action().to_string() + ", which differs from the induced action " +
                           sigma.to_string() + " on " + render(*t0, fd).to_string());

  TambaraSpec k;
  k.gring = GRingDescriptor{p, n, n, g.field, sigma};
  k.base = SubfieldDescriptor::full();
  k.chain.push_back(SubfieldDescriptor::full());
  for (unsigned i = 0; i <= lt.n(); ++i) {
    auto li = level_normal(lt, i);
    if (!li) throw UsageError("top piece level " + std::to_string(i) + " has no computable normal form");
    k.chain.push_back(render(*li, fd));
  }
  return canonical(k);
}

}  // namespace tambara
