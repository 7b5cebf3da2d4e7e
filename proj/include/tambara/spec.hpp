#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "tambara/automorphism.hpp"
#include "tambara/error.hpp"
#include "tambara/field.hpp"
#include "tambara/gring.hpp"
#include "tambara/json.hpp"
#include "tambara/subfield.hpp"

namespace tambara {

/// A field-like C_{p^n}-Tambara functor, realized inside the fixed-point
/// functor of its bottom G-ring. Level i consists of the elements fixed by
/// C_{p^i} whose coordinates all lie in base and in chain[min(i, s)].
///
/// base is the bottom field as a subfield of the backend (Full unless the
/// spec was carved out of a larger functor, e.g. by extract_top).
struct TambaraSpec {
  GRingDescriptor gring;
  SubfieldDescriptor base;
  std::vector<SubfieldDescriptor> chain;  // D_0 .. D_s

  Coeff p() const { return gring.p; }
  unsigned n() const { return gring.n; }
  unsigned s() const { return gring.s; }
  const FieldRef& field() const { return gring.field; }
  const FieldAut& action() const { return gring.wrap; }
};

struct TambaraElem {
  unsigned level = 0;
  GRingElem value;
};

inline void check_spec(const TambaraSpec& k) {
  check_descriptor(k.gring);
  if (k.chain.size() != k.s() + 1)
    throw UsageError("chain has " + std::to_string(k.chain.size()) + " entries, expected s+1 = " +
                     std::to_string(k.s() + 1));
}

inline const SubfieldDescriptor& level_constraint(const TambaraSpec& k, unsigned i) {
  return k.chain.at(std::min(i, k.s()));
}

inline bool level_contains(const TambaraSpec& k, unsigned i, const GRingElem& v) {
  if (i > k.n()) throw UsageError("level " + std::to_string(i) + " exceeds n = " + std::to_string(k.n()));
  if (v.coords.size() != k.gring.coordinate_count()) return false;
  if (!fixed_by(k.gring, i, v)) return false;
  const SubfieldDescriptor& d = level_constraint(k, i);
  return std::all_of(v.coords.begin(), v.coords.end(),
                     [&](const FieldElem& c) { return contains(k.base, c) && contains(d, c); });
}

namespace detail {

inline void require_level(const TambaraSpec& k, const TambaraElem& x, unsigned level) {
  if (x.level != level)
    throw PreconditionError("element is at level " + std::to_string(x.level) + ", expected " + std::to_string(level));
  if (!level_contains(k, level, x.value))
    throw PreconditionError("value does not belong to level " + std::to_string(level));
}

inline TambaraElem land(const TambaraSpec& k, unsigned level, GRingElem v, const std::string& check,
                        const TambaraElem& source) {
  if (!level_contains(k, level, v)) {
    throw ClosureViolation(check, to_json(source.value).dump(),
                           check + " of " + to_json(source.value).dump() + " leaves level " + std::to_string(level));
  }
  return TambaraElem{level, std::move(v)};
}

inline std::string arrow(unsigned a, unsigned b) { return std::to_string(a) + "->" + std::to_string(b); }

}  // namespace detail

/// Restrictions are inclusions of levels.
inline TambaraElem res(const TambaraSpec& k, unsigned i, unsigned j, const TambaraElem& x) {
  if (j > i) throw UsageError("restriction goes down: need j <= i");
  detail::require_level(k, x, i);
  return TambaraElem{j, x.value};
}

inline TambaraElem tr(const TambaraSpec& k, unsigned j, unsigned i, const TambaraElem& x) {
  if (j > i || i > k.n()) throw UsageError("transfer needs j <= i <= n");
  detail::require_level(k, x, j);
  return detail::land(k, i, orbit_sum(k.gring, j, i, x.value), "transfer(" + detail::arrow(j, i) + ")", x);
}

inline TambaraElem norm(const TambaraSpec& k, unsigned j, unsigned i, const TambaraElem& x) {
  if (j > i || i > k.n()) throw UsageError("norm needs j <= i <= n");
  detail::require_level(k, x, j);
  return detail::land(k, i, orbit_product(k.gring, j, i, x.value), "norm(" + detail::arrow(j, i) + ")", x);
}

inline TambaraElem weyl_act(const TambaraSpec& k, unsigned i, std::int64_t e, const TambaraElem& x) {
  detail::require_level(k, x, i);
  return detail::land(k, i, act(k.gring, e, x.value), "weyl(" + std::to_string(i) + ")", x);
}

inline Coeff characteristic(const TambaraSpec& k) { return k.field()->p; }

inline bool is_clarified(const TambaraSpec& k) { return k.s() == k.n(); }

// ---------------------------------------------------------------------------
// Levels as catalog subfields. For i <= s a level is a product of copies of
// one subfield of the backend: base, meet chain[i], meet the fixed field of
// wrap^(p^(s-i)) (the action of C_{p^i} on each coordinate).

inline AutGroup level_fix_group(const TambaraSpec& k, unsigned i) {
  if (i > k.s()) throw UsageError("level_fix_group is defined for i <= s");
  const FieldAut g = power(k.action(), ipow(k.p(), k.s() - i), *k.field());
  return *AutGroup::generate(std::span<const FieldAut>(&g, 1), *k.field());
}

/// base meet Fix(C_{p^i}): the level of the fixed-point functor.
inline std::optional<SubfieldNormal> ambient_normal(const TambaraSpec& k, unsigned i) {
  auto b = normal_form(k.base, *k.field());
  if (!b) return std::nullopt;
  return meet(*b, SubfieldNormal{0, level_fix_group(k, i)}, *k.field());
}

inline std::optional<SubfieldNormal> level_normal(const TambaraSpec& k, unsigned i) {
  auto a = ambient_normal(k, i);
  if (!a) return std::nullopt;
  auto d = normal_form(k.chain.at(i), *k.field());
  if (!d) return std::nullopt;
  return meet(*a, *d, *k.field());
}

/// Least e >= 1 such that wrap^e acts trivially on base.
inline std::uint64_t action_order_on_base(const TambaraSpec& k) {
  const FieldDescriptor& fd = *k.field();
  const SubfieldNormal b = require_normal(k.base, fd);
  const std::uint64_t full = order(k.action(), fd);
  for (std::uint64_t e = 1; e < full; ++e)
    if (b.group.contains(power(k.action(), e, fd))) return e;
  return full;
}

/// Smallest element of the coset wrap * group(base); all of them act on base
/// the same way.
inline FieldAut canonical_action(const TambaraSpec& k) {
  const FieldDescriptor& fd = *k.field();
  const SubfieldNormal b = require_normal(k.base, fd);
  FieldAut best = canonical(k.action(), fd);
  for (const auto& a : b.group.elements()) best = std::min(best, compose(k.action(), a, fd));
  return best;
}

/// Canonical spelling: base normalized, action reduced to its coset
/// representative, each chain entry rendered relative to the fixed-point
/// level it cuts down. Two specs describe the same functor iff their
/// canonical forms are equal.
inline TambaraSpec canonical(const TambaraSpec& k) {
  check_spec(k);
  const FieldDescriptor& fd = *k.field();
  TambaraSpec out = k;
  out.gring.wrap = canonical_action(k);
  out.base = normalize(k.base, fd);
  for (unsigned i = 0; i <= k.s(); ++i) {
    auto lv = level_normal(k, i);
    auto am = ambient_normal(k, i);
    if (!lv || !am) throw UsageError("level " + std::to_string(i) + " has no computable normal form");
    out.chain[i] = render(*lv, *am, fd);
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON: {"p","n","s","field","action",["base"],"chain"}.

inline Json to_json(const TambaraSpec& k) {
  Json j;
  j["p"] = k.p();
  j["n"] = k.n();
  j["s"] = k.s();
  j["field"] = to_json(*k.field());
  j["action"] = to_json(k.action());
  if (!(k.base == SubfieldDescriptor::full())) j["base"] = to_json(k.base);
  Json c = Json::array();
  for (const auto& d : k.chain) c.push_back(to_json(d));
  j["chain"] = c;
  return j;
}

inline std::string canonical_key(const TambaraSpec& k) { return to_json(canonical(k)).dump(); }

inline bool descriptor_equal(const TambaraSpec& a, const TambaraSpec& b) {
  return a.p() == b.p() && a.n() == b.n() && canonical_key(a) == canonical_key(b);
}

/// Accepts a chain of length s+1, or n+1 as long as every entry above s
/// equals D_s (levels above s are pinned to D_s).
inline TambaraSpec spec_from_json(const Json& j) {
  TambaraSpec k;
  k.gring.p = detail::get_field<Coeff>(j, "p");
  k.gring.n = detail::get_field<unsigned>(j, "n");
  k.gring.s = detail::get_field<unsigned>(j, "s");
  if (!j.contains("field")) throw UsageError("missing key \"field\"");
  k.gring.field = make_field(field_from_json(j.at("field")));
  k.gring.wrap = j.contains("action") ? aut_from_json(j.at("action")) : FieldAut::trivial();
  check_descriptor(k.gring);
  k.base = j.contains("base") ? subfield_from_json(j.at("base")) : SubfieldDescriptor::full();
  if (!j.contains("chain") || !j.at("chain").is_array()) throw UsageError("missing array \"chain\"");
  for (const auto& d : j.at("chain")) k.chain.push_back(subfield_from_json(d));
  const std::size_t s1 = k.s() + 1, n1 = k.n() + 1;
  if (k.chain.size() == n1 && n1 != s1) {
    for (std::size_t i = s1; i < n1; ++i) {
      if (compare(k.chain[i], k.chain[s1 - 1], k.field()) != Relation::Equal)
        throw UsageError("chain entry " + std::to_string(i) + " (" + k.chain[i].to_string() +
                         ") must equal D_s = " + k.chain[s1 - 1].to_string() + " above the clarification index");
    }
    k.chain.resize(s1);
  }
  check_spec(k);
  return k;
}

/// phi^n of the C_{p^n}-fixed bottom field, for clarified specs of
/// characteristic p.
inline SubfieldDescriptor lower_bound_field(const TambaraSpec& k) {
  if (!is_clarified(k)) throw UsageError("lower_bound_field needs a clarified spec");
  if (characteristic(k) != k.p()) throw UsageError("lower_bound_field needs characteristic equal to the group prime");
  std::vector<SubfieldDescriptor> parts;
  if (!(k.base == SubfieldDescriptor::full())) parts.push_back(k.base);
  if (k.n() > 0) parts.push_back(SubfieldDescriptor::frob_image(k.n()));
  if (k.action().kind != FieldAut::Kind::Trivial) parts.push_back(SubfieldDescriptor::fixed({k.action()}));
  if (k.field()->is_finite() || parts.size() <= 1) {
    if (parts.empty()) return SubfieldDescriptor::full();
    if (parts.size() == 1) return parts.front();
    return SubfieldDescriptor::intersect(std::move(parts));
  }
  // With a Frobenius-image base, phi^n(base meet Fix) is deeper than the plain
  // intersection; spell it from the normal form.
  const FieldDescriptor& fd = *k.field();
  const SubfieldNormal b = require_normal(k.base, fd);
  const SubfieldNormal fix{0, level_fix_group(k, k.n())};
  SubfieldNormal lb = *meet(b, fix, fd);
  lb.depth = b.depth + k.n();
  return render(lb, fd);
}

}  // namespace tambara
