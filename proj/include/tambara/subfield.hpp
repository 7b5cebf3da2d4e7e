#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tambara/automorphism.hpp"
#include "tambara/error.hpp"
#include "tambara/field.hpp"

namespace tambara {

/// A subfield of a backend, drawn from a closed catalog with decidable
/// membership.
struct SubfieldDescriptor {
  enum class Kind { Full, FrobImage, Fixed, Intersect };

  Kind kind = Kind::Full;
  unsigned depth = 0;                      // FrobImage
  std::vector<FieldAut> auts;              // Fixed
  std::vector<SubfieldDescriptor> parts;   // Intersect

  static SubfieldDescriptor full() { return {}; }
  static SubfieldDescriptor frob_image(unsigned m) {
    if (m == 0) throw UsageError("FrobImage depth must be >= 1");
    return {Kind::FrobImage, m, {}, {}};
  }
  static SubfieldDescriptor fixed(std::vector<FieldAut> auts) { return {Kind::Fixed, 0, std::move(auts), {}}; }
  static SubfieldDescriptor intersect(std::vector<SubfieldDescriptor> parts) {
    return {Kind::Intersect, 0, {}, std::move(parts)};
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::Full: return "Full";
      case Kind::FrobImage: return "FrobImage(" + std::to_string(depth) + ")";
      case Kind::Fixed: {
        std::string s = "Fixed(";
        for (std::size_t i = 0; i < auts.size(); ++i) s += (i ? "," : "") + auts[i].to_string();
        return s + ")";
      }
      case Kind::Intersect: {
        std::string s = "Intersect(";
        for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + parts[i].to_string();
        return s + ")";
      }
    }
    return "?";
  }

  friend bool operator==(const SubfieldDescriptor& a, const SubfieldDescriptor& b) {
    return a.kind == b.kind && a.depth == b.depth && a.auts == b.auts && a.parts == b.parts;
  }
};

/// Direct membership test; never goes through the normal form.
inline bool contains(const SubfieldDescriptor& s, const FieldElem& x) {
  switch (s.kind) {
    case SubfieldDescriptor::Kind::Full: return true;
    case SubfieldDescriptor::Kind::FrobImage: {
      const FieldDescriptor& d = *x.field();
      if (d.is_finite()) return true;  // perfect
      // In lowest terms, x is a p^m-th power iff every exponent of numerator
      // and denominator is divisible by p^m.
      const std::uint64_t q = ipow(d.p, s.depth);
      auto divisible = [q](const Poly& f) {
        for (std::size_t i = 0; i < f.coeffs().size(); ++i)
          if (f.coeffs()[i] != 0 && i % q != 0) return false;
        return true;
      };
      return divisible(x.num()) && divisible(x.den());
    }
    case SubfieldDescriptor::Kind::Fixed:
      return std::all_of(s.auts.begin(), s.auts.end(), [&](const FieldAut& a) { return apply(a, x) == x; });
    case SubfieldDescriptor::Kind::Intersect:
      return std::all_of(s.parts.begin(), s.parts.end(), [&](const SubfieldDescriptor& p) { return contains(p, x); });
  }
  return false;
}

/// Every catalog subfield is phi^depth(F^group): the image under the depth-fold
/// Frobenius of the fixed field of a finite automorphism group. On finite
/// backends depth is always 0. Two subfields are equal iff their normal forms
/// are, and phi^m(F^H) is inside phi^m'(F^H') iff m >= m' and H contains H'.
struct SubfieldNormal {
  unsigned depth = 0;
  AutGroup group;

  friend bool operator==(const SubfieldNormal& a, const SubfieldNormal& b) {
    return a.depth == b.depth && a.group == b.group;
  }
};

inline SubfieldNormal full_normal() { return {}; }

inline std::optional<SubfieldNormal> meet(const SubfieldNormal& a, const SubfieldNormal& b, const FieldDescriptor& d,
                                          std::size_t cap = AutGroup::kDefaultCap) {
  auto g = AutGroup::join(a.group, b.group, d, cap);
  if (!g) return std::nullopt;
  return SubfieldNormal{std::max(a.depth, b.depth), std::move(*g)};
}

/// a contains b.
inline bool includes(const SubfieldNormal& a, const SubfieldNormal& b) {
  return b.depth >= a.depth && b.group.includes(a.group);
}

inline std::optional<SubfieldNormal> normal_form(const SubfieldDescriptor& s, const FieldDescriptor& d,
                                                 std::size_t cap = AutGroup::kDefaultCap) {
  switch (s.kind) {
    case SubfieldDescriptor::Kind::Full: return full_normal();
    case SubfieldDescriptor::Kind::FrobImage:
      return SubfieldNormal{d.is_finite() ? 0u : s.depth, AutGroup()};
    case SubfieldDescriptor::Kind::Fixed: {
      auto g = AutGroup::generate(s.auts, d, cap);
      if (!g) return std::nullopt;
      return SubfieldNormal{0, std::move(*g)};
    }
    case SubfieldDescriptor::Kind::Intersect: {
      SubfieldNormal acc = full_normal();
      for (const auto& part : s.parts) {
        auto pn = normal_form(part, d, cap);
        if (!pn) return std::nullopt;
        auto m = meet(acc, *pn, d, cap);
        if (!m) return std::nullopt;
        acc = std::move(*m);
      }
      return acc;
    }
  }
  return std::nullopt;
}

inline SubfieldNormal require_normal(const SubfieldDescriptor& s, const FieldDescriptor& d) {
  auto n = normal_form(s, d);
  if (!n) throw UsageError("automorphism group of " + s.to_string() + " is too large to enumerate");
  return *n;
}

/// Canonical descriptor D with D meet ambient == x, assuming x lies inside
/// ambient. Gives Full when x == ambient.
inline SubfieldDescriptor render(const SubfieldNormal& x, const SubfieldNormal& ambient, const FieldDescriptor& d) {
  std::vector<SubfieldDescriptor> parts;
  if (x.depth > ambient.depth) parts.push_back(SubfieldDescriptor::frob_image(x.depth));
  if (!(x.group == ambient.group)) {
    auto gens = x.group.generators(d, ambient.group);
    if (!gens.empty()) parts.push_back(SubfieldDescriptor::fixed(std::move(gens)));
  }
  if (parts.empty()) return SubfieldDescriptor::full();
  if (parts.size() == 1) return parts.front();
  return SubfieldDescriptor::intersect(std::move(parts));
}

inline SubfieldDescriptor render(const SubfieldNormal& x, const FieldDescriptor& d) {
  return render(x, full_normal(), d);
}

/// The catalog-canonical spelling of s.
inline SubfieldDescriptor normalize(const SubfieldDescriptor& s, const FieldDescriptor& d) {
  return render(require_normal(s, d), d);
}

/// A generator u of F_p(t)^H (so F_p(t)^H = F_p(u)): the first non-constant
/// coefficient of prod_{h in H} (X - h(t)). Checked by degree: F_p(t) has
/// degree max(deg num u, deg den u) over F_p(u), which must equal |H|.
inline FieldElem fixed_field_generator(const AutGroup& h, const FieldRef& f) {
  if (f->is_finite()) throw UsageError("fixed_field_generator is for F_p(t)");
  const FieldElem t = FieldElem::generator(f);
  if (h.is_trivial()) return t;
  std::vector<FieldElem> poly{FieldElem::one(f)};
  for (const auto& a : h.elements()) {
    const FieldElem root = apply(a, t);
    std::vector<FieldElem> next(poly.size() + 1, FieldElem::zero(f));
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] += -(poly[i] * root);
    }
    poly = std::move(next);
  }
  for (const auto& c : poly) {
    if (c.is_constant()) continue;
    const int deg = std::max(c.num().degree(), c.den().degree());
    if (static_cast<std::size_t>(deg) != h.size())
      throw ConsistencyError("fixed-field generator " + c.to_string() + " has wrong degree");
    return c;
  }
  throw ConsistencyError("no non-constant coefficient in orbit polynomial");
}

namespace detail {

inline FieldElem substitute(const Poly& f, const FieldElem& u) {
  FieldElem acc = FieldElem::zero(u.field());
  for (std::size_t i = f.coeffs().size(); i-- > 0;)
    acc = acc * u + FieldElem::from_int(u.field(), f.coeffs()[i]);
  return acc;
}

}  // namespace detail

/// Pseudo-random element of the subfield with normal form s. Finite backends
/// use the relative trace onto F^H (surjective); F_p(t) uses a random rational
/// function of the fixed-field generator.
template <typename Rng>
FieldElem random_member(const SubfieldNormal& s, const FieldRef& f, Rng& rng, unsigned max_degree = 2) {
  FieldElem x = random_element(f, rng, max_degree);
  if (f->is_finite()) {
    if (!s.group.is_trivial()) {
      FieldElem tr = FieldElem::zero(f);
      for (const auto& a : s.group.elements()) tr += apply(a, x);
      x = tr;
    }
    return x;
  }
  if (!s.group.is_trivial()) {
    const FieldElem u = fixed_field_generator(s.group, f);
    x = detail::substitute(x.num(), u) / detail::substitute(x.den(), u);
  }
  return frobenius(x, s.depth);
}

/// Distinguished members: 0, 1, a generator and simple expressions in it.
inline std::vector<FieldElem> boundary_members(const SubfieldNormal& s, const FieldRef& f) {
  std::vector<FieldElem> out{FieldElem::zero(f), FieldElem::one(f)};
  if (f->is_finite()) return out;
  const FieldElem u = frobenius(fixed_field_generator(s.group, f), s.depth);
  out.push_back(u);
  out.push_back(u + FieldElem::one(f));
  out.push_back(u.inv());
  out.push_back(u * u);
  return out;
}

enum class Relation { Equal, Subset, Superset, Incomparable, Unknown };

inline const char* to_string(Relation r) {
  switch (r) {
    case Relation::Equal: return "equal";
    case Relation::Subset: return "subset";
    case Relation::Superset: return "superset";
    case Relation::Incomparable: return "incomparable";
    case Relation::Unknown: return "unknown";
  }
  return "?";
}

/// Relation of a to b inside d. Exact on normal forms; when a group is too
/// large to enumerate, falls back to refuting inclusions with sampled members
/// and reports Unknown unless both inclusions are refuted.
inline Relation compare(const SubfieldDescriptor& a, const SubfieldDescriptor& b, const FieldRef& d,
                        std::size_t cap = AutGroup::kDefaultCap, std::uint64_t seed = 0x7a3b,
                        std::size_t samples = 64) {
  const auto na = normal_form(a, *d, cap);
  const auto nb = normal_form(b, *d, cap);
  if (na && nb) {
    const bool ab = includes(*nb, *na), ba = includes(*na, *nb);
    if (ab && ba) return Relation::Equal;
    if (ab) return Relation::Subset;
    if (ba) return Relation::Superset;
    return Relation::Incomparable;
  }
  std::mt19937_64 rng(seed);
  auto refuted = [&](const std::optional<SubfieldNormal>& from, const SubfieldDescriptor& into) {
    if (!from) return false;
    for (std::size_t i = 0; i < samples; ++i)
      if (!contains(into, random_member(*from, d, rng))) return true;
    return false;
  };
  if (refuted(na, b) && refuted(nb, a)) return Relation::Incomparable;
  return Relation::Unknown;
}

}  // namespace tambara
