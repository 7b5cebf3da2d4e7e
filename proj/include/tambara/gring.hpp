#pragma once

#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "tambara/automorphism.hpp"
#include "tambara/error.hpp"
#include "tambara/field.hpp"

namespace tambara {

/// Coind_{C_{p^s}}^{C_{p^n}} of a C_{p^s}-field: p^(n-s) copies of the field.
/// The generator shifts coordinates one step to the right and applies wrap to
/// the coordinate that passes from the last position back to position 0.
struct GRingDescriptor {
  Coeff p = 2;
  unsigned n = 0;
  unsigned s = 0;
  FieldRef field;
  FieldAut wrap;

  std::uint64_t group_order() const { return ipow(p, n); }
  std::size_t coordinate_count() const { return static_cast<std::size_t>(ipow(p, n - s)); }

  friend bool operator==(const GRingDescriptor& a, const GRingDescriptor& b) {
    return a.p == b.p && a.n == b.n && a.s == b.s && same_field(a.field, b.field) && a.wrap == b.wrap;
  }
};

struct GRingElem {
  std::vector<FieldElem> coords;

  friend bool operator==(const GRingElem& a, const GRingElem& b) { return a.coords == b.coords; }

  friend GRingElem operator+(const GRingElem& a, const GRingElem& b) {
    check_len(a, b);
    GRingElem r{a.coords};
    for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] += b.coords[i];
    return r;
  }
  friend GRingElem operator*(const GRingElem& a, const GRingElem& b) {
    check_len(a, b);
    GRingElem r{a.coords};
    for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] *= b.coords[i];
    return r;
  }
  GRingElem operator-() const {
    GRingElem r{coords};
    for (auto& c : r.coords) c = -c;
    return r;
  }

 private:
  static void check_len(const GRingElem& a, const GRingElem& b) {
    if (a.coords.size() != b.coords.size()) throw UsageError("G-ring elements of different length");
  }
};

inline void check_descriptor(const GRingDescriptor& d) {
  if (!is_prime(d.p)) throw UsageError("group prime must be prime");
  if (d.s > d.n) throw UsageError("stabilizer exponent s exceeds n");
  if (!d.field) throw UsageError("G-ring without a field");
  canonical(d.wrap, *d.field);
}

inline GRingElem gring_constant(const GRingDescriptor& d, const FieldElem& x) {
  return GRingElem{std::vector<FieldElem>(d.coordinate_count(), x)};
}
inline GRingElem gring_zero(const GRingDescriptor& d) { return gring_constant(d, FieldElem::zero(d.field)); }
inline GRingElem gring_one(const GRingDescriptor& d) { return gring_constant(d, FieldElem::one(d.field)); }

inline void check_element(const GRingDescriptor& d, const GRingElem& v) {
  if (v.coords.size() != d.coordinate_count())
    throw UsageError("G-ring element has " + std::to_string(v.coords.size()) + " coordinates, expected " +
                     std::to_string(d.coordinate_count()));
  for (const auto& c : v.coords)
    if (!same_field(c.field(), d.field)) throw UsageError("coordinate outside the G-ring's field");
}

/// Action of generator^e.
inline GRingElem act(const GRingDescriptor& d, std::int64_t e, const GRingElem& v) {
  const auto order = static_cast<std::int64_t>(d.group_order());
  const auto big_n = static_cast<std::int64_t>(v.coords.size());
  std::int64_t r = e % order;
  if (r < 0) r += order;
  if (r == 0) return v;
  const std::int64_t q = r / big_n;  // full wraps applied to every coordinate
  const std::int64_t shift = r % big_n;
  const FieldDescriptor& fd = *d.field;
  const FieldAut w_q = power(d.wrap, static_cast<std::uint64_t>(q), fd);
  const FieldAut w_q1 = power(d.wrap, static_cast<std::uint64_t>(q + 1), fd);
  GRingElem out;
  out.coords.reserve(v.coords.size());
  // Coordinates landing at i < shift crossed the wrap once more.
  for (std::int64_t i = 0; i < big_n; ++i) {
    const std::int64_t src = (i - shift + big_n) % big_n;
    out.coords.push_back(apply(i < shift ? w_q1 : w_q, v.coords[static_cast<std::size_t>(src)]));
  }
  return out;
}

/// Fixed by C_{p^j}, whose generator is generator^(p^(n-j)).
inline bool fixed_by(const GRingDescriptor& d, unsigned j, const GRingElem& v) {
  if (j > d.n) throw UsageError("subgroup exponent exceeds n");
  if (j == 0) return true;
  return act(d, static_cast<std::int64_t>(ipow(d.p, d.n - j)), v) == v;
}

namespace detail {

template <typename Combine>
GRingElem orbit_fold(const GRingDescriptor& d, unsigned j_from, unsigned j_to, const GRingElem& v, Combine combine) {
  if (j_from > j_to || j_to > d.n) throw UsageError("orbit requires j_from <= j_to <= n");
  if (!fixed_by(d, j_from, v))
    throw PreconditionError("element is not fixed by C_{p^" + std::to_string(j_from) + "}");
  // Coset representatives generator^(c * p^(n - j_to)), c < p^(j_to - j_from).
  const auto step = static_cast<std::int64_t>(ipow(d.p, d.n - j_to));
  const auto count = static_cast<std::int64_t>(ipow(d.p, j_to - j_from));
  GRingElem acc = v;
  for (std::int64_t c = 1; c < count; ++c) acc = combine(acc, act(d, c * step, v));
  return acc;
}

}  // namespace detail

inline GRingElem orbit_sum(const GRingDescriptor& d, unsigned j_from, unsigned j_to, const GRingElem& v) {
  return detail::orbit_fold(d, j_from, j_to, v, [](const GRingElem& a, const GRingElem& b) { return a + b; });
}

inline GRingElem orbit_product(const GRingDescriptor& d, unsigned j_from, unsigned j_to, const GRingElem& v) {
  return detail::orbit_fold(d, j_from, j_to, v, [](const GRingElem& a, const GRingElem& b) { return a * b; });
}

/// Coordinate projections x_0, ..., x_{N-1}.
inline std::vector<GRingElem> standard_idempotents(const GRingDescriptor& d) {
  std::vector<GRingElem> out;
  const std::size_t count = d.coordinate_count();
  for (std::size_t i = 0; i < count; ++i) {
    GRingElem e = gring_zero(d);
    e.coords[i] = FieldElem::one(d.field);
    out.push_back(std::move(e));
  }
  return out;
}

/// Where the generator sends each coordinate, read off from its action on the
/// standard idempotents.
inline std::vector<std::size_t> coordinate_permutation(const GRingDescriptor& d) {
  const auto idem = standard_idempotents(d);
  std::vector<std::size_t> perm(idem.size());
  for (std::size_t i = 0; i < idem.size(); ++i) {
    const GRingElem image = act(d, 1, idem[i]);
    for (std::size_t k = 0; k < image.coords.size(); ++k)
      if (!image.coords[k].is_zero()) perm[i] = k;
  }
  return perm;
}

/// A product of fields has no invariant ideal iff the group permutes the
/// factors transitively; perm is the generator's action on factor indices.
inline bool invariant_ideal_free(const GRingDescriptor& d, std::span<const std::size_t> perm) {
  if (perm.size() != d.coordinate_count()) return false;
  std::vector<bool> seen(perm.size(), false);
  std::size_t cur = 0, visited = 0;
  while (!seen[cur]) {
    seen[cur] = true;
    ++visited;
    cur = perm[cur];
    if (cur >= perm.size()) return false;
  }
  return visited == perm.size();
}

inline bool invariant_ideal_free(const GRingDescriptor& d) {
  const auto perm = coordinate_permutation(d);
  return invariant_ideal_free(d, perm);
}

}  // namespace tambara
