#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "tambara/error.hpp"
#include "tambara/field.hpp"

namespace tambara {

/// A field automorphism of finite order: a power of Frobenius on GF(p^k), or
/// the substitution t -> (at+b)/(ct+d) on F_p(t).
struct FieldAut {
  enum class Kind { Trivial, Frobenius, Mobius };

  Kind kind = Kind::Trivial;
  unsigned power = 0;
  // Entries a, b, c, d of t -> (at+b)/(ct+d); reduced into [0, p) by canonical().
  std::array<std::int64_t, 4> matrix{1, 0, 0, 1};

  static FieldAut trivial() { return {}; }
  static FieldAut frobenius(unsigned m) {
    if (m == 0) throw UsageError("Frobenius power must be >= 1");
    return {Kind::Frobenius, m, {1, 0, 0, 1}};
  }
  static FieldAut mobius(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    return {Kind::Mobius, 0, {a, b, c, d}};
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::Trivial: return "id";
      case Kind::Frobenius: return power == 1 ? "phi" : "phi^" + std::to_string(power);
      case Kind::Mobius:
        return "t->(" + std::to_string(matrix[0]) + "t+" + std::to_string(matrix[1]) + ")/(" +
               std::to_string(matrix[2]) + "t+" + std::to_string(matrix[3]) + ")";
    }
    return "?";
  }

  friend bool operator==(const FieldAut& a, const FieldAut& b) {
    return a.kind == b.kind && a.power == b.power && a.matrix == b.matrix;
  }
  friend auto operator<=>(const FieldAut& a, const FieldAut& b) {
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    if (auto c = a.power <=> b.power; c != 0) return c;
    return a.matrix <=> b.matrix;
  }
};

namespace detail {

using Mat = std::array<Coeff, 4>;

inline Mat mat_mul(const Mat& x, const Mat& y, Coeff p) {
  return {add_mod(mul_mod(x[0], y[0], p), mul_mod(x[1], y[2], p), p),
          add_mod(mul_mod(x[0], y[1], p), mul_mod(x[1], y[3], p), p),
          add_mod(mul_mod(x[2], y[0], p), mul_mod(x[3], y[2], p), p),
          add_mod(mul_mod(x[2], y[1], p), mul_mod(x[3], y[3], p), p)};
}

/// Projective normalization: first nonzero entry scaled to 1.
inline Mat mat_normalize(Mat m, Coeff p) {
  for (auto v : m) {
    if (v != 0) {
      const Coeff s = inv_mod(v, p);
      for (auto& e : m) e = mul_mod(e, s, p);
      return m;
    }
  }
  throw UsageError("zero Mobius matrix");
}

inline bool mat_is_scalar(const Mat& m) { return m[1] == 0 && m[2] == 0 && m[0] == m[3]; }

/// Entries of an already canonical Mobius automorphism.
inline Mat to_mat(const FieldAut& a) {
  return {static_cast<Coeff>(a.matrix[0]), static_cast<Coeff>(a.matrix[1]), static_cast<Coeff>(a.matrix[2]),
          static_cast<Coeff>(a.matrix[3])};
}

}  // namespace detail

/// Reduces entries mod p, checks kind/backend compatibility, rewrites the
/// identity as Trivial and reduces Frobenius powers mod k.
inline FieldAut canonical(const FieldAut& a, const FieldDescriptor& d) {
  switch (a.kind) {
    case FieldAut::Kind::Trivial: return FieldAut::trivial();
    case FieldAut::Kind::Frobenius: {
      if (d.kind != FieldDescriptor::Kind::GF)
        throw UsageError("Frobenius is not an automorphism of " + d.label());
      const unsigned m = a.power % d.k;
      if (m == 0) return FieldAut::trivial();
      return FieldAut::frobenius(m);
    }
    case FieldAut::Kind::Mobius: {
      if (d.kind != FieldDescriptor::Kind::RatFunc)
        throw UsageError("Mobius substitution is not an automorphism of " + d.label());
      detail::Mat m;
      for (std::size_t i = 0; i < 4; ++i) m[i] = reduce_mod(a.matrix[i], d.p);
      const Coeff det = sub_mod(mul_mod(m[0], m[3], d.p), mul_mod(m[1], m[2], d.p), d.p);
      if (det == 0) throw UsageError("Mobius matrix is singular mod " + std::to_string(d.p));
      m = detail::mat_normalize(m, d.p);
      if (detail::mat_is_scalar(m)) return FieldAut::trivial();
      return FieldAut::mobius(m[0], m[1], m[2], m[3]);
    }
  }
  return FieldAut::trivial();
}

namespace detail {

/// f((at+b)/(ct+d)) * (ct+d)^deg as a polynomial, for a chosen deg >= deg f.
inline Poly substitute_homogeneous(const Poly& f, const Mat& m, int deg) {
  const Coeff p = f.prime();
  const Poly lin_num(p, {m[1], m[0]});
  const Poly lin_den(p, {m[3], m[2]});
  std::vector<Poly> num_pow{Poly::constant(p, 1)}, den_pow{Poly::constant(p, 1)};
  for (int i = 1; i <= deg; ++i) {
    num_pow.push_back(num_pow.back() * lin_num);
    den_pow.push_back(den_pow.back() * lin_den);
  }
  Poly acc(p);
  for (int i = 0; i <= f.degree(); ++i) {
    if (f.coeff(static_cast<std::size_t>(i)) == 0) continue;
    acc = acc + (num_pow[i] * den_pow[deg - i]).scaled(f.coeff(static_cast<std::size_t>(i)));
  }
  return acc;
}

}  // namespace detail

inline FieldElem apply(const FieldAut& a, const FieldElem& x) {
  const FieldDescriptor& d = *x.field();
  const FieldAut c = canonical(a, d);
  switch (c.kind) {
    case FieldAut::Kind::Trivial: return x;
    case FieldAut::Kind::Frobenius: return frobenius(x, c.power);
    case FieldAut::Kind::Mobius: {
      const int deg = std::max(x.num().degree(), x.den().degree());
      const detail::Mat m = detail::to_mat(c);
      return FieldElem::fraction(x.field(), detail::substitute_homogeneous(x.num(), m, deg),
                                 detail::substitute_homogeneous(x.den(), m, deg));
    }
  }
  return x;
}

/// compose(a, b) applies b first, then a.
inline FieldAut compose(const FieldAut& a, const FieldAut& b, const FieldDescriptor& d) {
  const FieldAut ca = canonical(a, d), cb = canonical(b, d);
  if (ca.kind == FieldAut::Kind::Trivial) return cb;
  if (cb.kind == FieldAut::Kind::Trivial) return ca;
  if (ca.kind == FieldAut::Kind::Frobenius) {
    const unsigned m = (ca.power + cb.power) % d.k;
    return m == 0 ? FieldAut::trivial() : FieldAut::frobenius(m);
  }
  // apply(A, apply(B, f))(t) = f(B(A t)), so the matrix product is B*A.
  const detail::Mat m = detail::mat_mul(detail::to_mat(cb), detail::to_mat(ca), d.p);
  return canonical(FieldAut::mobius(m[0], m[1], m[2], m[3]), d);
}

inline FieldAut power(const FieldAut& a, std::uint64_t e, const FieldDescriptor& d) {
  FieldAut result = FieldAut::trivial();
  FieldAut base = canonical(a, d);
  while (e > 0) {
    if (e & 1) result = compose(result, base, d);
    base = compose(base, base, d);
    e >>= 1;
  }
  return result;
}

inline FieldAut inverse(const FieldAut& a, const FieldDescriptor& d);

/// Least e >= 1 with a^e = id.
inline std::uint64_t order(const FieldAut& a, const FieldDescriptor& d) {
  const FieldAut c = canonical(a, d);
  switch (c.kind) {
    case FieldAut::Kind::Trivial: return 1;
    case FieldAut::Kind::Frobenius: return d.k / std::gcd(c.power, d.k);
    case FieldAut::Kind::Mobius: {
      // |PGL_2(F_p)| = p(p^2-1) bounds the order.
      const std::uint64_t bound = std::uint64_t{d.p} * (std::uint64_t{d.p} * d.p - 1);
      FieldAut cur = c;
      for (std::uint64_t e = 1; e <= bound; ++e) {
        if (cur.kind == FieldAut::Kind::Trivial) return e;
        cur = compose(cur, c, d);
      }
      throw ConsistencyError("Mobius order exceeds |PGL2|");
    }
  }
  return 1;
}

inline FieldAut inverse(const FieldAut& a, const FieldDescriptor& d) { return power(a, order(a, d) - 1, d); }

/// A finite group of automorphisms, stored as its sorted canonical elements.
class AutGroup {
 public:
  static constexpr std::size_t kDefaultCap = std::size_t{1} << 14;

  AutGroup() : elems_{FieldAut::trivial()} {}

  /// Closure of gens; nullopt once the group would exceed cap elements.
  static std::optional<AutGroup> generate(std::span<const FieldAut> gens, const FieldDescriptor& d,
                                          std::size_t cap = kDefaultCap) {
    std::vector<FieldAut> canon;
    for (const auto& g : gens) {
      FieldAut c = canonical(g, d);
      if (c.kind != FieldAut::Kind::Trivial) canon.push_back(c);
    }
    std::set<FieldAut> seen{FieldAut::trivial()};
    std::vector<FieldAut> frontier{FieldAut::trivial()};
    while (!frontier.empty()) {
      std::vector<FieldAut> next;
      for (const auto& x : frontier) {
        for (const auto& g : canon) {
          FieldAut y = compose(g, x, d);
          if (seen.insert(y).second) {
            if (seen.size() > cap) return std::nullopt;
            next.push_back(y);
          }
        }
      }
      frontier = std::move(next);
    }
    AutGroup r;
    r.elems_.assign(seen.begin(), seen.end());
    return r;
  }

  static std::optional<AutGroup> join(const AutGroup& a, const AutGroup& b, const FieldDescriptor& d,
                                      std::size_t cap = kDefaultCap) {
    std::vector<FieldAut> gens = a.elems_;
    gens.insert(gens.end(), b.elems_.begin(), b.elems_.end());
    return generate(gens, d, cap);
  }

  const std::vector<FieldAut>& elements() const { return elems_; }
  std::size_t size() const { return elems_.size(); }
  bool is_trivial() const { return elems_.size() == 1; }
  bool contains(const FieldAut& canonical_elem) const {
    return std::binary_search(elems_.begin(), elems_.end(), canonical_elem);
  }
  bool includes(const AutGroup& other) const {
    return std::includes(elems_.begin(), elems_.end(), other.elems_.begin(), other.elems_.end());
  }
  bool normalized_by(const FieldAut& g, const FieldDescriptor& d) const {
    const FieldAut gi = inverse(g, d);
    for (const auto& h : elems_) {
      if (!contains(compose(compose(g, h, d), gi, d))) return false;
    }
    return true;
  }
  bool is_abelian(const FieldDescriptor& d) const {
    for (const auto& x : elems_)
      for (const auto& y : elems_)
        if (compose(x, y, d) != compose(y, x, d)) return false;
    return true;
  }

  /// Greedy generating set relative to base: walk the elements in order and
  /// keep each one not already in the subgroup generated so far.
  std::vector<FieldAut> generators(const FieldDescriptor& d, const AutGroup& base = AutGroup()) const {
    std::vector<FieldAut> gens;
    AutGroup cur = base;
    for (const auto& x : elems_) {
      if (cur.contains(x)) continue;
      gens.push_back(x);
      cur = *join(cur, *generate(std::span<const FieldAut>(&x, 1), d), d);
    }
    return gens;
  }

  friend bool operator==(const AutGroup& a, const AutGroup& b) { return a.elems_ == b.elems_; }

 private:
  std::vector<FieldAut> elems_;
};

}  // namespace tambara
