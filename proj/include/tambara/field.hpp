#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tambara/error.hpp"
#include "tambara/poly.hpp"

namespace tambara {

/// A concrete coefficient field: GF(p^k) = F_p[x]/(modulus), or F_p(t).
struct FieldDescriptor {
  enum class Kind { GF, RatFunc };

  Kind kind = Kind::GF;
  Coeff p = 2;
  unsigned k = 1;
  Poly modulus;

  static FieldDescriptor gf(Coeff p, unsigned k) {
    if (!is_prime(p)) throw UsageError("GF characteristic must be prime, got " + std::to_string(p));
    return FieldDescriptor{Kind::GF, p, k, first_irreducible(p, k)};
  }
  static FieldDescriptor gf(Coeff p, unsigned k, const Poly& modulus) {
    if (!is_prime(p)) throw UsageError("GF characteristic must be prime, got " + std::to_string(p));
    if (modulus.prime() != p || modulus.degree() != static_cast<int>(k))
      throw UsageError("modulus must have degree " + std::to_string(k) + " over F_" + std::to_string(p));
    if (!is_irreducible(modulus)) throw UsageError("modulus " + modulus.to_string('x') + " is reducible");
    return FieldDescriptor{Kind::GF, p, k, modulus.monic()};
  }
  static FieldDescriptor ratfunc(Coeff p) {
    if (!is_prime(p)) throw UsageError("F_p(t) characteristic must be prime, got " + std::to_string(p));
    return FieldDescriptor{Kind::RatFunc, p, 1, Poly(p)};
  }

  bool is_finite() const { return kind == Kind::GF; }
  /// Number of elements for GF backends.
  std::optional<std::uint64_t> size() const {
    if (kind == Kind::RatFunc) return std::nullopt;
    return ipow(p, k);
  }
  std::string label() const {
    if (kind == Kind::RatFunc) return "F_" + std::to_string(p) + "(t)";
    return "GF(" + std::to_string(ipow(p, k)) + ")";
  }

  friend bool operator==(const FieldDescriptor& a, const FieldDescriptor& b) {
    return a.kind == b.kind && a.p == b.p && a.k == b.k && a.modulus == b.modulus;
  }
};

using FieldRef = std::shared_ptr<const FieldDescriptor>;

inline FieldRef make_field(FieldDescriptor d) { return std::make_shared<const FieldDescriptor>(std::move(d)); }

inline bool same_field(const FieldRef& a, const FieldRef& b) { return a == b || (a && b && *a == *b); }

/// Element of a FieldDescriptor. GF elements keep den = 1; rational functions
/// are kept in lowest terms with a monic denominator, so equality is
/// structural.
class FieldElem {
 public:
  FieldElem() = default;

  static FieldElem zero(FieldRef f) { return FieldElem(f, Poly(f->p), Poly::constant(f->p, 1)); }
  static FieldElem one(FieldRef f) { return from_int(f, 1); }
  static FieldElem from_int(FieldRef f, std::int64_t c) {
    const Coeff p = f->p;
    return FieldElem(f, Poly::constant(p, c), Poly::constant(p, 1));
  }
  /// The adjoined root x of the GF modulus, or the variable t of F_p(t).
  static FieldElem generator(FieldRef f) { return residue(f, Poly::monomial(f->p, 1, 1)); }
  static FieldElem residue(FieldRef f, const Poly& r) {
    if (r.prime() != f->p) throw UsageError("residue over wrong prime");
    if (f->kind == FieldDescriptor::Kind::GF) return FieldElem(f, r % f->modulus, Poly::constant(f->p, 1));
    return FieldElem(f, r, Poly::constant(f->p, 1));
  }
  static FieldElem fraction(FieldRef f, const Poly& num, const Poly& den) {
    if (f->kind != FieldDescriptor::Kind::RatFunc) throw UsageError("fractions only exist in F_p(t)");
    if (den.is_zero()) throw DomainError("zero denominator");
    FieldElem r(f, num, den);
    r.normalize();
    return r;
  }

  const FieldRef& field() const { return f_; }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  /// True for elements of the prime field.
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

  friend bool operator==(const FieldElem& a, const FieldElem& b) {
    return same_field(a.f_, b.f_) && a.num_ == b.num_ && a.den_ == b.den_;
  }

  friend FieldElem operator+(const FieldElem& a, const FieldElem& b) {
    check_same(a, b);
    if (a.gf()) return FieldElem(a.f_, a.num_ + b.num_, a.den_);
    if (a.den_ == b.den_) return made(a.f_, a.num_ + b.num_, a.den_);
    return made(a.f_, a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  FieldElem operator-() const { return FieldElem(f_, -num_, den_); }
  friend FieldElem operator-(const FieldElem& a, const FieldElem& b) { return a + (-b); }
  friend FieldElem operator*(const FieldElem& a, const FieldElem& b) {
    check_same(a, b);
    if (a.gf()) return FieldElem(a.f_, (a.num_ * b.num_) % a.f_->modulus, a.den_);
    return made(a.f_, a.num_ * b.num_, a.den_ * b.den_);
  }
  friend FieldElem operator/(const FieldElem& a, const FieldElem& b) { return a * b.inv(); }
  FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
  FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }

  FieldElem inv() const {
    if (is_zero()) throw DomainError("inverse of zero in " + f_->label());
    if (!gf()) return made(f_, den_, num_);
    // Extended Euclid against the modulus.
    const Coeff p = f_->p;
    Poly r0 = f_->modulus, r1 = num_;
    Poly s0(p), s1 = Poly::constant(p, 1);
    while (!r1.is_zero()) {
      auto [q, r] = divmod(r0, r1);
      r0 = std::move(r1);
      r1 = std::move(r);
      Poly s = s0 - q * s1;
      s0 = std::move(s1);
      s1 = std::move(s);
    }
    // r0 is a nonzero constant since the modulus is irreducible.
    return FieldElem(f_, s0.scaled(inv_mod(r0.leading(), p)) % f_->modulus, den_);
  }

  FieldElem pow(std::int64_t e) const {
    if (e < 0) return inv().pow(-e);
    FieldElem result = one(f_);
    FieldElem base = *this;
    auto u = static_cast<std::uint64_t>(e);
    while (u > 0) {
      if (u & 1) result *= base;
      base *= base;
      u >>= 1;
    }
    return result;
  }

  std::string to_string() const {
    if (gf()) return num_.to_string('x');
    if (den_.is_one()) return num_.to_string('t');
    return "(" + num_.to_string('t') + ")/(" + den_.to_string('t') + ")";
  }

 private:
  FieldElem(FieldRef f, Poly num, Poly den) : f_(std::move(f)), num_(std::move(num)), den_(std::move(den)) {}

  static FieldElem made(const FieldRef& f, Poly num, Poly den) {
    FieldElem r(f, std::move(num), std::move(den));
    r.normalize();
    return r;
  }
  static void check_same(const FieldElem& a, const FieldElem& b) {
    if (!a.f_ || !same_field(a.f_, b.f_)) throw UsageError("field elements from different descriptors");
  }
  bool gf() const { return f_->kind == FieldDescriptor::Kind::GF; }

  void normalize() {
    if (num_.is_zero()) {
      den_ = Poly::constant(f_->p, 1);
      return;
    }
    Poly g = gcd(num_, den_);
    if (!g.is_one()) {
      num_ = num_ / g;
      den_ = den_ / g;
    }
    const Coeff lead = den_.leading();
    if (lead != 1) {
      const Coeff li = inv_mod(lead, f_->p);
      num_ = num_.scaled(li);
      den_ = den_.scaled(li);
    }
  }

  FieldRef f_;
  Poly num_;
  Poly den_;
};

/// x^(p^m).
inline FieldElem frobenius(const FieldElem& x, unsigned m) {
  const FieldDescriptor& d = *x.field();
  if (d.kind == FieldDescriptor::Kind::RatFunc) {
    // Coefficients lie in F_p, so raising to p^m only inflates exponents.
    const std::uint64_t q = ipow(d.p, m);
    return FieldElem::fraction(x.field(), x.num().inflated(q), x.den().inflated(q));
  }
  FieldElem r = x;
  for (unsigned i = 0; i < m % d.k; ++i) r = r.pow(d.p);
  return r;
}

/// Every element of a finite backend, in residue-code order.
inline std::vector<FieldElem> enumerate_elements(const FieldRef& f) {
  if (!f->is_finite()) throw UsageError("cannot enumerate " + f->label());
  const std::uint64_t count = *f->size();
  std::vector<FieldElem> out;
  out.reserve(count);
  for (std::uint64_t code = 0; code < count; ++code) {
    std::vector<std::int64_t> c(f->k, 0);
    std::uint64_t v = code;
    for (unsigned i = 0; i < f->k; ++i) {
      c[i] = static_cast<std::int64_t>(v % f->p);
      v /= f->p;
    }
    out.push_back(FieldElem::residue(f, Poly(f->p, c)));
  }
  return out;
}

/// Uniform element of GF(p^k); for F_p(t), a reduced fraction with numerator
/// degree <= max_degree and monic denominator degree <= max_degree.
template <typename Rng>
FieldElem random_element(const FieldRef& f, Rng& rng, unsigned max_degree = 2) {
  std::uniform_int_distribution<Coeff> coeff(0, f->p - 1);
  if (f->is_finite()) {
    std::vector<Coeff> c(f->k);
    for (auto& v : c) v = coeff(rng);
    return FieldElem::residue(f, Poly::from_raw(f->p, std::move(c)));
  }
  std::uniform_int_distribution<unsigned> deg(0, max_degree);
  std::vector<Coeff> num(deg(rng) + 1);
  for (auto& v : num) v = coeff(rng);
  std::vector<Coeff> den(deg(rng) + 1);
  for (auto& v : den) v = coeff(rng);
  den.back() = 1;
  return FieldElem::fraction(f, Poly::from_raw(f->p, std::move(num)), Poly::from_raw(f->p, std::move(den)));
}

}  // namespace tambara
