#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tambara/error.hpp"

namespace tambara {

using Coeff = std::uint32_t;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline Coeff add_mod(Coeff a, Coeff b, Coeff p) {
  std::uint64_t s = std::uint64_t{a} + b;
  return static_cast<Coeff>(s >= p ? s - p : s);
}

inline Coeff sub_mod(Coeff a, Coeff b, Coeff p) { return a >= b ? a - b : static_cast<Coeff>(std::uint64_t{a} + p - b); }

inline Coeff mul_mod(Coeff a, Coeff b, Coeff p) {
  return static_cast<Coeff>((std::uint64_t{a} * b) % p);
}

inline Coeff pow_mod(Coeff a, std::uint64_t e, Coeff p) {
  Coeff result = 1 % p;
  while (e > 0) {
    if (e & 1) result = mul_mod(result, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return result;
}

inline Coeff inv_mod(Coeff a, Coeff p) {
  if (a % p == 0) throw DomainError("inverse of 0 mod " + std::to_string(p));
  return pow_mod(a, p - 2, p);
}

inline Coeff reduce_mod(std::int64_t v, Coeff p) {
  std::int64_t r = v % static_cast<std::int64_t>(p);
  return static_cast<Coeff>(r < 0 ? r + p : r);
}

inline std::uint64_t ipow(std::uint64_t base, unsigned e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= base;
  return r;
}

/// Dense univariate polynomial over F_p, little-endian, no trailing zeros.
class Poly {
 public:
  Poly() = default;
  explicit Poly(Coeff p) : p_(p) {}
  Poly(Coeff p, const std::vector<std::int64_t>& coeffs) : p_(p) {
    c_.reserve(coeffs.size());
    for (auto v : coeffs) c_.push_back(reduce_mod(v, p));
    trim();
  }
  Poly(Coeff p, std::initializer_list<std::int64_t> coeffs) : Poly(p, std::vector<std::int64_t>(coeffs)) {}

  static Poly constant(Coeff p, std::int64_t c) { return Poly(p, {c}); }
  static Poly monomial(Coeff p, std::int64_t c, std::size_t degree) {
    std::vector<std::int64_t> v(degree + 1, 0);
    v[degree] = c;
    return Poly(p, v);
  }
  static Poly from_raw(Coeff p, std::vector<Coeff> coeffs) {
    Poly r(p);
    r.c_ = std::move(coeffs);
    r.trim();
    return r;
  }

  Coeff prime() const { return p_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  const std::vector<Coeff>& coeffs() const { return c_; }
  Coeff coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  Coeff leading() const { return c_.empty() ? 0 : c_.back(); }

  friend bool operator==(const Poly& a, const Poly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }
  friend auto operator<=>(const Poly& a, const Poly& b) {
    if (auto c = a.p_ <=> b.p_; c != 0) return c;
    if (auto c = a.c_.size() <=> b.c_.size(); c != 0) return c;
    return std::lexicographical_compare_three_way(a.c_.rbegin(), a.c_.rend(), b.c_.rbegin(), b.c_.rend());
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    check_same(a, b);
    Poly r(a.p_);
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = add_mod(a.coeff(i), b.coeff(i), a.p_);
    r.trim();
    return r;
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    check_same(a, b);
    Poly r(a.p_);
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = sub_mod(a.coeff(i), b.coeff(i), a.p_);
    r.trim();
    return r;
  }
  Poly operator-() const { return Poly(p_) - *this; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    check_same(a, b);
    Poly r(a.p_);
    if (a.is_zero() || b.is_zero()) return r;
    const Coeff p = a.p_;
    std::vector<std::uint64_t> acc(a.c_.size() + b.c_.size() - 1, 0);
    // Products fit in 62 bits; reduce on every step to keep the sum bounded.
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        acc[i + j] = (acc[i + j] + std::uint64_t{a.c_[i]} * b.c_[j]) % p;
      }
    }
    r.c_.assign(acc.begin(), acc.end());
    r.trim();
    return r;
  }

  Poly scaled(Coeff c) const {
    Poly r(p_);
    r.c_.reserve(c_.size());
    for (auto v : c_) r.c_.push_back(mul_mod(v, c % p_, p_));
    r.trim();
    return r;
  }

  Poly monic() const {
    if (is_zero()) return *this;
    return scaled(inv_mod(leading(), p_));
  }

  Poly shifted(std::size_t k) const {
    if (is_zero()) return *this;
    Poly r(p_);
    r.c_.assign(k, 0);
    r.c_.insert(r.c_.end(), c_.begin(), c_.end());
    return r;
  }

  /// f(t) -> f(t^k).
  Poly inflated(std::uint64_t k) const {
    if (c_.size() <= 1 || k == 1) return *this;
    Poly r(p_);
    r.c_.assign((c_.size() - 1) * k + 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i * k] = c_[i];
    return r;
  }

  Coeff eval(Coeff x) const {
    Coeff acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = add_mod(mul_mod(acc, x, p_), *it, p_);
    return acc;
  }

  std::string to_string(char var = 't') const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = c_.size(); k-- > 0;) {
      if (c_[k] == 0) continue;
      if (!first) os << '+';
      first = false;
      if (k == 0 || c_[k] != 1) os << c_[k];
      if (k >= 1) os << var;
      if (k >= 2) os << '^' << k;
    }
    return os.str();
  }

 private:
  static void check_same(const Poly& a, const Poly& b) {
    if (a.p_ != b.p_) throw UsageError("polynomials over different primes");
  }
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  Coeff p_ = 0;
  std::vector<Coeff> c_;
};

inline std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  if (a.prime() != b.prime()) throw UsageError("polynomials over different primes");
  const Coeff p = a.prime();
  if (a.degree() < b.degree()) return {Poly(p), a};
  std::vector<Coeff> rem = a.coeffs();
  const std::size_t db = static_cast<std::size_t>(b.degree());
  std::vector<Coeff> quot(rem.size() - db, 0);
  const Coeff lead_inv = inv_mod(b.leading(), p);
  for (std::size_t k = rem.size(); k-- > db;) {
    const Coeff q = mul_mod(rem[k], lead_inv, p);
    if (q == 0) continue;
    quot[k - db] = q;
    for (std::size_t j = 0; j <= db; ++j) {
      rem[k - db + j] = sub_mod(rem[k - db + j], mul_mod(q, b.coeffs()[j], p), p);
    }
  }
  rem.resize(db);
  return {Poly::from_raw(p, std::move(quot)), Poly::from_raw(p, std::move(rem))};
}

inline Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }
inline Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }

/// Monic gcd; gcd(0, 0) = 0.
inline Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

inline Poly powmod(Poly base, std::uint64_t e, const Poly& modulus) {
  Poly result = Poly::constant(modulus.prime(), 1) % modulus;
  base = base % modulus;
  while (e > 0) {
    if (e & 1) result = (result * base) % modulus;
    base = (base * base) % modulus;
    e >>= 1;
  }
  return result;
}

/// x^(p^m) mod f by m successive p-th powers.
inline Poly frobenius_mod(const Poly& x, unsigned m, const Poly& f) {
  Poly r = x % f;
  for (unsigned i = 0; i < m; ++i) r = powmod(r, f.prime(), f);
  return r;
}

/// Rabin's test: f of degree k is irreducible iff x^(p^k) = x mod f and
/// gcd(x^(p^(k/q)) - x, f) = 1 for every prime q dividing k.
inline bool is_irreducible(const Poly& f) {
  const int k = f.degree();
  if (k < 1) return false;
  if (k == 1) return true;
  const Coeff p = f.prime();
  const Poly x = Poly::monomial(p, 1, 1);
  if (frobenius_mod(x, static_cast<unsigned>(k), f) != x % f) return false;
  for (int q = 2; q <= k; ++q) {
    if (k % q != 0 || !is_prime(static_cast<std::uint64_t>(q))) continue;
    Poly h = frobenius_mod(x, static_cast<unsigned>(k / q), f) - x;
    if (!gcd(h, f).is_one()) return false;
  }
  return true;
}

/// Smallest monic irreducible of degree k, ordering candidates by the integer
/// whose base-p digits are the coefficients.
inline Poly first_irreducible(Coeff p, unsigned k) {
  if (k == 0) throw UsageError("extension degree must be >= 1");
  const std::uint64_t count = ipow(p, k);
  for (std::uint64_t code = 0; code < count; ++code) {
    std::vector<std::int64_t> c(k + 1, 0);
    std::uint64_t v = code;
    for (unsigned i = 0; i < k; ++i) {
      c[i] = static_cast<std::int64_t>(v % p);
      v /= p;
    }
    c[k] = 1;
    Poly f(p, c);
    if (is_irreducible(f)) return f;
  }
  throw ConsistencyError("no irreducible polynomial found");
}

}  // namespace tambara
