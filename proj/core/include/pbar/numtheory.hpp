#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

namespace pbar {

class PrecisionReal;
struct ComplexReal;

// Exact integer number theory on 64-bit operands. Products are formed in
// 128-bit arithmetic, so every modulus below 2^63 is safe.

struct PrimePower {
  std::uint64_t p = 0;
  unsigned alpha = 0;
  std::uint64_t q = 1;  // p^alpha

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization of an odd positive integer, factors ascending by prime.
class PrimePowerFactorization {
 public:
  PrimePowerFactorization() = default;
  explicit PrimePowerFactorization(std::vector<PrimePower> factors);

  const std::vector<PrimePower>& factors() const noexcept { return factors_; }
  std::uint64_t value() const noexcept { return value_; }
  bool empty() const noexcept { return factors_.empty(); }
  std::size_t size() const noexcept { return factors_.size(); }

  auto begin() const noexcept { return factors_.begin(); }
  auto end() const noexcept { return factors_.end(); }

  friend bool operator==(const PrimePowerFactorization&,
                         const PrimePowerFactorization&) = default;

 private:
  std::vector<PrimePower> factors_;
  std::uint64_t value_ = 1;
};

/// Normalized rational number: gcd(|num|, den) = 1 and den > 0.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_); }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Least non-negative residue of a modulo m (m > 0).
std::uint64_t reduce_mod(std::int64_t a, std::uint64_t m);

/// Inverse of a modulo m, absent when gcd(a, m) != 1.
std::optional<std::uint64_t> inverse_mod(std::int64_t a, std::uint64_t m);

/// Jacobi symbol (a|k) for odd k >= 1; throws std::invalid_argument otherwise.
int jacobi(std::int64_t a, std::int64_t k);

/// The unique x in [0, m1*m2) with x = r1 (mod m1) and x = r2 (mod m2).
/// Throws std::invalid_argument when the moduli share a factor.
std::uint64_t crt_pair(std::uint64_t r1, std::uint64_t m1, std::uint64_t r2,
                       std::uint64_t m2);

bool is_prime(std::uint64_t n);

/// Trial division over a cached table of odd primes.
PrimePowerFactorization factorize_odd(std::uint64_t k);

/// A square root of a modulo p^alpha (the smaller of the two), or nothing
/// when a is a non-residue. Requires p an odd prime not dividing a.
std::optional<std::uint64_t> sqrt_mod_prime_power(std::int64_t a, std::uint64_t p,
                                                  unsigned alpha);

/// s(h, k) by direct summation over r = 1..k-1. Test oracle, O(k).
Rational dedekind_sum(std::int64_t h, std::int64_t k);

/// S(a, k) = sum over units h mod k of (h|k) e^{2 pi i (a h + h^{-1}) / k},
/// summed term by term at the given precision. Test oracle.
ComplexReal salie_sum(std::int64_t a, std::int64_t k, long bits);

}  // namespace pbar
