#pragma once

#include <cstdint>
#include <vector>

#include "pbar/numtheory.hpp"
#include "pbar/precision_real.hpp"

namespace pbar {

// The exponential sum
//
//   A~_k(n) = sum_{0 <= h < k, (h,k) = 1} w(h,k)^2 / w(2h,k) e^{-2 pi i n h / k},
//   w(h,k) = e^{pi i s(h,k)},
//
// for odd k. The fast path factors k, twists n through the CRT and evaluates
// each prime power in closed form; akt_direct and akt_salie_oracle are
// independent definitions used to check it.

enum class PrimePowerKind {
  SqrtQ,   // p | n, alpha = 1: value sqrt(q)
  Zero,    // p | n, alpha > 1, or -n a non-residue mod q
  Cosine,  // (4 theta)^2 = -n mod q: value 2 sqrt(q) cos(4 theta pi / q)
};

struct PrimePowerValue {
  PrimePowerKind kind = PrimePowerKind::Zero;
  std::uint64_t p = 0;
  unsigned alpha = 0;
  std::uint64_t q = 1;
  std::uint64_t theta = 0;  // meaningful for Cosine only

  /// A~_q(n) at the given precision.
  PrecisionReal value(long bits) const;

  friend bool operator==(const PrimePowerValue&, const PrimePowerValue&) = default;
};

/// cos(pi * num / den) with num already reduced into [0, 2 den).
struct CosineAngle {
  std::int64_t num = 0;
  std::uint64_t den = 1;

  friend bool operator==(const CosineAngle&, const CosineAngle&) = default;
};

/// Exact description of one series term: A~_k(n) / sqrt(k) is the product of
/// 2 cos(pi * angle) over the cosine factors (sqrt(q) factors cancel against
/// 1/sqrt(k)), or zero.
struct TermPlan {
  std::uint64_t k = 1;
  bool is_zero = false;
  std::vector<PrimePowerValue> factors;     // in ascending prime order, up to the first Zero
  std::vector<CosineAngle> cosine_angles;   // one per Cosine factor
  std::uint64_t cosine_modulus = 1;         // product of q over Cosine factors

  std::size_t m_k() const noexcept { return cosine_angles.size(); }

  /// prod 2 cos(pi * angle), i.e. A~_k(n) / sqrt(k).
  PrecisionReal normalized_value(long bits) const;
  /// A~_k(n).
  PrecisionReal value(long bits) const;
};

PrimePowerValue akt_prime_power(std::uint64_t p, unsigned alpha, std::uint64_t n);

/// Multiplicative evaluation: walks the prime powers of k, twisting n through
/// the CRT, and stops at the first vanishing factor.
TermPlan akt_multiplicative(std::uint64_t k, std::uint64_t n);

/// Same, reusing an existing factorization of k.
TermPlan akt_multiplicative(const PrimePowerFactorization& k, std::uint64_t n);

/// Direct summation of the definition with exact Dedekind sums. Oracle.
ComplexReal akt_direct(std::uint64_t k, std::uint64_t n, long bits);

/// eps_k * S(-n/16 mod k, k). Oracle.
ComplexReal akt_salie_oracle(std::uint64_t k, std::uint64_t n, long bits);

}  // namespace pbar
