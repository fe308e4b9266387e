#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

#include "pbar/akt.hpp"
#include "pbar/precision_real.hpp"

namespace pbar {

// Evaluation of
//
//   pbar(n) = 1/(4n) sum_{k odd} A~_k(n)/sqrt(k) U(pi sqrt(n) / k)
//
// truncated at N = ceil(sqrt(n)), either exactly (round the sum) or modulo an
// odd m (carry the fractional parts, repair parity).

/// Arguments up to this value are answered from the recursion table.
inline constexpr std::uint64_t kRecursionThreshold = 2000;

/// Extra bits on top of the per-term precision r_k.
inline constexpr long kGuardBits = 10;

/// Largest accepted distance between the exact-path sum and its rounding.
inline constexpr double kRoundingMarginLimit = 0.26;

struct SeriesConfig {
  std::uint64_t n = 0;
  std::uint64_t terms = 0;  // N = ceil(sqrt(n))
  long guard_bits = kGuardBits;

  static SeriesConfig for_argument(std::uint64_t n, long guard_bits = kGuardBits);
};

struct EvalOptions {
  unsigned workers = 1;          // threads used for term evaluation
  long guard_bits = kGuardBits;
};

/// ceil(sqrt(n)) in exact integer arithmetic.
std::uint64_t ceil_sqrt(std::uint64_t n);

/// Bound M(n, N) on the tail of the series after the first N terms.
PrecisionReal error_bound(std::uint64_t n, std::uint64_t N, long bits);

/// Bits r_k of precision sufficient for |t_k - t^_k| < 1/(4N).
long term_precision(std::uint64_t n, std::uint64_t k, std::size_t m_k);

/// t_k = 1/(4n) U(pi sqrt(n) / k) prod 2 cos(pi angle), evaluated at r_k plus
/// guard bits. Throws std::invalid_argument on a zero plan.
PrecisionReal compute_term(std::uint64_t n, const TermPlan& plan, long r_k,
                           long guard_bits = kGuardBits);

struct ExactEvaluation {
  mpz_class value;
  double rounding_distance = 0.0;  // |sum t^_k - value|
  std::uint64_t odd_terms = 0;     // odd k <= N
  std::uint64_t nonzero_terms = 0;
  bool from_recursion = false;
};

/// Thrown when the truncated sum is not within kRoundingMarginLimit of an
/// integer. Indicates a precision bug, not bad input.
class RoundingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ExactEvaluation overpartition_exact_detailed(std::uint64_t n, const EvalOptions& options = {});
mpz_class overpartition_exact(std::uint64_t n, const EvalOptions& options = {});

/// Integer part mod 2m plus fractional carry.
class ModularAccumulator {
 public:
  explicit ModularAccumulator(std::uint64_t m);

  /// Split t^_k into floor and fraction and fold both in.
  void add_term(const PrecisionReal& term);
  /// Fold in a pre-split term: floor(t^_k) mod 2m and t^_k - floor(t^_k).
  void add_split(std::uint64_t floor_mod_2m, double fraction);

  /// The residue mod m after parity repair.
  std::uint64_t finish() const;

  std::uint64_t modulus() const noexcept { return m_; }
  std::uint64_t partial() const noexcept { return p_mod_; }
  double carry() const noexcept { return b_; }

 private:
  std::uint64_t m_;
  std::uint64_t p_mod_ = 0;  // in [0, 2m)
  double b_ = 0.0;
};

/// pbar(n) mod m for odd m >= 3.
std::uint64_t overpartition_mod(std::uint64_t n, std::uint64_t m, const EvalOptions& options = {});

}  // namespace pbar
