#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pbar/hrr.hpp"
#include "pbar/numtheory.hpp"

namespace pbar {

// Search for congruences pbar(Q^3 n) = 0 (mod ell^j), n coprime to ell Q with
// (n|ell) = -1, over candidate primes Q = -1 (mod 16 ell^j). A candidate is
// "interesting" when the three-term relation
//
//   pbar(n Q^2) + (delta n | Q) Q^{(kappa-3)/2} pbar(n) + Q^{kappa-2} pbar(n/Q^2)
//
// vanishes mod ell^j for every n <= n0 with (-n|ell) = -1, n0 being the Sturm
// bound of the associated weight-kappa form.

/// 24 for ell = 3, ell^2 - 1 otherwise.
std::uint64_t k_ell(std::uint64_t ell);

/// Order-of-vanishing factor at the cusps with denominator c, for c | 16 ell^2
/// and ell^2 not dividing c.
Rational f_c_ell(std::uint64_t c, std::uint64_t ell);

/// max(j - 1, max_c ceil(-log_ell f_{c,ell})). f depends only on c, so the
/// cusps of Gamma0(16 ell^2) collapse to the admissible divisors c.
int beta_for(std::uint64_t ell, unsigned j);

/// Primes Q <= q_max with Q = -1 (mod 16 ell^j), ascending.
std::vector<std::uint64_t> candidates(std::uint64_t ell, unsigned j, std::uint64_t q_max);

struct CongruenceParams {
  std::uint64_t ell = 0;
  unsigned j = 0;
  std::uint64_t q = 0;
  int beta = 0;
  std::uint64_t kappa = 0;
  int delta = 1;
  std::uint64_t n0 = 0;
  std::uint64_t modulus = 0;  // ell^j

  /// Validates (ell, j, Q) and derives beta, kappa, delta, n0.
  static CongruenceParams make(std::uint64_t ell, unsigned j, std::uint64_t q);
};

struct HuntRecord {
  std::uint64_t ell = 0;
  unsigned j = 0;
  std::uint64_t q = 0;
  bool interesting = false;
  std::optional<std::uint64_t> witness_n;  // first failing n, iff !interesting
  std::uint64_t checked_terms = 0;
  std::uint64_t n0 = 0;
  std::uint64_t kappa = 0;

  friend bool operator==(const HuntRecord&, const HuntRecord&) = default;
};

/// Indices n in [1, n0] with (-n|ell) = -1.
std::vector<std::uint64_t> hunt_indices(const CongruenceParams& params);

HuntRecord hunt(std::uint64_t ell, unsigned j, std::uint64_t q, const EvalOptions& options = {});

struct VerifyCheck {
  std::uint64_t n = 0;
  std::uint64_t argument = 0;  // Q^3 n
  std::uint64_t residue = 0;   // pbar(Q^3 n) mod ell^j
};

struct VerifyReport {
  std::uint64_t ell = 0;
  unsigned j = 0;
  std::uint64_t q = 0;
  std::vector<VerifyCheck> checks;

  bool all_hold() const;
  std::optional<VerifyCheck> first_failure() const;
};

/// Empty when n is a valid sample for (ell, Q); otherwise the reason.
std::optional<std::string> sample_problem(std::uint64_t ell, std::uint64_t q, std::uint64_t n);

/// The first `count` valid samples in ascending order.
std::vector<std::uint64_t> valid_samples(std::uint64_t ell, std::uint64_t q, std::size_t count);

/// Checks pbar(Q^3 n) = 0 (mod ell^j) on each sample. Throws
/// std::invalid_argument naming the first invalid sample.
VerifyReport verify_congruence(std::uint64_t ell, unsigned j, std::uint64_t q,
                               std::span<const std::uint64_t> samples,
                               const EvalOptions& options = {});

}  // namespace pbar
