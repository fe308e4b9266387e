#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include <gmpxx.h>

namespace pbar {

/// Exact values pbar(0..max_n()).
class OverpartitionTable {
 public:
  OverpartitionTable() = default;
  explicit OverpartitionTable(std::vector<mpz_class> values) : values_(std::move(values)) {}

  const mpz_class& operator[](std::size_t n) const { return values_.at(n); }
  std::size_t max_n() const noexcept { return values_.empty() ? 0 : values_.size() - 1; }
  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<mpz_class>& values() const noexcept { return values_; }

  friend bool operator==(const OverpartitionTable& a, const OverpartitionTable& b) {
    return a.values_ == b.values_;
  }

 private:
  std::vector<mpz_class> values_;
};

/// pbar(n) = 2 sum_{k >= 1, k^2 <= n} (-1)^{k+1} pbar(n - k^2).
OverpartitionTable recursion_table(std::size_t n_max);

/// Coefficients of prod_{n >= 1} (1 - q^{2n}) / (1 - q^n)^2 up to q^{n_max}.
OverpartitionTable product_expansion_table(std::size_t n_max);

/// Coefficients b_k of 1 / sum pbar(n) q^n: 1 at k = 0, 2(-1)^m at k = m^2,
/// 0 elsewhere.
std::vector<int> theta_coefficients(std::size_t n_max);

/// Process-wide memoized recursion table covering at least 0..n_max. The
/// returned table is immutable and safe to share across threads.
std::shared_ptr<const OverpartitionTable> cached_recursion_table(std::size_t n_max);

}  // namespace pbar
