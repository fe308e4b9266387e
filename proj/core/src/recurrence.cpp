#include "pbar/recurrence.hpp"

#include <algorithm>
#include <mutex>

namespace pbar {

OverpartitionTable recursion_table(std::size_t n_max) {
  std::vector<mpz_class> p(n_max + 1);
  p[0] = 1;
  for (std::size_t n = 1; n <= n_max; ++n) {
    mpz_class acc = 0;
    for (std::size_t k = 1; k * k <= n; ++k) {
      if (k % 2 == 1) {
        acc += p[n - k * k];
      } else {
        acc -= p[n - k * k];
      }
    }
    p[n] = 2 * acc;
  }
  return OverpartitionTable(std::move(p));
}

OverpartitionTable product_expansion_table(std::size_t n_max) {
  std::vector<mpz_class> series(n_max + 1, 0);
  series[0] = 1;
  for (std::size_t m = 1; m <= n_max; ++m) {
    // multiply by (1 - q^{2m}); descending so each coefficient is read before
    // it is overwritten
    if (2 * m <= n_max) {
      for (std::size_t i = n_max; i >= 2 * m; --i) series[i] -= series[i - 2 * m];
    }
    // divide by (1 - q^m) twice: running sums with stride m
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = m; i <= n_max; ++i) series[i] += series[i - m];
    }
  }
  return OverpartitionTable(std::move(series));
}

std::vector<int> theta_coefficients(std::size_t n_max) {
  std::vector<int> b(n_max + 1, 0);
  b[0] = 1;
  for (std::size_t m = 1; m * m <= n_max; ++m) b[m * m] = m % 2 == 0 ? 2 : -2;
  return b;
}

std::shared_ptr<const OverpartitionTable> cached_recursion_table(std::size_t n_max) {
  static std::mutex mutex;
  static std::shared_ptr<const OverpartitionTable> cached;
  std::lock_guard lock(mutex);
  if (!cached || cached->max_n() < n_max) {
    const std::size_t target = std::max<std::size_t>(n_max, cached ? 2 * cached->max_n() : 0);
    cached = std::make_shared<const OverpartitionTable>(recursion_table(target));
  }
  return cached;
}

}  // namespace pbar
