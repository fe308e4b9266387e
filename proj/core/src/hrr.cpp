#include "pbar/hrr.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include "pbar/recurrence.hpp"

namespace pbar {

namespace {

// Runs fn(i) for i in [0, count) on up to `workers` threads, striding indices
// so each thread sees a mix of expensive (small k) and cheap terms.
template <typename Fn>
void parallel_indices(std::size_t count, unsigned workers, Fn&& fn) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < count; i += workers) fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

// pi sqrt(n), held once at the highest precision any term needs.
PrecisionReal scaled_pi_sqrt(std::uint64_t n, long bits) {
  return mul(pi(bits), sqrt_uint(n, bits), bits);
}

PrecisionReal term_from_constant(std::uint64_t n, const PrecisionReal& pi_sqrt_n,
                                 const TermPlan& plan, long bits) {
  // x carries 64 extra bits so that its rounding does not leak into e^x.
  PrecisionReal x(bits + 64);
  mpfr_div_ui(x.raw(), pi_sqrt_n.get(), static_cast<unsigned long>(plan.k), MPFR_RNDN);
  PrecisionReal t = u_function(x, bits);
  mpfr_div_ui(t.raw(), t.get(), static_cast<unsigned long>(n), MPFR_RNDN);
  mpfr_div_2ui(t.raw(), t.get(), 2, MPFR_RNDN);
  if (plan.m_k() > 0) t = mul(t, plan.normalized_value(bits), bits);
  return t;
}

// Approximate bit length of pbar(n) ~ e^{pi sqrt n} / (8n).
long size_bits(std::uint64_t n) {
  const double bits = M_PI * std::sqrt(static_cast<double>(n)) * M_LOG2E -
                      std::log2(8.0 * static_cast<double>(n));
  return std::max(1L, static_cast<long>(std::ceil(bits)));
}

struct PlannedTerm {
  TermPlan plan;
  long bits = 0;
};

// Non-zero plans for odd k <= N in ascending k, with their working precision.
std::vector<PlannedTerm> plan_terms(std::uint64_t n, std::uint64_t N, long guard_bits,
                                    std::uint64_t& odd_terms) {
  std::vector<PlannedTerm> out;
  odd_terms = 0;
  for (std::uint64_t k = 1; k <= N; k += 2) {
    ++odd_terms;
    TermPlan plan = akt_multiplicative(k, n);
    if (plan.is_zero) continue;
    const long bits = term_precision(n, k, plan.m_k()) + guard_bits;
    out.push_back({std::move(plan), bits});
  }
  return out;
}

std::shared_ptr<const OverpartitionTable> small_table() {
  return cached_recursion_table(kRecursionThreshold);
}

}  // namespace

SeriesConfig SeriesConfig::for_argument(std::uint64_t n, long guard_bits) {
  return {n, ceil_sqrt(n), guard_bits};
}

std::uint64_t ceil_sqrt(std::uint64_t n) {
  auto s = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (static_cast<unsigned __int128>(s) * s > n) --s;
  while (static_cast<unsigned __int128>(s + 1) * (s + 1) <= n) ++s;
  return static_cast<unsigned __int128>(s) * s == n ? s : s + 1;
}

PrecisionReal error_bound(std::uint64_t n, std::uint64_t N, long bits) {
  if (n == 0 || N == 0) throw std::invalid_argument("error_bound: n and N must be positive");
  const long work = 2 * bits + 64;
  const unsigned long n1 = static_cast<unsigned long>(N) + 1;
  PrecisionReal x = scaled_pi_sqrt(n, work);
  mpfr_div_ui(x.raw(), x.get(), n1, MPFR_RNDN);

  // bracket = x cosh x + (2N+1) sinh x - 2(N+1) x
  PrecisionReal bracket(work);
  if (x < PrecisionReal(work, std::int64_t{1})) {
    // Linear terms cancel exactly; what is left is
    // sum_{v>=1} x^{2v+1}/(2v+1)! * (2v + 2N + 2), all positive.
    PrecisionReal x2 = mul(x, x, work);
    PrecisionReal power = mul(x2, x, work);
    mpfr_div_ui(power.raw(), power.get(), 6, MPFR_RNDN);
    for (unsigned long v = 1;; ++v) {
      PrecisionReal term(work);
      mpfr_mul_ui(term.raw(), power.get(), 2 * v + 2 * n1, MPFR_RNDN);
      bracket = add(bracket, term, work);
      if (term.is_zero() || term.exponent() < bracket.exponent() - work - 2) break;
      power = mul(power, x2, work);
      mpfr_div_ui(power.raw(), power.get(), (2 * v + 2) * (2 * v + 3), MPFR_RNDN);
    }
  } else {
    PrecisionReal ch(work), sh(work);
    mpfr_sinh_cosh(sh.raw(), ch.raw(), x.get(), MPFR_RNDN);
    PrecisionReal a = mul(x, ch, work);
    PrecisionReal b(work);
    mpfr_mul_ui(b.raw(), sh.get(), 2 * static_cast<unsigned long>(N) + 1, MPFR_RNDN);
    PrecisionReal c(work);
    mpfr_mul_ui(c.raw(), x.get(), 2 * n1, MPFR_RNDN);
    bracket = sub(add(a, b, work), c, work);
  }

  PrecisionReal ratio(work, static_cast<std::int64_t>(n1), n);
  PrecisionReal scale = mul(ratio, sqrt(ratio, work), work);
  PrecisionReal four_pi = pi(work);
  mpfr_mul_2ui(four_pi.raw(), four_pi.get(), 2, MPFR_RNDN);
  return div(mul(scale, bracket, work), four_pi, bits);
}

long term_precision(std::uint64_t n, std::uint64_t k, std::size_t m_k) {
  if (n == 0 || k == 0) throw std::invalid_argument("term_precision: n and k must be positive");
  const double log2n = std::log2(static_cast<double>(n));
  const double s = M_PI * std::sqrt(static_cast<double>(n)) / static_cast<double>(k);
  const double mk = static_cast<double>(m_k);
  const double inner = std::max(10.0 * s + 7.0 * (2.0 * mk - 4.0), 2.0);
  const double first = -0.5 * log2n + s * M_LOG2E + mk + std::log2(inner);
  const double second = 0.5 * log2n + 5.0;
  return static_cast<long>(std::ceil(std::max({first, second, 11.0})));
}

PrecisionReal compute_term(std::uint64_t n, const TermPlan& plan, long r_k, long guard_bits) {
  if (plan.is_zero) throw std::invalid_argument("compute_term: zero plan contributes nothing");
  if (n == 0) throw std::invalid_argument("compute_term: n must be positive");
  const long bits = r_k + guard_bits;
  return term_from_constant(n, scaled_pi_sqrt(n, bits + 64), plan, bits);
}

ExactEvaluation overpartition_exact_detailed(std::uint64_t n, const EvalOptions& options) {
  ExactEvaluation out;
  if (n <= kRecursionThreshold) {
    out.value = (*small_table())[n];
    out.from_recursion = true;
    return out;
  }
  const std::uint64_t N = ceil_sqrt(n);
  std::vector<PlannedTerm> planned = plan_terms(n, N, options.guard_bits, out.odd_terms);
  out.nonzero_terms = planned.size();

  const long top_bits = planned.empty() ? 64 : planned.front().bits;
  const PrecisionReal pi_sqrt_n = scaled_pi_sqrt(n, top_bits + 64);

  std::vector<std::optional<PrecisionReal>> terms(planned.size());
  parallel_indices(planned.size(), options.workers, [&](std::size_t i) {
    terms[i] = term_from_constant(n, pi_sqrt_n, planned[i].plan, planned[i].bits);
  });

  const long acc_bits =
      std::max(term_precision(n, 1, 0), size_bits(n)) + options.guard_bits;
  PrecisionReal sum(acc_bits);
  for (const auto& t : terms) sum = add(sum, *t, acc_bits);

  out.value = sum.round();
  out.rounding_distance = std::fabs(sub(sum, PrecisionReal(acc_bits, out.value), 64).to_double());
  if (!(out.rounding_distance < kRoundingMarginLimit)) {
    throw RoundingError("truncated series for n=" + std::to_string(n) + " is " +
                        std::to_string(out.rounding_distance) + " away from an integer");
  }
  return out;
}

mpz_class overpartition_exact(std::uint64_t n, const EvalOptions& options) {
  return overpartition_exact_detailed(n, options).value;
}

ModularAccumulator::ModularAccumulator(std::uint64_t m) : m_(m) {
  if (m < 3 || m % 2 == 0) {
    throw std::invalid_argument("modulus must be odd and at least 3, got " + std::to_string(m));
  }
}

void ModularAccumulator::add_term(const PrecisionReal& term) {
  const mpz_class a = term.floor();
  PrecisionReal frac(term.precision());
  mpfr_sub_z(frac.raw(), term.get(), a.get_mpz_t(), MPFR_RNDN);  // exact
  add_split(mpz_fdiv_ui(a.get_mpz_t(), 2 * m_), frac.to_double());
}

void ModularAccumulator::add_split(std::uint64_t floor_mod_2m, double fraction) {
  const std::uint64_t two_m = 2 * m_;
  std::uint64_t a = floor_mod_2m % two_m;
  b_ += fraction;
  if (b_ > 1.0) {
    b_ -= 1.0;
    a = (a + 1) % two_m;
  }
  p_mod_ = (p_mod_ + a) % two_m;
}

std::uint64_t ModularAccumulator::finish() const {
  std::uint64_t v = p_mod_;
  if (v % 2 == 1) v = (v + 1) % (2 * m_);  // pbar(n) is even
  return v % m_;
}

std::uint64_t overpartition_mod(std::uint64_t n, std::uint64_t m, const EvalOptions& options) {
  ModularAccumulator acc(m);
  if (n <= kRecursionThreshold) {
    return mpz_fdiv_ui((*small_table())[n].get_mpz_t(), m);
  }
  const std::uint64_t N = ceil_sqrt(n);
  std::uint64_t odd_terms = 0;
  std::vector<PlannedTerm> planned = plan_terms(n, N, options.guard_bits, odd_terms);

  const long top_bits = planned.empty() ? 64 : planned.front().bits;
  const PrecisionReal pi_sqrt_n = scaled_pi_sqrt(n, top_bits + 64);

  struct Split {
    std::uint64_t floor_mod_2m = 0;
    double fraction = 0.0;
  };
  std::vector<Split> splits(planned.size());
  parallel_indices(planned.size(), options.workers, [&](std::size_t i) {
    const PrecisionReal t = term_from_constant(n, pi_sqrt_n, planned[i].plan, planned[i].bits);
    const mpz_class a = t.floor();
    PrecisionReal frac(t.precision());
    mpfr_sub_z(frac.raw(), t.get(), a.get_mpz_t(), MPFR_RNDN);
    splits[i] = {mpz_fdiv_ui(a.get_mpz_t(), 2 * m), frac.to_double()};
  });
  for (const Split& s : splits) acc.add_split(s.floor_mod_2m, s.fraction);
  return acc.finish();
}

}  // namespace pbar
