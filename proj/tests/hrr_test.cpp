#include <doctest.h>

#include "oracles.hpp"
#include "pbar/hrr.hpp"
#include "pbar/recurrence.hpp"

using namespace pbar;

TEST_CASE("ceil_sqrt") {
  CHECK(ceil_sqrt(1) == 1);
  CHECK(ceil_sqrt(2) == 2);
  CHECK(ceil_sqrt(4) == 2);
  CHECK(ceil_sqrt(785) == 29);
  CHECK(ceil_sqrt(1'000'000) == 1000);
  CHECK(ceil_sqrt(1'000'001) == 1001);
  CHECK(ceil_sqrt(UINT64_MAX) == 4294967296ULL);
  CHECK(SeriesConfig::for_argument(2001).terms == 45);
  CHECK(SeriesConfig::for_argument(2001).guard_bits == 10);
}

TEST_CASE("term_precision") {
  CHECK(term_precision(1'000'000, 1, 0) == 4538);
  CHECK(term_precision(1'000'000, 999, 0) == 15);
  for (std::uint64_t n : {2001u, 10000u, 1000000u}) {
    for (std::uint64_t k = 1; k <= ceil_sqrt(n); k += 2) {
      for (std::size_t m = 0; m < 5; ++m) REQUIRE(term_precision(n, k, m) >= 11);
    }
  }
  // Non-increasing in k for fixed m_k.
  for (std::uint64_t k = 3; k <= 1000; k += 2) {
    REQUIRE(term_precision(1'000'000, k, 2) <= term_precision(1'000'000, k - 2, 2));
  }
}

TEST_CASE("error_bound") {
  CHECK(error_bound(785, 29, 64).to_double() < 0.25);
  // Against the unrearranged closed form at generous precision.
  for (auto [n, N] : {std::pair<std::uint64_t, std::uint64_t>{10'000, 100}, {785, 29}, {5000, 71},
                      {1'000'000, 1000}, {1'000'000, 1'000'000}, {100, 1}}) {
    const double mine = error_bound(n, N, 128).to_double();
    const double ref = oracle::error_bound_naive(n, N, 512);
    CHECK(mine == doctest::Approx(ref).epsilon(1e-12));
  }
  const double asym = M_PI * M_PI / (12 * std::sqrt(1'000'001.0));
  CHECK(std::fabs(error_bound(1'000'000, 1'000'000, 256).to_double() / asym - 1) < 0.10);
  CHECK_THROWS_AS(error_bound(0, 1, 64), std::invalid_argument);
}

TEST_CASE("compute_term against a naive summand") {
  const std::uint64_t n = 2500;
  const long bits = 512;
  for (std::uint64_t k = 1; k <= 50; k += 2) {
    const TermPlan plan = akt_multiplicative(k, n);
    const ComplexReal a = akt_direct(k, n, bits);
    if (plan.is_zero) {
      CHECK(std::fabs(a.re.to_double()) < 1e-15);
      CHECK_THROWS_AS(compute_term(n, plan, 64), std::invalid_argument);
      continue;
    }
    // (1/4n)(1/sqrt k) A~_k(n) U(pi sqrt(n)/k) straight from mpfr.
    oracle::Real x(bits), u(bits), t(bits), s(bits);
    mpfr_const_pi(x.v, MPFR_RNDN);
    mpfr_mul_ui(x.v, x.v, 50, MPFR_RNDN);
    mpfr_div_ui(x.v, x.v, k, MPFR_RNDN);
    oracle::u_naive(u.v, x.v, bits);
    mpfr_sqrt_ui(s.v, k, MPFR_RNDN);
    mpfr_div(t.v, a.re.get(), s.v, MPFR_RNDN);
    mpfr_mul(t.v, t.v, u.v, MPFR_RNDN);
    mpfr_div_ui(t.v, t.v, 4 * n, MPFR_RNDN);
    const PrecisionReal mine = compute_term(n, plan, term_precision(n, k, plan.m_k()));
    oracle::Real diff(bits);
    mpfr_sub(diff.v, mine.get(), t.v, MPFR_RNDN);
    CHECK(std::fabs(diff.d()) < 1.0 / (4 * 50));  // 1/(4N), N = 50
  }
}

TEST_CASE("leading term follows e^{pi sqrt n}/(8n)") {
  for (std::uint64_t n : {10'000u, 1'000'000u}) {
    const PrecisionReal t1 = compute_term(n, akt_multiplicative(1, n), term_precision(n, 1, 0));
    PrecisionReal c = mul(pi(200), sqrt_uint(n, 200), 200);
    const PrecisionReal ratio = mul(t1, exp(-c, 6000), 6000);
    const double r = ratio.to_double() * 8.0 * static_cast<double>(n);
    CHECK(std::fabs(r - 1) < 2.0 / (M_PI * std::sqrt(static_cast<double>(n))));
  }
}

TEST_CASE("overpartition_exact small and boundary") {
  CHECK(overpartition_exact(0) == 1);
  CHECK(overpartition_exact(4) == 14);
  CHECK(overpartition_exact_detailed(2000).from_recursion);
  CHECK_FALSE(overpartition_exact_detailed(2001).from_recursion);
  const auto table = recursion_table(2100);
  for (std::uint64_t n = 2001; n <= 2100; ++n) {
    const ExactEvaluation e = overpartition_exact_detailed(n);
    REQUIRE(e.value == table[n]);
    REQUIRE(e.rounding_distance < kRoundingMarginLimit);
    REQUIRE(e.odd_terms == (ceil_sqrt(n) + 1) / 2);
    REQUIRE(e.nonzero_terms <= e.odd_terms);
  }
}

TEST_CASE("exact path is reproducible across worker counts") {
  for (std::uint64_t n : {123'457u, 1'000'000u}) {
    const ExactEvaluation one = overpartition_exact_detailed(n, {1, kGuardBits});
    const ExactEvaluation three = overpartition_exact_detailed(n, {3, kGuardBits});
    CHECK(one.value == three.value);
    CHECK(one.rounding_distance == three.rounding_distance);
    CHECK(mpz_even_p(one.value.get_mpz_t()));
    CHECK(overpartition_mod(n, 27, {3, kGuardBits}) == mpz_fdiv_ui(one.value.get_mpz_t(), 27));
  }
}

TEST_CASE("sparsity of non-zero terms") {
  const ExactEvaluation e = overpartition_exact_detailed(1'000'000);
  CHECK(static_cast<double>(e.nonzero_terms) / static_cast<double>(e.odd_terms) < 0.75);
}

TEST_CASE("ModularAccumulator carry is strict") {
  ModularAccumulator acc(7);
  acc.add_split(3, 0.5);
  acc.add_split(0, 0.5);
  CHECK(acc.carry() == 1.0);  // b reaches exactly 1 without carrying
  CHECK(acc.partial() == 3);
  acc.add_split(13, 0.25);
  CHECK(acc.carry() == doctest::Approx(0.25));
  CHECK(acc.partial() == (3 + 13 + 1) % 14);
  CHECK(acc.finish() == 4);  // 3 -> odd, repaired to 4
  CHECK_THROWS_AS(ModularAccumulator(8), std::invalid_argument);
  CHECK_THROWS_AS(ModularAccumulator(1), std::invalid_argument);
}

TEST_CASE("ModularAccumulator folds whole terms") {
  ModularAccumulator acc(5);
  acc.add_term(PrecisionReal(64, 12.75));
  acc.add_term(PrecisionReal(64, -3.5));  // floor -4, fraction 0.5, carry
  CHECK(acc.partial() == (12 + (10 - 4) + 1) % 10);
  CHECK(acc.carry() == doctest::Approx(0.25));
}

TEST_CASE("overpartition_mod") {
  CHECK(overpartition_mod(4, 7) == 0);
  CHECK(overpartition_mod(0, 3) == 1);
  CHECK_THROWS_AS(overpartition_mod(5000, 4), std::invalid_argument);
  CHECK_THROWS_AS(overpartition_mod(10, 2), std::invalid_argument);
  const auto table = recursion_table(2300);
  for (std::uint64_t n = 2001; n <= 2300; n += 3) {
    for (std::uint64_t m : {3u, 9u, 27u, 5u, 25u, 7u, 1001u}) {
      REQUIRE(overpartition_mod(n, m) == mpz_fdiv_ui(table[n].get_mpz_t(), m));
    }
  }
}

TEST_CASE("guard bits beyond the default change nothing at hunt scale") {
  for (std::uint64_t n : {47ULL * 47 * 2, 7ULL * 2207 * 2207, 431ULL * 2591 * 2591}) {
    CHECK(overpartition_mod(n, 27, {1, kGuardBits}) == overpartition_mod(n, 27, {1, 60}));
  }
}
