#include <doctest.h>

#include "oracles.hpp"
#include "pbar/congruence.hpp"
#include "pbar/recurrence.hpp"

using namespace pbar;

TEST_CASE("k_ell") {
  CHECK(k_ell(3) == 24);
  CHECK(k_ell(5) == 24);
  CHECK(k_ell(7) == 48);
  CHECK(k_ell(11) == 120);
  CHECK_THROWS_AS(k_ell(2), std::invalid_argument);
  CHECK_THROWS_AS(k_ell(9), std::invalid_argument);
}

TEST_CASE("f_c_ell") {
  CHECK(f_c_ell(16, 3) == Rational(10));
  CHECK(f_c_ell(12, 3) == Rational(1));
  CHECK(f_c_ell(7, 7) == Rational(32));
  CHECK(f_c_ell(1, 3) == Rational(160));
  CHECK(f_c_ell(2, 5) == Rational(4 * 624, 24));
  CHECK_THROWS_AS(f_c_ell(9, 3), std::invalid_argument);   // ell^2 | c
  CHECK_THROWS_AS(f_c_ell(5, 3), std::invalid_argument);   // not a divisor
  CHECK_THROWS_AS(f_c_ell(0, 3), std::invalid_argument);
}

TEST_CASE("beta_for") {
  CHECK(beta_for(3, 1) == 0);
  CHECK(beta_for(7, 1) == 0);
  CHECK(beta_for(3, 3) == 2);
  CHECK(beta_for(5, 2) == 1);
  // Every f is at least 1 for ell = 3 and 7, so beta is j - 1 throughout.
  for (std::uint64_t ell : {3u, 5u, 7u, 11u}) {
    for (std::uint64_t c = 1; c <= 16 * ell * ell; ++c) {
      if ((16 * ell * ell) % c != 0 || c % (ell * ell) == 0) continue;
      CHECK(f_c_ell(c, ell) >= Rational(1));
    }
  }
}

TEST_CASE("candidates") {
  CHECK(candidates(3, 1, 100) == std::vector<std::uint64_t>{47});
  CHECK(candidates(3, 1, 40).empty());
  // 223 = 2 * 112 - 1 is prime, so it precedes 1231.
  CHECK(candidates(7, 1, 1300) == std::vector<std::uint64_t>{223, 1231});
  CHECK(candidates(7, 1, 1230) == std::vector<std::uint64_t>{223});
  CHECK(candidates(5, 2, 399).empty());
  CHECK(candidates(5, 2, 2000) == std::vector<std::uint64_t>{1999});
  for (std::uint64_t q : candidates(3, 3, 100000)) {
    CHECK(oracle::is_prime_trial(q));
    CHECK((q + 1) % (16 * 27) == 0);
  }
  // Scan oracle.
  std::vector<std::uint64_t> scan;
  for (std::uint64_t q = 2; q <= 10000; ++q) {
    if (oracle::is_prime_trial(q) && (q + 1) % 48 == 0) scan.push_back(q);
  }
  CHECK(candidates(3, 1, 10000) == scan);
}

TEST_CASE("parameters") {
  const CongruenceParams a = CongruenceParams::make(3, 1, 47);
  CHECK(a.kappa == 23);
  CHECK(a.delta == -1);  // (kappa - 1)/2 = 11
  CHECK(a.n0 == 47);
  CHECK(a.modulus == 3);
  const CongruenceParams b = CongruenceParams::make(7, 1, 1231);
  CHECK(b.kappa == 47);
  CHECK(b.delta == -1);
  CHECK(b.n0 == 189);
  const CongruenceParams c = CongruenceParams::make(3, 3, 2591);
  CHECK(c.beta == 2);
  CHECK(c.kappa == 215);
  CHECK(c.delta == -1);
  CHECK(c.n0 == 431);
  CHECK_THROWS_AS(CongruenceParams::make(3, 1, 53), std::invalid_argument);
  CHECK_THROWS_AS(CongruenceParams::make(3, 1, 95), std::invalid_argument);  // 95 = 5 * 19
  CHECK_THROWS_AS(CongruenceParams::make(4, 1, 47), std::invalid_argument);
}

TEST_CASE("hunt indices") {
  for (auto [ell, j, q] : {std::tuple<std::uint64_t, unsigned, std::uint64_t>{3, 1, 47}, {7, 1, 1231},
                           {3, 3, 2591}}) {
    const CongruenceParams p = CongruenceParams::make(ell, j, q);
    const auto idx = hunt_indices(p);
    REQUIRE_FALSE(idx.empty());
    const double expected = static_cast<double>(p.n0) * static_cast<double>(ell - 1) / (2.0 * ell);
    CHECK(std::fabs(static_cast<double>(idx.size()) - expected) <= static_cast<double>(ell));
    for (auto n : idx) CHECK(oracle::legendre(-static_cast<std::int64_t>(n), ell) == -1);
  }
}

TEST_CASE("hunt reproduces known candidates") {
  const HuntRecord a = hunt(3, 1, 47);
  CHECK(a.interesting);
  CHECK_FALSE(a.witness_n.has_value());
  CHECK(a.checked_terms == 16);
  CHECK(a.n0 == 47);
  CHECK(a.kappa == 23);
  CHECK(hunt(3, 1, 47) == a);

  const HuntRecord b = hunt(7, 1, 1231);
  CHECK(b.interesting);
  CHECK(b.checked_terms == hunt_indices(CongruenceParams::make(7, 1, 1231)).size());
  CHECK_THROWS_AS(hunt(3, 1, 53), std::invalid_argument);
}

TEST_CASE("hunt on non-interesting candidates records the first witness") {
  for (auto [ell, j, q] : {std::tuple<std::uint64_t, unsigned, std::uint64_t>{7, 1, 223}, {3, 3, 431},
                           {3, 3, 863}}) {
    const HuntRecord r = hunt(ell, j, q);
    CHECK_FALSE(r.interesting);
    REQUIRE(r.witness_n.has_value());
    const std::uint64_t n = *r.witness_n;
    CHECK(n <= r.n0);
    CHECK(oracle::legendre(-static_cast<std::int64_t>(n), ell) == -1);
    // Early exit: the witness is the last index examined.
    const auto idx = hunt_indices(CongruenceParams::make(ell, j, q));
    CHECK(idx[r.checked_terms - 1] == n);
    CHECK(hunt(ell, j, q) == r);
  }
}

TEST_CASE("samples") {
  CHECK(valid_samples(3, 47, 5) == std::vector<std::uint64_t>{2, 5, 8, 11, 14});
  CHECK(valid_samples(7, 1231, 3) == std::vector<std::uint64_t>{3, 5, 6});
  CHECK_FALSE(sample_problem(3, 47, 17).has_value());
  CHECK(sample_problem(3, 47, 4).has_value());   // residue
  CHECK(sample_problem(3, 47, 3).has_value());   // divisible by ell
  CHECK(sample_problem(3, 47, 47 * 2).has_value());  // divisible by Q
  CHECK(sample_problem(3, 47, 0).has_value());
}

TEST_CASE("verify_congruence") {
  const std::vector<std::uint64_t> s = {2, 5, 11, 17, 23};
  const VerifyReport r = verify_congruence(3, 1, 47, s);
  CHECK(r.all_hold());
  REQUIRE(r.checks.size() == 5);
  CHECK(r.checks[0].argument == 47ULL * 47 * 47 * 2);
  const std::vector<std::uint64_t> bad = {2, 4};
  CHECK_THROWS_AS(verify_congruence(3, 1, 47, bad), std::invalid_argument);
  CHECK_THROWS_AS(verify_congruence(3, 1, 53, s), std::invalid_argument);
}
