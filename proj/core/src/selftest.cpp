#include "pbar/selftest.hpp"

#include <cmath>
#include <exception>
#include <numeric>
#include <random>
#include <sstream>

#include "pbar/akt.hpp"
#include "pbar/hrr.hpp"
#include "pbar/numtheory.hpp"
#include "pbar/recurrence.hpp"

namespace pbar {

namespace {

constexpr long kOracleBits = 64;
constexpr double kOracleTolerance = 1e-9;

// Collects cases for one property and keeps the first failure message.
class Tally {
 public:
  Tally(std::string module, std::string name) {
    result_.module = std::move(module);
    result_.name = std::move(name);
  }

  void check(bool ok, const std::function<std::string()>& describe) {
    ++result_.cases;
    if (ok) return;
    if (result_.failures++ == 0) result_.first_failure = describe();
  }

  PropertyResult done() { return std::move(result_); }

 private:
  PropertyResult result_;
};

template <typename... Parts>
std::string cat(const Parts&... parts) {
  std::ostringstream os;
  (os << ... << parts);
  return os.str();
}

PropertyResult parity(const SelftestOptions&) {
  Tally t("recurrence", "pbar(n) is even for 1 <= n <= 4000");
  const auto table = cached_recursion_table(4000);
  for (std::size_t n = 1; n <= 4000; ++n) {
    t.check(mpz_even_p((*table)[n].get_mpz_t()) != 0, [&] { return cat("pbar(", n, ") is odd"); });
  }
  return t.done();
}

PropertyResult recursion_vs_product(const SelftestOptions&) {
  Tally t("recurrence", "recursion table equals product expansion on 0..500");
  const OverpartitionTable a = recursion_table(500);
  const OverpartitionTable b = product_expansion_table(500);
  for (std::size_t n = 0; n <= 500; ++n) {
    t.check(a[n] == b[n], [&] { return cat("n=", n, ": ", a[n].get_str(), " vs ", b[n].get_str()); });
  }
  return t.done();
}

PropertyResult convolution_identity(const SelftestOptions&) {
  Tally t("recurrence", "theta coefficients invert the generating function up to 500");
  const OverpartitionTable p = recursion_table(500);
  const std::vector<int> b = theta_coefficients(500);
  for (std::size_t n = 0; n <= 500; ++n) {
    mpz_class c = 0;
    for (std::size_t k = 0; k <= n; ++k) {
      if (b[k] != 0) c += p[n - k] * b[k];
    }
    t.check(c == (n == 0 ? 1 : 0), [&] { return cat("coefficient ", n, " is ", c.get_str()); });
  }
  return t.done();
}

PropertyResult dedekind_properties(const SelftestOptions&) {
  Tally t("numtheory", "Dedekind sums: 6k s integral, 12k s mod 8, periodicity in h (odd k <= 60)");
  for (std::int64_t k = 1; k <= 60; k += 2) {
    for (std::int64_t h = 1; h < k || (k == 1 && h == 1); ++h) {
      if (std::gcd(h, k) != 1) continue;
      const Rational s = dedekind_sum(h, k);
      const Rational six_k = Rational(6 * k) * s;
      t.check(six_k.den() == 1, [&] { return cat("6k s(", h, ",", k, ") = ", six_k); });
      const Rational twelve_k = Rational(12 * k) * s;
      const std::int64_t expected = reduce_mod(k + 1 - 2 * jacobi(h, k), 8);
      t.check(twelve_k.den() == 1 && reduce_mod(twelve_k.num(), 8) == static_cast<std::uint64_t>(expected),
              [&] { return cat("12k s(", h, ",", k, ") = ", twelve_k, ", expected ", expected, " mod 8"); });
      for (std::int64_t shift : {k, 3 * k, -k}) {
        t.check(dedekind_sum(h + shift, k) == s,
                [&] { return cat("s(", h + shift, ",", k, ") != s(", h, ",", k, ")"); });
      }
    }
  }
  return t.done();
}

PropertyResult crt_reduction(const SelftestOptions& opt) {
  Tally t("numtheory", "crt_pair output reduces to both residues");
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<std::uint64_t> mod(1, 1'000'000);
  int done = 0;
  while (done < 500) {
    const std::uint64_t m1 = mod(rng), m2 = mod(rng);
    if (std::gcd(m1, m2) != 1) continue;
    const std::uint64_t r1 = rng() % m1, r2 = rng() % m2;
    const std::uint64_t x = crt_pair(r1, m1, r2, m2);
    t.check(x < m1 * m2 && x % m1 == r1 && x % m2 == r2,
            [&] { return cat("crt(", r1, ",", m1, ",", r2, ",", m2, ") = ", x); });
    ++done;
  }
  return t.done();
}

PropertyResult sqrt_mod(const SelftestOptions&) {
  Tally t("numtheory", "square roots mod p^alpha square back; absent iff Euler's criterion is -1");
  for (std::uint64_t p = 3; p < 60; p += 2) {
    if (!is_prime(p)) continue;
    for (unsigned alpha = 1; alpha <= 3; ++alpha) {
      std::uint64_t q = 1;
      for (unsigned e = 0; e < alpha; ++e) q *= p;
      for (std::uint64_t a = 1; a < q; ++a) {
        if (a % p == 0) continue;
        const auto s = sqrt_mod_prime_power(static_cast<std::int64_t>(a), p, alpha);
        const bool residue = pow_mod(a % p, (p - 1) / 2, p) == 1;
        t.check(s.has_value() == residue && (!s || mul_mod(*s, *s, q) == a),
                [&] { return cat("sqrt(", a, ") mod ", p, "^", alpha); });
      }
    }
  }
  return t.done();
}

PropertyResult three_way_agreement(const SelftestOptions&) {
  Tally t("akt", "multiplicative, direct and Salie values agree (odd k <= 99, n <= 60)");
  for (std::uint64_t k = 1; k <= 99; k += 2) {
    for (std::uint64_t n = 1; n <= 60; ++n) {
      const ComplexReal fast(akt_multiplicative(k, n).value(kOracleBits), PrecisionReal(kOracleBits));
      const ComplexReal direct = akt_direct(k, n, kOracleBits);
      const ComplexReal salie = akt_salie_oracle(k, n, kOracleBits);
      const double d1 = fast.abs_diff(direct), d2 = direct.abs_diff(salie);
      t.check(d1 < kOracleTolerance && d2 < kOracleTolerance,
              [&] { return cat("k=", k, " n=", n, ": |fast-direct|=", d1, " |direct-salie|=", d2); });
    }
  }
  return t.done();
}

PropertyResult multiplicativity(const SelftestOptions&) {
  Tally t("akt", "A~_{k1 k2}(n) = A~_{k1}(n1) A~_{k2}(n2) (coprime odd k1 < k2 <= 45, n <= 30)");
  for (std::uint64_t k1 = 3; k1 <= 45; k1 += 2) {
    for (std::uint64_t k2 = k1 + 2; k2 <= 45; k2 += 2) {
      if (std::gcd(k1, k2) != 1) continue;
      const std::uint64_t inv2 = *inverse_mod(static_cast<std::int64_t>(mul_mod(k2, k2, k1)), k1);
      const std::uint64_t inv1 = *inverse_mod(static_cast<std::int64_t>(mul_mod(k1, k1, k2)), k2);
      for (std::uint64_t n = 1; n <= 30; ++n) {
        const std::uint64_t n1 = mul_mod(n % k1, inv2, k1);
        const std::uint64_t n2 = mul_mod(n % k2, inv1, k2);
        const ComplexReal whole = akt_salie_oracle(k1 * k2, n, kOracleBits);
        const ComplexReal parts = akt_direct(k1, n1, kOracleBits) * akt_direct(k2, n2, kOracleBits);
        const double d = whole.abs_diff(parts);
        t.check(d < kOracleTolerance,
                [&] { return cat("k1=", k1, " k2=", k2, " n=", n, ": difference ", d); });
      }
    }
  }
  return t.done();
}

PropertyResult root_choice(const SelftestOptions& opt) {
  Tally t("akt", "cosine case is independent of the square root chosen");
  std::mt19937_64 rng(opt.seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<std::uint64_t> prime_pick(3, 400);
  std::uniform_int_distribution<unsigned> alpha_pick(1, 3);
  int done = 0;
  while (done < 100) {
    const std::uint64_t p = prime_pick(rng);
    if (!is_prime(p)) continue;
    const unsigned alpha = alpha_pick(rng);
    std::uint64_t q = 1;
    for (unsigned e = 0; e < alpha; ++e) q *= p;
    const std::uint64_t n = 1 + rng() % (10 * q);
    const PrimePowerValue v = akt_prime_power(p, alpha, n);
    if (v.kind != PrimePowerKind::Cosine) continue;
    PrimePowerValue other = v;
    other.theta = (q - v.theta) % q;
    const double a = v.value(kOracleBits).to_double();
    const double b = other.value(kOracleBits).to_double();
    t.check(std::fabs(a - b) < kOracleTolerance,
            [&] { return cat("q=", q, " n=", n, ": ", a, " vs ", b); });
    ++done;
  }
  return t.done();
}

PropertyResult truncation_safety(const SelftestOptions&) {
  Tally t("hrr", "error bound at N = ceil(sqrt n) stays below 1/4 for 785 <= n <= 5000");
  const PrecisionReal quarter(64, 0.25);
  for (std::uint64_t n = 785; n <= 5000; ++n) {
    const PrecisionReal m = error_bound(n, ceil_sqrt(n), 64);
    t.check(m < quarter, [&] { return cat("M(", n, ") = ", m.to_double()); });
  }
  return t.done();
}

PropertyResult exact_path(const SelftestOptions& opt) {
  Tally t("hrr", "exact series matches the recursion with rounding margin < 0.26 (2001..4000)");
  const auto table = cached_recursion_table(4000);
  const EvalOptions eval{opt.workers, kGuardBits};
  for (std::uint64_t n = 2001; n <= 4000; ++n) {
    try {
      const ExactEvaluation e = overpartition_exact_detailed(n, eval);
      t.check(e.value == (*table)[n] && e.rounding_distance < kRoundingMarginLimit,
              [&] { return cat("n=", n, ": distance ", e.rounding_distance, ", value ",
                               e.value == (*table)[n] ? "matches" : "differs"); });
    } catch (const std::exception& ex) {
      t.check(false, [&] { return cat("n=", n, ": ", ex.what()); });
    }
  }
  return t.done();
}

PropertyResult mod_path(const SelftestOptions& opt) {
  Tally t("hrr", "modular series matches the recursion mod 3, 25, 7 (2001..2200)");
  const auto table = cached_recursion_table(2200);
  const EvalOptions eval{opt.workers, kGuardBits};
  for (std::uint64_t n = 2001; n <= 2200; ++n) {
    for (std::uint64_t m : {3u, 25u, 7u}) {
      const std::uint64_t got = overpartition_mod(n, m, eval);
      const std::uint64_t want = mpz_fdiv_ui((*table)[n].get_mpz_t(), m);
      t.check(got == want, [&] { return cat("n=", n, " m=", m, ": ", got, " vs ", want); });
    }
  }
  return t.done();
}

}  // namespace

const std::vector<PropertyCheck>& selftest_properties() {
  static const std::vector<PropertyCheck> all = {
      {"numtheory", "dedekind", dedekind_properties},
      {"numtheory", "crt", crt_reduction},
      {"numtheory", "sqrt", sqrt_mod},
      {"recurrence", "parity", parity},
      {"recurrence", "dual-oracle", recursion_vs_product},
      {"recurrence", "convolution", convolution_identity},
      {"akt", "three-way", three_way_agreement},
      {"akt", "multiplicativity", multiplicativity},
      {"akt", "root-choice", root_choice},
      {"hrr", "truncation", truncation_safety},
      {"hrr", "exact", exact_path},
      {"hrr", "modular", mod_path},
  };
  return all;
}

std::vector<PropertyResult> run_selftest(const SelftestOptions& options,
                                         const std::function<void(const PropertyResult&)>& on_result) {
  std::vector<PropertyResult> out;
  for (const PropertyCheck& p : selftest_properties()) {
    PropertyResult r;
    try {
      r = p.run(options);
    } catch (const std::exception& ex) {
      r.module = p.module;
      r.name = p.name;
      r.cases = 1;
      r.failures = 1;
      r.first_failure = cat("threw: ", ex.what());
    }
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace pbar
