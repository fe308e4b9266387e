// One PASS/FAIL line per acceptance criterion. Exit status is non-zero when
// any criterion fails. Runtime limits are part of each criterion.

#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "pbar/akt.hpp"
#include "pbar/congruence.hpp"
#include "pbar/hrr.hpp"
#include "pbar/recurrence.hpp"
#include "pbar/selftest.hpp"

using namespace pbar;

namespace {

// Tolerances and limits.
constexpr double kC1Seconds = 1.0;
constexpr double kC2Seconds = 120.0;
constexpr double kC3Seconds = 120.0;
constexpr long kC4Bits = 64;
constexpr double kC4Tolerance = 1e-9;
constexpr double kC5TailLimit = 0.25;
constexpr double kC5RatioLow = 0.95;
constexpr double kC5RatioHigh = 1.05;
constexpr double kC6Low = 0.999;
constexpr double kC6High = 1.001;
constexpr double kC6Seconds = 60.0;
constexpr double kC7Seconds = 30.0 * 60.0;
constexpr std::uint64_t kC7QLimit = 10'000;

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

template <typename... Parts>
std::string cat(const Parts&... parts) {
  std::ostringstream os;
  (os << ... << parts);
  return os.str();
}

void fail(Outcome& o, const std::string& why) {
  if (o.pass) o.detail = why;
  o.pass = false;
}

void time_limit(Outcome& o, const Stopwatch& w, double limit) {
  const double s = w.seconds();
  if (s >= limit) fail(o, cat("took ", s, " s, limit ", limit, " s"));
}

Outcome small_scale() {
  Stopwatch w;
  Outcome o;
  if (overpartition_exact(4) != 14) fail(o, "pbar(4) != 14");
  if (recursion_table(500) != product_expansion_table(500)) fail(o, "tables differ on 0..500");
  time_limit(o, w, kC1Seconds);
  if (o.pass) o.detail = cat("pbar(4) = 14, tables agree on 0..500, ", w.seconds(), " s");
  return o;
}

Outcome series_vs_recursion() {
  Stopwatch w;
  Outcome o;
  const auto table = recursion_table(4000);
  const EvalOptions eval{workers(), kGuardBits};
  for (std::uint64_t n = 2001; n <= 4000; ++n) {
    if (overpartition_exact(n, eval) != table[n]) {
      fail(o, cat("mismatch at n=", n));
      break;
    }
  }
  time_limit(o, w, kC2Seconds);
  if (o.pass) o.detail = cat("2000 values identical, ", w.seconds(), " s");
  return o;
}

Outcome modular_vs_exact() {
  Stopwatch w;
  Outcome o;
  const EvalOptions eval{workers(), kGuardBits};
  std::size_t checks = 0;
  for (std::uint64_t n = 2001; n <= 3000 && o.pass; ++n) {
    const mpz_class exact = overpartition_exact(n, eval);
    for (std::uint64_t m : {3u, 9u, 27u, 5u, 25u, 7u}) {
      ++checks;
      if (overpartition_mod(n, m, eval) != mpz_fdiv_ui(exact.get_mpz_t(), m)) {
        fail(o, cat("mismatch at n=", n, " m=", m));
        break;
      }
    }
  }
  time_limit(o, w, kC3Seconds);
  if (o.pass) o.detail = cat(checks, " residues identical, ", w.seconds(), " s");
  return o;
}

Outcome three_way() {
  Outcome o;
  double worst1 = 0, worst2 = 0;
  for (std::uint64_t k = 1; k <= 99 && o.pass; k += 2) {
    for (std::uint64_t n = 1; n <= 60; ++n) {
      const ComplexReal fast(akt_multiplicative(k, n).value(kC4Bits), PrecisionReal(kC4Bits));
      const ComplexReal direct = akt_direct(k, n, kC4Bits);
      const ComplexReal salie = akt_salie_oracle(k, n, kC4Bits);
      const double d1 = fast.abs_diff(direct), d2 = direct.abs_diff(salie);
      worst1 = std::max(worst1, d1);
      worst2 = std::max(worst2, d2);
      if (!(d1 < kC4Tolerance && d2 < kC4Tolerance)) {
        fail(o, cat("k=", k, " n=", n, " differences ", d1, ", ", d2));
        break;
      }
    }
  }
  if (o.pass) o.detail = cat("max |fast-direct| = ", worst1, ", max |direct-salie| = ", worst2);
  return o;
}

Outcome error_bound_behaviour() {
  Outcome o;
  std::ostringstream detail;
  for (std::uint64_t n : {785ULL, 1000ULL, 2001ULL, 10'000ULL, 1'000'000ULL}) {
    const double m = error_bound(n, ceil_sqrt(n), 128).to_double();
    detail << "M(" << n << ")=" << m << " ";
    if (!(m < kC5TailLimit)) fail(o, cat("M(", n, ", ceil sqrt n) = ", m));
  }
  for (std::uint64_t N : {10'000ULL, 100'000ULL, 1'000'000ULL}) {
    const double m = error_bound(1'000'000, N, 256).to_double();
    const double ratio = m * 12.0 / (M_PI * M_PI) * std::sqrt(static_cast<double>(N + 1));
    detail << "ratio(N=" << N << ")=" << ratio << " ";
    if (!(ratio >= kC5RatioLow && ratio <= kC5RatioHigh)) fail(o, cat("ratio at N=", N, " is ", ratio));
  }
  if (o.pass) o.detail = detail.str();
  return o;
}

Outcome growth() {
  Stopwatch w;
  Outcome o;
  const mpz_class v = overpartition_exact(1'000'000, {workers(), kGuardBits});
  const long bits = 6000;
  PrecisionReal scaled(bits, v);
  mpfr_mul_ui(scaled.raw(), scaled.get(), 8'000'000, MPFR_RNDN);
  PrecisionReal e = pi(bits);
  mpfr_mul_ui(e.raw(), e.get(), 1000, MPFR_RNDN);
  const double ratio = mul(scaled, exp(-e, bits), bits).to_double();
  if (!(ratio >= kC6Low && ratio <= kC6High)) fail(o, cat("ratio ", ratio));
  time_limit(o, w, kC6Seconds);
  if (o.pass) o.detail = cat("pbar(10^6) 8 10^6 e^{-1000 pi} = ", ratio, ", ", w.seconds(), " s");
  return o;
}

Outcome congruences() {
  Stopwatch w;
  Outcome o;
  const std::vector<std::uint64_t> qs = candidates(3, 1, kC7QLimit - 1);
  std::vector<HuntRecord> records(qs.size());
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers(); ++t) {
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < qs.size();) records[i] = hunt(3, 1, qs[i]);
      });
    }
  }
  for (const HuntRecord& r : records) {
    if (!r.interesting) fail(o, cat("hunt(3,1,", r.q, ") failed at n=", *r.witness_n));
  }
  const HuntRecord seven = hunt(7, 1, 1231, {workers(), kGuardBits});
  if (!seven.interesting) fail(o, "hunt(7,1,1231) is not interesting");
  const auto samples = valid_samples(7, 1231, 3);
  const VerifyReport report = verify_congruence(7, 1, 1231, samples, {workers(), kGuardBits});
  if (!report.all_hold()) fail(o, cat("verify(7,1,1231) fails at n=", report.first_failure()->n));
  const HuntRecord nine = hunt(3, 3, 2591, {workers(), kGuardBits});
  if (!nine.interesting) fail(o, "hunt(3,3,2591) is not interesting");
  time_limit(o, w, kC7Seconds);
  if (o.pass) {
    o.detail = cat(qs.size(), " candidates for (3,1) below ", kC7QLimit,
                   " interesting; (7,1,1231) interesting and verified on 3 samples; (3,3,2591) interesting; ",
                   w.seconds(), " s");
  }
  return o;
}

Outcome property_suite() {
  Outcome o;
  SelftestOptions options;
  options.workers = workers();
  std::size_t n = 0;
  for (const PropertyResult& r : run_selftest(options)) {
    ++n;
    if (!r.passed()) fail(o, cat("[", r.module, "] ", r.name, ": ", r.first_failure));
  }
  if (o.pass) o.detail = cat(n, " properties, zero failures");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"exactness at small scale", small_scale},
      {"series equals recursion on 2001..4000", series_vs_recursion},
      {"modular engine equals exact residues", modular_vs_exact},
      {"exponential sum three-way agreement", three_way},
      {"truncation bound behaviour", error_bound_behaviour},
      {"growth law at 10^6", growth},
      {"congruence reproduction", congruences},
      {"property suite", property_suite},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = cat("threw: ", e.what());
    }
    failures += !o.pass;
    std::cout << "criterion " << index << " [" << name << "]: " << (o.pass ? "PASS" : "FAIL") << " - "
              << o.detail << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria pass" : cat(failures, " criteria failed")) << std::endl;
  return failures == 0 ? 0 : 1;
}
