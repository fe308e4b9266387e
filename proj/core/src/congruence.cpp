#include "pbar/congruence.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "pbar/recurrence.hpp"

namespace pbar {

namespace {

void require_odd_prime(std::uint64_t ell) {
  if (ell < 3 || !is_prime(ell)) {
    throw std::invalid_argument("ell must be an odd prime, got " + std::to_string(ell));
  }
}

std::uint64_t checked_pow(std::uint64_t base, unsigned e) {
  unsigned __int128 v = 1;
  for (unsigned i = 0; i < e; ++i) {
    v *= base;
    if (v > UINT64_MAX) throw std::overflow_error("power exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(v);
}

std::uint64_t residue(const mpz_class& v, std::uint64_t m) {
  return mpz_fdiv_ui(v.get_mpz_t(), m);
}

}  // namespace

std::uint64_t k_ell(std::uint64_t ell) {
  require_odd_prime(ell);
  return ell == 3 ? 24 : ell * ell - 1;
}

Rational f_c_ell(std::uint64_t c, std::uint64_t ell) {
  require_odd_prime(ell);
  const std::uint64_t level = 16 * ell * ell;
  if (c == 0 || level % c != 0 || c % (ell * ell) == 0) {
    throw std::invalid_argument("c=" + std::to_string(c) + " is not an admissible divisor of " +
                                std::to_string(level));
  }
  const auto prefactor = static_cast<std::int64_t>(16 / std::gcd(c * c, std::uint64_t{16}));
  const bool ell_divides = c % ell == 0;
  const auto l = static_cast<std::int64_t>(ell);
  Rational tail;
  if (ell == 3) {
    tail = Rational(ell_divides ? 1 : 10);
  } else if (ell_divides) {
    tail = Rational(l * l - 1, 24);
  } else {
    tail = Rational(l * l * l * l - 1, 24);
  }
  return Rational(prefactor) * tail;
}

int beta_for(std::uint64_t ell, unsigned j) {
  require_odd_prime(ell);
  if (j == 0) throw std::invalid_argument("j must be at least 1");
  int beta = static_cast<int>(j) - 1;
  const std::uint64_t level = 16 * ell * ell;
  const Rational one(1);
  for (std::uint64_t c = 1; c <= level; ++c) {
    if (level % c != 0 || c % (ell * ell) == 0) continue;
    // ceil(-log_ell f) is the least b with ell^b f >= 1; only b >= 0 can
    // beat j - 1.
    Rational scaled = f_c_ell(c, ell);
    int b = 0;
    while (scaled < one) {
      scaled = scaled * Rational(static_cast<std::int64_t>(ell));
      ++b;
    }
    beta = std::max(beta, b);
  }
  return beta;
}

std::vector<std::uint64_t> candidates(std::uint64_t ell, unsigned j, std::uint64_t q_max) {
  require_odd_prime(ell);
  if (j == 0) throw std::invalid_argument("j must be at least 1");
  const std::uint64_t step = 16 * checked_pow(ell, j);
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = step - 1; q <= q_max; q += step) {
    if (is_prime(q)) out.push_back(q);
    if (q > UINT64_MAX - step) break;
  }
  return out;
}

CongruenceParams CongruenceParams::make(std::uint64_t ell, unsigned j, std::uint64_t q) {
  require_odd_prime(ell);
  if (j == 0) throw std::invalid_argument("j must be at least 1");
  CongruenceParams p;
  p.ell = ell;
  p.j = j;
  p.q = q;
  p.modulus = checked_pow(ell, j);
  if (!is_prime(q) || (q + 1) % (16 * p.modulus) != 0) {
    throw std::invalid_argument("Q=" + std::to_string(q) + " is not a candidate for ell=" +
                                std::to_string(ell) + ", j=" + std::to_string(j) +
                                " (need a prime = -1 mod " + std::to_string(16 * p.modulus) + ")");
  }
  p.beta = beta_for(ell, j);
  p.kappa = checked_pow(ell, static_cast<unsigned>(p.beta)) * k_ell(ell) - 1;
  if (p.kappa % 2 == 0 || p.kappa < 23) throw std::logic_error("kappa must be odd and >= 23");
  p.delta = ((p.kappa - 1) / 2) % 2 == 0 ? 1 : -1;
  p.n0 = p.kappa * (ell + 1) / 2 + 1;
  return p;
}

std::vector<std::uint64_t> hunt_indices(const CongruenceParams& params) {
  std::vector<std::uint64_t> out;
  const auto ell = static_cast<std::int64_t>(params.ell);
  for (std::uint64_t n = 1; n <= params.n0; ++n) {
    if (jacobi(-static_cast<std::int64_t>(n), ell) == -1) out.push_back(n);
  }
  if (out.empty()) throw std::logic_error("no admissible n below the Sturm bound");
  return out;
}

HuntRecord hunt(std::uint64_t ell, unsigned j, std::uint64_t q, const EvalOptions& options) {
  const CongruenceParams params = CongruenceParams::make(ell, j, q);
  // pbar(n / Q^2) vanishes for every tested n only while n0 < Q^2.
  if (static_cast<unsigned __int128>(params.n0) >= static_cast<unsigned __int128>(q) * q) {
    throw std::logic_error("Sturm bound reaches Q^2; the pbar(n/Q^2) term is no longer zero");
  }
  HuntRecord rec;
  rec.ell = ell;
  rec.j = j;
  rec.q = q;
  rec.n0 = params.n0;
  rec.kappa = params.kappa;

  const std::uint64_t m = params.modulus;
  const auto table = cached_recursion_table(params.n0);
  const std::uint64_t q_power = pow_mod(q % m, (params.kappa - 3) / 2, m);
  const std::uint64_t q_sq = q * q;

  rec.interesting = true;
  for (std::uint64_t n : hunt_indices(params)) {
    ++rec.checked_terms;
    const std::uint64_t big = overpartition_mod(n * q_sq, m, options);
    const int chi = jacobi(params.delta * static_cast<std::int64_t>(n), static_cast<std::int64_t>(q));
    const std::uint64_t middle = mul_mod(reduce_mod(chi, m), mul_mod(q_power, residue((*table)[n], m), m), m);
    if ((big + middle) % m != 0) {
      rec.interesting = false;
      rec.witness_n = n;
      break;
    }
  }
  return rec;
}

bool VerifyReport::all_hold() const { return !first_failure().has_value(); }

std::optional<VerifyCheck> VerifyReport::first_failure() const {
  for (const auto& c : checks) {
    if (c.residue != 0) return c;
  }
  return std::nullopt;
}

std::optional<std::string> sample_problem(std::uint64_t ell, std::uint64_t q, std::uint64_t n) {
  if (n == 0) return "n must be positive";
  if (n % ell == 0) return "n=" + std::to_string(n) + " is divisible by ell=" + std::to_string(ell);
  if (n % q == 0) return "n=" + std::to_string(n) + " is divisible by Q=" + std::to_string(q);
  if (jacobi(static_cast<std::int64_t>(n), static_cast<std::int64_t>(ell)) != -1) {
    return "n=" + std::to_string(n) + " is a quadratic residue mod " + std::to_string(ell);
  }
  const unsigned __int128 arg = static_cast<unsigned __int128>(q) * q * q * n;
  if (arg > UINT64_MAX) return "Q^3 n=" + std::to_string(n) + " exceeds 64 bits";
  return std::nullopt;
}

std::vector<std::uint64_t> valid_samples(std::uint64_t ell, std::uint64_t q, std::size_t count) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 1; out.size() < count; ++n) {
    if (static_cast<unsigned __int128>(q) * q * q * n > UINT64_MAX) {
      throw std::invalid_argument("Q^3 n exceeds 64 bits before " + std::to_string(count) +
                                  " samples were found");
    }
    if (!sample_problem(ell, q, n)) out.push_back(n);
  }
  return out;
}

VerifyReport verify_congruence(std::uint64_t ell, unsigned j, std::uint64_t q,
                               std::span<const std::uint64_t> samples,
                               const EvalOptions& options) {
  const CongruenceParams params = CongruenceParams::make(ell, j, q);
  for (std::uint64_t n : samples) {
    if (auto why = sample_problem(ell, q, n)) throw std::invalid_argument("invalid sample: " + *why);
  }
  VerifyReport report;
  report.ell = ell;
  report.j = j;
  report.q = q;
  const std::uint64_t cube = q * q * q;
  for (std::uint64_t n : samples) {
    const std::uint64_t arg = cube * n;
    report.checks.push_back({n, arg, overpartition_mod(arg, params.modulus, options)});
  }
  return report;
}

}  // namespace pbar
