#include "pbar/numtheory.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>

#include "pbar/precision_real.hpp"

namespace pbar {

namespace {

using u128 = unsigned __int128;
using i128 = __int128;

std::int64_t narrow(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("rational overflow");
  return static_cast<std::int64_t>(v);
}

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rational make_rational(i128 num, i128 den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const i128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rational(narrow(num), narrow(den));
}

// Odd primes below 2^16, enough to factor any k < 2^32 by trial division.
const std::vector<std::uint32_t>& odd_prime_cache() {
  static const std::vector<std::uint32_t> primes = [] {
    constexpr std::uint32_t limit = 1u << 16;
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 3; i <= limit; i += 2) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = std::uint64_t{i} * i; j <= limit; j += 2 * i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

std::uint64_t tonelli_shanks(std::uint64_t a, std::uint64_t p) {
  if (p % 4 == 3) return pow_mod(a, (p + 1) / 4, p);
  std::uint64_t q = p - 1;
  unsigned s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  std::uint64_t z = 2;
  while (pow_mod(z, (p - 1) / 2, p) != p - 1) ++z;
  std::uint64_t c = pow_mod(z, q, p);
  std::uint64_t r = pow_mod(a, (q + 1) / 2, p);
  std::uint64_t t = pow_mod(a, q, p);
  unsigned m = s;
  while (t != 1) {
    unsigned i = 0;
    std::uint64_t t2 = t;
    while (t2 != 1) {
      t2 = mul_mod(t2, t2, p);
      ++i;
    }
    std::uint64_t b = c;
    for (unsigned e = 0; e + 1 < m - i; ++e) b = mul_mod(b, b, p);
    r = mul_mod(r, b, p);
    c = mul_mod(b, b, p);
    t = mul_mod(t, c, p);
    m = i;
  }
  return r;
}

}  // namespace

PrimePowerFactorization::PrimePowerFactorization(std::vector<PrimePower> factors)
    : factors_(std::move(factors)) {
  std::sort(factors_.begin(), factors_.end(),
            [](const PrimePower& a, const PrimePower& b) { return a.p < b.p; });
  value_ = 1;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const auto& f = factors_[i];
    if (f.alpha == 0 || f.p % 2 == 0 || !is_prime(f.p)) {
      throw std::invalid_argument("factor " + std::to_string(f.p) + " is not an odd prime power");
    }
    if (i > 0 && factors_[i - 1].p == f.p) throw std::invalid_argument("repeated prime");
    std::uint64_t q = 1;
    for (unsigned e = 0; e < f.alpha; ++e) q *= f.p;
    if (q != f.q) throw std::invalid_argument("prime power value mismatch");
    value_ *= q;
  }
}

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  i128 n = num;
  i128 d = den;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const i128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  num_ = narrow(n);
  den_ = narrow(d);
}

Rational operator+(const Rational& a, const Rational& b) {
  return make_rational(i128{a.num_} * b.den_ + i128{b.num_} * a.den_, i128{a.den_} * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  return make_rational(i128{a.num_} * b.num_, i128{a.den_} * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::domain_error("rational division by zero");
  return make_rational(i128{a.num_} * b.den_, i128{a.den_} * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  return i128{a.num_} * b.den_ <=> i128{b.num_} * a.den_;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  os << r.num_;
  if (r.den_ != 1) os << '/' << r.den_;
  return os;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint64_t reduce_mod(std::int64_t a, std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("zero modulus");
  const i128 r = static_cast<i128>(a) % static_cast<i128>(m);
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<i128>(m) : r);
}

std::optional<std::uint64_t> inverse_mod(std::int64_t a, std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("zero modulus");
  if (m == 1) return 0;
  i128 old_r = reduce_mod(a, m), r = m;
  i128 old_s = 1, s = 0;
  while (r != 0) {
    const i128 quot = old_r / r;
    std::tie(old_r, r) = std::pair{r, old_r - quot * r};
    std::tie(old_s, s) = std::pair{s, old_s - quot * s};
  }
  if (old_r != 1) return std::nullopt;
  i128 inv = old_s % static_cast<i128>(m);
  if (inv < 0) inv += m;
  return static_cast<std::uint64_t>(inv);
}

int jacobi(std::int64_t a, std::int64_t k) {
  if (k <= 0 || k % 2 == 0) {
    throw std::invalid_argument("jacobi symbol needs an odd positive modulus, got " +
                                std::to_string(k));
  }
  std::uint64_t n = static_cast<std::uint64_t>(k);
  std::uint64_t x = reduce_mod(a, n);
  int result = 1;
  while (x != 0) {
    while (x % 2 == 0) {
      x /= 2;
      const std::uint64_t r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(x, n);
    if (x % 4 == 3 && n % 4 == 3) result = -result;
    x %= n;
  }
  return n == 1 ? result : 0;
}

std::uint64_t crt_pair(std::uint64_t r1, std::uint64_t m1, std::uint64_t r2, std::uint64_t m2) {
  if (m1 == 0 || m2 == 0) throw std::invalid_argument("crt_pair: zero modulus");
  if (std::gcd(m1, m2) != 1) {
    throw std::invalid_argument("crt_pair: moduli " + std::to_string(m1) + " and " +
                                std::to_string(m2) + " are not coprime");
  }
  if (static_cast<u128>(m1) * m2 > UINT64_MAX) throw std::overflow_error("crt_pair: modulus overflow");
  r1 %= m1;
  r2 %= m2;
  const std::uint64_t inv = *inverse_mod(static_cast<std::int64_t>(m1 % m2), m2);
  const std::uint64_t diff = (r2 + m2 - r1 % m2) % m2;
  const std::uint64_t t = mul_mod(diff, inv, m2);
  return r1 + m1 * t;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  // Deterministic for all 64-bit n.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

PrimePowerFactorization factorize_odd(std::uint64_t k) {
  if (k == 0 || k % 2 == 0) {
    throw std::invalid_argument("factorize_odd: expected an odd positive integer, got " +
                                std::to_string(k));
  }
  std::vector<PrimePower> factors;
  auto take = [&](std::uint64_t p) {
    PrimePower f{p, 0, 1};
    while (k % p == 0) {
      k /= p;
      ++f.alpha;
      f.q *= p;
    }
    factors.push_back(f);
  };
  for (std::uint32_t p : odd_prime_cache()) {
    if (std::uint64_t{p} * p > k) break;
    if (k % p == 0) take(p);
  }
  if (k > 1) {
    const std::uint64_t start = odd_prime_cache().back() + 2;
    for (std::uint64_t d = start; static_cast<u128>(d) * d <= k; d += 2) {
      if (k % d == 0) take(d);
    }
  }
  if (k > 1) factors.push_back({k, 1, k});
  return PrimePowerFactorization(std::move(factors));
}

std::optional<std::uint64_t> sqrt_mod_prime_power(std::int64_t a, std::uint64_t p, unsigned alpha) {
  if (p < 3 || p % 2 == 0 || alpha == 0) {
    throw std::invalid_argument("sqrt_mod_prime_power: need an odd prime and alpha >= 1");
  }
  const std::uint64_t ap = reduce_mod(a, p);
  if (ap == 0) throw std::invalid_argument("sqrt_mod_prime_power: p divides a");
  if (pow_mod(ap, (p - 1) / 2, p) != 1) return std::nullopt;

  std::uint64_t s = tonelli_shanks(ap, p);
  std::uint64_t q = p;
  for (unsigned e = 2; e <= alpha; ++e) {
    q *= p;
    // Hensel step: s <- s - (s^2 - a) / (2s) mod p^e.
    const std::uint64_t aq = reduce_mod(a, q);
    const std::uint64_t f = (mul_mod(s, s, q) + q - aq) % q;
    const std::uint64_t inv = *inverse_mod(static_cast<std::int64_t>(2 * s % q), q);
    s = (s + q - mul_mod(f, inv, q)) % q;
  }
  return std::min(s, q - s);
}

Rational dedekind_sum(std::int64_t h, std::int64_t k) {
  if (k <= 0) throw std::invalid_argument("dedekind_sum: k must be positive");
  const std::uint64_t ku = static_cast<std::uint64_t>(k);
  const std::uint64_t hr0 = reduce_mod(h, ku);
  if (std::gcd(hr0, ku) != 1) {
    throw std::invalid_argument("dedekind_sum: gcd(h, k) > 1 for h=" + std::to_string(h) +
                                ", k=" + std::to_string(k));
  }
  // s(h,k) = sum_r r (2 (h r mod k) - k) / (2 k^2)
  i128 total = 0;
  std::uint64_t hr = 0;
  for (std::uint64_t r = 1; r < ku; ++r) {
    hr += hr0;
    if (hr >= ku) hr -= ku;
    total += static_cast<i128>(r) * (2 * static_cast<i128>(hr) - static_cast<i128>(ku));
  }
  return make_rational(total, 2 * static_cast<i128>(ku) * ku);
}

ComplexReal salie_sum(std::int64_t a, std::int64_t k, long bits) {
  if (k <= 0 || k % 2 == 0) throw std::invalid_argument("salie_sum: k must be odd and positive");
  const std::uint64_t ku = static_cast<std::uint64_t>(k);
  const std::uint64_t ar = reduce_mod(a, ku);
  const long work = bits + 8;
  ComplexReal sum(work);
  for (std::uint64_t h = 0; h < ku; ++h) {
    if (std::gcd(h, ku) != 1) continue;
    const std::uint64_t hinv = *inverse_mod(static_cast<std::int64_t>(h), ku);
    const std::uint64_t phase = (mul_mod(ar, h, ku) + hinv) % ku;
    ComplexReal term = exp_i_pi_rational(static_cast<std::int64_t>(2 * phase), ku, work);
    if (jacobi(static_cast<std::int64_t>(h), k) < 0) {
      term.re = -term.re;
      term.im = -term.im;
    }
    sum = sum + term;
  }
  return ComplexReal(PrecisionReal(bits, sum.re), PrecisionReal(bits, sum.im));
}

}  // namespace pbar
