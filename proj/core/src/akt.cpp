#include "pbar/akt.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace pbar {

namespace {

void require_odd(std::uint64_t k, const char* who) {
  if (k == 0 || k % 2 == 0) {
    throw std::invalid_argument(std::string(who) + ": k must be odd and positive, got " +
                                std::to_string(k));
  }
}

// cos(4 theta pi / q) as a reduced CosineAngle.
CosineAngle angle_for(std::uint64_t theta, std::uint64_t q) {
  const std::uint64_t period = 2 * q;
  return {static_cast<std::int64_t>(mul_mod(4, theta, period)), q};
}

}  // namespace

PrecisionReal PrimePowerValue::value(long bits) const {
  switch (kind) {
    case PrimePowerKind::Zero:
      return PrecisionReal(bits);
    case PrimePowerKind::SqrtQ:
      return sqrt_uint(q, bits);
    case PrimePowerKind::Cosine: {
      const CosineAngle a = angle_for(theta, q);
      PrecisionReal c = cos_pi_rational(a.num, a.den, bits + 8);
      mpfr_mul_2ui(c.raw(), c.get(), 1, MPFR_RNDN);
      return mul(c, sqrt_uint(q, bits + 8), bits);
    }
  }
  throw std::logic_error("unreachable");
}

PrecisionReal TermPlan::normalized_value(long bits) const {
  if (is_zero) return PrecisionReal(bits);
  const long work = bits + 8;
  PrecisionReal product(work, std::int64_t{1});
  for (const auto& a : cosine_angles) {
    PrecisionReal c = cos_pi_rational(a.num, a.den, work);
    mpfr_mul_2ui(c.raw(), c.get(), 1, MPFR_RNDN);
    product = mul(product, c, work);
  }
  return PrecisionReal(bits, product);
}

PrecisionReal TermPlan::value(long bits) const {
  return mul(normalized_value(bits + 8), sqrt_uint(k, bits + 8), bits);
}

PrimePowerValue akt_prime_power(std::uint64_t p, unsigned alpha, std::uint64_t n) {
  if (p < 3 || !is_prime(p) || alpha == 0) {
    throw std::invalid_argument("akt_prime_power: need an odd prime p and alpha >= 1");
  }
  PrimePowerValue out;
  out.p = p;
  out.alpha = alpha;
  for (unsigned e = 0; e < alpha; ++e) out.q *= p;
  const std::uint64_t r = n % out.q;
  if (r % p == 0) {
    out.kind = alpha == 1 ? PrimePowerKind::SqrtQ : PrimePowerKind::Zero;
    return out;
  }
  const auto root = sqrt_mod_prime_power(-static_cast<std::int64_t>(r), p, alpha);
  if (!root) {
    out.kind = PrimePowerKind::Zero;
    return out;
  }
  out.kind = PrimePowerKind::Cosine;
  out.theta = mul_mod(*root, *inverse_mod(4, out.q), out.q);
  return out;
}

TermPlan akt_multiplicative(const PrimePowerFactorization& k, std::uint64_t n) {
  TermPlan plan;
  plan.k = k.value();
  std::uint64_t rest = plan.k;  // k2
  std::uint64_t twisted = n;    // n3
  for (const PrimePower& f : k) {
    const std::uint64_t q = f.q;  // k1
    rest /= q;
    const std::uint64_t inv_rest_sq = *inverse_mod(
        static_cast<std::int64_t>(mul_mod(rest % q, rest % q, q)), q);
    const std::uint64_t n1 = mul_mod(twisted % q, inv_rest_sq, q);
    std::uint64_t n2 = 0;
    if (rest > 1) {
      const std::uint64_t inv_q_sq = *inverse_mod(
          static_cast<std::int64_t>(mul_mod(q % rest, q % rest, rest)), rest);
      n2 = mul_mod(twisted % rest, inv_q_sq, rest);
    }

    PrimePowerValue v = akt_prime_power(f.p, f.alpha, n1);
    plan.factors.push_back(v);
    if (v.kind == PrimePowerKind::Zero) {
      plan.is_zero = true;
      plan.cosine_angles.clear();
      plan.cosine_modulus = 1;
      return plan;
    }
    if (v.kind == PrimePowerKind::Cosine) {
      plan.cosine_angles.push_back(angle_for(v.theta, v.q));
      plan.cosine_modulus *= v.q;
    }
    twisted = n2;
  }
  return plan;
}

TermPlan akt_multiplicative(std::uint64_t k, std::uint64_t n) {
  require_odd(k, "akt_multiplicative");
  return akt_multiplicative(factorize_odd(k), n);
}

ComplexReal akt_direct(std::uint64_t k, std::uint64_t n, long bits) {
  require_odd(k, "akt_direct");
  const auto kk = static_cast<std::int64_t>(k);
  std::vector<Rational> dedekind(k);
  for (std::uint64_t h = 0; h < k; ++h) {
    if (std::gcd(h, k) == 1) dedekind[h] = dedekind_sum(static_cast<std::int64_t>(h), kk);
  }
  const std::uint64_t nr = n % k;
  const long work = bits + 8;
  ComplexReal sum(work);
  for (std::uint64_t h = 0; h < k; ++h) {
    if (std::gcd(h, k) != 1) continue;
    // w(h,k)^2 / w(2h,k) e^{-2 pi i n h / k} = e^{pi i (2 s(h,k) - s(2h,k) - 2 n h / k)}
    const Rational phase = Rational(2) * dedekind[h] - dedekind[(2 * h) % k] -
                           Rational(static_cast<std::int64_t>(2 * mul_mod(nr, h, k)), kk);
    sum = sum + exp_i_pi_rational(phase.num(), static_cast<std::uint64_t>(phase.den()), work);
  }
  return ComplexReal(PrecisionReal(bits, sum.re), PrecisionReal(bits, sum.im));
}

ComplexReal akt_salie_oracle(std::uint64_t k, std::uint64_t n, long bits) {
  require_odd(k, "akt_salie_oracle");
  const auto kk = static_cast<std::int64_t>(k);
  const std::uint64_t inv16 = *inverse_mod(16, k);
  const std::uint64_t a = (k - mul_mod(n % k, inv16, k)) % k;
  ComplexReal s = salie_sum(static_cast<std::int64_t>(a), kk, bits);
  if (k % 4 == 1) return s;
  // eps_k = -i: (-i)(x + iy) = y - ix
  return ComplexReal(s.im, -s.re);
}

}  // namespace pbar
