#include "pbar/precision_real.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pbar {

namespace {

mpfr_prec_t checked_bits(long bits) {
  if (bits < PrecisionReal::kMinBits || bits > MPFR_PREC_MAX) {
    throw std::invalid_argument("precision out of range: " + std::to_string(bits));
  }
  return static_cast<mpfr_prec_t>(bits);
}

// Moved-from values carry a null limb pointer and are only destroyed or
// assigned to.
bool is_live(mpfr_srcptr x) { return x->_mpfr_d != nullptr; }

}  // namespace

PrecisionReal::PrecisionReal(long bits) {
  mpfr_init2(value_, checked_bits(bits));
  mpfr_set_zero(value_, 1);
}

PrecisionReal::PrecisionReal(long bits, double value) : PrecisionReal(bits) {
  mpfr_set_d(value_, value, MPFR_RNDN);
}

PrecisionReal::PrecisionReal(long bits, std::int64_t value) : PrecisionReal(bits) {
  mpfr_set_si(value_, static_cast<long>(value), MPFR_RNDN);
}

PrecisionReal::PrecisionReal(long bits, const mpz_class& value) : PrecisionReal(bits) {
  mpfr_set_z(value_, value.get_mpz_t(), MPFR_RNDN);
}

PrecisionReal::PrecisionReal(long bits, std::int64_t num, std::uint64_t den)
    : PrecisionReal(bits) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  mpq_class q(mpz_class(static_cast<long>(num)), mpz_class(static_cast<unsigned long>(den)));
  q.canonicalize();
  mpfr_set_q(value_, q.get_mpq_t(), MPFR_RNDN);
}

PrecisionReal::PrecisionReal(long bits, const PrecisionReal& other) : PrecisionReal(bits) {
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

PrecisionReal::PrecisionReal(const PrecisionReal& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

PrecisionReal::PrecisionReal(PrecisionReal&& other) noexcept {
  value_[0] = other.value_[0];
  other.value_->_mpfr_d = nullptr;
}

PrecisionReal& PrecisionReal::operator=(const PrecisionReal& other) {
  if (this == &other) return *this;
  if (is_live(value_)) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
  } else {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
  }
  mpfr_set(value_, other.value_, MPFR_RNDN);
  return *this;
}

PrecisionReal& PrecisionReal::operator=(PrecisionReal&& other) noexcept {
  if (this == &other) return *this;
  if (is_live(value_)) mpfr_clear(value_);
  value_[0] = other.value_[0];
  other.value_->_mpfr_d = nullptr;
  return *this;
}

PrecisionReal::~PrecisionReal() {
  if (is_live(value_)) mpfr_clear(value_);
}

double PrecisionReal::to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

long PrecisionReal::exponent() const noexcept {
  if (!mpfr_regular_p(value_)) return 0;
  return static_cast<long>(mpfr_get_exp(value_));
}

mpz_class PrecisionReal::floor() const {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), value_, MPFR_RNDD);
  return z;
}

mpz_class PrecisionReal::round() const {
  mpfr_t tmp;
  mpfr_init2(tmp, mpfr_get_prec(value_) + 1);
  mpfr_round(tmp, value_);
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), tmp, MPFR_RNDN);
  mpfr_clear(tmp);
  return z;
}

std::string PrecisionReal::to_string(int digits) const {
  char* buf = nullptr;
  if (mpfr_asprintf(&buf, "%.*Rg", digits, value_) < 0) {
    throw std::runtime_error("mpfr_asprintf failed");
  }
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

namespace {

long max_prec(const PrecisionReal& a, const PrecisionReal& b) {
  return std::max(a.precision(), b.precision());
}

}  // namespace

PrecisionReal operator+(const PrecisionReal& a, const PrecisionReal& b) {
  return add(a, b, max_prec(a, b));
}
PrecisionReal operator-(const PrecisionReal& a, const PrecisionReal& b) {
  return sub(a, b, max_prec(a, b));
}
PrecisionReal operator*(const PrecisionReal& a, const PrecisionReal& b) {
  return mul(a, b, max_prec(a, b));
}
PrecisionReal operator/(const PrecisionReal& a, const PrecisionReal& b) {
  return div(a, b, max_prec(a, b));
}
PrecisionReal operator-(const PrecisionReal& a) {
  PrecisionReal r(a.precision());
  mpfr_neg(r.value_, a.value_, MPFR_RNDN);
  return r;
}

PrecisionReal add(const PrecisionReal& a, const PrecisionReal& b, long bits) {
  PrecisionReal r(bits);
  mpfr_add(r.raw(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

PrecisionReal sub(const PrecisionReal& a, const PrecisionReal& b, long bits) {
  PrecisionReal r(bits);
  mpfr_sub(r.raw(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

PrecisionReal mul(const PrecisionReal& a, const PrecisionReal& b, long bits) {
  PrecisionReal r(bits);
  mpfr_mul(r.raw(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

PrecisionReal div(const PrecisionReal& a, const PrecisionReal& b, long bits) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  PrecisionReal r(bits);
  mpfr_div(r.raw(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

PrecisionReal abs(const PrecisionReal& x) {
  PrecisionReal r(x.precision());
  mpfr_abs(r.raw(), x.get(), MPFR_RNDN);
  return r;
}

PrecisionReal pi(long bits) {
  PrecisionReal r(bits);
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}

PrecisionReal exp(const PrecisionReal& x, long bits) {
  PrecisionReal r(bits);
  mpfr_exp(r.raw(), x.get(), MPFR_RNDN);
  return r;
}

PrecisionReal sqrt(const PrecisionReal& x, long bits) {
  if (x.sign() < 0) throw std::domain_error("sqrt of negative value");
  PrecisionReal r(bits);
  mpfr_sqrt(r.raw(), x.get(), MPFR_RNDN);
  return r;
}

PrecisionReal sqrt_uint(std::uint64_t n, long bits) {
  static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
  PrecisionReal r(bits);
  mpfr_sqrt_ui(r.raw(), static_cast<unsigned long>(n), MPFR_RNDN);
  return r;
}

PrecisionReal cos(const PrecisionReal& x, long bits) {
  PrecisionReal r(bits);
  mpfr_cos(r.raw(), x.get(), MPFR_RNDN);
  return r;
}

PrecisionReal log2(const PrecisionReal& x, long bits) {
  if (x.sign() <= 0) throw std::domain_error("log2 of non-positive value");
  PrecisionReal r(bits);
  mpfr_log2(r.raw(), x.get(), MPFR_RNDN);
  return r;
}

namespace {

// Sum_{v>=1} 2v x^{2v} / (2v+1)!, the expansion of cosh x - sinh x / x.
PrecisionReal u_series(const PrecisionReal& x, long work) {
  PrecisionReal x2 = mul(x, x, work);
  PrecisionReal power = div(x2, PrecisionReal(work, std::int64_t{6}), work);  // x^2/3!
  PrecisionReal sum(work);
  for (unsigned long v = 1;; ++v) {
    PrecisionReal term(work);
    mpfr_mul_ui(term.raw(), power.get(), 2 * v, MPFR_RNDN);
    sum = add(sum, term, work);
    if (term.is_zero() || term.exponent() < sum.exponent() - work - 2) break;
    power = mul(power, x2, work);
    mpfr_div_ui(power.raw(), power.get(), (2 * v + 2) * (2 * v + 3), MPFR_RNDN);
  }
  return sum;
}

}  // namespace

PrecisionReal u_function(const PrecisionReal& x, long bits) {
  if (x.sign() <= 0) throw std::domain_error("u_function requires x > 0");
  const long work = bits + 16;
  PrecisionReal one(work, std::int64_t{1});
  if (x < one) return PrecisionReal(bits, u_series(x, work));

  PrecisionReal ex = exp(x, work);
  PrecisionReal half_ex(work);
  mpfr_div_2ui(half_ex.raw(), ex.get(), 1, MPFR_RNDN);
  PrecisionReal inv_x = div(one, x, work);

  // e^{-2x} is below the working ulp of the bracket once 2x log2(e) > work.
  const double x_approx = x.to_double();
  if (2.0 * x_approx * M_LOG2E > static_cast<double>(work) + 4.0) {
    return mul(half_ex, sub(one, inv_x, work), bits);
  }
  PrecisionReal em2x = div(one, mul(ex, ex, work), work);
  PrecisionReal bracket =
      add(add(one, em2x, work), mul(sub(em2x, one, work), inv_x, work), work);
  return mul(half_ex, bracket, bits);
}

PrecisionReal cos_pi_rational(std::int64_t num, std::uint64_t den, long bits) {
  if (den == 0) throw std::invalid_argument("cos_pi_rational: zero denominator");
  const unsigned __int128 period = static_cast<unsigned __int128>(den) * 2;
  __int128 r128 = static_cast<__int128>(num) % static_cast<__int128>(period);
  if (r128 < 0) r128 += static_cast<__int128>(period);
  auto r = static_cast<unsigned __int128>(r128);
  // cos(pi r/den) on [0, 2): reflect into [0, 1], then into [0, 1/2].
  if (r > den) r = period - r;
  int sign = 1;
  if (2 * r > den) {
    r = den - r;
    sign = -1;
  }
  PrecisionReal out(bits);
  if (r == 0) {
    mpfr_set_si(out.raw(), sign, MPFR_RNDN);
  } else if (2 * r == den) {
    mpfr_set_zero(out.raw(), 1);
  } else if (3 * r == den) {
    mpfr_set_si(out.raw(), sign, MPFR_RNDN);
    mpfr_div_2ui(out.raw(), out.get(), 1, MPFR_RNDN);
  } else {
    const long work = bits + 10;
    PrecisionReal arg = pi(work);
    mpfr_mul_ui(arg.raw(), arg.get(), static_cast<unsigned long>(r), MPFR_RNDN);
    mpfr_div_ui(arg.raw(), arg.get(), static_cast<unsigned long>(den), MPFR_RNDN);
    mpfr_cos(out.raw(), arg.get(), MPFR_RNDN);
    if (sign < 0) mpfr_neg(out.raw(), out.get(), MPFR_RNDN);
  }
  return out;
}

PrecisionReal sin_pi_rational(std::int64_t num, std::uint64_t den, long bits) {
  // sin(pi a) = cos(pi (a - 1/2)) = cos(pi (2 num - den) / (2 den)).
  const __int128 shifted = static_cast<__int128>(num) * 2 - static_cast<__int128>(den);
  const unsigned __int128 den2 = static_cast<unsigned __int128>(den) * 2;
  // Reduce into int64 range before handing off; the period is 2 * den2.
  const __int128 period = static_cast<__int128>(den2) * 2;
  __int128 red = shifted % period;
  if (red < 0) red += period;
  return cos_pi_rational(static_cast<std::int64_t>(red), static_cast<std::uint64_t>(den2),
                         bits);
}

double ComplexReal::abs_diff(const ComplexReal& other) const {
  const long w = std::max(precision(), other.precision());
  PrecisionReal dr = sub(re, other.re, w);
  PrecisionReal di = sub(im, other.im, w);
  return std::hypot(dr.to_double(), di.to_double());
}

ComplexReal operator+(const ComplexReal& a, const ComplexReal& b) {
  const long w = std::max(a.precision(), b.precision());
  return ComplexReal(add(a.re, b.re, w), add(a.im, b.im, w));
}

ComplexReal operator*(const ComplexReal& a, const ComplexReal& b) {
  const long w = std::max(a.precision(), b.precision());
  PrecisionReal re = sub(mul(a.re, b.re, w + 8), mul(a.im, b.im, w + 8), w);
  PrecisionReal im = add(mul(a.re, b.im, w + 8), mul(a.im, b.re, w + 8), w);
  return ComplexReal(std::move(re), std::move(im));
}

ComplexReal exp_i_pi_rational(std::int64_t num, std::uint64_t den, long bits) {
  return ComplexReal(cos_pi_rational(num, den, bits), sin_pi_rational(num, den, bits));
}

}  // namespace pbar
