#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include <gmpxx.h>
#include <mpfr.h>

namespace pbar {

/// Radix-2 floating-point real with an explicit significand precision in
/// bits, backed by MPFR. Every operation takes or derives its precision from
/// its arguments; there is no ambient default. All operations round to
/// nearest.
class PrecisionReal {
 public:
  static constexpr long kMinBits = 2;

  /// Zero at the given precision.
  explicit PrecisionReal(long bits);
  PrecisionReal(long bits, double value);
  PrecisionReal(long bits, std::int64_t value);
  PrecisionReal(long bits, const mpz_class& value);
  /// num / den rounded to the given precision.
  PrecisionReal(long bits, std::int64_t num, std::uint64_t den);
  /// Rounds other to the given precision.
  PrecisionReal(long bits, const PrecisionReal& other);

  PrecisionReal(const PrecisionReal& other);
  PrecisionReal(PrecisionReal&& other) noexcept;
  PrecisionReal& operator=(const PrecisionReal& other);
  PrecisionReal& operator=(PrecisionReal&& other) noexcept;
  ~PrecisionReal();

  long precision() const noexcept { return static_cast<long>(mpfr_get_prec(value_)); }
  mpfr_srcptr get() const noexcept { return value_; }
  /// Backend handle for in-place MPFR calls; the precision must not change.
  mpfr_ptr raw() noexcept { return value_; }

  double to_double() const;
  bool is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }
  int sign() const noexcept { return mpfr_sgn(value_); }
  /// Binary exponent e with 2^(e-1) <= |x| < 2^e; 0 for zero.
  long exponent() const noexcept;

  mpz_class floor() const;
  /// Nearest integer, ties away from zero.
  mpz_class round() const;

  /// Decimal rendering with the given number of significant digits.
  std::string to_string(int digits = 20) const;

  friend PrecisionReal operator+(const PrecisionReal& a, const PrecisionReal& b);
  friend PrecisionReal operator-(const PrecisionReal& a, const PrecisionReal& b);
  friend PrecisionReal operator*(const PrecisionReal& a, const PrecisionReal& b);
  friend PrecisionReal operator/(const PrecisionReal& a, const PrecisionReal& b);
  friend PrecisionReal operator-(const PrecisionReal& a);

  friend bool operator<(const PrecisionReal& a, const PrecisionReal& b) {
    return mpfr_less_p(a.value_, b.value_) != 0;
  }
  friend bool operator>(const PrecisionReal& a, const PrecisionReal& b) { return b < a; }
  friend bool operator==(const PrecisionReal& a, const PrecisionReal& b) {
    return mpfr_equal_p(a.value_, b.value_) != 0;
  }

 private:
  mpfr_t value_;
};

// Binary operators above produce a result at the larger operand precision.
// The functions below take the result precision explicitly.

PrecisionReal add(const PrecisionReal& a, const PrecisionReal& b, long bits);
PrecisionReal sub(const PrecisionReal& a, const PrecisionReal& b, long bits);
PrecisionReal mul(const PrecisionReal& a, const PrecisionReal& b, long bits);
PrecisionReal div(const PrecisionReal& a, const PrecisionReal& b, long bits);
PrecisionReal abs(const PrecisionReal& x);

PrecisionReal pi(long bits);
PrecisionReal exp(const PrecisionReal& x, long bits);
PrecisionReal sqrt(const PrecisionReal& x, long bits);
PrecisionReal sqrt_uint(std::uint64_t n, long bits);
PrecisionReal cos(const PrecisionReal& x, long bits);
PrecisionReal log2(const PrecisionReal& x, long bits);

/// U(x) = cosh x - sinh x / x for x > 0. Taylor series below x = 1, the
/// exponential form (e^x/2)(1 + e^{-2x} + (e^{-2x} - 1)/x) above.
PrecisionReal u_function(const PrecisionReal& x, long bits);

/// cos(pi * num / den). The rational is reduced exactly into [0, 1/2] before
/// any rounding; multiples of 1/2 and 1/3 come back exact.
PrecisionReal cos_pi_rational(std::int64_t num, std::uint64_t den, long bits);

/// sin(pi * num / den), via cos_pi_rational.
PrecisionReal sin_pi_rational(std::int64_t num, std::uint64_t den, long bits);

struct ComplexReal {
  PrecisionReal re;
  PrecisionReal im;

  explicit ComplexReal(long bits) : re(bits), im(bits) {}
  ComplexReal(PrecisionReal r, PrecisionReal i) : re(std::move(r)), im(std::move(i)) {}

  long precision() const noexcept { return re.precision(); }
  double abs_diff(const ComplexReal& other) const;

  friend ComplexReal operator+(const ComplexReal& a, const ComplexReal& b);
  friend ComplexReal operator*(const ComplexReal& a, const ComplexReal& b);
};

/// e^{i pi num / den}.
ComplexReal exp_i_pi_rational(std::int64_t num, std::uint64_t den, long bits);

}  // namespace pbar
