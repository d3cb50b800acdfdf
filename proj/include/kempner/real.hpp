#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace kempner {

/// Variable-precision binary floating point backed by MPFR. Precision is
/// taken from the thread default when a value is created; see
/// PrecisionScope.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

/// Requested accuracy: results carry an error bound at most 10^-targetDigits.
/// Internal truncation targets 10^-(targetDigits + guardDigits).
struct PrecisionCtx {
  int targetDigits = 30;
  int guardDigits = 10;

  /// Throws std::invalid_argument on targetDigits < 1 or guardDigits < 10.
  void validate() const;

  /// log10 of the truncation target, i.e. -(targetDigits + guardDigits).
  int truncation_exponent() const { return -(targetDigits + guardDigits); }

  PrecisionCtx with_target(int digits) const { return {digits, guardDigits}; }
};

/// Sets the default precision of newly created Real values for the current
/// thread and restores the previous one on destruction.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits10);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned previous_;
};

/// High-precision value with an a-priori absolute error bound.
struct SumResult {
  Real value;
  Real errorBound;
  std::int64_t termsUsed = 0;
  std::string method;
};

/// Rounded to nearest at the current default precision.
Real to_real(const mpq_class& q);
Real to_real(const mpz_class& z);

/// Unit roundoff 2^(1-p) for a value carrying p bits.
Real unit_roundoff(const Real& x);

/// Fixed-point decimal rendering with `fraction_digits` digits after the
/// point.
std::string to_fixed(const Real& x, int fraction_digits);

/// Scientific rendering with `significant` digits, used for error bounds.
std::string to_scientific(const Real& x, int significant = 3);

/// Decimal digits needed to represent the integer part of |x|.
int integer_digits(double magnitude);

}  // namespace kempner
