#include "kempner/real.hpp"

#include <cmath>
#include <stdexcept>

namespace kempner {

void PrecisionCtx::validate() const {
  if (targetDigits < 1) throw std::invalid_argument("target digits must be at least 1");
  if (guardDigits < 10) throw std::invalid_argument("guard digits must be at least 10");
}

PrecisionScope::PrecisionScope(unsigned digits10) : previous_(Real::default_precision()) {
  Real::default_precision(digits10);
}

PrecisionScope::~PrecisionScope() { Real::default_precision(previous_); }

Real to_real(const mpq_class& q) {
  Real r;
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

Real to_real(const mpz_class& z) {
  Real r;
  mpfr_set_z(r.backend().data(), z.get_mpz_t(), MPFR_RNDN);
  return r;
}

Real unit_roundoff(const Real& x) {
  Real u = 1;
  mpfr_mul_2si(u.backend().data(), u.backend().data(),
               1 - static_cast<long>(mpfr_get_prec(x.backend().data())), MPFR_RNDU);
  return u;
}

std::string to_fixed(const Real& x, int fraction_digits) {
  // mpfr's own formatter; boost's str() rounds through its digits10 budget.
  const int n = mpfr_snprintf(nullptr, 0, "%.*RNf", fraction_digits, x.backend().data());
  std::string out(static_cast<std::size_t>(n) + 1, '\0');
  mpfr_snprintf(out.data(), out.size(), "%.*RNf", fraction_digits, x.backend().data());
  out.resize(static_cast<std::size_t>(n));
  return out;
}

std::string to_scientific(const Real& x, int significant) {
  const int n = mpfr_snprintf(nullptr, 0, "%.*RUe", significant - 1, x.backend().data());
  std::string out(static_cast<std::size_t>(n) + 1, '\0');
  mpfr_snprintf(out.data(), out.size(), "%.*RUe", significant - 1, x.backend().data());
  out.resize(static_cast<std::size_t>(n));
  return out;
}

int integer_digits(double magnitude) {
  magnitude = std::fabs(magnitude);
  if (!(magnitude >= 1)) return 1;
  return static_cast<int>(std::floor(std::log10(magnitude))) + 1;
}

}  // namespace kempner
