#pragma once

#include <gmpxx.h>

#include <stdexcept>

namespace kempner {

/// n / d in canonical form. The gmpxx two-argument constructors leave the
/// fraction unreduced, which the mpq arithmetic does not accept.
inline mpq_class ratio(const mpz_class& n, const mpz_class& d) {
  if (d == 0) throw std::domain_error("zero denominator");
  mpq_class q(n, d);
  q.canonicalize();
  return q;
}

inline mpq_class ratio(long n, long d) { return ratio(mpz_class(n), mpz_class(d)); }

}  // namespace kempner
