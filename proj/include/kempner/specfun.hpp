#pragma once

#include <gmpxx.h>

#include "kempner/real.hpp"
#include "kempner/series.hpp"

namespace kempner::specfun {

/// zeta(s) for integer s >= 2. Throws std::domain_error for s < 2.
/// Cached per (s, precision).
SumResult zeta_int(int s, const PrecisionCtx& prec);

/// Euler's constant gamma = -psi(1). Cached per precision.
SumResult euler_gamma(const PrecisionCtx& prec);

/// psi(1 + x) - psi(1) for rational x in [0, 1).
SumResult digamma_shift(const mpq_class& x, const PrecisionCtx& prec);

/// log Gamma(1 + p) - log Gamma(1 + q) for rational p, q in [0, 1).
SumResult log_gamma_ratio(const mpq_class& p, const mpq_class& q, const PrecisionCtx& prec);

/// sum_{n >= 1} (b n + d)^-(m+1) for b >= 2, 0 <= d < b, m >= 1.
SumResult tail_sum(int b, int d, int m, const PrecisionCtx& prec);

/// s_m(b, d) = sum_{0 <= a < b, a != d} c / (d + c a)^(m+1), c = 1/b, exact.
/// Requires d >= 1 and m >= 1 (std::domain_error otherwise).
mpq_class s_m_exact(int b, int d, int m);

/// s_m(b, d) in floating point with an error bound.
SumResult s_m_finite(int b, int d, int m, const PrecisionCtx& prec);

/// Euler-Maclaurin expansion of s_m(b, d) in powers of c through order N,
/// including the removal of the excluded term a = d.
series::SeriesQ s_m_euler_maclaurin(int d, int m, int N, int maxOrder = 256);

/// Decimal digits of working precision used for a computation that targets
/// `prec` and performs about `terms` elementary steps.
unsigned working_digits(const PrecisionCtx& prec, std::int64_t terms, int extra = 0);

}  // namespace kempner::specfun
