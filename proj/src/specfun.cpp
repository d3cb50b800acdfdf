#include "kempner/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>

#include "kempner/errors.hpp"
#include "kempner/rational.hpp"

namespace kempner::specfun {

namespace {

// Euler-Maclaurin summation of sum_{n >= n0} f(n) for completely monotone f:
//   sum_{n >= N} f(n) = int_N^inf f + f(N)/2 - sum_{j=1}^p B_2j/(2j)! f^(2j-1)(N) + R
// with |R| <= 2 |B_{2p+2}|/(2p+2)! |f^(2p+1)(N)|.
//
// A kernel supplies, for t >= 1:
//   term(n), integral(N), deriv(r, N)   values with a magnitude scale used
//                                       for the rounding bound,
//   log10_deriv(r, t)                   an upper bound on log10 |f^(r)(t)|
//                                       used only for planning,
//   extra_digits(N)                     cancellation allowance.

struct Term {
  Real value;
  Real scale;
};

constexpr long kMaxDirect = 2'000'000;
constexpr int kMaxCorrections = 600;

double log10_factorial(int r) { return std::lgamma(r + 1.0) / std::log(10.0); }

// |B_2j| / (2j)! <= 4 (2 pi)^(-2j).
double log10_bernoulli_ratio(int n) { return std::log10(4.0) - n * std::log10(2.0 * M_PI); }

Real powi(const Real& x, long e) {
  Real r;
  mpfr_pow_si(r.backend().data(), x.backend().data(), e, MPFR_RNDN);
  return r;
}

Real log1p_real(const Real& x) {
  Real r;
  mpfr_log1p(r.backend().data(), x.backend().data(), MPFR_RNDN);
  return r;
}

mpq_class bernoulli_over_factorial(int n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  mpq_class q = series::bernoulli(n) / mpq_class(f);
  q.canonicalize();
  return q;
}

Real factorial_real(int r) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(r));
  return to_real(f);
}

template <class Kernel>
SumResult em_sum(const Kernel& f, long n0, const PrecisionCtx& prec, const std::string& method) {
  prec.validate();
  // Half of the budget for the remainder, half for rounding.
  const double target = prec.truncation_exponent() - std::log10(2.0);

  long bestN = -1;
  int bestP = 0;
  double bestCost = std::numeric_limits<double>::infinity();
  for (long N = std::max(n0, 1L); N <= kMaxDirect; N = N < 32 ? N + 1 : N + N / 4) {
    if (static_cast<double>(N - n0) >= bestCost) break;
    for (int p = 1; p <= kMaxCorrections; ++p) {
      const double rem = std::log10(2.0) + log10_bernoulli_ratio(2 * p + 2) + f.log10_deriv(2 * p + 1, N);
      if (rem <= target) {
        const double cost = static_cast<double>(N - n0) + 4.0 * p;
        if (cost < bestCost) {
          bestCost = cost;
          bestN = N;
          bestP = p;
        }
        break;
      }
    }
  }
  if (bestN < 0) throw CapacityError("no Euler-Maclaurin plan reaches the requested accuracy");

  const long N = bestN;
  const int p = bestP;
  const long ops = (N - n0) + 2L * p + 4;
  PrecisionScope scope(working_digits(prec, ops, f.extra_digits(N)));

  Real sum = 0;
  Real scale = 0;
  for (long n = n0; n < N; ++n) {
    const Term t = f.term(n);
    sum += t.value;
    scale += t.scale;
  }
  const Term in = f.integral(N);
  sum += in.value;
  scale += in.scale;
  const Term fN = f.term(N);
  sum += fN.value / 2;
  scale += fN.scale / 2;
  for (int j = 1; j <= p; ++j) {
    const Real coef = to_real(bernoulli_over_factorial(2 * j));
    const Term dj = f.deriv(2 * j - 1, N);
    sum -= coef * dj.value;
    scale += abs(coef) * dj.scale;
  }
  const Term last = f.deriv(2 * p + 1, N);
  const Real u = unit_roundoff(sum);
  const Real tail = 2 * abs(to_real(bernoulli_over_factorial(2 * p + 2))) * (abs(last.value) + 16 * u * last.scale);
  const Real rounding = 2 * (ops + 16) * u * scale;

  SumResult r;
  r.value = sum;
  r.errorBound = (tail + rounding) * Real(1.0001);
  r.termsUsed = ops;
  r.method = method;
  return r;
}

// f(t) = (b t + d)^-s, s >= 2.
struct PowerKernel {
  long b;
  long d;
  long s;

  Real at(long n) const { return Real(b) * n + d; }
  Term term(long n) const {
    Real v = powi(at(n), -s);
    return {v, v};
  }
  Term integral(long N) const {
    Real v = powi(at(N), 1 - s) / (Real(b) * (s - 1));
    return {v, v};
  }
  Term deriv(int r, long N) const {
    // (-1)^r (s)_r b^r (bN + d)^(-s-r)
    mpz_class rising = 1;
    for (int i = 0; i < r; ++i) rising *= mpz_class(s + i) * b;
    Real v = to_real(rising) * powi(at(N), -s - r);
    if (r % 2) v = -v;
    return {v, abs(v)};
  }
  double log10_deriv(int r, long N) const {
    const double x = static_cast<double>(b) * static_cast<double>(N) + static_cast<double>(d);
    return (std::lgamma(double(s + r)) - std::lgamma(double(s))) / std::log(10.0) + r * std::log10(double(b)) -
           (s + r) * std::log10(x);
  }
  int extra_digits(long) const { return 2; }
};

// f(t) = 1/t - 1/(t + x), 0 < x < 1.
struct DigammaKernel {
  Real x;
  double xd;

  Term term(long n) const {
    Real v = x / (Real(n) * (Real(n) + x));
    return {v, v};
  }
  Term integral(long N) const {
    Real v = log1p_real(x / N);
    return {v, v};
  }
  Term deriv(int r, long N) const {
    const Real fr = factorial_real(r);
    const Real a = powi(Real(N), -r - 1);
    Real v = fr * (a - powi(Real(N) + x, -r - 1));
    if (r % 2) v = -v;
    return {v, fr * a};
  }
  double log10_deriv(int r, long N) const {
    const double t = static_cast<double>(N);
    return log10_factorial(r) - (r + 1) * std::log10(t) + std::log10(std::min(1.0, (r + 1) * xd / t));
  }
  int extra_digits(long) const { return 2; }
};

// f(t) = p/t - log(1 + p/t), 0 < p <= 1.
struct LogKernel {
  Real p;
  double pd;

  Term term(long n) const {
    const Real a = p / n;
    return {a - log1p_real(a), 2 * a};
  }
  Term integral(long N) const {
    const Real a = (Real(N) + p) * log1p_real(p / N);
    return {a - p, a + p};
  }
  Term deriv(int r, long N) const {
    // (-1)^r [p r! t^(-r-1) + (r-1)! ((t+p)^-r - t^-r)]
    const Real t = Real(N);
    const Real lead = p * factorial_real(r) * powi(t, -r - 1);
    const Real fr1 = factorial_real(r - 1);
    const Real tr = powi(t, -r);
    Real v = lead + fr1 * (powi(t + p, -r) - tr);
    if (r % 2) v = -v;
    return {v, lead + 2 * fr1 * tr};
  }
  double log10_deriv(int r, long N) const {
    return 2 * std::log10(pd) + std::lgamma(r + 2.0) / std::log(10.0) - std::log10(2.0) -
           (r + 2) * std::log10(static_cast<double>(N));
  }
  int extra_digits(long N) const {
    return static_cast<int>(std::ceil(std::log10(2.0 * static_cast<double>(N) / pd))) + 2;
  }
};

unsigned cache_key_digits(const PrecisionCtx& prec) {
  return static_cast<unsigned>(prec.targetDigits + prec.guardDigits);
}

SumResult combine(const SumResult& a, const SumResult& b, int sign, const std::string& method) {
  SumResult r;
  r.value = sign > 0 ? Real(a.value + b.value) : Real(a.value - b.value);
  r.errorBound = (a.errorBound + b.errorBound) * Real(1.0001);
  r.termsUsed = a.termsUsed + b.termsUsed;
  r.method = method;
  return r;
}

// log Gamma(1 + p) = -gamma p + sum_{n >= 1} (p/n - log(1 + p/n)).
SumResult log_gamma_1p(const mpq_class& p, const PrecisionCtx& prec) {
  if (p < 0 || p >= 1) throw std::domain_error("log_gamma_ratio needs arguments in [0, 1)");
  if (p == 0) return SumResult{Real(0), Real(0), 0, "exact"};
  const SumResult g = euler_gamma(prec);
  PrecisionScope scope(working_digits(prec, 1, 4));
  const Real pr = to_real(p);
  const SumResult s = em_sum(LogKernel{pr, p.get_d()}, 1, prec, "euler-maclaurin");
  SumResult r;
  r.value = s.value - g.value * pr;
  r.errorBound = (s.errorBound + g.errorBound * pr) * Real(1.0001) + unit_roundoff(r.value) * 4 * abs(g.value);
  r.termsUsed = s.termsUsed + g.termsUsed;
  r.method = "euler-maclaurin";
  return r;
}

}  // namespace

unsigned working_digits(const PrecisionCtx& prec, std::int64_t terms, int extra) {
  const int logTerms = static_cast<int>(std::ceil(std::log10(static_cast<double>(std::max<std::int64_t>(terms, 1)) + 1)));
  return static_cast<unsigned>(prec.targetDigits + prec.guardDigits + logTerms + 5 + std::max(extra, 0));
}

SumResult zeta_int(int s, const PrecisionCtx& prec) {
  if (s < 2) throw std::domain_error("zeta_int needs s >= 2, got " + std::to_string(s));
  prec.validate();
  static std::mutex mutex;
  static std::map<std::pair<int, unsigned>, SumResult> cache;
  const auto key = std::make_pair(s, cache_key_digits(prec));
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  SumResult r = em_sum(PowerKernel{1, 0, s}, 1, prec, "euler-maclaurin");
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(r)).first->second;
}

SumResult euler_gamma(const PrecisionCtx& prec) {
  prec.validate();
  static std::mutex mutex;
  static std::map<unsigned, SumResult> cache;
  const unsigned key = cache_key_digits(prec);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  SumResult r;
  {
    PrecisionScope scope(working_digits(prec, 1, 4));
    r = em_sum(LogKernel{Real(1), 1.0}, 1, prec, "euler-maclaurin");
  }
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(r)).first->second;
}

SumResult digamma_shift(const mpq_class& x, const PrecisionCtx& prec) {
  if (x < 0 || x >= 1) throw std::domain_error("digamma_shift needs x in [0, 1)");
  prec.validate();
  if (x == 0) return SumResult{Real(0), Real(0), 0, "exact"};
  PrecisionScope scope(working_digits(prec, 1, 4));
  return em_sum(DigammaKernel{to_real(x), x.get_d()}, 1, prec, "euler-maclaurin");
}

SumResult log_gamma_ratio(const mpq_class& p, const mpq_class& q, const PrecisionCtx& prec) {
  prec.validate();
  return combine(log_gamma_1p(p, prec), log_gamma_1p(q, prec), -1, "euler-maclaurin");
}

SumResult tail_sum(int b, int d, int m, const PrecisionCtx& prec) {
  if (b < 2 || d < 0 || d >= b) throw std::domain_error("tail_sum needs b >= 2 and 0 <= d < b");
  if (m < 1) throw std::domain_error("tail_sum needs m >= 1");
  return em_sum(PowerKernel{b, d, m + 1}, 1, prec, "euler-maclaurin");
}

mpq_class s_m_exact(int b, int d, int m) {
  if (b < 2 || d < 1 || d >= b || m < 1) throw std::domain_error("s_m needs 1 <= d < b and m >= 1");
  mpz_class bm;
  mpz_ui_pow_ui(bm.get_mpz_t(), static_cast<unsigned long>(b), static_cast<unsigned long>(m));
  mpq_class sum = 0;
  for (int a = 0; a < b; ++a) {
    if (a == d) continue;
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(b) * d + a, static_cast<unsigned long>(m + 1));
    sum += ratio(bm, den);
  }
  return sum;
}

SumResult s_m_finite(int b, int d, int m, const PrecisionCtx& prec) {
  if (b < 2 || d < 1 || d >= b || m < 1) throw std::domain_error("s_m needs 1 <= d < b and m >= 1");
  prec.validate();
  PrecisionScope scope(working_digits(prec, b, 2));
  const Real bm = powi(Real(b), m);
  Real sum = 0;
  for (int a = 0; a < b; ++a) {
    if (a == d) continue;
    sum += bm * powi(Real(static_cast<long>(b) * d + a), -(m + 1));
  }
  SumResult r;
  r.value = sum;
  r.errorBound = 2 * (b + 16) * unit_roundoff(sum) * sum;
  r.termsUsed = b - 1;
  r.method = "direct";
  return r;
}

series::SeriesQ s_m_euler_maclaurin(int d, int m, int N, int maxOrder) {
  if (d < 1 || m < 1 || N < 0) throw std::domain_error("s_m expansion needs d >= 1, m >= 1, N >= 0");
  if (N > maxOrder)
    throw CapacityError("expansion order " + std::to_string(N) + " exceeds the limit " + std::to_string(maxOrder));
  auto inv_pow = [](int base, int e) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(e));
    return ratio(mpz_class(1), p);
  };
  series::SeriesQ r(N);
  // c sum_{a<b} f(c a) with f(x) = (d + x)^-(m+1).
  r[0] = (inv_pow(d, m) - inv_pow(d + 1, m)) / mpq_class(m);
  if (N >= 1) r[1] = (inv_pow(d, m + 1) - inv_pow(d + 1, m + 1)) / mpq_class(2);
  for (int i = 1; 2 * i <= N; ++i) {
    const int ord = 2 * i - 1;
    // f^(ord)(x) = (-1)^ord (m+1)_ord (d+x)^(-m-1-ord)
    mpz_class rising = 1;
    for (int j = 0; j < ord; ++j) rising *= m + 1 + j;
    const mpq_class diff = mpq_class(-rising) * (inv_pow(d + 1, m + 1 + ord) - inv_pow(d, m + 1 + ord));
    r[2 * i] += bernoulli_over_factorial(2 * i) * diff;
  }
  // Remove the excluded term c f(c d) = d^-(m+1) c (1 + c)^-(m+1).
  series::SeriesQ excluded = series::binomial_series(1, -(m + 1), N).shifted(1);
  excluded *= inv_pow(d, m + 1);
  r -= excluded;
  for (int i = 0; i <= N; ++i) r[i].canonicalize();
  return r;
}

}  // namespace kempner::specfun
