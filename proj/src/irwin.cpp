#include "kempner/irwin.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "kempner/errors.hpp"
#include "kempner/rational.hpp"
#include "kempner/specfun.hpp"

namespace kempner::irwin {

RegimeId regime_of(const DigitSpec& spec) {
  if (spec.digit() == 0) return spec.count() == 0 ? RegimeId::D0K0 : RegimeId::D0Kpos;
  return spec.count() == 0 ? RegimeId::DposK0 : RegimeId::DposKpos;
}

std::string_view to_string(RegimeId regime) {
  switch (regime) {
    case RegimeId::D0K0: return "D0K0";
    case RegimeId::D0Kpos: return "D0Kpos";
    case RegimeId::DposK0: return "DposK0";
    case RegimeId::DposKpos: return "DposKpos";
  }
  return "unknown";
}

namespace {

const double kLog10Zeta2 = std::log10(std::numbers::pi * std::numbers::pi / 6);

// log10(10^x + 10^y)
double log10_add(double x, double y) {
  const double hi = std::max(x, y);
  const double lo = std::min(x, y);
  return hi + std::log10(1 + std::pow(10.0, lo - hi));
}

const char* bound_formula(RegimeId regime) {
  switch (regime) {
    case RegimeId::D0K0:
    case RegimeId::D0Kpos: return "zeta(2) b^-M / (M+1)";
    case RegimeId::DposK0: return "2 d^-(M+2) b^-M + zeta(2) b^-(M+1) / (M+2)";
    case RegimeId::DposKpos: return "2 zeta(2) b^-(M+1) + 4 d^-(M+2) b^-M";
  }
  return "";
}

int decimal_digits(int b) { return static_cast<int>(std::ceil(std::log10(static_cast<double>(b)))); }

Real log_real(const Real& x) {
  Real r;
  mpfr_log(r.backend().data(), x.backend().data(), MPFR_RNDN);
  return r;
}

Real log1p_real(const Real& x) {
  Real r;
  mpfr_log1p(r.backend().data(), x.backend().data(), MPFR_RNDN);
  return r;
}

mpq_class pow_q(const mpq_class& x, int e) {
  mpq_class r = 1;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

// Running sum of terms that are each computed with a few roundings; the
// rounding bound is applied once at the end from the accumulated scale.
struct Accumulator {
  Real value = 0;
  Real error = 0;  // propagated from inexact inputs
  Real scale = 0;  // sum of |term|
  long ops = 0;

  void add(const Real& term, const Real& inputError = Real(0)) {
    value += term;
    error += inputError;
    scale += abs(term);
    ++ops;
  }
  // sign * q * x for exact q and approximate x.
  void add_product(int sign, const mpq_class& q, const Real& x, const Real& xError) {
    const Real qr = to_real(q);
    add(sign > 0 ? Real(qr * x) : Real(-qr * x), abs(qr) * xError);
  }
  Real rounding_bound() const { return 2 * (ops + 16) * unit_roundoff(value) * scale; }
};

// S_m = sum_{a != d} (bd + a)^-(m+1) for m = 1..M, with error bounds.
void finite_sums(int b, int d, int M, std::vector<Real>& S, std::vector<Real>& err) {
  S.assign(M + 1, Real(0));
  err.assign(M + 1, Real(0));
  for (int a = 0; a < b; ++a) {
    if (a == d) continue;
    const Real x = Real(1) / (Real(b) * d + a);
    Real p = x;
    for (int m = 1; m <= M; ++m) {
      p *= x;
      S[m] += p;
    }
  }
  for (int m = 1; m <= M; ++m) err[m] = 2 * (m + b + 8) * unit_roundoff(S[m]) * S[m];
}

int sign_of(int m) { return m % 2 == 1 ? 1 : -1; }  // (-1)^(m-1)

IrwinEvaluation evaluate_impl(const DigitSpec& spec, const PrecisionCtx& prec, const IrwinOptions& options,
                              bool k1LogForm) {
  prec.validate();
  const RegimeId regime = regime_of(spec);
  const TruncationPlan plan = truncation_order(spec, prec);
  if (plan.order > options.limits.maxOrder)
    throw CapacityError("I(" + std::to_string(spec.base()) + "," + std::to_string(spec.digit()) + "," +
                        std::to_string(spec.count()) + ") at " + std::to_string(prec.targetDigits) +
                        " digits needs moment order " + std::to_string(plan.order) + ", limit is " +
                        std::to_string(options.limits.maxOrder));
  const int M = plan.order;
  const int b = spec.base();
  const int d = spec.digit();
  const int k = spec.count();

  const PrecisionCtx sub{prec.targetDigits + decimal_digits(b) + 3, prec.guardDigits};
  const int cancellation = k1LogForm ? decimal_digits(2 * b * d) + 2 : 2;
  PrecisionScope scope(specfun::working_digits(sub, 4L * M + b, cancellation + 2));

  const auto table = moments::u_table(spec, M, options.limits);
  const auto& uk = table->row(k);

  IrwinEvaluation ev;
  ev.plan = plan;
  Accumulator acc;
  const Real B = Real(b);
  acc.add(B * log_real(B));

  // Magnitude of the m-th main-series term, recorded before rounding into the sum.
  auto record = [&](const Real& term) { ev.termMagnitudes.push_back(static_cast<double>(abs(term))); };

  switch (regime) {
    case RegimeId::D0K0:
    case RegimeId::D0Kpos: {
      for (int m = 1; m <= M; ++m) {
        mpq_class q = uk[m];
        if (k > 0) q -= table->at(k - 1, m);
        q /= pow_q(mpq_class(b), m + 1);
        const SumResult z = specfun::zeta_int(m + 1, sub);
        acc.add_product(sign_of(m), q, z.value, z.errorBound);
        record(to_real(q) * z.value);
      }
      break;
    }
    case RegimeId::DposK0: {
      acc.add(-B * log1p_real(Real(1) / d));
      const SumResult psi = specfun::digamma_shift(ratio(d, b), sub);
      acc.add(psi.value, psi.errorBound);
      acc.add(-Real(1) / d);
      acc.add(B * log1p_real(Real(1) / (Real(b) * d + d)));
      std::vector<Real> S, Serr;
      finite_sums(b, d, M, S, Serr);
      for (int m = 1; m <= M; ++m) {
        const mpq_class w = table->deviation(0, m);
        const SumResult T = specfun::tail_sum(b, d, m, sub);
        acc.add_product(-sign_of(m), w, S[m], Serr[m]);
        acc.add_product(sign_of(m), uk[m], T.value, T.errorBound);
        record(to_real(uk[m]) * T.value - to_real(w) * S[m]);
      }
      break;
    }
    case RegimeId::DposKpos: {
      std::vector<Real> S, Serr;
      finite_sums(b, d, M, S, Serr);
      const mpq_class Y = ratio(1, static_cast<long>(b) * d + d);  // 1/(bd+d)
      for (int m = 1; m <= M; ++m) {
        const mpq_class diff = uk[m] - table->at(k - 1, m);
        const SumResult T = specfun::tail_sum(b, d, m, sub);
        acc.add_product(sign_of(m), diff, T.value + S[m], T.errorBound + Serr[m]);
        record(to_real(diff) * (T.value + S[m]));
      }
      if (k > 1) {
        for (int m = 1; m <= M; ++m) {
          const mpq_class q = (table->at(k - 1, m) - table->at(k - 2, m)) * pow_q(Y, m + 1);
          acc.add(sign_of(m) > 0 ? to_real(q) : Real(-to_real(q)));
        }
      } else if (!k1LogForm) {
        acc.add(to_real(Y));
        for (int m = 1; m <= M; ++m) {
          const mpq_class q = table->at(0, m) * pow_q(Y, m + 1);
          acc.add(sign_of(m) > 0 ? to_real(q) : Real(-to_real(q)));
        }
      } else {
        const Real y = to_real(Y);
        acc.add(y);
        acc.add(B * (y - log1p_real(y)));
        for (int m = 1; m <= M; ++m) {
          const mpq_class q = table->deviation(0, m) * pow_q(Y, m + 1);
          acc.add(sign_of(m) > 0 ? Real(-to_real(q)) : to_real(q));
        }
      }
      break;
    }
  }

  Real truncation = 10;
  truncation = pow(truncation, Real(plan.log10Bound)) * Real(1.001);
  ev.result.value = acc.value;
  ev.result.errorBound = (truncation + acc.error + acc.rounding_bound()) * Real(1.0001);
  ev.result.termsUsed = M;
  ev.result.method = std::string(to_string(regime));
  if (k1LogForm) ev.result.method += "/log-form";

  Real limit = 10;
  limit = pow(limit, Real(-prec.targetDigits));
  if (ev.result.errorBound > limit)
    throw CapacityError("error bound " + to_scientific(ev.result.errorBound) + " misses the requested accuracy");
  return ev;
}

}  // namespace

double tail_bound_log10(const DigitSpec& spec, int order) {
  if (order < 1) throw std::invalid_argument("truncation order must be at least 1");
  const double M = order;
  const double lb = std::log10(static_cast<double>(spec.base()));
  const double ld = spec.digit() > 0 ? std::log10(static_cast<double>(spec.digit())) : 0.0;
  switch (regime_of(spec)) {
    case RegimeId::D0K0:
    case RegimeId::D0Kpos: return kLog10Zeta2 - M * lb - std::log10(M + 1);
    case RegimeId::DposK0:
      return log10_add(std::log10(2.0) - (M + 2) * ld - M * lb, kLog10Zeta2 - (M + 1) * lb - std::log10(M + 2));
    case RegimeId::DposKpos:
      return log10_add(std::log10(2.0) + kLog10Zeta2 - (M + 1) * lb, std::log10(4.0) - (M + 2) * ld - M * lb);
  }
  return 0;
}

TruncationPlan truncation_order(const DigitSpec& spec, const PrecisionCtx& prec) {
  prec.validate();
  const double target = prec.truncation_exponent();
  for (int M = 1; M <= 1 << 16; ++M) {
    const double bound = tail_bound_log10(spec, M);
    if (bound <= target) return {M, bound, bound_formula(regime_of(spec))};
  }
  throw CapacityError("no truncation order reaches the requested accuracy");
}

SumResult irwin_sum(const DigitSpec& spec, const PrecisionCtx& prec, const IrwinOptions& options) {
  return evaluate_impl(spec, prec, options, false).result;
}

IrwinEvaluation irwin_evaluate(const DigitSpec& spec, const PrecisionCtx& prec, const IrwinOptions& options) {
  return evaluate_impl(spec, prec, options, false);
}

SumResult irwin_sum_k1_log_form(const DigitSpec& spec, const PrecisionCtx& prec, const IrwinOptions& options) {
  if (spec.digit() == 0 || spec.count() != 1)
    throw std::invalid_argument("the log form applies to d > 0 and k = 1 only");
  return evaluate_impl(spec, prec, options, true).result;
}

// ---------------------------------------------------------------------------
// Digit counting and the brute-force oracle.

DigitCountTable::DigitCountTable(int b, int d, int maxDigits) : b_(b), d_(d), maxDigits_(maxDigits) {
  DigitSpec::make(b, d, 0);  // validates b and d
  if (maxDigits < 1) throw std::invalid_argument("digit count table needs maxDigits >= 1");
  counts_.assign(maxDigits + 1, {});
  counts_[0] = {mpz_class(0)};
  // Leading digit: nonzero.
  counts_[1].assign(2, mpz_class(0));
  if (d == 0) {
    counts_[1][0] = b - 1;
  } else {
    counts_[1][0] = b - 2;
    counts_[1][1] = 1;
  }
  for (int n = 2; n <= maxDigits; ++n) {
    counts_[n].assign(n + 1, mpz_class(0));
    for (int k = 0; k < n; ++k) {
      const mpz_class& prev = counts_[n - 1][k];
      if (prev == 0) continue;
      counts_[n][k] += prev * (b - 1);
      counts_[n][k + 1] += prev;
    }
  }
}

const mpz_class& DigitCountTable::count(int n, int k) const {
  if (n < 1 || n > maxDigits_) throw std::out_of_range("digit count outside table");
  if (k < 0 || k > n) return zero_;
  return counts_[n][k];
}

mpz_class count_kdigit(int b, int d, int k, int n) {
  if (n < 1) throw std::invalid_argument("count_kdigit needs n >= 1");
  if (k < 0 || k > n) return 0;
  return DigitCountTable(b, d, n).count(n, k);
}

mpq_class count_tail_weight(int b, int d, int k, int L) {
  if (L < 1) throw std::invalid_argument("tail weight needs L >= 1");
  if (k < 0) throw std::invalid_argument("tail weight needs k >= 0");
  // Full weight sum_{n >= 1} N(n, k) b^-n from the generating function.
  mpq_class total = (d > 0 && k == 0) ? b - 2 : b - 1;
  const DigitCountTable table(b, d, L);
  mpq_class bpow = 1;
  for (int n = 1; n <= L; ++n) {
    bpow *= b;
    total -= mpq_class(table.count(n, k)) / bpow;
  }
  total.canonicalize();
  return total;
}

std::vector<Interval> brute_force_intervals(int b, int d, int L, std::uint64_t budget) {
  DigitSpec::make(b, d, 0);
  if (L < 1) throw std::invalid_argument("brute force needs L >= 1");
  const double limitD = std::pow(static_cast<double>(b), L);
  if (limitD - 1 > static_cast<double>(budget))
    throw BudgetError("enumerating " + std::to_string(b) + "^" + std::to_string(L) +
                      " integers exceeds the budget of " + std::to_string(budget));
  const std::uint64_t limit = static_cast<std::uint64_t>(limitD + 0.5);

  // Odometer over 1 .. b^L - 1, digits little-endian, count of d tracked
  // incrementally. Leading positions beyond len are absent, not zeros.
  std::vector<int> dig(L + 1, 0);
  int len = 0;
  int cnt = 0;
  std::vector<double> sums(L + 1, 0.0);
  std::vector<std::uint64_t> terms(L + 1, 0);
  for (std::uint64_t n = 1; n < limit; ++n) {
    int i = 0;
    while (i < len && dig[i] == b - 1) {
      if (d == b - 1) --cnt;
      dig[i] = 0;
      if (d == 0) ++cnt;
      ++i;
    }
    if (i == len) {
      dig[i] = 1;
      ++len;
      if (d == 1) ++cnt;
    } else {
      if (dig[i] == d) --cnt;
      ++dig[i];
      if (dig[i] == d) ++cnt;
    }
    sums[cnt] += 1.0 / static_cast<double>(n);
    ++terms[cnt];
  }

  std::vector<Interval> out;
  out.reserve(L + 1);
  for (int k = 0; k <= L; ++k) {
    // Each of the t reciprocals and additions contributes at most one
    // rounding of relative size u = 2^-53 to the magnitude of the sum.
    const double u = std::ldexp(1.0, -53);
    const double t = static_cast<double>(terms[k]) + 2;
    const Real partial = Real(sums[k]);
    const Real err = Real(t * u / (1 - t * u)) * partial * Real(1.0001);
    const Real tail = to_real(count_tail_weight(b, d, k, L));
    const Real slack = 4 * unit_roundoff(tail) * tail;
    Interval iv;
    iv.lower = partial - err + tail - slack;
    iv.upper = partial + err + b * tail + slack * b;
    if (iv.lower < 0) iv.lower = 0;
    out.push_back(iv);
  }
  return out;
}

Interval brute_force_interval(const DigitSpec& spec, int L, std::uint64_t budget) {
  if (spec.count() <= L) return brute_force_intervals(spec.base(), spec.digit(), L, budget)[spec.count()];
  // No integer below b^L has more than L digits.
  const Real tail = to_real(count_tail_weight(spec.base(), spec.digit(), spec.count(), L));
  const double limitD = std::pow(static_cast<double>(spec.base()), L);
  if (limitD - 1 > static_cast<double>(budget)) throw BudgetError("enumeration exceeds the budget");
  return Interval{tail * (1 - 4 * unit_roundoff(tail)), spec.base() * tail * (1 + 4 * unit_roundoff(tail))};
}

}  // namespace kempner::irwin
