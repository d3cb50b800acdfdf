#include "kempner/asymptotics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "kempner/irwin.hpp"
#include "kempner/rational.hpp"
#include "kempner/specfun.hpp"

namespace kempner::asymptotics {

namespace {

using series::SeriesQ;
using series::SeriesZ;
using Poly = std::vector<mpq_class>;  // ascending powers of d

Poly pmul(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1, mpq_class(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

Poly pscale(Poly a, const mpq_class& q) {
  for (auto& x : a) x *= q;
  return a;
}

mpq_class peval(const Poly& p, const mpq_class& d) {
  mpq_class r = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * d + *it;
  return r;
}

mpq_class q(long n, long den = 1) { return ratio(n, den); }

mpq_class qpow(const mpq_class& x, int e) {
  mpq_class r = 1;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

// d + 1/2
const Poly kHalfPlus = {q(1, 2), q(1)};

// Zeta factors of the (d > 0, k = 0) coefficients a_1 .. a_5.
std::vector<std::map<int, Poly>> kempner_factors() {
  std::vector<std::map<int, Poly>> f(5);
  f[0][2] = kHalfPlus;
  f[1][3] = {q(-1, 3), q(-1), q(-1)};
  f[2][4] = pmul(kHalfPlus, {q(1, 2), q(1), q(1)});
  f[2][2] = pscale(kHalfPlus, -1);
  f[3][5] = {q(-1, 5), q(-1), q(-2), q(-2), q(-1)};
  f[3][3] = {q(0), q(1), q(2)};
  f[3][2] = pscale(kHalfPlus, -1);
  f[4][6] = pmul(pmul(kHalfPlus, {q(1), q(1), q(1)}), {q(1, 3), q(1), q(1)});
  f[4][4] = pscale(pmul(kHalfPlus, {q(0), q(0), q(1)}), -3);
  f[4][3] = {q(5, 6), q(3), q(3)};
  return f;
}

ZetaLinear zl(const mpq_class& rational, std::initializer_list<std::pair<int, mpq_class>> zetas) {
  ZetaLinear z(rational);
  for (const auto& [n, c] : zetas) z += ZetaLinear::zeta(n, c);
  return z;
}

AsymptoticForm make_form(const DigitSpec& spec, int first, std::vector<ZetaLinear> coeffs) {
  AsymptoticForm f{spec, spec.digit() > 0 && spec.count() == 0, {}};
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    f.terms.push_back({first + static_cast<int>(i), std::move(coeffs[i])});
  return f;
}

std::vector<ZetaLinear> d0_k0() {
  return {zl(0, {{2, q(1, 2)}}), zl(0, {{3, q(-1, 3)}}), zl(0, {{2, q(-1, 2)}, {4, q(1, 4)}}),
          zl(0, {{2, q(-1, 2)}, {5, q(-1, 5)}}), zl(0, {{3, q(5, 6)}, {6, q(1, 6)}})};
}

std::vector<ZetaLinear> d0_kpos(int k) {
  if (k == 1)
    return {zl(0, {{2, q(1, 2)}}), zl(0, {{2, q(1, 2)}}), zl(0, {{2, q(-1, 2)}, {3, q(-5, 6)}}),
            zl(0, {{2, q(-3, 2)}, {4, q(1, 2)}})};
  if (k == 2)
    return {zl(0, {{2, q(1, 2)}}), zl(0, {{2, q(1)}}), zl(0, {{3, q(-1, 2)}}),
            zl(0, {{2, q(-15, 6)}, {3, q(-8, 6)}, {4, q(3, 6)}})};
  const mpq_class K = k;
  return {zl(0, {{2, q(1, 2)}}), zl(0, {{2, K / 2}}),
          zl(0, {{2, (K * K - K - 2) / 4}, {3, q(-1, 2)}}),
          zl(0, {{2, (K * K * K - 3 * K * K - 10 * K - 6) / 12}, {3, -K / 2}, {4, q(1, 2)}})};
}

std::vector<ZetaLinear> dpos_k0(const mpq_class& d) {
  const auto f = kempner_factors();
  const mpq_class h = d + q(1, 2);
  const mpq_class d1 = d + 1;
  std::vector<mpq_class> rat = {
      -h / (d * d),
      (9 * d * d + 8 * d + 2) / (6 * qpow(d, 3) * d1),
      -h * (2 * qpow(d, 4) + 6 * qpow(d, 3) + 6 * d * d + 4 * d + 1) / (2 * qpow(d, 4) * d1 * d1),
      (60 * qpow(d, 7) + 240 * qpow(d, 6) + 500 * qpow(d, 5) + 705 * qpow(d, 4) + 627 * qpow(d, 3) +
       331 * d * d + 96 * d + 12) /
          (60 * qpow(d, 5) * qpow(d1, 3)),
      -h * (9 * qpow(d, 6) + 38 * qpow(d, 5) + 56 * qpow(d, 4) + 44 * qpow(d, 3) + 22 * d * d + 7 * d + 1) /
          (3 * qpow(d, 6) * qpow(d1, 3))};
  std::vector<ZetaLinear> out;
  for (int i = 0; i < 5; ++i) {
    ZetaLinear z(rat[i]);
    for (const auto& [n, p] : f[i]) z += ZetaLinear::zeta(n, peval(p, d));
    out.push_back(z);
  }
  return out;
}

std::vector<ZetaLinear> dpos_k1(const mpq_class& d) {
  const mpq_class h = d + q(1, 2);
  const mpq_class d1 = d + 1;
  return {
      ZetaLinear(h / (d * d)),
      ZetaLinear(-(9 * d * d + 8 * d + 2) / (6 * qpow(d, 3) * d1)),
      zl(h * (2 * qpow(d, 3) + 4 * d * d + 4 * d + 1) / (2 * qpow(d, 4) * d1 * d1), {{2, h}}),
      zl(-(60 * qpow(d, 7) + 180 * qpow(d, 6) + 350 * qpow(d, 5) + 585 * qpow(d, 4) + 597 * qpow(d, 3) +
           331 * d * d + 96 * d + 12) /
             (60 * qpow(d, 5) * qpow(d1, 3)),
         {{3, -(2 * d + 1) * d}, {2, h}}),
      // The zeta(2) factor is -(d + 1/2); the printed "-(d+12)" is garbled.
      zl(-(12 * qpow(d, 8) - 24 * qpow(d, 7) - 216 * qpow(d, 6) - 387 * qpow(d, 5) - 339 * qpow(d, 4) -
           186 * qpow(d, 3) - 72 * d * d - 18 * d - 2) /
             (12 * qpow(d, 6) * qpow(d1, 3)),
         {{4, 3 * h * d * d}, {3, -(3 * d * d + 3 * d + q(5, 6))}, {2, -h}}),
  };
}

std::vector<ZetaLinear> dpos_k2(const mpq_class& d) {
  const mpq_class h = d + q(1, 2);
  const mpq_class d1 = d + 1;
  return {
      ZetaLinear(h / (d * d)),
      ZetaLinear(-h / (d * d * d1)),
      zl(-(30 * qpow(d, 3) + 70 * d * d + 47 * d + 10) / (12 * qpow(d, 3) * d1 * d1), {{2, h}}),
      zl(-(12 * qpow(d, 6) - 60 * qpow(d, 5) - 258 * qpow(d, 4) - 342 * qpow(d, 3) - 212 * d * d - 61 * d - 6) /
             (12 * qpow(d, 4) * qpow(d1, 3)),
         {{3, -(2 * d + 1) * d}, {2, 2 * d + 1}}),
      zl(-(60 * qpow(d, 7) + 240 * qpow(d, 6) + 440 * qpow(d, 5) + 561 * qpow(d, 4) + 465 * qpow(d, 3) +
           219 * d * d + 54 * d + 6) /
             (12 * qpow(d, 5) * qpow(d1, 3)),
         {{4, 3 * h * d * d}, {3, -h * (6 * d + 1)}}),
  };
}

std::vector<ZetaLinear> dpos_kge3(const mpq_class& d, int k) {
  const mpq_class h = d + q(1, 2);
  const mpq_class d1 = d + 1;
  const mpq_class K = k;
  const mpq_class K2 = K * K;
  const mpq_class K3 = K2 * K;
  const mpq_class p4 = (K3 - 9 * K2 + 14 * K) * qpow(d, 5) + (3 * K3 - 30 * K2 + 45 * K + 42) * qpow(d, 4) +
                       (3 * K3 - 33 * K2 + 39 * K + 114) * qpow(d, 3) + (K3 - 12 * K2 + 2 * K + 108) * d * d +
                       (-6 * K + 43) * d + 6;
  mpq_class a4rat = h * p4 / (6 * qpow(d, 4) * qpow(d1, 3));
  if (k == 3) a4rat += (d * d - q(1, 3)) / qpow(d, 3);
  return {
      ZetaLinear(h / (d * d)),
      ZetaLinear(h * ((K - 2) * d + K - 3) / (d * d * d1)),
      zl(h * ((K2 - 5 * K + 4) * qpow(d, 3) + (2 * K2 - 12 * K + 8) * d * d + (K2 - 7 * K + 1) * d - 2) /
             (2 * qpow(d, 3) * d1 * d1),
         {{2, h}}),
      zl(a4rat, {{3, -2 * d * h}, {2, K * h}}),
  };
}

}  // namespace

int first_exponent(const DigitSpec& spec) {
  const int k = spec.count();
  if (spec.digit() == 0) return k == 0 ? 1 : 2 * k + 1;
  return k <= 1 ? 1 : 2 * k - 1;
}

AsymptoticForm expansion(const DigitSpec& spec) {
  const int k = spec.count();
  const mpq_class d = spec.digit();
  const int e1 = first_exponent(spec);
  if (spec.digit() == 0) return make_form(spec, e1, k == 0 ? d0_k0() : d0_kpos(k));
  switch (k) {
    case 0: return make_form(spec, e1, dpos_k0(d));
    case 1: return make_form(spec, e1, dpos_k1(d));
    case 2: return make_form(spec, e1, dpos_k2(d));
    default: return make_form(spec, e1, dpos_kge3(d, k));
  }
}

std::vector<std::map<int, std::vector<mpq_class>>> kempner_zeta_factor_polynomials() {
  auto f = kempner_factors();
  return {f.begin(), f.end()};
}

// ---------------------------------------------------------------------------
// Independent route.

namespace {

// sum_{n >= 1} (n + c d)^-(m+1) = sum_j (-1)^j C(m+j, j) d^j zeta(m+1+j) c^j
SeriesZ hurwitz_series(int m, int d, int N) {
  SeriesZ s(N);
  mpq_class dp = 1;
  for (int j = 0; j <= N; ++j) {
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(m + j), static_cast<unsigned long>(j));
    mpq_class coef = mpq_class(binom) * dp;
    if (j % 2) coef = -coef;
    if (coef != 0) s[j] = ZetaLinear::zeta(m + 1 + j, coef);
    dp *= d;
  }
  return s;
}

int sgn(int m) { return m % 2 == 1 ? 1 : -1; }  // (-1)^(m-1)

}  // namespace

series::SeriesZ derived_expansion_series(const DigitSpec& spec, int N) {
  if (N < 1) throw std::invalid_argument("expansion order must be at least 1");
  const int d = spec.digit();
  const int k = spec.count();
  const int P = N + 2;  // working order; one order is lost when dividing by c
  const series::DeviationSeriesTable W(series::DeviationSeriesTable::Family::W, d, k, N, P);
  const SeriesQ c1 = SeriesQ::monomial(1, 1, P);
  auto cpow = [&](int e) { return SeriesQ::monomial(1, e, P); };

  SeriesZ E(P);
  auto add = [&](const SeriesZ& t, int sign) {
    if (sign > 0)
      E += t;
    else
      E -= t;
  };

  if (d == 0) {
    for (int m = 1; m <= N; ++m) {
      SeriesQ inner(P);
      if (k == 0) {
        inner = SeriesQ::monomial(ratio(1, m + 1), m, P) - cpow(m + 1) * W.at(0, m);
      } else {
        inner = cpow(m + 1) * (W.at(k - 1, m) - W.at(k, m));
      }
      SeriesZ t(P);
      for (int i = 0; i <= P; ++i)
        if (inner[i] != 0) t[i] = ZetaLinear::zeta(m + 1, inner[i]);
      add(t, sgn(m));
    }
    return E.truncated(N);
  }

  // y = c / (d (1 + c)) = 1/(bd + d)
  const SeriesQ y = (c1 * series::binomial_series(1, -1, P)) * ratio(1, d);
  std::vector<SeriesQ> ypow(N + 2, SeriesQ::monomial(1, 0, P));
  for (int m = 1; m <= N + 1; ++m) ypow[m] = ypow[m - 1] * y;

  if (k == 0) {
    // psi(1 + d c) - psi(1)
    for (int n = 1; n <= P; ++n) {
      SeriesZ t(P);
      t[n] = ZetaLinear::zeta(n + 1, qpow(mpq_class(d), n));
      add(t, sgn(n));
    }
    // A = -1/d + c^-1 log(1 + y) - sum (-1)^(m-1) c^m w_{0;m} s_m
    SeriesQ A = series::log1p(y).shifted(-1);
    A[0] -= ratio(1, d);
    for (int m = 1; m <= N; ++m) {
      const SeriesQ t = cpow(m) * W.at(0, m) * specfun::s_m_euler_maclaurin(d, m, P);
      if (sgn(m) > 0)
        A -= t;
      else
        A += t;
    }
    E += series::to_zeta_series(A.truncated(P - 1));
    // B = sum (-1)^(m-1) (c^m/(m+1) - c^(m+1) w_{0;m}) Z_m
    for (int m = 1; m <= N; ++m) {
      const SeriesQ coef = SeriesQ::monomial(ratio(1, m + 1), m, P) - cpow(m + 1) * W.at(0, m);
      add(coef * hurwitz_series(m, d, P), sgn(m));
    }
    return E.truncated(N);
  }

  for (int m = 1; m <= N; ++m) {
    const SeriesQ diff = W.at(k - 1, m) - W.at(k, m);
    const SeriesQ cm = cpow(m) * diff;
    add((cm * c1) * hurwitz_series(m, d, P), sgn(m));
    add(series::to_zeta_series(cm * specfun::s_m_euler_maclaurin(d, m, P)), sgn(m));
  }
  if (k >= 2) {
    for (int m = 1; m <= N; ++m)
      add(series::to_zeta_series((W.at(k - 2, m) - W.at(k - 1, m)) * ypow[m + 1]), sgn(m));
  } else {
    // y + c^-1 (y - log(1 + y)) - sum (-1)^(m-1) w_{0;m} y^(m+1)
    SeriesQ t = y + (y - series::log1p(y)).shifted(-1);
    for (int m = 1; m <= N; ++m) {
      const SeriesQ s = W.at(0, m) * ypow[m + 1];
      if (sgn(m) > 0)
        t -= s;
      else
        t += s;
    }
    E += series::to_zeta_series(t);
  }
  return E.truncated(N);
}

AsymptoticForm derive_expansion(const DigitSpec& spec) {
  const AsymptoticForm closed = expansion(spec);
  const int N = closed.terms.back().exponent;
  const SeriesZ s = derived_expansion_series(spec, N);
  AsymptoticForm out{spec, closed.logCorrection, {}};
  for (const auto& t : closed.terms) out.terms.push_back({t.exponent, s[t.exponent]});
  return out;
}

// ---------------------------------------------------------------------------
// Numerics.

namespace {

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

// Deviation reference: b log b [- b log(1 + 1/d)].
Real baseline(const DigitSpec& spec, bool logCorrection) {
  const Real B = spec.base();
  Real v = B * log_real(B);
  if (logCorrection) v -= B * log1p_real(Real(1) / spec.digit());
  return v;
}

}  // namespace

SumResult evaluate(const ZetaLinear& z, const PrecisionCtx& prec) {
  prec.validate();
  int maxCoef = 0;
  for (const auto& [n, c] : z.zeta_terms())
    maxCoef = std::max(maxCoef, static_cast<int>(std::ceil(std::log10(std::fabs(c.get_d()) + 1))));
  const PrecisionCtx sub{prec.targetDigits + maxCoef + 2, prec.guardDigits};
  PrecisionScope scope(specfun::working_digits(sub, 16, maxCoef));
  Real value = to_real(z.rational());
  Real error = 0;
  Real scale = abs(value);
  long ops = 1;
  for (const auto& [n, c] : z.zeta_terms()) {
    const SumResult s = specfun::zeta_int(n, sub);
    const Real cr = to_real(c);
    const Real term = cr * s.value;
    value += term;
    error += abs(cr) * s.errorBound;
    scale += abs(term);
    ++ops;
  }
  SumResult r;
  r.value = value;
  r.errorBound = (error + 2 * (ops + 8) * unit_roundoff(value) * scale) * Real(1.0001);
  r.termsUsed = ops;
  r.method = "zeta-linear";
  return r;
}

SumResult expansion_eval(const AsymptoticForm& form, int b, int upToTerm, const PrecisionCtx& prec) {
  prec.validate();
  if (upToTerm < 0 || upToTerm > static_cast<int>(form.terms.size()))
    throw std::invalid_argument("upToTerm must lie in 0.." + std::to_string(form.terms.size()));
  const DigitSpec spec = DigitSpec::make(b, form.spec.digit(), form.spec.count());
  const int mag = static_cast<int>(std::ceil(std::log10(static_cast<double>(b) * std::log(b) + 2)));
  PrecisionScope scope(specfun::working_digits(prec, 16, mag + 2));
  Real value = baseline(spec, form.logCorrection);
  Real error = 0;
  Real scale = abs(value);
  long ops = 2;
  const Real B = b;
  for (int i = 0; i < upToTerm; ++i) {
    const auto& t = form.terms[i];
    const SumResult c = evaluate(t.coefficient, prec);
    const Real w = pow(B, Real(-t.exponent));
    value += c.value * w;
    error += c.errorBound * w;
    scale += abs(c.value * w);
    ++ops;
  }
  SumResult r;
  r.value = value;
  r.errorBound = (error + 2 * (ops + 8) * unit_roundoff(value) * scale) * Real(1.0001);
  r.termsUsed = upToTerm;
  r.method = "asymptotic";
  return r;
}

int table_scale_power(const DigitSpec& spec) {
  const int k = spec.count();
  if (spec.digit() == 0) return k == 0 ? 5 : 2 * k + 4;
  switch (k) {
    case 0: return 5;
    case 1: return 6;
    case 2: return 8;
    default: return 2 * k + 3;
  }
}

int required_digits(int b, int scalePower) {
  return static_cast<int>(std::ceil(3 + scalePower * std::log10(static_cast<double>(b)))) + 1;
}

std::vector<DeltaCell> delta_table(const std::vector<int>& bases, const std::vector<int>& digits, int k,
                                   const PrecisionCtx& prec, std::optional<int> scalePower) {
  prec.validate();
  std::vector<DeltaCell> out;
  for (int b : bases) {
    for (int d : digits) {
      const DigitSpec spec = DigitSpec::make(b, d, k);
      const int s = scalePower.value_or(table_scale_power(spec));
      const int need = required_digits(b, s);
      if (prec.targetDigits < need)
        throw std::domain_error("cell (" + std::to_string(b) + "," + std::to_string(d) + ") needs " +
                                std::to_string(need) + " digits, got " + std::to_string(prec.targetDigits));
      const SumResult I = irwin::irwin_sum(spec, prec);
      const AsymptoticForm form = expansion(spec);
      const SumResult approx = expansion_eval(form, b, static_cast<int>(form.terms.size()), prec);
      PrecisionScope scope(specfun::working_digits(prec, 4, 4));
      const Real scale = pow(Real(b), Real(s));
      DeltaCell cell{spec, s, (I.value - approx.value) * scale, (I.errorBound + approx.errorBound) * scale};
      cell.scaledError += 4 * unit_roundoff(cell.scaled) * abs(cell.scaled);
      out.push_back(std::move(cell));
    }
  }
  return out;
}

SumResult leading_ratio(const DigitSpec& spec, const PrecisionCtx& prec) {
  prec.validate();
  const AsymptoticForm form = expansion(spec);
  const auto& lead = form.terms.front();
  // The relative accuracy needed on the deviation grows with b^e1.
  const int e1 = lead.exponent;
  const int extra = static_cast<int>(std::ceil(e1 * std::log10(static_cast<double>(spec.base())))) + 2;
  const PrecisionCtx inner{prec.targetDigits + extra, prec.guardDigits};
  const SumResult I = irwin::irwin_sum(spec, inner);
  const SumResult a1 = evaluate(lead.coefficient, inner);
  PrecisionScope scope(specfun::working_digits(inner, 8, 4));
  const Real base = baseline(spec, form.logCorrection);
  const Real scale = pow(Real(spec.base()), Real(e1));
  SumResult r;
  r.value = (I.value - base) * scale / a1.value;
  const Real relA = a1.errorBound / abs(a1.value);
  r.errorBound = (I.errorBound + 8 * unit_roundoff(base) * abs(base)) * scale / abs(a1.value) +
                 abs(r.value) * relA * 2 + 8 * unit_roundoff(r.value) * abs(r.value);
  r.termsUsed = I.termsUsed;
  r.method = "leading-ratio";
  return r;
}

}  // namespace kempner::asymptotics
