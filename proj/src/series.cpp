#include "kempner/series.hpp"

#include <algorithm>
#include <mutex>
#include <string>

#include "kempner/errors.hpp"
#include "kempner/rational.hpp"

namespace kempner::series {

namespace {

template <class A, class B, class R>
TruncatedSeries<R> cauchy(const TruncatedSeries<A>& a, const TruncatedSeries<B>& b) {
  const int n = std::min(a.order(), b.order());
  std::vector<R> out(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    if (a[i] == A(0)) continue;
    for (int j = 0; i + j <= n; ++j) {
      if (b[j] == B(0)) continue;
      out[i + j] += R(a[i] * b[j]);
    }
  }
  return TruncatedSeries<R>(std::move(out));
}

mpq_class binom_q(int n, int k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return mpq_class(r);
}

mpq_class pow_q(const mpq_class& x, int e) {
  mpq_class r = 1;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

}  // namespace

SeriesQ operator*(const SeriesQ& a, const SeriesQ& b) { return cauchy<mpq_class, mpq_class, mpq_class>(a, b); }

SeriesZ operator*(const SeriesZ& a, const SeriesQ& b) {
  const int n = std::min(a.order(), b.order());
  SeriesZ out(n);
  for (int i = 0; i <= n; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; i + j <= n; ++j)
      if (b[j] != 0) out[i + j] += a[i] * b[j];
  }
  return out;
}

SeriesZ operator*(const SeriesQ& a, const SeriesZ& b) { return b * a; }

SeriesZ to_zeta_series(const SeriesQ& s) {
  SeriesZ out(s.order());
  for (int i = 0; i <= s.order(); ++i) out[i] = ZetaLinear(s[i]);
  return out;
}

SeriesQ reciprocal(const SeriesQ& s) {
  if (s[0] == 0) throw std::domain_error("reciprocal of a series with zero constant term");
  const int n = s.order();
  SeriesQ r(n);
  const mpq_class inv = 1 / s[0];
  r[0] = inv;
  for (int i = 1; i <= n; ++i) {
    mpq_class acc = 0;
    for (int j = 1; j <= i; ++j)
      if (s[j] != 0) acc += s[j] * r[i - j];
    r[i] = -acc * inv;
  }
  return r;
}

SeriesQ operator/(const SeriesQ& a, const SeriesQ& b) { return a * reciprocal(b); }

SeriesQ pow(const SeriesQ& s, int e) {
  if (e < 0) throw std::invalid_argument("series power must be non-negative");
  SeriesQ result = SeriesQ::monomial(1, 0, s.order());
  SeriesQ base = s;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

SeriesQ binomial_series(const mpq_class& x, int e, int order) {
  SeriesQ r(order);
  // Generalized binomial coefficients e(e-1)...(e-i+1)/i!.
  mpq_class coef = 1;
  mpq_class xp = 1;
  for (int i = 0; i <= order; ++i) {
    r[i] = coef * xp;
    coef *= ratio(e - i, i + 1);
    xp *= x;
    if (coef == 0) break;
  }
  return r;
}

SeriesQ log1p(const SeriesQ& s) {
  if (s[0] != 0) throw std::domain_error("log1p needs a zero constant term");
  const int n = s.order();
  // L' = s' / (1 + s), integrated term by term.
  SeriesQ one_plus = s;
  one_plus[0] = 1;
  SeriesQ deriv(std::max(n - 1, 0));
  for (int i = 1; i <= n; ++i) deriv[i - 1] = s[i] * i;
  const SeriesQ q = deriv * reciprocal(one_plus.truncated(deriv.order()));
  SeriesQ out(n);
  for (int i = 1; i <= n; ++i) out[i] = q[i - 1] / mpq_class(i);
  return out;
}

mpq_class bernoulli(int n) {
  if (n < 0) throw std::invalid_argument("Bernoulli index must be non-negative");
  static std::mutex mutex;
  static std::vector<mpq_class> table{mpq_class(1)};
  std::lock_guard lock(mutex);
  while (static_cast<int>(table.size()) <= n) {
    // sum_{k=0}^{m} C(m+1, k) B_k = 0.
    const int m = static_cast<int>(table.size());
    mpq_class acc = 0;
    for (int k = 0; k < m; ++k) acc += binom_q(m + 1, k) * table[k];
    mpq_class b = -acc / mpq_class(m + 1);
    b.canonicalize();
    table.push_back(b);
  }
  return table[n];
}

SeriesQ gamma_poly(int j, int d, bool primed, int N) {
  if (j < 0 || d < 0) throw std::invalid_argument("gamma_poly needs j >= 0 and d >= 0");
  if (N < j + 1) throw std::invalid_argument("gamma_poly needs N >= j + 1");
  SeriesQ r(N);
  // c^(j+1) * sum_{a<b} a^j = sum_p C(j,p) B_p c^p / (j+1-p).
  for (int p = 0; p <= j; ++p) {
    const mpq_class bp = bernoulli(p);
    if (bp == 0) continue;
    r[p] += binom_q(j, p) * bp / mpq_class(j + 1 - p);
  }
  if (!primed) {
    r[j + 1] -= pow_q(mpq_class(d), j);
  } else {
    // c^(j+1) d'^j = c (1 - (d+1) c)^j.
    const SeriesQ t = binomial_series(mpq_class(-(d + 1)), j, N).shifted(1);
    r -= t.truncated(N);
  }
  for (int i = 0; i <= N; ++i) r[i].canonicalize();
  return r;
}

DeviationSeriesTable::DeviationSeriesTable(Family family, int d, int maxK, int maxM, int N,
                                           const SeriesLimits& limits)
    : family_(family), d_(d), maxK_(maxK), maxM_(maxM), N_(N) {
  if (d < 0 || maxK < 0 || maxM < 0 || N < 0)
    throw std::invalid_argument("deviation series parameters must be non-negative");
  if (N > limits.maxTruncation)
    throw CapacityError("series truncation " + std::to_string(N) + " exceeds the limit " +
                        std::to_string(limits.maxTruncation));
  if (maxK > limits.maxCount)
    throw CapacityError("occurrence count " + std::to_string(maxK) + " exceeds the limit " +
                        std::to_string(limits.maxCount));
  if (maxM > limits.maxMomentOrder)
    throw CapacityError("moment order " + std::to_string(maxM) + " exceeds the limit " +
                        std::to_string(limits.maxMomentOrder));

  // Work with t_{j;m} = c * x_{j;m} (x = u or v), a genuine power series
  // with constant term 1/(m+1). One extra order covers the final division
  // by c. The recurrence multiplied through by c^(m+2) reads
  //   (1 - c^m + c^(m+1)) t_{0;m} = [V: c] + sum_{j=1}^m C(m,j) c^(m-j) G_j t_{0;m-j}
  //   (1 - c^m + c^(m+1)) t_{k;m} = sum_{j=1}^m C(m,j) c^(m-j) G_j t_{k;m-j}
  //                                 + sum_{j=0}^m C(m,j) c^(m+1) e^j t_{k-1;m-j}
  // with G_j = c^(j+1) gamma_j and c^(m+1) e^j = c^(m+1-j) (e c)^j.
  const bool primed = family == Family::Z;
  const int M = N + 1;

  std::vector<SeriesQ> G(maxM + 1);
  for (int j = 1; j <= maxM; ++j) G[j] = gamma_poly(j, d, primed, std::max(M, j + 1)).truncated(M);

  // c^(m+1) e^j as a series: U uses e = d, V uses e c = 1 - (d+1) c.
  auto coupling = [&](int m, int j) {
    if (!primed) {
      if (m + 1 > M) return SeriesQ(M);
      return SeriesQ::monomial(pow_q(mpq_class(d), j), m + 1, M);
    }
    return binomial_series(mpq_class(-(d + 1)), j, M).shifted(m + 1 - j).truncated(M);
  };

  std::vector<std::vector<SeriesQ>> t(maxK + 1, std::vector<SeriesQ>(maxM + 1));
  for (int k = 0; k <= maxK; ++k) {
    for (int m = 0; m <= maxM; ++m) {
      if (m == 0) {
        t[k][0] = SeriesQ::monomial(1, 0, M);  // c * b
        continue;
      }
      SeriesQ rhs(M);
      if (k == 0 && primed) rhs[1] = 1;
      for (int j = 1; j <= m; ++j)
        rhs += binom_q(m, j) * (G[j].shifted(m - j).truncated(M) * t[k][m - j]);
      if (k > 0)
        for (int j = 0; j <= m; ++j) {
          if (!primed && d == 0 && j > 0) continue;
          rhs += binom_q(m, j) * (coupling(m, j) * t[k - 1][m - j]);
        }
      SeriesQ lhs = SeriesQ::monomial(1, 0, M);
      if (m <= M) lhs[m] -= 1;
      if (m + 1 <= M) lhs[m + 1] += 1;
      t[k][m] = rhs * reciprocal(lhs);
    }
  }

  rows_.assign(maxK + 1, std::vector<SeriesQ>(maxM + 1));
  for (int k = 0; k <= maxK; ++k)
    for (int m = 0; m <= maxM; ++m) {
      SeriesQ s = t[k][m];
      s[0] -= ratio(1, m + 1);
      if (!primed) s = -s;  // w = b/(m+1) - u, z = v - b/(m+1)
      rows_[k][m] = s.shifted(-1);
      if (rows_[k][m].order() > N) rows_[k][m] = rows_[k][m].truncated(N);
    }
}

const SeriesQ& DeviationSeriesTable::at(int j, int m) const {
  if (j < 0 || j > maxK_ || m < 0 || m > maxM_) throw std::out_of_range("deviation series index outside table");
  return rows_[j][m];
}

SeriesQ w_series(const DigitSpec& spec, int m, int N, const SeriesLimits& limits) {
  DeviationSeriesTable t(DeviationSeriesTable::Family::W, spec.digit(), spec.count(), m, N, limits);
  return t.at(spec.count(), m);
}

SeriesQ z_series(const DigitSpec& spec, int m, int N, const SeriesLimits& limits) {
  DeviationSeriesTable t(DeviationSeriesTable::Family::Z, spec.digit(), spec.count(), m, N, limits);
  return t.at(spec.count(), m);
}

Real series_eval(const SeriesQ& s, int b) {
  const Real c = Real(1) / b;
  Real acc = 0;
  for (int i = s.order(); i >= 0; --i) acc = acc * c + to_real(s[i]);
  return acc;
}

mpq_class series_eval_exact(const SeriesQ& s, int b) {
  const mpq_class c(1, b);
  mpq_class acc = 0;
  for (int i = s.order(); i >= 0; --i) acc = acc * c + s[i];
  acc.canonicalize();
  return acc;
}

std::vector<std::string> to_strings(const SeriesQ& s) {
  std::vector<std::string> out;
  out.reserve(s.coeffs().size());
  for (const auto& q : s.coeffs()) out.push_back(q.get_str());
  return out;
}

}  // namespace kempner::series
