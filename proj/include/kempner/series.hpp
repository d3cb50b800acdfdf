#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "kempner/digit_spec.hpp"
#include "kempner/real.hpp"
#include "kempner/zeta_linear.hpp"

namespace kempner::series {

/// Power series in c truncated at order N: coefficients c^0 .. c^N, all
/// stored (no sparse encoding). Arithmetic is closed at the order of the
/// shorter operand.
template <class C>
class TruncatedSeries {
 public:
  TruncatedSeries() : coeffs_(1) {}
  explicit TruncatedSeries(int order) : coeffs_(checked_size(order)) {}
  TruncatedSeries(std::vector<C> coeffs) : coeffs_(std::move(coeffs)) {  // NOLINT
    if (coeffs_.empty()) coeffs_.resize(1);
  }

  /// value * c^power, truncated at `order`.
  static TruncatedSeries monomial(const C& value, int power, int order) {
    TruncatedSeries s(order);
    if (power >= 0 && power <= order) s.coeffs_[power] = value;
    return s;
  }

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<C>& coeffs() const { return coeffs_; }
  const C& operator[](int i) const { return coeffs_.at(i); }
  C& operator[](int i) { return coeffs_.at(i); }
  /// Coefficient of c^i, zero beyond the stored range.
  C coeff(int i) const { return i >= 0 && i <= order() ? coeffs_[i] : C(0); }

  /// Index of the first non-zero coefficient, or -1.
  int valuation() const {
    for (int i = 0; i <= order(); ++i)
      if (!(coeffs_[i] == C(0))) return i;
    return -1;
  }

  TruncatedSeries truncated(int order) const {
    TruncatedSeries r(order);
    for (int i = 0; i <= std::min(order, this->order()); ++i) r.coeffs_[i] = coeffs_[i];
    return r;
  }

  /// Multiplication by c^s. Negative s divides by c^|s|: the leading
  /// coefficients must be zero and the known order drops by |s|.
  TruncatedSeries shifted(int s) const {
    const int newOrder = s < 0 ? order() + s : order();
    if (newOrder < 0) throw std::domain_error("shift leaves no known coefficient");
    TruncatedSeries r(newOrder);
    for (int i = 0; i <= order(); ++i) {
      const int j = i + s;
      if (j < 0) {
        if (!(coeffs_[i] == C(0))) throw std::domain_error("shift would drop a non-zero coefficient");
        continue;
      }
      if (j <= newOrder) r.coeffs_[j] = coeffs_[i];
    }
    return r;
  }

  TruncatedSeries& operator+=(const TruncatedSeries& o) {
    shrink_to(o.order());
    for (int i = 0; i <= order(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  TruncatedSeries& operator-=(const TruncatedSeries& o) {
    shrink_to(o.order());
    for (int i = 0; i <= order(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  TruncatedSeries& operator*=(const mpq_class& q) {
    for (auto& x : coeffs_) x *= q;
    return *this;
  }

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator-(TruncatedSeries a) { return a *= mpq_class(-1); }
  friend TruncatedSeries operator*(TruncatedSeries a, const mpq_class& q) { return a *= q; }
  friend TruncatedSeries operator*(const mpq_class& q, TruncatedSeries a) { return a *= q; }
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  static std::size_t checked_size(int order) {
    if (order < 0) throw std::invalid_argument("series order must be non-negative");
    return static_cast<std::size_t>(order) + 1;
  }
  void shrink_to(int order) {
    if (order < this->order()) coeffs_.resize(static_cast<std::size_t>(order) + 1);
  }

  std::vector<C> coeffs_;
};

using SeriesQ = TruncatedSeries<mpq_class>;
using SeriesZ = TruncatedSeries<ZetaLinear>;

/// Cauchy product, truncated at the smaller order.
SeriesQ operator*(const SeriesQ& a, const SeriesQ& b);
SeriesZ operator*(const SeriesZ& a, const SeriesQ& b);
SeriesZ operator*(const SeriesQ& a, const SeriesZ& b);
SeriesZ to_zeta_series(const SeriesQ& s);

/// Multiplicative inverse; throws std::domain_error on a zero constant term.
SeriesQ reciprocal(const SeriesQ& s);
/// a / b via reciprocal(b).
SeriesQ operator/(const SeriesQ& a, const SeriesQ& b);
/// Non-negative integer power.
SeriesQ pow(const SeriesQ& s, int e);
/// (1 + x c)^e for any integer e, to order N.
SeriesQ binomial_series(const mpq_class& x, int e, int order);
/// log(1 + s) for s with zero constant term.
SeriesQ log1p(const SeriesQ& s);

/// Limits for the series engine.
struct SeriesLimits {
  int maxTruncation = 256;
  int maxCount = 16;
  int maxMomentOrder = 64;
};

/// Exact Bernoulli number, B_1 = -1/2. Cached; safe under concurrent use.
mpq_class bernoulli(int n);

/// The polynomial c^(j+1) gamma_j in c (gamma'_j when primed) for a fixed
/// digit d, truncated at N >= j + 1.
SeriesQ gamma_poly(int j, int d, bool primed, int N);

/// Taylor coefficients at c = 0 of w_{j;m} (or z_{j;m}) for the digit d,
/// for every j <= maxK and m <= maxM.
class DeviationSeriesTable {
 public:
  enum class Family { W, Z };

  DeviationSeriesTable(Family family, int d, int maxK, int maxM, int N,
                       const SeriesLimits& limits = {});

  Family family() const { return family_; }
  int digit() const { return d_; }
  int max_count() const { return maxK_; }
  int max_order() const { return maxM_; }
  int truncation() const { return N_; }
  const SeriesQ& at(int j, int m) const;

 private:
  Family family_;
  int d_;
  int maxK_;
  int maxM_;
  int N_;
  std::vector<std::vector<SeriesQ>> rows_;
};

/// Default truncation order 2k + 6.
inline int default_truncation(int k) { return 2 * k + 6; }

/// Taylor coefficients of w_{k;m} in c through order N, k = spec.count().
SeriesQ w_series(const DigitSpec& spec, int m, int N, const SeriesLimits& limits = {});
/// Taylor coefficients of z_{k;m} in c through order N, k = spec.count().
SeriesQ z_series(const DigitSpec& spec, int m, int N, const SeriesLimits& limits = {});

/// Horner evaluation at c = 1/b, carried out at the current default
/// precision.
Real series_eval(const SeriesQ& s, int b);

/// Exact value at c = 1/b.
mpq_class series_eval_exact(const SeriesQ& s, int b);

/// Coefficients as fraction strings, "p/q" or "p".
std::vector<std::string> to_strings(const SeriesQ& s);

}  // namespace kempner::series
