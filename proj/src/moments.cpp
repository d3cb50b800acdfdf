#include "kempner/moments.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>

#include "kempner/errors.hpp"
#include "kempner/rational.hpp"

namespace kempner::moments {

mpz_class gamma_sum(const DigitSpec& spec, int j, bool primed) {
  if (j < 0) throw std::invalid_argument("gamma_sum needs j >= 0");
  const int excluded = primed ? spec.complement_digit() : spec.digit();
  mpz_class total = 0;
  mpz_class p;
  for (int a = 0; a < spec.base(); ++a) {
    if (a == excluded) continue;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(j));
    total += p;
  }
  return total;
}

MomentTable::MomentTable(DigitSpec spec, MomentKind kind, int maxK, int maxOrder,
                         std::vector<std::vector<mpq_class>> values)
    : spec_(spec), kind_(kind), maxK_(maxK), maxOrder_(maxOrder), values_(std::move(values)) {}

const mpq_class& MomentTable::at(int j, int m) const {
  if (j < 0 || j > maxK_ || m < 0 || m > maxOrder_)
    throw std::out_of_range("moment index (" + std::to_string(j) + ", " + std::to_string(m) + ") outside table");
  return values_[j][m];
}

const std::vector<mpq_class>& MomentTable::row(int j) const {
  if (j < 0 || j > maxK_) throw std::out_of_range("moment row outside table");
  return values_[j];
}

mpq_class MomentTable::deviation(int j, int m) const {
  const mpq_class limit = ratio(spec_.base(), m + 1);
  return kind_ == MomentKind::U ? mpq_class(limit - at(j, m)) : mpq_class(at(j, m) - limit);
}

namespace {

void check_limits(const DigitSpec& spec, int maxOrder, const MomentLimits& limits) {
  if (maxOrder < 0) throw std::invalid_argument("moment order must be non-negative");
  if (maxOrder > limits.maxOrder)
    throw CapacityError("moment order " + std::to_string(maxOrder) + " exceeds the limit " +
                        std::to_string(limits.maxOrder));
  if (spec.count() > limits.maxCount)
    throw CapacityError("occurrence count " + std::to_string(spec.count()) + " exceeds the limit " +
                        std::to_string(limits.maxCount));
}

// Rows 0..k of the recurrences
//   (b^{m+1} - b + 1) x_{0;m} = [V: b^{m+1}] + sum_{j=1}^m C(m,j) g_j x_{0;m-j}
//   (b^{m+1} - b + 1) x_{k;m} = sum_{j=1}^m C(m,j) g_j x_{k;m-j}
//                               + sum_{j=0}^m C(m,j) e^j x_{k-1;m-j}
// with (g, e) = (gamma, d) for U and (gamma', d') for V.
std::vector<std::vector<mpq_class>> build_rows(const DigitSpec& spec, MomentKind kind, int M) {
  const bool primed = kind == MomentKind::V;
  const int b = spec.base();
  const int e = primed ? spec.complement_digit() : spec.digit();
  const int K = spec.count();

  std::vector<mpz_class> gamma(M + 1);
  for (int j = 0; j <= M; ++j) gamma[j] = gamma_sum(spec, j, primed);

  std::vector<mpz_class> epow(M + 1);
  epow[0] = 1;
  for (int j = 1; j <= M; ++j) epow[j] = epow[j - 1] * e;

  std::vector<mpz_class> bpow(M + 2);
  bpow[0] = 1;
  for (int j = 1; j <= M + 1; ++j) bpow[j] = bpow[j - 1] * b;

  std::vector<std::vector<mpz_class>> binom(M + 1, std::vector<mpz_class>(M + 1));
  for (int m = 0; m <= M; ++m)
    for (int j = 0; j <= m; ++j)
      mpz_bin_uiui(binom[m][j].get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(j));

  std::vector<std::vector<mpq_class>> rows(K + 1, std::vector<mpq_class>(M + 1));
  for (int k = 0; k <= K; ++k) {
    auto& x = rows[k];
    for (int m = 0; m <= M; ++m) {
      mpq_class rhs = 0;
      if (k == 0) {
        if (m == 0) {
          x[0] = b;
          continue;
        }
        if (primed) rhs = bpow[m + 1];
      } else {
        const auto& prev = rows[k - 1];
        for (int j = 0; j <= m; ++j) {
          if (epow[j] == 0) continue;
          rhs += mpq_class(binom[m][j] * epow[j]) * prev[m - j];
        }
      }
      for (int j = 1; j <= m; ++j) rhs += mpq_class(binom[m][j] * gamma[j]) * x[m - j];
      const mpz_class denom = bpow[m + 1] - b + 1;
      x[m] = rhs / mpq_class(denom);
      x[m].canonicalize();
    }
  }
  return rows;
}

using CacheKey = std::tuple<int, int, int, int, int>;

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

std::map<CacheKey, MomentTablePtr>& cache() {
  static std::map<CacheKey, MomentTablePtr> c;
  return c;
}

MomentTablePtr cached_table(const DigitSpec& spec, MomentKind kind, int maxOrder, const MomentLimits& limits) {
  check_limits(spec, maxOrder, limits);
  const CacheKey key{spec.base(), spec.digit(), spec.count(), maxOrder, static_cast<int>(kind)};
  {
    std::lock_guard lock(cache_mutex());
    if (auto it = cache().find(key); it != cache().end()) return it->second;
  }
  // Built outside the lock; a concurrent builder of the same key produces an
  // identical table and the first insertion wins.
  auto table = std::make_shared<const MomentTable>(spec, kind, spec.count(), maxOrder,
                                                   build_rows(spec, kind, maxOrder));
  std::lock_guard lock(cache_mutex());
  return cache().emplace(key, std::move(table)).first->second;
}

}  // namespace

MomentTablePtr u_table(const DigitSpec& spec, int maxOrder, const MomentLimits& limits) {
  return cached_table(spec, MomentKind::U, maxOrder, limits);
}

MomentTablePtr v_table(const DigitSpec& spec, int maxOrder, const MomentLimits& limits) {
  return cached_table(spec, MomentKind::V, maxOrder, limits);
}

mpq_class u_k1_closed_form(const DigitSpec& spec) {
  const int b = spec.base();
  mpz_class q = mpz_class(b) * b - b + 1;
  mpz_class qpow;
  mpz_pow_ui(qpow.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(spec.count() + 1));
  mpq_class r = ratio(b, 2) - ratio(mpz_class(b) * (2 * spec.digit() + 1), 2 * qpow);
  r.canonicalize();
  return r;
}

mpq_class v_k1_closed_form(const DigitSpec& spec) {
  const int b = spec.base();
  const int k = spec.count();
  // c^(2k+1) / (1 - c + c^2)^(k+1) = b^(2k+1-2(k+1)) ... written over integers:
  // = b / (b^2 - b + 1)^(k+1).
  mpz_class q = mpz_class(b) * b - b + 1;
  mpz_class qpow;
  mpz_pow_ui(qpow.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(k + 1));
  mpq_class r = ratio(b, 2) + ratio(2 * spec.digit() + 1, 2) * ratio(mpz_class(b), qpow);
  r.canonicalize();
  return r;
}

mpq_class w_value(const DigitSpec& spec, int m) {
  return u_table(spec, m)->deviation(spec.count(), m);
}

mpq_class z_value(const DigitSpec& spec, int m) {
  return v_table(spec, m)->deviation(spec.count(), m);
}

std::size_t cached_table_count() {
  std::lock_guard lock(cache_mutex());
  return cache().size();
}

}  // namespace kempner::moments
