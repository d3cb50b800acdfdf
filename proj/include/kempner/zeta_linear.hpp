#pragma once

#include <gmpxx.h>

#include <map>
#include <ostream>
#include <string>

namespace kempner {

/// Exact value of the form q_0 + sum_n q_n zeta(n), n >= 2, with rational q.
class ZetaLinear {
 public:
  ZetaLinear() = default;
  ZetaLinear(const mpq_class& rational) : rational_(rational) {}  // NOLINT
  ZetaLinear(int value) : rational_(value) {}                      // NOLINT

  /// q * zeta(n).
  static ZetaLinear zeta(int n, const mpq_class& q = 1);

  const mpq_class& rational() const { return rational_; }
  /// Coefficient of zeta(n); zero when absent.
  mpq_class zeta_coefficient(int n) const;
  /// Non-zero zeta coefficients keyed by argument.
  const std::map<int, mpq_class>& zeta_terms() const { return zeta_; }
  int max_zeta_argument() const;
  bool is_zero() const { return rational_ == 0 && zeta_.empty(); }

  ZetaLinear& operator+=(const ZetaLinear& o);
  ZetaLinear& operator-=(const ZetaLinear& o);
  ZetaLinear& operator*=(const mpq_class& q);

  friend ZetaLinear operator+(ZetaLinear a, const ZetaLinear& b) { return a += b; }
  friend ZetaLinear operator-(ZetaLinear a, const ZetaLinear& b) { return a -= b; }
  friend ZetaLinear operator-(ZetaLinear a) { return a *= mpq_class(-1); }
  friend ZetaLinear operator*(ZetaLinear a, const mpq_class& q) { return a *= q; }
  friend ZetaLinear operator*(const mpq_class& q, ZetaLinear a) { return a *= q; }
  friend bool operator==(const ZetaLinear& a, const ZetaLinear& b) {
    return a.rational_ == b.rational_ && a.zeta_ == b.zeta_;
  }

  /// e.g. "-1/3 + 1/2*zeta(2) - zeta(3)".
  std::string to_string() const;

 private:
  void prune(int n);

  mpq_class rational_{0};
  std::map<int, mpq_class> zeta_;
};

std::ostream& operator<<(std::ostream& os, const ZetaLinear& z);

}  // namespace kempner
