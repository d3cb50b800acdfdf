#pragma once

#include <gmpxx.h>

#include <memory>
#include <vector>

#include "kempner/digit_spec.hpp"

namespace kempner::moments {

/// U: u_{j;m} = integral of x^m against mu_j.
/// V: v_{j;m} = integral of (1-x)^m against mu_j.
enum class MomentKind { U, V };

/// Size limits for exact tables. Requests beyond them raise CapacityError.
struct MomentLimits {
  int maxOrder = 64;
  int maxCount = 16;
};

/// Sum of a^j over 0 <= a < b with a != d (a != d' when primed).
mpz_class gamma_sum(const DigitSpec& spec, int j, bool primed);

/// Exact moments for occurrence counts 0..maxK and orders 0..maxOrder.
/// Immutable once built.
class MomentTable {
 public:
  MomentTable(DigitSpec spec, MomentKind kind, int maxK, int maxOrder,
              std::vector<std::vector<mpq_class>> values);

  const DigitSpec& spec() const { return spec_; }
  MomentKind kind() const { return kind_; }
  int max_count() const { return maxK_; }
  int max_order() const { return maxOrder_; }

  const mpq_class& at(int j, int m) const;
  const std::vector<mpq_class>& row(int j) const;

  /// Signed deviation from the k -> infinity limit b/(m+1):
  /// w = b/(m+1) - u for U tables, z = v - b/(m+1) for V tables.
  mpq_class deviation(int j, int m) const;

 private:
  DigitSpec spec_;
  MomentKind kind_;
  int maxK_;
  int maxOrder_;
  std::vector<std::vector<mpq_class>> values_;
};

using MomentTablePtr = std::shared_ptr<const MomentTable>;

/// Rows 0..spec.count() of u_{j;m}, m <= maxOrder. Cached per
/// (b, d, k, maxOrder); the cache is safe under concurrent use.
MomentTablePtr u_table(const DigitSpec& spec, int maxOrder, const MomentLimits& limits = {});

/// Rows 0..spec.count() of v_{j;m}, m <= maxOrder.
MomentTablePtr v_table(const DigitSpec& spec, int maxOrder, const MomentLimits& limits = {});

/// u_{k;1} = b/2 - b(2d+1) / (2 (b^2-b+1)^(k+1)).
mpq_class u_k1_closed_form(const DigitSpec& spec);

/// v_{k;1} = b/2 + (d+1/2) c^(2k+1) / (1-c+c^2)^(k+1) with c = 1/b.
mpq_class v_k1_closed_form(const DigitSpec& spec);

/// w_{k;m} = b/(m+1) - u_{k;m} with k = spec.count().
mpq_class w_value(const DigitSpec& spec, int m);

/// z_{k;m} = v_{k;m} - b/(m+1) with k = spec.count().
mpq_class z_value(const DigitSpec& spec, int m);

/// Number of tables currently held by the memo cache.
std::size_t cached_table_count();

}  // namespace kempner::moments
