#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "kempner/digit_spec.hpp"
#include "kempner/moments.hpp"
#include "kempner/real.hpp"

namespace kempner::irwin {

/// The four (d, k) families, each with its own convergent series.
enum class RegimeId { D0K0, D0Kpos, DposK0, DposKpos };

RegimeId regime_of(const DigitSpec& spec);
std::string_view to_string(RegimeId regime);

/// Number of series terms and the a-priori bound on the neglected tail.
struct TruncationPlan {
  int order = 0;
  double log10Bound = 0;  // log10 of the tail bound at `order`
  std::string formula;
};

/// log10 of the regime tail bound after `order` terms.
double tail_bound_log10(const DigitSpec& spec, int order);

/// Smallest order whose tail bound is <= 10^-(targetDigits + guardDigits).
TruncationPlan truncation_order(const DigitSpec& spec, const PrecisionCtx& prec);

struct IrwinOptions {
  moments::MomentLimits limits;
};

/// Full evaluation record: the value plus per-term magnitudes of the main
/// series, in order of m.
struct IrwinEvaluation {
  SumResult result;
  TruncationPlan plan;
  std::vector<double> termMagnitudes;
};

/// I(b, d, k) with |value - I| <= errorBound <= 10^-targetDigits.
/// Throws CapacityError when the required moment order exceeds the limits.
SumResult irwin_sum(const DigitSpec& spec, const PrecisionCtx& prec, const IrwinOptions& options = {});
IrwinEvaluation irwin_evaluate(const DigitSpec& spec, const PrecisionCtx& prec,
                               const IrwinOptions& options = {});

/// Second route for d > 0, k = 1: the correction term
/// 1/(bd+d) + sum (-1)^(m-1) u_{0;m} / (bd+d)^(m+1) is evaluated as
/// y + (y - log(1+y))/c - sum (-1)^(m-1) w_{0;m} c^(m+1) / ((1+c) d)^(m+1)
/// with y = c / (d (1 + c)). Used to cross-check irwin_sum.
SumResult irwin_sum_k1_log_form(const DigitSpec& spec, const PrecisionCtx& prec,
                                const IrwinOptions& options = {});

/// Number of n-digit base-b integers (no leading zero) with exactly k
/// occurrences of d.
mpz_class count_kdigit(int b, int d, int k, int n);

/// N(n, k) for n <= maxDigits and all k <= n.
class DigitCountTable {
 public:
  DigitCountTable(int b, int d, int maxDigits);

  int base() const { return b_; }
  int digit() const { return d_; }
  int max_digits() const { return maxDigits_; }
  /// N(n, k); zero when k > n.
  const mpz_class& count(int n, int k) const;

 private:
  int b_;
  int d_;
  int maxDigits_;
  std::vector<std::vector<mpz_class>> counts_;  // [n][k]
  mpz_class zero_{0};
};

/// sum_{n > L} N(n, k) b^-n, exact. Bounds the contribution of integers with
/// more than L digits: it lies between this value and b times it.
mpq_class count_tail_weight(int b, int d, int k, int L);

struct Interval {
  Real lower;
  Real upper;
  bool contains(const Real& x) const { return lower <= x && x <= upper; }
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = 200'000'000;

/// Rigorous bracket of I(b, d, k): reciprocals of all integers below b^L are
/// summed explicitly, longer integers are bounded through the digit counts.
/// Throws BudgetError if b^L - 1 exceeds `budget`.
Interval brute_force_interval(const DigitSpec& spec, int L,
                              std::uint64_t budget = kDefaultEnumerationBudget);

/// Brackets for every k in 0..L at once (one enumeration pass).
std::vector<Interval> brute_force_intervals(int b, int d, int L,
                                            std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace kempner::irwin
