#include <doctest.h>

#include <string>

#include "kempner/errors.hpp"
#include "kempner/irwin.hpp"
#include "kempner/rational.hpp"

using namespace kempner;
using namespace kempner::irwin;

namespace {

Real ten_pow(int e) { return pow(Real(10), Real(e)); }

bool near(const Real& v, const char* ref, const char* tol) {
  PrecisionScope scope(60);
  return abs(v - Real(ref)) <= Real(tol);
}

int occurrences(long n, int b, int d) {
  int c = 0;
  for (; n > 0; n /= b) c += (n % b) == d;
  return c;
}

}  // namespace

TEST_CASE("regime dispatch") {
  CHECK(regime_of(DigitSpec::make(10, 0, 0)) == RegimeId::D0K0);
  CHECK(regime_of(DigitSpec::make(10, 0, 2)) == RegimeId::D0Kpos);
  CHECK(regime_of(DigitSpec::make(10, 4, 0)) == RegimeId::DposK0);
  CHECK(regime_of(DigitSpec::make(10, 4, 1)) == RegimeId::DposKpos);
  CHECK(to_string(RegimeId::DposK0) == "DposK0");
}

TEST_CASE("published sums") {
  const SumResult k10 = irwin_sum(DigitSpec::make(10, 0, 0), PrecisionCtx{15, 10});
  CHECK(k10.errorBound <= ten_pow(-15));
  CHECK(near(k10.value, "23.103447909420542", "1e-15"));
  CHECK(k10.method == "D0K0");

  const SumResult k1000 = irwin_sum(DigitSpec::make(1000, 0, 0), PrecisionCtx{30, 10});
  CHECK(near(k1000.value, "6907.7561010479319268744907724", "1e-21"));

  const SumResult nine = irwin_sum(DigitSpec::make(1000, 9, 0), PrecisionCtx{36, 10});
  CHECK(near(nine.value, "6802.410165253090787463765128313543", "1e-27"));
}

TEST_CASE("the empty sum in base 2") {
  const SumResult r = irwin_sum(DigitSpec::make(2, 1, 0), PrecisionCtx{5, 10});
  CHECK(abs(r.value) <= r.errorBound);
  const Interval iv = brute_force_interval(DigitSpec::make(2, 1, 0), 10);
  CHECK(iv.lower == 0);
  CHECK(iv.upper == 0);
}

TEST_CASE("truncation orders") {
  const auto p10 = truncation_order(DigitSpec::make(10, 0, 0), PrecisionCtx{15, 10});
  CHECK(p10.order >= 23);
  CHECK(p10.order <= 26);
  CHECK(p10.log10Bound <= -25);
  CHECK(tail_bound_log10(DigitSpec::make(10, 0, 0), p10.order - 1) > -25);
  const auto p1000 = truncation_order(DigitSpec::make(1000, 0, 0), PrecisionCtx{15, 10});
  CHECK(p1000.order >= 8);
  CHECK(p1000.order <= 9);
  CHECK(!p1000.formula.empty());
}

TEST_CASE("capacity errors when the moment order would exceed the limit") {
  CHECK_THROWS_AS(irwin_sum(DigitSpec::make(2, 1, 0), PrecisionCtx{10, 10}), CapacityError);
  IrwinOptions tight;
  tight.limits.maxOrder = 10;
  CHECK_THROWS_AS(irwin_sum(DigitSpec::make(10, 0, 0), PrecisionCtx{15, 10}, tight), CapacityError);
}

TEST_CASE("digit counts") {
  CHECK(count_kdigit(10, 9, 1, 2) == 17);
  CHECK(count_kdigit(10, 9, 0, 1) == 8);
  CHECK(count_kdigit(10, 0, 3, 2) == 0);
  for (int b : {2, 3, 5}) {
    for (int d = 0; d < b; ++d) {
      long lo = 1;
      for (int n = 1; n <= 6; ++n) {
        const long hi = lo * b;
        for (int k = 0; k <= n; ++k) {
          long brute = 0;
          for (long x = lo; x < hi; ++x) brute += occurrences(x, b, d) == k;
          CHECK(count_kdigit(b, d, k, n) == brute);
        }
        lo = hi;
      }
    }
  }
}

TEST_CASE("digit-count weights sum to the closed total") {
  // sum_n N(n,k) b^-n = b - 2 for d > 0, k = 0, else b - 1
  for (int b : {3, 10}) {
    for (int d : {0, 1}) {
      const DigitCountTable t(b, d, 8);
      for (int k = 0; k <= 3; ++k) {
        mpq_class head = 0;
        mpz_class bp = 1;
        for (int n = 1; n <= 8; ++n) {
          bp *= b;
          head += mpq_class(t.count(n, k)) / mpq_class(bp);
          CHECK(count_tail_weight(b, d, k, n) + head == (d > 0 && k == 0 ? b - 2 : b - 1));
        }
      }
    }
  }
}

TEST_CASE("brute-force brackets contain the series value") {
  const Interval iv = brute_force_interval(DigitSpec::make(3, 1, 1), 8);
  const SumResult r = irwin_sum(DigitSpec::make(3, 1, 1), PrecisionCtx{10, 10});
  CHECK(iv.contains(r.value));
  CHECK(iv.lower < iv.upper);
  for (int b = 3; b <= 6; ++b) {
    for (int d = 0; d < b; ++d) {
      const auto ivs = brute_force_intervals(b, d, 7);
      for (int k = 0; k <= 2; ++k) {
        CAPTURE(b);
        CAPTURE(d);
        CAPTURE(k);
        CHECK(ivs[k].contains(irwin_sum(DigitSpec::make(b, d, k), PrecisionCtx{8, 10}).value));
      }
    }
  }
  // k beyond the enumerated digits is bracketed by the tail alone
  const Interval far = brute_force_interval(DigitSpec::make(3, 2, 9), 6);
  CHECK(far.lower > 0);
  CHECK(far.contains(irwin_sum(DigitSpec::make(3, 2, 9), PrecisionCtx{8, 10}).value));
}

TEST_CASE("enumeration budget") {
  CHECK_THROWS_AS(brute_force_interval(DigitSpec::make(10, 1, 0), 7, 1000), BudgetError);
  CHECK_THROWS_AS(brute_force_interval(DigitSpec::make(10, 1, 0), 0), std::invalid_argument);
}

TEST_CASE("recomputation at ten more digits stays inside the error bound") {
  for (int b : {10, 100, 1000}) {
    for (int d : {0, 1, 9}) {
      for (int k : {0, 1, 2}) {
        const auto s = DigitSpec::make(b, d, k);
        const SumResult lo = irwin_sum(s, PrecisionCtx{15, 10});
        const SumResult hi = irwin_sum(s, PrecisionCtx{25, 10});
        PrecisionScope scope(50);
        CAPTURE(s.to_string());
        CHECK(abs(lo.value - hi.value) <= lo.errorBound);
        CHECK(lo.errorBound <= ten_pow(-15));
      }
    }
  }
}

TEST_CASE("both forms of the single-occurrence correction agree") {
  for (int b : {10, 37, 1000}) {
    for (int d : {1, 5, 9}) {
      const auto s = DigitSpec::make(b, d, 1);
      const SumResult a = irwin_sum(s, PrecisionCtx{30, 10});
      const SumResult c = irwin_sum_k1_log_form(s, PrecisionCtx{30, 10});
      PrecisionScope scope(60);
      CHECK(abs(a.value - c.value) <= a.errorBound + c.errorBound);
      CHECK(c.method.find("log-form") != std::string::npos);
    }
  }
  CHECK_THROWS_AS(irwin_sum_k1_log_form(DigitSpec::make(10, 1, 2), PrecisionCtx{10, 10}), std::invalid_argument);
}

TEST_CASE("main-series terms eventually decrease") {
  for (const auto& s : {DigitSpec::make(10, 0, 0), DigitSpec::make(10, 0, 2), DigitSpec::make(10, 3, 0),
                        DigitSpec::make(10, 3, 2), DigitSpec::make(100, 9, 4)}) {
    const IrwinEvaluation ev = irwin_evaluate(s, PrecisionCtx{20, 10});
    const auto& t = ev.termMagnitudes;
    REQUIRE(t.size() >= 4);
    for (std::size_t i = t.size() / 2; i + 1 < t.size(); ++i) CHECK(t[i + 1] < t[i]);
    CHECK(ev.plan.order == static_cast<int>(t.size()));
  }
}
