#include <doctest.h>

#include "kempner/asymptotics.hpp"
#include "kempner/irwin.hpp"
#include "kempner/rational.hpp"

using namespace kempner;
using namespace kempner::asymptotics;

namespace {

bool near(const Real& v, const char* ref, const char* tol) {
  PrecisionScope scope(60);
  return abs(v - Real(ref)) <= Real(tol);
}

}  // namespace

TEST_CASE("expansion layout") {
  struct Case {
    int d, k, first, count;
  };
  for (const Case& c : {Case{0, 0, 1, 5}, Case{0, 1, 3, 4}, Case{0, 4, 9, 4}, Case{3, 0, 1, 5}, Case{3, 1, 1, 5},
                        Case{3, 2, 3, 5}, Case{3, 3, 5, 4}, Case{3, 6, 11, 4}}) {
    const auto f = expansion(DigitSpec::make(10, c.d, c.k));
    CAPTURE(c.d);
    CAPTURE(c.k);
    CHECK(first_exponent(f.spec) == c.first);
    REQUIRE(static_cast<int>(f.terms.size()) == c.count);
    for (int i = 0; i < c.count; ++i) CHECK(f.terms[i].exponent == c.first + i);
    CHECK(f.logCorrection == (c.d > 0 && c.k == 0));
  }
}

TEST_CASE("leading coefficients") {
  const auto f1 = expansion(DigitSpec::make(10, 1, 0));
  // 3/2 (zeta(2) - 1)
  CHECK(f1.terms[0].coefficient == ZetaLinear(ratio(-3, 2)) + ZetaLinear::zeta(2, ratio(3, 2)));
  CHECK(near(evaluate(f1.terms[0].coefficient, PrecisionCtx{35, 10}).value, "0.967401100272339654708622749969038",
             "1e-32"));
  CHECK(expansion(DigitSpec::make(10, 2, 1)).terms[0].coefficient == ZetaLinear(ratio(5, 8)));
}

TEST_CASE("closed forms agree with the independent series route") {
  for (int d = 0; d <= 10; ++d) {
    for (int k = 0; k <= 6; ++k) {
      const auto spec = DigitSpec::make(20, d, k);
      const auto closed = expansion(spec);
      const auto derived = derive_expansion(spec);
      CAPTURE(d);
      CAPTURE(k);
      for (std::size_t i = 0; i < closed.terms.size(); ++i) CHECK(closed.terms[i].coefficient == derived.terms[i].coefficient);
      const auto s = derived_expansion_series(spec, closed.terms.back().exponent);
      for (int e = 0; e < first_exponent(spec); ++e) CHECK(s[e].is_zero());
    }
  }
}

TEST_CASE("zeta factors at d = 0 reproduce the d = 0 coefficients") {
  const auto factors = kempner_zeta_factor_polynomials();
  const auto d0 = expansion(DigitSpec::make(10, 0, 0));
  REQUIRE(factors.size() == 5);
  for (int i = 0; i < 5; ++i) {
    std::map<int, mpq_class> atZero;
    for (const auto& [n, p] : factors[i])
      if (p.front() != 0) atZero[n] = p.front();
    CHECK(atZero == d0.terms[i].coefficient.zeta_terms());
    CHECK(d0.terms[i].coefficient.rational() == 0);
  }
  // and at d = 3 they are the zeta parts of the d > 0 coefficients
  const auto d3 = expansion(DigitSpec::make(10, 3, 0));
  for (int i = 0; i < 5; ++i) {
    for (const auto& [n, p] : factors[i]) {
      mpq_class v = 0;
      for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * 3 + *it;
      CHECK(d3.terms[i].coefficient.zeta_coefficient(n) == v);
    }
  }
}

TEST_CASE("coefficients stabilize in k") {
  for (int d = 1; d <= 9; ++d) {
    const mpq_class D = d;
    for (int k = 4; k <= 8; ++k) {
      const auto a = expansion(DigitSpec::make(10, d, k));
      const auto b = expansion(DigitSpec::make(10, d, k + 1));
      CHECK(a.terms[0].coefficient == b.terms[0].coefficient);
      CHECK(b.terms[1].coefficient - a.terms[1].coefficient == ZetaLinear((D + ratio(1, 2)) / (D * D)));
    }
  }
}

TEST_CASE("fifth single-occurrence coefficient matches the tabulated limits") {
  const char* const table[] = {"7.02", "7.33", "52.71", "153.42", "328.27"};
  for (int d = 1; d <= 5; ++d) {
    const auto f = expansion(DigitSpec::make(10, d, 1));
    CHECK(near(evaluate(f.terms[4].coefficient, PrecisionCtx{20, 10}).value, table[d - 1], "0.005"));
  }
}

TEST_CASE("d = 9 coefficients and the first refinement at b = 1000") {
  const char* const table[] = {"15.509589684440867195870660132520", "-108.567448436811288262133914700522",
                               "914.770073492156313978150997011578", "-8302.594067654065061880891954936008",
                               "77274.510927845642303169206910055693"};
  const auto f = expansion(DigitSpec::make(1000, 9, 0));
  for (int i = 0; i < 5; ++i)
    CHECK(near(evaluate(f.terms[i].coefficient, PrecisionCtx{35, 10}).value, table[i], "1e-29"));
  const SumResult one = expansion_eval(f, 1000, 1, PrecisionCtx{35, 10});
  CHECK(near(one.value, "6802.4102729139951916936692538739123", "1e-30"));
}

TEST_CASE("expansion evaluation") {
  const PrecisionCtx prec{30, 10};
  const auto f = expansion(DigitSpec::make(10, 0, 0));
  // five terms at b = 10: 23.10344761816819087769577...
  CHECK(near(expansion_eval(f, 10, 5, prec).value, "23.1034476181681908776957732452582", "1e-28"));
  CHECK(near(expansion_eval(f, 1000, 5, prec).value, "6907.7561010479319268743516533", "1e-25"));
  const auto g = expansion(DigitSpec::make(10, 4, 0));
  {
    const SumResult base = expansion_eval(g, 10, 0, prec);
    PrecisionScope scope(60);
    const Real want = 10 * log(Real(10)) - 10 * log(Real(5) / 4);
    CHECK(abs(base.value - want) <= base.errorBound + Real("1e-40"));
  }
  CHECK_THROWS_AS(expansion_eval(g, 10, 6, prec), std::invalid_argument);
  CHECK_THROWS_AS(expansion_eval(g, 4, 1, prec), std::invalid_argument);
}

TEST_CASE("scaled deviation tables") {
  CHECK(table_scale_power(DigitSpec::make(10, 0, 1)) == 6);
  CHECK(table_scale_power(DigitSpec::make(10, 1, 0)) == 5);
  CHECK(table_scale_power(DigitSpec::make(10, 1, 1)) == 6);
  CHECK(table_scale_power(DigitSpec::make(10, 1, 2)) == 8);
  CHECK(table_scale_power(DigitSpec::make(10, 1, 5)) == 13);

  const auto d0 = delta_table({10}, {0}, 1, PrecisionCtx{required_digits(10, 6), 10});
  REQUIRE(d0.size() == 1);
  CHECK(near(d0[0].scaled, "-0.134", "0.002"));
  CHECK(d0[0].scaledError < Real("0.001"));

  const auto k2 = delta_table({1000}, {1}, 2, PrecisionCtx{required_digits(1000, 8), 10});
  CHECK(near(k2[0].scaled, "41.60", "0.02"));
  const auto k5 = delta_table({1000}, {9}, 5, PrecisionCtx{required_digits(1000, 13), 10});
  CHECK(near(k5[0].scaled, "1378.91", "0.05"));

  CHECK_THROWS_AS(delta_table({1000}, {1}, 2, PrecisionCtx{10, 10}), std::domain_error);
  CHECK_THROWS_AS(delta_table({10}, {10}, 2, PrecisionCtx{30, 10}), std::invalid_argument);
}

TEST_CASE("leading-term ratio for one occurrence") {
  CHECK(near(leading_ratio(DigitSpec::make(100, 1, 1), PrecisionCtx{10, 10}).value, "0.9897", "0.0005"));
  CHECK(near(leading_ratio(DigitSpec::make(10, 5, 1), PrecisionCtx{10, 10}).value, "1.2217", "0.0005"));
}

TEST_CASE("deviation scaled by the last exponent settles as b doubles") {
  struct Case {
    int d, k;
  };
  for (const Case& c : {Case{0, 0}, Case{0, 1}, Case{0, 3}, Case{1, 0}, Case{9, 0}, Case{1, 1}, Case{5, 2},
                        Case{9, 3}, Case{3, 4}}) {
    std::vector<Real> scaled;
    for (int b : {125, 250, 500, 1000}) {
      const auto spec = DigitSpec::make(b, c.d, c.k);
      const auto f = expansion(spec);
      const int n = static_cast<int>(f.terms.size());
      const int e = f.terms.back().exponent;
      const PrecisionCtx prec{required_digits(b, e), 10};
      const SumResult I = irwin::irwin_sum(spec, prec);
      const SumResult approx = expansion_eval(f, b, n - 1, prec);
      PrecisionScope scope(80);
      scaled.push_back((I.value - approx.value) * pow(Real(b), Real(e)));
    }
    CAPTURE(c.d);
    CAPTURE(c.k);
    const Real rel = abs(scaled[3] - scaled[2]) / abs(scaled[3]);
    CHECK(rel < Real("0.25"));
    const auto f = expansion(DigitSpec::make(1000, c.d, c.k));
    const Real limit = evaluate(f.terms.back().coefficient, PrecisionCtx{20, 10}).value;
    CHECK(abs(scaled[3] - limit) / abs(limit) < Real("0.25"));
  }
}
