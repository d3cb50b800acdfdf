#include <doctest.h>

#include "generators.hpp"
#include "kempner/errors.hpp"
#include "kempner/moments.hpp"
#include "kempner/rational.hpp"
#include "kempner/series.hpp"

using namespace kempner;
using namespace kempner::series;

namespace {

SeriesQ poly(std::initializer_list<mpq_class> c, int order) {
  SeriesQ s(order);
  int i = 0;
  for (const auto& x : c) s[i++] = x;
  return s;
}

}  // namespace

TEST_CASE("bernoulli numbers") {
  CHECK(bernoulli(0) == 1);
  CHECK(bernoulli(1) == ratio(-1, 2));
  CHECK(bernoulli(2) == ratio(1, 6));
  CHECK(bernoulli(3) == 0);
  CHECK(bernoulli(4) == ratio(-1, 30));
  CHECK(bernoulli(12) == ratio(-691, 2730));
  CHECK(bernoulli(20) == ratio(-174611, 330));
}

TEST_CASE("gamma polynomials") {
  for (int d : {0, 3, 9}) {
    const mpq_class D = d;
    CHECK(gamma_poly(0, d, false, 4) == poly({1, -1}, 4));
    CHECK(gamma_poly(1, d, false, 4) == poly({ratio(1, 2), ratio(-1, 2), -D}, 4));
    CHECK(gamma_poly(2, d, false, 4) == poly({ratio(1, 3), ratio(-1, 2), ratio(1, 6), -D * D}, 4));
  }
}

TEST_CASE("gamma polynomials evaluate to the power sums") {
  testing::Gen g(3);
  for (int i = 0; i < 50; ++i) {
    const auto s = g.spec(30, 0);
    const int j = g.integer(0, 6);
    for (bool primed : {false, true}) {
      const SeriesQ p = gamma_poly(j, s.digit(), primed, j + 2);
      mpq_class cpow = ratio(1, s.base());
      for (int e = 0; e < j; ++e) cpow /= s.base();
      // c^(j+1) gamma_j
      CHECK(series_eval_exact(p, s.base()) == mpq_class(moments::gamma_sum(s, j, primed)) * cpow);
    }
  }
}

TEST_CASE("ring axioms at a fixed truncation") {
  testing::Gen g(5);
  for (int i = 0; i < 30; ++i) {
    const int N = g.integer(0, 8);
    const SeriesQ a = g.series(N), b = g.series(N), c = g.series(N);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + (b - a) == b);
    CHECK(a * SeriesQ::monomial(1, 0, N) == a);
  }
}

TEST_CASE("reciprocal and division") {
  testing::Gen g(7);
  for (int i = 0; i < 20; ++i) {
    const int N = g.integer(1, 8);
    SeriesQ u = g.series(N);
    u[0] = g.integer(1, 9);
    const SeriesQ a = g.series(N);
    CHECK(u * reciprocal(u) == SeriesQ::monomial(1, 0, N));
    CHECK((a / u) * u == a);
  }
  SeriesQ z(3);
  z[1] = 1;
  CHECK_THROWS_AS(reciprocal(z), std::domain_error);
}

TEST_CASE("binomial and log series") {
  // (1 + c)^-1 = 1 - c + c^2 - ...
  CHECK(binomial_series(1, -1, 3) == poly({1, -1, 1, -1}, 3));
  CHECK(binomial_series(2, 3, 4) == poly({1, 6, 12, 8, 0}, 4));
  // log(1 + c) = c - c^2/2 + c^3/3
  CHECK(log1p(SeriesQ::monomial(1, 1, 3)) == poly({0, 1, ratio(-1, 2), ratio(1, 3)}, 3));
  CHECK(pow(poly({1, 1}, 5), 3) == binomial_series(1, 3, 5));
}

TEST_CASE("shift by negative powers needs zero leading coefficients") {
  const SeriesQ s = poly({0, 0, 1, 2}, 3);
  CHECK(s.shifted(-2) == poly({1, 2}, 1));
  CHECK_THROWS_AS(s.shifted(-3), std::domain_error);
  CHECK(s.valuation() == 2);
}

TEST_CASE("series evaluation") {
  PrecisionScope scope(30);
  CHECK(series_eval(SeriesQ::monomial(5, 0, 0), 7) == 5);
  CHECK(series_eval(poly({1, -1}, 1), 10) == Real("0.9"));
  CHECK(series_eval_exact(poly({1, -1}, 1), 10) == ratio(9, 10));
  CHECK(to_strings(poly({ratio(1, 2), 0, -3}, 2)) == std::vector<std::string>{"1/2", "0", "-3"});
}

TEST_CASE("first deviations") {
  for (int d : {0, 1, 4}) {
    const mpq_class h = d + ratio(1, 2);
    const auto s = DigitSpec::make(10, d, 0);
    // (d+1/2) c / (1 - c + c^2) = (d+1/2)(c + c^2 + 0 c^3 - c^4 ...)
    CHECK(w_series(s, 1, 4) == poly({0, h, h, 0, -h}, 4));
    CHECK(z_series(s, 1, 4) == poly({0, h, h, 0, -h}, 4));
  }
}

TEST_CASE("the order 2k+3 coefficient for m >= 4 is -(d+1/2)(m/2 - k - 1)") {
  for (int d = 0; d <= 5; ++d) {
    for (int k = 0; k <= 3; ++k) {
      for (int m = 4; m <= 9; ++m) {
        const SeriesQ w = w_series(DigitSpec::make(10, d, k), m, 2 * k + 3);
        CHECK(w.coeff(2 * k + 2) == d + ratio(1, 2));
        CHECK(w.coeff(2 * k + 3) == -(d + ratio(1, 2)) * (ratio(m, 2) - k - 1));
      }
    }
  }
}

TEST_CASE("truncated series converge to the exact deviations") {
  // Doubling b shrinks the truncation error by about 2^(N+1).
  for (int k = 0; k <= 3; ++k) {
    for (int m = 1; m <= 5; ++m) {
      for (int d = 0; d <= 3; ++d) {
        const int N = 2 * k + 6;
        auto err = [&](int b) {
          const auto spec = DigitSpec::make(b, d, k);
          mpq_class e = series_eval_exact(w_series(spec, m, N), b) - moments::w_value(spec, m);
          return mpq_class(abs(e));
        };
        const mpq_class e1 = err(10), e2 = err(20);
        const mpq_class e3 = err(100), e4 = err(200);
        CHECK(e2 <= e1 / 2);
        CHECK(e4 * (mpz_class(1) << (N - 1)) <= e3);
      }
    }
  }
}

TEST_CASE("z series agrees with exact complementary deviations") {
  for (int k = 0; k <= 2; ++k) {
    for (int m = 1; m <= 4; ++m) {
      for (int d : {0, 2, 7}) {
        const int N = 2 * k + 6;
        auto err = [&](int b) {
          const auto spec = DigitSpec::make(b, d, k);
          return mpq_class(abs(series_eval_exact(z_series(spec, m, N), b) - moments::z_value(spec, m)));
        };
        CHECK(err(2000) * (mpz_class(1) << (N - 1)) <= err(1000));
      }
    }
  }
}

TEST_CASE("series capacity errors") {
  CHECK_THROWS_AS(w_series(DigitSpec::make(10, 1, 17), 2, 40), CapacityError);
  CHECK_THROWS_AS(w_series(DigitSpec::make(10, 1, 1), 65, 10), CapacityError);
  CHECK_THROWS_AS(w_series(DigitSpec::make(10, 1, 1), 2, 257), CapacityError);
  CHECK(default_truncation(3) == 12);
}
