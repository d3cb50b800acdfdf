#include <doctest.h>

#include <stdexcept>

#include "kempner/digit_spec.hpp"
#include "kempner/rational.hpp"
#include "kempner/real.hpp"
#include "kempner/zeta_linear.hpp"

using namespace kempner;

TEST_CASE("DigitSpec rejects invalid triples") {
  CHECK_THROWS_AS(DigitSpec::make(1, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(DigitSpec::make(10, 10, 0), std::invalid_argument);
  CHECK_THROWS_AS(DigitSpec::make(10, 12, 0), std::invalid_argument);
  CHECK_THROWS_AS(DigitSpec::make(10, -1, 0), std::invalid_argument);
  CHECK_THROWS_AS(DigitSpec::make(10, 3, -1), std::invalid_argument);
  CHECK_NOTHROW(DigitSpec::make(2, 1, 0));
}

TEST_CASE("DigitSpec derived digits") {
  const auto s = DigitSpec::make(10, 3, 2);
  CHECK(s.complement_digit() == 6);
  CHECK(s.d1() == 3);
  CHECK(DigitSpec::make(10, 0, 0).d1() == 10);
  CHECK(s.with_count(5).count() == 5);
  CHECK(s.with_count(5).digit() == 3);
}

TEST_CASE("PrecisionCtx validation") {
  CHECK_THROWS_AS((PrecisionCtx{0, 10}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((PrecisionCtx{20, 9}.validate()), std::invalid_argument);
  CHECK_NOTHROW((PrecisionCtx{20, 10}.validate()));
  CHECK(PrecisionCtx{20, 10}.truncation_exponent() == -30);
}

TEST_CASE("ratio canonicalizes and rejects zero denominators") {
  CHECK(ratio(6, 4) == mpq_class(3, 2));
  CHECK(ratio(6, 4).get_den() == 2);
  CHECK(ratio(3, -6).get_str() == "-1/2");
  CHECK_THROWS_AS(ratio(1, 0), std::domain_error);
}

TEST_CASE("ZetaLinear arithmetic prunes zero coefficients") {
  const ZetaLinear a = ZetaLinear(ratio(1, 3)) + ZetaLinear::zeta(2, ratio(1, 2));
  const ZetaLinear b = ZetaLinear::zeta(2, ratio(1, 2)) - ZetaLinear::zeta(3);
  const ZetaLinear diff = a - b;
  CHECK(diff.rational() == ratio(1, 3));
  CHECK(diff.zeta_coefficient(2) == 0);
  CHECK(diff.zeta_coefficient(3) == 1);
  CHECK(diff.zeta_terms().count(2) == 0);
  CHECK((a - a).is_zero());
  CHECK((a * ratio(2, 1)).zeta_coefficient(2) == 1);
  CHECK(b.max_zeta_argument() == 3);
  CHECK(a.to_string() == "1/3 + 1/2*zeta(2)");
}

TEST_CASE("fixed and scientific rendering") {
  PrecisionScope scope(40);
  const Real third = to_real(ratio(1, 3));
  CHECK(to_fixed(third, 5) == "0.33333");
  CHECK(to_fixed(Real(2), 3) == "2.000");
  CHECK(to_scientific(Real("0.00012345"), 3) == "1.24e-04");
  CHECK(integer_digits(6907.7) == 4);
  CHECK(integer_digits(0.5) == 1);
}
