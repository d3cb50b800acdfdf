#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <vector>

#include "kempner/digit_spec.hpp"
#include "kempner/real.hpp"
#include "kempner/series.hpp"
#include "kempner/zeta_linear.hpp"

namespace kempner::asymptotics {

struct ExpansionTerm {
  int exponent;  // power of 1/b
  ZetaLinear coefficient;
};

/// I(b,d,k) ~ b log b [- b log(1 + 1/d)] + sum_i a_i b^-e_i.
struct AsymptoticForm {
  DigitSpec spec;
  bool logCorrection = false;  // -b log(1 + 1/d), present iff d > 0 and k = 0
  std::vector<ExpansionTerm> terms;
};

/// Closed-form coefficients for the (d, k) family of the digit spec: five terms for
/// (d=0,k=0), (d>0,k=0), (d>0,k=1), (d>0,k=2); four otherwise.
AsymptoticForm expansion(const DigitSpec& spec);

/// Exponent of the first term for that family.
int first_exponent(const DigitSpec& spec);

/// The expansion of I - b log b (+ b log(1+1/d) when d > 0, k = 0) as a
/// series in c = 1/b through c^N, computed independently of the closed forms
/// by expanding the convergent series with the exact moment series, the
/// Euler-Maclaurin expansions of s_m and the zeta series of psi and
/// log Gamma.
series::SeriesZ derived_expansion_series(const DigitSpec& spec, int N);

/// derived_expansion_series laid out like expansion(spec).
AsymptoticForm derive_expansion(const DigitSpec& spec);

/// Numeric value of an exact zeta-linear coefficient.
SumResult evaluate(const ZetaLinear& z, const PrecisionCtx& prec);

/// b log b + leading corrections + the first `upToTerm` terms at b.
SumResult expansion_eval(const AsymptoticForm& form, int b, int upToTerm, const PrecisionCtx& prec);

/// Zeta factors of the (d>0, k=0) coefficients as polynomials in d:
/// result[i][n] holds the coefficients (ascending powers of d) of zeta(n) in
/// a_{i+1}(d).
std::vector<std::map<int, std::vector<mpq_class>>> kempner_zeta_factor_polynomials();

/// Power of b applied to the deviation in the published comparison tables:
/// the last included exponent for k = 0 and for d = 0, the first omitted
/// exponent for d > 0, k >= 1.
int table_scale_power(const DigitSpec& spec);

/// Target digits making an irwin_sum error bound <= 10^-3 b^-scalePower.
int required_digits(int b, int scalePower);

struct DeltaCell {
  DigitSpec spec;
  int scalePower = 0;
  Real scaled;       // (I - approximation) b^scalePower
  Real scaledError;  // error bound of `scaled`
};

/// (irwin_sum - expansion_eval(all terms)) * b^scalePower for every base and
/// digit. Throws std::domain_error if prec cannot meet the accuracy needed
/// for a cell. scalePower defaults to table_scale_power.
std::vector<DeltaCell> delta_table(const std::vector<int>& bases, const std::vector<int>& digits, int k,
                                   const PrecisionCtx& prec, std::optional<int> scalePower = std::nullopt);

/// (I - b log b [+ b log(1+1/d)]) b^e1 / a_1: ratio of the deviation to the
/// leading term of the expansion.
SumResult leading_ratio(const DigitSpec& spec, const PrecisionCtx& prec);

}  // namespace kempner::asymptotics
