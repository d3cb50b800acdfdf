#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "kempner/asymptotics.hpp"
#include "kempner/digit_spec.hpp"
#include "kempner/errors.hpp"
#include "kempner/irwin.hpp"
#include "kempner/moments.hpp"
#include "kempner/real.hpp"
#include "kempner/series.hpp"
#include "kempner/verify.hpp"

namespace py = pybind11;
using namespace kempner;

namespace {

// Numeric results cross the boundary as decimal strings so no precision is
// lost to Python floats.
py::dict sum_dict(const SumResult& r, int digits) {
  py::dict out;
  out["value"] = to_fixed(r.value, digits);
  out["error_bound"] = to_scientific(r.errorBound);
  out["terms_used"] = r.termsUsed;
  out["method"] = r.method;
  return out;
}

py::dict irwin_sum(int b, int d, int k, int digits) {
  const DigitSpec spec = DigitSpec::make(b, d, k);
  SumResult r;
  {
    py::gil_scoped_release release;
    r = irwin::irwin_sum(spec, PrecisionCtx{digits, 10});
  }
  return sum_dict(r, digits);
}

std::vector<std::vector<std::string>> moment_rows(int b, int d, int k, int maxOrder, const std::string& kind) {
  if (kind != "u" && kind != "v" && kind != "w" && kind != "z")
    throw std::invalid_argument("kind must be one of u, v, w, z");
  const DigitSpec spec = DigitSpec::make(b, d, k);
  const bool isU = kind == "u" || kind == "w";
  const auto table = isU ? moments::u_table(spec, maxOrder) : moments::v_table(spec, maxOrder);
  std::vector<std::vector<std::string>> rows(spec.count() + 1);
  for (int j = 0; j <= spec.count(); ++j)
    for (int m = 0; m <= maxOrder; ++m) {
      const mpq_class v = (kind == "u" || kind == "v") ? table->at(j, m) : table->deviation(j, m);
      rows[j].push_back(v.get_str());
    }
  return rows;
}

std::vector<std::string> series_coeffs(int k, int m, int d, std::optional<int> trunc, const std::string& family) {
  if (family != "w" && family != "z") throw std::invalid_argument("family must be w or z");
  // Any base above d fixes the digit; the coefficients do not depend on it.
  const DigitSpec spec = DigitSpec::make(d + 2, d, k);
  const int N = trunc.value_or(series::default_truncation(k));
  const auto s = family == "w" ? series::w_series(spec, m, N) : series::z_series(spec, m, N);
  return series::to_strings(s);
}

py::dict asymptotic(int b, int d, int k, int digits, std::optional<int> terms) {
  const DigitSpec spec = DigitSpec::make(b, d, k);
  const auto form = asymptotics::expansion(spec);
  const int n = terms.value_or(static_cast<int>(form.terms.size()));
  const SumResult total = asymptotics::expansion_eval(form, b, n, PrecisionCtx{digits, 10});
  py::list coeffs;
  for (const auto& t : form.terms) coeffs.append(py::make_tuple(t.exponent, t.coefficient.to_string()));
  py::dict out = sum_dict(total, digits);
  out["log_correction"] = form.logCorrection;
  out["coefficients"] = coeffs;
  return out;
}

py::list delta_table(const std::vector<int>& bases, const std::vector<int>& digitsList, int k,
                     std::optional<int> digits, std::optional<int> scale) {
  py::list out;
  for (int b : bases)
    for (int d : digitsList) {
      const DigitSpec spec = DigitSpec::make(b, d, k);
      const int s = scale.value_or(asymptotics::table_scale_power(spec));
      const PrecisionCtx prec{digits.value_or(asymptotics::required_digits(b, s)), 10};
      std::vector<asymptotics::DeltaCell> cells;
      {
        py::gil_scoped_release release;
        cells = asymptotics::delta_table({b}, {d}, k, prec, s);
      }
      for (const auto& c : cells) {
        py::dict row;
        row["b"] = c.spec.base();
        row["d"] = c.spec.digit();
        row["k"] = c.spec.count();
        row["scale_power"] = c.scalePower;
        row["scaled"] = to_fixed(c.scaled, 8);
        row["scaled_error"] = to_scientific(c.scaledError);
        out.append(row);
      }
    }
  return out;
}

py::list run_verify(const std::string& level) {
  if (level != "quick" && level != "full") throw std::invalid_argument("level must be quick or full");
  std::vector<verify::CriterionResult> results;
  {
    py::gil_scoped_release release;
    results = verify::run(level == "quick" ? verify::Level::Quick : verify::Level::Full);
  }
  py::list out;
  for (const auto& r : results) {
    py::dict row;
    row["id"] = r.id;
    row["title"] = r.title;
    row["passed"] = r.passed;
    row["detail"] = r.detail;
    row["seconds"] = r.seconds;
    out.append(row);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Digit-restricted harmonic sums";

  py::register_exception<CapacityError>(m, "CapacityError");
  py::register_exception<BudgetError>(m, "BudgetError");

  m.def("irwin_sum", &irwin_sum, py::arg("b"), py::arg("d"), py::arg("k"), py::arg("digits") = 30,
        "Sum of 1/n over n with exactly k digits d in base b.");
  m.def("moments", &moment_rows, py::arg("b"), py::arg("d"), py::arg("k"), py::arg("max_order"),
        py::arg("kind") = "u", "Exact moment table rows j = 0..k as fraction strings.");
  m.def("series_coeffs", &series_coeffs, py::arg("k"), py::arg("m"), py::arg("d"), py::arg("trunc") = py::none(),
        py::arg("family") = "w", "Taylor coefficients in 1/b as fraction strings.");
  m.def("asymptotic", &asymptotic, py::arg("b"), py::arg("d"), py::arg("k"), py::arg("digits") = 30,
        py::arg("terms") = py::none(), "Large-base expansion and its value at b.");
  m.def("delta_table", &delta_table, py::arg("bases"), py::arg("digits"), py::arg("k"),
        py::arg("precision") = py::none(), py::arg("scale") = py::none(),
        "Scaled deviations of the sum from its expansion.");
  m.def("verify", &run_verify, py::arg("level") = "quick", "Run the acceptance criteria.");
}
