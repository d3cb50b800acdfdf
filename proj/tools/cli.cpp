#include "cli.hpp"

#include <cmath>
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>

#include "kempner/asymptotics.hpp"
#include "kempner/errors.hpp"
#include "kempner/irwin.hpp"
#include "kempner/moments.hpp"
#include "kempner/series.hpp"
#include "kempner/specfun.hpp"
#include "kempner/verify.hpp"

namespace kempner::cli {

namespace {

enum class Format { Table, Json, Csv };

struct Record {
  std::string b, d, k;
  std::string item;
  std::string value;
  std::string errorBound;
  std::string termsUsed;
  std::string method;
  std::string detail;
  std::string elapsedMillis;
  // Grid placement for table rendering; not serialized.
  std::string gridRow, gridCol, gridCell;
};

struct Output {
  std::vector<Record> records;
  // Rendered table; empty means the generic column layout is used.
  std::string table;
  std::vector<std::string> tableColumns;
  bool verifyFailed = false;
};

class Stopwatch {
 public:
  std::string millis() const {
    const auto us =
        std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start_).count();
    std::ostringstream os;
    os << std::fixed << std::setprecision(3) << static_cast<double>(us) / 1000.0;
    return os.str();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string field(const Record& r, const std::string& key) {
  static const std::map<std::string, std::string Record::*> kFields = {
      {"b", &Record::b},
      {"d", &Record::d},
      {"k", &Record::k},
      {"item", &Record::item},
      {"value", &Record::value},
      {"errorBound", &Record::errorBound},
      {"termsUsed", &Record::termsUsed},
      {"method", &Record::method},
      {"detail", &Record::detail},
      {"elapsedMillis", &Record::elapsedMillis},
  };
  return r.*kFields.at(key);
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

std::string markdown(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = std::max<std::size_t>(3, header[c].size());
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    os << "|";
    for (std::size_t c = 0; c < header.size(); ++c)
      os << " " << std::left << std::setw(static_cast<int>(width[c])) << (c < cells.size() ? cells[c] : "") << " |";
    os << "\n";
  };
  line(header);
  os << "|";
  for (std::size_t c = 0; c < header.size(); ++c) os << std::string(width[c] + 2, '-') << "|";
  os << "\n";
  for (const auto& row : rows) line(row);
  return os.str();
}

// Rows keyed by gridRow, columns by gridCol, in first-seen order.
std::string grid(const std::vector<Record>& records, const std::string& corner) {
  std::vector<std::string> rowKeys;
  std::vector<std::string> colKeys;
  std::map<std::pair<std::string, std::string>, std::string> cells;
  for (const auto& r : records) {
    if (std::find(rowKeys.begin(), rowKeys.end(), r.gridRow) == rowKeys.end()) rowKeys.push_back(r.gridRow);
    if (std::find(colKeys.begin(), colKeys.end(), r.gridCol) == colKeys.end()) colKeys.push_back(r.gridCol);
    cells[{r.gridRow, r.gridCol}] = r.gridCell;
  }
  std::vector<std::string> header{corner};
  header.insert(header.end(), colKeys.begin(), colKeys.end());
  std::vector<std::vector<std::string>> rows;
  for (const auto& rk : rowKeys) {
    std::vector<std::string> row{rk};
    for (const auto& ck : colKeys) {
      auto it = cells.find({rk, ck});
      row.push_back(it == cells.end() ? "" : it->second);
    }
    rows.push_back(std::move(row));
  }
  return markdown(header, rows);
}

std::string render(const Output& output, Format format, const std::string& command) {
  const auto& keys = record_keys();
  std::ostringstream os;
  switch (format) {
    case Format::Json: {
      auto array = nlohmann::ordered_json::array();
      for (const auto& r : output.records) {
        nlohmann::ordered_json obj;
        obj["command"] = command;
        for (std::size_t i = 1; i < keys.size(); ++i) obj[keys[i]] = field(r, keys[i]);
        array.push_back(std::move(obj));
      }
      os << array.dump(2) << "\n";
      break;
    }
    case Format::Csv: {
      for (std::size_t i = 0; i < keys.size(); ++i) os << (i ? "," : "") << keys[i];
      os << "\r\n";
      for (const auto& r : output.records) {
        os << csv_quote(command);
        for (std::size_t i = 1; i < keys.size(); ++i) os << "," << csv_quote(field(r, keys[i]));
        os << "\r\n";
      }
      break;
    }
    case Format::Table: {
      if (!output.table.empty()) {
        os << output.table;
        break;
      }
      std::vector<std::vector<std::string>> rows;
      for (const auto& r : output.records) {
        std::vector<std::string> row;
        for (const auto& c : output.tableColumns) row.push_back(field(r, c));
        rows.push_back(std::move(row));
      }
      os << markdown(output.tableColumns, rows);
      break;
    }
  }
  return os.str();
}

std::string join(const std::vector<std::string>& args) {
  std::string s;
  for (const auto& a : args) s += (s.empty() ? "" : " ") + a;
  return s;
}

// --- subcommands ----------------------------------------------------------

struct SpecArgs {
  long base = 10;
  long digit = 0;
  long count = 0;
  DigitSpec make() const { return DigitSpec::make(base, digit, count); }
};

void add_spec_options(CLI::App* cmd, SpecArgs& s) {
  cmd->add_option("--base", s.base, "Base b >= 2")->required();
  cmd->add_option("--digit", s.digit, "Digit d, 0 <= d < b")->required();
  cmd->add_option("--count", s.count, "Occurrences k >= 0")->required();
}

void fill_spec(Record& r, const DigitSpec& spec) {
  r.b = std::to_string(spec.base());
  r.d = std::to_string(spec.digit());
  r.k = std::to_string(spec.count());
}

Output cmd_sum(const SpecArgs& sa, int digits) {
  const DigitSpec spec = sa.make();
  Stopwatch sw;
  const SumResult res = irwin::irwin_sum(spec, PrecisionCtx{digits, 10});
  Record r;
  fill_spec(r, spec);
  r.item = "I(" + std::to_string(spec.base()) + "," + std::to_string(spec.digit()) + "," +
           std::to_string(spec.count()) + ")";
  r.value = to_fixed(res.value, digits);
  r.errorBound = to_scientific(res.errorBound);
  r.termsUsed = std::to_string(res.termsUsed);
  r.method = res.method;
  r.elapsedMillis = sw.millis();
  Output out;
  out.records.push_back(r);
  out.tableColumns = {"item", "value", "errorBound", "termsUsed", "method", "elapsedMillis"};
  return out;
}

Output cmd_moments(const SpecArgs& sa, int maxOrder, const std::string& kind) {
  const DigitSpec spec = sa.make();
  Stopwatch sw;
  const bool isU = kind == "u" || kind == "w";
  const auto table = isU ? moments::u_table(spec, maxOrder) : moments::v_table(spec, maxOrder);
  const std::string elapsed = sw.millis();
  Output out;
  for (int j = 0; j <= spec.count(); ++j) {
    for (int m = 0; m <= maxOrder; ++m) {
      const mpq_class v = (kind == "u" || kind == "v") ? table->at(j, m) : table->deviation(j, m);
      Record r;
      fill_spec(r, spec);
      r.item = kind + "[" + std::to_string(j) + ";" + std::to_string(m) + "]";
      r.value = v.get_str();
      r.errorBound = "0";
      r.termsUsed = "0";
      r.method = "exact";
      r.elapsedMillis = elapsed;
      r.gridRow = "j=" + std::to_string(j);
      r.gridCol = "m=" + std::to_string(m);
      r.gridCell = r.value;
      out.records.push_back(std::move(r));
    }
  }
  out.table = grid(out.records, kind);
  return out;
}

Output cmd_series(long count, long order, long digit, std::optional<long> trunc, const std::string& family) {
  if (digit < 0) throw std::invalid_argument("digit must be non-negative");
  // Coefficients depend on d only; any admissible base will do.
  const DigitSpec spec = DigitSpec::make(digit + 2, digit, count);
  const int N = static_cast<int>(trunc.value_or(series::default_truncation(spec.count())));
  Stopwatch sw;
  const series::SeriesQ s = family == "w" ? series::w_series(spec, static_cast<int>(order), N)
                                          : series::z_series(spec, static_cast<int>(order), N);
  const std::string elapsed = sw.millis();
  Output out;
  const auto strings = series::to_strings(s);
  for (std::size_t i = 0; i < strings.size(); ++i) {
    Record r;
    r.d = std::to_string(digit);
    r.k = std::to_string(count);
    r.item = "c^" + std::to_string(i);
    r.value = strings[i];
    r.errorBound = "0";
    r.termsUsed = std::to_string(N);
    r.method = family + "_{" + std::to_string(count) + ";" + std::to_string(order) + "}";
    r.elapsedMillis = elapsed;
    out.records.push_back(std::move(r));
  }
  out.tableColumns = {"item", "value"};
  return out;
}

Output cmd_asymptotic(const SpecArgs& sa, int digits, std::optional<int> terms) {
  const DigitSpec spec = sa.make();
  Stopwatch sw;
  const auto form = asymptotics::expansion(spec);
  const int n = terms.value_or(static_cast<int>(form.terms.size()));
  const PrecisionCtx prec{digits, 10};
  const SumResult total = asymptotics::expansion_eval(form, spec.base(), n, prec);
  const SumResult lead = asymptotics::expansion_eval(form, spec.base(), 0, prec);
  Output out;
  auto base_record = [&] {
    Record r;
    fill_spec(r, spec);
    r.termsUsed = std::to_string(n);
    r.method = "asymptotic";
    return r;
  };
  Record first = base_record();
  first.item = form.logCorrection ? "b log b - b log(1+1/d)" : "b log b";
  first.value = to_fixed(lead.value, digits);
  first.errorBound = to_scientific(lead.errorBound);
  out.records.push_back(first);
  for (int i = 0; i < n; ++i) {
    const auto& t = form.terms[i];
    const SumResult a = asymptotics::evaluate(t.coefficient, prec);
    PrecisionScope scope(specfun::working_digits(prec, 4, 4));
    const Real w = pow(Real(spec.base()), Real(-t.exponent));
    Record r = base_record();
    r.item = "a_" + std::to_string(i + 1) + " b^-" + std::to_string(t.exponent);
    r.value = to_fixed(a.value * w, digits);
    r.errorBound = to_scientific(a.errorBound * w);
    r.detail = "a_" + std::to_string(i + 1) + " = " + t.coefficient.to_string() + " = " + to_fixed(a.value, digits);
    out.records.push_back(std::move(r));
  }
  Record sum = base_record();
  sum.item = "total";
  sum.value = to_fixed(total.value, digits);
  sum.errorBound = to_scientific(total.errorBound);
  out.records.push_back(sum);
  const std::string elapsed = sw.millis();
  for (auto& r : out.records) r.elapsedMillis = elapsed;
  out.tableColumns = {"item", "value", "errorBound", "detail"};
  return out;
}

Output cmd_delta(const std::vector<long>& bases, const std::vector<long>& digitsList, long count,
                 std::optional<int> digits, std::optional<int> scale) {
  if (bases.empty() || digitsList.empty()) throw std::invalid_argument("empty base or digit list");
  Output out;
  for (long b : bases) {
    for (long d : digitsList) {
      const DigitSpec spec = DigitSpec::make(b, d, count);
      const int s = scale.value_or(asymptotics::table_scale_power(spec));
      const int need = asymptotics::required_digits(spec.base(), s);
      const PrecisionCtx prec{digits.value_or(need), 10};
      Stopwatch sw;
      const auto cell = asymptotics::delta_table({spec.base()}, {spec.digit()}, spec.count(), prec, s).front();
      Record r;
      fill_spec(r, spec);
      r.item = "delta*b^" + std::to_string(s);
      r.value = to_fixed(cell.scaled, 10);
      r.errorBound = to_scientific(cell.scaledError);
      r.termsUsed = std::to_string(asymptotics::expansion(spec).terms.size());
      r.method = "irwin_sum - expansion";
      r.elapsedMillis = sw.millis();
      r.gridRow = "b=" + std::to_string(spec.base());
      r.gridCol = "d=" + std::to_string(spec.digit());
      // as many decimals as the error bound supports, within [3, 10]
      const double eb = cell.scaledError.convert_to<double>();
      const int shown = eb > 0 ? std::clamp(static_cast<int>(std::floor(-std::log10(eb))), 3, 10) : 10;
      r.gridCell = to_fixed(cell.scaled, shown);
      out.records.push_back(std::move(r));
    }
  }
  out.table = grid(out.records, "k=" + std::to_string(count));
  return out;
}

Output cmd_verify(const std::string& level) {
  const auto lv = level == "full" ? verify::Level::Full : verify::Level::Quick;
  Output out;
  std::ostringstream lines;
  int passed = 0;
  const auto results = verify::run(lv);
  for (const auto& c : results) {
    Record r;
    r.item = std::to_string(c.id);
    r.value = c.passed ? "PASS" : "FAIL";
    r.errorBound = "";
    r.termsUsed = "";
    r.method = c.title;
    r.detail = c.detail;
    std::ostringstream ms;
    ms << std::fixed << std::setprecision(3) << c.seconds * 1000.0;
    r.elapsedMillis = ms.str();
    out.records.push_back(std::move(r));
    lines << verify::format_line(c) << "\n";
    if (c.passed) ++passed;
    else out.verifyFailed = true;
  }
  lines << passed << "/" << results.size() << " criteria passed\n";
  out.table = lines.str();
  return out;
}

}  // namespace

const std::vector<std::string>& record_keys() {
  static const std::vector<std::string> kKeys = {"command",    "b",         "d",      "k",      "item",
                                                 "value",      "errorBound", "termsUsed", "method", "detail",
                                                 "elapsedMillis"};
  return kKeys;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Digit-restricted harmonic sums to high precision", "kempner"};
  app.require_subcommand(1);

  std::string formatName = "table";
  std::string outPath;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--format", formatName, "Output format")
        ->check(CLI::IsMember({"table", "json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--out", outPath, "Write output to FILE instead of stdout");
  };

  SpecArgs spec;
  int digits = 30;
  std::optional<int> optDigits;

  auto* sum = app.add_subcommand("sum", "Evaluate I(b,d,k) with a guaranteed error bound");
  add_spec_options(sum, spec);
  sum->add_option("--digits", digits, "Correct decimal digits")->check(CLI::Range(1, 2000))->capture_default_str();
  add_common(sum);

  int maxOrder = 0;
  std::string kind = "u";
  auto* mom = app.add_subcommand("moments", "Exact moment tables");
  add_spec_options(mom, spec);
  mom->add_option("--max-order", maxOrder, "Largest moment order")->required()->check(CLI::NonNegativeNumber);
  mom->add_option("--kind", kind, "u, v or the deviations w, z")
      ->check(CLI::IsMember({"u", "v", "w", "z"}))
      ->capture_default_str();
  add_common(mom);

  long sCount = 0;
  long sOrder = 1;
  long sDigit = 0;
  std::optional<long> sTrunc;
  std::string family = "w";
  auto* ser = app.add_subcommand("series-coeffs", "Exact Taylor coefficients of w_{k;m} or z_{k;m} in c = 1/b");
  ser->add_option("--count", sCount, "Occurrences k")->required();
  ser->add_option("--order", sOrder, "Moment order m")->required();
  ser->add_option("--digit", sDigit, "Digit d")->required();
  ser->add_option("--trunc", sTrunc, "Truncation order N (default 2k+6)");
  ser->add_option("--family", family, "w or z")->check(CLI::IsMember({"w", "z"}))->capture_default_str();
  add_common(ser);

  std::optional<int> terms;
  auto* asym = app.add_subcommand("asymptotic", "Evaluate the large-b expansion");
  add_spec_options(asym, spec);
  asym->add_option("--digits", digits, "Decimal digits")->check(CLI::Range(1, 2000))->capture_default_str();
  asym->add_option("--terms", terms, "Number of correction terms (default all)");
  add_common(asym);

  std::vector<long> bases;
  std::vector<long> digitsList;
  long dCount = 0;
  std::optional<int> scale;
  auto* delta = app.add_subcommand("delta-table", "Scaled deviation between the sum and its expansion");
  delta->add_option("--bases", bases, "Comma-separated bases")->required()->delimiter(',');
  delta->add_option("--digits-list", digitsList, "Comma-separated digits")->required()->delimiter(',');
  delta->add_option("--count", dCount, "Occurrences k")->required();
  delta->add_option("--digits", optDigits, "Working digits (default: enough for 1e-3 on every cell)")
      ->check(CLI::Range(1, 2000));
  delta->add_option("--scale", scale, "Power of b applied to the deviation");
  add_common(delta);

  std::string level = "quick";
  auto* ver = app.add_subcommand("verify", "Run the acceptance suite");
  ver->add_option("--level", level, "quick or full")->check(CLI::IsMember({"quick", "full"}))->capture_default_str();
  add_common(ver);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    const int code = app.exit(e, o, er);
    out << o.str();
    err << er.str();
    return code == 0 ? kExitOk : kExitInvalidArgs;
  }

  const Format format = formatName == "json" ? Format::Json : formatName == "csv" ? Format::Csv : Format::Table;
  try {
    Output result;
    if (*sum) {
      result = cmd_sum(spec, digits);
    } else if (*mom) {
      result = cmd_moments(spec, maxOrder, kind);
    } else if (*ser) {
      result = cmd_series(sCount, sOrder, sDigit, sTrunc, family);
    } else if (*asym) {
      if (terms && *terms < 0) throw std::invalid_argument("--terms must be non-negative");
      result = cmd_asymptotic(spec, digits, terms);
    } else if (*delta) {
      result = cmd_delta(bases, digitsList, dCount, optDigits, scale);
    } else {
      result = cmd_verify(level);
    }
    const std::string text = render(result, format, join(args));
    if (outPath.empty()) {
      out << text;
    } else {
      std::ofstream file(outPath, std::ios::binary);
      if (!file) {
        err << "error: cannot open " << outPath << " for writing\n";
        return kExitInvalidArgs;
      }
      file << text;
    }
    return result.verifyFailed ? kExitVerifyFailed : kExitOk;
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const BudgetError& e) {
    err << "budget error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << "\n";
    return kExitInvalidArgs;
  } catch (const std::domain_error& e) {
    err << "invalid argument: " << e.what() << "\n";
    return kExitInvalidArgs;
  } catch (const std::out_of_range& e) {
    err << "invalid argument: " << e.what() << "\n";
    return kExitInvalidArgs;
  }
}

}  // namespace kempner::cli
