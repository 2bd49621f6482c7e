#include "fibzeta/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "fibzeta/crosscheck.hpp"
#include "fibzeta/evaluate.hpp"
#include "fibzeta/parallel.hpp"
#include "fibzeta/verify.hpp"

namespace fibzeta::cli {

namespace {

using Cell = std::variant<std::monostate, std::string, double, std::int64_t, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string csv_field(const Cell& cell) {
  struct {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(const std::string& s) const {
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string quoted = "\"";
      for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
      }
      return quoted + '"';
    }
    std::string operator()(double x) const { return format_double(x); }
    std::string operator()(std::int64_t x) const { return std::to_string(x); }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
  } visit;
  return std::visit(visit, cell);
}

nlohmann::json json_field(const Cell& cell) {
  struct {
    nlohmann::json operator()(std::monostate) const { return nullptr; }
    nlohmann::json operator()(const std::string& s) const { return s; }
    nlohmann::json operator()(double x) const {
      if (x == 0.0) return 0.0;
      if (std::isfinite(x)) return x;
      return std::isnan(x) ? nlohmann::json("nan") : nlohmann::json(x > 0 ? "inf" : "-inf");
    }
    nlohmann::json operator()(std::int64_t x) const { return x; }
    nlohmann::json operator()(bool b) const { return b; }
  } visit;
  return std::visit(visit, cell);
}

void emit(const Table& table, const std::string& format, std::ostream& out) {
  if (format == "json") {
    nlohmann::json records = nlohmann::json::array();
    for (const auto& row : table.rows) {
      nlohmann::json record = nlohmann::json::object();
      for (std::size_t i = 0; i < table.columns.size(); ++i) record[table.columns[i]] = json_field(row[i]);
      records.push_back(std::move(record));
    }
    out << records.dump(2) << '\n';
    return;
  }
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
    out << '\n';
  }
}

double parse_real(const std::string& key, const std::string& value) {
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
  if (ec != std::errc() || ptr != value.data() + value.size() || !std::isfinite(x)) {
    throw std::invalid_argument("bad value for " + key + ": '" + value + "'");
  }
  return x;
}

std::uint64_t parse_count(const std::string& key, const std::string& value) {
  std::uint64_t x = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw std::invalid_argument("bad value for " + key + ": '" + value + "'");
  }
  return x;
}

unsigned parse_digits(const std::string& key, const std::string& value) {
  const std::uint64_t digits = parse_count(key, value);
  if (digits < 20 || digits > 10000) throw std::invalid_argument(key + " must be in [20, 10000]");
  return static_cast<unsigned>(digits);
}

void check_tol(double tol) {
  if (!(tol > 0.0 && tol <= 1e-2)) throw std::invalid_argument("tol must lie in (0, 1e-2]");
}

std::vector<std::int64_t> parse_d_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::int64_t D = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), D);
    if (ec != std::errc() || ptr != item.data() + item.size()) {
      throw std::invalid_argument("bad D list entry '" + item + "'");
    }
    out.push_back(D);
  }
  if (out.empty()) throw std::invalid_argument("empty D list");
  return out;
}

Parity parity_arg(const std::string& text) {
  if (auto p = parse_parity(text)) return *p;
  throw std::invalid_argument("unknown parity '" + text + "'");
}

Method method_arg(const std::string& text) {
  if (auto m = parse_method(text)) return *m;
  throw std::invalid_argument("unknown method '" + text + "'");
}

Complex complex_arg(const std::string& text) {
  if (auto s = parse_complex(text)) return *s;
  throw std::invalid_argument("cannot parse complex number '" + text + "'");
}

void push_complex(std::vector<Cell>& row, Complex z) {
  row.emplace_back(z.real());
  row.emplace_back(z.imag());
}

// Raw option values; unset ones leave config and defaults alone.
struct Common {
  std::string config_path;
  std::optional<std::string> format;
  std::optional<unsigned> precision;
  std::optional<double> tol;
  std::optional<double> pole_guard;
};

Settings resolve(const Common& common) {
  Settings settings;
  if (!common.config_path.empty()) {
    std::ifstream in(common.config_path);
    if (!in) throw std::invalid_argument("cannot read config file " + common.config_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    apply_config(settings, parse_config(buffer.str()));
  }
  if (common.precision) {
    settings.digits = parse_digits("--precision", std::to_string(*common.precision));
  } else if (const char* env = std::getenv("FIBZETA_PRECISION"); env != nullptr && *env != '\0') {
    settings.digits = parse_digits("FIBZETA_PRECISION", env);
  }
  if (common.format) settings.format = *common.format;
  if (common.tol) settings.eval.tol = *common.tol;
  if (common.pole_guard) settings.eval.pole_guard = *common.pole_guard;
  check_tol(settings.eval.tol);
  if (!(settings.eval.pole_guard > 0.0)) throw std::invalid_argument("pole guard must be positive");
  if (settings.format != "csv" && settings.format != "json") {
    throw std::invalid_argument("format must be csv or json");
  }
  return settings;
}

std::string status_of(const GridCell& cell) {
  if (cell.result) return "ok";
  if (cell.at_pole()) return "pole";
  return std::string(error_name(*cell.failure));
}

}  // namespace

std::optional<Complex> parse_complex(std::string_view text) {
  static const std::string real = R"((?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)";
  static const std::regex full("^\\s*([+-]?" + real + ")?(?:([+-])(" + real + ")?i)?\\s*$");
  static const std::regex imaginary("^\\s*([+-]?)(" + real + ")?i\\s*$");
  const std::string s(text);
  std::smatch match;
  try {
    if (std::regex_match(s, match, imaginary)) {
      const double magnitude = match[2].matched ? std::stod(match[2].str()) : 1.0;
      return Complex{0.0, match[1].str() == "-" ? -magnitude : magnitude};
    }
    if (std::regex_match(s, match, full) && match[1].matched) {
      const double re = std::stod(match[1].str());
      double im = 0.0;
      if (match[2].matched) {
        im = match[3].matched ? std::stod(match[3].str()) : 1.0;
        if (match[2].str() == "-") im = -im;
      }
      return Complex{re, im};
    }
  } catch (const std::out_of_range&) {
  }
  return std::nullopt;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

std::optional<std::vector<double>> parse_range(std::string_view text) {
  std::vector<double> parts;
  std::string item;
  std::stringstream in{std::string(text)};
  while (std::getline(in, item, ':')) {
    try {
      parts.push_back(parse_real("range", item));
    } catch (const std::invalid_argument&) {
      return std::nullopt;
    }
  }
  if (parts.size() == 1) return std::vector<double>{parts[0]};
  if (parts.size() != 3 || !(parts[2] > 0.0)) return std::nullopt;
  const double lo = parts[0];
  const double hi = parts[1];
  const double step = parts[2];
  std::vector<double> values;
  if (hi < lo) return values;
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  if (count > 10000000) return std::nullopt;
  for (std::size_t i = 0; i < count; ++i) values.push_back(lo + static_cast<double>(i) * step);
  return values;
}

std::map<std::string, std::string> parse_config(std::string_view text) {
  std::map<std::string, std::string> config;
  std::stringstream in{std::string(text)};
  std::string line;
  int number = 0;
  const auto trim = [](std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return std::string{};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
  };
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(number) + ": expected key=value");
    }
    config[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return config;
}

void apply_config(Settings& settings, const std::map<std::string, std::string>& config) {
  for (const auto& [key, value] : config) {
    RegionBoundaries& regions = settings.eval.regions;
    if (key == "precision") {
      settings.digits = parse_digits(key, value);
    } else if (key == "tol") {
      settings.eval.tol = parse_real(key, value);
      check_tol(settings.eval.tol);
    } else if (key == "pole_guard_radius") {
      settings.eval.pole_guard = parse_real(key, value);
    } else if (key == "max_terms") {
      settings.eval.max_terms = parse_count(key, value);
    } else if (key == "shifted_n_max") {
      settings.eval.shifted_n_max = parse_count(key, value);
    } else if (key == "direct_lo") {
      regions.direct_lo = parse_real(key, value);
    } else if (key == "left_hi") {
      regions.left_hi = parse_real(key, value);
    } else if (key == "strip_hi") {
      regions.strip_hi = parse_real(key, value);
    } else if (key == "near_one_radius") {
      regions.near_one_radius = parse_real(key, value);
    } else if (key == "format") {
      settings.format = value;
    } else {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }
  const RegionBoundaries& r = settings.eval.regions;
  if (!(r.left_hi < 0.0 && r.left_hi < r.direct_lo && r.direct_lo > 0.0 && r.near_one_radius > 0.0)) {
    throw std::invalid_argument("inconsistent region boundaries");
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fibonacci zeta functions of real quadratic fields"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--config", common.config_path, "key=value settings file");
  app.add_option("--format", common.format, "csv or json");
  app.add_option("--precision", common.precision, "working precision in decimal digits");

  const auto add_eval_flags = [&](CLI::App* sub) {
    sub->add_option("--tol", common.tol, "relative truncation target");
    sub->add_option("--pole-guard", common.pole_guard, "pole guard radius");
  };

  std::int64_t D = 0;
  std::string s_text;
  std::string parity_text = "combined";
  std::string method_text = "binomial";
  auto* eval = app.add_subcommand("eval", "evaluate one parity at one point");
  eval->add_option("--D", D, "squarefree D >= 2")->required();
  eval->add_option("--s", s_text, "complex point, e.g. -0.5+2i")->required();
  eval->add_option("--parity", parity_text, "odd, even or combined");
  eval->add_option("--method", method_text, "direct, binomial, poisson or shifted_convolution");
  add_eval_flags(eval);

  std::string re_text;
  std::string im_text = "0";
  std::string methods_text = "binomial,poisson";
  auto* grid = app.add_subcommand("grid", "evaluate on a rectangular grid");
  grid->add_option("--D", D)->required();
  grid->add_option("--parity", parity_text);
  grid->add_option("--re", re_text, "lo:hi:step")->required();
  grid->add_option("--im", im_text, "lo:hi:step");
  grid->add_option("--methods", methods_text, "comma-separated method list");
  add_eval_flags(grid);

  int k_max = 0;
  std::int64_t m_max = 0;
  std::string which_text = "combined";
  auto* poles = app.add_subcommand("poles", "list lattice poles with residues");
  poles->add_option("--D", D)->required();
  poles->add_option("--kmax", k_max)->required();
  poles->add_option("--mmax", m_max)->required();
  poles->add_option("--which", which_text, "odd, even or combined");

  std::string suite;
  std::string d_list = "2,5,10,13";
  std::uint64_t seed = 1;
  auto* verify = app.add_subcommand("verify", "run a self-check suite");
  verify->add_option("--suite", suite)->required();
  verify->add_option("--D", d_list, "comma-separated fields");
  verify->add_option("--seed", seed);

  std::uint64_t n_terms = 0;
  auto* seq = app.add_subcommand("sequence", "print F_D(n), L_D(n)");
  seq->add_option("--D", D)->required();
  seq->add_option("--n", n_terms)->required();

  std::vector<std::string> detect_values;
  std::string query_text;
  auto* detect = app.add_subcommand("detect", "Pell-type membership test");
  detect->add_option("--D", D)->required();
  detect->add_option("--n", detect_values, "positive integers")->required();
  detect->add_option("--query", query_text, "membership or parity");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const Settings settings = resolve(common);
    Table table;

    if (*eval) {
      const Complex s = complex_arg(s_text);
      const Parity parity = parity_arg(parity_text);
      const Method method = method_arg(method_text);
      const QuadraticField field = make_field(D, settings.digits);
      const ZetaEvaluation result = evaluate(field, s, parity, method, settings.eval);
      const double pole_distance = std::min(result.nearest_pole_distance,
                                            nearest_pole(field, s, pole_set_for(field, parity)).distance);
      table.columns = {"D", "re_s", "im_s", "parity", "method", "re_value", "im_value",
                       "terms_used", "tail_bound", "nearest_pole_distance"};
      std::vector<Cell> row{D};
      push_complex(row, s);
      row.emplace_back(std::string(parity_name(parity)));
      row.emplace_back(std::string(method_name(method)));
      push_complex(row, result.value);
      row.emplace_back(static_cast<std::int64_t>(result.terms_used));
      row.emplace_back(result.tail_bound);
      row.emplace_back(pole_distance);
      table.rows.push_back(std::move(row));
      emit(table, settings.format, out);
      return kOk;
    }

    if (*grid) {
      const Parity parity = parity_arg(parity_text);
      const auto re = parse_range(re_text);
      const auto im = parse_range(im_text);
      if (!re || !im) throw std::invalid_argument("ranges must be lo:hi:step with step > 0");
      std::vector<Method> methods;
      std::stringstream list(methods_text);
      for (std::string item; std::getline(list, item, ',');) methods.push_back(method_arg(item));
      if (methods.empty()) throw std::invalid_argument("no methods given");
      const QuadraticField field = make_field(D, settings.digits);
      std::vector<Complex> points;
      for (double x : *re) {
        for (double y : *im) points.emplace_back(x, y);
      }
      const std::vector<GridCell> cells = evaluate_grid(field, points, parity, methods, settings.eval);
      table.columns = {"re_s", "im_s", "method", "re_value", "im_value", "tail_bound", "pole_distance", "status"};
      bool failed = false;
      for (const GridCell& cell : cells) {
        std::vector<Cell> row;
        push_complex(row, cell.s);
        row.emplace_back(std::string(method_name(cell.method)));
        if (cell.result) {
          push_complex(row, cell.result->value);
          row.emplace_back(cell.result->tail_bound);
        } else {
          row.insert(row.end(), 3, Cell{});
          failed = failed || !cell.at_pole();
        }
        row.emplace_back(cell.pole_distance);
        row.emplace_back(status_of(cell));
        table.rows.push_back(std::move(row));
      }
      emit(table, settings.format, out);
      return failed ? kNumerical : kOk;
    }

    if (*poles) {
      const Parity which = parity_arg(which_text);
      const QuadraticField field = make_field(D, settings.digits);
      table.columns = {"k",           "m",           "re_s",           "im_s",
                       "re_res_odd",  "im_res_odd",  "re_res_even",    "im_res_even",
                       "re_res_comb", "im_res_comb", "survives_in_combined"};
      for (const PoleSpec& pole : pole_lattice(field, k_max, m_max, which)) {
        std::vector<Cell> row{static_cast<std::int64_t>(pole.k), pole.m};
        push_complex(row, pole.location);
        push_complex(row, pole.residue_odd);
        push_complex(row, pole.residue_even);
        push_complex(row, pole.residue_combined);
        row.emplace_back(pole.survives_in_combined);
        table.rows.push_back(std::move(row));
      }
      emit(table, settings.format, out);
      return kOk;
    }

    if (*verify) {
      const auto names = suite_names();
      if (std::find(names.begin(), names.end(), suite) == names.end()) {
        throw std::invalid_argument("unknown suite '" + suite + "'");
      }
      const SuiteReport report = run_suite(suite, parse_d_list(d_list), seed, settings.eval);
      table.columns = {"check", "status", "max_deviation", "tolerance", "detail"};
      for (const CheckResult& check : report.checks) {
        table.rows.push_back({check.name, std::string(check.passed ? "PASS" : "FAIL"), check.max_deviation,
                              check.tolerance, check.detail});
      }
      emit(table, settings.format, out);
      return report.passed() ? kOk : kNumerical;
    }

    if (*seq) {
      const QuadraticField field = make_field(D, settings.digits);
      const BigInt q = field.q();
      table.columns = {"n", "fib", "lucas", "norm_value", "norm_check"};
      BigInt norm_power = 1;
      for (const SequenceTerm& term : sequence(field, n_terms)) {
        const BigInt norm = term.lucas * term.lucas - q * term.fib * term.fib;
        table.rows.push_back({static_cast<std::int64_t>(term.index), term.fib.get_str(), term.lucas.get_str(),
                              norm.get_str(), std::string(norm == 4 * norm_power ? "ok" : "FAIL")});
        norm_power *= field.norm_eps();
      }
      emit(table, settings.format, out);
      return kOk;
    }

    if (*detect) {
      const QuadraticField field = make_field(D, settings.digits);
      MembershipQuery query = field.norm_eps() == -1 ? MembershipQuery::parity : MembershipQuery::membership;
      if (query_text == "membership") {
        query = MembershipQuery::membership;
      } else if (query_text == "parity") {
        query = MembershipQuery::parity;
      } else if (!query_text.empty()) {
        throw std::invalid_argument("query must be membership or parity");
      }
      table.columns = {"n", "verdict", "plus_witness", "minus_witness"};
      for (const std::string& text : detect_values) {
        BigInt n;
        if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos || n.set_str(text, 10) != 0) {
          throw std::invalid_argument("not a positive integer: '" + text + "'");
        }
        const FibMembership verdict = is_fib(field, n, query);
        table.rows.push_back({n.get_str(), std::string(membership_name(verdict.verdict)),
                              verdict.plus_witness ? Cell{verdict.plus_witness->get_str()} : Cell{},
                              verdict.minus_witness ? Cell{verdict.minus_witness->get_str()} : Cell{}});
      }
      emit(table, settings.format, out);
      return kOk;
    }
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_domain_error(e.kind()) ? kDomain : kNumerical;
  }
  return kUsage;
}

}  // namespace fibzeta::cli
