#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fibzeta/cli.hpp"

using namespace fibzeta;
using fibzeta::cli::run;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) parts.push_back(part);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) rows.push_back(split(line, ','));
  return rows;
}

std::size_t column(const std::vector<std::string>& header, const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  FAIL("missing column " << name);
  return 0;
}

struct EnvGuard {
  explicit EnvGuard(const char* value) {
    if (value) {
      setenv("FIBZETA_PRECISION", value, 1);
    } else {
      unsetenv("FIBZETA_PRECISION");
    }
  }
  ~EnvGuard() { unsetenv("FIBZETA_PRECISION"); }
};

}  // namespace

TEST_CASE("complex literals") {
  using cli::parse_complex;
  CHECK(parse_complex("1") == Complex{1, 0});
  CHECK(parse_complex("-0.5+2i") == Complex{-0.5, 2});
  CHECK(parse_complex("3-4i") == Complex{3, -4});
  CHECK(parse_complex("2i") == Complex{0, 2});
  CHECK(parse_complex("-i") == Complex{0, -1});
  CHECK(parse_complex("i") == Complex{0, 1});
  CHECK(parse_complex("1e-3+1.5e2i") == Complex{1e-3, 150});
  CHECK(parse_complex(" .5 ") == Complex{0.5, 0});
  for (const char* bad : {"", "abc", "1+", "1+2", "i2", "1+2j", "1++2i", "2i+1", "1 + 2i", "1e999", "--1", "+-i"}) {
    CAPTURE(bad);
    CHECK_FALSE(parse_complex(bad).has_value());
  }
}

TEST_CASE("number formatting round-trips") {
  for (double x : {3.3598856662431706, -1.0 / 3.0, 1e-300, 6.02214076e23, 0.1, -0.0}) {
    const std::string text = cli::format_double(x);
    CHECK(std::strtod(text.c_str(), nullptr) == x);
  }
  CHECK(cli::format_double(-0.0) == "0");
  CHECK(cli::format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("ranges and config files") {
  CHECK(cli::parse_range("1:3:1") == std::vector<double>{1, 2, 3});
  CHECK(cli::parse_range("2") == std::vector<double>{2});
  CHECK(cli::parse_range("0:1:0.1")->size() == 11);
  CHECK(cli::parse_range("3:1:1")->empty());
  CHECK_FALSE(cli::parse_range("1:3:0").has_value());
  CHECK_FALSE(cli::parse_range("1:3:-1").has_value());
  CHECK_FALSE(cli::parse_range("a:b:c").has_value());

  const auto config = cli::parse_config("# pinned\nprecision = 60\n\ntol=1e-12  # tighter\n");
  CHECK(config.at("precision") == "60");
  CHECK(config.at("tol") == "1e-12");
  CHECK_THROWS_AS(cli::parse_config("no equals sign\n"), std::invalid_argument);

  cli::Settings settings;
  cli::apply_config(settings, {{"pole_guard_radius", "1e-4"}, {"left_hi", "-0.5"}, {"format", "json"}});
  CHECK(settings.eval.pole_guard == 1e-4);
  CHECK(settings.eval.regions.left_hi == -0.5);
  CHECK(settings.format == "json");
  CHECK_THROWS_AS(cli::apply_config(settings, {{"colour", "blue"}}), std::invalid_argument);
  CHECK_THROWS_AS(cli::apply_config(settings, {{"tol", "0.5"}}), std::invalid_argument);
}

TEST_CASE("eval") {
  auto r = invoke({"eval", "--D", "5", "--s", "1", "--parity", "combined", "--method", "binomial"});
  REQUIRE(r.code == cli::kOk);
  auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 2);
  const double value = std::stod(rows[1][column(rows[0], "re_value")]);
  CHECK(std::abs(value - 3.359885666243) < 1e-12);
  CHECK(rows[1][column(rows[0], "method")] == "binomial");

  r = invoke({"eval", "--D", "5", "--s", "-1", "--parity", "even", "--method", "poisson", "--format", "json"});
  REQUIRE(r.code == cli::kOk);
  const auto json = nlohmann::json::parse(r.out);
  CHECK(std::abs(json[0]["re_value"].get<double>() + 1.0) < 1e-10);
  CHECK(json[0]["method"] == "poisson");

  r = invoke({"eval", "--D", "6", "--s", "1", "--parity", "odd"});
  CHECK(r.code == cli::kDomain);
  CHECK(r.err.find("NormPlusOne") != std::string::npos);
  CHECK(r.out.empty());

  r = invoke({"eval", "--D", "5", "--s", "0", "--parity", "odd"});
  CHECK(r.code == cli::kNumerical);
  CHECK(r.err.find("PoleProximity") != std::string::npos);

  CHECK(invoke({"eval", "--D", "4", "--s", "1"}).code == cli::kDomain);
  CHECK(invoke({"eval", "--D", "5", "--s", "1+"}).code == cli::kUsage);
  CHECK(invoke({"eval", "--D", "5", "--s", "1", "--method", "magic"}).code == cli::kUsage);
  CHECK(invoke({"eval", "--D", "5"}).code == cli::kUsage);
  CHECK(invoke({"eval", "--D", "5", "--s", "1", "--tol", "0.5"}).code == cli::kUsage);
  CHECK(invoke({}).code == cli::kUsage);
  CHECK(invoke({"frobnicate"}).code == cli::kUsage);
  CHECK(invoke({"eval", "--D", "5", "--s", "-1", "--method", "direct", "--parity", "odd"}).code ==
        cli::kDomain);
}

TEST_CASE("grid") {
  auto r = invoke({"grid", "--D", "5", "--parity", "odd", "--re", "1:3:1", "--im", "-1:1:1", "--methods",
                   "binomial,poisson"});
  REQUIRE(r.code == cli::kOk);
  auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 1 + 18);
  const auto& header = rows[0];
  const auto re_v = column(header, "re_value");
  const auto im_v = column(header, "im_value");
  for (std::size_t i = 1; i < rows.size(); i += 2) {
    CHECK(rows[i][column(header, "method")] == "binomial");
    CHECK(rows[i + 1][column(header, "method")] == "poisson");
    const Complex a{std::stod(rows[i][re_v]), std::stod(rows[i][im_v])};
    const Complex b{std::stod(rows[i + 1][re_v]), std::stod(rows[i + 1][im_v])};
    CHECK(std::abs(a - b) < 1e-8);
  }

  r = invoke({"grid", "--D", "5", "--parity", "odd", "--re", "-1:1:1", "--im", "0"});
  REQUIRE(r.code == cli::kOk);
  rows = csv_rows(r.out);
  bool saw_pole = false;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (std::stod(row[column(rows[0], "re_s")]) == 0.0) {
      CHECK(row[column(rows[0], "status")] == "pole");
      CHECK(row[re_v].empty());
      saw_pole = true;
    }
  }
  CHECK(saw_pole);

  r = invoke({"grid", "--D", "5", "--re", "3:1:1", "--im", "0"});
  CHECK(r.code == cli::kOk);
  CHECK(csv_rows(r.out).size() == 1);

  r = invoke({"grid", "--D", "5", "--parity", "odd", "--re", "-1", "--im", "0.5", "--methods", "direct"});
  CHECK(r.code == cli::kNumerical);
  CHECK(r.out.find("OutOfRegion") != std::string::npos);

  CHECK(invoke({"grid", "--D", "5", "--re", "1:2:0"}).code == cli::kUsage);
}

TEST_CASE("CSV rows round-trip bit for bit") {
  const auto r = invoke({"grid", "--D", "13", "--parity", "even", "--re", "-2:2:0.7", "--im", "-3:3:1.3"});
  REQUIRE(r.code == cli::kOk);
  const auto rows = csv_rows(r.out);
  const auto re_v = column(rows[0], "re_value");
  const auto im_v = column(rows[0], "im_value");
  const auto re_s = column(rows[0], "re_s");
  const auto im_s = column(rows[0], "im_s");
  const auto field = make_field(13);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i][column(rows[0], "status")] != "ok" || rows[i][column(rows[0], "method")] != "binomial") continue;
    const Complex s{std::stod(rows[i][re_s]), std::stod(rows[i][im_s])};
    const Complex z = z_even_binomial(field, s).value;
    CHECK(std::strtod(rows[i][re_v].c_str(), nullptr) == z.real());
    CHECK(std::strtod(rows[i][im_v].c_str(), nullptr) == z.imag());
    CHECK(cli::format_double(std::strtod(rows[i][re_v].c_str(), nullptr)) == rows[i][re_v]);
  }
}

TEST_CASE("poles") {
  auto r = invoke({"poles", "--D", "5", "--kmax", "1", "--mmax", "1", "--which", "odd"});
  REQUIRE(r.code == cli::kOk);
  auto rows = csv_rows(r.out);
  CHECK(rows.size() == 1 + 6);

  r = invoke({"poles", "--D", "5", "--kmax", "3", "--mmax", "3", "--which", "combined"});
  rows = csv_rows(r.out);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const int k = std::stoi(rows[i][column(rows[0], "k")]);
    const int m = std::stoi(rows[i][column(rows[0], "m")]);
    CHECK((k + m) % 2 == 0);
  }

  r = invoke({"poles", "--D", "5", "--kmax", "0", "--mmax", "0", "--which", "odd", "--format", "json"});
  const auto json = nlohmann::json::parse(r.out);
  REQUIRE(json.size() == 1);
  CHECK(json[0]["re_s"] == 0.0);
  CHECK(std::abs(json[0]["re_res_odd"].get<double>() - 1.0 / (2.0 * std::log((1.0 + std::sqrt(5.0)) / 2.0))) <
        1e-15);

  CHECK(invoke({"poles", "--D", "3", "--kmax", "1", "--mmax", "1", "--which", "odd"}).code == cli::kDomain);
  CHECK(invoke({"poles", "--D", "3", "--kmax", "1", "--mmax", "1", "--which", "combined"}).code == cli::kOk);
}

TEST_CASE("sequence") {
  auto r = invoke({"sequence", "--D", "3", "--n", "5"});
  auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 7);
  CHECK(rows.back()[column(rows[0], "fib")] == "209");
  CHECK(rows.back()[column(rows[0], "lucas")] == "724");

  rows = csv_rows(invoke({"sequence", "--D", "10", "--n", "4"}).out);
  CHECK(rows.back()[1] == "228");
  CHECK(rows.back()[2] == "1442");

  rows = csv_rows(invoke({"sequence", "--D", "5", "--n", "10"}).out);
  CHECK(rows.back()[1] == "55");
  CHECK(rows.back()[2] == "123");
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][column(rows[0], "norm_check")] == "ok");

  rows = csv_rows(invoke({"sequence", "--D", "5", "--n", "300"}).out);
  CHECK(rows.back()[1] == "222232244629420445529739893461909967206666939096499764990979600");
}

TEST_CASE("detect") {
  const auto r = invoke({"detect", "--D", "5", "--n", "1", "--n", "4", "--n", "21", "--n", "89", "--query",
                         "parity", "--format", "json"});
  REQUIRE(r.code == cli::kOk);
  const auto json = nlohmann::json::parse(r.out);
  REQUIRE(json.size() == 4);
  CHECK(json[0]["verdict"] == "member_both_parities");
  CHECK(json[1]["verdict"] == "not_member");
  CHECK(json[2]["verdict"] == "member_even_index");
  CHECK(json[3]["verdict"] == "member_odd_index");
  CHECK(json[3]["minus_witness"] == "199");

  CHECK(invoke({"detect", "--D", "3", "--n", "4", "--query", "parity"}).code == cli::kDomain);
  CHECK(invoke({"detect", "--D", "3", "--n", "4", "--query", "membership"}).code == cli::kOk);
  CHECK(invoke({"detect", "--D", "5", "--n", "-4"}).code == cli::kUsage);
}

TEST_CASE("verify") {
  auto r = invoke({"verify", "--suite", "special-values", "--D", "5"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("FAIL") == std::string::npos);
  r = invoke({"verify", "--suite", "cross-method", "--D", "5,10", "--seed", "3"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out == invoke({"verify", "--suite", "cross-method", "--D", "5,10", "--seed", "3"}).out);
  CHECK(invoke({"verify", "--suite", "bogus"}).code == cli::kUsage);
}

TEST_CASE("settings precedence") {
  const auto path = std::filesystem::temp_directory_path() / "fibzeta_test_cli.conf";
  {
    std::ofstream conf(path);
    conf << "format = json\nprecision = 30\n";
  }
  {
    EnvGuard env(nullptr);
    const auto r = invoke({"--config", path.string(), "sequence", "--D", "5", "--n", "3"});
    CHECK(r.code == cli::kOk);
    CHECK(nlohmann::json::parse(r.out).size() == 4);
    // flags override the file
    CHECK(invoke({"--config", path.string(), "sequence", "--D", "5", "--n", "3", "--format", "csv"})
              .out.starts_with("n,fib"));
  }
  {
    // the environment overrides the file
    EnvGuard env("7");
    CHECK(invoke({"--config", path.string(), "sequence", "--D", "5", "--n", "3"}).code == cli::kUsage);
    // and the flag overrides the environment
    CHECK(invoke({"--config", path.string(), "sequence", "--D", "5", "--n", "3", "--precision", "40"}).code ==
          cli::kOk);
  }
  {
    std::ofstream conf(path);
    conf << "precision = 5\n";
  }
  CHECK(invoke({"--config", path.string(), "sequence", "--D", "5", "--n", "3"}).code == cli::kUsage);
  CHECK(invoke({"--config", "/nonexistent/fibzeta.conf", "sequence", "--D", "5", "--n", "3"}).code == cli::kUsage);
  std::filesystem::remove(path);
}
