#pragma once

// Command-line front end. The binary is a thin wrapper around run_cli.

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fibzeta/continuation.hpp"

namespace fibzeta::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kNumerical = 3, kDomain = 4 };

// "a", "bi", "a+bi", "a-bi", "i", "-i"; nullopt for anything else.
std::optional<Complex> parse_complex(std::string_view text);

// %.17g, round-trips through strtod.
std::string format_double(double x);

// "lo:hi:step", inclusive of hi up to rounding; empty when hi < lo.
std::optional<std::vector<double>> parse_range(std::string_view text);

// key=value lines, '#' starts a comment. Throws std::invalid_argument on a malformed line.
std::map<std::string, std::string> parse_config(std::string_view text);

struct Settings {
  EvalOptions eval;
  unsigned digits = kDefaultDigits;
  std::string format = "csv";
};

// Applies known keys; throws std::invalid_argument for unknown keys or bad values.
void apply_config(Settings& settings, const std::map<std::string, std::string>& config);

// Runs one invocation; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fibzeta::cli
