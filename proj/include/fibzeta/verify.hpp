#pragma once

// Self-check suites run by `fibzeta verify`.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fibzeta/continuation.hpp"

namespace fibzeta {

struct CheckResult {
  std::string name;
  bool passed = false;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool passed() const;
};

std::vector<std::string_view> suite_names();

// Throws InvalidInput for an unknown suite name.
SuiteReport run_suite(std::string_view name, const std::vector<std::int64_t>& Ds, std::uint64_t seed = 1,
                      const EvalOptions& options = {});

// Deterministic sample of count points in the box re in [re_lo, re_hi],
// |im| <= im_max, each farther than min_pole_distance from the split lattice.
std::vector<Complex> random_grid(const QuadraticField& field, std::size_t count, std::uint64_t seed,
                                 double re_lo = -4.0, double re_hi = 3.0, double im_max = 8.0,
                                 double min_pole_distance = 0.05);

}  // namespace fibzeta
