#pragma once

#include <cstddef>
#include <cstdint>

namespace fibzeta {

// Region split for the Poisson evaluation of Z_even.
struct RegionBoundaries {
  double direct_lo = 0.5;        // direct series for Re s >= direct_lo
  double left_hi = -0.25;        // Gamma-ratio sum for Re s <= left_hi
  double strip_hi = 2.0;         // strip formula may be forced up to Re s < strip_hi
  double near_one_radius = 0.1;  // strip formula refused inside |s - 1| < radius
};

struct EvalOptions {
  double tol = 1e-14;         // relative truncation target
  double pole_guard = 1e-3;   // evaluations closer than this to a pole fail
  std::size_t max_terms = 200000;
  RegionBoundaries regions;
  // Square bound for the shifted-convolution oracle (sums over t^2 <= n_max).
  std::uint64_t shifted_n_max = 10000000000ULL;
};

}  // namespace fibzeta
