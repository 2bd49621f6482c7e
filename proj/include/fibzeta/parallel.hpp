#pragma once

// OpenMP kernels for the data-parallel workloads, each with a serial
// reference that computes the same thing in a plain loop. Results are
// ordered by input index regardless of scheduling.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fibzeta/continuation.hpp"

namespace fibzeta {

struct GridCell {
  std::size_t index = 0;
  Complex s;
  Method method = Method::binomial;
  double pole_distance = 0.0;
  std::optional<ZetaEvaluation> result;
  std::optional<ErrorKind> failure;
  std::string message;

  bool at_pole() const { return failure == ErrorKind::PoleProximity; }
};

// One cell per (point, method), point-major. Per-point failures are recorded, not thrown.
std::vector<GridCell> evaluate_grid(const QuadraticField& field, const std::vector<Complex>& points,
                                    Parity parity, const std::vector<Method>& methods,
                                    const EvalOptions& options = {});
std::vector<GridCell> evaluate_grid_serial(const QuadraticField& field, const std::vector<Complex>& points,
                                           Parity parity, const std::vector<Method>& methods,
                                           const EvalOptions& options = {});

// Membership verdicts for n = 1..n_max (entry n - 1).
std::vector<Membership> membership_scan(const QuadraticField& field, std::uint64_t n_max,
                                        MembershipQuery query = MembershipQuery::parity);
std::vector<Membership> membership_scan_serial(const QuadraticField& field, std::uint64_t n_max,
                                               MembershipQuery query = MembershipQuery::parity);

// Shifted-convolution partial sum split into fixed chunks of t whose partial
// sums are added in chunk order, so the value does not depend on the thread count.
// Parity odd or even.
ZetaEvaluation shifted_convolution_parallel(const QuadraticField& field, Complex s, std::uint64_t n_max,
                                            Parity parity);

int max_threads();

}  // namespace fibzeta
