#pragma once

// One entry point over all evaluation methods.

#include <optional>
#include <string_view>

#include "fibzeta/continuation.hpp"

namespace fibzeta {

std::optional<Method> parse_method(std::string_view name);
std::optional<Parity> parse_parity(std::string_view name);

// direct: enough terms for options.tol (Re s > 0).
// binomial: the series of the requested parity.
// poisson: odd and even sums; combined adds them (N(eps) = -1 only).
// shifted_convolution: squares up to options.shifted_n_max (Re s > 0, N(eps) = -1).
ZetaEvaluation evaluate(const QuadraticField& field, Complex s, Parity parity, Method method,
                        const EvalOptions& options = {});

}  // namespace fibzeta
