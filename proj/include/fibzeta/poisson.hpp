#pragma once

// Poisson-summation continuations.
//
// Z_odd(s) = q^{s/2} / (8 Gamma(s) log eps)
//            * sum_m (-1)^m Gamma(s/2 + i kappa m) Gamma(s/2 - i kappa m),
// with kappa = pi / (2 log eps). Z_even is evaluated regionwise: the direct
// series for Re s >= 1/2, the regularized (Mordell) strip formula, and the
// pure Gamma-ratio sum for Re s < 0.
//
// Both Z_even formulas have m-sums whose terms only decay like powers of m.
// The terms are summed exactly up to |m| <= M and the rest is added from the
// large-|m| expansion of Gamma(a - iy)/Gamma(1 - a - iy), whose power sums are
// evaluated by Euler-Maclaurin.

#include <cstdint>
#include <string_view>
#include <vector>

#include "fibzeta/continuation.hpp"

namespace fibzeta {

enum class Region { direct_series, mordell_strip, left_half };

std::string_view region_name(Region region);

Region select_region(Complex s, const RegionBoundaries& boundaries);

// One half-integer-frequency term of the odd Poisson sum.
struct FourierTermOdd {
  std::int64_t m = 0;
  Complex value;  // Gamma(s/2 + pi i m/(2 log eps)) Gamma(s/2 - pi i m/(2 log eps))
};

FourierTermOdd fourier_term_odd(const QuadraticField& field, Complex s, std::int64_t m);

// Fourier transform of f_s(x) = (eps^x + eps^-x)^-s at integer frequency m:
// B(s/2 + pi i m/log eps, s/2 - pi i m/log eps) / (2 log eps).
Complex fourier_coefficient_odd(const QuadraticField& field, Complex s, std::int64_t m,
                                double guard = 1e-3);

ZetaEvaluation z_odd_poisson(const QuadraticField& field, Complex s, const EvalOptions& options = {});

// Region chosen by select_region.
ZetaEvaluation z_even_poisson(const QuadraticField& field, Complex s, const EvalOptions& options = {});

// Forces one formula. direct_series needs Re s > 0; mordell_strip needs
// Re s < strip_hi and |s - 1| >= near_one_radius; left_half needs
// Re s <= left_hi (TooSlowConvergence for left_hi < Re s < 0).
ZetaEvaluation z_even_poisson_in_region(const QuadraticField& field, Complex s, Region region,
                                        const EvalOptions& options = {});

// int_0^inf ((eps^{2x} - eps^{-2x})^-s - (4 x log eps)^-s) e(m x) dx, m != 0,
// in closed form.
Complex mordell_integral_m(const QuadraticField& field, Complex s, std::int64_t m,
                           double guard = 1e-3);

// The |m|^{1-s} parts of the strip formula summed on their own (Re s < 0):
//   -q^{s/2} Gamma(1-s) 2cos(pi(1-s)/2) / ((2 pi)^{1-s} (4 log eps)^s) * sum_{m>=1} m^{s-1},
// with the m-sum done explicitly plus an Euler-Maclaurin tail (no zeta call).
Complex mordell_power_contribution(const QuadraticField& field, Complex s);

namespace detail {

// sum_{m >= first} m^-sigma for Re sigma > 1.
Complex power_tail_sum(Complex sigma, std::uint64_t first);

// Bernoulli number B_n (B_1 = -1/2), n <= 80.
double bernoulli_number(int n);
Complex bernoulli_polynomial(int n, Complex x);

// Coefficients e_0..e_count-1 with
//   Gamma(a + z)/Gamma(1 - a + z) ~ z^{2a-1} sum_n e_n z^{-2n},  z -> infinity.
std::vector<Complex> gamma_ratio_expansion(Complex a, int count);

}  // namespace detail

}  // namespace fibzeta
