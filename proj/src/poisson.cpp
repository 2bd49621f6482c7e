#include "fibzeta/poisson.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include <gmpxx.h>

namespace fibzeta {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

void require_norm_minus_one(const QuadraticField& field, std::string_view what) {
  if (field.norm_eps() == -1) return;
  throw Error(ErrorKind::NormPlusOne, std::string(what) + " needs N(eps) = -1; D = " +
                                          std::to_string(field.D()) + " has N(eps) = +1");
}

double kappa_of(const QuadraticField& field) { return kPi / (2.0 * field.log_eps()); }

Complex q_power_half(const QuadraticField& field, Complex s) {
  return std::exp(0.5 * s * std::log(static_cast<double>(field.q())));
}

// Distance from z to the nearest pole of Gamma (a nonpositive integer).
double gamma_pole_distance(Complex z) {
  const double n = std::min(0.0, std::nearbyint(z.real()));
  return std::abs(z - n);
}

void check_gamma_argument(Complex z, double guard, std::string_view what) {
  if (gamma_pole_distance(z) <= guard) {
    throw Error(ErrorKind::PoleProximity, std::string(what) + ": Gamma argument within guard of a pole");
  }
}

// Gamma(a - iy) / Gamma(1 - a - iy)
Complex gamma_ratio(Complex a, double y) {
  return std::exp(clgamma(a - kI * y) - clgamma(1.0 - a - kI * y));
}

// (-iy)^{s-1}, principal branch.
Complex leading_power(Complex s, double y) { return std::exp((s - 1.0) * std::log(Complex{0.0, -y})); }

struct RatioSum {
  Complex value;
  double tail_bound = 0.0;
  std::size_t terms = 0;
};

// sum_m Gamma(s/2 - i kappa m)/Gamma(1 - s/2 - i kappa m) over m in Z, or,
// with subtract_leading, the m = 0 term plus sum_{m != 0} of the ratio minus
// its leading power (-i kappa m)^{s-1}.
RatioSum gamma_ratio_sum(Complex s, double kappa, bool subtract_leading, double tol) {
  const Complex a = 0.5 * s;
  const double y_min = std::max(30.0, 4.0 * std::abs(s));
  const auto M = static_cast<std::uint64_t>(std::ceil(y_min / kappa));

  RatioSum result;
  Complex partial = gamma_ratio(a, 0.0);
  for (std::uint64_t m = 1; m <= M; ++m) {
    for (double sign : {1.0, -1.0}) {
      const double y = sign * kappa * static_cast<double>(m);
      Complex term = gamma_ratio(a, y);
      if (subtract_leading) term -= leading_power(s, y);
      partial += term;
    }
  }
  result.terms = 2 * M + 1;

  // |m| > M: pairs (m, -m) contribute
  //   2 cos(pi (s-1)/2) sum_n e_n (-1)^n kappa^{s-1-2n} m^{s-1-2n}.
  constexpr int kExpansionTerms = 18;
  const std::vector<Complex> coeffs = detail::gamma_ratio_expansion(a, kExpansionTerms);
  const Complex pair_factor = 2.0 * std::cos(0.5 * kPi * (s - 1.0));
  const double log_kappa = std::log(kappa);
  Complex tail = 0.0;
  double last = std::numeric_limits<double>::infinity();
  for (int n = subtract_leading ? 1 : 0; n < kExpansionTerms; ++n) {
    const Complex exponent = s - 1.0 - 2.0 * n;
    const Complex power_sum = detail::power_tail_sum(-exponent, M + 1);
    const Complex term = pair_factor * coeffs[n] * (n % 2 == 0 ? 1.0 : -1.0) *
                         std::exp(exponent * log_kappa) * power_sum;
    tail += term;
    ++result.terms;
    last = std::abs(term);
    if (last <= 1e-3 * tol * std::abs(partial + tail)) break;
  }
  result.value = partial + tail;
  result.tail_bound = last;
  return result;
}

ZetaEvaluation even_direct_series(const QuadraticField& field, Complex s, const EvalOptions& options) {
  if (s.real() <= 0.0) throw Error(ErrorKind::OutOfRegion, "direct series needs Re s > 0");
  const double L = field.log_eps();
  // q^{s/2} sum_n (eps^{2n} - eps^{-2n})^-s, successive terms shrink by eps^{-2 Re s}.
  const double r = std::exp(-2.0 * s.real() * L);
  Complex sum = 0.0;
  double tail = std::numeric_limits<double>::infinity();
  std::size_t n = 1;
  for (;; ++n) {
    if (n > options.max_terms) {
      throw Error(ErrorKind::TooSlowConvergence, "direct series did not converge");
    }
    const double nd = static_cast<double>(n);
    const Complex term = std::exp(-2.0 * nd * L * s - s * std::log1p(-std::exp(-4.0 * nd * L)));
    sum += term;
    tail = std::abs(term) * r / (1.0 - r);
    if (tail <= options.tol * std::abs(sum)) break;
  }
  const Complex prefactor = q_power_half(field, s);
  ZetaEvaluation result;
  result.value = prefactor * sum;
  result.method = Method::poisson;
  result.parity = Parity::even;
  result.terms_used = n;
  result.tail_bound = std::abs(prefactor) * tail;
  return result;
}

ZetaEvaluation even_strip(const QuadraticField& field, Complex s, const EvalOptions& options) {
  const RegionBoundaries& b = options.regions;
  if (s.real() >= b.strip_hi) {
    throw Error(ErrorKind::OutOfRegion, "strip formula needs Re s < " + std::to_string(b.strip_hi));
  }
  if (std::abs(s - 1.0) < b.near_one_radius) {
    throw Error(ErrorKind::NearOneSingularity,
                "strip formula has cancelling poles at s = 1; use the direct series");
  }
  const double L = field.log_eps();
  const RatioSum sum = gamma_ratio_sum(s, kappa_of(field), true, options.tol);
  const Complex gamma_one_minus_s = cgamma(1.0 - s);
  const Complex zeta_part = czeta(s) * std::exp(-s * std::log(4.0 * L));
  const Complex prefactor = q_power_half(field, s);
  const Complex scale = gamma_one_minus_s / (4.0 * L);

  ZetaEvaluation result;
  result.value = prefactor * (zeta_part + scale * sum.value);
  result.method = Method::poisson;
  result.parity = Parity::even;
  result.terms_used = sum.terms;
  result.tail_bound = std::abs(prefactor * scale) * sum.tail_bound;
  return result;
}

ZetaEvaluation even_left(const QuadraticField& field, Complex s, const EvalOptions& options) {
  if (s.real() >= 0.0) throw Error(ErrorKind::OutOfRegion, "Gamma-ratio sum needs Re s < 0");
  if (s.real() > options.regions.left_hi) {
    throw Error(ErrorKind::TooSlowConvergence,
                "Gamma-ratio sum refused for Re s > " + std::to_string(options.regions.left_hi));
  }
  const double L = field.log_eps();
  const RatioSum sum = gamma_ratio_sum(s, kappa_of(field), false, options.tol);
  const Complex scale = q_power_half(field, s) * cgamma(1.0 - s) / (4.0 * L);

  ZetaEvaluation result;
  result.value = scale * sum.value;
  result.method = Method::poisson;
  result.parity = Parity::even;
  result.terms_used = sum.terms;
  result.tail_bound = std::abs(scale) * sum.tail_bound;
  return result;
}

}  // namespace

std::string_view region_name(Region region) {
  switch (region) {
    case Region::direct_series: return "direct_series";
    case Region::mordell_strip: return "mordell_strip";
    case Region::left_half: return "left_half";
  }
  return "unknown";
}

Region select_region(Complex s, const RegionBoundaries& boundaries) {
  if (s.real() >= boundaries.direct_lo) return Region::direct_series;
  if (s.real() <= boundaries.left_hi) return Region::left_half;
  return Region::mordell_strip;
}

FourierTermOdd fourier_term_odd(const QuadraticField& field, Complex s, std::int64_t m) {
  const Complex shift = kI * (kappa_of(field) * static_cast<double>(m));
  const Complex a = 0.5 * s;
  return {m, std::exp(clgamma(a + shift) + clgamma(a - shift))};
}

Complex fourier_coefficient_odd(const QuadraticField& field, Complex s, std::int64_t m, double guard) {
  const double L = field.log_eps();
  const Complex shift = kI * (kPi * static_cast<double>(m) / L);
  const Complex a = 0.5 * s + shift;
  const Complex b = 0.5 * s - shift;
  check_gamma_argument(a, guard, "fourier_coefficient_odd");
  check_gamma_argument(b, guard, "fourier_coefficient_odd");
  return std::exp(clgamma(a) + clgamma(b)) * crgamma(s) / (2.0 * L);
}

ZetaEvaluation z_odd_poisson(const QuadraticField& field, Complex s, const EvalOptions& options) {
  require_norm_minus_one(field, "z_odd_poisson");
  const NearestPole pole = check_pole_guard(field, s, PoleSet::split, options);
  const double L = field.log_eps();
  const double kappa = kappa_of(field);
  // Past the plateau |y| > |Im s|/2 the products decay like e^{-pi kappa m} times a power of m.
  const double plateau = (std::abs(s.imag()) + std::abs(s)) / 2.0 + 3.0;
  const double decay = std::exp(-kPi * kappa);

  Complex sum = fourier_term_odd(field, s, 0).value;
  double tail = std::numeric_limits<double>::infinity();
  std::int64_t m = 1;
  for (;; ++m) {
    if (static_cast<std::size_t>(m) > options.max_terms) {
      throw Error(ErrorKind::TooSlowConvergence, "odd Poisson sum did not converge");
    }
    const Complex term = fourier_term_odd(field, s, m).value;
    sum += (m % 2 == 0 ? 2.0 : -2.0) * term;
    const double md = static_cast<double>(m);
    if (kappa * md < plateau) continue;
    const double r = decay * std::pow(1.0 + 1.0 / md, std::abs(s.real()) + 1.0);
    if (r >= 1.0) continue;
    tail = 2.0 * std::abs(term) * r / (1.0 - r);
    if (tail <= options.tol * std::abs(sum) || tail <= 1e-300) break;
  }

  const Complex prefactor = q_power_half(field, s) * crgamma(s) / (8.0 * L);
  ZetaEvaluation result;
  result.value = prefactor * sum;
  result.method = Method::poisson;
  result.parity = Parity::odd;
  result.terms_used = static_cast<std::size_t>(2 * m + 1);
  result.tail_bound = std::abs(prefactor) * tail;
  result.nearest_pole_distance = pole.distance;
  return result;
}

ZetaEvaluation z_even_poisson_in_region(const QuadraticField& field, Complex s, Region region,
                                        const EvalOptions& options) {
  require_norm_minus_one(field, "z_even_poisson");
  const NearestPole pole = check_pole_guard(field, s, PoleSet::split, options);
  ZetaEvaluation result;
  switch (region) {
    case Region::direct_series: result = even_direct_series(field, s, options); break;
    case Region::mordell_strip: result = even_strip(field, s, options); break;
    case Region::left_half: result = even_left(field, s, options); break;
  }
  result.nearest_pole_distance = pole.distance;
  return result;
}

ZetaEvaluation z_even_poisson(const QuadraticField& field, Complex s, const EvalOptions& options) {
  return z_even_poisson_in_region(field, s, select_region(s, options.regions), options);
}

Complex mordell_integral_m(const QuadraticField& field, Complex s, std::int64_t m, double guard) {
  if (m == 0) throw Error(ErrorKind::InvalidInput, "mordell_integral_m needs m != 0");
  const double n = std::nearbyint(s.real());
  if (n >= 1.0 && std::abs(s - n) <= guard) {
    throw Error(ErrorKind::PoleProximity, "Gamma(1 - s) has a pole at s = " + std::to_string(n));
  }
  const double L = field.log_eps();
  const double y = kappa_of(field) * static_cast<double>(m);
  const Complex a = 0.5 * s;
  check_gamma_argument(a - kI * y, guard, "mordell_integral_m");

  const Complex gamma_one_minus_s = cgamma(1.0 - s);
  const Complex ratio_part = gamma_ratio(a, y) / (4.0 * L);
  const double sign = m > 0 ? 1.0 : -1.0;
  const Complex power_part = std::exp(0.5 * kI * kPi * (1.0 - s) * sign -
                                      (1.0 - s) * std::log(2.0 * kPi * std::abs(static_cast<double>(m))) -
                                      s * std::log(4.0 * L));
  return gamma_one_minus_s * (ratio_part - power_part);
}

Complex mordell_power_contribution(const QuadraticField& field, Complex s) {
  if (s.real() >= 0.0) throw Error(ErrorKind::OutOfRegion, "power contribution needs Re s < 0");
  const double L = field.log_eps();
  const Complex sum = detail::power_tail_sum(1.0 - s, 1);
  const Complex factor = q_power_half(field, s) * cgamma(1.0 - s) * 2.0 * std::cos(0.5 * kPi * (1.0 - s)) *
                         std::exp(-(1.0 - s) * std::log(2.0 * kPi) - s * std::log(4.0 * L));
  return -factor * sum;
}

namespace detail {

namespace {

constexpr int kMaxBernoulli = 80;

std::array<double, kMaxBernoulli + 1> make_bernoulli_table() {
  // sum_{k=0}^{n} C(n+1, k) B_k = 0
  std::array<mpq_class, kMaxBernoulli + 1> exact;
  exact[0] = 1;
  for (int n = 1; n <= kMaxBernoulli; ++n) {
    mpq_class acc = 0;
    mpz_class binom = 1;  // C(n+1, 0)
    for (int k = 0; k < n; ++k) {
      acc += binom * exact[k];
      binom = binom * (n + 1 - k) / (k + 1);
    }
    exact[n] = -acc / (n + 1);
    exact[n].canonicalize();
  }
  std::array<double, kMaxBernoulli + 1> table{};
  for (int n = 0; n <= kMaxBernoulli; ++n) table[n] = exact[n].get_d();
  return table;
}

}  // namespace

double bernoulli_number(int n) {
  static const std::array<double, kMaxBernoulli + 1> table = make_bernoulli_table();
  if (n < 0 || n > kMaxBernoulli) throw Error(ErrorKind::InvalidInput, "Bernoulli index out of range");
  return table[n];
}

Complex bernoulli_polynomial(int n, Complex x) {
  // sum_k C(n,k) B_k x^{n-k}, Horner in x
  Complex acc = 0.0;
  double binom = 1.0;  // C(n, k) for k = 0
  std::vector<double> coeff(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    coeff[k] = binom * bernoulli_number(k);
    binom = binom * (n - k) / (k + 1);
  }
  for (int k = 0; k <= n; ++k) acc = acc * x + coeff[k];
  return acc;
}

std::vector<Complex> gamma_ratio_expansion(Complex a, int count) {
  // log of the ratio: (2a-1) log z + sum_j c_j z^{-2j},
  // c_j = -2 B_{2j+1}(a) / (2j (2j+1)); the odd powers cancel since b = 1 - a.
  std::vector<Complex> c(static_cast<std::size_t>(count));
  for (int j = 1; j < count; ++j) {
    c[j] = -2.0 * bernoulli_polynomial(2 * j + 1, a) / (2.0 * j * (2.0 * j + 1.0));
  }
  std::vector<Complex> e(static_cast<std::size_t>(count));
  e[0] = 1.0;
  for (int n = 1; n < count; ++n) {
    Complex acc = 0.0;
    for (int j = 1; j <= n; ++j) acc += static_cast<double>(j) * c[j] * e[n - j];
    e[n] = acc / static_cast<double>(n);
  }
  return e;
}

Complex power_tail_sum(Complex sigma, std::uint64_t first) {
  if (sigma.real() <= 1.0) throw Error(ErrorKind::InvalidInput, "power_tail_sum needs Re sigma > 1");
  if (first == 0) throw Error(ErrorKind::InvalidInput, "power_tail_sum starts at m >= 1");
  // Explicit terms until the Euler-Maclaurin corrections shrink geometrically.
  const auto start = std::max<std::uint64_t>(first, static_cast<std::uint64_t>(std::abs(sigma)) + 30);
  Complex sum = 0.0;
  for (std::uint64_t m = first; m < start; ++m) {
    sum += std::exp(-sigma * std::log(static_cast<double>(m)));
  }
  const double N = static_cast<double>(start);
  const double log_n = std::log(N);
  const Complex n_pow = std::exp(-sigma * log_n);  // N^-sigma
  Complex em = N * n_pow / (sigma - 1.0) + 0.5 * n_pow;
  // + sum_p B_{2p}/(2p)! (sigma)_{2p-1} N^{-sigma-2p+1}
  Complex rising = sigma;  // (sigma)_1
  double factorial = 2.0;  // (2p)!
  double n_power = 1.0 / N;
  for (int p = 1; p <= 12; ++p) {
    const Complex term = bernoulli_number(2 * p) / factorial * rising * n_pow * n_power;
    em += term;
    if (std::abs(term) <= 1e-18 * std::abs(em)) break;
    rising *= (sigma + (2.0 * p - 1.0)) * (sigma + 2.0 * p);
    factorial *= (2.0 * p + 1.0) * (2.0 * p + 2.0);
    n_power /= N * N;
  }
  return sum + em;
}

}  // namespace detail

}  // namespace fibzeta
