#include "fibzeta/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

namespace fibzeta {

std::string_view method_name(Method method) {
  switch (method) {
    case Method::direct: return "direct";
    case Method::binomial: return "binomial";
    case Method::poisson: return "poisson";
    case Method::shifted_convolution: return "shifted_convolution";
  }
  return "unknown";
}

std::string_view parity_name(Parity parity) {
  switch (parity) {
    case Parity::odd: return "odd";
    case Parity::even: return "even";
    case Parity::combined: return "combined";
  }
  return "unknown";
}

Complex lattice_location(const QuadraticField& field, int k, std::int64_t m) {
  return {-2.0 * k + 0.0, std::numbers::pi * static_cast<double>(m) / field.log_eps()};
}

PoleSet pole_set_for(const QuadraticField& field, Parity parity) {
  if (parity != Parity::combined) return PoleSet::split;
  return field.norm_eps() == -1 ? PoleSet::combined : PoleSet::norm_plus_one;
}

bool in_pole_set(PoleSet set, int k, std::int64_t m) {
  switch (set) {
    case PoleSet::split: return k >= 0;
    case PoleSet::combined: return k >= 0 && (m + k) % 2 == 0;
    case PoleSet::norm_plus_one: return k >= 0 && m % 2 == 0;
    case PoleSet::none: return false;
  }
  return false;
}

NearestPole nearest_pole(const QuadraticField& field, Complex s, PoleSet set) {
  NearestPole best;
  if (set == PoleSet::none) return best;
  const double L = field.log_eps();
  const auto k0 = static_cast<int>(std::lround(-s.real() / 2.0));
  const auto m0 = static_cast<std::int64_t>(std::llround(s.imag() * L / std::numbers::pi));
  for (int k = std::max(0, k0 - 1); k <= std::max(0, k0 + 1); ++k) {
    for (std::int64_t m = m0 - 2; m <= m0 + 2; ++m) {
      if (!in_pole_set(set, k, m)) continue;
      const Complex location = lattice_location(field, k, m);
      const double distance = std::abs(s - location);
      if (distance < best.distance) best = {{k, m, location}, distance};
    }
  }
  return best;
}

namespace {

std::string describe_pole(const NearestPole& pole, double guard) {
  std::ostringstream out;
  out.precision(6);
  out << "s is " << pole.distance << " from the pole (k=" << pole.point.k << ", m=" << pole.point.m
      << ") at " << pole.point.location.real() << (pole.point.location.imag() < 0 ? "" : "+")
      << pole.point.location.imag() << "i (guard " << guard << ")";
  return out.str();
}

}  // namespace

PoleProximityError::PoleProximityError(const NearestPole& pole, double guard)
    : Error(ErrorKind::PoleProximity, describe_pole(pole, guard)), pole_(pole) {}

NearestPole check_pole_guard(const QuadraticField& field, Complex s, PoleSet set,
                             const EvalOptions& options) {
  NearestPole pole = nearest_pole(field, s, set);
  if (pole.distance <= options.pole_guard) throw PoleProximityError(pole, options.pole_guard);
  return pole;
}

namespace {

void require_norm(const QuadraticField& field, int norm, std::string_view what) {
  if (field.norm_eps() == norm) return;
  const ErrorKind kind = norm == -1 ? ErrorKind::NormPlusOne : ErrorKind::NormMinusOne;
  throw Error(kind, std::string(what) + " needs N(eps) = " + std::to_string(norm) +
                        "; D = " + std::to_string(field.D()) + " has N(eps) = " +
                        std::to_string(field.norm_eps()));
}

// 1/(e^x - 1), computed from the side where |e^x| <= 1.
Complex inv_expm1(Complex x) {
  if (x.real() >= 0.0) return std::exp(-x) / (-cexpm1(-x));
  return 1.0 / cexpm1(x);
}

// 1/(e^x + 1)
Complex inv_exp_plus_one(Complex x) {
  if (x.real() >= 0.0) {
    const Complex w = std::exp(-x);
    return w / (1.0 + w);
  }
  return 1.0 / (std::exp(x) + 1.0);
}

// Shared driver: sum_k C(-s,k) term(k) with the certified stop rule. After
// k >= |s| + 5 consecutive terms shrink by at most
//   r = max(1, (|s|+k)/(k+1)) eps^-2 (1+x)/(1-x),   x = eps^{-c(Re s + 2k)},
// where c is the exponent scale of the denominator (2 for eps^{2s+4k} - 1).
template <class Term>
ZetaEvaluation binomial_series(const QuadraticField& field, Complex s, Parity parity,
                               double denominator_scale, const EvalOptions& options, Term term) {
  const double L = field.log_eps();
  const double abs_s = std::abs(s);
  const double eps_m2 = std::exp(-2.0 * L);

  BinomialStream binom(s);
  Complex sum = 0.0;
  double tail = std::numeric_limits<double>::infinity();
  std::size_t k = 0;
  for (;; ++k) {
    if (k >= options.max_terms) {
      throw Error(ErrorKind::TooSlowConvergence,
                  "binomial series did not converge in " + std::to_string(k) + " terms");
    }
    const Complex coeff = k == 0 ? binom.value() : binom.next();
    const Complex t = coeff * term(k);
    sum += t;

    const double kd = static_cast<double>(k);
    if (kd < abs_s + 5.0) continue;
    const double x = std::exp(-denominator_scale * L * (s.real() + 2.0 * kd));
    if (x >= 0.5) continue;
    const double r = std::max(1.0, (abs_s + kd) / (kd + 1.0)) * eps_m2 * (1.0 + x) / (1.0 - x);
    if (r >= 1.0) continue;
    tail = std::abs(t) * r / (1.0 - r);
    if (tail <= options.tol * std::abs(sum) || tail <= 1e-300) break;
  }

  const Complex prefactor = std::exp(0.5 * s * std::log(static_cast<double>(field.q())));
  ZetaEvaluation result;
  result.value = prefactor * sum;
  result.method = Method::binomial;
  result.parity = parity;
  result.terms_used = k + 1;
  result.tail_bound = std::abs(prefactor) * tail;
  return result;
}

}  // namespace

ZetaEvaluation z_odd_binomial(const QuadraticField& field, Complex s, const EvalOptions& options) {
  require_norm(field, -1, "z_odd_binomial");
  const NearestPole pole = check_pole_guard(field, s, PoleSet::split, options);
  const double L = field.log_eps();
  // eps^{s+2k} / (eps^{2s+4k} - 1)
  auto term = [&](std::size_t k) {
    const Complex e = (s + 2.0 * static_cast<double>(k)) * L;
    if (e.real() >= 0.0) return std::exp(-e) / (-cexpm1(-2.0 * e));
    return std::exp(e) / cexpm1(2.0 * e);
  };
  ZetaEvaluation result = binomial_series(field, s, Parity::odd, 2.0, options, term);
  result.nearest_pole_distance = pole.distance;
  return result;
}

ZetaEvaluation z_even_binomial(const QuadraticField& field, Complex s, const EvalOptions& options) {
  require_norm(field, -1, "z_even_binomial");
  const NearestPole pole = check_pole_guard(field, s, PoleSet::split, options);
  const double L = field.log_eps();
  // (-1)^k / (eps^{2s+4k} - 1)
  auto term = [&](std::size_t k) {
    const Complex e = 2.0 * (s + 2.0 * static_cast<double>(k)) * L;
    const Complex value = inv_expm1(e);
    return k % 2 == 0 ? value : -value;
  };
  ZetaEvaluation result = binomial_series(field, s, Parity::even, 2.0, options, term);
  result.nearest_pole_distance = pole.distance;
  return result;
}

ZetaEvaluation z_combined_binomial(const QuadraticField& field, Complex s,
                                   const EvalOptions& options) {
  if (field.norm_eps() == 1) return z_norm_plus_one(field, s, options);
  const NearestPole pole = check_pole_guard(field, s, PoleSet::combined, options);
  const double L = field.log_eps();
  // 1 / (eps^{s+2k} + (-1)^{k+1})
  auto term = [&](std::size_t k) {
    const Complex e = (s + 2.0 * static_cast<double>(k)) * L;
    return k % 2 == 0 ? inv_expm1(e) : inv_exp_plus_one(e);
  };
  ZetaEvaluation result = binomial_series(field, s, Parity::combined, 1.0, options, term);
  result.nearest_pole_distance = pole.distance;
  return result;
}

ZetaEvaluation z_norm_plus_one(const QuadraticField& field, Complex s, const EvalOptions& options) {
  require_norm(field, 1, "z_norm_plus_one");
  const NearestPole pole = check_pole_guard(field, s, PoleSet::norm_plus_one, options);
  const double L = field.log_eps();
  // (-1)^k / (eps^{s+2k} - 1)
  auto term = [&](std::size_t k) {
    const Complex value = inv_expm1((s + 2.0 * static_cast<double>(k)) * L);
    return k % 2 == 0 ? value : -value;
  };
  ZetaEvaluation result = binomial_series(field, s, Parity::combined, 1.0, options, term);
  result.nearest_pole_distance = pole.distance;
  return result;
}

namespace {

double log_of(const BigInt& x) {
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, x.get_mpz_t());
  return std::log(mantissa) + static_cast<double>(exponent) * std::numbers::ln2;
}

struct IndexPattern {
  std::uint64_t first;
  std::uint64_t step;
};

IndexPattern pattern_for(Parity parity) {
  switch (parity) {
    case Parity::odd: return {1, 2};
    case Parity::even: return {2, 2};
    case Parity::combined: return {1, 1};
  }
  return {1, 1};
}

}  // namespace

ZetaEvaluation z_direct(const QuadraticField& field, Complex s, Parity parity, std::size_t n_max) {
  if (s.real() <= 0.0) {
    throw Error(ErrorKind::OutOfRegion, "direct Dirichlet sum needs Re s > 0");
  }
  const IndexPattern pattern = pattern_for(parity);
  const std::uint64_t last_index = pattern.first + pattern.step * (n_max == 0 ? 0 : n_max - 1);
  const std::vector<SequenceTerm> terms = sequence(field, last_index + pattern.step);

  Complex sum = 0.0;
  for (std::size_t n = 0; n < n_max; ++n) {
    const BigInt& f = terms[pattern.first + pattern.step * n].fib;
    sum += std::exp(-s * log_of(f));
  }

  // Tail: F(j+step)/F(j) >= eps^step (1 - eps^{-2(j+step)}) / (1 + eps^{-2j}).
  const std::uint64_t next = n_max == 0 ? pattern.first : last_index + pattern.step;
  const double L = field.log_eps();
  const double j = static_cast<double>(next);
  const double step = static_cast<double>(pattern.step);
  const double growth_log = step * L + std::log1p(-std::exp(-2.0 * (j + step) * L)) -
                            std::log1p(std::exp(-2.0 * j * L));
  const double rho = std::exp(-s.real() * growth_log);
  const double next_term = std::exp(-s.real() * log_of(terms[next].fib));

  ZetaEvaluation result;
  result.value = sum;
  result.method = Method::direct;
  result.parity = parity;
  result.terms_used = n_max;
  result.tail_bound = (growth_log > 0.0 && rho < 1.0) ? next_term / (1.0 - rho)
                                                      : std::numeric_limits<double>::infinity();
  return result;
}

std::size_t direct_terms_for(const QuadraticField& field, Complex s, Parity parity, double tol) {
  if (s.real() <= 0.0) throw Error(ErrorKind::OutOfRegion, "direct Dirichlet sum needs Re s > 0");
  // F(n) ~ eps^n / sqrt q, so the tail after index j is about (eps^j/sqrt q)^-sigma / (1 - eps^-step sigma).
  const IndexPattern pattern = pattern_for(parity);
  const double L = field.log_eps();
  const double sigma = s.real();
  const double ratio = 1.0 - std::exp(-static_cast<double>(pattern.step) * sigma * L);
  const double needed = (-std::log(tol * ratio) / sigma + 0.5 * std::log(static_cast<double>(field.q()))) / L;
  const double n = std::ceil(needed / static_cast<double>(pattern.step)) + 3.0;
  return static_cast<std::size_t>(std::clamp(n, 4.0, 1e6));
}

}  // namespace fibzeta
