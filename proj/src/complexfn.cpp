#include "fibzeta/complexfn.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>
#include <string>

#include "fibzeta/error.hpp"

namespace fibzeta {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

bool is_nonpositive_integer(Complex z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && std::floor(z.real()) == z.real();
}

// Lanczos, g = 671/128, Numerical Recipes (3rd ed.) coefficient set.
constexpr std::array<double, 14> kLanczos = {
    57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
    -0.491913816097620199,   .339946499848118887e-4,  .465236289270485756e-4,
    -.983744753048795646e-4, .158088703224912494e-3,  -.210264441724104883e-3,
    .217439618115212643e-3,  -.164318106536763890e-3, .844182239838527433e-4,
    -.261908384015814087e-4, .368991826595316234e-5};

Complex lanczos_lgamma(Complex z) {
  Complex tmp = z + 5.24218750000000000;
  tmp = (z + 0.5) * std::log(tmp) - tmp;
  Complex ser = 0.999999999999997092;
  Complex y = z;
  for (double c : kLanczos) {
    y += 1.0;
    ser += c / y;
  }
  return tmp + std::log(2.5066282746310005 * ser / z);
}

// Eta-series zeta; needs Re s >= 1/2 and 1 - 2^(1-s) away from zero.
Complex zeta_eta_raw(Complex s) {
  const double t = std::abs(s.imag());
  const double rate = std::log(3.0 + std::sqrt(8.0));
  int n = static_cast<int>(std::ceil((kPi * t / 2.0 + std::log1p(2.0 * t) + 40.0) / rate));
  n = std::max(n, 20);

  // d_k = n sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!)
  std::vector<double> d(static_cast<std::size_t>(n) + 1);
  double term = 1.0 / n;
  double acc = term;
  d[0] = n * acc;
  for (int i = 1; i <= n; ++i) {
    term *= 4.0 * (n + i - 1.0) * (n - i + 1.0) / ((2.0 * i) * (2.0 * i - 1.0));
    acc += term;
    d[i] = n * acc;
  }
  const double dn = d[n];

  Complex sum = 0.0;
  for (int k = n - 1; k >= 0; --k) {
    const double weight = 1.0 - d[k] / dn;
    const Complex power = std::exp(-s * std::log(static_cast<double>(k + 1)));
    sum += (k % 2 == 0 ? weight : -weight) * power;
  }
  const Complex denom = -cexpm1((1.0 - s) * std::numbers::ln2);  // 1 - 2^(1-s)
  return sum / denom;
}

Complex zeta_right(Complex s) {
  const Complex denom = -cexpm1((1.0 - s) * std::numbers::ln2);
  if (std::abs(denom) < 0.02 && std::abs(s - 1.0) > 0.5) {
    // Removable 0/0 at s = 1 + 2 pi i k / log 2: average over a circle
    // (zeta is analytic there, so the trapezoid mean is spectrally exact).
    constexpr int kPoints = 64;
    constexpr double kRadius = 0.25;
    Complex mean = 0.0;
    for (int j = 0; j < kPoints; ++j) {
      const Complex w = s + kRadius * std::exp(kI * (2.0 * kPi * j / kPoints));
      mean += zeta_eta_raw(w);
    }
    return mean / static_cast<double>(kPoints);
  }
  return zeta_eta_raw(s);
}

}  // namespace

Complex sin_pi(Complex z) {
  const double n = std::nearbyint(z.real());
  const double r = z.real() - n;
  const double a = kPi * r;
  const double b = kPi * z.imag();
  Complex value{std::sin(a) * std::cosh(b), std::cos(a) * std::sinh(b)};
  return std::fmod(n, 2.0) == 0.0 ? value : -value;
}

Complex log_sin_pi(Complex z) {
  const double n = std::nearbyint(z.real());
  const Complex reduced{z.real() - n, z.imag()};
  const Complex sign_log = (std::fmod(n, 2.0) == 0.0) ? Complex{} : Complex{0.0, kPi};
  if (std::abs(z.imag()) < 20.0) return std::log(sin_pi(reduced)) + sign_log;
  if (z.imag() > 0.0) {
    // sin(pi z) = e^{-i pi z} (e^{2 i pi z} - 1) / (2i)
    const Complex w = std::exp(2.0 * kI * kPi * reduced);
    return -kI * kPi * reduced + std::log((w - 1.0) / (2.0 * kI)) + sign_log;
  }
  const Complex w = std::exp(-2.0 * kI * kPi * reduced);
  return kI * kPi * reduced + std::log((1.0 - w) / (2.0 * kI)) + sign_log;
}

Complex cexpm1(Complex z) {
  const double x = z.real();
  const double y = std::remainder(z.imag(), 2.0 * kPi);
  const double em1 = std::expm1(x);
  const double half = std::sin(0.5 * y);
  return {em1 * std::cos(y) - 2.0 * half * half, std::exp(x) * std::sin(y)};
}

Complex clgamma(Complex z) {
  if (is_nonpositive_integer(z)) {
    throw Error(ErrorKind::PoleAtNonpositiveInteger, "Gamma pole at z = " + std::to_string(z.real()));
  }
  if (z.real() >= 0.5) return lanczos_lgamma(z);
  return std::log(kPi) - log_sin_pi(z) - lanczos_lgamma(1.0 - z);
}

Complex cgamma(Complex z) {
  if (is_nonpositive_integer(z)) {
    throw Error(ErrorKind::PoleAtNonpositiveInteger, "Gamma pole at z = " + std::to_string(z.real()));
  }
  if (z.real() >= 0.5 || std::abs(z.imag()) > 100.0) return std::exp(clgamma(z));
  return kPi / (sin_pi(z) * std::exp(lanczos_lgamma(1.0 - z)));
}

Complex crgamma(Complex z) {
  if (is_nonpositive_integer(z)) return 0.0;
  if (z.real() >= 0.5 || std::abs(z.imag()) > 100.0) return std::exp(-clgamma(z));
  return sin_pi(z) * std::exp(lanczos_lgamma(1.0 - z)) / kPi;
}

Complex czeta(Complex s) {
  if (s == Complex{1.0, 0.0}) throw Error(ErrorKind::PoleAtOne, "zeta has a pole at s = 1");
  if (std::abs(s) < 1e-10) {
    // zeta(0) + zeta'(0) s with zeta'(0) = -log(2 pi)/2
    return -0.5 - 0.5 * std::log(2.0 * kPi) * s;
  }
  if (s.real() >= 0.5) return zeta_right(s);

  const Complex reflected = zeta_right(1.0 - s);
  if (std::abs(s.imag()) <= 60.0) {
    return std::exp(s * std::numbers::ln2 + (s - 1.0) * std::log(kPi)) * sin_pi(0.5 * s) *
           cgamma(1.0 - s) * reflected;
  }
  return std::exp(s * std::numbers::ln2 + (s - 1.0) * std::log(kPi) + log_sin_pi(0.5 * s) +
                  clgamma(1.0 - s)) *
         reflected;
}

}  // namespace fibzeta
