#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fibzeta/complexfn.hpp"
#include "fibzeta/error.hpp"
#include "oracles.hpp"

using namespace fibzeta;
using oracle::rel_err;

namespace {

constexpr double kPi = std::numbers::pi;

template <class F>
std::optional<ErrorKind> kind_thrown(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

bool near_nonpositive_integer(Complex z, double d) {
  return z.real() < 0.5 && std::abs(z - std::round(z.real())) < d;
}

}  // namespace

TEST_CASE("gamma at classical points") {
  CHECK(rel_err(cgamma(0.5), std::sqrt(kPi)) < 1e-14);
  CHECK(rel_err(cgamma(5.0), 24.0) < 1e-14);
  CHECK(rel_err(cgamma(1.0), 1.0) < 1e-14);
  CHECK(rel_err(cgamma(-0.5), -2.0 * std::sqrt(kPi)) < 1e-14);
  CHECK(rel_err(cgamma({1.0, 1.0}), {0.49801566811835604, -0.15494982830181069}) < 1e-13);
  CHECK(rel_err(cgamma({2.0, 1.0}), Complex{1.0, 1.0} * cgamma({1.0, 1.0})) < 1e-14);
  for (double x = 0.1; x < 30.0; x += 0.37) CHECK(rel_err(cgamma(x), std::tgamma(x)) < 1e-13);
}

TEST_CASE("gamma poles") {
  for (double n : {0.0, -1.0, -2.0, -7.0}) {
    CHECK(kind_thrown([&] { cgamma(n); }) == ErrorKind::PoleAtNonpositiveInteger);
    CHECK(kind_thrown([&] { clgamma(n); }) == ErrorKind::PoleAtNonpositiveInteger);
    CHECK(crgamma(n) == Complex{0.0, 0.0});
  }
  CHECK(std::abs(crgamma(-3.0 + 1e-9)) < 1e-8);
}

TEST_CASE("gamma matches the Stirling oracle on the test box") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> re(-20.0, 20.0);
  std::uniform_real_distribution<double> im(-50.0, 50.0);
  double worst = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const Complex z{re(rng), im(rng)};
    if (near_nonpositive_integer(z, 1e-3)) continue;
    const Complex want = oracle::gamma(z);
    worst = std::max(worst, std::abs(cgamma(z) - want) / std::abs(want));
    CHECK(std::abs(std::exp(clgamma(z)) - cgamma(z)) / std::abs(cgamma(z)) < 1e-11);
    CHECK(std::abs(crgamma(z) * cgamma(z) - 1.0) < 1e-12);
  }
  MESSAGE("worst relative Gamma error " << worst);
  CHECK(worst < 1e-12);
}

TEST_CASE("gamma reflection and recurrence on random samples") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> re(-20.0, 20.0);
  std::uniform_real_distribution<double> im(-10.0, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const Complex z{re(rng), im(rng)};
    if (near_nonpositive_integer(z, 1e-2) || near_nonpositive_integer(1.0 - z, 1e-2)) continue;
    const Complex reflection = cgamma(z) * cgamma(1.0 - z) * sin_pi(z) / kPi;
    CHECK(std::abs(reflection - 1.0) < 1e-10);
    const Complex up = cgamma(z + 1.0);
    CHECK(std::abs(up - z * cgamma(z)) / std::abs(up) < 1e-12);
  }
}

TEST_CASE("zeta at classical points") {
  CHECK(rel_err(czeta(2.0), kPi * kPi / 6.0) < 1e-14);
  CHECK(rel_err(czeta(-1.0), -1.0 / 12.0) < 1e-14);
  CHECK(rel_err(czeta(0.0), -0.5) < 1e-14);
  CHECK(std::abs(czeta(-2.0)) < 1e-15);
  CHECK(std::abs(czeta({0.5, 14.134725})) < 1e-4);
  CHECK(std::abs(czeta({0.5, 14.134725141734693})) < 1e-12);
  CHECK(kind_thrown([] { czeta(1.0); }) == ErrorKind::PoleAtOne);
  // removable points of the eta factor 1 - 2^{1-s}
  const Complex removable{1.0, 2.0 * kPi / std::log(2.0)};
  CHECK(rel_err(czeta(removable), oracle::zeta(removable)) < 1e-11);
  CHECK(rel_err(czeta(removable + Complex{1e-7, 0}), oracle::zeta(removable + Complex{1e-7, 0})) < 1e-11);
}

TEST_CASE("zeta matches the Euler-Maclaurin oracle") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> re(-0.9, 6.0);
  std::uniform_real_distribution<double> im(-50.0, 50.0);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const Complex s{re(rng), im(rng)};
    if (std::abs(s - 1.0) < 1e-2) continue;
    const double e = std::abs(czeta(s) - oracle::zeta(s)) / std::abs(oracle::zeta(s));
    worst = std::max(worst, e);
  }
  MESSAGE("worst relative zeta error " << worst);
  CHECK(worst < 1e-12);
}

TEST_CASE("zeta functional equation on a sample grid") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> re(-6.0, 7.0);
  std::uniform_real_distribution<double> im(-30.0, 30.0);
  for (int i = 0; i < 400; ++i) {
    const Complex s{re(rng), im(rng)};
    if (std::abs(s - 1.0) < 0.05 || std::abs(s) < 0.05) continue;
    if (near_nonpositive_integer(s / 2.0, 1e-3) || near_nonpositive_integer((1.0 - s) / 2.0, 1e-3)) continue;
    // pi^{-s/2} Gamma(s/2) zeta(s) is symmetric under s -> 1 - s
    const Complex left = std::exp(-0.5 * s * std::log(kPi)) * cgamma(0.5 * s) * czeta(s);
    const Complex right = std::exp(-0.5 * (1.0 - s) * std::log(kPi)) * cgamma(0.5 * (1.0 - s)) * czeta(1.0 - s);
    CHECK(std::abs(left - right) / std::max(std::abs(left), 1e-300) < 1e-10);
  }
}

TEST_CASE("conjugate symmetry") {
  for (Complex z : {Complex{0.3, 4.0}, Complex{-3.7, 1.2}, Complex{12.0, -40.0}}) {
    CHECK(std::abs(cgamma(std::conj(z)) - std::conj(cgamma(z))) <= 1e-15 * std::abs(cgamma(z)));
    CHECK(std::abs(czeta(std::conj(z)) - std::conj(czeta(z))) <= 1e-15 * std::abs(czeta(z)) + 1e-300);
  }
}

TEST_CASE("sin_pi and expm1 helpers") {
  CHECK(sin_pi(3.0) == Complex{0.0, 0.0});
  CHECK(sin_pi(-4.0) == Complex{0.0, 0.0});
  CHECK(std::abs(sin_pi(0.5) - 1.0) < 1e-16);
  CHECK(std::abs(sin_pi({0.25, 1.0}) - std::sin(kPi * Complex{0.25, 1.0})) < 1e-14);
  CHECK(std::abs(std::exp(log_sin_pi({0.3, 2.0})) - sin_pi({0.3, 2.0})) < 1e-13 * std::abs(sin_pi({0.3, 2.0})));
  const Complex small{1e-12, 3e-13};
  CHECK(rel_err(cexpm1(small), small + 0.5 * small * small) < 1e-15);
  CHECK(rel_err(cexpm1({2.0, 1.0}), std::exp(Complex{2.0, 1.0}) - 1.0) < 1e-15);
  CHECK(std::abs(cexpm1({0.0, 2.0 * kPi * 1000.0})) < 1e-12);
}

TEST_CASE("binomial stream") {
  BinomialStream any({0.3, -1.7});
  CHECK(any.value() == Complex{1.0, 0.0});
  CHECK(any.index() == 0);
  CHECK(any.next() == -Complex{0.3, -1.7});
  CHECK(any.index() == 1);

  BinomialStream two(2.0);
  two.next();
  CHECK(two.next() == Complex{3.0, 0.0});

  // C(-s, k) against the explicit product, and at most polynomial growth of degree ceil|s|
  for (Complex s : {Complex{2.5, 0.0}, Complex{-3.2, 4.0}, Complex{0.7, -8.0}}) {
    BinomialStream stream(s);
    Complex product = 1.0;
    const double degree = std::ceil(std::abs(s));
    for (int k = 1; k <= 1000; ++k) {
      product *= (-s - static_cast<double>(k - 1)) / static_cast<double>(k);
      const Complex c = stream.next();
      CHECK(std::abs(c - product) <= 1e-13 * std::abs(product));
      CHECK(std::abs(c) <= 10.0 * std::pow(k + 1.0, degree));
    }
  }
}
