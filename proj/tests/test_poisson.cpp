#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fibzeta/poisson.hpp"
#include "oracles.hpp"

using namespace fibzeta;
using oracle::rel_err;

namespace {

template <class F>
std::optional<ErrorKind> kind_thrown(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("odd Poisson series") {
  const auto f5 = make_field(5);
  const auto z = z_odd_poisson(f5, 2.0);
  CHECK(z.method == Method::poisson);
  CHECK(std::abs(z.value - z_odd_binomial(f5, 2.0).value) < 1e-10);
  CHECK(std::abs(z.value - 1.2969300248114332) < 1e-12);
  CHECK(std::abs(z_odd_poisson(f5, -3.0).value) < 1e-10);
  const auto f10 = make_field(10);
  const Complex s{-0.5, 2.0};
  CHECK(std::abs(z_odd_poisson(f10, s).value - z_odd_binomial(f10, s).value) < 1e-8);
}

TEST_CASE("even Poisson continuation") {
  const auto f5 = make_field(5);
  const auto at_minus_one = z_even_poisson(f5, -1.0);
  CHECK(std::abs(at_minus_one.value - (-1.0)) < 1e-10);
  CHECK(std::abs(z_even_poisson(f5, 0.1).value - z_even_binomial(f5, 0.1).value) < 1e-8);
  const auto f10 = make_field(10);
  CHECK(std::abs(z_even_poisson(f10, -2.5).value - z_even_binomial(f10, -2.5).value) < 1e-8);
  CHECK(std::abs(z_even_poisson(f5, 2.0).value - oracle::dirichlet_sum(*oracle::fundamental_unit_search(5), 2.0, 2, 2, 200)) < 1e-14);
}

TEST_CASE("region selection") {
  const RegionBoundaries b;
  CHECK(select_region({0.5, 3.0}, b) == Region::direct_series);
  CHECK(select_region({0.49, 0.0}, b) == Region::mordell_strip);
  CHECK(select_region({-0.2, 9.0}, b) == Region::mordell_strip);
  CHECK(select_region({-0.25, 0.0}, b) == Region::left_half);
  CHECK(select_region({-7.0, -2.0}, b) == Region::left_half);
  CHECK(region_name(Region::mordell_strip) == "mordell_strip");

  const auto f5 = make_field(5);
  CHECK(kind_thrown([&] { z_even_poisson_in_region(f5, {1.05, 0.0}, Region::mordell_strip); }) ==
        ErrorKind::NearOneSingularity);
  CHECK(kind_thrown([&] { z_even_poisson_in_region(f5, {2.5, 0.0}, Region::mordell_strip); }) ==
        ErrorKind::OutOfRegion);
  CHECK(kind_thrown([&] { z_even_poisson_in_region(f5, {-0.1, 1.0}, Region::left_half); }) ==
        ErrorKind::TooSlowConvergence);
  CHECK(kind_thrown([&] { z_even_poisson_in_region(f5, {0.3, 1.0}, Region::left_half); }) ==
        ErrorKind::OutOfRegion);
  CHECK(kind_thrown([&] { z_even_poisson_in_region(f5, {-0.3, 1.0}, Region::direct_series); }) ==
        ErrorKind::OutOfRegion);
  CHECK(kind_thrown([] { z_odd_poisson(make_field(3), 2.0); }) == ErrorKind::NormPlusOne);
  CHECK(kind_thrown([] { z_even_poisson(make_field(7), 2.0); }) == ErrorKind::NormPlusOne);
  CHECK(kind_thrown([&] { z_odd_poisson(f5, {-2.0, 1e-4}); }) == ErrorKind::PoleProximity);
}

TEST_CASE("region overlaps") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> im(-8.0, 8.0);
  for (std::int64_t D : {2, 5, 10, 13}) {
    const auto field = make_field(D);
    std::uniform_real_distribution<double> band(-0.5, -0.25);
    for (int i = 0; i < 20; ++i) {
      const Complex s{band(rng), im(rng)};
      if (nearest_pole(field, s, PoleSet::split).distance < 0.05) continue;
      CAPTURE(D);
      CAPTURE(s);
      const auto strip = z_even_poisson_in_region(field, s, Region::mordell_strip);
      const auto left = z_even_poisson_in_region(field, s, Region::left_half);
      CHECK(std::abs(strip.value - left.value) < 1e-8);
    }
    std::uniform_real_distribution<double> right(0.5, 1.5);
    for (int i = 0; i < 20; ++i) {
      const Complex s{right(rng), im(rng)};
      if (std::abs(s - 1.0) < 0.1) continue;
      CAPTURE(D);
      CAPTURE(s);
      const auto strip = z_even_poisson_in_region(field, s, Region::mordell_strip);
      const auto direct = z_even_poisson_in_region(field, s, Region::direct_series);
      CHECK(std::abs(strip.value - direct.value) < 1e-8);
    }
  }
}

TEST_CASE("Fourier coefficient of the odd summand") {
  const auto f5 = make_field(5);
  const double L = f5.log_eps();
  for (std::int64_t D : {2, 5, 13}) {
    const auto field = make_field(D);
    CHECK(std::abs(fourier_coefficient_odd(field, 2.0, 0) - 1.0 / (2.0 * field.log_eps())) < 1e-14);
  }
  CHECK(std::abs(fourier_coefficient_odd(f5, 1.0, 0) - kPi / (2.0 * L)) < 1e-13);
  for (int m : {1, 2, -1}) {
    for (double s : {1.0, 0.6, 2.5}) {
      CAPTURE(m);
      CAPTURE(s);
      const Complex got = fourier_coefficient_odd(f5, s, m);
      CHECK(std::abs(got - oracle::fourier_transform_odd(L, s, m)) < 1e-10);
      CHECK(std::abs(got.imag()) < 1e-15);
    }
  }
  const Complex s{1.3, 0.7};
  for (int m = 1; m <= 3; ++m) {
    const auto plus = fourier_term_odd(f5, s, m);
    const auto minus = fourier_term_odd(f5, s, -m);
    CHECK(plus.m == m);
    CHECK(std::abs(plus.value - minus.value) <= 1e-14 * std::abs(plus.value));
    const auto real_s = fourier_term_odd(f5, 1.3, m).value;
    CHECK(std::abs(real_s.imag()) <= 1e-14 * std::abs(real_s));
  }
  CHECK(kind_thrown([&] { fourier_coefficient_odd(f5, -2.0, 0); }) == ErrorKind::PoleProximity);
}

TEST_CASE("closed form of the regularized one-sided integral") {
  const auto f5 = make_field(5);
  const double L5 = f5.log_eps();
  const Complex plus = mordell_integral_m(f5, 1.5, 1);
  CHECK(std::abs(plus - oracle::mordell_integral(L5, 1.5, 1)) < 1e-8);
  CHECK(std::abs(mordell_integral_m(f5, 1.5, -1) - std::conj(plus)) < 1e-14);
  CHECK(std::abs(mordell_integral_m(f5, 1.5, -1) - oracle::mordell_integral(L5, 1.5, -1)) < 1e-8);
  const auto f10 = make_field(10);
  CHECK(std::abs(mordell_integral_m(f10, 2.5, 3) - oracle::mordell_integral(f10.log_eps(), 2.5, 3)) < 1e-7);
  CHECK(std::abs(mordell_integral_m(make_field(2), 1.2, 2) - oracle::mordell_integral(make_field(2).log_eps(), 1.2, 2)) <
        1e-8);
  CHECK(kind_thrown([&] { mordell_integral_m(f5, 1.5, 0); }) == ErrorKind::InvalidInput);
  CHECK(kind_thrown([&] { mordell_integral_m(f5, 2.0, 1); }) == ErrorKind::PoleProximity);
}

TEST_CASE("power contributions cancel the zeta term") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> re(-0.95, -0.05);
  std::uniform_real_distribution<double> im(-6.0, 6.0);
  for (std::int64_t D : {2, 5, 10, 13}) {
    const auto field = make_field(D);
    const double L = field.log_eps();
    for (int i = 0; i < 10; ++i) {
      const Complex s{re(rng), im(rng)};
      const Complex want = -std::exp(0.5 * s * std::log(static_cast<double>(field.q()))) * oracle::zeta(s) *
                           std::exp(-s * std::log(4.0 * L));
      const Complex got = mordell_power_contribution(field, s);
      CAPTURE(s);
      CHECK(std::abs(got - want) <= 1e-9 * std::max(1.0, std::abs(want)));
    }
  }
  CHECK(kind_thrown([] { mordell_power_contribution(make_field(5), 0.2); }) == ErrorKind::OutOfRegion);
}

TEST_CASE("trivial zeros of the odd part") {
  const auto f5 = make_field(5);
  for (std::int64_t D : {2, 5, 10, 13}) {
    const auto field = make_field(D);
    for (int j = 1; j <= 5; ++j) {
      const double s = -(2.0 * j - 1.0);
      CHECK(std::abs(z_odd_poisson(field, s).value) < 1e-10);
    }
  }
  for (int j = 1; j <= 5; ++j) {
    const double s = -(2.0 * j - 1.0);
    const Complex even = z_even_poisson(f5, s).value;
    CHECK(std::abs(even) > 1e-3);
    CHECK(std::abs(even - z_even_binomial(f5, s).value) < 1e-8 * std::max(1.0, std::abs(even)));
  }
}

TEST_CASE("conjugate symmetry") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> re(-4.0, 3.0);
  std::uniform_real_distribution<double> im(0.1, 8.0);
  const auto f13 = make_field(13);
  for (int i = 0; i < 30; ++i) {
    const Complex s{re(rng), im(rng)};
    if (nearest_pole(f13, s, PoleSet::split).distance < 0.05 || std::abs(s - 1.0) < 0.2) continue;
    const Complex odd = z_odd_poisson(f13, s).value;
    const Complex even = z_even_poisson(f13, s).value;
    CHECK(std::abs(z_odd_poisson(f13, std::conj(s)).value - std::conj(odd)) <= 1e-12 * std::max(1.0, std::abs(odd)));
    CHECK(std::abs(z_even_poisson(f13, std::conj(s)).value - std::conj(even)) <=
          1e-12 * std::max(1.0, std::abs(even)));
  }
}

TEST_CASE("Bernoulli numbers and polynomials") {
  using detail::bernoulli_number;
  using detail::bernoulli_polynomial;
  CHECK(bernoulli_number(0) == 1.0);
  CHECK(bernoulli_number(1) == -0.5);
  CHECK(bernoulli_number(3) == 0.0);
  for (int p = 1; p <= 12; ++p) {
    CHECK(bernoulli_number(2 * p) == doctest::Approx(static_cast<double>(oracle::kBernoulliEven[p - 1])).epsilon(1e-15));
  }
  CHECK(bernoulli_number(60) == doctest::Approx(-2.1399949257225334e34).epsilon(1e-14));
  CHECK(kind_thrown([] { bernoulli_number(81); }) == ErrorKind::InvalidInput);
  const Complex x{0.3, -1.7};
  CHECK(std::abs(bernoulli_polynomial(2, x) - (x * x - x + 1.0 / 6)) < 1e-14);
  CHECK(std::abs(bernoulli_polynomial(3, x) - (x * x * x - 1.5 * x * x + 0.5 * x)) < 1e-13);
  // B_n(1 - x) = (-1)^n B_n(x)
  for (int n = 1; n <= 15; ++n) {
    const Complex lhs = bernoulli_polynomial(n, 1.0 - x);
    const Complex rhs = (n % 2 == 0 ? 1.0 : -1.0) * bernoulli_polynomial(n, x);
    CHECK(std::abs(lhs - rhs) <= 1e-11 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("power tail sums") {
  using detail::power_tail_sum;
  CHECK(std::abs(power_tail_sum(2.0, 1) - kPi * kPi / 6) < 1e-14);
  CHECK(std::abs(power_tail_sum(4.0, 1) - std::pow(kPi, 4) / 90) < 1e-14);
  for (Complex sigma : {Complex{1.5, 2.0}, Complex{3.2, -7.0}, Complex{1.1, 0.0}}) {
    for (std::uint64_t first : {1u, 7u, 40u}) {
      Complex head = 0.0;
      for (std::uint64_t m = 1; m < first; ++m) head += std::exp(-sigma * std::log(static_cast<double>(m)));
      const Complex want = oracle::zeta(sigma) - head;
      CAPTURE(sigma);
      CAPTURE(first);
      CHECK(std::abs(power_tail_sum(sigma, first) - want) <= 1e-12 * std::max(1.0, std::abs(want)));
    }
  }
  CHECK(kind_thrown([] { power_tail_sum(1.0, 1); }) == ErrorKind::InvalidInput);
  CHECK(kind_thrown([] { power_tail_sum(2.0, 0); }) == ErrorKind::InvalidInput);
}

TEST_CASE("large-argument expansion of the Gamma ratio") {
  const auto coeffs = detail::gamma_ratio_expansion({0.3, 0.8}, 18);
  CHECK(coeffs[0] == Complex{1.0, 0.0});
  for (Complex a : {Complex{0.3, 0.8}, Complex{-1.2, 2.0}, Complex{0.5, 0.0}}) {
    const auto e = detail::gamma_ratio_expansion(a, 18);
    for (Complex z : {Complex{2.0, 40.0}, Complex{0.0, -60.0}, Complex{30.0, 10.0}}) {
      Complex series = 0.0;
      Complex zpow = 1.0;
      for (const Complex& c : e) {
        series += c * zpow;
        zpow /= z * z;
      }
      const Complex got = std::exp((2.0 * a - 1.0) * std::log(z)) * series;
      const Complex want = oracle::gamma(a + z) / oracle::gamma(1.0 - a + z);
      CAPTURE(a);
      CAPTURE(z);
      CHECK(std::abs(got - want) <= 1e-12 * std::abs(want));
    }
  }
  // a = 1/2: the ratio is identically 1
  const auto half = detail::gamma_ratio_expansion(0.5, 10);
  for (std::size_t n = 1; n < half.size(); ++n) CHECK(std::abs(half[n]) < 1e-15);
}
