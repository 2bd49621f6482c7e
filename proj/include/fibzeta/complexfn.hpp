#pragma once

#include <complex>
#include <cstdint>

namespace fibzeta {

using Complex = std::complex<double>;

// Gamma via the Lanczos approximation (g = 671/128, 14 terms), reflected
// for Re z < 1/2. Relative error about 1e-14 on |Re z| <= 20, |Im z| <= 50.
// Throws PoleAtNonpositiveInteger at z = 0, -1, -2, ...
Complex cgamma(Complex z);

// A logarithm of Gamma(z). The branch is not the principal log-Gamma branch;
// only exp(lgamma) and sums exponentiated afterwards are meaningful.
Complex clgamma(Complex z);

// 1/Gamma(z); entire, exactly zero at nonpositive integers.
Complex crgamma(Complex z);

// Riemann zeta: Cohen-Villegas-Zagier accelerated eta series for
// Re s >= 1/2, functional equation otherwise. Throws PoleAtOne at s = 1.
Complex czeta(Complex s);

// sin(pi z) and a logarithm of it, with the real part reduced mod 2 first so
// that zeros at the integers are exact.
Complex sin_pi(Complex z);
Complex log_sin_pi(Complex z);

// exp(z) - 1 without cancellation; Im z is reduced mod 2 pi.
Complex cexpm1(Complex z);

// Streams C(-s, k) = (-s)(-s-1)...(-s-k+1)/k! using
// C(-s, k+1) = C(-s, k) (-s-k)/(k+1).
class BinomialStream {
 public:
  explicit BinomialStream(Complex s) : s_(s) {}

  Complex s() const { return s_; }
  std::uint64_t index() const { return k_; }
  Complex value() const { return current_; }

  // Advances to k + 1 and returns C(-s, k + 1).
  Complex next() {
    current_ *= (-s_ - static_cast<double>(k_)) / static_cast<double>(k_ + 1);
    ++k_;
    return current_;
  }

 private:
  Complex s_;
  std::uint64_t k_ = 0;
  Complex current_{1.0, 0.0};
};

}  // namespace fibzeta
