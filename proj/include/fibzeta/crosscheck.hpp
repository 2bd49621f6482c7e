#pragma once

// Independent checks of the continuations: the pole lattice with analytic and
// contour residues, the shifted-convolution (square detection) sums, and the
// exact value of Z_even(-1).

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "fibzeta/continuation.hpp"

namespace fibzeta {

struct PoleSpec {
  int k = 0;
  std::int64_t m = 0;
  Complex location;
  // Split residues; zero for N(eps) = +1 fields, where only the combined one exists.
  Complex residue_odd;
  Complex residue_even;
  Complex residue_combined;
  bool survives_in_combined = false;
};

// Analytic residues at s0 = -2k + pi i m / log eps.
//   odd:  q^{s0/2} C(-s0, k) (-1)^m / (2 log eps)
//   even: q^{s0/2} C(-s0, k) (-1)^k / (2 log eps)
// For N(eps) = +1 the combined function has poles only at even m with residue
//   q^{s0/2} C(-s0, k) (-1)^k / log eps.
PoleSpec pole_spec(const QuadraticField& field, int k, std::int64_t m);

// Points with 0 <= k <= k_max, |m| <= m_max, ordered by k then m. The combined
// list keeps only surviving poles. Split lists need N(eps) = -1.
std::vector<PoleSpec> pole_lattice(const QuadraticField& field, int k_max, std::int64_t m_max,
                                   Parity which);

using ZetaFunction = std::function<Complex(Complex)>;

struct ContourOptions {
  double radius = 1e-3;
  int points = 128;
  // Minimum distance between the circle and any other lattice point of the set.
  double guard = 1e-4;
};

// (1 / 2 pi i) * contour integral of f around s0 by the trapezoid rule.
// Throws ContourThroughPole if the circle passes within guard of, or encloses,
// another point of the pole set.
Complex residue_numeric(const QuadraticField& field, PoleSet set, const ZetaFunction& f, Complex s0,
                        const ContourOptions& contour = {});

// 1/4 sum_{n <= n_max} r1(n) r1(D n -+ ell) n^{-s/2}, summed over squares n = t^2.
// Re s > 0 and N(eps) = -1.
ZetaEvaluation z_odd_shifted_convolution(const QuadraticField& field, Complex s, std::uint64_t n_max);
ZetaEvaluation z_even_shifted_convolution(const QuadraticField& field, Complex s, std::uint64_t n_max);

// Bound on the part of the series beyond n_max (parity odd or even).
double shifted_convolution_tail_bound(const QuadraticField& field, Complex s, std::uint64_t n_max,
                                      Parity parity);

// The indices t <= sqrt(n_max) with nonzero shifted-convolution coefficient at n = t^2.
std::vector<std::uint64_t> shifted_convolution_support(const QuadraticField& field, Parity parity,
                                                       std::uint64_t n_max);

// Exact r + i sqrt(q) with rational r, i.
struct QuadraticSurd {
  mpq_class rational;
  mpq_class irrational;
  std::int64_t q = 0;

  bool is_rational() const { return irrational == 0; }
  bool is_zero() const { return rational == 0 && irrational == 0; }
  double to_double() const;
  std::string str() const;
};

QuadraticSurd operator+(const QuadraticSurd& x, const QuadraticSurd& y);
QuadraticSurd operator-(const QuadraticSurd& x, const QuadraticSurd& y);
QuadraticSurd operator*(const QuadraticSurd& x, const QuadraticSurd& y);
QuadraticSurd operator/(const QuadraticSurd& x, const QuadraticSurd& y);
QuadraticSurd conjugate(const QuadraticSurd& x);

struct SpecialValue {
  // (1 + eps^2) / ((1 - eps^2) sqrt q)
  QuadraticSurd even_value;
  // The same expression with eps replaced by its conjugate (sqrt q unchanged).
  QuadraticSurd conjugate_term;
  // even_value + conjugate_term; zero exactly when even_value is rational.
  QuadraticSurd galois_sum;
  // Z(-1) = Z_even(-1) since Z_odd vanishes at -1.
  mpq_class combined;
  double value = 0.0;
};

// Z_even(-1) in closed form; N(eps) = -1.
SpecialValue special_value_even_minus_one(const QuadraticField& field);

}  // namespace fibzeta
