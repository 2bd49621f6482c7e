#pragma once

// Binomial-series continuations of the O_D Fibonacci zeta functions
//
//   Z_odd(s)  = sum_n F_D(2n-1)^-s,  Z_even(s) = sum_n F_D(2n)^-s,
//   Z(s)      = Z_odd(s) + Z_even(s),
//
// valid on all of C away from the half-lattice s = -2k + pi i m / log eps,
// plus the direct Dirichlet sums used as the reference in Re s > 0.

#include <cstdint>
#include <limits>
#include <string_view>

#include "fibzeta/complexfn.hpp"
#include "fibzeta/error.hpp"
#include "fibzeta/options.hpp"
#include "fibzeta/quadfield.hpp"

namespace fibzeta {

enum class Method { direct, binomial, poisson, shifted_convolution };
enum class Parity { odd, even, combined };

std::string_view method_name(Method method);
std::string_view parity_name(Parity parity);

struct ZetaEvaluation {
  Complex value;
  Method method = Method::binomial;
  Parity parity = Parity::combined;
  std::size_t terms_used = 0;
  double tail_bound = 0.0;
  double nearest_pole_distance = std::numeric_limits<double>::infinity();
};

// s = -2k + pi i m / log eps.
struct LatticePoint {
  int k = 0;
  std::int64_t m = 0;
  Complex location;
};

Complex lattice_location(const QuadraticField& field, int k, std::int64_t m);

// Which lattice points are actual poles of a given function.
enum class PoleSet {
  split,          // Z_odd, Z_even: every (k, m)
  combined,       // Z with N(eps) = -1: m + k even
  norm_plus_one,  // Z with N(eps) = +1: m even
  none,           // direct sums (Re s > 0)
};

PoleSet pole_set_for(const QuadraticField& field, Parity parity);
bool in_pole_set(PoleSet set, int k, std::int64_t m);

struct NearestPole {
  LatticePoint point;
  double distance = std::numeric_limits<double>::infinity();
};

NearestPole nearest_pole(const QuadraticField& field, Complex s, PoleSet set);

class PoleProximityError : public Error {
 public:
  PoleProximityError(const NearestPole& pole, double guard);
  const NearestPole& pole() const noexcept { return pole_; }

 private:
  NearestPole pole_;
};

// Throws PoleProximityError when s is within options.pole_guard of the set.
NearestPole check_pole_guard(const QuadraticField& field, Complex s, PoleSet set,
                             const EvalOptions& options);

// N(eps) = -1 only (NormPlusOne otherwise).
ZetaEvaluation z_odd_binomial(const QuadraticField& field, Complex s, const EvalOptions& options = {});
ZetaEvaluation z_even_binomial(const QuadraticField& field, Complex s, const EvalOptions& options = {});

// q^{s/2} sum_k C(-s,k) / (eps^{s+2k} + (-1)^{k+1}). For N(eps) = +1 fields
// this forwards to z_norm_plus_one.
ZetaEvaluation z_combined_binomial(const QuadraticField& field, Complex s,
                                   const EvalOptions& options = {});

// q^{s/2} sum_k C(-s,k) (-1)^k / (eps^{s+2k} - 1); N(eps) = +1 only.
ZetaEvaluation z_norm_plus_one(const QuadraticField& field, Complex s, const EvalOptions& options = {});

// Partial Dirichlet sum over n <= n_max using exact F_D values. Re s > 0.
ZetaEvaluation z_direct(const QuadraticField& field, Complex s, Parity parity, std::size_t n_max);

// Smallest n_max for which the direct tail falls below tol relative to the leading term.
std::size_t direct_terms_for(const QuadraticField& field, Complex s, Parity parity, double tol);

}  // namespace fibzeta
