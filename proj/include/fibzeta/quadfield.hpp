#pragma once

// Exact arithmetic in the real quadratic field Q(sqrt D): the fundamental
// unit, the O_D Fibonacci/Lucas sequences built from its traces, and the
// Pell-type membership test X^2 = q n^2 +- 4.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <gmpxx.h>
#include <boost/multiprecision/mpfr.hpp>

#include "fibzeta/error.hpp"

namespace fibzeta {

using BigInt = mpz_class;
using HighPrecision = boost::multiprecision::mpfr_float;

inline constexpr unsigned kDefaultDigits = 64;

// (a + b sqrt q) / 2 in O_D.
struct UnitElement {
  BigInt a;
  BigInt b;

  BigInt trace() const { return a; }
  // N = (a^2 - q b^2) / 4; exact for members of O_D.
  BigInt norm(const BigInt& q) const;
  bool operator==(const UnitElement&) const = default;
};

struct SequenceTerm {
  std::uint64_t index = 0;
  BigInt fib;
  BigInt lucas;
};

class QuadraticField {
 public:
  std::int64_t D() const { return D_; }
  // q = D when D = 1 mod 4, else 4D.
  std::int64_t q() const { return q_; }
  // ell = 4 when D = 1 mod 4, else 1.
  int ell() const { return ell_; }
  const UnitElement& eps() const { return eps_; }
  int norm_eps() const { return norm_eps_; }
  double eps_value() const { return eps_value_; }
  double log_eps() const { return log_eps_; }
  const HighPrecision& log_eps_precise() const { return log_eps_precise_; }
  unsigned digits() const { return digits_; }

  // Value of eps at the working precision.
  HighPrecision eps_precise() const;

 private:
  friend QuadraticField make_field(std::int64_t D, unsigned digits);

  std::int64_t D_ = 0;
  std::int64_t q_ = 0;
  int ell_ = 0;
  UnitElement eps_;
  int norm_eps_ = 0;
  double eps_value_ = 0.0;
  double log_eps_ = 0.0;
  HighPrecision log_eps_precise_;
  unsigned digits_ = kDefaultDigits;
};

// Throws NotSquarefree for D with a square factor, InvalidInput for D < 2.
QuadraticField make_field(std::int64_t D, unsigned digits = kDefaultDigits);

BigInt fib(const QuadraticField& field, std::uint64_t n);
BigInt lucas(const QuadraticField& field, std::uint64_t n);

// Terms 0..n inclusive, generated by one pass of the recurrence.
std::vector<SequenceTerm> sequence(const QuadraticField& field, std::uint64_t n);

enum class Membership {
  not_member,
  member,                // parity not requested (or N(eps) = +1)
  member_even_index,
  member_odd_index,
  member_both_parities,  // n = F(1) = F(2) can happen, e.g. n = 1 for D = 5
};

std::string_view membership_name(Membership verdict);

enum class MembershipQuery { membership, parity };

struct FibMembership {
  Membership verdict = Membership::not_member;
  // Witnesses X with X^2 = q n^2 + 4 and X^2 = q n^2 - 4 respectively.
  // X = L_D(r) where n = F_D(r).
  std::optional<BigInt> plus_witness;
  std::optional<BigInt> minus_witness;

  bool is_member() const { return verdict != Membership::not_member; }
};

// Throws NormPlusOne if a parity verdict is requested for an N(eps) = +1 field.
FibMembership is_fib(const QuadraticField& field, const BigInt& n,
                     MembershipQuery query = MembershipQuery::parity);

// Exact floor(sqrt(x)) for x >= 0.
BigInt isqrt(const BigInt& x);
std::uint64_t isqrt(std::uint64_t x);
std::optional<BigInt> exact_sqrt(const BigInt& x);

// #{x in Z : x^2 = n}.
int r1(std::int64_t n);
int r1(const BigInt& n);

}  // namespace fibzeta
