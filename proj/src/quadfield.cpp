#include "fibzeta/quadfield.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fibzeta/error.hpp"

namespace fibzeta {

namespace {

// Sets the mpfr default precision for the lifetime of the guard.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned digits) : saved_(HighPrecision::default_precision()) {
    HighPrecision::default_precision(digits);
  }
  ~PrecisionGuard() { HighPrecision::default_precision(saved_); }
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  unsigned saved_;
};

HighPrecision to_high(const BigInt& x) { return HighPrecision(x.get_str()); }

std::int64_t floor_div(std::int64_t num, std::int64_t den) {
  std::int64_t quot = num / den;
  if ((num % den != 0) && ((num < 0) != (den < 0))) --quot;
  return quot;
}

bool is_squarefree(std::int64_t D) {
  for (std::int64_t p = 2; p * p <= D; ++p) {
    if (D % (p * p) == 0) return false;
  }
  return true;
}

// floor((P + sqrt D) / Q) for non-square D, with root = floor(sqrt D).
std::int64_t partial_quotient(std::int64_t P, std::int64_t Q, std::int64_t root) {
  return Q > 0 ? floor_div(P + root, Q) : floor_div(P + root + 1, Q);
}

bool has_unit_with_smaller_coefficient(std::int64_t q, const BigInt& bound) {
  constexpr long kSearchLimit = 200000;
  const long limit = bound.fits_slong_p() ? std::min(bound.get_si(), kSearchLimit) : kSearchLimit;
  for (long y = 1; y < limit; ++y) {
    BigInt qy2 = BigInt(q) * y * y;
    if (exact_sqrt(qy2 + 4) || exact_sqrt(qy2 - 4)) return true;
  }
  return false;
}

}  // namespace

BigInt UnitElement::norm(const BigInt& q) const {
  BigInt four_n = a * a - q * b * b;
  return four_n / 4;
}

HighPrecision QuadraticField::eps_precise() const {
  PrecisionGuard guard(digits_);
  HighPrecision root = boost::multiprecision::sqrt(HighPrecision(q_));
  return (to_high(eps_.a) + to_high(eps_.b) * root) / 2;
}

QuadraticField make_field(std::int64_t D, unsigned digits) {
  if (D < 2) throw Error(ErrorKind::InvalidInput, "D must be at least 2, got " + std::to_string(D));
  if (!is_squarefree(D)) throw Error(ErrorKind::NotSquarefree, "D = " + std::to_string(D));
  if (digits < 20) throw Error(ErrorKind::InvalidInput, "precision below 20 digits");

  QuadraticField field;
  field.D_ = D;
  field.digits_ = digits;
  const bool one_mod_four = (D % 4 == 1);
  field.q_ = one_mod_four ? D : 4 * D;
  field.ell_ = one_mod_four ? 4 : 1;

  // Continued fraction of (P + sqrt D)/Q: omega = (1 + sqrt D)/2 or sqrt D.
  const std::int64_t root = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(D)));
  std::int64_t P = one_mod_four ? 1 : 0;
  std::int64_t Q = one_mod_four ? 2 : 1;
  BigInt h_prev = 1, h = 0;
  BigInt k_prev = 0, k = 1;
  const BigInt q_big = field.q_;

  bool found = false;
  for (int step = 0; step < 1000000; ++step) {
    const std::int64_t a = partial_quotient(P, Q, root);
    BigInt h_next = a * h_prev + h;  // h/k lag one step behind h_prev/k_prev
    BigInt k_next = a * k_prev + k;
    h = h_prev;
    k = k_prev;
    h_prev = h_next;
    k_prev = k_next;

    // h_prev / k_prev is the newest convergent p/r; the unit is p - r*conj(omega).
    UnitElement candidate = one_mod_four ? UnitElement{2 * h_prev - k_prev, k_prev}
                                         : UnitElement{2 * h_prev, k_prev};
    BigInt four_norm = candidate.a * candidate.a - q_big * candidate.b * candidate.b;
    if (four_norm == 4 || four_norm == -4) {
      field.eps_ = candidate;
      field.norm_eps_ = four_norm > 0 ? 1 : -1;
      found = true;
      break;
    }

    P = a * Q - P;
    Q = (D - P * P) / Q;
  }
  if (!found) throw std::logic_error("continued fraction did not reach a unit");
  if (has_unit_with_smaller_coefficient(field.q_, field.eps_.b)) {
    throw std::logic_error("unit from continued fraction is not fundamental");
  }

  {
    PrecisionGuard guard(digits);
    HighPrecision eps = field.eps_precise();
    field.log_eps_precise_ = boost::multiprecision::log(eps);
    field.eps_value_ = eps.convert_to<double>();
    field.log_eps_ = field.log_eps_precise_.convert_to<double>();
  }
  return field;
}

namespace {

BigInt recurrence_term(const QuadraticField& field, std::uint64_t n, BigInt first, BigInt second) {
  if (n == 0) return first;
  const BigInt& trace = field.eps().a;
  const int norm = field.norm_eps();
  for (std::uint64_t i = 1; i < n; ++i) {
    BigInt next = trace * second - norm * first;
    first = std::move(second);
    second = std::move(next);
  }
  return second;
}

}  // namespace

BigInt fib(const QuadraticField& field, std::uint64_t n) {
  return recurrence_term(field, n, BigInt(0), field.eps().b);
}

BigInt lucas(const QuadraticField& field, std::uint64_t n) {
  return recurrence_term(field, n, BigInt(2), field.eps().a);
}

std::vector<SequenceTerm> sequence(const QuadraticField& field, std::uint64_t n) {
  std::vector<SequenceTerm> terms;
  terms.reserve(n + 1);
  terms.push_back({0, BigInt(0), BigInt(2)});
  if (n == 0) return terms;
  terms.push_back({1, field.eps().b, field.eps().a});
  const BigInt& trace = field.eps().a;
  const int norm = field.norm_eps();
  for (std::uint64_t i = 2; i <= n; ++i) {
    const SequenceTerm& p1 = terms[i - 1];
    const SequenceTerm& p2 = terms[i - 2];
    terms.push_back({i, trace * p1.fib - norm * p2.fib, trace * p1.lucas - norm * p2.lucas});
  }
  return terms;
}

BigInt isqrt(const BigInt& x) {
  if (x < 0) throw Error(ErrorKind::InvalidInput, "isqrt of a negative integer");
  if (x == 0) return 0;
  // Newton from above: start at 2^ceil(bits/2) >= sqrt(x).
  const std::size_t bits = mpz_sizeinbase(x.get_mpz_t(), 2);
  BigInt guess;
  mpz_ui_pow_ui(guess.get_mpz_t(), 2, (bits + 1) / 2);
  while (true) {
    BigInt next = (guess + x / guess) / 2;
    if (next >= guess) break;
    guess = std::move(next);
  }
  if (guess * guess > x || (guess + 1) * (guess + 1) <= x) {
    throw std::logic_error("integer square root failed verification");
  }
  return guess;
}

std::uint64_t isqrt(std::uint64_t x) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
  using wide = unsigned __int128;
  while (static_cast<wide>(r) * r > x) --r;
  while (static_cast<wide>(r + 1) * (r + 1) <= x) ++r;
  return r;
}

std::optional<BigInt> exact_sqrt(const BigInt& x) {
  if (x < 0) return std::nullopt;
  if (x.fits_ulong_p()) {
    const std::uint64_t r = isqrt(static_cast<std::uint64_t>(x.get_ui()));
    if (static_cast<unsigned __int128>(r) * r == x.get_ui()) return BigInt(static_cast<unsigned long>(r));
    return std::nullopt;
  }
  BigInt r = isqrt(x);
  if (r * r == x) return r;
  return std::nullopt;
}

int r1(std::int64_t n) {
  if (n < 0) return 0;
  if (n == 0) return 1;
  const std::uint64_t r = isqrt(static_cast<std::uint64_t>(n));
  return r * r == static_cast<std::uint64_t>(n) ? 2 : 0;
}

int r1(const BigInt& n) {
  if (n < 0) return 0;
  if (n == 0) return 1;
  return exact_sqrt(n) ? 2 : 0;
}

namespace {

// Square root of base + sign*shift when it is a perfect square; uint64 fast path.
std::optional<BigInt> shifted_square_root(const BigInt& base, int shift) {
  if (base.fits_ulong_p()) {
    using wide = unsigned __int128;
    const wide value = static_cast<wide>(base.get_ui()) + shift;  // shift >= -4, base > 4 here
    if (value <= UINT64_MAX) {
      const auto v = static_cast<std::uint64_t>(value);
      const std::uint64_t r = isqrt(v);
      if (static_cast<wide>(r) * r == v) return BigInt(static_cast<unsigned long>(r));
      return std::nullopt;
    }
  }
  return exact_sqrt(base + shift);
}

}  // namespace

std::string_view membership_name(Membership verdict) {
  switch (verdict) {
    case Membership::not_member: return "not_member";
    case Membership::member: return "member";
    case Membership::member_even_index: return "member_even_index";
    case Membership::member_odd_index: return "member_odd_index";
    case Membership::member_both_parities: return "member_both_parities";
  }
  return "unknown";
}

FibMembership is_fib(const QuadraticField& field, const BigInt& n, MembershipQuery query) {
  if (n <= 0) throw Error(ErrorKind::InvalidInput, "is_fib expects a positive integer");
  if (query == MembershipQuery::parity && field.norm_eps() == 1) {
    throw Error(ErrorKind::NormPlusOne,
                "index parity is undefined for D = " + std::to_string(field.D()) + " (N(eps) = +1)");
  }

  FibMembership result;
  const bool reduced = field.q() == 4 * field.D();
  // For q = 4D any solution X is even: X = 2Y with Y^2 = D n^2 +- 1.
  const BigInt base = reduced ? BigInt(field.D()) * n * n : BigInt(field.q()) * n * n;
  const int shift = reduced ? 1 : 4;
  if (auto root = shifted_square_root(base, shift)) {
    result.plus_witness = reduced ? BigInt(2 * *root) : *root;
  }
  if (base > shift) {
    if (auto root = shifted_square_root(base, -shift)) {
      result.minus_witness = reduced ? BigInt(2 * *root) : *root;
    }
  } else if (base == shift) {
    result.minus_witness = BigInt(0);
  }

  const bool plus = result.plus_witness.has_value();
  const bool minus = result.minus_witness.has_value();
  if (!plus && !minus) {
    result.verdict = Membership::not_member;
  } else if (query == MembershipQuery::membership) {
    result.verdict = Membership::member;
  } else if (plus && minus) {
    result.verdict = Membership::member_both_parities;
  } else {
    // L^2 - q F^2 = 4 N(eps)^r = 4 (-1)^r.
    result.verdict = plus ? Membership::member_even_index : Membership::member_odd_index;
  }
  return result;
}

}  // namespace fibzeta
