#include "fibzeta/crosscheck.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace fibzeta {

namespace {

constexpr double kPi = std::numbers::pi;

void require_norm_minus_one(const QuadraticField& field, std::string_view what) {
  if (field.norm_eps() == -1) return;
  throw Error(ErrorKind::NormPlusOne, std::string(what) + " needs N(eps) = -1; D = " +
                                          std::to_string(field.D()) + " has N(eps) = +1");
}

// C(-s, k)
Complex binomial_neg(Complex s, int k) {
  Complex c = 1.0;
  for (int j = 0; j < k; ++j) c *= (-s - static_cast<double>(j)) / static_cast<double>(j + 1);
  return c;
}

double log_of(const BigInt& x) {
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, x.get_mpz_t());
  return std::log(mantissa) + static_cast<double>(exponent) * std::numbers::ln2;
}

int shift_sign(Parity parity) { return parity == Parity::odd ? -1 : 1; }

ZetaEvaluation shifted_convolution(const QuadraticField& field, Complex s, std::uint64_t n_max,
                                   Parity parity) {
  require_norm_minus_one(field, "shifted convolution");
  if (s.real() <= 0.0) throw Error(ErrorKind::OutOfRegion, "shifted convolution needs Re s > 0");

  const std::uint64_t t_max = isqrt(n_max);
  const std::int64_t shift = shift_sign(parity) * field.ell();
  Complex sum = 0.0;
  for (std::uint64_t t = 1; t <= t_max; ++t) {
    const BigInt partner = BigInt(field.D()) * t * t + shift;
    const int r = r1(partner);
    if (r == 0) continue;
    // r1(t^2) = 2, so the coefficient is 2 r / 4.
    sum += 0.5 * r * std::exp(-s * std::log(static_cast<double>(t)));
  }

  ZetaEvaluation result;
  result.value = sum;
  result.method = Method::shifted_convolution;
  result.parity = parity;
  result.terms_used = t_max;
  result.tail_bound = shifted_convolution_tail_bound(field, s, n_max, parity);
  return result;
}

}  // namespace

double shifted_convolution_tail_bound(const QuadraticField& field, Complex s, std::uint64_t n_max,
                                      Parity parity) {
  if (s.real() <= 0.0) throw Error(ErrorKind::OutOfRegion, "shifted convolution needs Re s > 0");
  // Remaining terms are F(j)^-s for F(j) > sqrt(n_max) with j of this parity.
  const std::uint64_t t_max = isqrt(n_max);
  const BigInt& a = field.eps().a;
  const int norm = field.norm_eps();
  BigInt prev = 0;
  BigInt cur = fib(field, 1);
  std::uint64_t j = 1;
  const std::uint64_t first = parity == Parity::odd ? 1 : 2;
  while (j < first || (j - first) % 2 != 0 || cur <= t_max) {
    BigInt next = a * cur - norm * prev;
    prev = std::move(cur);
    cur = std::move(next);
    ++j;
  }
  const double L = field.log_eps();
  const double jd = static_cast<double>(j);
  const double growth_log =
      2.0 * L + std::log1p(-std::exp(-2.0 * (jd + 2.0) * L)) - std::log1p(std::exp(-2.0 * jd * L));
  const double rho = std::exp(-s.real() * growth_log);
  const double next_term = std::exp(-s.real() * log_of(cur));
  return rho < 1.0 ? next_term / (1.0 - rho) : std::numeric_limits<double>::infinity();
}

PoleSpec pole_spec(const QuadraticField& field, int k, std::int64_t m) {
  if (k < 0) throw Error(ErrorKind::InvalidInput, "pole index k must be >= 0");
  PoleSpec pole;
  pole.k = k;
  pole.m = m;
  pole.location = lattice_location(field, k, m);
  const double L = field.log_eps();
  const Complex base = std::exp(0.5 * pole.location * std::log(static_cast<double>(field.q()))) *
                       binomial_neg(pole.location, k);
  const double sign_k = k % 2 == 0 ? 1.0 : -1.0;
  const double sign_m = m % 2 == 0 ? 1.0 : -1.0;
  if (field.norm_eps() == -1) {
    pole.residue_odd = base * sign_m / (2.0 * L);
    pole.residue_even = base * sign_k / (2.0 * L);
    pole.residue_combined = pole.residue_odd + pole.residue_even;
    pole.survives_in_combined = (m + k) % 2 == 0;
  } else {
    pole.survives_in_combined = m % 2 == 0;
    pole.residue_combined = pole.survives_in_combined ? base * sign_k / L : Complex{};
  }
  return pole;
}

std::vector<PoleSpec> pole_lattice(const QuadraticField& field, int k_max, std::int64_t m_max,
                                   Parity which) {
  if (k_max < 0 || m_max < 0) throw Error(ErrorKind::InvalidInput, "k_max and m_max must be >= 0");
  if (which != Parity::combined) require_norm_minus_one(field, "split pole lattice");
  std::vector<PoleSpec> poles;
  for (int k = 0; k <= k_max; ++k) {
    for (std::int64_t m = -m_max; m <= m_max; ++m) {
      PoleSpec pole = pole_spec(field, k, m);
      if (which == Parity::combined && !pole.survives_in_combined) continue;
      poles.push_back(pole);
    }
  }
  return poles;
}

Complex residue_numeric(const QuadraticField& field, PoleSet set, const ZetaFunction& f, Complex s0,
                        const ContourOptions& contour) {
  if (contour.points < 64) throw Error(ErrorKind::InvalidInput, "contour needs at least 64 points");
  if (!(contour.radius > 0.0)) throw Error(ErrorKind::InvalidInput, "contour radius must be positive");

  // Lattice points near the circle, other than s0 itself.
  const double L = field.log_eps();
  const double reach = contour.radius + contour.guard;
  const int k_lo = std::max(0, static_cast<int>(std::floor((-s0.real() - reach) / 2.0)));
  const int k_hi = static_cast<int>(std::ceil((-s0.real() + reach) / 2.0));
  const auto m_lo = static_cast<std::int64_t>(std::floor((s0.imag() - reach) * L / kPi));
  const auto m_hi = static_cast<std::int64_t>(std::ceil((s0.imag() + reach) * L / kPi));
  for (int k = k_lo; k <= k_hi; ++k) {
    for (std::int64_t m = m_lo; m <= m_hi; ++m) {
      if (!in_pole_set(set, k, m)) continue;
      const double d = std::abs(lattice_location(field, k, m) - s0);
      if (d < 1e-12) continue;
      if (d <= reach) {
        throw Error(ErrorKind::ContourThroughPole,
                    "contour around s0 passes within guard of the pole (k=" + std::to_string(k) +
                        ", m=" + std::to_string(m) + ")");
      }
    }
  }

  Complex acc = 0.0;
  for (int j = 0; j < contour.points; ++j) {
    const double theta = 2.0 * kPi * j / contour.points;
    const Complex offset = std::polar(contour.radius, theta);
    acc += f(s0 + offset) * offset;
  }
  return acc / static_cast<double>(contour.points);
}

ZetaEvaluation z_odd_shifted_convolution(const QuadraticField& field, Complex s, std::uint64_t n_max) {
  return shifted_convolution(field, s, n_max, Parity::odd);
}

ZetaEvaluation z_even_shifted_convolution(const QuadraticField& field, Complex s, std::uint64_t n_max) {
  return shifted_convolution(field, s, n_max, Parity::even);
}

std::vector<std::uint64_t> shifted_convolution_support(const QuadraticField& field, Parity parity,
                                                       std::uint64_t n_max) {
  std::vector<std::uint64_t> support;
  const std::uint64_t t_max = isqrt(n_max);
  for (std::uint64_t t = 1; t <= t_max; ++t) {
    const BigInt base = BigInt(field.D()) * t * t;
    const bool minus = r1(BigInt(base - field.ell())) != 0;
    const bool plus = r1(BigInt(base + field.ell())) != 0;
    const bool hit = parity == Parity::odd ? minus : parity == Parity::even ? plus : (minus || plus);
    if (hit) support.push_back(t);
  }
  return support;
}

double QuadraticSurd::to_double() const {
  return rational.get_d() + irrational.get_d() * std::sqrt(static_cast<double>(q));
}

std::string QuadraticSurd::str() const {
  std::ostringstream out;
  if (is_rational()) {
    out << rational.get_str();
    return out.str();
  }
  out << rational.get_str() << (sgn(irrational) < 0 ? " - " : " + ") << mpq_class(abs(irrational)).get_str()
      << "*sqrt(" << q << ")";
  return out.str();
}

namespace {

QuadraticSurd reduced(mpq_class rational, mpq_class irrational, std::int64_t q) {
  rational.canonicalize();
  irrational.canonicalize();
  return {std::move(rational), std::move(irrational), q};
}

}  // namespace

QuadraticSurd operator+(const QuadraticSurd& x, const QuadraticSurd& y) {
  return reduced(x.rational + y.rational, x.irrational + y.irrational, x.q);
}

QuadraticSurd operator-(const QuadraticSurd& x, const QuadraticSurd& y) {
  return reduced(x.rational - y.rational, x.irrational - y.irrational, x.q);
}

QuadraticSurd operator*(const QuadraticSurd& x, const QuadraticSurd& y) {
  return reduced(x.rational * y.rational + x.irrational * y.irrational * x.q,
                 x.rational * y.irrational + x.irrational * y.rational, x.q);
}

QuadraticSurd conjugate(const QuadraticSurd& x) { return {x.rational, -x.irrational, x.q}; }

QuadraticSurd operator/(const QuadraticSurd& x, const QuadraticSurd& y) {
  const mpq_class norm = y.rational * y.rational - y.irrational * y.irrational * y.q;
  if (norm == 0) throw Error(ErrorKind::InvalidInput, "division by zero in Q(sqrt q)");
  QuadraticSurd out = x * conjugate(y);
  return reduced(out.rational / norm, out.irrational / norm, out.q);
}

SpecialValue special_value_even_minus_one(const QuadraticField& field) {
  require_norm_minus_one(field, "special_value_even_minus_one");
  const std::int64_t q = field.q();
  const QuadraticSurd one{1, 0, q};
  const QuadraticSurd root_q{0, 1, q};
  const QuadraticSurd eps = reduced(mpq_class(field.eps().a, 2), mpq_class(field.eps().b, 2), q);

  const auto closed_form = [&](const QuadraticSurd& unit) {
    const QuadraticSurd square = unit * unit;
    return (one + square) / ((one - square) * root_q);
  };

  SpecialValue out;
  out.even_value = closed_form(eps);
  out.conjugate_term = closed_form(conjugate(eps));
  out.galois_sum = out.even_value + out.conjugate_term;
  out.combined = out.even_value.rational;
  out.value = out.even_value.to_double();
  return out;
}

}  // namespace fibzeta
