#include "fibzeta/verify.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "fibzeta/crosscheck.hpp"
#include "fibzeta/evaluate.hpp"
#include "fibzeta/parallel.hpp"
#include "fibzeta/poisson.hpp"

namespace fibzeta {

namespace {

std::string field_label(const QuadraticField& field) { return "D=" + std::to_string(field.D()); }

CheckResult deviation_check(std::string name, double deviation, double tolerance, std::string detail = {}) {
  return {std::move(name), deviation < tolerance, deviation, tolerance, std::move(detail)};
}

// Largest |x - y| over a list of pairs, failures count as infinite deviation.
struct Deviation {
  double max = 0.0;
  std::size_t failures = 0;
  std::string first_failure;

  void add(double d) { max = std::max(max, d); }
  void fail(const std::string& what) {
    ++failures;
    if (first_failure.empty()) first_failure = what;
    max = std::numeric_limits<double>::infinity();
  }
  std::string detail() const {
    return failures == 0 ? std::string{} : std::to_string(failures) + " failures, first: " + first_failure;
  }
};

void suite_sequence(SuiteReport& report, const QuadraticField& field) {
  const auto terms = sequence(field, 60);
  const BigInt q = field.q();
  bool ok = true;
  BigInt norm_power = 1;
  for (const auto& t : terms) {
    if (t.lucas * t.lucas - q * t.fib * t.fib != 4 * norm_power) ok = false;
    norm_power *= field.norm_eps();
  }
  report.checks.push_back({field_label(field) + " norm identity n<=60", ok, ok ? 0.0 : 1.0, 0.5, {}});
}

void suite_pell(SuiteReport& report, const QuadraticField& field) {
  constexpr std::uint64_t kLimit = 1000000;
  const bool with_parity = field.norm_eps() == -1;
  std::vector<Membership> expected(kLimit, Membership::not_member);
  const auto terms = sequence(field, 80);
  for (std::size_t r = 1; r < terms.size(); ++r) {
    if (terms[r].fib > kLimit) break;
    auto& slot = expected[terms[r].fib.get_ui() - 1];
    if (!with_parity) {
      slot = Membership::member;
    } else {
      const Membership here = r % 2 == 0 ? Membership::member_even_index : Membership::member_odd_index;
      slot = slot == Membership::not_member || slot == here ? here : Membership::member_both_parities;
    }
  }
  const auto query = with_parity ? MembershipQuery::parity : MembershipQuery::membership;
  const std::vector<Membership> got = membership_scan(field, kLimit, query);
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < kLimit; ++i) mismatches += got[i] != expected[i];
  report.checks.push_back({field_label(field) + " is_fib vs enumeration n<=1e6", mismatches == 0,
                           static_cast<double>(mismatches), 0.5, {}});
}

void suite_cross_method(SuiteReport& report, const QuadraticField& field, std::uint64_t seed,
                        const EvalOptions& options) {
  const std::vector<Complex> grid = random_grid(field, 200, seed);
  Deviation poisson_odd;
  Deviation poisson_even;
  Deviation direct;
  for (Complex s : grid) {
    std::ostringstream where;
    where << "s=" << s;
    try {
      if (field.norm_eps() == -1) {
        poisson_odd.add(std::abs(z_odd_binomial(field, s, options).value - z_odd_poisson(field, s, options).value));
        poisson_even.add(
            std::abs(z_even_binomial(field, s, options).value - z_even_poisson(field, s, options).value));
      }
      if (s.real() >= 0.5) {
        direct.add(std::abs(evaluate(field, s, Parity::combined, Method::binomial, options).value -
                            evaluate(field, s, Parity::combined, Method::direct, options).value));
      }
    } catch (const Error& e) {
      (field.norm_eps() == -1 ? poisson_even : direct).fail(where.str() + " " + e.what());
    }
  }
  if (field.norm_eps() == -1) {
    report.checks.push_back(deviation_check(field_label(field) + " odd binomial vs poisson", poisson_odd.max,
                                            1e-8, poisson_odd.detail()));
    report.checks.push_back(deviation_check(field_label(field) + " even binomial vs poisson",
                                            poisson_even.max, 1e-8, poisson_even.detail()));
  }
  report.checks.push_back(
      deviation_check(field_label(field) + " binomial vs direct (Re s>=0.5)", direct.max, 1e-10, direct.detail()));
}

void suite_poles(SuiteReport& report, const QuadraticField& field, const EvalOptions& options) {
  if (field.norm_eps() != -1) return;
  EvalOptions near = options;
  near.pole_guard = 1e-4;
  ContourOptions contour;
  contour.guard = 1e-5;
  Deviation residues;
  Deviation cancellation;
  for (const PoleSpec& pole : pole_lattice(field, 2, 3, Parity::odd)) {
    const Complex odd = residue_numeric(
        field, PoleSet::split, [&](Complex s) { return z_odd_binomial(field, s, near).value; }, pole.location,
        contour);
    const Complex even = residue_numeric(
        field, PoleSet::split, [&](Complex s) { return z_even_binomial(field, s, near).value; }, pole.location,
        contour);
    residues.add(std::abs(odd - pole.residue_odd) / std::max(1.0, std::abs(pole.residue_odd)));
    residues.add(std::abs(even - pole.residue_even) / std::max(1.0, std::abs(pole.residue_even)));
    const double sum = std::abs(pole.residue_odd + pole.residue_even);
    const bool cancels = (pole.k + pole.m) % 2 != 0;
    if (cancels != (sum < 1e-8)) cancellation.fail("k=" + std::to_string(pole.k) + " m=" + std::to_string(pole.m));
    if (cancels) cancellation.add(sum);
  }
  report.checks.push_back(deviation_check(field_label(field) + " contour vs analytic residues", residues.max,
                                          1e-6, residues.detail()));
  report.checks.push_back(deviation_check(field_label(field) + " residues cancel iff m+k odd", cancellation.max,
                                          1e-8, cancellation.detail()));
}

void suite_special_values(SuiteReport& report, const QuadraticField& field, const EvalOptions& options) {
  if (field.norm_eps() != -1) return;
  const SpecialValue exact = special_value_even_minus_one(field);
  const double binomial = std::abs(z_even_binomial(field, -1.0, options).value - exact.value);
  const double poisson = std::abs(z_even_poisson(field, -1.0, options).value - exact.value);
  report.checks.push_back(deviation_check(field_label(field) + " Z_even(-1) = " + exact.even_value.str(),
                                          std::max(binomial, poisson), 1e-9));
  report.checks.push_back({field_label(field) + " exact rational Z(-1) = " + exact.combined.get_str(),
                           exact.even_value.is_rational() && exact.galois_sum.is_zero(), 0.0, 0.0,
                           "galois sum " + exact.galois_sum.str()});
  Deviation zeros;
  for (int j = 1; j <= 5; ++j) {
    const Complex s = -(2.0 * j - 1.0);
    zeros.add(std::abs(z_odd_poisson(field, s, options).value));
    zeros.add(std::abs(z_odd_binomial(field, s, options).value));
  }
  report.checks.push_back(deviation_check(field_label(field) + " trivial zeros of Z_odd", zeros.max, 1e-10));
}

void suite_zeta_cancellation(SuiteReport& report, const QuadraticField& field, std::uint64_t seed) {
  if (field.norm_eps() != -1) return;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> re(-4.0, -0.1);
  std::uniform_real_distribution<double> im(-8.0, 8.0);
  Deviation dev;
  const double L = field.log_eps();
  for (int i = 0; i < 20; ++i) {
    const Complex s{re(rng), im(rng)};
    const Complex target =
        -std::exp(0.5 * s * std::log(static_cast<double>(field.q())) - s * std::log(4.0 * L)) * czeta(s);
    dev.add(std::abs(mordell_power_contribution(field, s) - target) / std::max(1.0, std::abs(target)));
  }
  report.checks.push_back(deviation_check(field_label(field) + " power sums reproduce zeta term", dev.max, 1e-9));
}

void suite_region_overlap(SuiteReport& report, const QuadraticField& field, std::uint64_t seed,
                          const EvalOptions& options) {
  if (field.norm_eps() != -1) return;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> im(-8.0, 8.0);
  std::uniform_real_distribution<double> left(-0.5, -0.25);
  std::uniform_real_distribution<double> right(0.5, 1.5);
  Deviation strip_left;
  Deviation strip_direct;
  for (int i = 0; i < 30; ++i) {
    const Complex a{left(rng), im(rng)};
    const Complex b{right(rng), im(rng)};
    try {
      strip_left.add(std::abs(z_even_poisson_in_region(field, a, Region::mordell_strip, options).value -
                              z_even_poisson_in_region(field, a, Region::left_half, options).value));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::PoleProximity) strip_left.fail(e.what());
    }
    try {
      strip_direct.add(std::abs(z_even_poisson_in_region(field, b, Region::mordell_strip, options).value -
                                z_even_poisson_in_region(field, b, Region::direct_series, options).value));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NearOneSingularity) strip_direct.fail(e.what());
    }
  }
  report.checks.push_back(
      deviation_check(field_label(field) + " strip vs left overlap", strip_left.max, 1e-8, strip_left.detail()));
  report.checks.push_back(deviation_check(field_label(field) + " strip vs direct overlap", strip_direct.max, 1e-8,
                                          strip_direct.detail()));
}

void suite_shifted_convolution(SuiteReport& report, const QuadraticField& field, const EvalOptions& options) {
  if (field.norm_eps() != -1) return;
  Deviation excess;
  for (Complex s : {Complex{1.0, 0.0}, Complex{1.5, 2.0}, Complex{2.0, 0.0}, Complex{3.0, -5.0}}) {
    for (Parity parity : {Parity::odd, Parity::even}) {
      const ZetaEvaluation conv = evaluate(field, s, parity, Method::shifted_convolution, options);
      const ZetaEvaluation bin = evaluate(field, s, parity, Method::binomial, options);
      const double allowed = conv.tail_bound + bin.tail_bound + 1e-12 * std::max(1.0, std::abs(bin.value));
      excess.add(std::abs(conv.value - bin.value) / allowed);
    }
  }
  report.checks.push_back(deviation_check(field_label(field) + " shifted convolution within tail bounds",
                                          excess.max, 1.0, "deviation relative to the allowed bound"));
}

using SuiteFn = void (*)(SuiteReport&, const QuadraticField&, std::uint64_t, const EvalOptions&);

struct SuiteEntry {
  std::string_view name;
  SuiteFn run;
};

const std::vector<SuiteEntry>& suites() {
  static const std::vector<SuiteEntry> table = {
      {"sequence", [](SuiteReport& r, const QuadraticField& f, std::uint64_t, const EvalOptions&) {
         suite_sequence(r, f);
       }},
      {"pell", [](SuiteReport& r, const QuadraticField& f, std::uint64_t, const EvalOptions&) { suite_pell(r, f); }},
      {"cross-method", [](SuiteReport& r, const QuadraticField& f, std::uint64_t seed, const EvalOptions& o) {
         suite_cross_method(r, f, seed, o);
       }},
      {"poles", [](SuiteReport& r, const QuadraticField& f, std::uint64_t, const EvalOptions& o) {
         suite_poles(r, f, o);
       }},
      {"special-values", [](SuiteReport& r, const QuadraticField& f, std::uint64_t, const EvalOptions& o) {
         suite_special_values(r, f, o);
       }},
      {"zeta-cancellation", [](SuiteReport& r, const QuadraticField& f, std::uint64_t seed, const EvalOptions&) {
         suite_zeta_cancellation(r, f, seed);
       }},
      {"region-overlap", [](SuiteReport& r, const QuadraticField& f, std::uint64_t seed, const EvalOptions& o) {
         suite_region_overlap(r, f, seed, o);
       }},
      {"shifted-convolution", [](SuiteReport& r, const QuadraticField& f, std::uint64_t, const EvalOptions& o) {
         suite_shifted_convolution(r, f, o);
       }},
  };
  return table;
}

}  // namespace

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::vector<std::string_view> suite_names() {
  std::vector<std::string_view> names;
  for (const auto& entry : suites()) names.push_back(entry.name);
  names.push_back("all");
  return names;
}

SuiteReport run_suite(std::string_view name, const std::vector<std::int64_t>& Ds, std::uint64_t seed,
                      const EvalOptions& options) {
  SuiteReport report;
  report.suite = std::string(name);
  bool found = false;
  for (const auto& entry : suites()) {
    if (name != "all" && entry.name != name) continue;
    found = true;
    for (std::int64_t D : Ds) {
      const QuadraticField field = make_field(D);
      const std::size_t before = report.checks.size();
      entry.run(report, field, seed, options);
      for (std::size_t i = before; i < report.checks.size(); ++i) {
        report.checks[i].name = std::string(entry.name) + ": " + report.checks[i].name;
      }
    }
  }
  if (!found) throw Error(ErrorKind::InvalidInput, "unknown suite '" + std::string(name) + "'");
  return report;
}

std::vector<Complex> random_grid(const QuadraticField& field, std::size_t count, std::uint64_t seed, double re_lo,
                                 double re_hi, double im_max, double min_pole_distance) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> re(re_lo, re_hi);
  std::uniform_real_distribution<double> im(-im_max, im_max);
  std::vector<Complex> points;
  points.reserve(count);
  while (points.size() < count) {
    const Complex s{re(rng), im(rng)};
    if (nearest_pole(field, s, PoleSet::split).distance > min_pole_distance) points.push_back(s);
  }
  return points;
}

}  // namespace fibzeta
