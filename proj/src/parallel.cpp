#include "fibzeta/parallel.hpp"

#include <omp.h>

#include "fibzeta/crosscheck.hpp"
#include "fibzeta/evaluate.hpp"

namespace fibzeta {

namespace {

GridCell evaluate_cell(const QuadraticField& field, std::size_t index, Complex s, Method method,
                       Parity parity, const EvalOptions& options) {
  GridCell cell;
  cell.index = index;
  cell.s = s;
  cell.method = method;
  cell.pole_distance = nearest_pole(field, s, pole_set_for(field, parity)).distance;
  if (cell.pole_distance <= options.pole_guard) {
    cell.failure = ErrorKind::PoleProximity;
    cell.message = "within the pole guard";
    return cell;
  }
  try {
    cell.result = evaluate(field, s, parity, method, options);
  } catch (const Error& e) {
    cell.failure = e.kind();
    cell.message = e.what();
  }
  return cell;
}

std::vector<GridCell> make_cells(std::size_t count) { return std::vector<GridCell>(count); }

}  // namespace

std::vector<GridCell> evaluate_grid(const QuadraticField& field, const std::vector<Complex>& points,
                                    Parity parity, const std::vector<Method>& methods,
                                    const EvalOptions& options) {
  const std::size_t per_point = methods.size();
  const auto total = static_cast<std::int64_t>(points.size() * per_point);
  std::vector<GridCell> cells = make_cells(static_cast<std::size_t>(total));
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < total; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    cells[idx] = evaluate_cell(field, idx, points[idx / per_point], methods[idx % per_point], parity, options);
  }
  return cells;
}

std::vector<GridCell> evaluate_grid_serial(const QuadraticField& field, const std::vector<Complex>& points,
                                           Parity parity, const std::vector<Method>& methods,
                                           const EvalOptions& options) {
  std::vector<GridCell> cells;
  cells.reserve(points.size() * methods.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    for (Method method : methods) {
      cells.push_back(evaluate_cell(field, cells.size(), points[p], method, parity, options));
    }
  }
  return cells;
}

std::vector<Membership> membership_scan(const QuadraticField& field, std::uint64_t n_max,
                                        MembershipQuery query) {
  std::vector<Membership> verdicts(n_max);
  const auto count = static_cast<std::int64_t>(n_max);
#pragma omp parallel for schedule(static, 4096)
  for (std::int64_t i = 0; i < count; ++i) {
    verdicts[static_cast<std::size_t>(i)] = is_fib(field, BigInt(static_cast<unsigned long>(i + 1)), query).verdict;
  }
  return verdicts;
}

std::vector<Membership> membership_scan_serial(const QuadraticField& field, std::uint64_t n_max,
                                               MembershipQuery query) {
  std::vector<Membership> verdicts;
  verdicts.reserve(n_max);
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    verdicts.push_back(is_fib(field, BigInt(static_cast<unsigned long>(n)), query).verdict);
  }
  return verdicts;
}

ZetaEvaluation shifted_convolution_parallel(const QuadraticField& field, Complex s, std::uint64_t n_max,
                                            Parity parity) {
  if (parity == Parity::combined) throw Error(ErrorKind::InvalidInput, "parity must be odd or even");
  if (field.norm_eps() != -1) throw Error(ErrorKind::NormPlusOne, "shifted convolution needs N(eps) = -1");
  if (s.real() <= 0.0) throw Error(ErrorKind::OutOfRegion, "shifted convolution needs Re s > 0");

  constexpr std::uint64_t kChunk = 8192;
  const std::uint64_t t_max = isqrt(n_max);
  const auto chunks = static_cast<std::int64_t>((t_max + kChunk - 1) / kChunk);
  const long shift = (parity == Parity::odd ? -1L : 1L) * field.ell();
  std::vector<Complex> partial(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t c = 0; c < chunks; ++c) {
    const std::uint64_t lo = static_cast<std::uint64_t>(c) * kChunk + 1;
    const std::uint64_t hi = std::min(t_max, lo + kChunk - 1);
    Complex acc = 0.0;
    for (std::uint64_t t = lo; t <= hi; ++t) {
      const int r = r1(BigInt(BigInt(field.D()) * t * t + shift));
      if (r != 0) acc += 0.5 * r * std::exp(-s * std::log(static_cast<double>(t)));
    }
    partial[static_cast<std::size_t>(c)] = acc;
  }
  Complex sum = 0.0;
  for (const Complex& p : partial) sum += p;

  ZetaEvaluation result;
  result.value = sum;
  result.method = Method::shifted_convolution;
  result.parity = parity;
  result.terms_used = t_max;
  result.tail_bound = shifted_convolution_tail_bound(field, s, n_max, parity);
  return result;
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace fibzeta
