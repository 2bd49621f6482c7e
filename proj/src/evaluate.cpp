#include "fibzeta/evaluate.hpp"

#include <algorithm>

#include "fibzeta/crosscheck.hpp"
#include "fibzeta/poisson.hpp"

namespace fibzeta {

namespace {

ZetaEvaluation add(const ZetaEvaluation& x, const ZetaEvaluation& y) {
  ZetaEvaluation out = x;
  out.value += y.value;
  out.parity = Parity::combined;
  out.terms_used += y.terms_used;
  out.tail_bound += y.tail_bound;
  out.nearest_pole_distance = std::min(x.nearest_pole_distance, y.nearest_pole_distance);
  return out;
}

template <class Odd, class Even>
ZetaEvaluation by_parity(Parity parity, Odd odd, Even even) {
  switch (parity) {
    case Parity::odd: return odd();
    case Parity::even: return even();
    case Parity::combined: return add(odd(), even());
  }
  throw Error(ErrorKind::InvalidInput, "unknown parity");
}

}  // namespace

std::optional<Method> parse_method(std::string_view name) {
  for (Method m : {Method::direct, Method::binomial, Method::poisson, Method::shifted_convolution}) {
    if (method_name(m) == name) return m;
  }
  return std::nullopt;
}

std::optional<Parity> parse_parity(std::string_view name) {
  for (Parity p : {Parity::odd, Parity::even, Parity::combined}) {
    if (parity_name(p) == name) return p;
  }
  return std::nullopt;
}

ZetaEvaluation evaluate(const QuadraticField& field, Complex s, Parity parity, Method method,
                        const EvalOptions& options) {
  switch (method) {
    case Method::direct:
      return z_direct(field, s, parity, direct_terms_for(field, s, parity, options.tol));
    case Method::binomial:
      switch (parity) {
        case Parity::odd: return z_odd_binomial(field, s, options);
        case Parity::even: return z_even_binomial(field, s, options);
        case Parity::combined: return z_combined_binomial(field, s, options);
      }
      break;
    case Method::poisson:
      return by_parity(
          parity, [&] { return z_odd_poisson(field, s, options); },
          [&] { return z_even_poisson(field, s, options); });
    case Method::shifted_convolution:
      return by_parity(
          parity, [&] { return z_odd_shifted_convolution(field, s, options.shifted_n_max); },
          [&] { return z_even_shifted_convolution(field, s, options.shifted_n_max); });
  }
  throw Error(ErrorKind::InvalidInput, "unknown method");
}

}  // namespace fibzeta
