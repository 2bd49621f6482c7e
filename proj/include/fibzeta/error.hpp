#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fibzeta {

enum class ErrorKind {
  InvalidInput,
  NotSquarefree,
  NormPlusOne,
  NormMinusOne,
  OutOfRegion,
  PoleProximity,
  NearOneSingularity,
  TooSlowConvergence,
  PoleAtNonpositiveInteger,
  PoleAtOne,
  ContourThroughPole,
};

std::string_view error_name(ErrorKind kind);

// Domain errors reject the input itself (bad field, wrong norm, region);
// everything else is a numerical failure at an otherwise valid input.
bool is_domain_error(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace fibzeta
