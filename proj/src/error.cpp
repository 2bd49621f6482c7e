#include "fibzeta/error.hpp"

namespace fibzeta {

std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::NotSquarefree: return "NotSquarefree";
    case ErrorKind::NormPlusOne: return "NormPlusOne";
    case ErrorKind::NormMinusOne: return "NormMinusOne";
    case ErrorKind::OutOfRegion: return "OutOfRegion";
    case ErrorKind::PoleProximity: return "PoleProximity";
    case ErrorKind::NearOneSingularity: return "NearOneSingularity";
    case ErrorKind::TooSlowConvergence: return "TooSlowConvergence";
    case ErrorKind::PoleAtNonpositiveInteger: return "PoleAtNonpositiveInteger";
    case ErrorKind::PoleAtOne: return "PoleAtOne";
    case ErrorKind::ContourThroughPole: return "ContourThroughPole";
  }
  return "Unknown";
}

bool is_domain_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput:
    case ErrorKind::NotSquarefree:
    case ErrorKind::NormPlusOne:
    case ErrorKind::NormMinusOne:
    case ErrorKind::OutOfRegion:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(error_name(kind)) + ": " + message), kind_(kind) {}

}  // namespace fibzeta
