#include "assouad/error.hpp"

namespace assouad {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid_argument";
    case ErrorKind::DimensionMismatch: return "dimension_mismatch";
    case ErrorKind::CapExceeded: return "cap_exceeded";
    case ErrorKind::TrustFloor: return "trust_floor";
    case ErrorKind::EmptyResult: return "empty_result";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

void throw_dimension_mismatch(std::string_view what, std::size_t lhs, std::size_t rhs) {
  throw Error(ErrorKind::DimensionMismatch,
              std::string(what) + ": dimension mismatch (" + std::to_string(lhs) + " vs " +
                  std::to_string(rhs) + ")");
}

}  // namespace assouad
