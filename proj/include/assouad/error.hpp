#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace assouad {

enum class ErrorKind {
  InvalidArgument,
  DimensionMismatch,
  CapExceeded,
  TrustFloor,
  EmptyResult,
  Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library. The kind lets the CLI report
/// structured errors without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void throw_dimension_mismatch(std::string_view what, std::size_t lhs,
                                           std::size_t rhs);

}  // namespace assouad
