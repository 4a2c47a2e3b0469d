#include "assouad/real.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

#include "assouad/error.hpp"

namespace assouad {

double round_sig12(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

std::string format_sig12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

Real pow_int(Real base, long long exponent) {
  if (exponent < 0) return Real(1) / pow_int(base, -exponent);
  Real result = 1;
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

Real parse_real(const std::string& text) {
  try {
    const auto first = text.find_first_not_of(" \t\r\n");
    const auto last = text.find_last_not_of(" \t\r\n");
    if (first == std::string::npos) throw std::invalid_argument(text);
    const std::string trimmed = text.substr(first, last - first + 1);
    std::size_t pos = 0;
    // std::stod validates the syntax; the value is then re-read at full precision.
    (void)std::stod(trimmed, &pos);
    if (pos != trimmed.size()) throw std::invalid_argument(text);
    return Real(trimmed);
  } catch (const std::exception&) {
    throw Error(ErrorKind::InvalidArgument, "not a number: '" + text + "'");
  }
}

}  // namespace assouad
