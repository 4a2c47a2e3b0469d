#pragma once

#include <boost/multiprecision/float128.hpp>

#include <string>

namespace assouad {

// Coordinates are IEEE binary128. Zoom sequences such as x -> 4^k (x - 2^-k) / k
// need points 2^-k + l 4^-k to stay distinct for k up to 64, which is beyond
// the 53 bits of a double.
using Real = boost::multiprecision::float128;

inline double to_double(const Real& x) { return x.convert_to<double>(); }

/// Rounds to 12 significant digits; all reported numbers go through this.
double round_sig12(double x);

/// Formats with 12 significant digits ("%.12g").
std::string format_sig12(double x);
inline std::string format_sig12(const Real& x) { return format_sig12(to_double(x)); }

/// base^exponent by repeated squaring; exact whenever the result is representable.
Real pow_int(Real base, long long exponent);

/// Parses a decimal string at full binary128 precision.
Real parse_real(const std::string& text);

}  // namespace assouad
