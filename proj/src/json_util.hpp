#pragma once

#include <span>
#include <vector>

#include <json.hpp>

#include "assouad/core_geom.hpp"
#include "assouad/error.hpp"

namespace assouad {

inline nlohmann::json json_number(double x) { return round_sig12(x); }
inline nlohmann::json json_number(const Real& x) { return round_sig12(to_double(x)); }

inline nlohmann::json json_numbers(std::span<const Real> xs) {
  nlohmann::json out = nlohmann::json::array();
  for (const Real& x : xs) out.push_back(json_number(x));
  return out;
}

inline nlohmann::json json_rows(const PointCloud& f) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < f.size(); ++i) rows.push_back(json_numbers(f.point(i)));
  return rows;
}

/// Accepts a JSON number or a decimal string (strings keep full precision).
inline Real real_value(const nlohmann::json& v) {
  if (v.is_string()) return parse_real(v.get<std::string>());
  if (v.is_number()) return Real(v.get<double>());
  throw Error(ErrorKind::InvalidArgument, "expected a number, got " + v.dump());
}

inline std::vector<Real> real_vector(const nlohmann::json& v) {
  if (!v.is_array()) throw Error(ErrorKind::InvalidArgument, "expected an array of numbers, got " + v.dump());
  std::vector<Real> out;
  for (const auto& x : v) out.push_back(real_value(x));
  return out;
}

inline PointCloud cloud_from_rows(const nlohmann::json& rows, Real resolution = 0) {
  std::vector<std::vector<Real>> pts;
  for (const auto& r : rows) pts.push_back(real_vector(r));
  return PointCloud::from_rows(pts, resolution);
}

}  // namespace assouad
