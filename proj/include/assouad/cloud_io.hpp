#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "assouad/core_geom.hpp"

namespace assouad {

// Point-cloud CSV:
//   # dim=<d> resolution=<delta>
//   x1,...,xd
//   ...
// Coordinates are written with 12 significant digits.

PointCloud read_cloud_csv(std::istream& in, const std::string& source = "<stream>");
PointCloud read_cloud_csv(const std::filesystem::path& path);

void write_cloud_csv(std::ostream& out, const PointCloud& f);
void write_cloud_csv(const std::filesystem::path& path, const PointCloud& f);

}  // namespace assouad
