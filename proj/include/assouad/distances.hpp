#pragma once

#include <cstddef>

#include <json.hpp>

#include "assouad/core_geom.hpp"

namespace assouad {

inline constexpr std::size_t kDefaultPairCap = 10'000'000;

/// D(F) = {|x - y| : x, y in F} as a 1-d cloud, 0 included; resolution 2 delta.
PointCloud distance_set(const PointCloud& f, std::size_t pair_cap = kDefaultPairCap, unsigned workers = 0);

/// The same set built as |.| of the difference coordinate of f x f (1-d clouds only).
PointCloud distance_set_via_projection(const PointCloud& f, std::size_t pair_cap = kDefaultPairCap);

struct GapReport {
  double window_lo = 0;
  double window_hi = 0;
  double max_gap = 0;  // +inf when no lattice point lies beyond one side of the window
  std::size_t sample_count = 0;
  double a = 0;
  double b = 0;
  long m = 0;
};

/// Largest gap of {m ln a + n ln b : 0 <= m <= M, -M <= n <= M} around the window.
///
/// Gaps are measured between consecutive lattice points from the nearest point
/// below the window to the nearest point above it, so a gap straddling a window
/// endpoint counts in full.
GapReport log_lattice_gaps(double a, double b, long m, double window_lo, double window_hi);

nlohmann::json to_json(const GapReport& report);

}  // namespace assouad
