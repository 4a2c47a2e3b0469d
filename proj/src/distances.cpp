#include "assouad/distances.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "assouad/constructions.hpp"
#include "assouad/error.hpp"
#include "json_util.hpp"
#include "parallel.hpp"

namespace assouad {
namespace {

void require_pairs(std::size_t n, std::size_t cap) {
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  if (pairs > static_cast<double>(cap)) {
    throw Error(ErrorKind::CapExceeded, "distance set would enumerate " + format_sig12(pairs) +
                                            " pairs, above the cap of " + std::to_string(cap));
  }
}

}  // namespace

PointCloud distance_set(const PointCloud& f, std::size_t pair_cap, unsigned workers) {
  const std::size_t n = f.size();
  require_pairs(n, pair_cap);
  std::vector<std::vector<Real>> rows(n);
  detail::parallel_for(n, workers, [&](std::size_t i, unsigned) {
    auto& row = rows[i];
    row.reserve(n - i);
    const auto x = f.point(i);
    for (std::size_t j = i; j < n; ++j) row.push_back(distance(x, f.point(j)));
  });
  std::vector<Real> all;
  all.reserve(n * (n + 1) / 2);
  for (auto& row : rows) all.insert(all.end(), row.begin(), row.end());
  return PointCloud(1, std::move(all), 2 * f.resolution());
}

PointCloud distance_set_via_projection(const PointCloud& f, std::size_t pair_cap) {
  if (f.dim() != 1) throw_dimension_mismatch("distance_set_via_projection input", 1, f.dim());
  require_pairs(f.size(), pair_cap);
  const PointCloud square = product(f, f, f.size() * f.size());
  std::vector<Real> diffs(square.size());
  for (std::size_t i = 0; i < square.size(); ++i) diffs[i] = abs(square.coord(i, 0) - square.coord(i, 1));
  // The product's resolution is sqrt(2) delta; the difference coordinate moves by at most 2 delta.
  return PointCloud(1, std::move(diffs), 2 * f.resolution());
}

GapReport log_lattice_gaps(double a, double b, long m, double window_lo, double window_hi) {
  if (!(a > 0 && a < 1) || !(b > 0 && b < 1)) {
    throw Error(ErrorKind::InvalidArgument, "log_lattice_gaps needs a, b in (0,1)");
  }
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "log_lattice_gaps needs M >= 1");
  if (!(window_lo < window_hi) || !(window_hi < 0)) {
    throw Error(ErrorKind::InvalidArgument, "window must be an interval of positive length inside (-inf, 0)");
  }
  GapReport report{window_lo, window_hi, 0, 0, a, b, m};

  const double la = std::log(a);
  const double lb = std::log(b);
  std::vector<double> lattice;
  lattice.reserve(static_cast<std::size_t>((m + 1) * (2 * m + 1)));
  for (long i = 0; i <= m; ++i) {
    for (long j = -m; j <= m; ++j) lattice.push_back(static_cast<double>(i) * la + static_cast<double>(j) * lb);
  }
  std::sort(lattice.begin(), lattice.end());
  // Coincident lattice points (rational log ratios) differ only by rounding.
  auto same = [](double x, double y) { return std::abs(x - y) <= 1e-12 * std::max(1.0, std::abs(x)); };
  lattice.erase(std::unique(lattice.begin(), lattice.end(), same), lattice.end());

  const auto first = std::lower_bound(lattice.begin(), lattice.end(), window_lo);
  const auto last = std::upper_bound(lattice.begin(), lattice.end(), window_hi);
  if (first == last) {
    throw Error(ErrorKind::EmptyResult, "no lattice point m ln a + n ln b falls in [" + format_sig12(window_lo) +
                                            ", " + format_sig12(window_hi) + "]; increase M or widen the window");
  }
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> chain;
  chain.push_back(first == lattice.begin() ? -inf : *(first - 1));
  chain.insert(chain.end(), first, last);
  chain.push_back(last == lattice.end() ? inf : *last);
  for (std::size_t i = 1; i < chain.size(); ++i) report.max_gap = std::max(report.max_gap, chain[i] - chain[i - 1]);
  report.sample_count = chain.size();
  return report;
}

nlohmann::json to_json(const GapReport& report) {
  nlohmann::json max_gap = std::isfinite(report.max_gap) ? json_number(report.max_gap) : nlohmann::json("inf");
  return {{"window", {json_number(report.window_lo), json_number(report.window_hi)}},
          {"maxGap", max_gap},
          {"sampleCount", report.sample_count},
          {"a", json_number(report.a)},
          {"b", json_number(report.b)},
          {"M", report.m}};
}

}  // namespace assouad
