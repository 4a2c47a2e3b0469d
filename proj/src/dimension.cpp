#include "assouad/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <string>

#include "assouad/error.hpp"
#include "covering.hpp"
#include "json_util.hpp"
#include "parallel.hpp"

namespace assouad {
namespace {

struct LineFit {
  double slope = 0;
  double max_residual = 0;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit fit;
  fit.slope = sxx > 0 ? sxy / sxx : 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double predicted = my + fit.slope * (x[i] - mx);
    fit.max_residual = std::max(fit.max_residual, std::abs(y[i] - predicted));
  }
  return fit;
}

Real grid_side(std::size_t dim, const Real& r) {
  if (dim == 1) return r;
  return r / sqrt(Real(dim));
}

void require_trusted(const PointCloud& f, const Real& r, double guard) {
  if (!(r > 0)) throw Error(ErrorKind::InvalidArgument, "covering scale must be positive");
  const Real floor_scale = Real(guard) * f.resolution();
  if (r < floor_scale) {
    throw Error(ErrorKind::TrustFloor, "scale below trust floor: r=" + format_sig12(r) + " < " +
                                           format_sig12(guard) + " * resolution = " + format_sig12(floor_scale));
  }
}

double clamp_dimension(double raw, std::size_t dim) {
  return std::clamp(raw, 0.0, static_cast<double>(dim));
}

// Stratified indices floor((j + 1/2) n / m), plus snapped pinned centers, ascending and unique.
std::vector<std::size_t> choose_centers(const PointCloud& f, const AssouadConfig& config) {
  std::vector<std::size_t> centers;
  const std::size_t n = f.size();
  if (config.sample_centers) {
    if (n <= config.max_centers) {
      centers.resize(n);
      std::iota(centers.begin(), centers.end(), std::size_t{0});
    } else {
      for (std::size_t j = 0; j < config.max_centers; ++j) {
        centers.push_back(static_cast<std::size_t>((2 * j + 1) * n / (2 * config.max_centers)));
      }
    }
  }
  for (const auto& pin : config.pinned_centers) centers.push_back(detail::nearest_point(f, pin));
  std::sort(centers.begin(), centers.end());
  centers.erase(std::unique(centers.begin(), centers.end()), centers.end());
  return centers;
}

}  // namespace

std::string_view to_string(EstimateMethod method) noexcept {
  switch (method) {
    case EstimateMethod::Box: return "box";
    case EstimateMethod::Assouad: return "assouad";
    case EstimateMethod::Similarity: return "similarity";
  }
  return "unknown";
}

std::size_t covering_count(const PointCloud& f, const Real& r, double guard) {
  require_trusted(f, r, guard);
  return detail::CellIndex(f, grid_side(f.dim(), r)).cell_count();
}

DimensionEstimate box_dimension(const PointCloud& f, const Real& r_min, const Real& r_max, std::size_t levels,
                                double guard) {
  DimensionEstimate est;
  est.method = EstimateMethod::Box;
  est.r_min = r_min;
  est.r_max = r_max;
  if (levels < 3) throw Error(ErrorKind::InvalidArgument, "box_dimension needs at least 3 levels");
  if (!(r_min > 0) || !(r_min < r_max)) {
    throw Error(ErrorKind::InvalidArgument, "box_dimension needs 0 < rMin < rMax");
  }
  if (f.size() == 1) {
    est.diagnostics.degenerate = true;
    return est;
  }
  require_trusted(f, r_min, guard);
  const Real diam = diameter_bound(f);
  if (r_max > diam) {
    throw Error(ErrorKind::InvalidArgument, "rMax=" + format_sig12(r_max) + " exceeds the cloud diameter " +
                                                format_sig12(diam));
  }

  std::vector<double> xs, ys;
  const Real log_span = log(r_max / r_min);
  for (std::size_t i = 0; i < levels; ++i) {
    Real r = r_min * exp(log_span * Real(i) / Real(levels - 1));
    if (i == 0) r = r_min;
    if (i + 1 == levels) r = r_max;
    const std::size_t count = covering_count(f, r, guard);
    est.diagnostics.counts.push_back({r, count});
    xs.push_back(-to_double(log(r)));
    ys.push_back(std::log(static_cast<double>(count)));
  }
  const auto& counts = est.diagnostics.counts;
  const bool constant = std::all_of(counts.begin(), counts.end(),
                                    [&](const ScaleCount& c) { return c.count == counts.front().count; });
  if (constant) {
    est.diagnostics.degenerate = true;
    return est;
  }
  const LineFit fit = fit_line(xs, ys);
  est.diagnostics.raw_value = fit.slope;
  est.diagnostics.max_residual = fit.max_residual;
  est.value = clamp_dimension(fit.slope, f.dim());
  return est;
}

DimensionEstimate assouad_estimate(const PointCloud& f, const AssouadConfig& config) {
  if (config.big_scales.empty() || config.ratios.empty()) {
    throw Error(ErrorKind::InvalidArgument, "assouad_estimate needs at least one R and one ratio");
  }
  for (const Real& big : config.big_scales) {
    if (!(big > 0)) throw Error(ErrorKind::InvalidArgument, "big scales R must be positive");
  }
  for (const Real& rho : config.ratios) {
    if (!(rho > 1)) throw Error(ErrorKind::InvalidArgument, "ratios R/r must exceed 1");
  }
  for (const Real& big : config.big_scales) {
    for (const Real& rho : config.ratios) require_trusted(f, big / rho, config.guard);
  }

  DimensionEstimate est;
  est.method = EstimateMethod::Assouad;
  est.r_min = std::numeric_limits<Real>::infinity();
  for (const Real& big : config.big_scales) {
    est.r_max = std::max(est.r_max, big);
    for (const Real& rho : config.ratios) est.r_min = std::min(est.r_min, big / rho);
  }

  const std::vector<std::size_t> centers = choose_centers(f, config);
  if (centers.empty()) throw Error(ErrorKind::InvalidArgument, "assouad_estimate has no centers to sample");

  CoveringProfile profile;
  profile.source_resolution = f.resolution();
  profile.guard = config.guard;

  const std::size_t n_big = config.big_scales.size();
  const std::size_t n_ratio = config.ratios.size();
  std::vector<double> log_ratio(n_ratio);
  for (std::size_t j = 0; j < n_ratio; ++j) log_ratio[j] = to_double(log(config.ratios[j]));

  // counts[(c * n_big + b) * n_ratio + j]
  std::vector<std::size_t> counts(centers.size() * n_big * n_ratio, 0);
  const detail::BallQuery balls(f);
  const unsigned workers = detail::resolve_workers(config.workers);

  for (std::size_t b = 0; b < n_big; ++b) {
    const Real& big = config.big_scales[b];
    std::vector<detail::CellIndex> grids;
    grids.reserve(n_ratio);
    std::size_t max_cells = 0;
    for (const Real& rho : config.ratios) {
      grids.emplace_back(f, grid_side(f.dim(), big / rho));
      max_cells = std::max(max_cells, grids.back().cell_count());
    }

    if (f.dim() == 1) {
      detail::parallel_for(centers.size(), workers, [&](std::size_t c, unsigned) {
        const auto [first, last] = balls.range_1d(f.coord(centers[c], 0), big);
        for (std::size_t j = 0; j < n_ratio; ++j) {
          counts[(c * n_big + b) * n_ratio + j] = grids[j][last - 1] - grids[j][first] + 1;
        }
      });
      continue;
    }

    struct Scratch {
      std::vector<std::size_t> members;
      std::vector<std::uint64_t> stamp;
      std::uint64_t epoch = 0;
    };
    std::vector<Scratch> scratch(workers);
    for (auto& s : scratch) s.stamp.assign(max_cells, 0);
    detail::parallel_for(centers.size(), workers, [&](std::size_t c, unsigned w) {
      Scratch& s = scratch[w];
      balls.collect(f.point(centers[c]), big, s.members);
      for (std::size_t j = 0; j < n_ratio; ++j) {
        ++s.epoch;
        std::size_t distinct = 0;
        for (std::size_t i : s.members) {
          const auto id = grids[j][i];
          if (s.stamp[id] != s.epoch) {
            s.stamp[id] = s.epoch;
            ++distinct;
          }
        }
        counts[(c * n_big + b) * n_ratio + j] = distinct;
      }
    });
  }

  double best = -1, worst = std::numeric_limits<double>::infinity();
  std::size_t best_c = 0, best_b = 0;
  bool all_equal = true;
  std::vector<double> ys(n_ratio);
  for (std::size_t c = 0; c < centers.size(); ++c) {
    const auto x = f.point(centers[c]);
    for (std::size_t b = 0; b < n_big; ++b) {
      for (std::size_t j = 0; j < n_ratio; ++j) {
        const std::size_t count = counts[(c * n_big + b) * n_ratio + j];
        profile.entries.push_back({std::vector<Real>(x.begin(), x.end()), config.big_scales[b],
                                   config.big_scales[b] / config.ratios[j], count});
        ys[j] = std::log(static_cast<double>(count));
        if (count != counts.front()) all_equal = false;
      }
      const double exponent = n_ratio == 1 ? ys[0] / log_ratio[0] : fit_line(log_ratio, ys).slope;
      // Strict comparison keeps the first (lowest center index, then lowest R index) maximizer.
      if (exponent > best) {
        best = exponent;
        best_c = c;
        best_b = b;
      }
      worst = std::min(worst, exponent);
    }
  }

  auto& diag = est.diagnostics;
  diag.localizations = centers.size() * n_big;
  diag.raw_value = best;
  diag.spread = best - worst;
  diag.degenerate = all_equal;
  const auto arg = f.point(centers[best_c]);
  diag.argmax_center.assign(arg.begin(), arg.end());
  diag.argmax_big_scale = config.big_scales[best_b];
  diag.profile = std::move(profile);
  est.value = clamp_dimension(best, f.dim());
  return est;
}

double similarity_dimension(std::span<const Real> ratios) {
  if (ratios.empty()) throw Error(ErrorKind::InvalidArgument, "similarity_dimension needs at least one ratio");
  std::vector<Real> logs;
  for (const Real& c : ratios) {
    if (!(c > 0 && c < 1)) {
      throw Error(ErrorKind::InvalidArgument, "similarity ratios must lie in (0,1), got " + format_sig12(c));
    }
    logs.push_back(log(c));
  }
  // sum c_i^s - 1 is strictly decreasing in s and positive at s = 0.
  auto excess = [&](const Real& s) {
    Real total = 0;
    for (const Real& lc : logs) total += exp(s * lc);
    return total - 1;
  };
  Real lo = 0, hi = 1;
  while (excess(hi) > 0) {
    lo = hi;
    hi *= 2;
  }
  const Real tolerance = Real(1e-12);
  while (hi - lo > tolerance) {
    const Real mid = (lo + hi) / 2;
    if (excess(mid) > 0) lo = mid; else hi = mid;
  }
  return to_double((lo + hi) / 2);
}

double falconer_erdogan_formula(int d, double s) {
  if (d < 2) throw Error(ErrorKind::InvalidArgument, "Falconer-Erdogan bounds need d >= 2");
  if (!(s >= 0 && s <= d)) {
    throw Error(ErrorKind::InvalidArgument, "dimension s must lie in [0, d], got " + format_sig12(s));
  }
  const double first = (6.0 * s + 2.0 - 3.0 * d) / 4.0;
  const double second = s - (d - 1) / 2.0;
  return std::max({first, second, 0.0});
}

double falconer_erdogan_bound(int d, double s) {
  const double formula = falconer_erdogan_formula(d, s);
  if (s >= d / 2.0 + 1.0 / 3.0) return 1.0;
  return formula;
}

double exception_bound(int d, int k, double s_f, double s) {
  if (k < 1 || k >= d) {
    throw Error(ErrorKind::InvalidArgument, "exception_bound needs 1 <= k < d (got k=" + std::to_string(k) +
                                                ", d=" + std::to_string(d) + ")");
  }
  if (!(s_f >= 0 && s_f <= d)) {
    throw Error(ErrorKind::InvalidArgument, "dim_A F must lie in [0, d], got " + format_sig12(s_f));
  }
  const double cap = std::min(static_cast<double>(k), s_f);
  if (!(s > 0)) throw Error(ErrorKind::InvalidArgument, "exception_bound needs s > 0, got " + format_sig12(s));
  if (s > cap) {
    throw Error(ErrorKind::InvalidArgument, "exception_bound needs s <= min{k, dim_A F} = " + format_sig12(cap) +
                                                ", got " + format_sig12(s));
  }
  return static_cast<double>(k * (d - k)) + s - cap;
}

nlohmann::json to_json(const CoveringProfile& profile) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : profile.entries) {
    entries.push_back({{"center", json_numbers(e.center)},
                       {"R", json_number(e.big_scale)},
                       {"r", json_number(e.small_scale)},
                       {"count", e.count}});
  }
  return {{"sourceResolution", json_number(profile.source_resolution)},
          {"guard", json_number(profile.guard)},
          {"entries", entries}};
}

nlohmann::json to_json(const DimensionEstimate& estimate) {
  const auto& d = estimate.diagnostics;
  nlohmann::json diag = {{"maxResidual", json_number(d.max_residual)},
                         {"spread", json_number(d.spread)},
                         {"rawValue", json_number(d.raw_value)},
                         {"degenerate", d.degenerate},
                         {"localizations", d.localizations}};
  if (!d.argmax_center.empty()) {
    diag["argmaxCenter"] = json_numbers(d.argmax_center);
    diag["argmaxR"] = json_number(d.argmax_big_scale);
  }
  if (!d.counts.empty()) {
    nlohmann::json counts = nlohmann::json::array();
    for (const auto& c : d.counts) counts.push_back({{"r", json_number(c.r)}, {"count", c.count}});
    diag["counts"] = counts;
  }
  if (d.profile) diag["profile"] = to_json(*d.profile);
  return {{"value", json_number(estimate.value)},
          {"method", std::string(to_string(estimate.method))},
          {"scaleWindow", {json_number(estimate.r_min), json_number(estimate.r_max)}},
          {"diagnostics", diag}};
}

void write_counts_csv(std::ostream& out, const DimensionEstimate& estimate) {
  out << "r,count\n";
  for (const auto& c : estimate.diagnostics.counts) out << format_sig12(c.r) << ',' << c.count << '\n';
}

void write_profile_csv(std::ostream& out, const CoveringProfile& profile) {
  const std::size_t d = profile.entries.empty() ? 0 : profile.entries.front().center.size();
  for (std::size_t k = 0; k < d; ++k) out << "x" << k << ',';
  out << "R,r,count\n";
  for (const auto& e : profile.entries) {
    for (const Real& x : e.center) out << format_sig12(x) << ',';
    out << format_sig12(e.big_scale) << ',' << format_sig12(e.small_scale) << ',' << e.count << '\n';
  }
}

}  // namespace assouad
