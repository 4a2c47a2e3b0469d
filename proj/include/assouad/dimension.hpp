#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "assouad/core_geom.hpp"

namespace assouad {

/// Scales below guard * resolution are not trusted: the cloud is discrete there.
inline constexpr double kDefaultTrustGuard = 4.0;
inline constexpr std::size_t kDefaultMaxCenters = 512;

/// One localized covering count N_r(B(x, R) ∩ F).
struct CoveringEntry {
  std::vector<Real> center;
  Real big_scale;
  Real small_scale;
  std::size_t count;
};

struct CoveringProfile {
  std::vector<CoveringEntry> entries;
  Real source_resolution = 0;
  double guard = kDefaultTrustGuard;
};

enum class EstimateMethod { Box, Assouad, Similarity };
std::string_view to_string(EstimateMethod method) noexcept;

struct ScaleCount {
  Real r;
  std::size_t count;
};

struct FitDiagnostics {
  double max_residual = 0;  // largest |residual| of the log-log fit (box)
  double spread = 0;        // max - min of per-localization exponents (assouad)
  double raw_value = 0;     // fitted value before clamping into [0, d]
  bool degenerate = false;  // counts never change with scale
  std::size_t localizations = 0;
  std::vector<Real> argmax_center;
  Real argmax_big_scale = 0;
  std::vector<ScaleCount> counts;          // box: (r, N_r) per level
  std::optional<CoveringProfile> profile;  // assouad: every sampled (x, R, r)
};

struct DimensionEstimate {
  double value = 0;
  EstimateMethod method = EstimateMethod::Box;
  Real r_min = 0;
  Real r_max = 0;
  FitDiagnostics diagnostics;
};

/// Occupied cells of the origin-anchored grid with side r / sqrt(d). Every cell
/// has diameter <= r, so this upper-bounds the optimal cover size.
std::size_t covering_count(const PointCloud& f, const Real& r, double guard = kDefaultTrustGuard);

/// Least-squares slope of log N_r against log(1/r) over `levels` geometric scales.
DimensionEstimate box_dimension(const PointCloud& f, const Real& r_min, const Real& r_max, std::size_t levels,
                                double guard = kDefaultTrustGuard);

struct AssouadConfig {
  std::vector<Real> big_scales;               // R values
  std::vector<Real> ratios;                   // R / r values, all > 1
  std::size_t max_centers = kDefaultMaxCenters;
  bool sample_centers = true;                 // stratified sample of the cloud's own points
  std::vector<std::vector<Real>> pinned_centers;  // snapped to the nearest cloud point
  double guard = kDefaultTrustGuard;
  unsigned workers = 0;  // 0: hardware concurrency
};

/// Two-scale exponent: the max over sampled (x, R) of the fitted exponent of
/// log N_r(B(x, R) ∩ f) against log(R / r). With a single ratio the exponent is
/// log N / log(R / r). On a finite-resolution cloud this estimates dim_A from below.
DimensionEstimate assouad_estimate(const PointCloud& f, const AssouadConfig& config);

/// The s >= 0 with sum c_i^s = 1, by bisection to 1e-12.
double similarity_dimension(std::span<const Real> ratios);

/// Lower bound for dim_A D(F) given dim_A F = s in R^d (d >= 2); 1 from d/2 + 1/3 on.
double falconer_erdogan_bound(int d, double s);
/// The two-branch max without the threshold rule, clamped below at 0.
double falconer_erdogan_formula(int d, double s);

/// k(d-k) + s - min{k, sF}: bound on the Hausdorff dimension of projections in
/// G(d,k) whose image has Assouad dimension below s.
double exception_bound(int d, int k, double s_f, double s);

nlohmann::json to_json(const CoveringProfile& profile);
nlohmann::json to_json(const DimensionEstimate& estimate);

/// "r,count" rows of a box estimate.
void write_counts_csv(std::ostream& out, const DimensionEstimate& estimate);
/// "center...,R,r,count" rows of an Assouad profile.
void write_profile_csv(std::ostream& out, const CoveringProfile& profile);

}  // namespace assouad
