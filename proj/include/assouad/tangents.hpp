#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "assouad/constructions.hpp"
#include "assouad/distances.hpp"

namespace assouad {

struct ZoomSequence {
  std::function<SimilarityMap(long k)> rule;
  Window window;
  long k_first;
  long k_last;
};

/// T_k(x) = 4^k (x - 2^-k) / k, the zoom that blows Example 1.4 up onto {l/k}.
SimilarityMap example_1_4_zoom(long k);

struct ZoomFrame {
  long k;
  PointCloud cloud;
};

struct ZoomResult {
  std::vector<ZoomFrame> frames;  // non-empty intersections, ascending k
  std::vector<std::string> warnings;
};

/// T_k(f) ∩ X for each k in range; empty intersections are skipped with a warning.
ZoomResult zoom(const PointCloud& f, const ZoomSequence& z, unsigned workers = 0);

struct TraceRow {
  long k;
  Real distance;
};

struct ConvergenceTrace {
  std::vector<TraceRow> rows;
  PointCloud candidate;
};

ConvergenceTrace convergence_trace(const std::vector<ZoomFrame>& frames, const PointCloud& candidate);

struct TangentComparisonRow {
  Real scale;           // c_n
  long m;               // min{k >= 1 : c_n 2^-k <= 1}
  Real distance;        // d_H(S_n(F) ∩ B(0,1), S_n(F0) ∩ B(0,1))
  Real scaled_bound;    // c_n m 4^-m
  Real bound;           // m 2^-m
};

/// Compares the blow-ups of Example 1.4 and of its skeleton F0 = {0} ∪ {2^-k} at 0,
/// both truncated at kmax.
std::vector<TangentComparisonRow> tangent_comparison_1_4(std::size_t kmax, const std::vector<Real>& zoom_scales);

struct ScaledWindow {
  Real scale;
  PointCloud cloud;
};

struct ScaledWindows {
  std::vector<ScaledWindow> windows;
  std::vector<std::string> warnings;
};

/// c_k D(f) ∩ [0, span] for each c_k.
ScaledWindows scaled_distance_window(const PointCloud& f, const std::vector<Real>& scales, const Real& span,
                                     std::size_t pair_cap = kDefaultPairCap);

/// Uniform grid {lo + i h} ∩ [lo, hi] in dimension 1.
PointCloud uniform_grid(const Real& lo, const Real& hi, const Real& spacing);

// Zoom rules as JSON:
//   {"variant": "example14"}
//   {"variant": "powerScale", "base": b, "anchor": [..]}            x -> b^k (x - anchor)
//   {"variant": "custom", "maps": [{"k": k, "scale": c, "orthogonal": [..], "translation": [..]}, ...]}
// Windows: {"kind": "box", "corner": [..], "side": s} or {"kind": "ball", "center": [..], "radius": r}.
struct TangentZoomSpec {
  ConstructionSpec construction;
  ZoomSequence zoom;
  std::optional<PointCloud> candidate;
};

/// {"construction": spec, "zoom": rule, "window": window, "kRange": [a, b], "candidate": ...}.
/// The candidate is a construction spec, {"variant": "grid", "lo", "hi", "spacing"}, or
/// {"variant": "points", "rows": [..]}.
TangentZoomSpec tangent_zoom_from_json(const nlohmann::json& doc, std::size_t point_cap = kDefaultPointCap);
Window window_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const ConvergenceTrace& trace);
nlohmann::json to_json(const std::vector<TangentComparisonRow>& rows);

}  // namespace assouad
