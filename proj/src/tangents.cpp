#include "assouad/tangents.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <optional>

#include "assouad/error.hpp"
#include "json_util.hpp"
#include "parallel.hpp"

namespace assouad {

SimilarityMap example_1_4_zoom(long k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "example 1.4 zoom needs k >= 1");
  return SimilarityMap::zoom_about({pow_int(Real(2), -k)}, pow_int(Real(4), k), Real(k));
}

ZoomResult zoom(const PointCloud& f, const ZoomSequence& z, unsigned workers) {
  if (f.dim() != z.window.dim()) throw_dimension_mismatch("zoom window", f.dim(), z.window.dim());
  if (z.k_first > z.k_last) throw Error(ErrorKind::InvalidArgument, "zoom kRange is empty");
  const std::size_t count = static_cast<std::size_t>(z.k_last - z.k_first + 1);
  std::vector<std::optional<PointCloud>> images(count);
  detail::parallel_for(count, workers, [&](std::size_t i, unsigned) {
    const SimilarityMap map = z.rule(z.k_first + static_cast<long>(i));
    if (map.dim() != f.dim()) throw_dimension_mismatch("zoom map", f.dim(), map.dim());
    images[i] = window_intersect(apply_similarity(map, f), z.window);
  });
  ZoomResult result;
  for (std::size_t i = 0; i < count; ++i) {
    const long k = z.k_first + static_cast<long>(i);
    if (images[i]) {
      result.frames.push_back({k, std::move(*images[i])});
    } else {
      result.warnings.push_back("k=" + std::to_string(k) + ": T_k(F) misses the window, skipped");
    }
  }
  if (result.frames.empty()) throw Error(ErrorKind::EmptyResult, "every zoom T_k(F) misses the window");
  return result;
}

ConvergenceTrace convergence_trace(const std::vector<ZoomFrame>& frames, const PointCloud& candidate) {
  ConvergenceTrace trace{{}, candidate};
  for (const auto& frame : frames) trace.rows.push_back({frame.k, hausdorff_distance(frame.cloud, candidate)});
  std::sort(trace.rows.begin(), trace.rows.end(), [](const TraceRow& a, const TraceRow& b) { return a.k < b.k; });
  return trace;
}

std::vector<TangentComparisonRow> tangent_comparison_1_4(std::size_t kmax, const std::vector<Real>& zoom_scales) {
  if (kmax < 4) throw Error(ErrorKind::InvalidArgument, "tangent comparison needs kmax >= 4");
  for (std::size_t i = 0; i < zoom_scales.size(); ++i) {
    if (!(zoom_scales[i] > 1)) {
      throw Error(ErrorKind::InvalidArgument, "zoom scales must exceed 1, got " + format_sig12(zoom_scales[i]));
    }
    if (i > 0 && !(zoom_scales[i] > zoom_scales[i - 1])) {
      throw Error(ErrorKind::InvalidArgument, "zoom scales must be increasing");
    }
  }
  const PointCloud f = example_1_4(kmax);
  const PointCloud f0 = example_1_4_skeleton(kmax);
  const Window unit_ball = Window::ball({Real(0)}, Real(1));
  std::vector<TangentComparisonRow> rows;
  for (const Real& c : zoom_scales) {
    long m = 1;
    while (c * pow_int(Real(2), -m) > 1) ++m;
    const SimilarityMap s = SimilarityMap::scaling(1, c);
    // Both images contain 0, so neither intersection is empty.
    const PointCloud near_f = *window_intersect(apply_similarity(s, f), unit_ball);
    const PointCloud near_f0 = *window_intersect(apply_similarity(s, f0), unit_ball);
    rows.push_back({c, m, hausdorff_distance(near_f, near_f0), c * Real(m) * pow_int(Real(4), -m),
                    Real(m) * pow_int(Real(2), -m)});
  }
  return rows;
}

ScaledWindows scaled_distance_window(const PointCloud& f, const std::vector<Real>& scales, const Real& span,
                                     std::size_t pair_cap) {
  if (!(span > 0)) throw Error(ErrorKind::InvalidArgument, "window span must be positive");
  for (const Real& c : scales) {
    if (!(c > 0)) throw Error(ErrorKind::InvalidArgument, "scales must be positive");
  }
  const PointCloud d = distance_set(f, pair_cap);
  const Window window = Window::box({Real(0)}, span);
  ScaledWindows out;
  for (const Real& c : scales) {
    auto hit = window_intersect(apply_similarity(SimilarityMap::scaling(1, c), d), window);
    if (hit) {
      out.windows.push_back({c, std::move(*hit)});
    } else {
      out.warnings.push_back("scale " + format_sig12(c) + ": window is empty, skipped");
    }
  }
  return out;
}

PointCloud uniform_grid(const Real& lo, const Real& hi, const Real& spacing) {
  if (!(spacing > 0) || !(lo <= hi)) throw Error(ErrorKind::InvalidArgument, "grid needs lo <= hi and spacing > 0");
  const Real steps = floor((hi - lo) / spacing * (1 + Real(1e-30)));
  std::vector<Real> coords;
  for (long i = 0; Real(i) <= steps; ++i) coords.push_back(lo + Real(i) * spacing);
  return PointCloud(1, std::move(coords));
}

Window window_from_json(const nlohmann::json& doc) {
  const std::string kind = doc.value("kind", std::string{});
  if (kind == "box") return Window::box(real_vector(doc.at("corner")), real_value(doc.at("side")));
  if (kind == "ball") return Window::ball(real_vector(doc.at("center")), real_value(doc.at("radius")));
  throw Error(ErrorKind::InvalidArgument, "window kind must be 'box' or 'ball'");
}

TangentZoomSpec tangent_zoom_from_json(const nlohmann::json& doc, std::size_t point_cap) {
  try {
    ConstructionSpec construction = construction_from_json(doc.at("construction"));
    const nlohmann::json& rule = doc.at("zoom");
    const std::string variant = rule.at("variant").get<std::string>();
    std::function<SimilarityMap(long)> make;
    long k_first = 1, k_last = 1;
    if (doc.contains("kRange")) {
      k_first = doc.at("kRange").at(0).get<long>();
      k_last = doc.at("kRange").at(1).get<long>();
    }
    if (variant == "example14") {
      make = example_1_4_zoom;
    } else if (variant == "powerScale") {
      const Real base = real_value(rule.at("base"));
      if (!(base > 0)) throw Error(ErrorKind::InvalidArgument, "powerScale base must be positive");
      std::vector<Real> anchor = real_vector(rule.at("anchor"));
      make = [base, anchor](long k) { return SimilarityMap::zoom_about(anchor, pow_int(base, k)); };
    } else if (variant == "custom") {
      auto table = std::make_shared<std::map<long, SimilarityMap>>();
      for (const auto& m : rule.at("maps")) {
        std::vector<Real> t = real_vector(m.at("translation"));
        const Real scale = real_value(m.at("scale"));
        const std::size_t d = t.size();
        SimilarityMap map = m.contains("orthogonal")
                                ? SimilarityMap(scale, real_vector(m.at("orthogonal")), std::move(t))
                                : SimilarityMap::scaling(d, scale, std::move(t));
        table->insert_or_assign(m.at("k").get<long>(), std::move(map));
      }
      if (table->empty()) throw Error(ErrorKind::InvalidArgument, "custom zoom needs at least one map");
      if (!doc.contains("kRange")) {
        k_first = table->begin()->first;
        k_last = table->rbegin()->first;
      }
      make = [table](long k) {
        const auto it = table->find(k);
        if (it == table->end()) {
          throw Error(ErrorKind::InvalidArgument, "custom zoom has no map for k=" + std::to_string(k));
        }
        return it->second;
      };
    } else {
      throw Error(ErrorKind::InvalidArgument,
                  "unknown zoom variant '" + variant + "' (expected example14, powerScale or custom)");
    }

    std::optional<PointCloud> candidate;
    if (doc.contains("candidate")) {
      const nlohmann::json& c = doc.at("candidate");
      const std::string kind = c.at("variant").get<std::string>();
      if (kind == "grid") {
        candidate = uniform_grid(real_value(c.at("lo")), real_value(c.at("hi")), real_value(c.at("spacing")));
      } else if (kind == "points") {
        candidate = cloud_from_rows(c.at("rows"));
      } else {
        candidate = generate(construction_from_json(c), point_cap);
      }
    }
    return {std::move(construction), ZoomSequence{make, window_from_json(doc.at("window")), k_first, k_last},
            std::move(candidate)};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("malformed tangent-zoom spec: ") + e.what());
  }
}

nlohmann::json to_json(const ConvergenceTrace& trace) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : trace.rows) rows.push_back({{"k", r.k}, {"distance", json_number(r.distance)}});
  return {{"rows", rows},
          {"candidate", {{"dim", trace.candidate.dim()}, {"points", trace.candidate.size()},
                         {"resolution", json_number(trace.candidate.resolution())}}}};
}

nlohmann::json to_json(const std::vector<TangentComparisonRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    out.push_back({{"scale", json_number(r.scale)},
                   {"m", r.m},
                   {"distance", json_number(r.distance)},
                   {"scaledBound", json_number(r.scaled_bound)},
                   {"bound", json_number(r.bound)}});
  }
  return out;
}

}  // namespace assouad
