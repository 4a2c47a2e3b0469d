#include "assouad/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "assouad/error.hpp"
#include "json_util.hpp"

namespace assouad {
namespace {

void require_cap(double projected, std::size_t cap, const std::string& what) {
  if (projected > static_cast<double>(cap)) {
    throw Error(ErrorKind::CapExceeded, what + " would produce " + format_sig12(projected) +
                                            " points, above the cap of " + std::to_string(cap));
  }
}

void validate_example_2_7(int n, int k) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "Example 2.7 requires N >= 2 (got N=" + std::to_string(n) + ")");
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "Example 2.7 requires K >= 1 (got K=" + std::to_string(k) + ")");
  if (2 * k - 1 > n) {
    throw Error(ErrorKind::InvalidArgument, "Example 2.7 requires 2K-1 <= N (got 2K-1=" + std::to_string(2 * k - 1) +
                                                " > N=" + std::to_string(n) + ")");
  }
}

void validate_ratio(const Real& x, const char* name) {
  if (!(x > 0 && x < 1)) {
    throw Error(ErrorKind::InvalidArgument, std::string("Moran ratio ") + name + " must lie in (0,1), got " +
                                                format_sig12(x));
  }
}

}  // namespace

Ifs::Ifs(std::vector<SimilarityMap> maps, std::string label) : maps_(std::move(maps)), label_(std::move(label)) {
  if (maps_.empty()) throw Error(ErrorKind::InvalidArgument, "an IFS needs at least one map");
  const std::size_t d = maps_.front().dim();
  for (const auto& m : maps_) {
    if (m.dim() != d) throw_dimension_mismatch("IFS maps", d, m.dim());
    const Real c = m.scale();
    if (!(c > 0 && c < 1)) {
      throw Error(ErrorKind::InvalidArgument, "IFS map ratio must lie in (0,1), got " + format_sig12(c));
    }
  }
}

Real Ifs::max_scale() const {
  Real c = 0;
  for (const auto& m : maps_) c = std::max(c, m.scale());
  return c;
}

std::vector<Real> Ifs::ratios() const {
  std::vector<Real> out;
  out.reserve(maps_.size());
  for (const auto& m : maps_) out.push_back(m.scale());
  return out;
}

PointCloud ifs_attractor(const Ifs& ifs, std::size_t depth, const PointCloud& seed, std::size_t point_cap) {
  if (depth < 1) throw Error(ErrorKind::InvalidArgument, "attractor depth must be at least 1");
  if (seed.dim() != ifs.dim()) throw_dimension_mismatch("ifs_attractor seed", ifs.dim(), seed.dim());
  const double projected =
      std::pow(static_cast<double>(ifs.maps().size()), static_cast<double>(depth)) * static_cast<double>(seed.size());
  require_cap(projected, point_cap, "ifs_attractor");

  // Any p gives an invariant ball B(p, rho) with rho = max |S_i p - p| / (1 - c_i).
  const auto p = seed.point(0);
  Real rho = 0;
  for (const auto& m : ifs.maps()) rho = std::max(rho, distance(m(p), p) / (1 - m.scale()));
  Real seed_reach = 0;
  for (std::size_t i = 0; i < seed.size(); ++i) seed_reach = std::max(seed_reach, distance(seed.point(i), p));

  const std::size_t d = seed.dim();
  PointCloud current = seed;
  for (std::size_t level = 0; level < depth; ++level) {
    std::vector<Real> next(current.size() * ifs.maps().size() * d);
    std::size_t row = 0;
    for (const auto& m : ifs.maps()) {
      for (std::size_t i = 0; i < current.size(); ++i, ++row) {
        m.apply(current.point(i), std::span<Real>(next).subspan(row * d, d));
      }
    }
    current = PointCloud(d, std::move(next));
  }
  return current.with_resolution(pow_int(ifs.max_scale(), static_cast<long long>(depth)) * (seed_reach + rho));
}

PointCloud example_1_4(std::size_t kmax) {
  if (kmax < 1) throw Error(ErrorKind::InvalidArgument, "Example 1.4 needs kmax >= 1");
  std::vector<Real> coords{Real(0)};
  for (std::size_t k = 1; k <= kmax; ++k) {
    const Real base = pow_int(Real(2), -static_cast<long long>(k));
    const Real step = base * base;
    for (std::size_t l = 0; l <= k; ++l) coords.push_back(base + Real(l) * step);
  }
  return PointCloud(1, std::move(coords), 0);
}

PointCloud example_1_4_skeleton(std::size_t kmax) {
  if (kmax < 1) throw Error(ErrorKind::InvalidArgument, "Example 1.4 skeleton needs kmax >= 1");
  std::vector<Real> coords{Real(0)};
  for (std::size_t k = 1; k <= kmax; ++k) coords.push_back(pow_int(Real(2), -static_cast<long long>(k)));
  return PointCloud(1, std::move(coords), 0);
}

Ifs example_2_7(int n, int k) {
  validate_example_2_7(n, k);
  std::vector<SimilarityMap> maps;
  for (int i = 0; i < k; ++i) maps.push_back(SimilarityMap::zoom_about({Real(-2 * i)}, Real(1), Real(n)));
  return Ifs(std::move(maps), "example_2_7(N=" + std::to_string(n) + ",K=" + std::to_string(k) + ")");
}

std::vector<Real> moran_stage_ratios(const Real& a, const Real& b, std::size_t k) {
  Real ca = a;
  Real cb = b;
  for (std::size_t i = 0; i < k; ++i) {
    ca *= ca;
    cb *= cb;
  }
  return {ca, cb};
}

PointCloud moran_construction(const Real& a, const Real& b, std::size_t levels, const RepetitionRule& rep,
                              std::size_t point_cap) {
  validate_ratio(a, "a");
  validate_ratio(b, "b");
  if (levels < 1) throw Error(ErrorKind::InvalidArgument, "Moran construction needs at least one level");
  std::size_t steps = 0;
  for (std::size_t k = 1; k <= levels; ++k) {
    const std::size_t n = rep(k);
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "Moran repetition N(" + std::to_string(k) + ") must be >= 1");
    steps += n;
  }
  require_cap(2.0 * std::pow(2.0, static_cast<double>(steps)), point_cap, "moran_construction");

  struct Interval {
    Real left;
    Real length;
  };
  std::vector<Interval> intervals{{Real(0), Real(1)}};
  for (std::size_t k = 1; k <= levels; ++k) {
    const auto ratios = moran_stage_ratios(a, b, k);
    const Real shift = 1 - ratios[1];
    for (std::size_t r = 0, n = rep(k); r < n; ++r) {
      std::vector<Interval> next;
      next.reserve(intervals.size() * 2);
      for (const auto& iv : intervals) {
        next.push_back({iv.left, iv.length * ratios[0]});
        next.push_back({iv.left + iv.length * shift, iv.length * ratios[1]});
      }
      intervals = std::move(next);
    }
  }
  std::vector<Real> coords;
  coords.reserve(intervals.size() * 2);
  Real longest = 0;
  for (const auto& iv : intervals) {
    coords.push_back(iv.left);
    coords.push_back(iv.left + iv.length);
    longest = std::max(longest, iv.length);
  }
  return PointCloud(1, std::move(coords), longest);
}

PointCloud product(const PointCloud& a, const PointCloud& b, std::size_t point_cap) {
  require_cap(static_cast<double>(a.size()) * static_cast<double>(b.size()), point_cap, "product");
  const std::size_t d = a.dim() + b.dim();
  std::vector<Real> coords;
  coords.reserve(a.size() * b.size() * d);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      const auto p = a.point(i);
      const auto q = b.point(j);
      coords.insert(coords.end(), p.begin(), p.end());
      coords.insert(coords.end(), q.begin(), q.end());
    }
  }
  const Real res = sqrt(a.resolution() * a.resolution() + b.resolution() * b.resolution());
  return PointCloud(d, std::move(coords), res);
}

void validate(const ConstructionSpec& spec) {
  std::visit(
      [](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, PlainIfsSpec>) {
          if (v.depth < 1) throw Error(ErrorKind::InvalidArgument, "PlainIFS depth must be >= 1");
          if (v.seed && v.seed->dim() != v.ifs.dim()) throw_dimension_mismatch("PlainIFS seed", v.ifs.dim(), v.seed->dim());
        } else if constexpr (std::is_same_v<T, Example14Spec>) {
          if (v.kmax < 1) throw Error(ErrorKind::InvalidArgument, "Example14 kmax must be >= 1");
        } else if constexpr (std::is_same_v<T, Example27Spec>) {
          validate_example_2_7(v.n, v.k);
          if (v.depth < 1) throw Error(ErrorKind::InvalidArgument, "Example27 depth must be >= 1");
        } else if constexpr (std::is_same_v<T, MoranSpec>) {
          validate_ratio(v.a, "a");
          validate_ratio(v.b, "b");
          if (v.levels < 1) throw Error(ErrorKind::InvalidArgument, "Moran levelCount must be >= 1");
          if (v.repetitions.size() < v.levels) {
            throw Error(ErrorKind::InvalidArgument, "Moran repetition table has " + std::to_string(v.repetitions.size()) +
                                                        " entries for " + std::to_string(v.levels) + " levels");
          }
          for (std::size_t n : v.repetitions) {
            if (n < 1) throw Error(ErrorKind::InvalidArgument, "Moran repetitions must be >= 1");
          }
        } else {
          if (!v.left || !v.right) throw Error(ErrorKind::InvalidArgument, "Product needs two factors");
          validate(*v.left);
          validate(*v.right);
        }
      },
      spec.variant);
}

PointCloud generate(const ConstructionSpec& spec, std::size_t point_cap) {
  validate(spec);
  return std::visit(
      [point_cap](const auto& v) -> PointCloud {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, PlainIfsSpec>) {
          const PointCloud seed = v.seed ? *v.seed : PointCloud(v.ifs.dim(), std::vector<Real>(v.ifs.dim(), Real(0)));
          return ifs_attractor(v.ifs, v.depth, seed, point_cap);
        } else if constexpr (std::is_same_v<T, Example14Spec>) {
          return example_1_4(v.kmax);
        } else if constexpr (std::is_same_v<T, Example27Spec>) {
          return ifs_attractor(example_2_7(v.n, v.k), v.depth, PointCloud(1, {Real(0)}), point_cap);
        } else if constexpr (std::is_same_v<T, MoranSpec>) {
          const auto& table = v.repetitions;
          return moran_construction(v.a, v.b, v.levels, [&table](std::size_t k) { return table[k - 1]; }, point_cap);
        } else {
          return product(generate(*v.left, point_cap), generate(*v.right, point_cap), point_cap);
        }
      },
      spec.variant);
}

nlohmann::json to_json(const ConstructionSpec& spec) {
  using nlohmann::json;
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, PlainIfsSpec>) {
          json maps = json::array();
          for (const auto& m : v.ifs.maps()) {
            maps.push_back({{"scale", json_number(m.scale())},
                            {"orthogonal", json_numbers(m.orthogonal())},
                            {"translation", json_numbers(m.translation())}});
          }
          json doc = {{"variant", "PlainIFS"}, {"label", v.ifs.label()}, {"depth", v.depth}, {"maps", maps}};
          if (v.seed) doc["seed"] = json_rows(*v.seed);
          return doc;
        } else if constexpr (std::is_same_v<T, Example14Spec>) {
          return {{"variant", "Example14"}, {"kmax", v.kmax}};
        } else if constexpr (std::is_same_v<T, Example27Spec>) {
          return {{"variant", "Example27"}, {"N", v.n}, {"K", v.k}, {"depth", v.depth}};
        } else if constexpr (std::is_same_v<T, MoranSpec>) {
          return {{"variant", "Moran"},
                  {"a", json_number(v.a)},
                  {"b", json_number(v.b)},
                  {"levels", v.levels},
                  {"rep", v.repetitions}};
        } else {
          return {{"variant", "Product"}, {"left", to_json(*v.left)}, {"right", to_json(*v.right)}};
        }
      },
      spec.variant);
}

ConstructionSpec construction_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("variant")) {
    throw Error(ErrorKind::InvalidArgument, "construction spec must be an object with a 'variant' field");
  }
  const std::string variant = doc.at("variant").get<std::string>();
  ConstructionSpec spec;
  try {
    if (variant == "PlainIFS") {
      std::vector<SimilarityMap> maps;
      for (const auto& m : doc.at("maps")) {
        std::vector<Real> t = real_vector(m.at("translation"));
        const Real scale = real_value(m.at("scale"));
        if (m.contains("orthogonal")) {
          maps.emplace_back(scale, real_vector(m.at("orthogonal")), std::move(t));
        } else {
          const std::size_t d = t.size();
          maps.push_back(SimilarityMap::scaling(d, scale, std::move(t)));
        }
      }
      PlainIfsSpec plain{Ifs(std::move(maps), doc.value("label", std::string{})), doc.at("depth").get<std::size_t>(),
                         std::nullopt};
      if (doc.contains("seed")) plain.seed = cloud_from_rows(doc.at("seed"));
      spec.variant = std::move(plain);
    } else if (variant == "Example14") {
      spec.variant = Example14Spec{doc.at("kmax").get<std::size_t>()};
    } else if (variant == "Example27") {
      spec.variant = Example27Spec{doc.at("N").get<int>(), doc.at("K").get<int>(), doc.value("depth", std::size_t{6})};
    } else if (variant == "Moran") {
      MoranSpec moran{real_value(doc.at("a")), real_value(doc.at("b")), doc.at("levels").get<std::size_t>(), {}};
      const auto& rep = doc.at("rep");
      if (rep.is_array()) {
        moran.repetitions = rep.get<std::vector<std::size_t>>();
      } else if (rep.is_object() && rep.contains("linear")) {
        const auto slope = rep.at("linear").get<std::size_t>();
        for (std::size_t k = 1; k <= moran.levels; ++k) moran.repetitions.push_back(slope * k);
      } else if (rep.is_object() && rep.contains("constant")) {
        moran.repetitions.assign(moran.levels, rep.at("constant").get<std::size_t>());
      } else {
        throw Error(ErrorKind::InvalidArgument, "Moran 'rep' must be a list, {\"linear\": m} or {\"constant\": c}");
      }
      spec.variant = std::move(moran);
    } else if (variant == "Product") {
      spec.variant = ProductSpec{std::make_shared<const ConstructionSpec>(construction_from_json(doc.at("left"))),
                                 std::make_shared<const ConstructionSpec>(construction_from_json(doc.at("right")))};
    } else {
      throw Error(ErrorKind::InvalidArgument, "unknown construction variant '" + variant + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, "malformed " + variant + " spec: " + e.what());
  }
  validate(spec);
  return spec;
}

}  // namespace assouad
