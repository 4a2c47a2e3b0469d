#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "assouad/core_geom.hpp"

namespace assouad {

inline constexpr std::size_t kDefaultPointCap = 5'000'000;

/// Finite family of contracting similarities.
class Ifs {
 public:
  explicit Ifs(std::vector<SimilarityMap> maps, std::string label = {});

  const std::vector<SimilarityMap>& maps() const noexcept { return maps_; }
  const std::string& label() const noexcept { return label_; }
  std::size_t dim() const { return maps_.front().dim(); }
  Real max_scale() const;
  std::vector<Real> ratios() const;

 private:
  std::vector<SimilarityMap> maps_;
  std::string label_;
};

/// Union of all depth-fold compositions of the maps applied to the seed.
///
/// The resolution is (max ratio)^depth times an upper bound on the distance
/// from the seed to the attractor, using the invariant ball around the first
/// map's fixed point.
PointCloud ifs_attractor(const Ifs& ifs, std::size_t depth, const PointCloud& seed,
                         std::size_t point_cap = kDefaultPointCap);

/// {0} ∪ {2^-k + l 4^-k : 1 <= k <= kmax, 0 <= l <= k}, exact.
PointCloud example_1_4(std::size_t kmax);

/// {0} ∪ {2^-k : 1 <= k <= kmax}: the accumulation skeleton of example_1_4.
PointCloud example_1_4_skeleton(std::size_t kmax);

/// Maps x -> (x + 2i) / N for i = 0..K-1.
Ifs example_2_7(int n, int k);

/// Number of times stage k's system is applied (k starts at 1).
using RepetitionRule = std::function<std::size_t(std::size_t)>;

/// Stage-k ratios {a^(2^k), b^(2^k)}.
std::vector<Real> moran_stage_ratios(const Real& a, const Real& b, std::size_t k);

/// Endpoints of the nested Moran intervals: stage k subdivides every interval
/// rep(k) times with {x -> a^(2^k) x, x -> b^(2^k) x + 1 - b^(2^k)}, stages in
/// increasing order. Resolution is the longest surviving interval.
PointCloud moran_construction(const Real& a, const Real& b, std::size_t levels, const RepetitionRule& rep,
                              std::size_t point_cap = kDefaultPointCap);

/// All concatenated coordinate pairs; resolution sqrt(da^2 + db^2).
PointCloud product(const PointCloud& a, const PointCloud& b, std::size_t point_cap = kDefaultPointCap);

struct ConstructionSpec;

struct PlainIfsSpec {
  Ifs ifs;
  std::size_t depth;
  std::optional<PointCloud> seed;  // origin when absent
};

struct Example14Spec {
  std::size_t kmax;
};

struct Example27Spec {
  int n;
  int k;
  std::size_t depth = 6;
};

struct MoranSpec {
  Real a;
  Real b;
  std::size_t levels;
  std::vector<std::size_t> repetitions;  // repetitions[k-1] = N(k)
};

struct ProductSpec {
  std::shared_ptr<const ConstructionSpec> left;
  std::shared_ptr<const ConstructionSpec> right;
};

struct ConstructionSpec {
  std::variant<Example14Spec, PlainIfsSpec, Example27Spec, MoranSpec, ProductSpec> variant{Example14Spec{1}};
};

/// Checks the variant's parameter constraints; throws on violation.
void validate(const ConstructionSpec& spec);

PointCloud generate(const ConstructionSpec& spec, std::size_t point_cap = kDefaultPointCap);

nlohmann::json to_json(const ConstructionSpec& spec);
ConstructionSpec construction_from_json(const nlohmann::json& doc);

}  // namespace assouad
