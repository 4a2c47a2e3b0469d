#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "assouad/real.hpp"

namespace assouad {

/// Relative per-coordinate tolerance under which two points are the same point.
inline constexpr double kDuplicateTolerance = 1e-24;

/// A finite approximation of a compact set in R^d.
///
/// Points are stored row-major, sorted lexicographically and deduplicated on
/// construction, so two clouds holding the same set compare equal. The
/// resolution is the guaranteed Hausdorff distance to the ideal set the cloud
/// stands for; 0 means the cloud is the set.
class PointCloud {
 public:
  PointCloud(std::size_t dim, std::vector<Real> coords, Real resolution = 0);

  static PointCloud from_rows(const std::vector<std::vector<Real>>& rows, Real resolution = 0);
  static PointCloud singleton(std::vector<Real> point, Real resolution = 0);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return coords_.size() / dim_; }
  const Real& resolution() const noexcept { return resolution_; }

  std::span<const Real> coords() const noexcept { return coords_; }
  std::span<const Real> point(std::size_t i) const {
    return std::span<const Real>(coords_).subspan(i * dim_, dim_);
  }
  const Real& coord(std::size_t i, std::size_t axis) const { return coords_[i * dim_ + axis]; }

  PointCloud with_resolution(Real resolution) const;

  /// Same dimension and same points; resolutions are not compared.
  bool same_points(const PointCloud& other) const;

  friend bool operator==(const PointCloud&, const PointCloud&) = default;

 private:
  std::size_t dim_;
  std::vector<Real> coords_;
  Real resolution_;
};

struct BoundingBox {
  std::vector<Real> lo;
  std::vector<Real> hi;

  Real diagonal() const;
};

BoundingBox bounding_box(const PointCloud& f);

/// Upper bound on diam(f): exact in dimension 1, the bounding-box diagonal otherwise.
Real diameter_bound(const PointCloud& f);

/// x -> c O (x - anchor) + t.
///
/// The scale is kept as numerator / divisor and applied in that order, so maps
/// like x -> 4^k (x - 2^-k) / k round once instead of three times.
class SimilarityMap {
 public:
  /// x -> scale * O x + translation; O is row-major d x d and must be orthogonal.
  SimilarityMap(Real scale, std::vector<Real> orthogonal, std::vector<Real> translation);

  static SimilarityMap identity(std::size_t dim);
  /// x -> scale * x + translation (translation defaults to 0).
  static SimilarityMap scaling(std::size_t dim, Real scale, std::vector<Real> translation = {});
  /// x -> (x - anchor) * numerator / divisor.
  static SimilarityMap zoom_about(std::vector<Real> anchor, Real numerator, Real divisor = 1);

  std::size_t dim() const noexcept { return anchor_.size(); }
  Real scale() const { return numerator_ / divisor_; }
  std::span<const Real> orthogonal() const noexcept { return orthogonal_; }
  /// Translation of the equivalent form x -> c O x + t.
  std::vector<Real> translation() const;

  void apply(std::span<const Real> x, std::span<Real> out) const;
  std::vector<Real> operator()(std::span<const Real> x) const;

  /// this ∘ inner.
  SimilarityMap compose(const SimilarityMap& inner) const;

 private:
  SimilarityMap() = default;

  Real numerator_ = 1;
  Real divisor_ = 1;
  std::vector<Real> orthogonal_;
  std::vector<Real> anchor_;
  std::vector<Real> offset_;
  bool rotation_free_ = true;
};

/// Closed ball or closed axis-aligned cube.
class Window {
 public:
  enum class Kind { Ball, Box };

  static Window ball(std::vector<Real> center, Real radius);
  static Window box(std::vector<Real> corner, Real side);

  Kind kind() const noexcept { return kind_; }
  std::size_t dim() const noexcept { return origin_.size(); }
  /// Ball center or box lower corner.
  std::span<const Real> origin() const noexcept { return origin_; }
  /// Ball radius or box side.
  const Real& extent() const noexcept { return extent_; }

  bool contains(std::span<const Real> x) const;

 private:
  Window(Kind kind, std::vector<Real> origin, Real extent);

  Kind kind_;
  std::vector<Real> origin_;
  Real extent_;
};

Real squared_distance(std::span<const Real> x, std::span<const Real> y);
Real distance(std::span<const Real> x, std::span<const Real> y);

/// Exact Hausdorff distance between two finite sets (sort-and-prune double loop).
Real hausdorff_distance(const PointCloud& a, const PointCloud& b);

/// Pointwise image; resolution scales by the similarity ratio.
PointCloud apply_similarity(const SimilarityMap& map, const PointCloud& f);

/// Points of f in the closed window, or nullopt when none survive.
std::optional<PointCloud> window_intersect(const PointCloud& f, const Window& window);

}  // namespace assouad
