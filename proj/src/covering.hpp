#pragma once

#include <cstdint>
#include <vector>

#include "assouad/core_geom.hpp"

namespace assouad::detail {

/// floor(coord / side), except that a coordinate within the duplicate
/// tolerance below a cell boundary is assigned to the upper cell.
Real cell_key(const Real& coord, const Real& side);

/// Dense ids of the occupied cells of the origin-anchored grid with the given side.
/// In dimension 1 ids are non-decreasing along the (sorted) cloud.
class CellIndex {
 public:
  CellIndex(const PointCloud& f, const Real& side);

  std::uint32_t operator[](std::size_t point) const { return ids_[point]; }
  std::size_t cell_count() const noexcept { return cells_; }

 private:
  template <class Key>
  void assign(std::vector<std::size_t>& order, const std::vector<Key>& keys, std::size_t d);

  std::vector<std::uint32_t> ids_;
  std::size_t cells_ = 0;
};

/// Indices of points in closed balls, using the sort order of the first coordinate.
class BallQuery {
 public:
  explicit BallQuery(const PointCloud& f);

  /// Contiguous [first, last) range of points whose first coordinate is within R of x[0].
  std::pair<std::size_t, std::size_t> slab(std::span<const Real> x, const Real& radius) const;
  /// One-dimensional clouds: the exact [first, last) range of the closed ball.
  std::pair<std::size_t, std::size_t> range_1d(const Real& x, const Real& radius) const;
  /// All indices within the closed ball, ascending.
  void collect(std::span<const Real> x, const Real& radius, std::vector<std::size_t>& out) const;

 private:
  const PointCloud& f_;
  // Double shadow of the coordinates; only borderline points are decided in full precision.
  std::vector<double> shadow_;
  double magnitude_ = 0;
};

/// Index of the cloud point nearest to x (lowest index on ties).
std::size_t nearest_point(const PointCloud& f, std::span<const Real> x);

}  // namespace assouad::detail
