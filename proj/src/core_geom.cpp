#include "assouad/core_geom.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "assouad/error.hpp"

namespace assouad {
namespace {

bool near_equal(const Real& a, const Real& b) {
  const Real scale = std::max(abs(a), abs(b));
  return abs(a - b) <= Real(kDuplicateTolerance) * scale;
}

bool rows_near(std::span<const Real> x, std::span<const Real> y) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!near_equal(x[i], y[i])) return false;
  }
  return true;
}

std::vector<Real> sorted_unique_rows(std::size_t dim, const std::vector<Real>& coords) {
  const std::size_t n = coords.size() / dim;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto row = [&](std::size_t i) { return std::span<const Real>(coords).subspan(i * dim, dim); };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto ra = row(a);
    const auto rb = row(b);
    return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end());
  });

  std::vector<Real> out;
  out.reserve(coords.size());
  std::size_t kept = 0;
  std::size_t group_start = 0;  // first kept row sharing the last kept row's exact first coordinate
  auto kept_row = [&](std::size_t j) { return std::span<const Real>(out).subspan(j * dim, dim); };

  for (std::size_t idx : order) {
    const auto x = row(idx);
    bool duplicate = false;
    std::size_t j = kept;
    while (j > 0) {
      const auto k = kept_row(j - 1);
      if (!near_equal(k[0], x[0])) break;
      if (rows_near(k, x)) {
        duplicate = true;
        break;
      }
      // Rows with this exact first coordinate are sorted by the second one, so
      // once the second coordinate is too small the rest of the group is too.
      if (dim > 1 && k[0] == x[0] && j - 1 >= group_start && k[1] < x[1] && !near_equal(k[1], x[1])) {
        j = group_start;
        continue;
      }
      --j;
    }
    if (duplicate) continue;
    if (kept == 0 || kept_row(kept - 1)[0] != x[0]) group_start = kept;
    out.insert(out.end(), x.begin(), x.end());
    ++kept;
  }
  return out;
}

// Largest distance from a point of `from` to its nearest neighbour in `to`.
Real directed_hausdorff_sq(const PointCloud& from, const PointCloud& to) {
  const std::size_t d = from.dim();
  const std::size_t m = to.size();
  const auto tc = to.coords();
  auto first = [&](std::size_t j) -> const Real& { return tc[j * d]; };

  Real worst = 0;
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < from.size(); ++i) {
    const auto x = from.point(i);
    // `from` is sorted by first coordinate too, so the insertion point only moves right.
    while (cursor < m && first(cursor) < x[0]) ++cursor;

    Real best = std::numeric_limits<Real>::infinity();
    std::size_t right = cursor;
    std::size_t left = cursor;
    bool right_open = right < m;
    bool left_open = left > 0;
    while ((right_open || left_open) && best > worst) {
      if (right_open) {
        const Real dx = first(right) - x[0];
        if (dx * dx >= best) {
          right_open = false;
        } else {
          best = std::min(best, squared_distance(x, to.point(right)));
          right_open = ++right < m;
        }
      }
      if (left_open) {
        const Real dx = x[0] - first(left - 1);
        if (dx * dx >= best) {
          left_open = false;
        } else {
          best = std::min(best, squared_distance(x, to.point(left - 1)));
          left_open = --left > 0;
        }
      }
    }
    worst = std::max(worst, best);
  }
  return worst;
}

void require_orthogonal(std::size_t d, const std::vector<Real>& o) {
  if (o.size() != d * d) {
    throw Error(ErrorKind::InvalidArgument, "orthogonal matrix must have " + std::to_string(d * d) +
                                                " entries, got " + std::to_string(o.size()));
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      Real dot = 0;
      for (std::size_t k = 0; k < d; ++k) dot += o[k * d + i] * o[k * d + j];
      const Real expected = (i == j) ? 1 : 0;
      if (abs(dot - expected) > Real(1e-10)) {
        throw Error(ErrorKind::InvalidArgument, "matrix is not orthogonal (O^T O deviates from I by " +
                                                    format_sig12(abs(dot - expected)) + ")");
      }
    }
  }
}

std::vector<Real> identity_matrix(std::size_t d) {
  std::vector<Real> o(d * d, Real(0));
  for (std::size_t i = 0; i < d; ++i) o[i * d + i] = 1;
  return o;
}

}  // namespace

PointCloud::PointCloud(std::size_t dim, std::vector<Real> coords, Real resolution)
    : dim_(dim), resolution_(resolution) {
  if (dim == 0) throw Error(ErrorKind::InvalidArgument, "point cloud dimension must be positive");
  if (coords.empty()) throw Error(ErrorKind::EmptyResult, "point cloud must contain at least one point");
  if (coords.size() % dim != 0) {
    throw Error(ErrorKind::DimensionMismatch, "coordinate count " + std::to_string(coords.size()) +
                                                  " is not a multiple of dimension " + std::to_string(dim));
  }
  if (!(resolution >= 0) || !isfinite(resolution)) {
    throw Error(ErrorKind::InvalidArgument, "resolution must be finite and non-negative");
  }
  for (const Real& c : coords) {
    if (!isfinite(c)) throw Error(ErrorKind::InvalidArgument, "point coordinates must be finite");
  }
  coords_ = sorted_unique_rows(dim, coords);
}

PointCloud PointCloud::from_rows(const std::vector<std::vector<Real>>& rows, Real resolution) {
  if (rows.empty()) throw Error(ErrorKind::EmptyResult, "point cloud must contain at least one point");
  const std::size_t d = rows.front().size();
  std::vector<Real> coords;
  coords.reserve(rows.size() * d);
  for (const auto& r : rows) {
    if (r.size() != d) throw_dimension_mismatch("point cloud rows", d, r.size());
    coords.insert(coords.end(), r.begin(), r.end());
  }
  return PointCloud(d, std::move(coords), resolution);
}

PointCloud PointCloud::singleton(std::vector<Real> point, Real resolution) {
  const std::size_t d = point.size();
  return PointCloud(d, std::move(point), resolution);
}

PointCloud PointCloud::with_resolution(Real resolution) const {
  PointCloud copy = *this;
  if (!(resolution >= 0) || !isfinite(resolution)) {
    throw Error(ErrorKind::InvalidArgument, "resolution must be finite and non-negative");
  }
  copy.resolution_ = resolution;
  return copy;
}

bool PointCloud::same_points(const PointCloud& other) const {
  return dim_ == other.dim_ && coords_ == other.coords_;
}

Real BoundingBox::diagonal() const {
  Real sq = 0;
  for (std::size_t i = 0; i < lo.size(); ++i) sq += (hi[i] - lo[i]) * (hi[i] - lo[i]);
  return sqrt(sq);
}

BoundingBox bounding_box(const PointCloud& f) {
  BoundingBox box{std::vector<Real>(f.point(0).begin(), f.point(0).end()),
                  std::vector<Real>(f.point(0).begin(), f.point(0).end())};
  for (std::size_t i = 1; i < f.size(); ++i) {
    const auto p = f.point(i);
    for (std::size_t k = 0; k < f.dim(); ++k) {
      box.lo[k] = std::min(box.lo[k], p[k]);
      box.hi[k] = std::max(box.hi[k], p[k]);
    }
  }
  return box;
}

Real diameter_bound(const PointCloud& f) {
  if (f.dim() == 1) return f.coord(f.size() - 1, 0) - f.coord(0, 0);
  return bounding_box(f).diagonal();
}

SimilarityMap::SimilarityMap(Real scale, std::vector<Real> orthogonal, std::vector<Real> translation) {
  const std::size_t d = translation.size();
  if (d == 0) throw Error(ErrorKind::InvalidArgument, "similarity map needs a positive dimension");
  if (!(scale > 0) || !isfinite(scale)) {
    throw Error(ErrorKind::InvalidArgument, "similarity ratio must be positive and finite");
  }
  require_orthogonal(d, orthogonal);
  numerator_ = scale;
  divisor_ = 1;
  rotation_free_ = orthogonal == identity_matrix(d);
  orthogonal_ = std::move(orthogonal);
  anchor_.assign(d, Real(0));
  offset_ = std::move(translation);
}

SimilarityMap SimilarityMap::identity(std::size_t dim) { return scaling(dim, 1); }

SimilarityMap SimilarityMap::scaling(std::size_t dim, Real scale, std::vector<Real> translation) {
  if (translation.empty()) translation.assign(dim, Real(0));
  if (translation.size() != dim) throw_dimension_mismatch("similarity translation", dim, translation.size());
  return SimilarityMap(scale, identity_matrix(dim), std::move(translation));
}

SimilarityMap SimilarityMap::zoom_about(std::vector<Real> anchor, Real numerator, Real divisor) {
  if (!(numerator > 0) || !(divisor > 0) || !isfinite(numerator) || !isfinite(divisor)) {
    throw Error(ErrorKind::InvalidArgument, "zoom scale must be a positive finite quotient");
  }
  SimilarityMap map = scaling(anchor.size(), 1);
  map.numerator_ = numerator;
  map.divisor_ = divisor;
  map.anchor_ = std::move(anchor);
  return map;
}

std::vector<Real> SimilarityMap::translation() const {
  const std::size_t d = dim();
  std::vector<Real> t = offset_;
  const Real c = scale();
  for (std::size_t i = 0; i < d; ++i) {
    Real oa = 0;
    for (std::size_t k = 0; k < d; ++k) oa += orthogonal_[i * d + k] * anchor_[k];
    t[i] -= c * oa;
  }
  return t;
}

void SimilarityMap::apply(std::span<const Real> x, std::span<Real> out) const {
  const std::size_t d = dim();
  if (x.size() != d) throw_dimension_mismatch("similarity map", d, x.size());
  if (out.size() != d) throw_dimension_mismatch("similarity map output", d, out.size());
  if (rotation_free_) {
    for (std::size_t i = 0; i < d; ++i) out[i] = x[i] - anchor_[i];
  } else {
    std::vector<Real> shifted(d);
    for (std::size_t i = 0; i < d; ++i) shifted[i] = x[i] - anchor_[i];
    for (std::size_t i = 0; i < d; ++i) {
      Real acc = 0;
      for (std::size_t k = 0; k < d; ++k) acc += orthogonal_[i * d + k] * shifted[k];
      out[i] = acc;
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    out[i] *= numerator_;
    if (divisor_ != 1) out[i] /= divisor_;
    out[i] += offset_[i];
  }
}

std::vector<Real> SimilarityMap::operator()(std::span<const Real> x) const {
  std::vector<Real> out(dim());
  apply(x, out);
  return out;
}

SimilarityMap SimilarityMap::compose(const SimilarityMap& inner) const {
  const std::size_t d = dim();
  if (inner.dim() != d) throw_dimension_mismatch("similarity composition", d, inner.dim());
  SimilarityMap out;
  out.numerator_ = numerator_ * inner.numerator_;
  out.divisor_ = divisor_ * inner.divisor_;
  out.orthogonal_.assign(d * d, Real(0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        out.orthogonal_[i * d + j] += orthogonal_[i * d + k] * inner.orthogonal_[k * d + j];
  out.rotation_free_ = rotation_free_ && inner.rotation_free_;
  if (out.rotation_free_) out.orthogonal_ = identity_matrix(d);
  out.anchor_ = inner.anchor_;
  // c1 O1 (t2 - p1) + t1
  std::vector<Real> shifted(d);
  for (std::size_t i = 0; i < d; ++i) shifted[i] = inner.offset_[i] - anchor_[i];
  const Real c = scale();
  out.offset_.assign(d, Real(0));
  for (std::size_t i = 0; i < d; ++i) {
    Real acc = 0;
    for (std::size_t k = 0; k < d; ++k) acc += orthogonal_[i * d + k] * shifted[k];
    out.offset_[i] = c * acc + offset_[i];
  }
  return out;
}

Window::Window(Kind kind, std::vector<Real> origin, Real extent)
    : kind_(kind), origin_(std::move(origin)), extent_(extent) {
  if (origin_.empty()) throw Error(ErrorKind::InvalidArgument, "window needs a positive dimension");
  if (!(extent_ > 0) || !isfinite(extent_)) {
    throw Error(ErrorKind::InvalidArgument, "window radius/side must be positive");
  }
}

Window Window::ball(std::vector<Real> center, Real radius) {
  return Window(Kind::Ball, std::move(center), radius);
}

Window Window::box(std::vector<Real> corner, Real side) { return Window(Kind::Box, std::move(corner), side); }

bool Window::contains(std::span<const Real> x) const {
  if (x.size() != dim()) throw_dimension_mismatch("window membership", dim(), x.size());
  if (kind_ == Kind::Ball) {
    if (dim() == 1) return abs(x[0] - origin_[0]) <= extent_;
    return squared_distance(x, origin_) <= extent_ * extent_;
  }
  for (std::size_t i = 0; i < dim(); ++i) {
    if (x[i] < origin_[i] || x[i] > origin_[i] + extent_) return false;
  }
  return true;
}

Real squared_distance(std::span<const Real> x, std::span<const Real> y) {
  Real sq = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Real diff = x[i] - y[i];
    sq += diff * diff;
  }
  return sq;
}

Real distance(std::span<const Real> x, std::span<const Real> y) {
  if (x.size() == 1) return abs(x[0] - y[0]);
  return sqrt(squared_distance(x, y));
}

Real hausdorff_distance(const PointCloud& a, const PointCloud& b) {
  if (a.dim() != b.dim()) throw_dimension_mismatch("hausdorff_distance", a.dim(), b.dim());
  if (a.dim() == 1) {
    // One-dimensional fast path keeps |x - y| unrounded by a square root.
    auto directed = [](const PointCloud& from, const PointCloud& to) {
      const auto tc = to.coords();
      Real worst = 0;
      std::size_t cursor = 0;
      for (const Real& x : from.coords()) {
        while (cursor < tc.size() && tc[cursor] < x) ++cursor;
        Real best = std::numeric_limits<Real>::infinity();
        if (cursor < tc.size()) best = tc[cursor] - x;
        if (cursor > 0) best = std::min(best, x - tc[cursor - 1]);
        worst = std::max(worst, best);
      }
      return worst;
    };
    return std::max(directed(a, b), directed(b, a));
  }
  return sqrt(std::max(directed_hausdorff_sq(a, b), directed_hausdorff_sq(b, a)));
}

PointCloud apply_similarity(const SimilarityMap& map, const PointCloud& f) {
  if (map.dim() != f.dim()) throw_dimension_mismatch("apply_similarity", map.dim(), f.dim());
  const std::size_t d = f.dim();
  std::vector<Real> out(f.size() * d);
  for (std::size_t i = 0; i < f.size(); ++i) {
    map.apply(f.point(i), std::span<Real>(out).subspan(i * d, d));
  }
  return PointCloud(d, std::move(out), f.resolution() * map.scale());
}

std::optional<PointCloud> window_intersect(const PointCloud& f, const Window& window) {
  if (window.dim() != f.dim()) throw_dimension_mismatch("window_intersect", f.dim(), window.dim());
  std::vector<Real> kept;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto p = f.point(i);
    if (window.contains(p)) kept.insert(kept.end(), p.begin(), p.end());
  }
  if (kept.empty()) return std::nullopt;
  return PointCloud(f.dim(), std::move(kept), f.resolution());
}

}  // namespace assouad
