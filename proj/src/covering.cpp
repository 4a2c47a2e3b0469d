#include "covering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "assouad/error.hpp"

namespace assouad::detail {

Real cell_key(const Real& coord, const Real& side) {
  const Real q = coord / side;
  Real k = floor(q);
  const Real up = k + 1;
  if (up - q <= Real(kDuplicateTolerance) * std::max(Real(1), abs(q))) k = up;
  return k;
}

CellIndex::CellIndex(const PointCloud& f, const Real& side) : ids_(f.size()) {
  const std::size_t n = f.size();
  const std::size_t d = f.dim();
  if (d == 1) {
    Real previous = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const Real key = cell_key(f.coord(i, 0), side);
      if (i == 0 || key != previous) ++cells_;
      ids_[i] = static_cast<std::uint32_t>(cells_ - 1);
      previous = key;
    }
    return;
  }
  std::vector<Real> keys(n * d);
  bool fits = true;
  const Real limit = Real(std::numeric_limits<std::int64_t>::max() / 2);
  for (std::size_t i = 0; i < n * d; ++i) {
    keys[i] = cell_key(f.coords()[i], side);
    fits = fits && abs(keys[i]) < limit;
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (fits) {
    std::vector<std::int64_t> small(n * d);
    for (std::size_t i = 0; i < n * d; ++i) small[i] = keys[i].convert_to<std::int64_t>();
    assign(order, small, d);
  } else {
    assign(order, keys, d);
  }
}

template <class Key>
void CellIndex::assign(std::vector<std::size_t>& order, const std::vector<Key>& keys, std::size_t d) {
  auto row = [&](std::size_t i) { return std::span<const Key>(keys).subspan(i * d, d); };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto ra = row(a);
    const auto rb = row(b);
    return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end());
  });
  for (std::size_t j = 0; j < order.size(); ++j) {
    const auto r = row(order[j]);
    if (j == 0 || !std::equal(r.begin(), r.end(), row(order[j - 1]).begin())) ++cells_;
    ids_[order[j]] = static_cast<std::uint32_t>(cells_ - 1);
  }
}

BallQuery::BallQuery(const PointCloud& f) : f_(f) {
  if (f.dim() == 1) return;
  shadow_.reserve(f.coords().size());
  for (const Real& c : f.coords()) {
    shadow_.push_back(to_double(c));
    magnitude_ = std::max(magnitude_, std::abs(shadow_.back()));
  }
}

std::pair<std::size_t, std::size_t> BallQuery::slab(std::span<const Real> x, const Real& radius) const {
  const std::size_t n = f_.size();
  const std::size_t d = f_.dim();
  const auto coords = f_.coords();
  // Padded so rounding in x +- R never drops a boundary point; callers filter exactly.
  const Real pad = (abs(x[0]) + radius) * Real(1e-30);
  const Real lo = x[0] - radius - pad;
  const Real hi = x[0] + radius + pad;
  // Binary search over rows on the first coordinate.
  std::size_t a = 0, b = n;
  while (a < b) {
    const std::size_t mid = (a + b) / 2;
    if (coords[mid * d] < lo) a = mid + 1; else b = mid;
  }
  const std::size_t first = a;
  b = n;
  while (a < b) {
    const std::size_t mid = (a + b) / 2;
    if (coords[mid * d] <= hi) a = mid + 1; else b = mid;
  }
  return {first, a};
}

std::pair<std::size_t, std::size_t> BallQuery::range_1d(const Real& x, const Real& radius) const {
  auto [first, last] = slab(std::span<const Real>(&x, 1), radius);
  while (first < last && abs(f_.coord(first, 0) - x) > radius) ++first;
  while (last > first && abs(f_.coord(last - 1, 0) - x) > radius) --last;
  return {first, last};
}

void BallQuery::collect(std::span<const Real> x, const Real& radius, std::vector<std::size_t>& out) const {
  out.clear();
  const auto [first, last] = slab(x, radius);
  if (f_.dim() == 1) {
    const auto [a, b] = range_1d(x[0], radius);
    for (std::size_t i = a; i < b; ++i) out.push_back(i);
    return;
  }
  const std::size_t d = f_.dim();
  double center[8];
  std::vector<double> wide;
  double* c = center;
  if (d > 8) {
    wide.resize(d);
    c = wide.data();
  }
  double m = magnitude_;
  for (std::size_t k = 0; k < d; ++k) {
    c[k] = to_double(x[k]);
    m = std::max(m, std::abs(c[k]));
  }
  // Bound on |double d2 - exact d2| from rounding the inputs and the arithmetic.
  const double rd = to_double(radius);
  const double r2d = rd * rd;
  const double e = 4 * std::numeric_limits<double>::epsilon() * m + 1e-300;
  const double dd = static_cast<double>(d);
  const double margin = 4 * std::sqrt(dd) * (rd + dd * e) * e + 4 * dd * e * e + 1e-13 * r2d;
  const Real r2 = radius * radius;
  for (std::size_t i = first; i < last; ++i) {
    const double* p = shadow_.data() + i * d;
    double s = 0;
    for (std::size_t k = 0; k < d; ++k) {
      const double t = p[k] - c[k];
      s += t * t;
    }
    if (s > r2d + margin) continue;
    if (s < r2d - margin || squared_distance(f_.point(i), x) <= r2) out.push_back(i);
  }
}

std::size_t nearest_point(const PointCloud& f, std::span<const Real> x) {
  if (x.size() != f.dim()) throw_dimension_mismatch("center", f.dim(), x.size());
  std::size_t best = 0;
  Real best_d = std::numeric_limits<Real>::infinity();
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Real dist = squared_distance(f.point(i), x);
    if (dist < best_d) {
      best_d = dist;
      best = i;
    }
  }
  return best;
}

}  // namespace assouad::detail
