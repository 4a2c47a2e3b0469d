#include "assouad/projections.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include <boost/math/constants/constants.hpp>

#include "assouad/error.hpp"
#include "json_util.hpp"
#include "parallel.hpp"

namespace assouad {
namespace {

using Vec3 = std::array<double, 3>;

Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 scale(const Vec3& a, double c) { return {a[0] * c, a[1] * c, a[2] * c}; }
double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

std::vector<Real> unit(std::vector<Real> v) {
  Real norm = 0;
  for (const Real& x : v) norm += x * x;
  norm = sqrt(norm);
  for (Real& x : v) x /= norm;
  return v;
}

Real dot(std::span<const Real> a, std::span<const Real> b) {
  Real s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Golden-angle spiral on the upper hemisphere; lines through the origin need only one of +-v.
std::vector<std::vector<Real>> fibonacci_hemisphere(std::size_t n) {
  const Real golden = boost::math::constants::pi<Real>() * (3 - sqrt(Real(5)));
  std::vector<std::vector<Real>> out;
  for (std::size_t i = 0; i < n; ++i) {
    const Real z = 1 - (Real(i) + Real(0.5)) / Real(n);
    const Real rho = sqrt(1 - z * z);
    const Real phi = golden * Real(i);
    out.push_back(unit({rho * cos(phi), rho * sin(phi), z}));
  }
  return out;
}

std::vector<double> to_doubles(std::span<const Real> v) {
  std::vector<double> out;
  for (const Real& x : v) out.push_back(to_double(x));
  return out;
}

}  // namespace

Subspace::Subspace(std::size_t ambient, std::vector<std::vector<Real>> frame, std::vector<double> parameter)
    : ambient_(ambient), frame_(std::move(frame)), parameter_(std::move(parameter)) {
  if (frame_.empty() || frame_.size() >= ambient_) {
    throw Error(ErrorKind::InvalidArgument, "subspace rank must satisfy 1 <= k < d");
  }
  for (std::size_t i = 0; i < frame_.size(); ++i) {
    if (frame_[i].size() != ambient_) throw_dimension_mismatch("subspace frame vector", ambient_, frame_[i].size());
    for (std::size_t j = 0; j <= i; ++j) {
      const Real target = i == j ? 1 : 0;
      if (abs(dot(frame_[i], frame_[j]) - target) > Real(1e-10)) {
        throw Error(ErrorKind::InvalidArgument, "subspace frame is not orthonormal");
      }
    }
  }
}

std::vector<Subspace> sample_directions(std::size_t d, std::size_t k, std::size_t n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "sample_directions needs n >= 1");
  std::vector<Subspace> out;
  if (d == 2 && k == 1) {
    const Real pi = boost::math::constants::pi<Real>();
    for (std::size_t i = 0; i < n; ++i) {
      const Real theta = pi * Real(i) / Real(n);
      std::vector<Real> v{cos(theta), sin(theta)};
      // Axis directions exactly, so axis projections are the factor sets without rounding.
      if ((2 * i) % n == 0) v = (2 * i) / n == 0 ? std::vector<Real>{1, 0} : std::vector<Real>{0, 1};
      out.emplace_back(2, std::vector<std::vector<Real>>{v}, std::vector<double>{to_double(theta)});
    }
    return out;
  }
  if (d == 3 && k == 1) {
    for (auto& v : fibonacci_hemisphere(n)) {
      auto param = to_doubles(v);
      out.emplace_back(3, std::vector<std::vector<Real>>{std::move(v)}, std::move(param));
    }
    return out;
  }
  if (d == 3 && k == 2) {
    for (const auto& v : fibonacci_hemisphere(n)) {
      // Start from the axis least aligned with the normal.
      std::size_t axis = 0;
      for (std::size_t a = 1; a < 3; ++a) {
        if (abs(v[a]) < abs(v[axis])) axis = a;
      }
      std::vector<Real> e(3, Real(0));
      e[axis] = 1;
      const Real along = dot(e, v);
      std::vector<Real> u1(3);
      for (std::size_t a = 0; a < 3; ++a) u1[a] = e[a] - along * v[a];
      u1 = unit(std::move(u1));
      std::vector<Real> u2 = unit({v[1] * u1[2] - v[2] * u1[1], v[2] * u1[0] - v[0] * u1[2],
                                   v[0] * u1[1] - v[1] * u1[0]});
      out.emplace_back(3, std::vector<std::vector<Real>>{std::move(u1), std::move(u2)}, to_doubles(v));
    }
    return out;
  }
  throw Error(ErrorKind::InvalidArgument, "sample_directions supports (d,k) in {(2,1), (3,1), (3,2)}, got (" +
                                              std::to_string(d) + "," + std::to_string(k) + ")");
}

PointCloud project(const PointCloud& f, const Subspace& v) {
  if (f.dim() != v.ambient()) throw_dimension_mismatch("project", f.dim(), v.ambient());
  const std::size_t k = v.rank();
  std::vector<Real> coords(f.size() * k);
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = 0; j < k; ++j) coords[i * k + j] = dot(v.frame()[j], f.point(i));
  }
  return PointCloud(k, std::move(coords), f.resolution());
}

SweepReport projection_sweep(const PointCloud& f, const std::vector<Subspace>& dirs, const AssouadConfig& config,
                             double threshold) {
  if (dirs.empty()) throw Error(ErrorKind::InvalidArgument, "projection_sweep needs at least one direction");
  for (const auto& v : dirs) {
    if (v.ambient() != f.dim()) throw_dimension_mismatch("projection_sweep direction", f.dim(), v.ambient());
  }
  SweepReport report;
  report.threshold = threshold;
  report.rows.resize(dirs.size());
  AssouadConfig inner = config;
  inner.workers = 1;
  detail::parallel_for(dirs.size(), config.workers, [&](std::size_t i, unsigned) {
    DimensionEstimate est = assouad_estimate(project(f, dirs[i]), inner);
    est.diagnostics.profile.reset();
    report.rows[i] = {dirs[i].parameter(), std::move(est)};
  });

  std::vector<double> values;
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const double v = report.rows[i].estimate.value;
    values.push_back(v);
    if (v < threshold) report.flagged.push_back(i);
  }
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  report.min = values.front();
  report.median = n % 2 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2;
  report.flagged_fraction = static_cast<double>(report.flagged.size()) / static_cast<double>(n);
  return report;
}

std::vector<SpanningRow> spanning_check(const std::vector<CurveSample>& curve, double step) {
  const std::size_t n = curve.size();
  if (n < 5) throw Error(ErrorKind::InvalidArgument, "spanning_check needs at least 5 samples");
  const double spacing = (curve.back().t - curve.front().t) / static_cast<double>(n - 1);
  if (!(spacing > 0)) throw Error(ErrorKind::InvalidArgument, "curve samples must have increasing t");
  for (std::size_t i = 0; i < n; ++i) {
    const double expected = curve.front().t + spacing * static_cast<double>(i);
    if (std::abs(curve[i].t - expected) > 1e-9 * std::max(1.0, std::abs(expected))) {
      throw Error(ErrorKind::InvalidArgument, "curve samples must be equispaced in t");
    }
    const double norm = std::sqrt(dot(curve[i].phi, curve[i].phi));
    if (std::abs(norm - 1) > 1e-8) {
      throw Error(ErrorKind::InvalidArgument, "curve sample at t=" + format_sig12(curve[i].t) +
                                                  " is not a unit vector (norm " + format_sig12(norm) + ")");
    }
  }
  if (step < 0) throw Error(ErrorKind::InvalidArgument, "finite-difference step must be positive");
  const std::size_t offset = step == 0 ? 1 : std::max<std::size_t>(1, std::lround(step / spacing));
  if (2 * offset >= n) throw Error(ErrorKind::InvalidArgument, "finite-difference step leaves no interior samples");
  const double h = spacing * static_cast<double>(offset);

  std::vector<SpanningRow> rows;
  for (std::size_t i = offset; i + offset < n; ++i) {
    const Vec3& prev = curve[i - offset].phi;
    const Vec3& here = curve[i].phi;
    const Vec3& next = curve[i + offset].phi;
    const Vec3 d1 = scale(sub(next, prev), 1 / (2 * h));
    const Vec3 d2 = scale(sub(sub(next, here), sub(here, prev)), 1 / (h * h));
    const double det = dot(here, cross(d1, d2));
    rows.push_back({curve[i].t, det, std::abs(det) >= kSpanningTolerance});
  }
  return rows;
}

std::vector<CurveSample> read_curve_csv(std::istream& in, const std::string& source) {
  std::vector<CurveSample> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line.rfind('#', 0) == 0) continue;
    std::stringstream row(line);
    std::string cell;
    std::vector<double> values;
    while (std::getline(row, cell, ',')) {
      try {
        values.push_back(to_double(parse_real(cell)));
      } catch (const Error&) {
        throw Error(ErrorKind::Io, source + ":" + std::to_string(line_no) + ": bad number '" + cell + "'");
      }
    }
    if (values.size() != 4) {
      throw Error(ErrorKind::Io, source + ":" + std::to_string(line_no) + ": expected t,x,y,z");
    }
    out.push_back({values[0], {values[1], values[2], values[3]}});
  }
  return out;
}

nlohmann::json to_json(const SweepReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : report.rows) {
    nlohmann::json param = nlohmann::json::array();
    for (double p : row.parameter) param.push_back(json_number(p));
    rows.push_back({{"parameter", param}, {"estimate", to_json(row.estimate)}});
  }
  return {{"threshold", json_number(report.threshold)},
          {"flagged", report.flagged},
          {"min", json_number(report.min)},
          {"median", json_number(report.median)},
          {"flaggedFraction", json_number(report.flagged_fraction)},
          {"rows", rows}};
}

nlohmann::json to_json(const std::vector<SpanningRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  bool all = true;
  for (const auto& r : rows) {
    out.push_back({{"t", json_number(r.t)}, {"det", json_number(r.det)}, {"spans", r.spans}});
    all = all && r.spans;
  }
  return {{"tolerance", kSpanningTolerance}, {"spansEverywhere", all}, {"samples", out}};
}

void write_sweep_csv(std::ostream& out, const SweepReport& report) {
  const std::size_t params = report.rows.empty() ? 0 : report.rows.front().parameter.size();
  for (std::size_t k = 0; k < params; ++k) out << "p" << k << ',';
  out << "estimate\n";
  for (const auto& row : report.rows) {
    for (double p : row.parameter) out << format_sig12(p) << ',';
    out << format_sig12(row.estimate.value) << '\n';
  }
}

}  // namespace assouad
