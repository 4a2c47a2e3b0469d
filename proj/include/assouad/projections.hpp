#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "assouad/dimension.hpp"

namespace assouad {

/// A k-plane in R^d given by an orthonormal frame (k rows of length d).
class Subspace {
 public:
  Subspace(std::size_t ambient, std::vector<std::vector<Real>> frame, std::vector<double> parameter = {});

  std::size_t ambient() const noexcept { return ambient_; }
  std::size_t rank() const noexcept { return frame_.size(); }
  const std::vector<std::vector<Real>>& frame() const noexcept { return frame_; }
  /// Angle for G(2,1), the sampled unit vector for G(3,1), the normal for G(3,2).
  const std::vector<double>& parameter() const noexcept { return parameter_; }

 private:
  std::size_t ambient_;
  std::vector<std::vector<Real>> frame_;
  std::vector<double> parameter_;
};

/// Deterministic quasi-uniform samples of G(2,1), G(3,1) and G(3,2).
std::vector<Subspace> sample_directions(std::size_t d, std::size_t k, std::size_t n);

/// Frame coordinates of the orthogonal projection; resolution unchanged.
PointCloud project(const PointCloud& f, const Subspace& v);

struct SweepRow {
  std::vector<double> parameter;
  DimensionEstimate estimate;
};

struct SweepReport {
  std::vector<SweepRow> rows;
  double threshold = 0;
  std::vector<std::size_t> flagged;
  double min = 0;
  double median = 0;
  double flagged_fraction = 0;
};

/// assouad_estimate of every projection; flags directions estimating below threshold.
/// Per-direction covering profiles are dropped to keep the report small.
SweepReport projection_sweep(const PointCloud& f, const std::vector<Subspace>& dirs, const AssouadConfig& config,
                             double threshold);

struct CurveSample {
  double t;
  std::array<double, 3> phi;
};

struct SpanningRow {
  double t;
  double det;
  bool spans;
};

inline constexpr double kSpanningTolerance = 1e-6;

/// det[phi, phi', phi''] at interior samples by central differences with the
/// given step (0: the sample spacing). A sample fails when |det| < 1e-6.
std::vector<SpanningRow> spanning_check(const std::vector<CurveSample>& curve, double step = 0);

/// Curve samples as "t,x,y,z" rows; lines starting with '#' are skipped.
std::vector<CurveSample> read_curve_csv(std::istream& in, const std::string& source = "<stream>");

nlohmann::json to_json(const SweepReport& report);
nlohmann::json to_json(const std::vector<SpanningRow>& rows);
/// "parameter...,estimate" rows.
void write_sweep_csv(std::ostream& out, const SweepReport& report);

}  // namespace assouad
