#include <doctest.h>

#include <cmath>
#include <limits>
#include <set>

#include "assouad/constructions.hpp"
#include "assouad/distances.hpp"
#include "test_support.hpp"

using namespace assouad;
using testing::line;
using testing::values;

namespace {

// Max gap from the definition: every lattice value, no deduplication tricks beyond exact repeats.
double brute_gap(long double a, long double b, long m_max, long double lo, long double hi) {
  std::vector<long double> inside;
  long double below = -std::numeric_limits<long double>::infinity();
  long double above = std::numeric_limits<long double>::infinity();
  for (long m = 0; m <= m_max; ++m) {
    for (long n = -m_max; n <= m_max; ++n) {
      const long double v = m * std::log(a) + n * std::log(b);
      if (v < lo) below = std::max(below, v);
      else if (v > hi) above = std::min(above, v);
      else inside.push_back(v);
    }
  }
  if (inside.empty()) return -1;
  inside.push_back(below);
  inside.push_back(above);
  std::sort(inside.begin(), inside.end());
  long double gap = 0;
  for (std::size_t i = 1; i < inside.size(); ++i) {
    if (inside[i] - inside[i - 1] > 1e-12L) gap = std::max(gap, inside[i] - inside[i - 1]);
  }
  return static_cast<double>(gap);
}

PointCloud brute_distances(const PointCloud& f) {
  std::vector<Real> out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = 0; j < f.size(); ++j) out.push_back(distance(f.point(i), f.point(j)));
  }
  return PointCloud(1, out);
}

}  // namespace

TEST_CASE("distance_set examples") {
  CHECK(values(distance_set(line({0, 1}))) == std::vector<double>{0, 1});
  CHECK(values(distance_set(line({0, 1, 3}))) == std::vector<double>{0, 1, 2, 3});
  CHECK(values(distance_set(line({0.7}))) == std::vector<double>{0});
  CHECK(values(distance_set(PointCloud::from_rows({{Real(0), Real(0)}, {Real(3), Real(4)}}))) ==
        std::vector<double>{0, 5});
  CHECK(distance_set(line({0, 1}, 0.125)).resolution() == Real(0.25));
}

TEST_CASE("distance_set matches pairwise enumeration") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 50; ++i) {
    const PointCloud f = testing::random_cloud(rng, 1 + i % 3, 60);
    CHECK(distance_set(f).same_points(brute_distances(f)));
  }
}

TEST_CASE("distance_set_via_projection examples") {
  CHECK(values(distance_set_via_projection(line({0, 1}))) == std::vector<double>{0, 1});
  CHECK(values(distance_set_via_projection(line({0, 0.5, 0.75}))) == std::vector<double>{0, 0.25, 0.5, 0.75});
  CHECK(testing::error_kind([] { distance_set_via_projection(PointCloud::singleton({Real(0), Real(0)})); }) ==
        ErrorKind::DimensionMismatch);
}

TEST_CASE("both distance pipelines agree exactly") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    const PointCloud f = testing::random_cloud(rng, 1, 200);
    CHECK(distance_set_via_projection(f) == distance_set(f));
  }
  const PointCloud ex27 = ifs_attractor(example_2_7(9, 3), 6, line({0}));
  CHECK(distance_set_via_projection(ex27) == distance_set(ex27));
}

TEST_CASE("distance_set enforces the pair cap") {
  std::vector<Real> xs;
  for (int i = 0; i < 100; ++i) xs.push_back(Real(i));
  const PointCloud f = line(xs);
  CHECK(testing::error_kind([&] { distance_set(f, 1000); }) == ErrorKind::CapExceeded);
  CHECK(testing::error_message([&] { distance_set(f, 1000); }).find("4950") != std::string::npos);
  CHECK(testing::error_kind([&] { distance_set_via_projection(f, 1000); }) == ErrorKind::CapExceeded);
  CHECK(distance_set(f, 4950).size() == 100);
}

TEST_CASE("distance_set does not depend on the worker count") {
  std::mt19937_64 rng(8);
  const PointCloud f = testing::random_cloud(rng, 2, 300);
  CHECK(distance_set(f, kDefaultPairCap, 1) == distance_set(f, kDefaultPairCap, 3));
}

TEST_CASE("distance sets scale with rotation-free similarities") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 40; ++i) {
    const std::size_t d = 1 + i % 3;
    const PointCloud f = testing::random_cloud(rng, d, 50);
    const Real c = Real(std::exp(u(rng)));
    std::vector<Real> shift(d);
    for (Real& s : shift) s = Real(u(rng));
    const PointCloud moved = distance_set(apply_similarity(SimilarityMap::scaling(d, c, shift), f));
    const PointCloud base = distance_set(f);
    REQUIRE(moved.size() == base.size());
    for (std::size_t k = 0; k < base.size(); ++k) {
      const Real expected = c * base.coord(k, 0);
      CHECK(to_double(abs(moved.coord(k, 0) - expected)) <= 1e-9 * to_double(expected) + 1e-30);
    }
  }
}

TEST_CASE("refined clouds have nearby distance sets") {
  const Ifs cantor({SimilarityMap::scaling(1, Real(1) / 3), SimilarityMap::scaling(1, Real(1) / 3, {Real(2) / 3})});
  for (std::size_t depth = 2; depth <= 5; ++depth) {
    const PointCloud f = ifs_attractor(cantor, depth, line({0, 1}));
    const PointCloud g = ifs_attractor(cantor, depth + 2, line({0, 1}));
    CHECK(g.resolution() <= f.resolution());
    CHECK(hausdorff_distance(distance_set(f), distance_set(g)) <= 2 * f.resolution());
  }
}

TEST_CASE("log_lattice_gaps examples") {
  const GapReport irrational = log_lattice_gaps(0.5, 1.0 / 3, 300, -1, -0.01);
  CHECK(irrational.max_gap < 0.02);
  CHECK(irrational.max_gap == doctest::Approx(brute_gap(0.5L, 1.0L / 3, 300, -1, -0.01L)).epsilon(1e-9));
  CHECK(irrational.sample_count >= 2);

  for (long m : {1L, 5L, 300L}) {
    const GapReport rational = log_lattice_gaps(0.5, 0.25, m, -1, -0.01);
    CHECK(rational.max_gap >= std::log(2.0) - 1e-12);
    CHECK(rational.max_gap == doctest::Approx(brute_gap(0.5L, 0.25L, m, -1, -0.01L)).epsilon(1e-9));
  }
}

TEST_CASE("log_lattice_gaps never grows with M") {
  double previous = std::numeric_limits<double>::infinity();
  for (long m = 1; m <= 80; ++m) {
    const double gap = log_lattice_gaps(0.5, 1.0 / 3, m, -1, -0.01).max_gap;
    CHECK(gap <= previous + 1e-12);
    previous = gap;
  }
}

TEST_CASE("log_lattice_gaps agrees with enumeration on random parameters") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ratio(0.05, 0.95);
  for (int i = 0; i < 30; ++i) {
    const double a = ratio(rng), b = ratio(rng);
    const long m = 3 + i;
    const double expected = brute_gap(a, b, m, -2, -0.1L);
    if (expected < 0) {
      CHECK(testing::error_kind([&] { log_lattice_gaps(a, b, m, -2, -0.1); }) == ErrorKind::EmptyResult);
      continue;
    }
    const double gap = log_lattice_gaps(a, b, m, -2, -0.1).max_gap;
    if (std::isinf(expected)) CHECK(std::isinf(gap));
    else CHECK(gap == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("log_lattice_gaps preconditions and JSON") {
  CHECK(testing::error_kind([] { log_lattice_gaps(1.5, 0.5, 3, -1, -0.1); }) == ErrorKind::InvalidArgument);
  CHECK(testing::error_kind([] { log_lattice_gaps(0.5, 0.5, 0, -1, -0.1); }) == ErrorKind::InvalidArgument);
  CHECK(testing::error_kind([] { log_lattice_gaps(0.5, 0.5, 3, -0.1, -1); }) == ErrorKind::InvalidArgument);
  CHECK(testing::error_kind([] { log_lattice_gaps(0.5, 0.5, 3, -1, 0.5); }) == ErrorKind::InvalidArgument);
  // ln(1/2) and ln(1/4) lattice points avoid (-0.6, -0.1).
  CHECK(testing::error_kind([] { log_lattice_gaps(0.5, 0.25, 3, -0.6, -0.1); }) == ErrorKind::EmptyResult);

  const auto doc = to_json(log_lattice_gaps(0.5, 0.25, 4, -1, -0.01));
  CHECK(doc["a"] == 0.5);
  CHECK(doc["M"] == 4);
  CHECK(doc.contains("maxGap"));
  CHECK(doc.contains("sampleCount"));
}
