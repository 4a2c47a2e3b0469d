#include <doctest.h>

#include <set>

#include "assouad/constructions.hpp"
#include "test_support.hpp"

using namespace assouad;
using testing::line;
using testing::values;

namespace {

Ifs cantor() {
  return Ifs({SimilarityMap::scaling(1, Real(1) / 3), SimilarityMap::scaling(1, Real(1) / 3, {Real(2) / 3})});
}

// Left ends of the level-d Cantor intervals in units of 3^-d.
std::set<long> cantor_left_ends(int depth) {
  std::set<long> ends{0};
  long unit = 1;
  for (int level = 0; level < depth; ++level) {
    std::set<long> next;
    for (long a : ends) {
      next.insert(3 * a);
      next.insert(3 * a + 2);
    }
    ends = next;
    unit *= 3;
  }
  return ends;
}

}  // namespace

TEST_CASE("ifs_attractor examples") {
  const PointCloud one = ifs_attractor(cantor(), 1, line({0, 1}));
  CHECK(values(one) == std::vector<double>{0, 1.0 / 3, 2.0 / 3, 1});

  for (int depth = 1; depth <= 8; ++depth) {
    const PointCloud f = ifs_attractor(cantor(), depth, line({0, 1}));
    const auto ends = cantor_left_ends(depth);
    CHECK(f.size() == 2 * ends.size());
    CHECK(f.size() == (std::size_t{1} << (depth + 1)));
    const Real unit = pow_int(Real(3), -depth);
    std::vector<Real> expected;
    for (long a : ends) {
      expected.push_back(Real(a) * unit);
      expected.push_back(Real(a + 1) * unit);
    }
    CHECK(testing::brute_hausdorff(f, line(expected)) < Real(1e-30));
  }

  const Ifs half({SimilarityMap::scaling(1, Real(0.5))});
  CHECK(values(ifs_attractor(half, 3, line({1}))) == std::vector<double>{0.125});
}

TEST_CASE("ifs_attractor enforces the point cap with the projected count") {
  const std::string message = testing::error_message([] { ifs_attractor(cantor(), 30, line({0})); });
  CHECK(message.find("1073741824") != std::string::npos);
  CHECK(testing::error_kind([] { ifs_attractor(cantor(), 30, line({0})); }) == ErrorKind::CapExceeded);
  CHECK(testing::error_kind([] { ifs_attractor(cantor(), 5, line({0}), 16); }) == ErrorKind::CapExceeded);
}

TEST_CASE("ifs_attractor resolution bound and Hutchinson contraction") {
  const Ifs ifs = example_2_7(9, 3);
  for (std::size_t depth = 1; depth <= 5; ++depth) {
    const PointCloud a = ifs_attractor(ifs, depth, line({0}));
    const PointCloud b = ifs_attractor(ifs, depth + 1, line({0}));
    // The attractor sits in [0, 1/2]; seed {0} has diameter 0.
    CHECK(a.resolution() <= pow_int(Real(1) / 9, static_cast<long long>(depth)) * Real(0.5) * (1 + Real(1e-30)));
    // seed ∪ images = {0, 2/9, 4/9} has diameter 4/9.
    CHECK(hausdorff_distance(a, b) <= pow_int(Real(1) / 9, static_cast<long long>(depth)) * Real(4) / 9 + Real(1e-30));
  }
}

TEST_CASE("example_1_4 examples and properties") {
  CHECK(values(example_1_4(1)) == std::vector<double>{0, 0.5, 0.75});
  CHECK(values(example_1_4(2)) == std::vector<double>{0, 0.25, 0.3125, 0.375, 0.5, 0.75});
  CHECK(example_1_4(10).size() == 66);
  CHECK(example_1_4(10).resolution() == 0);
  for (std::size_t kmax = 1; kmax < 40; ++kmax) {
    const PointCloud small = example_1_4(kmax);
    const PointCloud large = example_1_4(kmax + 1);
    CHECK(large.size() == small.size() + kmax + 2);
    CHECK(*window_intersect(large, Window::box({Real(0)}, Real(0.75))) == large);
    for (const Real& x : small.coords()) {
      CHECK(std::binary_search(large.coords().begin(), large.coords().end(), x));
    }
  }
  CHECK(values(example_1_4_skeleton(3)) == std::vector<double>{0, 0.125, 0.25, 0.5});
}

TEST_CASE("example_2_7 maps and preconditions") {
  const Ifs ifs = example_2_7(9, 3);
  REQUIRE(ifs.maps().size() == 3);
  for (int i = 0; i < 3; ++i) {
    // S_i(x) = (x + 2i) / 9 evaluated at 0 and 1.
    CHECK(ifs.maps()[i](std::vector<Real>{Real(0)})[0] == Real(2 * i) / 9);
    CHECK(ifs.maps()[i](std::vector<Real>{Real(1)})[0] == Real(2 * i + 1) / 9);
  }
  CHECK(example_2_7(3, 1).maps().size() == 1);
  CHECK(example_2_7(3, 2).maps()[1](std::vector<Real>{Real(1)})[0] == Real(1));
  const std::string message = testing::error_message([] { example_2_7(4, 3); });
  CHECK(message.find("2K-1 <= N") != std::string::npos);
  CHECK(testing::error_kind([] { example_2_7(1, 1); }) == ErrorKind::InvalidArgument);
  CHECK(testing::error_kind([] { example_2_7(5, 0); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("example_2_7 attractors have K^depth points") {
  for (int n : {5, 9, 11}) {
    for (int k = 1; 2 * k - 1 <= n && k <= 4; ++k) {
      std::size_t expected = 1;
      for (std::size_t depth = 1; depth <= 5; ++depth) {
        expected *= static_cast<std::size_t>(k);
        CHECK(ifs_attractor(example_2_7(n, k), depth, line({0})).size() == expected);
      }
    }
  }
}

TEST_CASE("moran_construction examples") {
  const auto once = [](std::size_t) { return std::size_t{1}; };
  const auto twice = [](std::size_t) { return std::size_t{2}; };
  const PointCloud one = moran_construction(Real(0.5), Real(0.5), 1, once);
  CHECK(values(one) == std::vector<double>{0, 0.25, 0.75, 1});
  CHECK(one.resolution() == Real(0.25));

  const PointCloud two = moran_construction(Real(0.5), Real(0.5), 1, twice);
  CHECK(two.size() == 8);
  CHECK(two.resolution() == Real(1) / 16);
  CHECK(values(two) == std::vector<double>{0, 1.0 / 16, 3.0 / 16, 0.25, 0.75, 13.0 / 16, 15.0 / 16, 1});

  for (std::size_t levels = 1; levels <= 3; ++levels) {
    const PointCloud f = moran_construction(Real(0.3), Real(0.45), levels, once);
    CHECK(*window_intersect(f, Window::box({Real(0)}, Real(1))) == f);
  }
  CHECK(testing::error_kind([&] { moran_construction(Real(1), Real(0.5), 1, once); }) == ErrorKind::InvalidArgument);
  CHECK(testing::error_kind([] { moran_construction(Real(0.5), Real(0.5), 3, [](std::size_t k) { return 4 * k; }); }) ==
        ErrorKind::CapExceeded);
}

TEST_CASE("moran stage ratios are a^(2^k), b^(2^k)") {
  const auto r = moran_stage_ratios(Real(0.5), Real(0.25), 3);
  CHECK(r[0] == pow_int(Real(2), -8));
  CHECK(r[1] == pow_int(Real(2), -16));
}

TEST_CASE("product examples") {
  const PointCloud square = product(line({0, 1}), line({0, 1}));
  CHECK(square.size() == 4);
  CHECK(square == PointCloud::from_rows({{Real(0), Real(0)}, {Real(0), Real(1)}, {Real(1), Real(0)}, {Real(1), Real(1)}}));

  const PointCloud embedded = product(line({2}), line({0, 0.5}));
  CHECK(embedded == PointCloud::from_rows({{Real(2), Real(0)}, {Real(2), Real(0.5)}}));

  const PointCloud c4 = ifs_attractor(cantor(), 4, line({0, 1}));
  CHECK(c4.size() == 32);
  const PointCloud dust = product(c4, c4);
  CHECK(dust.size() == 1024);
  CHECK(dust.resolution() == sqrt(2 * c4.resolution() * c4.resolution()));
  CHECK(testing::error_kind([&] { product(dust, dust, 1000); }) == ErrorKind::CapExceeded);
}

TEST_CASE("construction specs round-trip through JSON and generate") {
  const nlohmann::json docs[] = {
      {{"variant", "Example27"}, {"N", 9}, {"K", 3}, {"depth", 6}},
      {{"variant", "Example14"}, {"kmax", 5}},
      {{"variant", "Moran"}, {"a", 0.5}, {"b", 0.5}, {"levels", 2}, {"rep", {1, 2}}},
      {{"variant", "PlainIFS"},
       {"depth", 3},
       {"maps", {{{"scale", 0.5}, {"translation", {0}}}, {{"scale", 0.5}, {"translation", {0.5}}}}},
       {"seed", {{0}}}},
      {{"variant", "Product"},
       {"left", {{"variant", "Example14"}, {"kmax", 2}}},
       {"right", {{"variant", "Example27"}, {"N", 3}, {"K", 1}, {"depth", 2}}}},
  };
  for (const auto& doc : docs) {
    const ConstructionSpec spec = construction_from_json(doc);
    CHECK(generate(construction_from_json(to_json(spec))) == generate(spec));
  }
  CHECK(generate(construction_from_json(docs[0])).size() == 729);
  CHECK(generate(construction_from_json(docs[1])).size() == 1 + 2 + 3 + 4 + 5 + 6);
  CHECK(generate(construction_from_json(docs[4])).size() == 6);

  CHECK(testing::error_kind([] { construction_from_json({{"variant", "Example27"}, {"N", 4}, {"K", 3}}); }) ==
        ErrorKind::InvalidArgument);
  CHECK(testing::error_kind([] { construction_from_json({{"variant", "Nope"}}); }) == ErrorKind::InvalidArgument);
  CHECK(testing::error_kind([] { construction_from_json({{"kmax", 3}}); }) == ErrorKind::InvalidArgument);
}
