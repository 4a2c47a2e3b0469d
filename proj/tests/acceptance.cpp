// Acceptance suite: one PASS/FAIL line per criterion. A criterion passes when
// the built-in verify checks pass and the independent oracles below agree.
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <string>

#include "assouad/constructions.hpp"
#include "assouad/dimension.hpp"
#include "assouad/distances.hpp"
#include "assouad/projections.hpp"
#include "assouad/tangents.hpp"
#include "assouad/verify.hpp"
#include "test_support.hpp"

using namespace assouad;

namespace {

struct Oracle {
  int criterion;
  std::string name;
  std::function<bool(std::string&)> body;
};

PointCloud cantor(std::size_t depth) {
  const Ifs ifs({SimilarityMap::scaling(1, Real(1) / 3), SimilarityMap::scaling(1, Real(1) / 3, {Real(2) / 3})});
  return ifs_attractor(ifs, depth, testing::line({0, 1}));
}

// Occupied grid cells of the level-k Cantor intervals [a, a+1] (units 3^-k), by integer arithmetic.
std::size_t cantor_cells(int k) {
  std::set<long> ends{0};
  for (int level = 0; level < k; ++level) {
    std::set<long> next;
    for (long a : ends) next.insert({3 * a, 3 * a + 2});
    ends = next;
  }
  std::set<long> cells;
  for (long a : ends) cells.insert({a, a + 1});
  return cells.size();
}

double brute_gap(long double a, long double b, long m_max, long double lo, long double hi) {
  std::vector<long double> inside;
  long double below = -INFINITY, above = INFINITY;
  for (long m = 0; m <= m_max; ++m) {
    for (long n = -m_max; n <= m_max; ++n) {
      const long double v = m * std::log(a) + n * std::log(b);
      if (v < lo) below = std::max(below, v);
      else if (v > hi) above = std::min(above, v);
      else inside.push_back(v);
    }
  }
  inside.push_back(below);
  inside.push_back(above);
  std::sort(inside.begin(), inside.end());
  long double gap = 0;
  for (std::size_t i = 1; i < inside.size(); ++i) {
    if (inside[i] - inside[i - 1] > 1e-12L) gap = std::max(gap, inside[i] - inside[i - 1]);
  }
  return static_cast<double>(gap);
}

PointCloud pairwise(const PointCloud& f) {
  std::vector<Real> out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = 0; j < f.size(); ++j) out.push_back(distance(f.point(i), f.point(j)));
  }
  return PointCloud(1, out);
}

std::vector<Oracle> oracles() {
  std::vector<Oracle> list;

  list.push_back({1, "Cantor grid counts equal integer cell enumeration", [](std::string& why) {
                    const PointCloud f = cantor(12);
                    for (int k = 1; k <= 10; ++k) {
                      const std::size_t got = covering_count(f, pow_int(Real(3), -k));
                      if (got != cantor_cells(k) || got != (std::size_t{2} << k)) {
                        why = "k=" + std::to_string(k) + " count " + std::to_string(got);
                        return false;
                      }
                    }
                    return true;
                  }});

  list.push_back({2, "Example 2.7 distance set equals pairwise enumeration", [](std::string& why) {
                    const PointCloud f = ifs_attractor(example_2_7(9, 3), 6, testing::line({0}));
                    if (f.size() != 729) {
                      why = "attractor has " + std::to_string(f.size()) + " points";
                      return false;
                    }
                    return distance_set(f).same_points(pairwise(f));
                  }});
  list.push_back({2, "Example 2.7 distance box estimate inside [log3/log9 - 0.05, log5/log9 + 0.05]",
                  [](std::string& why) {
                    const PointCloud d = distance_set(ifs_attractor(example_2_7(9, 3), 6, testing::line({0})));
                    const double v = box_dimension(d, pow_int(Real(9), -5), pow_int(Real(9), -1), 9).value;
                    why = "estimate " + std::to_string(v);
                    return v <= std::log(5.0) / std::log(9.0) + 0.05 && v >= std::log(3.0) / std::log(9.0) - 0.05;
                  }});

  list.push_back({3, "both pipelines agree on 100 independent random clouds", [](std::string& why) {
                    std::mt19937_64 rng(777);
                    for (int i = 0; i < 100; ++i) {
                      const PointCloud f = testing::random_cloud(rng, 1, 200);
                      if (!(distance_set_via_projection(f) == distance_set(f))) {
                        why = "cloud " + std::to_string(i);
                        return false;
                      }
                    }
                    return true;
                  }});

  list.push_back({4, "brute-force lattice gaps", [](std::string& why) {
                    const double irrational = brute_gap(0.5L, 1.0L / 3, 300, -1, -0.01L);
                    const double rational = brute_gap(0.5L, 0.25L, 300, -1, -0.01L);
                    const double module_irr = log_lattice_gaps(0.5, 1.0 / 3, 300, -1, -0.01).max_gap;
                    const double module_rat = log_lattice_gaps(0.5, 0.25, 300, -1, -0.01).max_gap;
                    why = "brute " + std::to_string(irrational) + ", " + std::to_string(rational);
                    return irrational < 0.02 && rational >= 0.69 && std::abs(irrational - module_irr) < 1e-9 &&
                           std::abs(rational - module_rat) < 1e-9;
                  }});

  list.push_back({5, "zoom frames equal the enumerated k-grids; ball holds k+1 points", [](std::string& why) {
                    const PointCloud f = example_1_4(64);
                    const ZoomResult r = zoom(f, {example_1_4_zoom, Window::box({Real(0)}, Real(1)), 1, 64});
                    if (r.frames.size() != 64) return false;
                    for (const auto& frame : r.frames) {
                      std::vector<Real> grid;
                      for (long l = 0; l <= frame.k; ++l) grid.push_back(Real(l) / Real(frame.k));
                      if (testing::brute_hausdorff(frame.cloud, testing::line(grid)) != 0) {
                        why = "k=" + std::to_string(frame.k);
                        return false;
                      }
                    }
                    const Real center = pow_int(Real(2), -50);
                    const Real radius = 50 * pow_int(Real(4), -50);
                    std::size_t inside = 0;
                    for (const Real& x : f.coords()) inside += abs(x - center) <= radius;
                    why = "ball holds " + std::to_string(inside);
                    return inside == 51 && std::log(51.0) / std::log(50.0) > 1;
                  }});

  list.push_back({6, "blow-up distances by direct double loop", [](std::string& why) {
                    const PointCloud f = example_1_4(40);
                    const PointCloud f0 = example_1_4_skeleton(40);
                    const Window ball = Window::ball({Real(0)}, Real(1));
                    for (int n = 1; n <= 20; ++n) {
                      const SimilarityMap s = SimilarityMap::scaling(1, pow_int(Real(2), n));
                      const auto a = window_intersect(apply_similarity(s, f), ball);
                      const auto b = window_intersect(apply_similarity(s, f0), ball);
                      const Real d = testing::brute_hausdorff(*a, *b);
                      if (d > Real(n) * pow_int(Real(2), -n) + pow_int(Real(2), -40)) {
                        why = "n=" + std::to_string(n);
                        return false;
                      }
                    }
                    return true;
                  }});

  list.push_back({7, "closed form 2^-k for the stage similarity dimension", [](std::string& why) {
                    for (std::size_t k = 1; k <= 10; ++k) {
                      // Two maps with ratio 2^-(2^k): 2 * 2^(-2^k s) = 1 gives s = 2^-k.
                      const double s = similarity_dimension(moran_stage_ratios(Real(0.5), Real(0.5), k));
                      if (std::abs(s - std::ldexp(1.0, -static_cast<int>(k))) > 1e-10) {
                        why = "k=" + std::to_string(k);
                        return false;
                      }
                    }
                    return true;
                  }});

  list.push_back({8, "axis projections of C x C have the Cantor counts", [](std::string& why) {
                    const PointCloud c = cantor(8);
                    const PointCloud dust = product(c, c);
                    for (const auto& v : sample_directions(2, 1, 2)) {
                      const PointCloud p = project(dust, v);
                      if (!p.same_points(c)) return false;
                      for (int k = 1; k <= 5; ++k) {
                        if (covering_count(p, pow_int(Real(3), -k)) != cantor_cells(k)) {
                          why = "k=" + std::to_string(k);
                          return false;
                        }
                      }
                    }
                    return true;
                  }});

  list.push_back({9, "bound formulas recomputed by hand", [](std::string& why) {
                    for (int d = 2; d <= 6; ++d) {
                      const long double s = d / 2.0L + 1.0L / 3;
                      const long double first = (6 * s + 2 - 3 * d) / 4;
                      const long double second = s - (d - 1) / 2.0L;
                      const long double both = std::max({first, second, 0.0L});
                      if (std::abs(static_cast<double>(both) - 1) > 1e-12 ||
                          std::abs(falconer_erdogan_bound(d, static_cast<double>(s)) - 1) > 1e-12) {
                        why = "d=" + std::to_string(d);
                        return false;
                      }
                    }
                    for (int d = 2; d <= 5; ++d) {
                      for (int k = 1; k < d; ++k) {
                        for (double sf : {0.5, 1.0, 1.5, 2.5}) {
                          if (sf > d) continue;
                          const double s = std::min<double>(k, sf);
                          if (exception_bound(d, k, sf, s) != k * (d - k)) {
                            why = "d=" + std::to_string(d) + " k=" + std::to_string(k);
                            return false;
                          }
                        }
                      }
                    }
                    return true;
                  }});

  list.push_back({10, "metric axioms and spanning determinants, independent samples", [](std::string& why) {
                    std::mt19937_64 rng(4242);
                    for (int i = 0; i < 300; ++i) {
                      const PointCloud a = testing::random_cloud(rng, 2, 8);
                      const PointCloud b = testing::random_cloud(rng, 2, 8);
                      const PointCloud c = testing::random_cloud(rng, 2, 8);
                      const Real ab = testing::brute_hausdorff(a, b);
                      if (ab != hausdorff_distance(a, b) ||
                          testing::brute_hausdorff(a, c) > ab + testing::brute_hausdorff(b, c) + Real(1e-30)) {
                        why = "triple " + std::to_string(i);
                        return false;
                      }
                    }
                    std::vector<CurveSample> great, small;
                    const double tau = 2 * std::acos(-1.0);
                    for (int i = 0; i < 200; ++i) {
                      const double t = (i + 0.5) / 200;
                      great.push_back({t, {std::cos(tau * t), std::sin(tau * t), 0}});
                      const double h = 1 / std::sqrt(2.0);
                      small.push_back({t, {h * std::cos(tau * t), h * std::sin(tau * t), h}});
                    }
                    for (const auto& row : spanning_check(great)) {
                      if (std::abs(row.det) >= 1e-6) return false;
                    }
                    for (const auto& row : spanning_check(small)) {
                      if (std::abs(row.det) <= 1e-3) return false;
                    }
                    return true;
                  }});
  return list;
}

}  // namespace

int main() {
  const VerifyReport report = verify_paper();
  write_verify_table(std::cout, report);
  std::cout << '\n';

  std::vector<bool> oracle_ok(kCriterionCount + 1, true);
  for (const Oracle& o : oracles()) {
    std::string why;
    bool ok = false;
    try {
      ok = o.body(why);
    } catch (const std::exception& e) {
      why = e.what();
    }
    std::cout << "  oracle [" << o.criterion << "] " << (ok ? "ok   " : "FAIL ") << o.name;
    if (!ok && !why.empty()) std::cout << " (" << why << ")";
    std::cout << '\n';
    oracle_ok[o.criterion] = oracle_ok[o.criterion] && ok;
  }
  std::cout << '\n';

  bool all = true;
  for (int c = 1; c <= kCriterionCount; ++c) {
    const bool pass = report.criterion_passes(c) && oracle_ok[c];
    all = all && pass;
    std::cout << "criterion " << c << ": " << (pass ? "PASS" : "FAIL") << '\n';
  }
  std::cout << (all ? "acceptance: PASS" : "acceptance: FAIL") << '\n';
  return all ? 0 : 1;
}
