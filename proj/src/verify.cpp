#include "assouad/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <random>

#include "assouad/constructions.hpp"
#include "assouad/dimension.hpp"
#include "assouad/distances.hpp"
#include "assouad/error.hpp"
#include "assouad/projections.hpp"
#include "assouad/tangents.hpp"
#include "json_util.hpp"

namespace assouad {
namespace {

const double kLog2Log3 = std::log(2.0) / std::log(3.0);

struct Outcome {
  std::string expected;
  double measured;
  double tolerance;
  bool pass;
  std::string note = {};
};

Outcome within(double measured, double target, double tolerance) {
  return {format_sig12(target) + " +- " + format_sig12(tolerance), measured, tolerance,
          std::abs(measured - target) <= tolerance};
}

Outcome at_most(double measured, double limit) {
  return {"<= " + format_sig12(limit), measured, 0, measured <= limit};
}

Outcome at_least(double measured, double limit) {
  return {">= " + format_sig12(limit), measured, 0, measured >= limit};
}

Outcome exactly(double measured, double target) {
  return {"== " + format_sig12(target), measured, 0, measured == target};
}

std::vector<Real> powers(const Real& base, int from, int to) {
  std::vector<Real> out;
  for (int e = from; e <= to; ++e) out.push_back(pow_int(base, e));
  return out;
}

Ifs cantor_ifs() {
  return Ifs({SimilarityMap::scaling(1, Real(1) / 3), SimilarityMap::scaling(1, Real(1) / 3, {Real(2) / 3})},
             "triadic Cantor");
}

AssouadConfig config(std::vector<Real> big, std::vector<Real> ratios, unsigned workers) {
  AssouadConfig cfg;
  cfg.big_scales = std::move(big);
  cfg.ratios = std::move(ratios);
  cfg.workers = workers;
  return cfg;
}

// Inputs shared between criteria; each is built on first use.
class Suite {
 public:
  explicit Suite(const VerifyOptions& options) : workers_(options.workers) {}

  unsigned workers() const { return workers_; }

  const PointCloud& cantor() {
    return get(cantor_, [] { return ifs_attractor(cantor_ifs(), 12, PointCloud(1, {Real(0), Real(1)})); });
  }
  AssouadConfig cantor_config() const { return config(powers(Real(3), -3, -1), powers(Real(3), 1, 5), workers_); }

  const PointCloud& ex27() {
    return get(ex27_, [] { return ifs_attractor(example_2_7(9, 3), 6, PointCloud(1, {Real(0)})); });
  }
  const PointCloud& ex27_distances() { return get(ex27_d_, [&] { return distance_set(ex27(), kDefaultPairCap, workers_); }); }
  AssouadConfig ninefold_config() const { return config(powers(Real(9), -2, -1), powers(Real(9), 1, 3), workers_); }

  const PointCloud& dust() {
    return get(dust_, [] {
      const PointCloud c = ifs_attractor(cantor_ifs(), 8, PointCloud(1, {Real(0)}));
      return product(c, c);
    });
  }
  AssouadConfig dust_config() const { return config(powers(Real(3), -2, -1), powers(Real(3), 1, 4), workers_); }

  const PointCloud& moran() {
    return get(moran_, [] { return moran_construction(Real(0.5), Real(0.5), 2, [](std::size_t k) { return 4 * k; }); });
  }
  // With rep(k) = 4k, stage 1 spans scales [2^-8, 1] and stage 2 spans [2^-40, 2^-8].
  AssouadConfig moran_stage_config(int stage) const {
    if (stage == 1) return config({Real(1)}, powers(Real(4), 1, 4), workers_);
    return config({pow_int(Real(2), -8)}, powers(Real(16), 1, 6), workers_);
  }

  const PointCloud& ex14() { return get(ex14_, [] { return example_1_4(64); }); }

 private:
  template <class Make>
  const PointCloud& get(std::optional<PointCloud>& slot, Make make) {
    if (!slot) slot = make();
    return *slot;
  }

  unsigned workers_;
  std::optional<PointCloud> cantor_, ex27_, ex27_d_, dust_, moran_, ex14_;
};

class Runner {
 public:
  Runner(VerifyReport& report, const VerifyOptions& options) : report_(report), options_(options) {}

  bool wants(int criterion) const {
    return options_.criteria.empty() ||
           std::find(options_.criteria.begin(), options_.criteria.end(), criterion) != options_.criteria.end();
  }

  void run(const std::string& id, int criterion, const std::string& description, const std::function<Outcome()>& body) {
    if (!wants(criterion)) return;
    const auto start = std::chrono::steady_clock::now();
    Check check{id, criterion, description, {}, std::nan(""), 0, false, 0, {}};
    try {
      Outcome o = body();
      check.expected = std::move(o.expected);
      check.measured = o.measured;
      check.tolerance = o.tolerance;
      check.pass = o.pass;
      check.note = std::move(o.note);
    } catch (const std::exception& e) {
      check.note = std::string("error: ") + e.what();
    }
    check.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report_.checks.push_back(std::move(check));
  }

 private:
  VerifyReport& report_;
  const VerifyOptions& options_;
};

PointCloud random_cloud(std::mt19937_64& rng, std::size_t dim, std::size_t max_points) {
  std::uniform_int_distribution<std::size_t> count(1, max_points);
  std::uniform_real_distribution<double> coord(0.0, 1.0);
  // Half the clouds sit on a coarse dyadic lattice so that repeated distances occur.
  const bool lattice = std::bernoulli_distribution(0.5)(rng);
  const std::size_t n = count(rng);
  std::vector<Real> coords;
  for (std::size_t i = 0; i < n * dim; ++i) {
    const double u = coord(rng);
    coords.push_back(lattice ? Real(std::floor(u * 64)) / 64 : Real(u));
  }
  return PointCloud(dim, std::move(coords));
}

void criterion_1(Runner& run, Suite& suite) {
  run.run("cantor.box", 1, "triadic Cantor set (depth 12): box dimension over [3^-10, 3^-2]", [&] {
    const auto est = box_dimension(suite.cantor(), pow_int(Real(3), -10), pow_int(Real(3), -2), 9);
    return within(est.value, kLog2Log3, 0.03);
  });
  run.run("cantor.assouad", 1, "triadic Cantor set (depth 12): Assouad estimate", [&] {
    const auto est = assouad_estimate(suite.cantor(), suite.cantor_config());
    return within(est.value, kLog2Log3, 0.07);
  });
  run.run("cantor.exact_counts", 1, "grid counts at r = 3^-k are 2 * 2^k (the optimal 2^k cover, closed right ends)",
          [&] {
            double worst = 0;
            for (int k = 1; k <= 10; ++k) {
              const double count = static_cast<double>(covering_count(suite.cantor(), pow_int(Real(3), -k)));
              worst = std::max(worst, std::abs(count - std::ldexp(2.0, k)));
            }
            return exactly(worst, 0);
          });
}

void criterion_2(Runner& run, Suite& suite) {
  const double half = 0.5;
  const double log5_log9 = std::log(5.0) / std::log(9.0);
  const double log3_log9 = std::log(3.0) / std::log(9.0);
  run.run("ex27.points", 2, "Example 2.7 (N=9, K=3, depth 6) has K^depth points", [&] {
    return exactly(static_cast<double>(suite.ex27().size()), 729);
  });
  run.run("ex27.box", 2, "Example 2.7 attractor: box dimension vs log K / log N", [&] {
    return within(box_dimension(suite.ex27(), pow_int(Real(9), -5), pow_int(Real(9), -1), 5).value, half, 0.05);
  });
  run.run("ex27.assouad", 2, "Example 2.7 attractor: Assouad estimate vs log K / log N", [&] {
    return within(assouad_estimate(suite.ex27(), suite.ninefold_config()).value, half, 0.05);
  });
  run.run("ex27.distance_box_upper", 2, "distance set box estimate <= log 5 / log 9 + 0.05", [&] {
    const auto est = box_dimension(suite.ex27_distances(), pow_int(Real(9), -5), pow_int(Real(9), -1), 5);
    return at_most(est.value, log5_log9 + 0.05);
  });
  run.run("ex27.distance_box_lower", 2, "distance set box estimate >= log 3 / log 9 - 0.05", [&] {
    const auto est = box_dimension(suite.ex27_distances(), pow_int(Real(9), -5), pow_int(Real(9), -1), 5);
    return at_least(est.value, log3_log9 - 0.05);
  });
  run.run("ex27.distance_upper_bound", 2, "distance set Assouad estimate <= log(2K-1) / log N + 0.05", [&] {
    const auto est = assouad_estimate(suite.ex27_distances(), suite.ninefold_config());
    return at_most(est.value, log5_log9 + 0.05);
  });
}

void criterion_3(Runner& run, Suite& suite, std::uint64_t seed) {
  run.run("projection_identity.random", 3, "|x - y| via f x f equals the direct distance set on 100 random clouds",
          [&] {
            std::mt19937_64 rng(seed);
            double mismatches = 0;
            for (int i = 0; i < 100; ++i) {
              const PointCloud f = random_cloud(rng, 1, 200);
              if (!(distance_set_via_projection(f) == distance_set(f))) ++mismatches;
            }
            return exactly(mismatches, 0);
          });
  run.run("projection_identity.ex27", 3, "projection pipeline equals the distance set on Example 2.7", [&] {
    const bool same = distance_set_via_projection(suite.ex27()) == suite.ex27_distances();
    return exactly(same ? 0 : 1, 0);
  });
}

// Gap of the sorted lattice values around [lo, hi] by plain enumeration, for cross-checking.
double brute_force_gap(double a, double b, long m, double lo, double hi) {
  std::vector<long double> inside;
  long double below = -INFINITY, above = INFINITY;
  for (long i = 0; i <= m; ++i) {
    for (long j = -m; j <= m; ++j) {
      const long double v = i * std::log(static_cast<long double>(a)) + j * std::log(static_cast<long double>(b));
      if (v < lo) below = std::max(below, v);
      else if (v > hi) above = std::min(above, v);
      else inside.push_back(v);
    }
  }
  std::sort(inside.begin(), inside.end());
  long double gap = inside.front() - below;
  for (std::size_t i = 1; i < inside.size(); ++i) gap = std::max(gap, inside[i] - inside[i - 1]);
  return static_cast<double>(std::max(gap, above - inside.back()));
}

void criterion_4(Runner& run) {
  run.run("lattice.irrational", 4, "log-lattice of (1/2, 1/3), M=300: max gap in [-1, -0.01]", [] {
    return at_most(log_lattice_gaps(0.5, 1.0 / 3.0, 300, -1, -0.01).max_gap, 0.02);
  });
  run.run("lattice.rational", 4, "log-lattice of (1/2, 1/4), M=300: max gap stays at ln 2", [] {
    return at_least(log_lattice_gaps(0.5, 0.25, 300, -1, -0.01).max_gap, 0.69);
  });
  run.run("lattice.monotone_in_m", 4, "max gap is non-increasing in M (irrational pair, M = 10..300)", [] {
    double previous = INFINITY, worst = -INFINITY;
    for (long m : {10L, 25L, 50L, 100L, 200L, 300L}) {
      const double g = log_lattice_gaps(0.5, 1.0 / 3.0, m, -1, -0.01).max_gap;
      worst = std::max(worst, g - previous);
      previous = g;
    }
    return at_most(worst, 0);
  });
  run.run("lattice.brute_force", 4, "max gaps agree with plain enumeration", [] {
    double worst = 0;
    for (double b : {1.0 / 3.0, 0.25}) {
      const double g = log_lattice_gaps(0.5, b, 300, -1, -0.01).max_gap;
      worst = std::max(worst, std::abs(g - brute_force_gap(0.5, b, 300, -1, -0.01)));
    }
    return at_most(worst, 1e-9);
  });
}

void criterion_5(Runner& run, Suite& suite) {
  auto frames = [&] {
    return zoom(suite.ex14(), {example_1_4_zoom, Window::box({Real(0)}, Real(1)), 1, 64}, suite.workers()).frames;
  };
  run.run("ex14.zoom_identity", 5, "T_k(F) ∩ [0,1] = {l/k : 0 <= l <= k} exactly for k <= 64", [&] {
    Real worst = 0;
    double missing = 64;
    for (const auto& frame : frames()) {
      std::vector<Real> grid;
      for (long l = 0; l <= frame.k; ++l) grid.push_back(Real(l) / Real(frame.k));
      worst = std::max(worst, hausdorff_distance(frame.cloud, PointCloud(1, grid)));
      --missing;
    }
    Outcome o = exactly(to_double(worst), 0);
    if (missing != 0) o.pass = false, o.note = "zoom frames missing";
    return o;
  });
  run.run("ex14.standin_distance", 5, "distance to the 2^-11 grid on [0,1] minus (1/(2k) + 2^-11)", [&] {
    const PointCloud grid = uniform_grid(Real(0), Real(1), pow_int(Real(2), -11));
    Real worst = -1;
    for (const auto& frame : frames()) {
      const Real bound = Real(1) / (2 * Real(frame.k)) + pow_int(Real(2), -11);
      worst = std::max(worst, hausdorff_distance(frame.cloud, grid) - bound);
    }
    return at_most(to_double(worst), 0);
  });
  run.run("ex14.pinned_assouad", 5, "pinned center 2^-50, R = 50 * 4^-50, R/r = 50: exponent log 51 / log 50", [&] {
    AssouadConfig cfg;
    cfg.big_scales = {Real(50) * pow_int(Real(4), -50)};
    cfg.ratios = {Real(50)};
    cfg.sample_centers = false;
    cfg.pinned_centers = {{pow_int(Real(2), -50)}};
    cfg.workers = suite.workers();
    return at_least(assouad_estimate(suite.ex14(), cfg).value, 0.95);
  });
}

void criterion_6(Runner& run) {
  run.run("ex14.tangent_bound", 6, "d_H(S_n F ∩ B, S_n F0 ∩ B) - m 2^-m for c_n = 2^n, n <= 20, kmax = 40", [] {
    const auto rows = tangent_comparison_1_4(40, powers(Real(2), 1, 20));
    Real worst = -1;
    for (const auto& r : rows) worst = std::max(worst, r.distance - r.bound);
    return at_most(to_double(worst), std::ldexp(1.0, -40));
  });
}

void criterion_7(Runner& run, Suite& suite) {
  run.run("moran.similarity", 7, "similarity dimension of stage-k ratios (a=b=1/2) is 2^-k, k = 1..10", [] {
    double worst = 0;
    for (std::size_t k = 1; k <= 10; ++k) {
      const auto ratios = moran_stage_ratios(Real(0.5), Real(0.5), k);
      worst = std::max(worst, std::abs(similarity_dimension(ratios) - std::ldexp(1.0, -static_cast<int>(k))));
    }
    return at_most(worst, 1e-10);
  });
  run.run("moran.envelope", 7, "rep(k) = 4k: stage-k Assouad estimates decrease in k (stages 1, 2)", [&] {
    const double s1 = assouad_estimate(suite.moran(), suite.moran_stage_config(1)).value;
    const double s2 = assouad_estimate(suite.moran(), suite.moran_stage_config(2)).value;
    Outcome o = at_most(s2 - s1, -1e-9);
    o.note = "stage estimates " + format_sig12(s1) + ", " + format_sig12(s2);
    return o;
  });
}

void criterion_8(Runner& run, Suite& suite) {
  std::optional<SweepReport> sweep;
  auto get = [&]() -> const SweepReport& {
    if (!sweep) sweep = projection_sweep(suite.dust(), sample_directions(2, 1, 180), suite.dust_config(), 0.85);
    return *sweep;
  };
  run.run("sweep.typical", 8, "C x C (depth 8), 180 directions: fraction estimating >= 0.85", [&] {
    Outcome o = at_least(1 - get().flagged_fraction, 0.95);
    o.note = "min " + format_sig12(get().min) + ", median " + format_sig12(get().median);
    return o;
  });
  run.run("sweep.axes", 8, "C x C axis projections estimate log 2 / log 3", [&] {
    const auto& rows = get().rows;
    const double worst = std::max(std::abs(rows[0].estimate.value - kLog2Log3),
                                  std::abs(rows[90].estimate.value - kLog2Log3));
    Outcome o = at_most(worst, 0.05);
    o.expected = "|estimate - " + format_sig12(kLog2Log3) + "| <= 0.05";
    return o;
  });
}

void criterion_9(Runner& run) {
  run.run("bounds.fe_continuity", 9, "Falconer-Erdogan bound meets the constant 1 at s = d/2 + 1/3, d = 2..6", [] {
    double worst = 0;
    for (int d = 2; d <= 6; ++d) {
      const double s = d / 2.0 + 1.0 / 3.0;
      // Formula side: the larger expression is (6s + 2 - 3d)/4 = 1; s - (d-1)/2 is 5/6 there.
      const double below = std::max((6 * s + 2 - 3 * d) / 4, s - (d - 1) / 2.0);
      const double eps = 1e-9;
      worst = std::max({worst, std::abs(below - 1), std::abs(falconer_erdogan_bound(d, s) - 1),
                        std::abs(falconer_erdogan_formula(d, s) - 1),
                        std::abs(falconer_erdogan_bound(d, s - eps) - falconer_erdogan_bound(d, s + eps))});
    }
    return at_most(worst, 1e-8);
  });
  run.run("bounds.exception_boundary", 9, "exception bound at s = min{k, sF} is k(d-k)", [] {
    double worst = 0;
    for (int d = 2; d <= 6; ++d) {
      for (int k = 1; k < d; ++k) {
        for (double sf : {0.5, 1.0, 1.5, 2.0, static_cast<double>(d)}) {
          const double s = std::min<double>(k, sf);
          worst = std::max(worst, std::abs(exception_bound(d, k, sf, s) - k * (d - k)));
        }
      }
    }
    return exactly(worst, 0);
  });
}

void criterion_10(Runner& run, Suite& suite, std::uint64_t seed) {
  run.run("props.hausdorff_metric", 10, "metric axioms on 1000 random triples of clouds", [&] {
    std::mt19937_64 rng(seed + 1);
    double violations = 0;
    for (int i = 0; i < 1000; ++i) {
      const std::size_t d = 1 + i % 3;
      const PointCloud a = random_cloud(rng, d, 12), b = random_cloud(rng, d, 12), c = random_cloud(rng, d, 12);
      const Real ab = hausdorff_distance(a, b), ba = hausdorff_distance(b, a);
      const Real bc = hausdorff_distance(b, c), ac = hausdorff_distance(a, c);
      if (hausdorff_distance(a, a) != 0 || ab != ba) ++violations;
      if ((ab == 0) != a.same_points(b)) ++violations;
      if (ac > (ab + bc) * (1 + Real(1e-30))) ++violations;
    }
    return exactly(violations, 0);
  });
  run.run("props.projection_lipschitz", 10, "|Px - Py| <= |x - y| on 1000 random pairs", [&] {
    std::mt19937_64 rng(seed + 2);
    std::uniform_real_distribution<double> u(-1, 1);
    const auto g21 = sample_directions(2, 1, 37), g31 = sample_directions(3, 1, 41), g32 = sample_directions(3, 2, 41);
    double violations = 0;
    for (int i = 0; i < 1000; ++i) {
      const auto& dirs = i % 3 == 0 ? g21 : i % 3 == 1 ? g31 : g32;
      const Subspace& v = dirs[static_cast<std::size_t>(i) % dirs.size()];
      std::vector<Real> x, y;
      for (std::size_t k = 0; k < v.ambient(); ++k) x.push_back(Real(u(rng))), y.push_back(Real(u(rng)));
      if (x == y) continue;
      const PointCloud px = project(PointCloud(v.ambient(), x), v), py = project(PointCloud(v.ambient(), y), v);
      if (distance(px.point(0), py.point(0)) > distance(x, y) * (1 + Real(1e-25))) ++violations;
    }
    return exactly(violations, 0);
  });
  run.run("props.distance_similarity", 10, "D(T f) = c D(f) for rotation-free similarities (1e-9 relative)", [&] {
    std::mt19937_64 rng(seed + 3);
    std::uniform_real_distribution<double> u(0.1, 10);
    double worst = 0;
    for (int i = 0; i < 50; ++i) {
      const std::size_t d = 1 + i % 3;
      const PointCloud f = random_cloud(rng, d, 60);
      const Real c = Real(u(rng));
      std::vector<Real> t;
      for (std::size_t k = 0; k < d; ++k) t.push_back(Real(u(rng)));
      const PointCloud lhs = distance_set(apply_similarity(SimilarityMap::scaling(d, c, t), f));
      const PointCloud rhs = distance_set(f);
      if (lhs.size() != rhs.size()) return exactly(INFINITY, 0);
      for (std::size_t j = 0; j < lhs.size(); ++j) {
        const Real expect = c * rhs.coord(j, 0);
        const Real err = abs(lhs.coord(j, 0) - expect);
        worst = std::max(worst, to_double(expect == 0 ? err : err / expect));
      }
    }
    return at_most(worst, 1e-9);
  });

  struct Named {
    const char* name;
    const PointCloud* cloud;
  };
  const std::vector<Named> clouds{{"cantor", &suite.cantor()}, {"ex27", &suite.ex27()},
                                  {"ex27_distances", &suite.ex27_distances()}, {"dust", &suite.dust()},
                                  {"moran", &suite.moran()}, {"ex14", &suite.ex14()}};
  run.run("props.covering_monotone", 10, "covering counts non-increasing in r over r = 2^-j above the trust floor", [&] {
    double violations = 0;
    for (const auto& c : clouds) {
      std::size_t previous = 0;
      for (int j = 20; j >= 0; --j) {
        const Real r = pow_int(Real(2), -j);
        if (r < kDefaultTrustGuard * c.cloud->resolution()) continue;
        const std::size_t count = covering_count(*c.cloud, r);
        if (previous != 0 && count > previous) ++violations;
        previous = count;
      }
    }
    return exactly(violations, 0);
  });
  run.run("props.estimator_order", 10, "box estimate <= Assouad estimate + 0.05 on every suite cloud", [&] {
    struct Case {
      const PointCloud* cloud;
      Real r_min, r_max;
      std::size_t levels;
      std::vector<AssouadConfig> configs;
    };
    const std::vector<Case> cases{
        {&suite.cantor(), pow_int(Real(3), -10), pow_int(Real(3), -2), 9, {suite.cantor_config()}},
        {&suite.ex27(), pow_int(Real(9), -5), pow_int(Real(9), -1), 5, {suite.ninefold_config()}},
        {&suite.ex27_distances(), pow_int(Real(9), -5), pow_int(Real(9), -1), 5, {suite.ninefold_config()}},
        {&suite.dust(), pow_int(Real(3), -6), pow_int(Real(3), -1), 6, {suite.dust_config()}},
        {&suite.moran(), pow_int(Real(2), -32), pow_int(Real(2), -2), 11,
         {suite.moran_stage_config(1), suite.moran_stage_config(2)}},
        {&suite.ex14(), pow_int(Real(2), -12), pow_int(Real(2), -2), 11,
         {config(powers(Real(2), -6, -2), powers(Real(2), 1, 6), suite.workers())}},
    };
    double worst = -INFINITY;
    std::string note;
    for (const auto& c : cases) {
      const double box = box_dimension(*c.cloud, c.r_min, c.r_max, c.levels).value;
      double assouad = 0;
      for (const auto& cfg : c.configs) assouad = std::max(assouad, assouad_estimate(*c.cloud, cfg).value);
      worst = std::max(worst, box - assouad);
      note += format_sig12(box) + "/" + format_sig12(assouad) + " ";
    }
    Outcome o = at_most(worst, 0.05);
    o.note = "box/assouad: " + note;
    return o;
  });
  run.run("props.spanning_great_circle", 10, "spanning determinant vanishes on a great circle", [] {
    std::vector<CurveSample> curve;
    const double pi = std::acos(-1.0);
    for (int i = 0; i < 200; ++i) {
      const double t = (i + 0.5) / 200;
      curve.push_back({t, {std::cos(2 * pi * t), std::sin(2 * pi * t), 0}});
    }
    double worst = 0;
    for (const auto& r : spanning_check(curve)) worst = std::max(worst, std::abs(r.det));
    return Outcome{"< 1e-6", worst, 0, worst < kSpanningTolerance};
  });
  run.run("props.spanning_small_circle", 10, "spanning determinant stays away from 0 on a tilted small circle", [] {
    std::vector<CurveSample> curve;
    for (int i = 0; i < 200; ++i) {
      const double t = (i + 0.5) / 200;
      const double s = 1 / std::sqrt(2.0);
      curve.push_back({t, {s * std::cos(t), s * std::sin(t), s}});
    }
    double least = INFINITY;
    for (const auto& r : spanning_check(curve)) least = std::min(least, std::abs(r.det));
    return Outcome{"> 1e-3", least, 0, least > 1e-3};
  });
}

}  // namespace

bool VerifyReport::criterion_passes(int criterion) const {
  bool any = false;
  for (const auto& c : checks) {
    if (c.criterion != criterion) continue;
    if (!c.pass) return false;
    any = true;
  }
  return any;
}

VerifyReport verify_paper(const VerifyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  VerifyReport report;
  Runner run(report, options);
  Suite suite(options);
  criterion_1(run, suite);
  criterion_2(run, suite);
  criterion_3(run, suite, options.seed);
  criterion_4(run);
  criterion_5(run, suite);
  criterion_6(run);
  criterion_7(run, suite);
  criterion_8(run, suite);
  criterion_9(run);
  if (run.wants(10)) criterion_10(run, suite, options.seed);
  report.pass = !report.checks.empty() &&
                std::all_of(report.checks.begin(), report.checks.end(), [](const Check& c) { return c.pass; });
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

nlohmann::json to_json(const VerifyReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) {
    nlohmann::json entry = {{"id", c.id},
                            {"criterion", c.criterion},
                            {"description", c.description},
                            {"expected", c.expected},
                            {"measured", std::isfinite(c.measured) ? json_number(c.measured) : nlohmann::json()},
                            {"tolerance", json_number(c.tolerance)},
                            {"pass", c.pass},
                            {"seconds", json_number(c.seconds)}};
    if (!c.note.empty()) entry["note"] = c.note;
    checks.push_back(entry);
  }
  return {{"pass", report.pass}, {"seconds", json_number(report.seconds)}, {"checks", checks}};
}

void write_verify_table(std::ostream& out, const VerifyReport& report) {
  char line[512];
  for (const auto& c : report.checks) {
    std::snprintf(line, sizeof line, "%-4s %2d  %-28s %-18s %-22s %8.2fs", c.pass ? "PASS" : "FAIL", c.criterion,
                  c.id.c_str(), format_sig12(c.measured).c_str(), c.expected.c_str(), c.seconds);
    out << line;
    if (!c.note.empty()) out << "  " << c.note;
    out << '\n';
  }
  out << (report.pass ? "overall: PASS" : "overall: FAIL") << " (" << report.checks.size() << " checks, "
      << format_sig12(report.seconds) << " s)\n";
}

}  // namespace assouad
