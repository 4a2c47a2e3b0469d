#include "assouad/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "assouad/cloud_io.hpp"
#include "assouad/dimension.hpp"
#include "assouad/error.hpp"
#include "assouad/projections.hpp"
#include "assouad/tangents.hpp"
#include "assouad/verify.hpp"
#include "json_util.hpp"

namespace assouad {
namespace fs = std::filesystem;
namespace {

nlohmann::json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Io, path.string() + ": " + e.what());
  }
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << text;
}

void write_json(const fs::path& path, const nlohmann::json& doc) { write_text(path, doc.dump(2) + "\n"); }

void ensure_writable(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!fs::is_directory(dir)) throw Error(ErrorKind::Io, "output directory " + dir.string() + " cannot be created");
  const fs::path probe = dir / ".assouad_write_probe";
  {
    std::ofstream out(probe);
    if (!out) throw Error(ErrorKind::Io, "output directory " + dir.string() + " is not writable");
  }
  fs::remove(probe, ec);
}

const fs::path& require(const std::optional<fs::path>& path, const char* flag, const std::string& subcommand) {
  if (!path) throw Error(ErrorKind::InvalidArgument, subcommand + " needs " + flag);
  return *path;
}

std::vector<Real> reals_from(const nlohmann::json& doc, const char* key, std::vector<Real> fallback) {
  return doc.contains(key) ? real_vector(doc.at(key)) : std::move(fallback);
}

AssouadConfig assouad_config_from(const nlohmann::json& doc, const RunConfig& config, std::vector<Real> big,
                                  std::vector<Real> ratios) {
  AssouadConfig cfg;
  cfg.big_scales = reals_from(doc, "R", std::move(big));
  cfg.ratios = reals_from(doc, "ratios", std::move(ratios));
  cfg.max_centers = doc.value("maxCenters", kDefaultMaxCenters);
  cfg.guard = doc.value("guard", kDefaultTrustGuard);
  cfg.pinned_centers = config.pin_centers;
  cfg.workers = config.workers;
  return cfg;
}

// Default scale windows: box over [max(guard delta, diam 2^-11), diam / 2]; Assouad with
// R in diam {1/2, 1/8, 1/32} and dyadic ratios that stay above the trust floor.
struct EstimatePlan {
  Real r_min, r_max;
  std::size_t levels = 11;
  std::vector<Real> big, ratios;
};

EstimatePlan default_plan(const PointCloud& f, double guard) {
  EstimatePlan plan;
  Real diam = diameter_bound(f);
  if (diam == 0) diam = 1;
  plan.r_max = diam / 2;
  plan.r_min = std::max(Real(guard) * f.resolution(), diam * pow_int(Real(2), -11));
  plan.big = {diam / 2, diam / 8, diam / 32};
  const Real floor_scale = Real(guard) * f.resolution();
  for (int j = 1; j <= 8; ++j) {
    if (plan.big.back() / pow_int(Real(2), j) >= floor_scale) plan.ratios.push_back(pow_int(Real(2), j));
  }
  return plan;
}

int cmd_generate(const RunConfig& config, std::ostream& out) {
  const ConstructionSpec spec = construction_from_json(read_json(require(config.spec, "--spec", "generate")));
  const PointCloud f = generate(spec, config.cap_points);
  const fs::path path = config.out / "cloud.csv";
  write_cloud_csv(path, f);
  out << nlohmann::json{{"points", f.size()}, {"dim", f.dim()}, {"resolution", json_number(f.resolution())},
                        {"output", path.string()}}
             .dump()
      << '\n';
  return 0;
}

int cmd_estimate(const RunConfig& config, std::ostream& out) {
  const PointCloud f = read_cloud_csv(require(config.input, "--input", "estimate"));
  const nlohmann::json doc = config.spec ? read_json(*config.spec) : nlohmann::json::object();
  const nlohmann::json box_doc = doc.value("box", nlohmann::json::object());
  const nlohmann::json assouad_doc = doc.value("assouad", nlohmann::json::object());
  const double guard = doc.value("guard", kDefaultTrustGuard);
  const EstimatePlan plan = default_plan(f, guard);

  const Real r_min = box_doc.contains("rMin") ? real_value(box_doc.at("rMin")) : plan.r_min;
  const Real r_max = box_doc.contains("rMax") ? real_value(box_doc.at("rMax")) : plan.r_max;
  const std::size_t levels = box_doc.value("levels", plan.levels);
  const DimensionEstimate box = box_dimension(f, r_min, r_max, levels, guard);

  nlohmann::json report = {{"box", to_json(box)}};
  AssouadConfig cfg = assouad_config_from(assouad_doc, config, plan.big, plan.ratios);
  cfg.guard = guard;
  if (!cfg.ratios.empty()) {
    DimensionEstimate assouad = assouad_estimate(f, cfg);
    std::ofstream profile(config.out / "profile.csv");
    write_profile_csv(profile, *assouad.diagnostics.profile);
    report["assouad"] = to_json(assouad);
  }
  std::ofstream counts(config.out / "counts.csv");
  write_counts_csv(counts, box);
  write_json(config.out / "estimate.json", report);

  nlohmann::json summary = {{"box", json_number(box.value)}, {"degenerate", box.diagnostics.degenerate}};
  if (report.contains("assouad")) summary["assouad"] = report["assouad"]["value"];
  out << summary.dump() << '\n';
  return 0;
}

int cmd_distance_set(const RunConfig& config, std::ostream& out) {
  const PointCloud f = read_cloud_csv(require(config.input, "--input", "distance-set"));
  const PointCloud d = config.via_projection ? distance_set_via_projection(f, config.cap_pairs)
                                             : distance_set(f, config.cap_pairs, config.workers);
  const fs::path path = config.out / "distance_set.csv";
  write_cloud_csv(path, d);
  out << nlohmann::json{{"points", d.size()}, {"viaProjection", config.via_projection}, {"output", path.string()}}
             .dump()
      << '\n';
  return 0;
}

int cmd_gap_report(const RunConfig& config, std::ostream& out) {
  const nlohmann::json doc = read_json(require(config.spec, "--spec", "gap-report"));
  GapReport report;
  try {
    report = log_lattice_gaps(doc.at("a").get<double>(), doc.at("b").get<double>(), doc.at("M").get<long>(),
                              doc.at("window").at(0).get<double>(), doc.at("window").at(1).get<double>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("gap-report spec needs a, b, M, window: ") + e.what());
  }
  write_json(config.out / "gap_report.json", to_json(report));
  out << to_json(report).dump() << '\n';
  return 0;
}

int cmd_project_sweep(const RunConfig& config, std::ostream& out) {
  const PointCloud f = read_cloud_csv(require(config.input, "--input", "project-sweep"));
  const nlohmann::json doc = config.spec ? read_json(*config.spec) : nlohmann::json::object();
  const std::size_t rank = doc.value("rank", std::size_t{1});
  const std::size_t count = doc.value("directions", std::size_t{180});
  const EstimatePlan plan = default_plan(f, doc.value("guard", kDefaultTrustGuard));
  AssouadConfig cfg = assouad_config_from(doc.value("assouad", nlohmann::json::object()), config, plan.big,
                                          plan.ratios);
  const double threshold = config.threshold.value_or(doc.value("threshold", 0.85));
  const SweepReport report = projection_sweep(f, sample_directions(f.dim(), rank, count), cfg, threshold);
  write_json(config.out / "sweep.json", to_json(report));
  std::ofstream csv(config.out / "sweep.csv");
  write_sweep_csv(csv, report);
  out << nlohmann::json{{"min", json_number(report.min)}, {"median", json_number(report.median)},
                        {"flaggedFraction", json_number(report.flagged_fraction)}}
             .dump()
      << '\n';
  return 0;
}

int cmd_spanning_check(const RunConfig& config, std::ostream& out) {
  const fs::path& input = require(config.input, "--input", "spanning-check");
  std::ifstream in(input);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + input.string());
  const double step = config.spec ? read_json(*config.spec).value("step", 0.0) : 0.0;
  const nlohmann::json report = to_json(spanning_check(read_curve_csv(in, input.string()), step));
  write_json(config.out / "spanning.json", report);
  out << nlohmann::json{{"spansEverywhere", report["spansEverywhere"]}, {"samples", report["samples"].size()}}.dump()
      << '\n';
  return 0;
}

int cmd_tangent_zoom(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const TangentZoomSpec spec =
      tangent_zoom_from_json(read_json(require(config.spec, "--spec", "tangent-zoom")), config.cap_points);
  const PointCloud f = generate(spec.construction, config.cap_points);
  const ZoomResult result = zoom(f, spec.zoom, config.workers);
  for (const auto& w : result.warnings) err << "warning: " << w << '\n';
  for (const auto& frame : result.frames) {
    write_cloud_csv(config.out / ("zoom_k" + std::to_string(frame.k) + ".csv"), frame.cloud);
  }
  nlohmann::json report = {{"frames", result.frames.size()}, {"warnings", result.warnings}};
  if (spec.candidate) report["trace"] = to_json(convergence_trace(result.frames, *spec.candidate));
  write_json(config.out / "trace.json", report);
  out << report.dump() << '\n';
  return 0;
}

int cmd_verify(const RunConfig& config, std::ostream& out) {
  VerifyOptions options;
  options.workers = config.workers;
  options.seed = config.seed;
  const VerifyReport report = verify_paper(options);
  write_json(config.out / "verify_report.json", to_json(report));
  std::ostringstream table;
  write_verify_table(table, report);
  write_text(config.out / "verify_report.txt", table.str());
  out << table.str();
  return report.pass ? 0 : 1;
}

std::vector<Real> parse_point(const std::string& text) {
  std::vector<Real> out;
  std::stringstream in(text);
  std::string cell;
  while (std::getline(in, cell, ',')) out.push_back(parse_real(cell));
  if (out.empty()) throw Error(ErrorKind::InvalidArgument, "empty --pin-center");
  return out;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.cap_points == 0 || config.cap_pairs == 0) {
      throw Error(ErrorKind::InvalidArgument, "caps must be positive");
    }
    ensure_writable(config.out);
    const std::string& cmd = config.subcommand;
    if (cmd == "generate") return cmd_generate(config, out);
    if (cmd == "estimate") return cmd_estimate(config, out);
    if (cmd == "distance-set") return cmd_distance_set(config, out);
    if (cmd == "gap-report") return cmd_gap_report(config, out);
    if (cmd == "project-sweep") return cmd_project_sweep(config, out);
    if (cmd == "spanning-check") return cmd_spanning_check(config, out);
    if (cmd == "tangent-zoom") return cmd_tangent_zoom(config, out, err);
    if (cmd == "verify-paper") return cmd_verify(config, out);
    throw Error(ErrorKind::InvalidArgument, "unknown subcommand '" + cmd + "'");
  } catch (const Error& e) {
    err << nlohmann::json{{"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}}}}.dump()
        << '\n';
  } catch (const std::exception& e) {
    err << nlohmann::json{{"error", {{"kind", "internal"}, {"message", e.what()}}}}.dump() << '\n';
  }
  return 2;
}

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Assouad dimension, distance sets, projections and weak tangents of fractal point clouds"};
  app.set_config("--config", "", "TOML/INI file with option defaults");
  app.require_subcommand(1);

  RunConfig config;
  std::string spec, input, out = ".";
  std::vector<std::string> pins;
  double threshold = 0;
  app.add_option("--spec", spec, "JSON spec (construction, estimator or zoom settings)")->check(CLI::ExistingFile);
  app.add_option("--input", input, "input CSV")->check(CLI::ExistingFile);
  app.add_option("--out", out, "output directory")->capture_default_str();
  app.add_option("--workers", config.workers, "worker threads (0: all cores)")->capture_default_str();
  auto* threshold_opt = app.add_option("--threshold", threshold, "flag sweep directions estimating below this");
  app.add_flag("--via-projection", config.via_projection, "distance set through |x - y| on f x f");
  app.add_option("--pin-center", pins, "comma-separated center added to the Assouad sample (repeatable)");
  app.add_option("--cap-points", config.cap_points, "point-count cap")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--cap-pairs", config.cap_pairs, "pair-count cap")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--seed", config.seed, "seed of the random property checks")->capture_default_str();

  const std::pair<const char*, const char*> commands[] = {
      {"generate", "construction spec JSON -> cloud.csv"},
      {"estimate", "cloud CSV -> estimate.json, counts.csv, profile.csv"},
      {"distance-set", "cloud CSV -> distance_set.csv"},
      {"gap-report", "{a, b, M, window} JSON -> gap_report.json"},
      {"project-sweep", "cloud CSV -> sweep.json, sweep.csv"},
      {"spanning-check", "curve CSV (t,x,y,z) -> spanning.json"},
      {"tangent-zoom", "zoom spec JSON -> trace.json, zoom_k<k>.csv"},
      {"verify-paper", "run the reproduction suite -> verify_report.json, verify_report.txt"},
  };
  for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  config.subcommand = app.get_subcommands().front()->get_name();
  if (!spec.empty()) config.spec = spec;
  if (!input.empty()) config.input = input;
  config.out = out;
  if (threshold_opt->count() > 0) config.threshold = threshold;
  try {
    for (const auto& p : pins) config.pin_centers.push_back(parse_point(p));
  } catch (const Error& e) {
    std::cerr << nlohmann::json{{"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}}}}.dump()
              << '\n';
    return 2;
  }
  return run(config, std::cout, std::cerr);
}

}  // namespace assouad
