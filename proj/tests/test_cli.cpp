#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "assouad/cli.hpp"
#include "assouad/cloud_io.hpp"

using namespace assouad;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("assouad_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const fs::path& path, const std::string& text) {
  std::ofstream(path) << text;
  return path;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::size_t data_lines(const fs::path& path) {
  std::ifstream in(path);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) n += !line.empty() && line[0] != '#';
  return n;
}

struct Outcome {
  int status;
  std::string out, err;
};

Outcome run_with(const RunConfig& config) {
  std::ostringstream out, err;
  const int status = run(config, out, err);
  return {status, out.str(), err.str()};
}

RunConfig config_for(const std::string& cmd, const fs::path& dir) {
  RunConfig c;
  c.subcommand = cmd;
  c.out = dir;
  return c;
}

int main_with(std::vector<std::string> args) {
  std::vector<const char*> argv{"assouad"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli_main(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("generate writes the Example 2.7 cloud") {
  const fs::path dir = scratch("generate");
  RunConfig c = config_for("generate", dir);
  c.spec = write_file(dir / "spec.json", R"({"variant": "Example27", "N": 9, "K": 3, "depth": 6})");
  const Outcome o = run_with(c);
  CHECK(o.status == 0);
  CHECK(data_lines(dir / "cloud.csv") == 729);
  CHECK(read_cloud_csv(dir / "cloud.csv").size() == 729);

  const std::string first = read_file(dir / "cloud.csv");
  CHECK(run_with(c).status == 0);
  CHECK(read_file(dir / "cloud.csv") == first);
}

TEST_CASE("estimate on a single point is a degenerate zero") {
  const fs::path dir = scratch("single");
  RunConfig c = config_for("estimate", dir);
  c.input = write_file(dir / "one.csv", "# dim=1 resolution=0\n0.5\n");
  const Outcome o = run_with(c);
  CHECK(o.status == 0);
  const auto doc = nlohmann::json::parse(read_file(dir / "estimate.json"));
  CHECK(doc["box"]["value"] == 0);
  CHECK(doc["box"]["diagnostics"]["degenerate"] == true);
  CHECK(doc["assouad"]["value"] == 0);
  CHECK(fs::exists(dir / "counts.csv"));
  CHECK(fs::exists(dir / "profile.csv"));
}

TEST_CASE("estimate is independent of the worker count") {
  const fs::path dir = scratch("workers");
  RunConfig g = config_for("generate", dir);
  g.spec = write_file(dir / "spec.json", R"({"variant": "Example27", "N": 9, "K": 3, "depth": 5})");
  REQUIRE(run_with(g).status == 0);
  RunConfig c = config_for("estimate", dir);
  c.input = dir / "cloud.csv";
  c.workers = 1;
  REQUIRE(run_with(c).status == 0);
  const std::string one = read_file(dir / "estimate.json");
  c.workers = 3;
  REQUIRE(run_with(c).status == 0);
  CHECK(read_file(dir / "estimate.json") == one);
  const auto doc = nlohmann::json::parse(one);
  CHECK(doc["box"]["value"].get<double>() == doctest::Approx(0.5).epsilon(0.1));
}

TEST_CASE("estimate accepts pinned centers and overrides") {
  const fs::path dir = scratch("pinned");
  RunConfig g = config_for("generate", dir);
  g.spec = write_file(dir / "spec.json", R"({"variant": "Example14", "kmax": 30})");
  REQUIRE(run_with(g).status == 0);
  RunConfig c = config_for("estimate", dir);
  c.input = dir / "cloud.csv";
  c.spec = write_file(dir / "est.json", R"({"box": {"rMin": 0.001, "rMax": 0.25, "levels": 4},
                                            "assouad": {"R": [1.818989403545856475830078125e-11], "ratios": [20], "maxCenters": 1}})");
  c.pin_centers = {{Real(1) / 1048576}};
  REQUIRE(run_with(c).status == 0);
  const auto doc = nlohmann::json::parse(read_file(dir / "estimate.json"));
  CHECK(doc["box"]["diagnostics"]["counts"].size() == 4);
  CHECK(doc["assouad"]["value"].get<double>() > 0.9);
}

TEST_CASE("distance-set pipelines write the same cloud") {
  const fs::path dir = scratch("distances");
  const fs::path input = write_file(dir / "f.csv", "# dim=1 resolution=0\n0\n0.5\n0.75\n");
  RunConfig c = config_for("distance-set", dir);
  c.input = input;
  REQUIRE(run_with(c).status == 0);
  const std::string direct = read_file(dir / "distance_set.csv");
  c.via_projection = true;
  REQUIRE(run_with(c).status == 0);
  CHECK(read_file(dir / "distance_set.csv") == direct);
  CHECK(data_lines(dir / "distance_set.csv") == 4);

  c.cap_pairs = 2;
  const Outcome capped = run_with(c);
  CHECK(capped.status == 2);
  CHECK(nlohmann::json::parse(capped.err)["error"]["kind"] == "cap_exceeded");
}

TEST_CASE("gap-report writes the report and structured errors") {
  const fs::path dir = scratch("gaps");
  RunConfig c = config_for("gap-report", dir);
  c.spec = write_file(dir / "spec.json", R"({"a": 0.5, "b": 0.25, "M": 20, "window": [-1, -0.01]})");
  REQUIRE(run_with(c).status == 0);
  const auto doc = nlohmann::json::parse(read_file(dir / "gap_report.json"));
  CHECK(doc["maxGap"].get<double>() >= 0.693);

  c.spec = write_file(dir / "bad.json", R"({"a": 1.5, "b": 0.25, "M": 20, "window": [-1, -0.01]})");
  const Outcome bad = run_with(c);
  CHECK(bad.status == 2);
  const auto err = nlohmann::json::parse(bad.err);
  CHECK(err["error"]["kind"] == "invalid_argument");
  CHECK_FALSE(err["error"]["message"].get<std::string>().empty());

  c.spec = write_file(dir / "missing.json", R"({"a": 0.5})");
  CHECK(run_with(c).status == 2);
}

TEST_CASE("project-sweep writes JSON and CSV") {
  const fs::path dir = scratch("sweep");
  RunConfig g = config_for("generate", dir);
  g.spec = write_file(dir / "spec.json", R"({"variant": "Product",
      "left": {"variant": "PlainIFS", "depth": 6, "seed": [[0], [1]],
               "maps": [{"scale": 0.3333333333333333333333333333333333, "translation": [0]},
                        {"scale": 0.3333333333333333333333333333333333, "translation": [0.6666666666666666666666666666666667]}]},
      "right": {"variant": "PlainIFS", "depth": 6, "seed": [[0], [1]],
               "maps": [{"scale": 0.3333333333333333333333333333333333, "translation": [0]},
                        {"scale": 0.3333333333333333333333333333333333, "translation": [0.6666666666666666666666666666666667]}]}})");
  REQUIRE(run_with(g).status == 0);
  RunConfig c = config_for("project-sweep", dir);
  c.input = dir / "cloud.csv";
  c.spec = write_file(dir / "sweep.json.in", R"({"directions": 4, "assouad": {"R": [0.3333], "ratios": [3, 9]}})");
  c.threshold = 0.7;
  REQUIRE(run_with(c).status == 0);
  const auto doc = nlohmann::json::parse(read_file(dir / "sweep.json"));
  CHECK(doc["rows"].size() == 4);
  CHECK(doc["threshold"] == 0.7);
  CHECK(data_lines(dir / "sweep.csv") == 5);
}

TEST_CASE("spanning-check reads a curve CSV") {
  const fs::path dir = scratch("spanning");
  std::ostringstream csv;
  csv << "# t,x,y,z\n";
  csv.precision(17);
  for (int i = 0; i < 50; ++i) {
    const double t = (i + 0.5) / 50;
    csv << t << ',' << std::cos(6.283185307179586 * t) << ',' << std::sin(6.283185307179586 * t) << ",0\n";
  }
  RunConfig c = config_for("spanning-check", dir);
  c.input = write_file(dir / "curve.csv", csv.str());
  REQUIRE(run_with(c).status == 0);
  const auto doc = nlohmann::json::parse(read_file(dir / "spanning.json"));
  CHECK(doc["spansEverywhere"] == false);
  CHECK(doc["samples"].size() == 48);
}

TEST_CASE("tangent-zoom writes frames and the trace") {
  const fs::path dir = scratch("zoom");
  RunConfig c = config_for("tangent-zoom", dir);
  c.spec = write_file(dir / "zoom.json", R"({"construction": {"variant": "Example14", "kmax": 12},
      "zoom": {"variant": "example14"}, "window": {"kind": "box", "corner": [0], "side": 1},
      "kRange": [1, 4], "candidate": {"variant": "grid", "lo": 0, "hi": 1, "spacing": 0.5}})");
  REQUIRE(run_with(c).status == 0);
  for (int k = 1; k <= 4; ++k) CHECK(fs::exists(dir / ("zoom_k" + std::to_string(k) + ".csv")));
  CHECK(data_lines(dir / "zoom_k4.csv") == 5);
  const auto doc = nlohmann::json::parse(read_file(dir / "trace.json"));
  CHECK(doc["trace"]["rows"].size() == 4);
  CHECK(doc["trace"]["rows"][1]["distance"] == 0);
}

TEST_CASE("run rejects unknown subcommands, missing inputs and unwritable output") {
  const fs::path dir = scratch("errors");
  CHECK(run_with(config_for("frobnicate", dir)).status == 2);
  const Outcome missing = run_with(config_for("estimate", dir));
  CHECK(missing.status == 2);
  CHECK(missing.err.find("--input") != std::string::npos);

  const fs::path blocker = write_file(dir / "file", "x");
  RunConfig c = config_for("generate", blocker / "sub");
  c.spec = write_file(dir / "spec.json", R"({"variant": "Example14", "kmax": 3})");
  const Outcome o = run_with(c);
  CHECK(o.status == 2);
  CHECK(nlohmann::json::parse(o.err)["error"]["kind"] == "io");
}

TEST_CASE("command line parsing") {
  const fs::path dir = scratch("argv");
  CHECK(main_with({"estimate", "--no-such-flag"}) != 0);
  CHECK(main_with({}) != 0);
  CHECK(main_with({"--help"}) == 0);

  const std::string spec = write_file(dir / "spec.json", R"({"variant": "Example14", "kmax": 3})").string();
  const fs::path from_file = dir / "from_file";
  const fs::path from_flag = dir / "from_flag";
  const std::string ini = write_file(dir / "defaults.ini", "out=\"" + from_file.string() + "\"\n").string();
  CHECK(main_with({"generate", "--config", ini, "--spec", spec}) == 0);
  CHECK(fs::exists(from_file / "cloud.csv"));
  CHECK(main_with({"generate", "--config", ini, "--spec", spec, "--out", from_flag.string()}) == 0);
  CHECK(fs::exists(from_flag / "cloud.csv"));

  CHECK(main_with({"estimate", "--input", (from_flag / "cloud.csv").string(), "--out", dir.string(), "--pin-center",
                   "0.125", "--workers", "2"}) == 0);
  CHECK(main_with({"estimate", "--input", (from_flag / "cloud.csv").string(), "--pin-center", "x"}) == 2);
}
