#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "assouad/constructions.hpp"
#include "assouad/distances.hpp"
#include "assouad/real.hpp"

namespace assouad {

struct RunConfig {
  std::string subcommand;
  std::optional<std::filesystem::path> spec;
  std::optional<std::filesystem::path> input;
  std::filesystem::path out = ".";
  unsigned workers = 0;
  std::optional<double> threshold;
  bool via_projection = false;
  std::vector<std::vector<Real>> pin_centers;
  std::size_t cap_points = kDefaultPointCap;
  std::size_t cap_pairs = kDefaultPairCap;
  std::uint64_t seed = 20240601;
};

/// Runs one subcommand, writing artifacts under config.out and a short summary
/// to `out`. Failures are reported as {"error": {"kind", "message"}} on `err`.
/// Returns the process exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv into a RunConfig (flags > --config file > defaults) and runs it.
int cli_main(int argc, const char* const* argv);

}  // namespace assouad
