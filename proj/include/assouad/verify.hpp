#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace assouad {

struct Check {
  std::string id;  // stable across versions
  int criterion;
  std::string description;
  std::string expected;
  double measured;
  double tolerance;
  bool pass;
  double seconds;
  std::string note;
};

struct VerifyReport {
  std::vector<Check> checks;
  bool pass = true;
  double seconds = 0;

  /// True when every check of the criterion passed (and there is at least one).
  bool criterion_passes(int criterion) const;
};

struct VerifyOptions {
  unsigned workers = 0;
  std::uint64_t seed = 20240601;  // random clouds of the property checks
  /// Restrict to these criteria (1..10); empty runs all.
  std::vector<int> criteria;
};

inline constexpr int kCriterionCount = 10;

/// Reproduces every checkable claim: dimension formulas, distance-set bounds,
/// lattice density, zoom identities, projection sweeps and property suites.
VerifyReport verify_paper(const VerifyOptions& options = {});

nlohmann::json to_json(const VerifyReport& report);
/// Fixed-width table, one line per check.
void write_verify_table(std::ostream& out, const VerifyReport& report);

}  // namespace assouad
