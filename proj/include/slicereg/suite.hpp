#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "slicereg/checks.hpp"

namespace slicereg {

// Full configuration of a verification run.  Every field is serialized
// into the report so a run can be reproduced from its output alone.
struct RunConfig {
  StructureKind kind = StructureKind::quaternion;
  int n = 2;           // paravector generator count (quaternion fixes 2)
  int degree = 128;    // catalog truncation degree
  int points = 200;    // sample points per check
  int axes = 32;       // sphere axes per point
  std::uint64_t seed = 42;
  double tolerance = 1e-9;  // residual tolerance for the identity checks
  double r_max = 0.95;
  std::string out = "report.json";

  void validate() const;  // throws ConfigError
  SliceStructure structure() const;
};

// Runs every check appropriate for the configured structure: algebra
// axioms, the two modulus identities, sphere extrema, representation and
// splitting round trips, star-inverse consistency, growth/distortion/ratio
// bounds over the catalog, equality cases, injectivity, and (quaternions)
// the rotation detector and one-quarter covering.
std::vector<CheckReport> run_verification_suite(const RunConfig& config);

bool all_pass(const std::vector<CheckReport>& reports);

nlohmann::json suite_to_json(const RunConfig& config, const std::vector<CheckReport>& reports);

}  // namespace slicereg
