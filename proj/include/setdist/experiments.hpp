#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "setdist/report_io.hpp"

namespace setdist {

// Parameters shared by every bundled experiment. `sweep_values` overrides the
// default sweep grid of sweepable cases (rejected elsewhere).
struct ExperimentParams {
  std::uint64_t seed = 1;
  double tol = 1e-9;
  std::optional<std::vector<double>> sweep_values;
};

struct ExperimentInfo {
  std::string id;
  std::string summary;
  bool sweepable = false;
  std::function<ReportDocument(const ExperimentParams&)> run;
};

// Bundled experiments, sorted by id. Every run is deterministic given the
// params; all randomness flows from params.seed.
std::span<const ExperimentInfo> experiment_registry();

// nullptr when the id is unknown.
const ExperimentInfo* find_experiment(std::string_view id);

// Runs one case; throws std::invalid_argument for unknown ids or for
// sweep_values supplied to a non-sweepable case.
ReportDocument run_experiment(std::string_view id, const ExperimentParams& params);

}  // namespace setdist
