#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "setdist/report.hpp"

namespace setdist {

// One problem found while parsing or validating a config. Line and column
// are 1-based; 0 means the position could not be attributed.
struct Diagnostic {
  std::string message;
  int line = 0;
  int column = 0;
};

// Carries every diagnostic collected for a config; what() joins them.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<Diagnostic> diags);
  const std::vector<Diagnostic>& diagnostics() const { return diags_; }

 private:
  std::vector<Diagnostic> diags_;
};

enum class ConfigKind { kDist, kVerify, kExperiment, kSweep };

std::string_view to_string(ConfigKind kind);

// A validated run request. Scalar knobs are parsed out; named entities
// (sets, functions, mappings, params) stay in `doc`, the normalized JSON
// document that is the canonical form of the config: print_config dumps it,
// and equality of configs is equality of documents.
struct ExperimentConfig {
  ConfigKind kind = ConfigKind::kVerify;
  std::vector<std::string> checks;                  // verify
  std::string experiment;                           // experiment / sweep
  std::optional<std::vector<double>> sweep_values;  // sweep
  std::uint64_t seed = 1;
  double tolerance = 1e-9;
  RadiusBundle radii;       // rho defaults to 1, rho_bar to 3 rho when needed
  double grid_h = 0.1;      // default lattice step for built entities
  double vstep = 0.1;       // value-axis step where a check needs one
  std::vector<std::string> pair;  // dist operands (two set or function names)
  std::string out;                // output path; empty or "-" = stdout
  std::string format = "csv";     // primary report format: csv | json
  std::string json_mirror;        // optional extra JSON output path

  nlohmann::json doc;  // normalized source of truth, defaults filled in

  bool operator==(const ExperimentConfig& other) const { return doc == other.doc; }
};

// Parse and validate a JSON config. Throws ConfigError carrying one
// diagnostic per problem; semantic diagnostics name the unresolved symbol
// and point at its position in the text when it can be located.
ExperimentConfig parse_config(const std::string& text);

// Reads the file (throws ConfigError with a file-level diagnostic when
// unreadable) and parses it.
ExperimentConfig parse_config_file(const std::string& path);

// Canonical JSON form, keys sorted, two-space indent, trailing newline.
// parse_config(print_config(cfg)) reproduces cfg exactly.
std::string print_config(const ExperimentConfig& cfg);

}  // namespace setdist
