#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "setdist/report.hpp"

namespace setdist {

// Rectangular sweep table: one label column plus named numeric columns.
// Every row must carry exactly columns.size() values.
struct SweepTable {
  std::string name;
  std::vector<std::string> columns;
  struct Row {
    std::string label;
    std::vector<double> values;
  };
  std::vector<Row> rows;

  void add_row(std::string label, std::vector<double> values) {
    rows.push_back({std::move(label), std::move(values)});
  }
};

// Free-standing named scalar (distance results, sup norms, ...).
struct NamedValue {
  std::string name;
  ExtReal value{0.0};
};

// Everything one run emits: bound reports, scalar values, sweep tables, and
// runtime errors (check id + message) recorded instead of aborting the run.
// The seed is embedded so randomized suites are reproducible byte for byte.
struct ReportDocument {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<BoundReport> reports;
  std::vector<NamedValue> values;
  std::vector<SweepTable> tables;
  std::vector<std::pair<std::string, std::string>> errors;

  void add_value(std::string name, ExtReal v) { values.push_back({std::move(name), v}); }
};

// True when every bound report is applicable and passed. Errors count as
// failures; values and tables carry no pass/fail semantics.
bool all_pass(const ReportDocument& doc);

// Exit code of a run: 3 is reserved for config errors (thrown before a
// document exists), 2 when the document records runtime errors, 1 when a
// bound failed or was not applicable where the suite demanded it, else 0.
int exit_code(const ReportDocument& doc);

// CSV serialization. Layout (documented in the README):
//   # suite=<suite>,seed=<seed>
//   record,id,lhs,rhs,margin,tolerance,status,conditions,notes
//   bound,...            one row per BoundReport, in order
//   value,<name>,<v>,,,,,,
//   error,<id>,,,,,,,"<message>"
// followed by one block per sweep table:
//   # table <name>
//   label,<col...>
//   <label>,<v...>
// Floating-point values print with %.17g; infinities as inf/-inf. The output
// is a pure function of the document (no timestamps, locales, or pointers),
// so identical runs serialize byte-identically.
std::string to_csv(const ReportDocument& doc);

// JSON mirror of the same document (keys sorted, deterministic dump).
std::string to_json(const ReportDocument& doc);

// Minimal whole-file writer used by the CLI ("" or "-" selects stdout).
void write_text_file(const std::string& path, const std::string& content);

}  // namespace setdist
