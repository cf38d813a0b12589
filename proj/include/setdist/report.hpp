#pragma once

#include <optional>
#include <string>
#include <vector>

#include "setdist/ext_real.hpp"

namespace setdist {

// Truncation radii handed to a checker. `rho` is the radius of the bound
// itself; the auxiliary radii fall back to the smallest admissible value
// (plus a hair) when not supplied, and are always recorded in the report.
struct RadiusBundle {
  double rho = 1.0;
  std::optional<double> rho_bar;
  std::optional<double> rho_hat;
  std::optional<double> rho_star;
};

// One evaluated hypothesis of a bound: name, whether it held, and the
// evaluated slack (positive means satisfied with that much room).
struct SideCondition {
  std::string name;
  bool satisfied = true;
  double value = 0.0;
};

// Outcome of a single bound verification. `passed` is vacuously true when a
// side condition fails; such reports are flagged not-applicable so a
// failing hypothesis can never masquerade as a verified bound.
struct BoundReport {
  std::string check_id;
  ExtReal lhs{0.0};
  ExtReal rhs{0.0};
  double tolerance = 0.0;
  std::vector<SideCondition> side_conditions;
  std::vector<std::string> notes;
  bool applicable = true;
  bool passed = true;

  ExtReal margin() const { return rhs - lhs; }

  void add_condition(std::string name, bool ok, double value) {
    side_conditions.push_back({std::move(name), ok, value});
  }
  // Convenience: condition of the form "quantity > threshold" (or >=).
  void require_gt(std::string name, double quantity, double threshold) {
    add_condition(std::move(name), quantity > threshold, quantity - threshold);
  }
  void require_ge(std::string name, double quantity, double threshold) {
    add_condition(std::move(name), quantity >= threshold, quantity - threshold);
  }
  void note(std::string s) { notes.push_back(std::move(s)); }

  void finalize(double tol) {
    tolerance = tol;
    applicable = true;
    for (const auto& c : side_conditions) applicable = applicable && c.satisfied;
    passed = !applicable || lhs <= rhs + ExtReal(tol);
  }

  std::string status() const {
    if (!applicable) return "not-applicable";
    return passed ? "pass" : "fail";
  }
};

}  // namespace setdist
