#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "setdist/ext_real.hpp"
#include "setdist/finite_set.hpp"

namespace setdist {

// Extended-real-valued function known at finitely many points. The node
// list is an arbitrary cloud; uniform grids add lattice geometry on top
// (GriddedFunction below). All epigraph machinery operates on this view.
struct ScalarField {
  FiniteSet nodes;
  std::vector<ExtReal> values;
  std::string name;

  std::size_t size() const { return values.size(); }
  bool epigraph_empty() const {
    for (ExtReal v : values)
      if (!v.is_pos_inf()) return false;
    return true;
  }
};

// Axis-aligned uniform lattice: node i along axis k sits at
// lo[k] + i * step[k].
struct GridGeom {
  std::vector<double> lo;
  std::vector<double> step;
  std::vector<std::size_t> count;

  static GridGeom uniform(std::span<const std::array<double, 2>> box, double h);
  static GridGeom line(double a, double b, double h) {
    std::array<double, 2> seg{a, b};
    return uniform(std::span<const std::array<double, 2>>(&seg, 1), h);
  }

  std::size_t dim() const { return lo.size(); }
  std::size_t num_nodes() const {
    std::size_t n = 1;
    for (std::size_t c : count) n *= c;
    return n;
  }
  void node(std::size_t flat, std::span<double> out) const;
  std::size_t nearest(std::span<const double> x) const;  // clamped rounding
  double max_step() const;
};

class GriddedFunction {
 public:
  GriddedFunction() = default;
  GriddedFunction(MetricSpace space, GridGeom geom, std::string name);

  static GriddedFunction from_fn(MetricSpace space, GridGeom geom,
                                 const std::function<ExtReal(std::span<const double>)>& fn,
                                 std::string name);
  // 1-D convenience on [a, b] with spacing h.
  static GriddedFunction line(double a, double b, double h,
                              const std::function<ExtReal(double)>& fn, std::string name);

  const ScalarField& field() const { return field_; }
  const GridGeom& geom() const { return geom_; }
  const MetricSpace& space() const { return space_; }
  const std::string& name() const { return field_.name; }
  std::size_t size() const { return field_.size(); }

  ExtReal value(std::size_t i) const { return field_.values[i]; }
  void set_value(std::size_t i, ExtReal v) { field_.values[i] = v; }
  std::span<const double> node(std::size_t i) const { return field_.nodes.point(i); }

  // Value at the grid node nearest to x (clamped to the grid box).
  ExtReal eval_nearest(std::span<const double> x) const {
    return field_.values[geom_.nearest(x)];
  }

  bool same_grid(const GriddedFunction& o, double tol = 1e-12) const;

  // Node-wise sum under the ExtReal convention. Grids must match.
  GriddedFunction plus(const GriddedFunction& g, std::string name = "") const;
  GriddedFunction shifted(double c) const;  // f + c

 private:
  MetricSpace space_;
  GridGeom geom_;
  ScalarField field_;
};

struct SolutionSummary {
  ExtReal infimum{ExtReal::inf()};
  // (eps, {nodes with f <= inf_used + eps}) pairs, in request order.
  std::vector<std::pair<double, FiniteSet>> argmin_eps;
  // (delta, {nodes with f <= delta}) pairs.
  std::vector<std::pair<double, FiniteSet>> level_sets;
};

// Grid scan for infimum, eps-argmin sets and level sets. When
// `reference_infimum` is supplied the argmin thresholds are taken relative
// to it instead of the grid minimum (used to represent problems whose true
// infimum is not attained on the sampled domain); `infimum` still reports
// the grid minimum.
SolutionSummary solution_summary(const ScalarField& f, std::span<const double> eps_list,
                                 std::span<const double> delta_list,
                                 std::optional<double> reference_infimum = {});

inline SolutionSummary solution_summary(const GriddedFunction& f,
                                        std::span<const double> eps_list,
                                        std::span<const double> delta_list,
                                        std::optional<double> reference_infimum = {}) {
  return solution_summary(f.field(), eps_list, delta_list, reference_infimum);
}

// Hoelder growth certificate |f(x) - f(y)| <= kappa(rho) * d(x,y)^exponent,
// declared by the caller and validated on sampled data before use.
struct HolderModulus {
  double exponent = 1.0;
  std::function<double(double)> kappa;
};

// Checks the certificate on node pairs within B(rho) where both values are
// finite. All pairs when their number fits the budget, otherwise a seeded
// sample. Returns a description of the first violation, if any.
std::optional<std::string> validate_holder(const ScalarField& f, const HolderModulus& m,
                                           double rho, double tol,
                                           std::size_t budget = 200000,
                                           std::uint64_t seed = 1);

// Midpoint convexity on lattice node pairs whose midpoint is again a node.
std::optional<std::string> validate_midpoint_convexity(const GriddedFunction& f, double tol,
                                                       std::size_t budget = 200000,
                                                       std::uint64_t seed = 1);

}  // namespace setdist
