#pragma once

#include <array>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "setdist/mappings.hpp"

namespace setdist {

// One-dimensional convex piecewise-linear function described by ascending
// breakpoints b_0 < ... < b_{k-1} and nondecreasing slopes s_0 <= ... <= s_k,
// where s_0 rules (-inf, b_0), s_j rules (b_{j-1}, b_j), and s_k rules
// (b_{k-1}, +inf). The value is anchored at b_0 (at 0 for the affine case
// with no breakpoints).
class PwlConvex {
 public:
  PwlConvex(std::vector<double> breakpoints, std::vector<double> slopes,
            double anchor_value = 0.0, std::string name = "");

  double operator()(double x) const;

  // Subgradient interval [lo, hi] at x: the segment slope off breakpoints,
  // [s_j, s_{j+1}] at breakpoint b_j (matched within `tol`).
  std::pair<double, double> subgradient(double x, double tol = 1e-9) const;

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& slopes() const { return slopes_; }
  const std::string& name() const { return name_; }

 private:
  std::vector<double> breakpoints_;
  std::vector<double> slopes_;
  double anchor_ = 0.0;
  std::string name_;
};

// x-grid on [-extent, extent] with the given step and every breakpoint
// inserted exactly (sorted, deduplicated within 1e-12).
std::vector<double> grid_with_breakpoints(std::span<const double> breakpoints,
                                          double extent, double step);

// 1-D cloud sampling [lo, hi] with exact endpoints; the singleton {lo} when
// the interval is degenerate.
FiniteSet interval_values(double lo, double hi, double step);

// Subdifferential graph of a convex piecewise-linear function as a gridded
// mapping on [-extent, extent]: x-grid with the given step plus every
// breakpoint inserted exactly; a singleton {slope} on open segments and the
// sampled interval [s_j, s_{j+1}] (endpoints exact) at breakpoints.
GriddedMapping subgradient_graph(const PwlConvex& f, double extent, double step);

// Normal-cone graph of the interval [a, b]: {0} at interior nodes, the
// sampled rays (-inf, 0] / [0, +inf) truncated at `extent` at the endpoints.
// The degenerate interval a == b gets the full sampled line [-extent, extent].
GriddedMapping normal_cone_graph(double a, double b, double extent, double step,
                                 std::string name = "");

// Normal-cone graph of a strictly convex 2-D polygon (vertices in order,
// either orientation): {0} at interior lattice nodes, the sampled outward
// normal ray on edge nodes, and a sampled fan between the adjacent edge
// normals at each vertex. Rays are truncated at `extent`. Throws
// std::invalid_argument for degenerate (non-strictly-convex) input.
GriddedMapping normal_cone_graph(std::span<const std::array<double, 2>> polygon,
                                 double extent, double step, std::string name = "");

}  // namespace setdist
