#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "setdist/mappings.hpp"
#include "setdist/pwl.hpp"

namespace setdist {

// Smooth scalar function of several variables. The gradient closure is
// optional: checkers fall back to central differences and record the
// provenance in their reports.
struct SmoothFn {
  std::function<double(std::span<const double>)> value;
  std::function<std::vector<double>(std::span<const double>)> gradient;
};

// Gradient of f at x: the analytic closure when present, otherwise central
// differences with step h_fd.
std::vector<double> eval_gradient(const SmoothFn& f, std::span<const double> x, double h_fd);

// Single-valued mapping x -> {grad f(x)} on the given nodes; the codomain is
// R^n with the sup-norm.
GriddedMapping gradient_mapping(const SmoothFn& f, const FiniteSet& xnodes,
                                double h_fd = 1e-4, std::string name = "");

// Difference-of-convex stationarity: for S(x,v) = (df1(x) - {v}, df2(x) - {v})
// and T likewise from (g1, g2), checks
//   dl_rho(gph S, gph T) <= max_{i=1,2} sup_{|x| <= rho} dl_{2 rho}(df_i(x), dg_i(x))
// in sup-norm mode. Grids: x and v on [-rho - 0.5, rho + 0.5] with the given
// step and every breakpoint inserted exactly; subgradient intervals sampled
// with the same step.
BoundReport dc_mapping_bound(const PwlConvex& f1, const PwlConvex& f2,
                             const PwlConvex& g1, const PwlConvex& g2,
                             double rho, double step, double tol);

// Inequality-constrained problem minimize f0 subject to f_i <= 0, i = 1..m,
// together with the sampling parameters of its stationarity system. The
// multiplier box is [0, y_max]^m; unbounded interval components of the
// system are sampled to ray_extent with ray_step, anchored at their moving
// endpoint so that pointwise perturbations shift whole rungs exactly.
struct KktProblem {
  SmoothFn f0;
  std::vector<SmoothFn> constraints;
  FiniteSet xnodes;          // grid over R^n (sup-norm)
  double y_max = 1.0;
  double y_step = 0.1;
  double ray_extent = 2.5;
  double ray_step = 0.25;
  double h_fd = 1e-4;
};

// Stationarity system S : R^{n+m} ->> R^{3m+n} of the problem, with value
// components ([f_i(x), inf))_i, ((-inf, y_i])_i, ({y_i f_i(x)})_i, and
// {grad f0(x) + sum_i y_i grad f_i(x)}; sup-norms on both sides.
GriddedMapping kkt_mapping(const KktProblem& p, std::string name = "");

// dl_rho(gph S, gph T) <= max{delta, rho delta, (1 + m rho) eta} with
//   delta = max_i sup_{|x| <= rho} |f_i - g_i|,
//   eta   = max_{i=0..m} sup_{|x| <= rho} |grad f_i - grad g_i|_inf,
// both evaluated on the shared x-grid.
BoundReport check_kkt_bound(const KktProblem& pf, const KktProblem& pg, double rho,
                            double tol);

// Composite stationarity for phi(F(x)) vs psi(G(x)) with 1-D outer functions:
// S(x,y,z) = ({F(x) - z}, dphi(z) - {y}, {grad F(x) y}) and T likewise, so
//   dl_rho(gph S, gph T) <= sup_{|x| <= rho} max{ |G(x) - F(x)|
//       + dl_{2 rho}(gph dphi, gph dpsi), rho |grad G(x) - grad F(x)|_inf }.
// Sup-norms throughout; y and z run over [-rho - 2 step, rho + 2 step] with
// the given step and the outer breakpoints inserted exactly.
BoundReport composite_stationarity_bound(const PwlConvex& phi, const PwlConvex& psi,
                                         const SmoothFn& F, const SmoothFn& G,
                                         const FiniteSet& xnodes, double rho,
                                         double step, double tol);

}  // namespace setdist
