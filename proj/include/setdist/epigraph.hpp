#pragma once

#include <optional>
#include <span>
#include <vector>

#include "setdist/distance.hpp"
#include "setdist/report.hpp"
#include "setdist/scalar_field.hpp"
#include "setdist/set_map.hpp"

namespace setdist {

// ---------------------------------------------------------------------------
// Epigraph geometry.
//
// The epigraph of f lives in the product of f's domain space with an extra
// value axis; the product carries the max metric and its centroid sits at
// value 0. Truncation balls B(rho) below always refer to that product space.
// ---------------------------------------------------------------------------

// Discretizes epi f inside B(rho) as a point cloud. Every node x_j with
// f(x_j) finite contributes the exact fiber base (x_j, max(f(x_j), -rho - vstep))
// plus the global value lattice {k * vstep : k integer} clipped to
// (base, rho]. Nodes whose value exceeds rho still contribute their base
// point: those points lie outside B(rho) but remain legitimate *targets*.
FiniteSet epi_cloud(const ScalarField& f, double rho, double vstep);
FiniteSet epi_cloud(const GriddedFunction& f, double rho, double vstep);

// One-sided excess exs(epi f /\ B(rho); epi g), computed exactly (no value
// lattice) from the fiber structure: the worst point of a truncated fiber is
// its base (x, max(f(x), -rho)), and the distance from a point (x, a) to
// epi g is min over x' in dom g of max{d(x, x'), g(x') - a, 0}.
ExtReal epi_excess(const ScalarField& f, const ScalarField& g, double rho);
ExtReal epi_excess_serial(const ScalarField& f, const ScalarField& g, double rho);

// Truncated epigraphical distance dl_rho(epi f, epi g): the max of the two
// one-sided excesses. Node sets may differ; the underlying domain spaces must
// agree. Empty epigraphs follow the excess conventions (both empty -> 0, one
// empty -> +inf when the other side meets B(rho)).
ExtReal kenmochi_dl(const ScalarField& f, const ScalarField& g, double rho);
ExtReal kenmochi_dl(const GriddedFunction& f, const GriddedFunction& g, double rho);
ExtReal kenmochi_dl_serial(const ScalarField& f, const ScalarField& g, double rho);

// ---------------------------------------------------------------------------
// Cloud helpers shared by the checkers.
// ---------------------------------------------------------------------------

// Nodes of f with value <= level whose domain point lies in B_X(rho).
FiniteSet level_ball_cloud(const GriddedFunction& f, ExtReal level, double rho,
                           std::string label = {});

// Union region A_rho = (lev_rho f  \/  lev_rho g) /\ B_X(rho) as a cloud.
// Requires f and g on the same grid.
FiniteSet union_level_cloud(const GriddedFunction& f, const GriddedFunction& g, double rho);

// sup over nodes in B_X(rho) of |f|; +inf if any such node has infinite value,
// 0 if no node lies in the ball.
ExtReal sup_abs_in_ball(const GriddedFunction& f, double rho);

// Pointwise min of a nonempty family on a common grid (epi of the result is
// the union of the component epigraphs).
GriddedFunction inf_projection(std::span<const GriddedFunction> fs, std::string name = {});

// ---------------------------------------------------------------------------
// Checkers. Each returns a finalized BoundReport; side conditions that fail
// flip the report to not-applicable rather than pass/fail.
// ---------------------------------------------------------------------------

// |inf f - inf g| and exs(eps-argmin g /\ B(rho); delta-argmin f) against
// dl_rho(epi f, epi g). Optional reference infima stand in for the true inf
// when the grid is known not to attain it.
BoundReport check_solution_estimates(const GriddedFunction& f, const GriddedFunction& g,
                                     double eps, double delta, double rho, double tol,
                                     std::optional<double> ref_inf_f = std::nullopt,
                                     std::optional<double> ref_inf_g = std::nullopt);

// exs(lev_delta g /\ B(rho); lev_eps f) <= exs(epi g /\ B(rho); epi f),
// applicable when eps > delta + that one-sided excess.
BoundReport check_level_set_estimate(const GriddedFunction& f, const GriddedFunction& g,
                                     double delta, double eps, double rho, double tol);

// dl_rho(epi f, epi g) <= sup_{A_rho} |f - g|; with a probe set C carrying a
// Hoelder modulus for both functions, the refined bound
// dl <= max{ exs(A_rho; C), kappa(rho_hat) * exs(A_rho; C)^alpha + sup_C |f - g| }.
BoundReport check_supnorm_bound(const GriddedFunction& f, const GriddedFunction& g, double rho,
                                double tol, const FiniteSet* probe = nullptr,
                                const HolderModulus* modulus = nullptr);

// Sum rule: dl_rho(epi(f1+f2), epi(g1+g2)) <=
//   sup_{A_rho}|f1-g1| + eta + kappa(rho_hat) * eta^alpha,
// eta = dl_rhobar(epi f2, epi g2), with (f1, g1) sharing the Hoelder modulus.
BoundReport check_holder_sum(const GriddedFunction& f1, const GriddedFunction& f2,
                             const GriddedFunction& g1, const GriddedFunction& g2,
                             const HolderModulus& modulus, double rho, double tol,
                             std::optional<double> rho_bar = std::nullopt,
                             std::optional<double> rho_hat = std::nullopt);

// Inner composition f(F(x)) vs g(G(x)) with Lipschitz set-valued inverses:
// dl_rho <= sup_{y in probes} dl_{rho_star}(F^{-1}(y), G^{-1}(y))
//           + max{1, kappa(rho_hat)} * dl_rhobar(epi f, epi g).
struct InnerCompositionData {
  const GriddedFunction* f = nullptr;  // outer functions on the intermediate grid
  const GriddedFunction* g = nullptr;
  PointMap F;  // forward maps, domain grid -> intermediate space
  PointMap G;
  LipschitzSetMap F_inv;  // declared-modulus inverses
  LipschitzSetMap G_inv;
  const MetricSpace* domain = nullptr;  // where the compositions live
  GridGeom domain_geom;
  const FiniteSet* probes = nullptr;  // y samples covering B(rho_bar)
};
BoundReport check_comp_inner(const InnerCompositionData& data, double rho, double tol,
                             std::optional<double> rho_star = std::nullopt,
                             std::optional<double> rho_bar = std::nullopt,
                             std::optional<double> rho_hat = std::nullopt);

// Outer composition f(F(x)) vs f(G(x)) for a single Hoelder f:
// dl_rho <= max{1, kappa(rho_hat)} * dl_rhobar(gph F, gph G).
BoundReport check_comp_outer(const GriddedFunction& f, const HolderModulus& modulus,
                             const PointMap& F, const PointMap& G, const MetricSpace& domain,
                             const GridGeom& domain_geom, double rho, double tol,
                             std::optional<double> rho_bar = std::nullopt,
                             std::optional<double> rho_hat = std::nullopt);

// Pointwise minima: dl_rho(epi min_a f_a, epi min_a g_a) <=
//   max_a dl_rho(epi f_a, epi g_a) for families indexed alike.
BoundReport check_inf_projection(std::span<const GriddedFunction> fs,
                                 std::span<const GriddedFunction> gs, double rho, double tol);

// Push-forward (Ff)(y) = inf{ f(x) : F(x) in bucket(y) } on a target grid.
GriddedFunction epi_composition(const GriddedFunction& f, const PointMap& F,
                                const MetricSpace& target, const GridGeom& target_geom,
                                std::string name = {});

// dl_rho(epi Ff, epi Gg) <= sup_{x in B(rho_bar)} d(F(x), G(x))
//   + max{1, kappa(rho_hat)} * dl_rhobar(epi f, epi g)
// for Lipschitz point maps F, G sharing `kappa`.
BoundReport check_epi_composition(const GriddedFunction& f, const GriddedFunction& g,
                                  const PointMap& F, const PointMap& G,
                                  const std::function<double(double)>& kappa,
                                  const MetricSpace& target, const GridGeom& target_geom,
                                  double rho, double tol,
                                  std::optional<double> rho_bar = std::nullopt,
                                  std::optional<double> rho_hat = std::nullopt);

}  // namespace setdist
