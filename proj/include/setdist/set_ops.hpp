#pragma once

#include <span>

#include "setdist/distance.hpp"
#include "setdist/report.hpp"
#include "setdist/scalar_field.hpp"
#include "setdist/set_map.hpp"

namespace setdist {

// Constructors for derived sets and checkers that evaluate both sides of the
// corresponding distance inequality. Every checker records its hypotheses as
// side conditions; a failed hypothesis makes the report not-applicable.

// --- constructors ----------------------------------------------------------

FiniteSet product_set(std::span<const FiniteSet> factors);

// Cloud {(x, k*vstep) : x in C, 0 <= k*vstep <= rho} representing
// epi(indicator of C) truncated vertically to [0, rho].
FiniteSet indicator_epigraph(const FiniteSet& C, double rho, double vstep);

FiniteSet union_set(std::span<const FiniteSet> parts);

// Points of Cs[0] lying within `tol` of every other cloud.
FiniteSet intersect_clouds(std::span<const FiniteSet> Cs, double tol = 1e-9);

// Outer approximation of an intersection: points x drawn from all input
// clouds with dist(x, D_a) <= exs(C_a; D_a) for every index a.
FiniteSet intersection_outer(std::span<const FiniteSet> Cs, std::span<const FiniteSet> Ds);

FiniteSet minkowski_sum(std::span<const FiniteSet> parts);

FiniteSet scale_set(const FiniteSet& C, double lambda);

// Union of S(x) over x in C.
FiniteSet image_set(const LipschitzSetMap& S, const FiniteSet& C);

// --- checkers ---------------------------------------------------------------

// dl_rho(C1,C3) <= dl_rhobar(C1,C2) + dl_rhobar(C2,C3), applicable when
// rho_bar > 2 rho + max_i dist(centroid, C_i).
BoundReport check_triangle(const FiniteSet& C1, const FiniteSet& C2, const FiniteSet& C3,
                           double rho, double rho_bar, double tol);

// dl_rho(prod C, prod D) <= max_i dl_rho(C_i, D_i); equality asserted when
// both truncated products are nonempty (flags recorded as notes).
BoundReport check_product(std::span<const FiniteSet> Cs, std::span<const FiniteSet> Ds,
                          double rho, double tol);

// dl equality between indicator epigraphs and the underlying sets.
BoundReport check_indicator(const FiniteSet& C, const FiniteSet& D, double rho, double vstep,
                            double tol);

// dl_rho(U C_a, U D_a) <= max_a dl_rho(C_a, D_a).
BoundReport check_union(std::span<const FiniteSet> Cs, std::span<const FiniteSet> Ds,
                        double rho, double tol);

// exs(/\ C_a ; /\ D_a^+) <= 0 for the outer construction above.
BoundReport check_intersection_outer(std::span<const FiniteSet> Cs,
                                     std::span<const FiniteSet> Ds, double tol);

// dl_rho(con C, con D) <= dl_rho(C, D), applicable when C, D subset B(rho).
// Dimensions 1-2 evaluate hulls exactly; higher dimensions sample with
// resolution m and record the slack.
BoundReport check_hull(const FiniteSet& C, const FiniteSet& D, double rho, double tol,
                       std::size_t m = 8);

// dl_rho(S(C), T(D)) <= sup_{x in probes /\ B(rho_bar)} dl_{rho*}(S(x), T(x))
//                       + kappa(rho_hat) * dl_rhobar(C, D).
BoundReport check_lipschitz_image(const LipschitzSetMap& S, const LipschitzSetMap& T,
                                  const FiniteSet& C, const FiniteSet& D,
                                  const FiniteSet& probes, const RadiusBundle& radii,
                                  double tol);

// dl_rho(sum C_i, sum D_i) <= sum_i dl_rho(C_i, D_i) when every set lies in
// B(rho); with exactly one unbounded pair its term is dl_{m rho}. Two or
// more unbounded pairs are refused (no such rule exists; crossing rays).
BoundReport check_sum(std::span<const FiniteSet> Cs, std::span<const FiniteSet> Ds,
                      double rho, double tol);

// dl_rho(lambda C, mu D) <= rho_bar |lambda - mu|
//                           + max{|lambda|, |mu|} dl_rhobar(C, D).
BoundReport check_scaling(const FiniteSet& C, const FiniteSet& D, double lambda, double mu,
                          double rho, double rho_bar, double tol);

// Convex level sets: dl_rho(lev_alpha f, lev_beta g) <= eta +
// (rho_star + rho0) * max of the two normalized level gaps, with
// eta = dl_rho(epi f, epi g). Convexity is validated by midpoint sampling.
BoundReport check_convex_level_sets(const GriddedFunction& f, const GriddedFunction& g,
                                    double alpha, double beta, double rho, double tol,
                                    std::optional<double> rho0 = std::nullopt,
                                    std::optional<double> rho_star = std::nullopt);

}  // namespace setdist
