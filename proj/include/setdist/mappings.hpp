#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "setdist/finite_set.hpp"
#include "setdist/metric.hpp"
#include "setdist/report.hpp"

namespace setdist {

// Set-valued mapping S : X ->> Y stored on a finite list of domain nodes,
// one finite value cloud per node (possibly empty). The graph cloud lives in
// the product X x Y under the max metric, centered at (ctr_X, ctr_Y).
class GriddedMapping {
 public:
  GriddedMapping() = default;
  GriddedMapping(MetricSpace domain, MetricSpace codomain, std::string name = "");

  // Appends a node x together with its value set S(x); the value set must be
  // a cloud over the codomain geometry.
  void add_node(std::span<const double> x, FiniteSet value);
  void add_node(std::initializer_list<double> x, FiniteSet value);

  const MetricSpace& domain() const { return domain_; }
  const MetricSpace& codomain() const { return codomain_; }
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  std::size_t size() const { return values_.size(); }
  std::span<const double> node(std::size_t i) const { return nodes_.point(i); }
  const FiniteSet& value(std::size_t i) const { return values_[i]; }
  FiniteSet& value(std::size_t i) { return values_[i]; }
  const FiniteSet& nodes() const { return nodes_; }

  bool nonempty_valued() const;   // every node carries at least one value
  std::size_t graph_size() const; // total number of (x, y) pairs

  // Product space X x Y (max metric, centroid (ctr_X, ctr_Y)).
  MetricSpace graph_space() const;

  // Radius up to which sampled value sets are complete. Builders that
  // truncate unbounded values (rays, cones) record their extent here so
  // checkers needing values inside a larger ball can refuse to run instead
  // of silently using truncated data. +inf means "values are exact".
  double codomain_extent = kNoCutoff;

 private:
  MetricSpace domain_;
  MetricSpace codomain_;
  FiniteSet nodes_;
  std::vector<FiniteSet> values_;
  std::string name_;
};

// Cloud {(x_j, y) : y in S(x_j)} over graph_space().
FiniteSet graph_cloud(const GriddedMapping& S, std::string label = "");

// Query for near-solutions of the generalized equation y_star in S(x).
struct NearSolutionQuery {
  std::vector<double> y_star;
  double eps = 0.0;   // tolerance on the queried mapping
  double rho = 1.0;   // truncation radius in the domain
  double delta = 0.0; // tolerance granted to the comparison mapping
};

// {x_j : exists y in S(x_j) with d_Y(y, y_star) <= eps + tol}.
FiniteSet near_solution_set(const GriddedMapping& S, std::span<const double> y_star,
                            double eps, double tol = 1e-12);
FiniteSet near_solution_set(const GriddedMapping& S, const NearSolutionQuery& q,
                            double tol = 1e-12);

// exs( S^{-1}(B(y*,eps)) ∩ B_X(rho) ; T^{-1}(B(y*,delta)) )
//   <= dl_rho(gph S, gph T),
// applicable when both graphs are nonempty, d_Y(y*, ctr_Y) <= rho - eps and
// delta >= eps + dl_rho(gph S, gph T) (finite clouds are closed, so equality
// is admissible).
BoundReport check_geneq_bound(const GriddedMapping& S, const GriddedMapping& T,
                              const NearSolutionQuery& q, double tol);

// Node-wise Minkowski sum (S1 + S2)(x) = {y1 + y2 : y1 in S1(x), y2 in S2(x)}.
// Both mappings must share node lists (within 1e-12) and geometry.
GriddedMapping sum_mappings(const GriddedMapping& S1, const GriddedMapping& S2,
                            std::string name = "");

// dl_rho(gph(S1+S2), gph(T1+T2))
//   <= sup_{x in B(rho)} dl_{rho*}(S1(x), T1(x)) + (1 + kappa(rho_hat)) *
//      dl_{rho_bar}(gph S2, gph T2),
// where S1, T1 are nonempty-valued and Lipschitz with common modulus kappa
// relative to rho*. Radius chain (defaults pick the smallest admissible
// value plus a hair):
//   rho'     = value bound: B_Y(rho') contains S1(x), T1(x) for x in B(rho)
//   rho_bar >= rho + rho'
//   rho_hat >  rho + dl_{rho_bar}(gph S2, gph T2)
//   rho*    >  3 rho' + kappa(rho_hat) (rho_hat - rho)
// Throws std::invalid_argument when S1 or T1 has an empty value, and
// std::runtime_error when a mapping's declared codomain_extent cannot cover
// the radius the check needs (the message reports the required extent).
BoundReport check_sum_mappings(const GriddedMapping& S1, const GriddedMapping& T1,
                               const GriddedMapping& S2, const GriddedMapping& T2,
                               const std::function<double(double)>& kappa,
                               const RadiusBundle& radii, double tol);

}  // namespace setdist
