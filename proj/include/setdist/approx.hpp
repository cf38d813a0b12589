#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "setdist/finite_set.hpp"
#include "setdist/report.hpp"
#include "setdist/scalar_field.hpp"

namespace setdist {

// Conditioning function psi for constraint qualifications: nondecreasing for
// the feasibility scheme, strictly increasing with a computable inverse for
// softening and penalties.
struct ConditioningFn {
  enum class Form { kPower, kLinear, kTable };

  Form form = Form::kLinear;
  double beta = 1.0;   // power form: psi(g) = g^beta
  double delta = 1.0;  // linear form: psi(g) = g / delta
  std::vector<std::pair<double, double>> table;  // (gamma, value), ascending

  double psi(double gamma) const;
  double psi_inv(double value) const;

  static ConditioningFn power(double beta);
  static ConditioningFn linear(double delta);
  static ConditioningFn from_table(std::vector<std::pair<double, double>> pts);
};

// Worst violation of monotonicity and of the round-trip psi(psi_inv(v)) = v
// on a probe grid over [0, gamma_max]; a valid psi returns ~0.
double conditioning_violation(const ConditioningFn& psi, double gamma_max);

// minimize f_0 subject to f_i <= 0, all sampled on one shared grid.
struct ConstrainedProblem {
  GriddedFunction objective;
  std::vector<GriddedFunction> constraints;

  std::size_t num_constraints() const { return constraints.size(); }
  void validate() const;  // throws when a constraint is on a different grid
};

// Result of the feasibility-approximation scheme: the selected tuple
// (x_1, ..., x_m) minimizing lambda * sum_i d(x_i, x_1) over D_1 x ... x D_m
// intersected with B_{X^m}(rho), its first block x1, and the verified bound
//   dist(x1, /\ C_i) <= rho_bar/lambda + psi(rho_bar/lambda)
//                       + (1 + 2 m lambda) max_i dl_rho_bar(C_i, D_i).
struct FeasibilityResult {
  std::vector<double> x1;
  std::vector<double> tuple;  // flattened blocks
  BoundReport report;
};

// Exhaustive enumeration; ties break to the lexicographically smallest tuple
// index. Throws std::invalid_argument for lambda <= 0 or mismatched factor
// lists, std::runtime_error when no tuple of the product lies in B(rho).
FeasibilityResult solve_feasibility_approx(std::span<const FiniteSet> Cs,
                                           std::span<const FiniteSet> Ds, double lambda,
                                           const ConditioningFn& psi, double rho,
                                           double rho_bar, double tol);

// The softened pair of the constraint-softening scheme on the product grid
// X x [0, y_max]^m (sup-norm on the y block, y-spacing y_step):
//   f(x, y)      = f_0(x) when every f_i(x) <= 0 and y = 0, else +inf
//   g_lam(x, y)  = g_0(x) + lambda sum_i y_i when g_i(x) <= y_i for all i,
//                  else +inf.
std::pair<GriddedFunction, GriddedFunction> build_softened(
    const ConstrainedProblem& p_actual, const ConstrainedProblem& p_approx,
    double lambda, double y_step, double y_max);

// dl_rho(epi f, epi g_lam) <= (1 + kappa(rho_hat)) max{rho*/lambda,
//   psi_inv(rho*/lambda)} + (1 + m lambda) max_{i=0..m} sup_{B(rho_bar)}|f_i - g_i|
// for the softened pair above. Radius chain (defaults = smallest admissible
// plus a hair): rho_bar > 2 rho + max dist((ctr,0), epi .), rho* >= rho_bar +
// max{0, -inf_{B(rho_bar)} f_0}, rho_hat > rho_bar + max{rho*/lambda,
// psi_inv(rho*/lambda)}. Throws std::runtime_error when the constraint
// qualification fails at a grid node (the message names the node).
BoundReport check_softening_bound(const ConstrainedProblem& p_actual,
                                  const ConstrainedProblem& p_approx, double lambda,
                                  const ConditioningFn& psi, const HolderModulus& kappa,
                                  const RadiusBundle& radii, double y_step, double tol);

// dl_rho(epi f, epi g_lam) <= max{1, kappa(rho_hat)} psi_inv((rho_bar -
//   inf_{B(rho_bar)} f_0)/lambda) + (1 + m lambda) max_i sup_{B(rho_bar)}|f_i - g_i|
// for the penalty pair f = f_0 + feasibility indicator and
// g_lam = g_0 + lambda sum_i max{0, g_i}, both on the X grid alone.
BoundReport check_penalty_bound(const ConstrainedProblem& p_actual,
                                const ConstrainedProblem& p_approx, double lambda,
                                const ConditioningFn& psi, const HolderModulus& kappa,
                                const RadiusBundle& radii, double tol);

// Disjunctive program min <c, x> over U C_a against min <d, x> over U D_a
// (Euclidean norms): lhs = dl_rho between the two objective epigraphs on the
// exact union clouds; rhs = rho |c - d| + (1 + max{|c|, |d|}) sup_a
// dl_rho_bar(C_a, D_a) with rho_bar = rho (1 + max{|c|, |d|}). `estimates`
// additionally transfers minimum values and near-argmins through the
// epigraph distance on a lattice snap of the instance (spacing grid_h).
struct DisjunctiveResult {
  BoundReport bound;
  BoundReport estimates;
};

DisjunctiveResult run_disjunctive_experiment(std::span<const FiniteSet> Cs,
                                             std::span<const FiniteSet> Ds,
                                             std::span<const double> c,
                                             std::span<const double> d, double rho,
                                             double grid_h, double tol);

}  // namespace setdist
