#include "setdist/approx.hpp"

#include <algorithm>
#include <cmath>
#include "note_fmt.hpp"
#include <stdexcept>

#include "setdist/distance.hpp"
#include "setdist/epigraph.hpp"
#include "setdist/set_ops.hpp"

namespace setdist {

// --- conditioning functions -------------------------------------------------

ConditioningFn ConditioningFn::power(double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("power form needs beta > 0");
  ConditioningFn c;
  c.form = Form::kPower;
  c.beta = beta;
  return c;
}

ConditioningFn ConditioningFn::linear(double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("linear form needs delta > 0");
  ConditioningFn c;
  c.form = Form::kLinear;
  c.delta = delta;
  return c;
}

ConditioningFn ConditioningFn::from_table(std::vector<std::pair<double, double>> pts) {
  if (pts.size() < 2) throw std::invalid_argument("table form needs at least two points");
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (!(pts[i].first > pts[i - 1].first))
      throw std::invalid_argument("table abscissae must be strictly ascending");
  ConditioningFn c;
  c.form = Form::kTable;
  c.table = std::move(pts);
  return c;
}

double ConditioningFn::psi(double gamma) const {
  gamma = std::max(gamma, 0.0);
  switch (form) {
    case Form::kPower:
      return std::pow(gamma, beta);
    case Form::kLinear:
      return gamma / delta;
    case Form::kTable: {
      if (gamma <= table.front().first) return table.front().second;
      for (std::size_t i = 1; i < table.size(); ++i) {
        if (gamma <= table[i].first) {
          const auto& [g0, v0] = table[i - 1];
          const auto& [g1, v1] = table[i];
          return v0 + (v1 - v0) * (gamma - g0) / (g1 - g0);
        }
      }
      const auto& [g0, v0] = table[table.size() - 2];
      const auto& [g1, v1] = table.back();
      return v1 + (v1 - v0) / (g1 - g0) * (gamma - g1);
    }
  }
  return 0.0;
}

double ConditioningFn::psi_inv(double value) const {
  value = std::max(value, 0.0);
  switch (form) {
    case Form::kPower:
      return std::pow(value, 1.0 / beta);
    case Form::kLinear:
      return value * delta;
    case Form::kTable: {
      if (value <= table.front().second) return table.front().first;
      for (std::size_t i = 1; i < table.size(); ++i) {
        if (value <= table[i].second) {
          const auto& [g0, v0] = table[i - 1];
          const auto& [g1, v1] = table[i];
          if (v1 <= v0) return g1;  // flat segment: smallest consistent gamma
          return g0 + (g1 - g0) * (value - v0) / (v1 - v0);
        }
      }
      const auto& [g0, v0] = table[table.size() - 2];
      const auto& [g1, v1] = table.back();
      if (v1 <= v0) return g1;
      return g1 + (g1 - g0) / (v1 - v0) * (value - v1);
    }
  }
  return 0.0;
}

double conditioning_violation(const ConditioningFn& psi, double gamma_max) {
  constexpr std::size_t kProbes = 201;
  double worst = 0.0;
  double hi = psi.psi(0.0);
  worst = std::max(worst, -hi);  // nonnegativity at 0
  for (std::size_t k = 1; k < kProbes; ++k) {
    const double g = gamma_max * static_cast<double>(k) / (kProbes - 1);
    const double v = psi.psi(g);
    worst = std::max(worst, hi - v);  // monotonicity against the running peak
    worst = std::max(worst, -v);
    worst = std::max(worst, std::abs(psi.psi(psi.psi_inv(v)) - v));  // round-trip
    hi = std::max(hi, v);
  }
  return worst;
}

// --- constrained problems ----------------------------------------------------

void ConstrainedProblem::validate() const {
  for (const GriddedFunction& c : constraints)
    if (!objective.same_grid(c))
      throw std::invalid_argument("constraint '" + c.name() +
                                  "' is not on the objective's grid");
}

// --- feasibility approximation ----------------------------------------------

FeasibilityResult solve_feasibility_approx(std::span<const FiniteSet> Cs,
                                           std::span<const FiniteSet> Ds, double lambda,
                                           const ConditioningFn& psi, double rho,
                                           double rho_bar, double tol) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
  if (Cs.empty() || Cs.size() != Ds.size())
    throw std::invalid_argument("need matching nonempty factor lists");
  const MetricSpace& X = Cs[0].space();
  for (const FiniteSet& s : Cs)
    if (!s.space().same_geometry(X)) throw std::invalid_argument("factor space mismatch");
  for (const FiniteSet& s : Ds)
    if (!s.space().same_geometry(X)) throw std::invalid_argument("factor space mismatch");

  const std::size_t m = Cs.size();
  std::vector<std::size_t> sizes(m), stride(m);
  std::size_t total = 1;
  for (std::size_t i = 0; i < m; ++i) {
    sizes[i] = Ds[i].size();
    if (sizes[i] == 0) throw std::runtime_error("approximating product is empty");
    total *= sizes[i];
  }
  stride[m - 1] = 1;
  for (std::size_t i = m - 1; i-- > 0;) stride[i] = stride[i + 1] * sizes[i + 1];

  // Argmin of lambda * sum_i d(x_i, x_1) over the product, tracking both the
  // unrestricted minimum and the best tuple whose blocks all lie in B(rho).
  // Ties break to the smallest flat (lexicographic) index.
  double best_val = kInf, best_global = kInf;
  std::size_t best_idx = total;  // sentinel: none found
#pragma omp parallel
  {
    double lval = kInf, lglob = kInf;
    std::size_t lidx = total;
#pragma omp for schedule(static) nowait
    for (std::size_t flat = 0; flat < total; ++flat) {
      const std::span<const double> x1 = Ds[0].point((flat / stride[0]) % sizes[0]);
      double obj = 0.0;
      bool in_ball = X.dist_to_centroid(x1) <= rho;
      for (std::size_t i = 1; i < m; ++i) {
        const std::span<const double> xi = Ds[i].point((flat / stride[i]) % sizes[i]);
        obj += X.distance(xi, x1);
        in_ball = in_ball && X.dist_to_centroid(xi) <= rho;
      }
      obj *= lambda;
      if (obj < lglob) lglob = obj;
      if (in_ball && (obj < lval || (obj == lval && flat < lidx))) {
        lval = obj;
        lidx = flat;
      }
    }
#pragma omp critical
    {
      if (lglob < best_global) best_global = lglob;
      if (lval < best_val || (lval == best_val && lidx < best_idx)) {
        best_val = lval;
        best_idx = lidx;
      }
    }
  }
  if (best_idx == total)
    throw std::runtime_error("no tuple of the approximating product lies in B(rho)");

  FeasibilityResult res;
  for (std::size_t i = 0; i < m; ++i) {
    const std::span<const double> xi = Ds[i].point((best_idx / stride[i]) % sizes[i]);
    res.tuple.insert(res.tuple.end(), xi.begin(), xi.end());
  }
  res.x1.assign(res.tuple.begin(), res.tuple.begin() + static_cast<std::ptrdiff_t>(X.dim()));

  BoundReport& r = res.report;
  r.check_id = "feasibility-approx";

  double spread = 0.0;
  for (const FiniteSet& D : Ds)
    spread = std::max(spread, point_dist(X.centroid(), D).raw());
  r.require_gt("rho_gt_2lambda_spread", rho,
               2.0 * lambda * static_cast<double>(m - 1) * spread);

  const FiniteSet inter = intersect_clouds(Cs, 1e-9);
  const FiniteSet inter_ball = ball_intersect(inter, rho);
  r.add_condition("intersection_meets_ball", !inter_ball.empty(),
                  static_cast<double>(inter_ball.size()));
  r.require_gt("rho_bar_gt_3rho", rho_bar, 3.0 * rho);
  r.add_condition("global_argmin_meets_ball", best_val <= best_global + 1e-12,
                  best_global - best_val);

  const double gamma_max =
      std::max(2.0 * rho_bar * static_cast<double>(m), rho_bar / lambda) + 1.0;
  const double psi_viol = conditioning_violation(psi, gamma_max);
  r.add_condition("psi_valid", psi_viol <= 1e-9, 1e-9 - psi_viol);

  // Spot-validate the constraint qualification on tuples drawn from the
  // truncated actual factors (strided to a bounded budget).
  {
    std::vector<FiniteSet> CB;
    CB.reserve(m);
    std::size_t ctotal = 1;
    for (const FiniteSet& C : Cs) {
      CB.push_back(ball_intersect(C, rho_bar));
      ctotal *= std::max<std::size_t>(CB.back().size(), 1);
    }
    bool any_empty = false;
    for (const FiniteSet& C : CB) any_empty = any_empty || C.empty();
    double worst = 0.0;
    if (!any_empty) {
      std::vector<std::size_t> cstride(m);
      cstride[m - 1] = 1;
      for (std::size_t i = m - 1; i-- > 0;) cstride[i] = cstride[i + 1] * CB[i + 1].size();
      constexpr std::size_t kBudget = 100000;
      const std::size_t hop = std::max<std::size_t>(1, ctotal / kBudget);
      for (std::size_t flat = 0; flat < ctotal; flat += hop) {
        const std::span<const double> x1 = CB[0].point((flat / cstride[0]) % CB[0].size());
        double sum = 0.0;
        for (std::size_t i = 1; i < m; ++i)
          sum += X.distance(CB[i].point((flat / cstride[i]) % CB[i].size()), x1);
        const ExtReal d = point_dist(x1, inter);
        if (!d.is_finite()) {
          worst = kInf;
          break;
        }
        worst = std::max(worst, d.raw() - psi.psi(sum));
      }
    }
    r.add_condition("psi_qualification_holds", worst <= 1e-9,
                    std::isfinite(worst) ? 1e-9 - worst : -kInf);
  }

  r.lhs = point_dist(res.x1, inter);
  ExtReal dlmax(0.0);
  for (std::size_t i = 0; i < m; ++i)
    dlmax = ext_max(dlmax, trunc_hausdorff(Cs[i], Ds[i], rho_bar));
  const double base = rho_bar / lambda + psi.psi(rho_bar / lambda);
  r.rhs = dlmax.is_finite()
              ? ExtReal(base + (1.0 + 2.0 * static_cast<double>(m) * lambda) * dlmax.raw())
              : ExtReal::inf();

  r.note(detail::cat("selected tuple index ", best_idx, " objective ", best_val));
  r.note(detail::cat("max_i dl_rho_bar(C_i, D_i) = ",
                     dlmax.is_finite() ? dlmax.raw() : kInf));
  r.finalize(tol);
  return res;
}

// --- constraint softening ----------------------------------------------------

std::pair<GriddedFunction, GriddedFunction> build_softened(
    const ConstrainedProblem& p_actual, const ConstrainedProblem& p_approx,
    double lambda, double y_step, double y_max) {
  p_actual.validate();
  p_approx.validate();
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
  if (!(y_step > 0.0) || y_max < 0.0) throw std::invalid_argument("bad y grid");
  const std::size_t m = p_actual.num_constraints();
  if (m == 0 || m != p_approx.num_constraints())
    throw std::invalid_argument("need matching nonzero constraint counts");
  if (!p_actual.objective.same_grid(p_approx.objective))
    throw std::invalid_argument("actual and approximate problems must share the grid");

  const GridGeom& xg = p_actual.objective.geom();
  const std::size_t n = xg.dim();
  GridGeom pg = xg;
  const auto ycount = static_cast<std::size_t>(std::floor(y_max / y_step + 1e-9)) + 1;
  for (std::size_t i = 0; i < m; ++i) {
    pg.lo.push_back(0.0);
    pg.step.push_back(y_step);
    pg.count.push_back(ycount);
  }
  const MetricSpace prod =
      MetricSpace::product(p_actual.objective.space(), MetricSpace::sup(m));

  GriddedFunction f(prod, pg, "softened-actual");
  GriddedFunction glam(prod, pg, "softened-approx");
  std::vector<double> pt(n + m);
  for (std::size_t flat = 0; flat < pg.num_nodes(); ++flat) {
    pg.node(flat, pt);
    const std::span<const double> x(pt.data(), n);
    const std::span<const double> y(pt.data() + n, m);
    const std::size_t xi = xg.nearest(x);

    bool f_ok = true, y_zero = true;
    for (std::size_t i = 0; i < m && f_ok; ++i)
      f_ok = p_actual.constraints[i].value(xi) <= ExtReal(0.0);
    for (std::size_t i = 0; i < m; ++i) y_zero = y_zero && y[i] == 0.0;
    if (f_ok && y_zero) f.set_value(flat, p_actual.objective.value(xi));

    bool g_ok = true;
    double ysum = 0.0;
    for (std::size_t i = 0; i < m && g_ok; ++i) {
      g_ok = y[i] >= 0.0 && p_approx.constraints[i].value(xi) <= ExtReal(y[i]);
      ysum += y[i];
    }
    const ExtReal g0 = p_approx.objective.value(xi);
    if (g_ok && g0.is_finite()) glam.set_value(flat, ExtReal(g0.raw() + lambda * ysum));
  }
  return {std::move(f), std::move(glam)};
}

namespace {

// Distance from (centroid, 0) to the epigraph of the function x -> value(x)
// given per grid node; exact for finite node sets since the vertical distance
// from 0 to [v, inf) is max{v, 0}.
double epi_centroid_dist(const GriddedFunction& f0,
                         const std::function<ExtReal(std::size_t)>& value) {
  double best = kInf;
  for (std::size_t j = 0; j < f0.size(); ++j) {
    const ExtReal v = value(j);
    if (!v.is_finite()) continue;
    const double cand = std::max(f0.space().dist_to_centroid(f0.node(j)),
                                 std::max(v.raw(), 0.0));
    best = std::min(best, cand);
  }
  return best;
}

// max_{i=1..m} f_i on each node, the on-grid level-zero set, and the throw-on
// -violation constraint qualification max_i f_i(x) >= psi(dist(x, lev0)).
void require_constraint_qualification(const ConstrainedProblem& p,
                                      const ConditioningFn& psi) {
  const GriddedFunction& f0 = p.objective;
  const std::size_t N = f0.size();
  std::vector<ExtReal> worst(N, ExtReal(-kInf));
  for (const GriddedFunction& c : p.constraints)
    for (std::size_t j = 0; j < N; ++j) worst[j] = ext_max(worst[j], c.value(j));

  FiniteSet lev0(f0.space(), "lev0");
  for (std::size_t j = 0; j < N; ++j)
    if (worst[j] <= ExtReal(0.0)) lev0.push_back(f0.node(j));

  for (std::size_t j = 0; j < N; ++j) {
    if (!worst[j].is_finite() || worst[j] <= ExtReal(0.0)) continue;
    const ExtReal d = point_dist(f0.node(j), lev0);
    if (d.is_finite() && worst[j].raw() + 1e-9 >= psi.psi(d.raw())) continue;
    std::ostringstream coords;
    for (const double v : f0.node(j)) coords << v << ' ';
    throw std::runtime_error(detail::cat(
        "constraint qualification fails at node (", coords.str(),
        "): max_i f_i = ", worst[j].raw(),
        " < psi(dist) = ", d.is_finite() ? psi.psi(d.raw()) : kInf));
  }
}

// max_{i=0..m} sup over grid nodes in B_X(rho_bar) of |f_i - g_i|.
ExtReal constraint_data_error(const ConstrainedProblem& pa, const ConstrainedProblem& pb,
                              double rho_bar) {
  const GriddedFunction& f0 = pa.objective;
  ExtReal out(0.0);
  for (std::size_t j = 0; j < f0.size(); ++j) {
    if (f0.space().dist_to_centroid(f0.node(j)) > rho_bar) continue;
    out = ext_max(out, ext_abs_diff(f0.value(j), pb.objective.value(j)));
    for (std::size_t i = 0; i < pa.constraints.size(); ++i)
      out = ext_max(out, ext_abs_diff(pa.constraints[i].value(j), pb.constraints[i].value(j)));
  }
  return out;
}

double inf_objective_in_ball(const GriddedFunction& f0, double rho_bar) {
  double inf_v = kInf;
  for (std::size_t j = 0; j < f0.size(); ++j) {
    if (f0.space().dist_to_centroid(f0.node(j)) > rho_bar) continue;
    if (f0.value(j).is_finite()) inf_v = std::min(inf_v, f0.value(j).raw());
  }
  return inf_v;
}

void validate_shared_lipschitz(BoundReport& r, const ConstrainedProblem& pa,
                               const ConstrainedProblem& pb, const HolderModulus& kappa,
                               double radius, double tol) {
  if (kappa.exponent != 1.0)
    throw std::invalid_argument("shared modulus must be Lipschitz (exponent 1)");
  const auto v1 = validate_holder(pa.objective.field(), kappa, radius, tol);
  const auto v2 = validate_holder(pb.objective.field(), kappa, radius, tol);
  r.add_condition("objectives_lipschitz", !v1 && !v2, (v1 || v2) ? -1.0 : 0.0);
  if (v1) r.note("actual objective: " + *v1);
  if (v2) r.note("approximate objective: " + *v2);
}

}  // namespace

BoundReport check_softening_bound(const ConstrainedProblem& p_actual,
                                  const ConstrainedProblem& p_approx, double lambda,
                                  const ConditioningFn& psi, const HolderModulus& kappa,
                                  const RadiusBundle& radii, double y_step, double tol) {
  p_actual.validate();
  p_approx.validate();
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
  const std::size_t m = p_actual.num_constraints();
  if (m == 0 || m != p_approx.num_constraints())
    throw std::invalid_argument("need matching nonzero constraint counts");
  require_constraint_qualification(p_actual, psi);

  BoundReport r;
  r.check_id = "softening-bound";
  const double rho = radii.rho;
  const double md = static_cast<double>(m);
  const GriddedFunction& f0 = p_actual.objective;

  // dist((ctr, 0), epi f) with y pinned to 0; dist((ctr, 0), epi g_lam) with
  // the per-node optimal slack y_i = max{g_i(x), 0} (any larger slack grows
  // both the domain and the value coordinate).
  const double d_f = epi_centroid_dist(f0, [&](std::size_t j) -> ExtReal {
    for (const GriddedFunction& c : p_actual.constraints)
      if (!(c.value(j) <= ExtReal(0.0))) return ExtReal::inf();
    return f0.value(j);
  });
  const double d_g = epi_centroid_dist(f0, [&](std::size_t j) -> ExtReal {
    const ExtReal g0 = p_approx.objective.value(j);
    if (!g0.is_finite()) return ExtReal::inf();
    double reach = g0.raw(), slack = 0.0;
    for (const GriddedFunction& c : p_approx.constraints) {
      const ExtReal gi = c.value(j);
      if (!gi.is_finite()) return ExtReal::inf();
      const double yi = std::max(gi.raw(), 0.0);
      slack = std::max(slack, yi);
      reach += lambda * yi;
    }
    return ExtReal(std::max(reach, slack));
  });
  r.add_condition("epi_dists_finite", std::isfinite(d_f) && std::isfinite(d_g),
                  std::isfinite(d_f) && std::isfinite(d_g) ? 0.0 : -kInf);
  if (!std::isfinite(d_f) || !std::isfinite(d_g)) {
    r.lhs = ExtReal(0.0);
    r.rhs = ExtReal::inf();
    r.finalize(tol);
    return r;
  }

  const double rho_bar = radii.rho_bar.value_or(2.0 * rho + std::max(d_f, d_g) + 1e-6);
  r.require_gt("rho_bar_gt_2rho_plus_epi_dist", rho_bar, 2.0 * rho + std::max(d_f, d_g));

  const double inf_f0 = inf_objective_in_ball(f0, rho_bar);
  r.add_condition("objective_attains_finite_inf", std::isfinite(inf_f0),
                  std::isfinite(inf_f0) ? inf_f0 : -kInf);
  if (!std::isfinite(inf_f0)) {
    r.lhs = ExtReal(0.0);
    r.rhs = ExtReal::inf();
    r.finalize(tol);
    return r;
  }

  const double rho_star =
      radii.rho_star.value_or(rho_bar + std::max(0.0, -inf_f0) + 1e-6);
  r.require_ge("rho_star_ge_rho_bar_plus_neg_inf", rho_star,
               rho_bar + std::max(0.0, -inf_f0));
  const double q = std::max(rho_star / lambda, psi.psi_inv(rho_star / lambda));
  const double rho_hat = radii.rho_hat.value_or(rho_bar + q + 1e-6);
  r.require_gt("rho_hat_gt_rho_bar_plus_q", rho_hat, rho_bar + q);

  const double psi_viol = conditioning_violation(psi, q + rho_star / lambda + 1.0);
  r.add_condition("psi_valid", psi_viol <= 1e-9, 1e-9 - psi_viol);
  validate_shared_lipschitz(r, p_actual, p_approx, kappa, rho_hat, tol);

  const double y_max = std::ceil(rho_star / lambda / y_step - 1e-9) * y_step;
  const auto [f, glam] = build_softened(p_actual, p_approx, lambda, y_step, y_max);
  r.lhs = kenmochi_dl(f, glam, rho);

  const ExtReal diff = constraint_data_error(p_actual, p_approx, rho_bar);
  r.rhs = diff.is_finite()
              ? ExtReal((1.0 + kappa.kappa(rho_hat)) * q + (1.0 + md * lambda) * diff.raw())
              : ExtReal::inf();

  r.note(detail::cat("rho_bar=", rho_bar, " rho*=", rho_star, " rho_hat=", rho_hat,
                     " y_max=", y_max));
  r.note(detail::cat("inf f0 over ball=", inf_f0,
                     " data error=", diff.is_finite() ? diff.raw() : kInf, " q=", q));
  r.finalize(tol);
  return r;
}

BoundReport check_penalty_bound(const ConstrainedProblem& p_actual,
                                const ConstrainedProblem& p_approx, double lambda,
                                const ConditioningFn& psi, const HolderModulus& kappa,
                                const RadiusBundle& radii, double tol) {
  p_actual.validate();
  p_approx.validate();
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
  const std::size_t m = p_actual.num_constraints();
  if (m == 0 || m != p_approx.num_constraints())
    throw std::invalid_argument("need matching nonzero constraint counts");
  if (!p_actual.objective.same_grid(p_approx.objective))
    throw std::invalid_argument("actual and approximate problems must share the grid");
  require_constraint_qualification(p_actual, psi);

  BoundReport r;
  r.check_id = "penalty-bound";
  const double rho = radii.rho;
  const double md = static_cast<double>(m);
  const GriddedFunction& f0 = p_actual.objective;

  GriddedFunction f(f0.space(), f0.geom(), "penalty-actual");
  GriddedFunction glam(f0.space(), f0.geom(), "penalty-approx");
  for (std::size_t j = 0; j < f0.size(); ++j) {
    bool feasible = true;
    for (const GriddedFunction& c : p_actual.constraints)
      feasible = feasible && c.value(j) <= ExtReal(0.0);
    if (feasible) f.set_value(j, f0.value(j));

    const ExtReal g0 = p_approx.objective.value(j);
    if (!g0.is_finite()) continue;
    double pen = 0.0;
    bool ok = true;
    for (const GriddedFunction& c : p_approx.constraints) {
      const ExtReal gi = c.value(j);
      ok = ok && gi.is_finite();
      if (ok) pen += std::max(0.0, gi.raw());
    }
    if (ok) glam.set_value(j, ExtReal(g0.raw() + lambda * pen));
  }

  const double d_f = epi_centroid_dist(f0, [&](std::size_t j) { return f.value(j); });
  const double d_g = epi_centroid_dist(f0, [&](std::size_t j) { return glam.value(j); });
  r.add_condition("epi_dists_finite", std::isfinite(d_f) && std::isfinite(d_g),
                  std::isfinite(d_f) && std::isfinite(d_g) ? 0.0 : -kInf);
  if (!std::isfinite(d_f) || !std::isfinite(d_g)) {
    r.lhs = ExtReal(0.0);
    r.rhs = ExtReal::inf();
    r.finalize(tol);
    return r;
  }

  const double rho_bar = radii.rho_bar.value_or(2.0 * rho + std::max(d_f, d_g) + 1e-6);
  r.require_gt("rho_bar_gt_2rho_plus_epi_dist", rho_bar, 2.0 * rho + std::max(d_f, d_g));

  const double inf_f0 = inf_objective_in_ball(f0, rho_bar);
  r.add_condition("objective_attains_finite_inf", std::isfinite(inf_f0),
                  std::isfinite(inf_f0) ? inf_f0 : -kInf);
  if (!std::isfinite(inf_f0)) {
    r.lhs = ExtReal(0.0);
    r.rhs = ExtReal::inf();
    r.finalize(tol);
    return r;
  }

  const double arg = (rho_bar - inf_f0) / lambda;
  r.add_condition("penalty_argument_nonnegative", arg >= 0.0, arg);
  const double pinv = psi.psi_inv(std::max(arg, 0.0));
  const double rho_hat = radii.rho_hat.value_or(rho_bar + pinv + 1e-6);
  r.require_gt("rho_hat_gt_rho_bar_plus_psi_inv", rho_hat, rho_bar + pinv);

  const double psi_viol = conditioning_violation(psi, std::max(arg, 0.0) + pinv + 1.0);
  r.add_condition("psi_valid", psi_viol <= 1e-9, 1e-9 - psi_viol);
  validate_shared_lipschitz(r, p_actual, p_approx, kappa, rho_hat, tol);

  r.lhs = kenmochi_dl(f, glam, rho);
  const ExtReal diff = constraint_data_error(p_actual, p_approx, rho_bar);
  r.rhs = diff.is_finite()
              ? ExtReal(std::max(1.0, kappa.kappa(rho_hat)) * pinv +
                        (1.0 + md * lambda) * diff.raw())
              : ExtReal::inf();

  r.note(detail::cat("rho_bar=", rho_bar, " rho_hat=", rho_hat, " psi_inv_arg=", arg,
                     " psi_inv=", pinv));
  r.note(detail::cat("inf f0 over ball=", inf_f0,
                     " data error=", diff.is_finite() ? diff.raw() : kInf));
  r.finalize(tol);
  return r;
}

// --- disjunctive programming --------------------------------------------------

DisjunctiveResult run_disjunctive_experiment(std::span<const FiniteSet> Cs,
                                             std::span<const FiniteSet> Ds,
                                             std::span<const double> c,
                                             std::span<const double> d, double rho,
                                             double grid_h, double tol) {
  if (Cs.empty() || Cs.size() != Ds.size())
    throw std::invalid_argument("need matching nonempty family lists");
  const MetricSpace& X = Cs[0].space();
  for (const MetricFactor& f : X.factors())
    if (f.norm != Norm::L2)
      throw std::invalid_argument("disjunctive experiment runs in Euclidean mode");
  if (c.size() != X.dim() || d.size() != X.dim())
    throw std::invalid_argument("cost vector dimension mismatch");

  const auto l2 = [](std::span<const double> v) {
    double s = 0.0;
    for (const double t : v) s += t * t;
    return std::sqrt(s);
  };
  const auto dot = [](std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
  };
  std::vector<double> cd(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) cd[k] = c[k] - d[k];
  const double cmax = std::max(l2(c), l2(d));
  const double rho_bar = rho * (1.0 + cmax);

  const FiniteSet UC = union_set(Cs);
  const FiniteSet UD = union_set(Ds);
  const auto linear_field = [&](const FiniteSet& nodes, std::span<const double> cost,
                                std::string name) {
    ScalarField f{nodes, {}, std::move(name)};
    f.values.reserve(nodes.size());
    for (std::size_t j = 0; j < nodes.size(); ++j)
      f.values.push_back(ExtReal(dot(cost, nodes.point(j))));
    return f;
  };

  DisjunctiveResult out;
  BoundReport& r = out.bound;
  r.check_id = "disjunctive";
  r.lhs = kenmochi_dl(linear_field(UC, c, "cost-actual"),
                      linear_field(UD, d, "cost-approx"), rho);
  ExtReal dlsup(0.0);
  for (std::size_t a = 0; a < Cs.size(); ++a)
    dlsup = ext_max(dlsup, trunc_hausdorff(Cs[a], Ds[a], rho_bar));
  r.rhs = dlsup.is_finite()
              ? ExtReal(rho * l2(cd) + (1.0 + cmax) * dlsup.raw())
              : ExtReal::inf();
  r.note(detail::cat("rho_bar=", rho_bar, " sup_a dl=",
                     dlsup.is_finite() ? dlsup.raw() : kInf, " |c-d|=", l2(cd)));
  r.finalize(tol);

  // Near-minimizer transfer on a lattice snap of the same instance.
  std::vector<std::array<double, 2>> box(X.dim());
  for (std::size_t k = 0; k < X.dim(); ++k) box[k] = {kInf, -kInf};
  for (const FiniteSet* u : {&UC, &UD})
    for (std::size_t j = 0; j < u->size(); ++j)
      for (std::size_t k = 0; k < X.dim(); ++k) {
        box[k][0] = std::min(box[k][0], u->point(j)[k]);
        box[k][1] = std::max(box[k][1], u->point(j)[k]);
      }
  const GridGeom geom = GridGeom::uniform(box, grid_h);
  GriddedFunction fg(X, geom, "cost-actual-grid");
  GriddedFunction gg(X, geom, "cost-approx-grid");
  std::vector<double> node(X.dim());
  const auto snap = [&](GriddedFunction& target, const FiniteSet& u,
                        std::span<const double> cost) {
    for (std::size_t j = 0; j < u.size(); ++j) {
      const std::size_t flat = geom.nearest(u.point(j));
      geom.node(flat, node);
      target.set_value(flat, std::min(target.value(flat), ExtReal(dot(cost, node))));
    }
  };
  snap(fg, UC, c);
  snap(gg, UD, d);
  const double delta =
      r.lhs.is_finite() ? 2.0 * (r.lhs.raw() + grid_h) + 1e-6 : 2.0 * rho;
  out.estimates = check_solution_estimates(fg, gg, 0.0, delta, rho, tol + grid_h);
  return out;
}

}  // namespace setdist
