#include "setdist/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "note_fmt.hpp"
#include "setdist/approx.hpp"
#include "setdist/distance.hpp"
#include "setdist/epigraph.hpp"
#include "setdist/hull.hpp"
#include "setdist/mappings.hpp"
#include "setdist/pwl.hpp"
#include "setdist/rng.hpp"
#include "setdist/scalar_field.hpp"
#include "setdist/set_ops.hpp"
#include "setdist/stationarity.hpp"

namespace setdist {
namespace {

using detail::cat;

// ---------------------------------------------------------------------------
// Shared helpers
// ---------------------------------------------------------------------------

FiniteSet pts1(std::initializer_list<double> xs, std::string label = {}) {
  FiniteSet s(MetricSpace::line(), std::move(label));
  for (double x : xs) s.push_back({x});
  return s;
}

SmoothFn quadratic1(double a, double b, double c) {
  return SmoothFn{[=](std::span<const double> x) { return a * x[0] * x[0] + b * x[0] + c; },
                  [=](std::span<const double> x) {
                    return std::vector<double>{2.0 * a * x[0] + b};
                  }};
}

// max_i sup over in-ball nodes of |f_i - g_i| for a pair of constrained
// problems on a shared grid (objective counted as i = 0).
double sup_problem_diff(const ConstrainedProblem& a, const ConstrainedProblem& b,
                        double rho_bar) {
  const GriddedFunction& f0 = a.objective;
  const std::vector<double>& ctr = f0.space().centroid();
  double worst = 0.0;
  for (std::size_t i = 0; i < f0.size(); ++i) {
    if (f0.space().distance(f0.node(i), ctr) > rho_bar) continue;
    worst = std::max(worst, std::abs(f0.value(i).raw() - b.objective.value(i).raw()));
    for (std::size_t k = 0; k < a.constraints.size(); ++k)
      worst = std::max(worst,
                       std::abs(a.constraints[k].value(i).raw() - b.constraints[k].value(i).raw()));
  }
  return worst;
}

// Ratio report: how balanced the two additive terms of a bound are. The rhs
// of `base` must decompose as term1 + term2 with term2 supplied; passes when
// max(term1, term2) <= limit * min(term1, term2).
BoundReport balance_report(std::string id, const BoundReport& base, double term2,
                           double limit, double tol) {
  BoundReport r;
  r.check_id = std::move(id);
  const double term1 = base.rhs.raw() - term2;
  const double lo = std::min(term1, term2);
  const double hi = std::max(term1, term2);
  r.lhs = lo > 0.0 ? ExtReal(hi / lo) : kInf;
  r.rhs = ExtReal(limit);
  r.add_condition("terms-positive", lo > 0.0, lo);
  r.add_condition("base-check-passes", base.status() == "pass", base.margin().raw());
  r.note(cat("approximation term ", term1, " vs data term ", term2));
  r.finalize(tol);
  return r;
}

std::vector<double> sweep_or(const ExperimentParams& p, std::initializer_list<double> fallback) {
  if (p.sweep_values && !p.sweep_values->empty()) return *p.sweep_values;
  return std::vector<double>(fallback);
}

// ---------------------------------------------------------------------------
// paper-counterexamples: six constructions where a naive calculus rule fails
// while the guarded checkers refuse or the sharp form is attained.
// ---------------------------------------------------------------------------

void cex_intersection(ReportDocument& doc, double tol) {
  const double h = 0.1;
  auto seg_union = [&](std::initializer_list<std::pair<double, double>> segs, std::string label) {
    FiniteSet s(MetricSpace::line(), std::move(label));
    for (auto [a, b] : segs) s.append(sample_interval(a, b, h));
    return s;
  };
  const FiniteSet c1 = seg_union({{-1.0, 0.0}, {1.0, 2.0}}, "C1");
  const FiniteSet d1 = seg_union({{-1.0, 0.0}, {1.0, 2.0}}, "D1");
  const FiniteSet c2 = seg_union({{-1.0, 0.0}, {2.0, 3.0}}, "C2");
  const FiniteSet d2 = seg_union({{-1.0, 0.0}, {2.5, 3.0}}, "D2");
  const double rho = 4.0;
  const double comp1 = trunc_hausdorff(c1, d1, rho).raw();
  const double comp2 = trunc_hausdorff(c2, d2, rho).raw();
  std::vector<FiniteSet> cs, ds;
  cs.push_back(c1);
  cs.push_back(c2);
  ds.push_back(d1);
  ds.push_back(d2);
  const FiniteSet ci = intersect_clouds(cs);
  const FiniteSet di = intersect_clouds(ds);
  const ExtReal idl = trunc_hausdorff(ci, di, rho);

  BoundReport r;
  r.check_id = "cex-intersection";
  r.lhs = idl;
  r.rhs = ExtReal(2.0 + h);
  r.add_condition("component-dl-small", comp1 <= 0.5 + tol && comp2 <= 0.5 + tol,
                  std::max(comp1, comp2));
  r.require_ge("intersection-dl-large", idl.raw(), 2.0 - h - tol);
  r.note("component distances 0 and 0.5 while the intersections drift apart by 2");
  r.finalize(tol);
  doc.reports.push_back(std::move(r));
  doc.add_value("intersection-component-dl-max", ExtReal(std::max(comp1, comp2)));
  doc.add_value("intersection-dl", idl);
}

void cex_hull(ReportDocument& doc, double tol) {
  const MetricSpace box = MetricSpace::sup(2);
  FiniteSet c(box, "C");
  c.push_back({-2.0, 2.0});
  c.push_back({2.0, -2.0});
  FiniteSet d(box, "D");
  d.push_back({2.0, 2.0});
  d.push_back({-2.0, -2.0});
  const double rho = 1.0;
  const ExtReal raw_dl = trunc_hausdorff(c, d, rho);
  const HullDistance hd = hull_trunc_dl(c, d, rho);
  const BoundReport guard = check_hull(c, d, rho, tol);

  BoundReport r;
  r.check_id = "cex-hull";
  r.lhs = hd.value;
  r.rhs = ExtReal(1.0);
  r.add_condition("point-dl-zero", raw_dl <= ExtReal(tol), raw_dl.raw());
  r.require_ge("hull-dl-large", hd.value.raw(), 1.0 - tol);
  r.add_condition("checker-guard-trips", guard.status() == "not-applicable", 0.0);
  r.note("the hulls cross the unit ball even though no generator point does");
  r.finalize(tol);
  doc.reports.push_back(std::move(r));
  doc.add_value("hull-dl", hd.value);
  doc.add_value("hull-point-dl", raw_dl);
}

void cex_sum(ReportDocument& doc, double tol) {
  // Sharp case: translating both summands by 0.3 moves the sum by exactly 0.6.
  std::vector<FiniteSet> cs, ds;
  cs.push_back(pts1({0.0}, "C1"));
  cs.push_back(pts1({1.0}, "C2"));
  ds.push_back(pts1({0.3}, "D1"));
  ds.push_back(pts1({1.3}, "D2"));
  const BoundReport sharp = check_sum(cs, ds, 10.0, tol);

  BoundReport r1;
  r1.check_id = "cex-sum-sharp";
  r1.lhs = sharp.rhs;  // componentwise budget ...
  r1.rhs = sharp.lhs;  // ... attained by the distance of the sums
  r1.add_condition("sum-check-passes", sharp.status() == "pass", sharp.margin().raw());
  r1.note("equality case: aligned translations accumulate to the full budget");
  r1.finalize(tol);
  doc.reports.push_back(std::move(r1));

  // Strict case: opposite translations cancel in the sum.
  std::vector<FiniteSet> cs2, ds2;
  cs2.push_back(pts1({1.0}, "C1"));
  cs2.push_back(pts1({-1.0}, "C2"));
  ds2.push_back(pts1({2.0}, "D1"));
  ds2.push_back(pts1({-2.0}, "D2"));
  const BoundReport strict = check_sum(cs2, ds2, 5.0, tol);

  BoundReport r2;
  r2.check_id = "cex-sum-strict";
  r2.lhs = strict.lhs;
  r2.rhs = ExtReal(0.0);
  r2.add_condition("component-budget-positive", strict.rhs.raw() >= 2.0 - tol,
                   strict.rhs.raw());
  r2.add_condition("sum-check-passes", strict.status() == "pass", strict.margin().raw());
  r2.note("cancellation: each summand moves by 1 yet the sums coincide");
  r2.finalize(tol);
  doc.reports.push_back(std::move(r2));
  doc.add_value("sum-sharp-dl", sharp.lhs);
  doc.add_value("sum-strict-dl", strict.lhs);
}

void cex_two_rays(ReportDocument& doc, double tol) {
  // Two nearly antipodal rays, each tilted by delta: the componentwise
  // distances stay O(delta * rho) but the Minkowski sums open up to ~rho.
  const MetricSpace plane = MetricSpace::euclidean(2);
  const double step = 0.4, extent = 40.0, delta = 0.1, rho = 5.0;
  auto ray = [&](double dx, double dy, std::string lbl) {
    const std::array<double, 2> dir{dx, dy};
    return sample_ray(plane, dir, extent, step, std::move(lbl));
  };
  const FiniteSet c1 = ray(1.0, 1.0 + delta, "C1");
  const FiniteSet c2 = ray(-1.0, -1.0 + delta, "C2");
  const FiniteSet d1 = ray(1.0, 1.0, "D1");
  const FiniteSet d2 = ray(-1.0, -1.0, "D2");
  const double comp1 = trunc_hausdorff(c1, d1, rho).raw();
  const double comp2 = trunc_hausdorff(c2, d2, rho).raw();

  std::vector<FiniteSet> cparts, dparts;
  cparts.push_back(c1);
  cparts.push_back(c2);
  dparts.push_back(d1);
  dparts.push_back(d2);
  const FiniteSet csum = minkowski_sum(cparts);
  const FiniteSet dsum = minkowski_sum(dparts);
  const ExtReal sum_dl = trunc_hausdorff(csum, dsum, rho);

  BoundReport r;
  r.check_id = "cex-two-rays";
  r.lhs = ExtReal(0.9 * rho);
  r.rhs = sum_dl;  // passes exactly when the sum distance reaches 0.9 rho
  r.add_condition("component-dl-small",
                  comp1 <= delta * rho + step && comp2 <= delta * rho + step,
                  std::max(comp1, comp2));
  r.note("unbounded summands: no finite sum rule survives, the distance of the sums "
         "approaches the truncation radius");
  r.finalize(tol);
  doc.reports.push_back(std::move(r));
  doc.add_value("two-rays-component-dl-max", ExtReal(std::max(comp1, comp2)));
  doc.add_value("two-rays-sum-dl", sum_dl);
}

void cex_argmin_excess(ReportDocument& doc, double tol) {
  // f = x on (0, 1] (no grid node at 0) vs g = x on [0, 1]: the epigraphs are
  // h-close but the eps-argmin of f relative to the true infimum 0 is empty.
  const double h = 0.1;
  const GriddedFunction f_open = GriddedFunction::line(
      0.0, 1.0, h, [](double x) { return x <= 1e-12 ? kInf : ExtReal(x); }, "open");
  const GriddedFunction g_full =
      GriddedFunction::line(0.0, 1.0, h, [](double x) { return ExtReal(x); }, "closed");
  const ExtReal dl = kenmochi_dl(f_open, g_full, 1.0);

  const std::array<double, 1> eps_g{0.0};
  const SolutionSummary sg =
      solution_summary(g_full, eps_g, std::span<const double>{}, std::nullopt);
  const std::array<double, 1> eps_f{0.05};
  const SolutionSummary sf = solution_summary(f_open, eps_f, std::span<const double>{}, 0.0);
  const FiniteSet argmin_g = ball_intersect(sg.argmin_eps[0].second, 1.0);
  const ExtReal ex = excess(argmin_g, sf.argmin_eps[0].second);
  const BoundReport guard =
      check_solution_estimates(f_open, g_full, 0.0, 0.05, 1.0, tol, 0.0, 0.0);

  BoundReport r;
  r.check_id = "cex-argmin-excess";
  r.lhs = dl;
  r.rhs = ExtReal(h);
  r.add_condition("argmin-excess-infinite", ex.is_pos_inf(), 0.0);
  r.add_condition("checker-guard-trips", guard.status() == "not-applicable", 0.0);
  r.note("epigraph distance h yet infinite argmin excess: the delta >= eps + 2 dl "
         "hypothesis is indispensable");
  r.finalize(tol);
  doc.reports.push_back(std::move(r));
  doc.add_value("argmin-epi-dl", dl);
  doc.add_value("argmin-excess", ex);
}

void cex_geneq_sharp(ReportDocument& doc, double tol) {
  // S(x) = [x, inf) on [0, 1], T(x) = [1 + h, inf) on [1, 2]: the inverse
  // excess at y* = 0 equals 1 while dl(gph S, gph T) = 1 + h, so the inverse
  // estimate is tight up to the closure gap h.
  const double h = 0.05, extent = 6.0, rho = 3.0;
  const MetricSpace line = MetricSpace::line();
  GriddedMapping S(line, line, "S");
  {
    const FiniteSet xs = sample_interval(0.0, 1.0, h);
    for (std::size_t i = 0; i < xs.size(); ++i)
      S.add_node(xs.point(i), sample_interval(xs.point(i)[0], extent, h));
  }
  GriddedMapping T(line, line, "T");
  {
    const FiniteSet xs = sample_interval(1.0, 2.0, h);
    for (std::size_t i = 0; i < xs.size(); ++i)
      T.add_node(xs.point(i), sample_interval(1.0 + h, extent, h));
  }
  S.codomain_extent = extent;
  T.codomain_extent = extent;

  const ExtReal dl = trunc_hausdorff(graph_cloud(S), graph_cloud(T), rho);
  NearSolutionQuery q;
  q.y_star = {0.0};
  q.eps = 0.0;
  q.rho = rho;
  q.delta = 1.0 + h + 1e-6;
  const BoundReport geneq = check_geneq_bound(S, T, q, tol);

  BoundReport r;
  r.check_id = "cex-geneq-sharp";
  r.lhs = dl;
  r.rhs = ExtReal(1.0 + h);
  r.require_ge("graph-dl-lower", dl.raw(), 1.0 + h - tol);
  r.add_condition("inverse-excess-near-one", std::abs(geneq.lhs.raw() - 1.0) <= h + tol,
                  geneq.lhs.raw());
  r.add_condition("geneq-check-passes", geneq.status() == "pass", geneq.margin().raw());
  r.note("graph distance 1 + h against inverse excess 1: the estimate cannot be improved");
  r.finalize(tol);
  doc.reports.push_back(std::move(r));
  doc.add_value("geneq-graph-dl", dl);
  doc.add_value("geneq-inverse-excess", geneq.lhs);
}

ReportDocument paper_counterexamples(const ExperimentParams& p) {
  ReportDocument doc;
  doc.suite = "paper-counterexamples";
  doc.seed = p.seed;
  cex_intersection(doc, p.tol);
  cex_hull(doc, p.tol);
  cex_sum(doc, p.tol);
  cex_two_rays(doc, p.tol);
  cex_argmin_excess(doc, p.tol);
  cex_geneq_sharp(doc, p.tol);
  return doc;
}

// ---------------------------------------------------------------------------
// case1: feasibility approximation with lambda = eps^{-1/2}
// ---------------------------------------------------------------------------

ReportDocument case1_feasibility(const ExperimentParams& p) {
  ReportDocument doc;
  doc.suite = "case1-feasibility";
  doc.seed = p.seed;
  const std::vector<double> epsilons = sweep_or(p, {0.1, 0.05, 0.025});
  const ConditioningFn psi = ConditioningFn::linear(0.25);
  const double rho = 1.0, rho_bar = 3.5, step = 0.025;

  SweepTable table;
  table.name = "feasibility-sweep";
  table.columns = {"eps", "lambda", "dist", "bound"};
  std::vector<double> bounds;
  for (double eps : epsilons) {
    if (!(eps > 0.0) || eps >= 0.5)
      throw std::invalid_argument(cat("case1-feasibility: eps must lie in (0, 0.5), got ", eps));
    const double lambda = 1.0 / std::sqrt(eps);
    std::vector<FiniteSet> cs, ds;
    cs.push_back(pts1({0.0, 1.0}, "C1"));
    cs.push_back(sample_interval(0.0, 0.75, step, "C2"));
    ds.push_back(pts1({0.0, 1.0}, "D1"));
    ds.push_back(sample_interval(eps, 0.75, step, "D2"));
    FeasibilityResult fr = solve_feasibility_approx(cs, ds, lambda, psi, rho, rho_bar, p.tol);
    fr.report.note(cat("eps=", eps, " lambda=", lambda));
    table.add_row(cat("eps=", eps),
                  {eps, lambda, fr.report.lhs.raw(), fr.report.rhs.raw()});
    bounds.push_back(fr.report.rhs.raw());
    doc.reports.push_back(std::move(fr.report));
  }

  BoundReport mono;
  mono.check_id = "case1-bound-monotone";
  mono.lhs = ExtReal(0.0);
  mono.rhs = ExtReal(0.0);
  for (std::size_t k = 0; k + 1 < bounds.size(); ++k)
    mono.add_condition(cat("bound-decreasing-", k), bounds[k + 1] < bounds[k] - p.tol,
                       bounds[k] - bounds[k + 1]);
  mono.note("the certified bound shrinks as the data error eps does");
  mono.finalize(p.tol);
  doc.reports.push_back(std::move(mono));
  doc.tables.push_back(std::move(table));
  return doc;
}

// ---------------------------------------------------------------------------
// case1-conditioning: a flat quartic intersection needs a fourth-root
// conditioning term; any linear one fails the qualification near the origin.
// ---------------------------------------------------------------------------

ReportDocument case1_conditioning(const ExperimentParams& p) {
  ReportDocument doc;
  doc.suite = "case1-conditioning";
  doc.seed = p.seed;
  const MetricSpace plane = MetricSpace::euclidean(2);
  const double h = 0.1, eps = 0.1;
  const double lambda = 1.0 / std::sqrt(eps);

  const std::array<double, 2> lo{-2.0, -2.0}, hi{2.0, 0.0};
  const FiniteSet as = sample_interval(-2.0, 2.0, h);
  const FiniteSet bs = sample_interval(-2.0, 3.0, h);
  auto quartic_region = [&](double lift, std::string lbl) {
    FiniteSet s(plane, std::move(lbl));
    for (std::size_t i = 0; i < as.size(); ++i)
      for (std::size_t j = 0; j < bs.size(); ++j) {
        const double a = as.point(i)[0], b = bs.point(j)[0];
        if (b >= a * a * a * a + lift - 1e-12) s.push_back({a, b});
      }
    return s;
  };
  std::vector<FiniteSet> cs, ds;
  cs.push_back(sample_box(plane, lo, hi, h, "C1"));
  cs.push_back(quartic_region(0.0, "C2"));
  ds.push_back(sample_box(plane, lo, hi, h, "D1"));
  ds.push_back(quartic_region(eps, "D2"));

  // psi(gamma) = 2 gamma + gamma^{1/4}, tabulated over [0, 16].
  std::vector<std::pair<double, double>> pts;
  for (int k = 0; k <= 400; ++k) {
    const double g = 16.0 * k / 400.0;
    pts.emplace_back(g, 2.0 * g + std::pow(g, 0.25));
  }
  const ConditioningFn psi_table = ConditioningFn::from_table(std::move(pts));

  FeasibilityResult good = solve_feasibility_approx(cs, ds, lambda, psi_table, 1.0, 3.5, p.tol);
  FeasibilityResult bad =
      solve_feasibility_approx(cs, ds, lambda, ConditioningFn::linear(1.0), 1.0, 3.5, p.tol);

  good.report.note("tabulated psi with a fourth-root tail admits the flat intersection");
  doc.reports.push_back(good.report);

  BoundReport contrast;
  contrast.check_id = "conditioning-contrast";
  contrast.lhs = ExtReal(0.0);
  contrast.rhs = ExtReal(0.0);
  contrast.add_condition("table-psi-admissible", good.report.status() == "pass",
                         good.report.margin().raw());
  contrast.add_condition("linear-psi-rejected", bad.report.status() == "not-applicable", 0.0);
  contrast.note("the same instance violates a linear qualification near the flat touch point");
  contrast.finalize(p.tol);
  doc.reports.push_back(std::move(contrast));
  doc.add_value("table-psi-bound", good.report.rhs);
  return doc;
}

// ---------------------------------------------------------------------------
// case2 / case3: softening and penalty bounds, one- and two-dimensional,
// with lambda = delta^{-1/2} balancing the two error terms.
// ---------------------------------------------------------------------------

struct SofteningInstance {
  ConstrainedProblem actual;
  ConstrainedProblem approx;
  RadiusBundle soft_radii;
  RadiusBundle pen_radii;
  double y_step = 0.05;
};

// 1-D: objective x, constraint -x <= 0; approximation shifts the constraint.
SofteningInstance instance_1d(double delta) {
  const double h = 0.05;
  auto line_fn = [&](const std::function<double(double)>& f, std::string nm) {
    return GriddedFunction::line(-1.0, 1.0, h,
                                 [f](double x) { return ExtReal(f(x)); }, std::move(nm));
  };
  SofteningInstance inst;
  inst.actual.objective = line_fn([](double x) { return x; }, "f0");
  inst.actual.constraints.push_back(line_fn([](double x) { return -x; }, "f1"));
  inst.approx.objective = line_fn([](double x) { return x; }, "g0");
  inst.approx.constraints.push_back(line_fn([=](double x) { return -x + delta; }, "g1"));
  inst.soft_radii = RadiusBundle{0.5, 1.06, 1.6, 2.07};
  inst.pen_radii = RadiusBundle{0.5, 1.06, 1.6, std::nullopt};
  return inst;
}

// 2-D: objective (x1 + x2)/2, constraint -x1 <= 0 on [-1, 1]^2.
SofteningInstance instance_2d(double delta) {
  const double h = 0.1;
  const MetricSpace plane = MetricSpace::euclidean(2);
  const std::array<std::array<double, 2>, 2> box{{{-1.0, 1.0}, {-1.0, 1.0}}};
  const GridGeom geom = GridGeom::uniform(box, h);
  auto plane_fn = [&](const std::function<double(std::span<const double>)>& f, std::string nm) {
    return GriddedFunction::from_fn(plane, geom,
                                    [f](std::span<const double> x) { return ExtReal(f(x)); },
                                    std::move(nm));
  };
  SofteningInstance inst;
  inst.actual.objective =
      plane_fn([](std::span<const double> x) { return 0.5 * (x[0] + x[1]); }, "f0");
  inst.actual.constraints.push_back(
      plane_fn([](std::span<const double> x) { return -x[0]; }, "f1"));
  inst.approx.objective =
      plane_fn([](std::span<const double> x) { return 0.5 * (x[0] + x[1]); }, "g0");
  inst.approx.constraints.push_back(
      plane_fn([delta](std::span<const double> x) { return -x[0] + delta; }, "g1"));
  inst.soft_radii = RadiusBundle{0.5, 1.11, 1.6, 1.87};
  inst.pen_radii = RadiusBundle{0.5, 1.11, 1.6, std::nullopt};
  return inst;
}

ReportDocument case2_softening(const ExperimentParams& p) {
  ReportDocument doc;
  doc.suite = "case2-softening";
  doc.seed = p.seed;
  const double delta = 0.05;
  const double lambda = 1.0 / std::sqrt(delta);
  const ConditioningFn psi = ConditioningFn::linear(1.0);
  const HolderModulus kappa{1.0, [](double) { return 1.0; }};

  const char* tags[2] = {"1d", "2d"};
  for (int dim = 0; dim < 2; ++dim) {
    SofteningInstance inst = dim == 0 ? instance_1d(delta) : instance_2d(delta);
    BoundReport r = check_softening_bound(inst.actual, inst.approx, lambda, psi, kappa,
                                          inst.soft_radii, inst.y_step, p.tol);
    r.note(cat("instance ", tags[dim], ", delta=", delta, ", lambda=", lambda));
    const double m = static_cast<double>(inst.actual.num_constraints());
    const double term2 =
        (1.0 + m * lambda) * sup_problem_diff(inst.actual, inst.approx, *inst.soft_radii.rho_bar);
    doc.reports.push_back(r);
    doc.reports.push_back(
        balance_report(cat("softening-balance-", tags[dim]), r, term2, 4.0, p.tol));
    doc.add_value(cat("softening-dl-", tags[dim]), r.lhs);
    doc.add_value(cat("softening-bound-", tags[dim]), r.rhs);
  }
  return doc;
}

ReportDocument case3_penalty(const ExperimentParams& p) {
  ReportDocument doc;
  doc.suite = "case3-penalty";
  doc.seed = p.seed;
  const double delta = 0.05;
  const double lambda_star = 1.0 / std::sqrt(delta);
  const ConditioningFn psi = ConditioningFn::linear(1.0);
  const HolderModulus kappa{1.0, [](double) { return 1.0; }};

  // Balanced lambda on both instances.
  const char* tags[2] = {"1d", "2d"};
  for (int dim = 0; dim < 2; ++dim) {
    SofteningInstance inst = dim == 0 ? instance_1d(delta) : instance_2d(delta);
    BoundReport r = check_penalty_bound(inst.actual, inst.approx, lambda_star, psi, kappa,
                                        inst.pen_radii, p.tol);
    r.note(cat("instance ", tags[dim], ", delta=", delta, ", lambda=", lambda_star));
    const double m = static_cast<double>(inst.actual.num_constraints());
    const double term2 =
        (1.0 + m * lambda_star) * sup_problem_diff(inst.actual, inst.approx, *inst.pen_radii.rho_bar);
    doc.reports.push_back(r);
    doc.reports.push_back(
        balance_report(cat("penalty-balance-", tags[dim]), r, term2, 4.0, p.tol));
    doc.add_value(cat("penalty-dl-", tags[dim]), r.lhs);
    doc.add_value(cat("penalty-bound-", tags[dim]), r.rhs);
  }

  // Lambda sweep on the 1-D instance: the distance is non-increasing, the
  // approximation term decays, the data term grows.
  const std::vector<double> lambdas = sweep_or(p, {1.0, 4.0, 16.0, 64.0});
  SweepTable table;
  table.name = "penalty-lambda-sweep";
  table.columns = {"lambda", "dl", "bound", "approx-term", "data-term"};
  std::vector<double> dls, t1s, t2s;
  for (double lam : lambdas) {
    if (!(lam > 0.0))
      throw std::invalid_argument(cat("case3-penalty: lambda must be positive, got ", lam));
    SofteningInstance inst = instance_1d(delta);
    RadiusBundle radii{0.5, 1.06, std::nullopt, std::nullopt};
    BoundReport r = check_penalty_bound(inst.actual, inst.approx, lam, psi, kappa, radii, p.tol);
    const double m = static_cast<double>(inst.actual.num_constraints());
    const double term2 = (1.0 + m * lam) * sup_problem_diff(inst.actual, inst.approx, 1.06);
    const double term1 = r.rhs.raw() - term2;
    table.add_row(cat("lambda=", lam), {lam, r.lhs.raw(), r.rhs.raw(), term1, term2});
    dls.push_back(r.lhs.raw());
    t1s.push_back(term1);
    t2s.push_back(term2);
    r.note(cat("sweep lambda=", lam));
    doc.reports.push_back(std::move(r));
  }
  BoundReport mono;
  mono.check_id = "penalty-sweep-monotone";
  mono.lhs = ExtReal(0.0);
  mono.rhs = ExtReal(0.0);
  for (std::size_t k = 0; k + 1 < dls.size(); ++k) {
    mono.add_condition(cat("dl-nonincreasing-", k), dls[k + 1] <= dls[k] + p.tol,
                       dls[k] - dls[k + 1]);
    mono.add_condition(cat("approx-term-decreasing-", k), t1s[k + 1] < t1s[k] - p.tol,
                       t1s[k] - t1s[k + 1]);
    mono.add_condition(cat("data-term-increasing-", k), t2s[k + 1] > t2s[k] + p.tol,
                       t2s[k + 1] - t2s[k]);
  }
  mono.note("raising lambda tightens the feasibility error and inflates the data error");
  mono.finalize(p.tol);
  doc.reports.push_back(std::move(mono));
  doc.tables.push_back(std::move(table));
  return doc;
}

// ---------------------------------------------------------------------------
// disjunctive: union-structured feasibility with explicit estimates
// ---------------------------------------------------------------------------

ReportDocument disjunctive(const ExperimentParams& p) {
  ReportDocument doc;
  doc.suite = "disjunctive";
  doc.seed = p.seed;
  std::vector<FiniteSet> cs, ds;
  cs.push_back(pts1({0.0}, "C1"));
  cs.push_back(pts1({2.0}, "C2"));
  ds.push_back(pts1({0.05}, "D1"));
  ds.push_back(pts1({2.0}, "D2"));
  const std::array<double, 1> c{1.0}, d{1.1};
  DisjunctiveResult dr = run_disjunctive_experiment(cs, ds, c, d, 3.0, 0.05, p.tol);
  doc.add_value("disjunctive-dl", dr.bound.lhs);
  doc.add_value("disjunctive-bound", dr.bound.rhs);
  doc.reports.push_back(std::move(dr.bound));
  doc.reports.push_back(std::move(dr.estimates));
  return doc;
}

// ---------------------------------------------------------------------------
// saa-supnorm / saa-regularizer: sample averages and Moreau-style smoothing
// ---------------------------------------------------------------------------

ReportDocument saa_supnorm(const ExperimentParams& p) {
  ReportDocument doc;
  doc.suite = "saa-supnorm";
  doc.seed = p.seed;
  const int nu = 20;
  Rng rng(p.seed);
  std::vector<double> xi(nu);
  for (double& v : xi) v = rng.uniform(-0.5, 0.5);

  // E (x - xi)^2 = x^2 + 1/12 for xi ~ U[-1/2, 1/2].
  const GriddedFunction f = GriddedFunction::line(
      -1.0, 1.0, 0.01, [](double x) { return ExtReal(x * x + 1.0 / 12.0); }, "Ef");
  const GriddedFunction femp = GriddedFunction::line(
      -1.0, 1.0, 0.01,
      [&xi](double x) {
        double acc = 0.0;
        for (double v : xi) acc += (x - v) * (x - v);
        return ExtReal(acc / static_cast<double>(xi.size()));
      },
      "f-sample");
  BoundReport r = check_supnorm_bound(f, femp, 1.0, p.tol);
  r.note(cat("sample average of ", nu, " draws, seed ", p.seed));
  doc.add_value("supnorm-dl", r.lhs);
  doc.add_value("supnorm-gap", r.rhs);
  doc.reports.push_back(std::move(r));
  return doc;
}

ReportDocument saa_regularizer(const ExperimentParams& p) {
  ReportDocument doc;
  doc.suite = "saa-regularizer";
  doc.seed = p.seed;
  const double lam = 0.5;
  const double nu = 4.0;
  const double cap = lam * lam / (2.0 * nu);  // sup of the smoothed kink
  auto huber = [=](double x) {
    const double ax = std::abs(x);
    return ExtReal(ax <= lam / nu ? lam * ax - nu * x * x / 2.0 : cap);
  };
  const double h = 0.01;
  const GriddedFunction f1 =
      GriddedFunction::line(-1.0, 1.0, h, [](double x) { return ExtReal(x * x); }, "f1");
  const GriddedFunction f2 =
      GriddedFunction::line(-1.0, 1.0, h, [](double) { return ExtReal(0.0); }, "zero");
  const GriddedFunction g1 =
      GriddedFunction::line(-1.0, 1.0, h, [](double x) { return ExtReal(x * x); }, "g1");
  const GriddedFunction g2 = GriddedFunction::line(-1.0, 1.0, h, huber, "huber");
  const HolderModulus mod{1.0, [](double) { return 2.0; }};
  const double rho_bar = 2.5;
  BoundReport r = check_holder_sum(f1, f2, g1, g2, mod, 1.0, p.tol, rho_bar, 3.0);
  doc.reports.push_back(r);

  const ExtReal eta = kenmochi_dl(f2, g2, rho_bar);
  BoundReport capr;
  capr.check_id = "saa-regularizer-cap";
  capr.lhs = eta;
  capr.rhs = ExtReal(cap);
  capr.add_condition("holder-sum-passes", r.status() == "pass", r.margin().raw());
  capr.note("the smoothing cap lam^2/(2 nu) dominates the epigraph drift of the regularizer");
  capr.finalize(p.tol);
  doc.reports.push_back(std::move(capr));
  doc.add_value("regularizer-eta", eta);
  doc.add_value("regularizer-cap", ExtReal(cap));
  return doc;
}

// ---------------------------------------------------------------------------
// kkt / kkt-sweep: first-order systems of perturbed inequality problems
// ---------------------------------------------------------------------------

KktProblem kkt_base() {
  KktProblem p;
  p.f0 = quadratic1(1.0, 0.0, 0.0);                     // x^2
  p.constraints.push_back(quadratic1(0.0, 1.0, -1.0));  // x - 1 <= 0
  p.xnodes = sample_interval(-1.2, 1.2, 0.2);
  p.y_max = 1.2;
  p.y_step = 0.2;
  p.ray_extent = 2.0;
  p.ray_step = 0.25;
  return p;
}

KktProblem kkt_perturbed(double delta) {
  KktProblem p = kkt_base();
  p.f0 = quadratic1(1.0, delta, 0.0);                      // x^2 + delta x
  p.constraints[0] = quadratic1(0.0, 1.0, -1.0 - delta);   // x - 1 - delta
  return p;
}

ReportDocument kkt(const ExperimentParams& p) {
  ReportDocument doc;
  doc.suite = "kkt";
  doc.seed = p.seed;
  const KktProblem pf = kkt_base();

  BoundReport zero = check_kkt_bound(pf, pf, 1.0, p.tol);
  zero.check_id = "kkt-zero-perturbation";
  zero.note("identical problems: both sides must vanish exactly");
  zero.add_condition("lhs-exactly-zero", zero.lhs == ExtReal(0.0), zero.lhs.raw());
  zero.finalize(p.tol);
  doc.reports.push_back(std::move(zero));

  const KktProblem pg = kkt_perturbed(0.05);
  BoundReport r = check_kkt_bound(pf, pg, 1.0, p.tol);
  r.note("delta = 0.05 drift of objective slope and constraint offset");
  doc.add_value("kkt-dl", r.lhs);
  doc.add_value("kkt-bound", r.rhs);
  doc.reports.push_back(std::move(r));
  return doc;
}

ReportDocument kkt_sweep(const ExperimentParams& p) {
  ReportDocument doc;
  doc.suite = "kkt-sweep";
  doc.seed = p.seed;
  const std::vector<double> deltas = sweep_or(p, {0.01, 0.02, 0.04, 0.08});
  const KktProblem pf = kkt_base();
  const double rho = 1.0;
  const double slope_cap = (1.0 + 1.0 * rho) * 1.1;  // (1 + m rho) with 10% headroom

  SweepTable table;
  table.name = "kkt-delta-sweep";
  table.columns = {"delta", "dl", "bound", "ratio"};
  std::vector<double> ratios, dls;
  for (double delta : deltas) {
    if (!(delta > 0.0))
      throw std::invalid_argument(cat("kkt-sweep: delta must be positive, got ", delta));
    BoundReport r = check_kkt_bound(pf, kkt_perturbed(delta), rho, p.tol);
    const double ratio = r.lhs.raw() / delta;
    table.add_row(cat("delta=", delta), {delta, r.lhs.raw(), r.rhs.raw(), ratio});
    ratios.push_back(ratio);
    dls.push_back(r.lhs.raw());
    r.note(cat("sweep delta=", delta));
    doc.reports.push_back(std::move(r));
  }

  BoundReport slope;
  slope.check_id = "kkt-sweep-slope";
  slope.lhs = ExtReal(*std::max_element(ratios.begin(), ratios.end()));
  slope.rhs = ExtReal(slope_cap);
  for (std::size_t k = 0; k + 1 < dls.size(); ++k)
    slope.add_condition(cat("dl-nondecreasing-", k), dls[k + 1] >= dls[k] - p.tol,
                        dls[k + 1] - dls[k]);
  slope.note("graph distance grows at most linearly in the perturbation size");
  slope.finalize(p.tol);
  doc.reports.push_back(std::move(slope));
  doc.tables.push_back(std::move(table));
  return doc;
}

// ---------------------------------------------------------------------------
// dc / composite: difference-of-convex and composite stationarity systems
// ---------------------------------------------------------------------------

ReportDocument dc(const ExperimentParams& p) {
  ReportDocument doc;
  doc.suite = "dc";
  doc.seed = p.seed;
  const PwlConvex half({0.0}, {-0.5, 0.5});
  const PwlConvex absfn({0.0}, {-1.0, 1.0});
  const PwlConvex absfn_shift({0.1}, {-1.0, 1.0});
  BoundReport r = dc_mapping_bound(half, absfn, half, absfn_shift, 1.0, 0.1, p.tol);
  r.note("second convex part keeps its slopes but the kink moves by 0.1");
  doc.add_value("dc-dl", r.lhs);
  doc.add_value("dc-bound", r.rhs);
  doc.reports.push_back(std::move(r));
  return doc;
}

ReportDocument composite(const ExperimentParams& p) {
  ReportDocument doc;
  doc.suite = "composite";
  doc.seed = p.seed;
  const PwlConvex phi({0.0}, {-1.0, 1.0});
  const PwlConvex psi({0.05}, {-1.0, 1.0});
  const SmoothFn F = quadratic1(0.0, 1.0, 0.0);     // x
  const SmoothFn G = quadratic1(0.0, 1.02, 0.0);    // 1.02 x
  const FiniteSet xs = sample_interval(-1.2, 1.2, 0.2);
  BoundReport r = composite_stationarity_bound(phi, psi, F, G, xs, 1.0, 0.05, p.tol);
  r.note("outer kink moves by 0.05 while the inner map drifts by 2%");
  doc.add_value("composite-dl", r.lhs);
  doc.add_value("composite-bound", r.rhs);
  doc.reports.push_back(std::move(r));
  return doc;
}

// ---------------------------------------------------------------------------
// subgrad-sqrt-sweep: subgradient graph distance vs the square root of the
// epigraph distance for shifted kinks
// ---------------------------------------------------------------------------

ReportDocument subgrad_sqrt_sweep(const ExperimentParams& p) {
  ReportDocument doc;
  doc.suite = "subgrad-sqrt-sweep";
  doc.seed = p.seed;
  const std::vector<double> shifts = sweep_or(p, {0.2, 0.1, 0.05, 0.025});
  SweepTable table;
  table.name = "sqrt-law-sweep";
  table.columns = {"t", "epi-dl", "graph-dl", "ratio"};
  std::vector<double> ratios;
  for (double t : shifts) {
    if (!(t > 0.0) || t > 1.0)
      throw std::invalid_argument(cat("subgrad-sqrt-sweep: shift must lie in (0, 1], got ", t));
    const GriddedFunction a = GriddedFunction::line(
        -2.0, 2.0, 0.01, [](double x) { return ExtReal(std::abs(x)); }, "abs");
    const GriddedFunction b = GriddedFunction::line(
        -2.0, 2.0, 0.01, [t](double x) { return ExtReal(std::abs(x - t)); }, "abs-shift");
    const double epi = kenmochi_dl(a, b, 1.0).raw();
    const PwlConvex pf({0.0}, {-1.0, 1.0});
    const PwlConvex pg({t}, {-1.0, 1.0});
    const FiniteSet gf = graph_cloud(subgradient_graph(pf, 1.6, 0.05));
    const FiniteSet gg = graph_cloud(subgradient_graph(pg, 1.6, 0.05));
    const double gph = trunc_hausdorff(gf, gg, 1.0).raw();
    const double ratio = gph / std::sqrt(epi);
    table.add_row(cat("t=", t), {t, epi, gph, ratio});
    ratios.push_back(ratio);
  }

  BoundReport law;
  law.check_id = "sqrt-law";
  law.lhs = ExtReal(*std::max_element(ratios.begin(), ratios.end()));
  law.rhs = ExtReal(2.0 * ratios.front());
  law.note("graph distances scale like the square root of epigraph distances; the ratio "
           "peaks at the largest shift");
  law.finalize(p.tol);
  doc.reports.push_back(std::move(law));
  doc.tables.push_back(std::move(table));
  return doc;
}

// ---------------------------------------------------------------------------
// registry
// ---------------------------------------------------------------------------

std::vector<ExperimentInfo> build_registry() {
  std::vector<ExperimentInfo> reg;
  reg.push_back({"case1-conditioning",
                 "flat quartic intersection: tabulated fourth-root conditioning vs linear",
                 false, case1_conditioning});
  reg.push_back({"case1-feasibility",
                 "feasibility approximation, eps sweep with lambda = eps^{-1/2}", true,
                 case1_feasibility});
  reg.push_back({"case2-softening",
                 "constraint softening bound, 1-D and 2-D, balanced error terms", false,
                 case2_softening});
  reg.push_back({"case3-penalty",
                 "exact penalty bound with a lambda sweep on the 1-D instance", true,
                 case3_penalty});
  reg.push_back({"composite", "composite stationarity: shifted outer kink, drifted inner map",
                 false, composite});
  reg.push_back({"dc", "difference-of-convex stationarity under a kink shift", false, dc});
  reg.push_back({"disjunctive", "union-structured feasibility with solution estimates", false,
                 disjunctive});
  reg.push_back({"kkt", "first-order system of an inequality problem, exact and perturbed",
                 false, kkt});
  reg.push_back({"kkt-sweep", "graph distance of first-order systems vs perturbation size",
                 true, kkt_sweep});
  reg.push_back({"paper-counterexamples",
                 "six constructions where naive calculus rules fail or bounds are tight",
                 false, paper_counterexamples});
  reg.push_back({"saa-regularizer", "smoothed kink regularizer against the additive bound",
                 false, saa_regularizer});
  reg.push_back({"saa-supnorm", "sample-average objective against the sup-norm bound", false,
                 saa_supnorm});
  reg.push_back({"subgrad-sqrt-sweep",
                 "subgradient graph distance vs sqrt of epigraph distance", true,
                 subgrad_sqrt_sweep});
  return reg;
}

const std::vector<ExperimentInfo>& registry() {
  static const std::vector<ExperimentInfo> reg = build_registry();
  return reg;
}

}  // namespace

std::span<const ExperimentInfo> experiment_registry() { return registry(); }

const ExperimentInfo* find_experiment(std::string_view id) {
  for (const ExperimentInfo& e : registry())
    if (e.id == id) return &e;
  return nullptr;
}

ReportDocument run_experiment(std::string_view id, const ExperimentParams& params) {
  const ExperimentInfo* info = find_experiment(id);
  if (info == nullptr) {
    std::string known;
    for (const ExperimentInfo& e : registry()) {
      if (!known.empty()) known += ", ";
      known += e.id;
    }
    throw std::invalid_argument(cat("unknown experiment '", id, "'; available: ", known));
  }
  if (params.sweep_values && !info->sweepable)
    throw std::invalid_argument(cat("experiment '", id, "' does not take sweep values"));
  return info->run(params);
}

}  // namespace setdist
