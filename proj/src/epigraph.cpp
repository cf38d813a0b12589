#include "setdist/epigraph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace setdist {
namespace {

void require_same_domain(const ScalarField& f, const ScalarField& g) {
  if (!f.nodes.space().same_geometry(g.nodes.space(), 1e-12))
    throw std::invalid_argument("epigraph distance: domain spaces differ");
}

void require_radius(double rho) {
  if (!(rho >= 0.0) || !std::isfinite(rho))
    throw std::invalid_argument("truncation radius must be finite and >= 0");
}

struct FiberQuery {
  const double* x;
  double base;  // worst value coordinate of the truncated fiber
};

struct FiberTarget {
  const double* x;
  double value;  // g at the node; -inf allowed, +inf excluded
};

std::vector<FiberQuery> collect_queries(const ScalarField& f, double rho) {
  std::vector<FiberQuery> q;
  const ExtReal level(rho);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.values[i] > level) continue;
    const double* x = f.nodes.point_ptr(i);
    if (f.nodes.space().dist_to_centroid(x) > rho) continue;
    q.push_back({x, std::max(f.values[i].raw(), -rho)});
  }
  return q;
}

std::vector<FiberTarget> collect_targets(const ScalarField& g) {
  std::vector<FiberTarget> t;
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (g.values[j].is_pos_inf()) continue;
    t.push_back({g.nodes.point_ptr(j), g.values[j].raw()});
  }
  return t;
}

// dist((x, base), epi g) for one truncated-fiber base point.
double fiber_point_dist(const MetricSpace& space, const FiberQuery& q,
                        const std::vector<FiberTarget>& targets) {
  double best = kNoCutoff;
  for (const FiberTarget& t : targets) {
    const double gap = t.value - q.base;  // may be -inf
    if (gap >= best) continue;
    const double d = space.distance_pruned(q.x, t.x, best);
    if (d >= best) continue;
    const double cand = std::max({d, gap, 0.0});
    if (cand < best) best = cand;
  }
  return best;
}

ExtReal epi_excess_impl(const ScalarField& f, const ScalarField& g, double rho, bool parallel) {
  require_same_domain(f, g);
  require_radius(rho);
  const std::vector<FiberQuery> queries = collect_queries(f, rho);
  if (queries.empty()) return ExtReal(0.0);
  const std::vector<FiberTarget> targets = collect_targets(g);
  if (targets.empty()) return ExtReal::inf();

  const MetricSpace& space = f.nodes.space();
  double worst = 0.0;
  if (parallel) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(queries.size());
#pragma omp parallel for reduction(max : worst) schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const double d = fiber_point_dist(space, queries[static_cast<std::size_t>(i)], targets);
      if (d > worst) worst = d;
    }
  } else {
    for (const FiberQuery& q : queries) {
      const double d = fiber_point_dist(space, q, targets);
      if (d > worst) worst = d;
    }
  }
  return ExtReal(worst);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}
std::string fmt(ExtReal v) { return to_string(v); }

// Largest finite |df/dx| observed between adjacent grid nodes; 0 when no
// adjacent finite pair exists. Used only to size discretization slack.
double grid_lipschitz_estimate(const GriddedFunction& f) {
  const GridGeom& g = f.geom();
  const std::size_t d = g.dim();
  std::vector<std::size_t> idx(d);
  double worst = 0.0;
  for (std::size_t flat = 0; flat < g.num_nodes(); ++flat) {
    std::size_t rem = flat;
    for (std::size_t k = d; k-- > 0;) {
      idx[k] = rem % g.count[k];
      rem /= g.count[k];
    }
    if (f.value(flat).is_finite()) {
      // stride of axis k in row-major order
      std::size_t stride = 1;
      for (std::size_t k = d; k-- > 0;) {
        if (idx[k] + 1 < g.count[k]) {
          const ExtReal nb = f.value(flat + stride);
          if (nb.is_finite())
            worst = std::max(worst, std::abs(nb.raw() - f.value(flat).raw()) / g.step[k]);
        }
        stride *= g.count[k];
      }
    }
  }
  return worst;
}

}  // namespace

FiniteSet epi_cloud(const ScalarField& f, double rho, double vstep) {
  require_radius(rho);
  if (!(vstep > 0.0)) throw std::invalid_argument("epi_cloud: vstep must be > 0");
  MetricSpace prod = MetricSpace::product(f.nodes.space(), MetricSpace::line());
  FiniteSet cloud(std::move(prod), f.name.empty() ? "epi" : "epi " + f.name);
  const std::size_t d = f.nodes.dim();
  std::vector<double> pt(d + 1);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.values[i].is_pos_inf()) continue;
    std::span<const double> x = f.nodes.point(i);
    std::copy(x.begin(), x.end(), pt.begin());
    const double base = std::max(f.values[i].raw(), -rho - vstep);
    pt[d] = base;
    cloud.push_back(pt);
    long long k = static_cast<long long>(std::floor(base / vstep + 1e-9)) + 1;
    const long long kmax = static_cast<long long>(std::floor(rho / vstep + 1e-9));
    for (; k <= kmax; ++k) {
      pt[d] = static_cast<double>(k) * vstep;
      cloud.push_back(pt);
    }
  }
  return cloud;
}

FiniteSet epi_cloud(const GriddedFunction& f, double rho, double vstep) {
  return epi_cloud(f.field(), rho, vstep);
}

ExtReal epi_excess(const ScalarField& f, const ScalarField& g, double rho) {
  return epi_excess_impl(f, g, rho, true);
}
ExtReal epi_excess_serial(const ScalarField& f, const ScalarField& g, double rho) {
  return epi_excess_impl(f, g, rho, false);
}

ExtReal kenmochi_dl(const ScalarField& f, const ScalarField& g, double rho) {
  return ext_max(epi_excess(f, g, rho), epi_excess(g, f, rho));
}
ExtReal kenmochi_dl(const GriddedFunction& f, const GriddedFunction& g, double rho) {
  return kenmochi_dl(f.field(), g.field(), rho);
}
ExtReal kenmochi_dl_serial(const ScalarField& f, const ScalarField& g, double rho) {
  return ext_max(epi_excess_serial(f, g, rho), epi_excess_serial(g, f, rho));
}

FiniteSet level_ball_cloud(const GriddedFunction& f, ExtReal level, double rho,
                           std::string label) {
  FiniteSet out(f.space(), std::move(label));
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.value(i) > level) continue;
    if (f.space().dist_to_centroid(f.node(i)) > rho) continue;
    out.push_back(f.node(i));
  }
  return out;
}

FiniteSet union_level_cloud(const GriddedFunction& f, const GriddedFunction& g, double rho) {
  if (!f.same_grid(g)) throw std::invalid_argument("union_level_cloud: grids differ");
  FiniteSet out(f.space(), "A_rho");
  const ExtReal level(rho);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.value(i) > level && g.value(i) > level) continue;
    if (f.space().dist_to_centroid(f.node(i)) > rho) continue;
    out.push_back(f.node(i));
  }
  return out;
}

ExtReal sup_abs_in_ball(const GriddedFunction& f, double rho) {
  ExtReal worst(0.0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.space().dist_to_centroid(f.node(i)) > rho) continue;
    const ExtReal v = f.value(i);
    if (!v.is_finite()) return ExtReal::inf();
    worst = ext_max(worst, ExtReal(std::abs(v.raw())));
  }
  return worst;
}

GriddedFunction inf_projection(std::span<const GriddedFunction> fs, std::string name) {
  if (fs.empty()) throw std::invalid_argument("inf_projection: empty family");
  for (std::size_t a = 1; a < fs.size(); ++a)
    if (!fs[0].same_grid(fs[a]))
      throw std::invalid_argument("inf_projection: family members on different grids");
  GriddedFunction out(fs[0].space(), fs[0].geom(),
                      name.empty() ? "min(" + fs[0].name() + ",...)" : std::move(name));
  for (std::size_t i = 0; i < out.size(); ++i) {
    ExtReal v = fs[0].value(i);
    for (std::size_t a = 1; a < fs.size(); ++a) v = ext_min(v, fs[a].value(i));
    out.set_value(i, v);
  }
  return out;
}

BoundReport check_solution_estimates(const GriddedFunction& f, const GriddedFunction& g,
                                     double eps, double delta, double rho, double tol,
                                     std::optional<double> ref_inf_f,
                                     std::optional<double> ref_inf_g) {
  require_radius(rho);
  BoundReport r;
  r.check_id = "solution-estimates";
  const ExtReal dl = kenmochi_dl(f, g, rho);
  r.note("dl_rho(epi f, epi g) = " + fmt(dl));

  const double probe_eps = std::max(tol, 1e-12);
  const double eps_f[] = {probe_eps, delta};
  const double eps_g[] = {probe_eps, eps};
  SolutionSummary sf = solution_summary(f, eps_f, {}, ref_inf_f);
  SolutionSummary sg = solution_summary(g, eps_g, {}, ref_inf_g);
  const ExtReal inf_f = ref_inf_f ? ExtReal(*ref_inf_f) : sf.infimum;
  const ExtReal inf_g = ref_inf_g ? ExtReal(*ref_inf_g) : sg.infimum;
  r.note("inf f = " + fmt(inf_f) + ", inf g = " + fmt(inf_g));

  auto in_range = [&](ExtReal v) { return v >= ExtReal(-rho) && v < ExtReal(rho - eps); };
  auto range_slack = [&](ExtReal v) {
    if (!v.is_finite()) return -kInf;
    return std::min(v.raw() + rho, rho - eps - v.raw());
  };
  r.add_condition("inf_f_in_[-rho,rho-eps)", in_range(inf_f), range_slack(inf_f));
  r.add_condition("inf_g_in_[-rho,rho-eps)", in_range(inf_g), range_slack(inf_g));

  // Near-argmin sets must meet B(rho); on attained problems the probe-level
  // argmin stands in for every small positive tolerance.
  const FiniteSet near_f = ball_intersect(sf.argmin_eps[0].second, rho);
  const FiniteSet near_g = ball_intersect(sg.argmin_eps[0].second, rho);
  r.add_condition("near_argmin_f_meets_ball", !near_f.empty(),
                  static_cast<double>(near_f.size()));
  r.add_condition("near_argmin_g_meets_ball", !near_g.empty(),
                  static_cast<double>(near_g.size()));

  const double two_dl = dl.is_finite() ? 2.0 * dl.raw() : kInf;
  r.require_gt("delta_gt_eps_plus_2dl", delta, eps + two_dl);

  const ExtReal inf_gap = ext_abs_diff(inf_f, inf_g);
  const FiniteSet eps_argmin_g = ball_intersect(sg.argmin_eps[1].second, rho);
  const FiniteSet& delta_argmin_f = sf.argmin_eps[1].second;
  const ExtReal exs_part = excess(eps_argmin_g, delta_argmin_f);
  r.note("|inf f - inf g| = " + fmt(inf_gap));
  r.note("exs(eps-argmin g /\\ B(rho); delta-argmin f) = " + fmt(exs_part));

  r.lhs = ext_max(inf_gap, exs_part);
  r.rhs = dl;
  r.finalize(tol);
  return r;
}

BoundReport check_level_set_estimate(const GriddedFunction& f, const GriddedFunction& g,
                                     double delta, double eps, double rho, double tol) {
  require_radius(rho);
  BoundReport r;
  r.check_id = "level-set-estimate";
  const ExtReal one_sided = epi_excess(g.field(), f.field(), rho);
  r.note("exs(epi g /\\ B(rho); epi f) = " + fmt(one_sided));
  r.note("dl_rho(epi f, epi g) = " + fmt(kenmochi_dl(f, g, rho)));

  r.require_ge("delta_ge_-rho", delta, -rho);
  r.require_ge("rho_ge_delta", rho, delta);
  r.require_ge("rho_ge_eps", rho, eps);
  const double excess_value = one_sided.is_finite() ? one_sided.raw() : kInf;
  r.require_gt("eps_gt_delta_plus_excess", eps, delta + excess_value);

  const FiniteSet lev_g = level_ball_cloud(g, ExtReal(delta), rho, "lev_delta g");
  FiniteSet lev_f(f.space(), "lev_eps f");
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f.value(i) <= ExtReal(eps)) lev_f.push_back(f.node(i));

  r.lhs = excess(lev_g, lev_f);
  r.rhs = one_sided;
  r.finalize(tol);
  return r;
}

BoundReport check_supnorm_bound(const GriddedFunction& f, const GriddedFunction& g, double rho,
                                double tol, const FiniteSet* probe,
                                const HolderModulus* modulus) {
  require_radius(rho);
  if (!f.same_grid(g)) throw std::invalid_argument("check_supnorm_bound: grids differ");
  BoundReport r;
  r.check_id = "supnorm-bound";
  const ExtReal dl = kenmochi_dl(f, g, rho);

  ExtReal sup_diff(0.0);
  const ExtReal level(rho);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.value(i) > level && g.value(i) > level) continue;
    if (f.space().dist_to_centroid(f.node(i)) > rho) continue;
    sup_diff = ext_max(sup_diff, ext_abs_diff(f.value(i), g.value(i)));
  }
  r.note("sup_{A_rho} |f - g| = " + fmt(sup_diff));

  r.lhs = dl;
  if (probe == nullptr || modulus == nullptr) {
    r.rhs = sup_diff;
    r.finalize(tol);
    return r;
  }

  const FiniteSet A = union_level_cloud(f, g, rho);
  const ExtReal exs_ac = excess(A, *probe);
  r.add_condition("exs_A_to_probe_finite", exs_ac.is_finite(),
                  exs_ac.is_finite() ? exs_ac.raw() : -kInf);
  const double rho_hat = rho + (exs_ac.is_finite() ? exs_ac.raw() : 0.0) + 1e-6;
  r.note("rho_hat = " + fmt(rho_hat) + " (auto: rho + exs(A_rho; C))");

  auto bad_f = validate_holder(f.field(), *modulus, rho_hat, tol);
  auto bad_g = validate_holder(g.field(), *modulus, rho_hat, tol);
  r.add_condition("holder_modulus_valid_f", !bad_f.has_value(), 0.0);
  if (bad_f) r.note("modulus violated on f: " + *bad_f);
  r.add_condition("holder_modulus_valid_g", !bad_g.has_value(), 0.0);
  if (bad_g) r.note("modulus violated on g: " + *bad_g);

  ExtReal sup_c(0.0);
  for (std::size_t i = 0; i < probe->size(); ++i) {
    const std::size_t j = f.geom().nearest(probe->point(i));
    sup_c = ext_max(sup_c, ext_abs_diff(f.value(j), g.value(j)));
  }
  r.note("sup_C |f - g| = " + fmt(sup_c) + " (probe values read at nearest grid node)");

  ExtReal refined = ExtReal::inf();
  if (exs_ac.is_finite() && sup_c.is_finite()) {
    const double kappa = modulus->kappa(rho_hat);
    refined = ExtReal(std::max(
        exs_ac.raw(), kappa * std::pow(exs_ac.raw(), modulus->exponent) + sup_c.raw()));
  }
  r.note("plain bound sup_{A_rho}|f-g| = " + fmt(sup_diff) + ", refined = " + fmt(refined));
  r.rhs = refined;
  r.finalize(tol);
  return r;
}

BoundReport check_holder_sum(const GriddedFunction& f1, const GriddedFunction& f2,
                             const GriddedFunction& g1, const GriddedFunction& g2,
                             const HolderModulus& modulus, double rho, double tol,
                             std::optional<double> rho_bar, std::optional<double> rho_hat) {
  require_radius(rho);
  if (!f1.same_grid(f2) || !f1.same_grid(g1) || !f1.same_grid(g2))
    throw std::invalid_argument("check_holder_sum: grids differ");
  BoundReport r;
  r.check_id = "holder-sum";

  const ExtReal sup_f1 = sup_abs_in_ball(f1, rho);
  const ExtReal sup_g1 = sup_abs_in_ball(g1, rho);
  const ExtReal anchor = ext_max(sup_f1, sup_g1);
  const double rho_bar_v =
      rho_bar ? *rho_bar : (anchor.is_finite() ? rho + anchor.raw() + 1e-6 : rho);
  r.add_condition("rho_bar_ge_rho_plus_sup|f1|,|g1|", anchor.is_finite() &&
                      rho_bar_v >= rho + anchor.raw(),
                  anchor.is_finite() ? rho_bar_v - rho - anchor.raw() : -kInf);
  r.note("rho_bar = " + fmt(rho_bar_v));

  const ExtReal eta = kenmochi_dl(f2, g2, rho_bar_v);
  r.note("eta = dl_rhobar(epi f2, epi g2) = " + fmt(eta));
  r.add_condition("eta_finite", eta.is_finite(), eta.is_finite() ? eta.raw() : -kInf);

  const double eta_v = eta.is_finite() ? eta.raw() : 0.0;
  const double rho_hat_v = rho_hat ? *rho_hat : rho + eta_v + 1e-6;
  r.require_gt("rho_hat_gt_rho_plus_eta", rho_hat_v, rho + eta_v - 1e-12);
  r.note("rho_hat = " + fmt(rho_hat_v));

  auto bad_f = validate_holder(f1.field(), modulus, rho_hat_v, tol);
  auto bad_g = validate_holder(g1.field(), modulus, rho_hat_v, tol);
  r.add_condition("holder_modulus_valid_f1", !bad_f.has_value(), 0.0);
  if (bad_f) r.note("modulus violated on f1: " + *bad_f);
  r.add_condition("holder_modulus_valid_g1", !bad_g.has_value(), 0.0);
  if (bad_g) r.note("modulus violated on g1: " + *bad_g);

  const GriddedFunction sum_f = f1.plus(f2, "f1+f2");
  const GriddedFunction sum_g = g1.plus(g2, "g1+g2");

  ExtReal sup_diff(0.0);
  const ExtReal level(rho);
  for (std::size_t i = 0; i < sum_f.size(); ++i) {
    if (sum_f.value(i) > level && sum_g.value(i) > level) continue;
    if (sum_f.space().dist_to_centroid(sum_f.node(i)) > rho) continue;
    sup_diff = ext_max(sup_diff, ext_abs_diff(f1.value(i), g1.value(i)));
  }
  r.note("sup_{A_rho} |f1 - g1| = " + fmt(sup_diff));

  r.lhs = kenmochi_dl(sum_f, sum_g, rho);
  if (eta.is_finite() && sup_diff.is_finite()) {
    const double kappa = modulus.kappa(rho_hat_v);
    r.rhs = ExtReal(sup_diff.raw() + eta_v + kappa * std::pow(eta_v, modulus.exponent));
  } else {
    r.rhs = ExtReal::inf();
  }
  r.finalize(tol);
  return r;
}

BoundReport check_comp_inner(const InnerCompositionData& data, double rho, double tol,
                             std::optional<double> rho_star, std::optional<double> rho_bar,
                             std::optional<double> rho_hat) {
  require_radius(rho);
  if (data.f == nullptr || data.g == nullptr || data.domain == nullptr ||
      data.probes == nullptr || !data.F || !data.G)
    throw std::invalid_argument("check_comp_inner: incomplete data");
  const GriddedFunction& f = *data.f;
  const GriddedFunction& g = *data.g;
  if (!f.same_grid(g)) throw std::invalid_argument("check_comp_inner: f, g grids differ");
  BoundReport r;
  r.check_id = "comp-inner";

  // Witness requirement: some (y, alpha) in epi f and (ybar, alphabar) in
  // epi g with small |alpha|, |alphabar| and preimages near the center.
  auto witness = [&](const GriddedFunction& h, const LipschitzSetMap& inv) {
    double best = kInf;
    for (std::size_t i = 0; i < h.size(); ++i) {
      const ExtReal v = h.value(i);
      if (v.is_pos_inf()) continue;
      const double alpha = std::max(v.is_finite() ? v.raw() : 0.0, 0.0);
      if (alpha >= best) continue;
      const FiniteSet pre = inv.evaluate(h.node(i));
      if (pre.empty()) continue;
      const ExtReal d = point_dist(data.domain->centroid(), pre);
      if (!d.is_finite()) continue;
      best = std::min(best, std::max(alpha, d.raw()));
    }
    return best;
  };
  const double requirement = std::max(witness(f, data.F_inv), witness(g, data.G_inv));
  const double rho_star_v = rho_star ? *rho_star : 2.0 * rho + requirement + 1e-6;
  r.require_gt("rho_star_gt_2rho_plus_witness", rho_star_v, 2.0 * rho + requirement - 1e-12);
  r.note("rho_star = " + fmt(rho_star_v) + ", witness requirement = " + fmt(requirement));

  // Domain grid must cover B(rho_star) for the forward-image sup below.
  const GridGeom& dg = data.domain_geom;
  double coverage = kInf;
  for (std::size_t k = 0; k < dg.dim(); ++k) {
    const double c = data.domain->centroid()[k];
    const double hi = dg.lo[k] + dg.step[k] * static_cast<double>(dg.count[k] - 1);
    coverage = std::min({coverage, c - dg.lo[k], hi - c});
  }
  r.add_condition("domain_grid_covers_rho_star", coverage >= rho_star_v - dg.max_step(),
                  coverage - rho_star_v);

  // Forward-image reach drives rho_bar.
  const MetricSpace& yspace = f.space();
  GriddedFunction phi = GriddedFunction::from_fn(
      *data.domain, dg,
      [&](std::span<const double> x) {
        const std::vector<double> y = data.F(x);
        return f.eval_nearest(y);
      },
      "f o F");
  GriddedFunction psi = GriddedFunction::from_fn(
      *data.domain, dg,
      [&](std::span<const double> x) {
        const std::vector<double> y = data.G(x);
        return g.eval_nearest(y);
      },
      "g o G");
  double reach = rho_star_v;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    if (data.domain->dist_to_centroid(phi.node(i)) > rho_star_v) continue;
    const std::vector<double> yf = data.F(phi.node(i));
    const std::vector<double> yg = data.G(phi.node(i));
    reach = std::max({reach, yspace.dist_to_centroid(yf.data()),
                      yspace.dist_to_centroid(yg.data())});
  }
  const double rho_bar_v = rho_bar ? *rho_bar : reach + 1e-6;
  r.require_ge("rho_bar_ge_reach", rho_bar_v, reach - 1e-12);
  r.note("rho_bar = " + fmt(rho_bar_v) + ", forward reach = " + fmt(reach));

  const ExtReal dl_fg = kenmochi_dl(f, g, rho_bar_v);
  r.add_condition("dl_epi_f_g_finite", dl_fg.is_finite(), dl_fg.is_finite() ? dl_fg.raw() : -kInf);
  const double dl_v = dl_fg.is_finite() ? dl_fg.raw() : 0.0;
  const double rho_hat_v = rho_hat ? *rho_hat : rho_bar_v + dl_v + 1e-6;
  r.require_gt("rho_hat_gt_rho_bar_plus_dl", rho_hat_v, rho_bar_v + dl_v - 1e-12);
  r.note("dl_rhobar(epi f, epi g) = " + fmt(dl_fg) + ", rho_hat = " + fmt(rho_hat_v));

  // Validate the declared inverse moduli on probe pairs.
  auto bad_F = validate_set_map_modulus(data.F_inv, *data.probes, rho_bar_v, tol);
  auto bad_G = validate_set_map_modulus(data.G_inv, *data.probes, rho_bar_v, tol);
  r.add_condition("inverse_modulus_valid_F", !bad_F.has_value(), 0.0);
  if (bad_F) r.note("F inverse modulus violated: " + *bad_F);
  r.add_condition("inverse_modulus_valid_G", !bad_G.has_value(), 0.0);
  if (bad_G) r.note("G inverse modulus violated: " + *bad_G);

  // sup over probes in B(rho_bar) of dl_{rho_star}(F^{-1}(y), G^{-1}(y)).
  ExtReal probe_sup(0.0);
  std::size_t used = 0;
  for (std::size_t i = 0; i < data.probes->size(); ++i) {
    std::span<const double> y = data.probes->point(i);
    if (yspace.dist_to_centroid(y) > rho_bar_v) continue;
    ++used;
    probe_sup = ext_max(probe_sup,
                        trunc_hausdorff(data.F_inv.evaluate(y), data.G_inv.evaluate(y),
                                        rho_star_v));
  }
  r.add_condition("probes_in_ball_nonempty", used > 0, static_cast<double>(used));
  r.note("sup_y dl_rhostar(F^{-1}(y), G^{-1}(y)) = " + fmt(probe_sup) + " over " +
         std::to_string(used) + " probes");

  const double kappa =
      std::max(data.F_inv.modulus(rho_hat_v), data.G_inv.modulus(rho_hat_v));
  r.lhs = kenmochi_dl(phi, psi, rho);
  r.rhs = probe_sup + ExtReal(std::max(1.0, kappa) * dl_v);

  // Nearest-node composition reads f within h/2 of the true image point.
  const double slack =
      0.5 * f.geom().max_step() * (grid_lipschitz_estimate(f) + grid_lipschitz_estimate(g));
  r.note("composition discretization slack = " + fmt(slack));
  r.finalize(tol + slack);
  return r;
}

BoundReport check_comp_outer(const GriddedFunction& f, const HolderModulus& modulus,
                             const PointMap& F, const PointMap& G, const MetricSpace& domain,
                             const GridGeom& domain_geom, double rho, double tol,
                             std::optional<double> rho_bar, std::optional<double> rho_hat) {
  require_radius(rho);
  if (!F || !G) throw std::invalid_argument("check_comp_outer: missing maps");
  BoundReport r;
  r.check_id = "comp-outer";
  r.add_condition("modulus_exponent_is_one", modulus.exponent == 1.0, modulus.exponent - 1.0);

  GriddedFunction phi = GriddedFunction::from_fn(
      domain, domain_geom,
      [&](std::span<const double> x) { return f.eval_nearest(F(x)); }, "f o F");
  GriddedFunction psi = GriddedFunction::from_fn(
      domain, domain_geom,
      [&](std::span<const double> x) { return f.eval_nearest(G(x)); }, "f o G");

  // Graph clouds live in the product of the domain with f's domain space.
  const MetricSpace& yspace = f.space();
  MetricSpace prod = MetricSpace::product(domain, yspace);
  FiniteSet gph_f(prod, "gph F"), gph_g(prod, "gph G");
  const std::size_t dx = domain.dim();
  std::vector<double> pt(prod.dim());
  double reach = rho;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    std::span<const double> x = phi.node(i);
    const std::vector<double> yf = F(x);
    const std::vector<double> yg = G(x);
    std::copy(x.begin(), x.end(), pt.begin());
    std::copy(yf.begin(), yf.end(), pt.begin() + static_cast<std::ptrdiff_t>(dx));
    gph_f.push_back(pt);
    std::copy(yg.begin(), yg.end(), pt.begin() + static_cast<std::ptrdiff_t>(dx));
    gph_g.push_back(pt);
    if (domain.dist_to_centroid(x) <= rho)
      reach = std::max({reach, yspace.dist_to_centroid(yf.data()),
                        yspace.dist_to_centroid(yg.data())});
  }
  const double rho_bar_v = rho_bar ? *rho_bar : reach + 1e-6;
  r.require_ge("rho_bar_ge_forward_reach", rho_bar_v, reach - 1e-12);
  r.note("rho_bar = " + fmt(rho_bar_v));

  const ExtReal dl_graphs = trunc_hausdorff(gph_f, gph_g, rho_bar_v);
  r.note("dl_rhobar(gph F, gph G) = " + fmt(dl_graphs));
  r.add_condition("dl_graphs_finite", dl_graphs.is_finite(),
                  dl_graphs.is_finite() ? dl_graphs.raw() : -kInf);
  const double dl_v = dl_graphs.is_finite() ? dl_graphs.raw() : 0.0;
  const double rho_hat_v = rho_hat ? *rho_hat : rho_bar_v + dl_v + 1e-6;
  r.require_gt("rho_hat_gt_rho_bar_plus_dl", rho_hat_v, rho_bar_v + dl_v - 1e-12);

  auto bad = validate_holder(f.field(), modulus, rho_hat_v, tol);
  r.add_condition("lipschitz_modulus_valid", !bad.has_value(), 0.0);
  if (bad) r.note("modulus violated on f: " + *bad);

  const double kappa = modulus.kappa(rho_hat_v);
  r.lhs = kenmochi_dl(phi, psi, rho);
  r.rhs = ExtReal(std::max(1.0, kappa) * dl_v);

  const double slack = kappa * f.geom().max_step();
  r.note("composition discretization slack = " + fmt(slack));
  r.finalize(tol + slack);
  return r;
}

BoundReport check_inf_projection(std::span<const GriddedFunction> fs,
                                 std::span<const GriddedFunction> gs, double rho, double tol) {
  require_radius(rho);
  if (fs.size() != gs.size() || fs.empty())
    throw std::invalid_argument("check_inf_projection: family sizes differ or empty");
  BoundReport r;
  r.check_id = "inf-projection";
  const GriddedFunction min_f = inf_projection(fs, "min f");
  const GriddedFunction min_g = inf_projection(gs, "min g");
  ExtReal worst(0.0);
  for (std::size_t a = 0; a < fs.size(); ++a)
    worst = ext_max(worst, kenmochi_dl(fs[a], gs[a], rho));
  r.note("family size = " + std::to_string(fs.size()));
  r.lhs = kenmochi_dl(min_f, min_g, rho);
  r.rhs = worst;
  r.finalize(tol);
  return r;
}

GriddedFunction epi_composition(const GriddedFunction& f, const PointMap& F,
                                const MetricSpace& target, const GridGeom& target_geom,
                                std::string name) {
  if (!F) throw std::invalid_argument("epi_composition: missing map");
  GriddedFunction out(target, target_geom,
                      name.empty() ? "push " + f.name() : std::move(name));
  for (std::size_t i = 0; i < f.size(); ++i) {
    const ExtReal v = f.value(i);
    if (v.is_pos_inf()) continue;
    const std::vector<double> y = F(f.node(i));
    const std::size_t j = target_geom.nearest(y);
    out.set_value(j, ext_min(out.value(j), v));
  }
  return out;
}

BoundReport check_epi_composition(const GriddedFunction& f, const GriddedFunction& g,
                                  const PointMap& F, const PointMap& G,
                                  const std::function<double(double)>& kappa,
                                  const MetricSpace& target, const GridGeom& target_geom,
                                  double rho, double tol, std::optional<double> rho_bar,
                                  std::optional<double> rho_hat) {
  require_radius(rho);
  if (!f.same_grid(g)) throw std::invalid_argument("check_epi_composition: grids differ");
  BoundReport r;
  r.check_id = "epi-composition";

  const GriddedFunction Ff = epi_composition(f, F, target, target_geom, "Ff");
  const GriddedFunction Gg = epi_composition(g, G, target, target_geom, "Gg");

  // rho_bar must cover B(rho)-relevant preimages; default generously from
  // the data: every node carrying a finite value.
  double reach = rho;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (!f.value(i).is_pos_inf() || !g.value(i).is_pos_inf())
      reach = std::max(reach, f.space().dist_to_centroid(f.node(i)));
  const double rho_bar_v = rho_bar ? *rho_bar : reach + 1e-6;
  r.require_ge("rho_bar_ge_dom_reach", rho_bar_v, reach - 1e-12);
  r.note("rho_bar = " + fmt(rho_bar_v));

  const ExtReal dl_fg = kenmochi_dl(f, g, rho_bar_v);
  r.add_condition("dl_epi_f_g_finite", dl_fg.is_finite(),
                  dl_fg.is_finite() ? dl_fg.raw() : -kInf);
  const double dl_v = dl_fg.is_finite() ? dl_fg.raw() : 0.0;
  const double rho_hat_v = rho_hat ? *rho_hat : rho_bar_v + dl_v + 1e-6;
  r.require_gt("rho_hat_gt_rho_bar_plus_dl", rho_hat_v, rho_bar_v + dl_v - 1e-12);
  r.note("dl_rhobar(epi f, epi g) = " + fmt(dl_fg));

  // Lipschitz declaration for both maps, validated on domain nodes in B(rho_hat).
  FiniteSet samples(f.space(), "modulus samples");
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f.space().dist_to_centroid(f.node(i)) <= rho_hat_v) samples.push_back(f.node(i));
  auto bad_F = validate_point_map_modulus(F, target, kappa, samples, rho_hat_v, tol);
  auto bad_G = validate_point_map_modulus(G, target, kappa, samples, rho_hat_v, tol);
  r.add_condition("map_modulus_valid_F", !bad_F.has_value(), 0.0);
  if (bad_F) r.note("F modulus violated: " + *bad_F);
  r.add_condition("map_modulus_valid_G", !bad_G.has_value(), 0.0);
  if (bad_G) r.note("G modulus violated: " + *bad_G);

  // sup over domain nodes in B(rho_bar) of d(F(x), G(x)).
  double sup_d = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.space().dist_to_centroid(f.node(i)) > rho_bar_v) continue;
    const std::vector<double> yf = F(f.node(i));
    const std::vector<double> yg = G(f.node(i));
    sup_d = std::max(sup_d, target.distance(yf.data(), yg.data()));
  }
  r.note("sup_{B(rho_bar)} d(F(x), G(x)) = " + fmt(sup_d));

  r.lhs = kenmochi_dl(Ff, Gg, rho);
  r.rhs = ExtReal(sup_d + std::max(1.0, kappa(rho_hat_v)) * dl_v);

  // Push-forward buckets shift image points by at most half a target step.
  const double slack = target_geom.max_step();
  r.note("bucket slack = " + fmt(slack));
  r.finalize(tol + slack);
  return r;
}

}  // namespace setdist
