#include "setdist/set_ops.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "setdist/epigraph.hpp"
#include "setdist/hull.hpp"

namespace setdist {
namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}
std::string fmt(ExtReal v) { return to_string(v); }

void require_same_spaces(std::span<const FiniteSet> Cs, std::span<const FiniteSet> Ds,
                         const char* who) {
  if (Cs.size() != Ds.size() || Cs.empty())
    throw std::invalid_argument(std::string(who) + ": index lists must match and be nonempty");
  for (std::size_t i = 0; i < Cs.size(); ++i)
    if (!Cs[i].space().same_geometry(Ds[i].space(), 1e-12))
      throw std::invalid_argument(std::string(who) + ": space mismatch at index " +
                                  std::to_string(i));
}

double min_dist_to_centroid(const FiniteSet& C) {
  double best = kNoCutoff;
  for (std::size_t i = 0; i < C.size(); ++i)
    best = std::min(best, C.space().dist_to_centroid(C.point_ptr(i)));
  return best;  // +inf for empty C
}

double max_dist_to_centroid(const FiniteSet& C) {
  double worst = 0.0;
  for (std::size_t i = 0; i < C.size(); ++i)
    worst = std::max(worst, C.space().dist_to_centroid(C.point_ptr(i)));
  return worst;  // 0 for empty C
}

void require_vector_space(const FiniteSet& C, const char* who) {
  for (double c : C.space().centroid())
    if (c != 0.0)
      throw std::invalid_argument(std::string(who) + ": linear operations need centroid 0");
}

// Turns an already-finalized one-sided report into an equality assertion.
void assert_equality(BoundReport& r, double tol) {
  if (!r.applicable || !r.passed) return;
  const ExtReal gap = ext_abs_diff(r.lhs, r.rhs);
  if (gap > ExtReal(tol)) {
    r.passed = false;
    r.note("equality assertion violated: |lhs - rhs| = " + fmt(gap));
  }
}

}  // namespace

FiniteSet product_set(std::span<const FiniteSet> factors) {
  if (factors.empty()) throw std::invalid_argument("product_set: empty factor list");
  MetricSpace space = factors[0].space();
  std::string label = factors[0].label();
  for (std::size_t i = 1; i < factors.size(); ++i) {
    space = MetricSpace::product(space, factors[i].space());
    label += " x " + factors[i].label();
  }
  FiniteSet out(space, label);
  std::size_t total = 1;
  for (const FiniteSet& f : factors) total *= f.size();
  if (total == 0) return out;
  out.reserve(total);
  std::vector<std::size_t> idx(factors.size(), 0);
  std::vector<double> pt(space.dim());
  for (;;) {
    std::size_t off = 0;
    for (std::size_t k = 0; k < factors.size(); ++k) {
      std::span<const double> p = factors[k].point(idx[k]);
      std::copy(p.begin(), p.end(), pt.begin() + static_cast<std::ptrdiff_t>(off));
      off += factors[k].dim();
    }
    out.push_back(pt);
    std::size_t k = factors.size();
    while (k-- > 0) {
      if (++idx[k] < factors[k].size()) break;
      idx[k] = 0;
      if (k == 0) return out;
    }
  }
}

FiniteSet indicator_epigraph(const FiniteSet& C, double rho, double vstep) {
  if (!(vstep > 0.0)) throw std::invalid_argument("indicator_epigraph: vstep must be > 0");
  if (!(rho >= 0.0)) throw std::invalid_argument("indicator_epigraph: rho must be >= 0");
  MetricSpace prod = MetricSpace::product(C.space(), MetricSpace::line());
  FiniteSet out(prod, "epi i_" + C.label());
  const std::size_t d = C.dim();
  std::vector<double> pt(d + 1);
  const long long kmax = static_cast<long long>(std::floor(rho / vstep + 1e-9));
  for (std::size_t i = 0; i < C.size(); ++i) {
    std::span<const double> x = C.point(i);
    std::copy(x.begin(), x.end(), pt.begin());
    for (long long k = 0; k <= kmax; ++k) {
      pt[d] = static_cast<double>(k) * vstep;
      out.push_back(pt);
    }
  }
  return out;
}

FiniteSet union_set(std::span<const FiniteSet> parts) {
  if (parts.empty()) throw std::invalid_argument("union_set: empty list");
  FiniteSet out(parts[0].space(), "union");
  for (const FiniteSet& p : parts) out.append(p);
  return out;
}

FiniteSet intersect_clouds(std::span<const FiniteSet> Cs, double tol) {
  if (Cs.empty()) throw std::invalid_argument("intersect_clouds: empty list");
  FiniteSet out(Cs[0].space(), "intersection");
  for (std::size_t i = 0; i < Cs[0].size(); ++i) {
    std::span<const double> x = Cs[0].point(i);
    bool in_all = true;
    for (std::size_t a = 1; a < Cs.size() && in_all; ++a)
      in_all = point_dist(x, Cs[a]) <= ExtReal(tol);
    if (in_all) out.push_back(x);
  }
  return out;
}

FiniteSet intersection_outer(std::span<const FiniteSet> Cs, std::span<const FiniteSet> Ds) {
  require_same_spaces(Cs, Ds, "intersection_outer");
  std::vector<ExtReal> bounds(Cs.size());
  for (std::size_t a = 0; a < Cs.size(); ++a) bounds[a] = excess(Cs[a], Ds[a]);

  FiniteSet candidates(Cs[0].space(), "candidates");
  for (const FiniteSet& c : Cs) candidates.append(c);
  for (const FiniteSet& d : Ds) candidates.append(d);

  FiniteSet out(Cs[0].space(), "outer intersection");
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    std::span<const double> x = candidates.point(i);
    bool ok = true;
    for (std::size_t a = 0; a < Ds.size() && ok; ++a)
      ok = point_dist(x, Ds[a]) <= bounds[a] + ExtReal(1e-12);
    if (ok) out.push_back(x);
  }
  return out;
}

FiniteSet minkowski_sum(std::span<const FiniteSet> parts) {
  if (parts.empty()) throw std::invalid_argument("minkowski_sum: empty list");
  for (const FiniteSet& p : parts) {
    require_vector_space(p, "minkowski_sum");
    if (!p.space().same_geometry(parts[0].space(), 1e-12))
      throw std::invalid_argument("minkowski_sum: space mismatch");
  }
  FiniteSet out(parts[0].space(), "sum");
  std::size_t total = 1;
  for (const FiniteSet& p : parts) total *= p.size();
  if (total == 0) return out;
  out.reserve(total);
  const std::size_t d = parts[0].dim();
  std::vector<std::size_t> idx(parts.size(), 0);
  std::vector<double> pt(d);
  for (;;) {
    std::fill(pt.begin(), pt.end(), 0.0);
    for (std::size_t k = 0; k < parts.size(); ++k) {
      std::span<const double> p = parts[k].point(idx[k]);
      for (std::size_t c = 0; c < d; ++c) pt[c] += p[c];
    }
    out.push_back(pt);
    std::size_t k = parts.size();
    while (k-- > 0) {
      if (++idx[k] < parts[k].size()) break;
      idx[k] = 0;
      if (k == 0) return out;
    }
  }
}

FiniteSet scale_set(const FiniteSet& C, double lambda) {
  require_vector_space(C, "scale_set");
  FiniteSet out(C.space(), fmt(lambda) + " * " + C.label());
  std::vector<double> pt(C.dim());
  for (std::size_t i = 0; i < C.size(); ++i) {
    std::span<const double> x = C.point(i);
    for (std::size_t c = 0; c < C.dim(); ++c) pt[c] = lambda * x[c];
    out.push_back(pt);
  }
  return out;
}

FiniteSet image_set(const LipschitzSetMap& S, const FiniteSet& C) {
  if (!S.evaluate) throw std::invalid_argument("image_set: missing evaluator");
  FiniteSet out;
  bool first = true;
  for (std::size_t i = 0; i < C.size(); ++i) {
    FiniteSet v = S.evaluate(C.point(i));
    if (v.empty())
      throw std::invalid_argument("image_set: empty value on sampled domain");
    if (first) {
      out = FiniteSet(v.space(), "S(" + C.label() + ")");
      first = false;
    }
    out.append(v);
  }
  return out;
}

BoundReport check_triangle(const FiniteSet& C1, const FiniteSet& C2, const FiniteSet& C3,
                           double rho, double rho_bar, double tol) {
  if (!C1.space().same_geometry(C2.space(), 1e-12) ||
      !C1.space().same_geometry(C3.space(), 1e-12))
    throw std::invalid_argument("check_triangle: space mismatch");
  BoundReport r;
  r.check_id = "triangle";
  const double anchor =
      std::max({min_dist_to_centroid(C1), min_dist_to_centroid(C2), min_dist_to_centroid(C3)});
  r.require_gt("rho_bar_gt_2rho_plus_anchor", rho_bar, 2.0 * rho + anchor);
  r.note("max_i dist(centroid, C_i) = " + fmt(anchor));
  r.lhs = trunc_hausdorff(C1, C3, rho);
  r.rhs = trunc_hausdorff(C1, C2, rho_bar) + trunc_hausdorff(C2, C3, rho_bar);
  r.finalize(tol);
  return r;
}

BoundReport check_product(std::span<const FiniteSet> Cs, std::span<const FiniteSet> Ds,
                          double rho, double tol) {
  require_same_spaces(Cs, Ds, "check_product");
  BoundReport r;
  r.check_id = "product";
  ExtReal worst(0.0);
  for (std::size_t i = 0; i < Cs.size(); ++i)
    worst = ext_max(worst, trunc_hausdorff(Cs[i], Ds[i], rho));
  const FiniteSet C = product_set(Cs);
  const FiniteSet D = product_set(Ds);
  const bool c_meets = !ball_intersect(C, rho).empty();
  const bool d_meets = !ball_intersect(D, rho).empty();
  r.note(std::string("product C meets B(rho): ") + (c_meets ? "yes" : "no"));
  r.note(std::string("product D meets B(rho): ") + (d_meets ? "yes" : "no"));
  r.lhs = trunc_hausdorff(C, D, rho);
  r.rhs = worst;
  r.finalize(tol);
  if (c_meets && d_meets) assert_equality(r, tol);
  return r;
}

BoundReport check_indicator(const FiniteSet& C, const FiniteSet& D, double rho, double vstep,
                            double tol) {
  if (!C.space().same_geometry(D.space(), 1e-12))
    throw std::invalid_argument("check_indicator: space mismatch");
  BoundReport r;
  r.check_id = "indicator";
  r.lhs = trunc_hausdorff(indicator_epigraph(C, rho, vstep),
                          indicator_epigraph(D, rho, vstep), rho);
  r.rhs = trunc_hausdorff(C, D, rho);
  r.note("vstep = " + fmt(vstep));
  r.finalize(tol);
  assert_equality(r, tol);
  return r;
}

BoundReport check_union(std::span<const FiniteSet> Cs, std::span<const FiniteSet> Ds,
                        double rho, double tol) {
  require_same_spaces(Cs, Ds, "check_union");
  BoundReport r;
  r.check_id = "union";
  ExtReal worst(0.0);
  for (std::size_t i = 0; i < Cs.size(); ++i)
    worst = ext_max(worst, trunc_hausdorff(Cs[i], Ds[i], rho));
  r.lhs = trunc_hausdorff(union_set(Cs), union_set(Ds), rho);
  r.rhs = worst;
  r.finalize(tol);
  return r;
}

BoundReport check_intersection_outer(std::span<const FiniteSet> Cs,
                                     std::span<const FiniteSet> Ds, double tol) {
  require_same_spaces(Cs, Ds, "check_intersection_outer");
  BoundReport r;
  r.check_id = "intersection-outer";
  const FiniteSet inter = intersect_clouds(Cs, 1e-9);
  const FiniteSet outer = intersection_outer(Cs, Ds);
  r.note("intersection cloud size = " + std::to_string(inter.size()));
  r.note("outer approximation size = " + std::to_string(outer.size()));
  r.lhs = excess(inter, outer);
  r.rhs = ExtReal(0.0);
  r.finalize(tol);
  return r;
}

BoundReport check_hull(const FiniteSet& C, const FiniteSet& D, double rho, double tol,
                       std::size_t m) {
  if (!C.space().same_geometry(D.space(), 1e-12))
    throw std::invalid_argument("check_hull: space mismatch");
  BoundReport r;
  r.check_id = "hull";
  const double reach_c = max_dist_to_centroid(C);
  const double reach_d = max_dist_to_centroid(D);
  r.add_condition("C_in_ball", reach_c <= rho, rho - reach_c);
  r.add_condition("D_in_ball", reach_d <= rho, rho - reach_d);

  double slack = 0.0;
  if (C.dim() <= 2) {
    const HullDistance hd = hull_trunc_dl(C, D, rho);
    r.lhs = hd.value;
    if (!hd.exact) {
      r.note(hd.note);
      slack = 1e-3;
    }
  } else {
    const FiniteSet hc = convex_hull_sampled(C, m);
    const FiniteSet hdset = convex_hull_sampled(D, m);
    r.lhs = trunc_hausdorff(hc, hdset, rho);
    double diam = 0.0;
    for (std::size_t i = 0; i < C.size(); ++i)
      for (std::size_t j = 0; j < D.size(); ++j)
        diam = std::max(diam, C.space().distance(C.point_ptr(i), D.point_ptr(j)));
    slack = diam / static_cast<double>(m);
    r.note("Caratheodory sampling resolution m = " + std::to_string(m) +
           ", slack <= diam/m = " + fmt(slack));
  }
  r.rhs = trunc_hausdorff(C, D, rho);
  r.finalize(tol + slack);
  return r;
}

BoundReport check_lipschitz_image(const LipschitzSetMap& S, const LipschitzSetMap& T,
                                  const FiniteSet& C, const FiniteSet& D,
                                  const FiniteSet& probes, const RadiusBundle& radii,
                                  double tol) {
  if (!C.space().same_geometry(D.space(), 1e-12) ||
      !C.space().same_geometry(probes.space(), 1e-12))
    throw std::invalid_argument("check_lipschitz_image: domain space mismatch");
  if (C.empty() || D.empty())
    throw std::invalid_argument("check_lipschitz_image: C and D must be nonempty");
  BoundReport r;
  r.check_id = "lipschitz-image";
  const double rho = radii.rho;

  const FiniteSet SC = image_set(S, C);
  const FiniteSet SD = image_set(S, D);
  const FiniteSet TC = image_set(T, C);
  const FiniteSet TD = image_set(T, D);
  const MetricSpace& yspace = SC.space();

  const double anchor = std::max({min_dist_to_centroid(SC), min_dist_to_centroid(SD),
                                  min_dist_to_centroid(TD)});
  const double rho_star = radii.rho_star ? *radii.rho_star : 2.0 * rho + anchor + 1e-6;
  r.require_gt("rho_star_gt_2rho_plus_image_anchor", rho_star, 2.0 * rho + anchor);
  r.note("rho_star = " + fmt(rho_star));

  // sup over image points in B_Y(rho_star) of the generator's distance to
  // the domain centroid; the generator stands in for the full preimage,
  // which only enlarges the requirement (conservative).
  double preimage_reach = 0.0;
  auto track = [&](const LipschitzSetMap& U, const FiniteSet& E) {
    for (std::size_t i = 0; i < E.size(); ++i) {
      const FiniteSet img = U.evaluate(E.point(i));
      const double dx = E.space().dist_to_centroid(E.point_ptr(i));
      for (std::size_t j = 0; j < img.size(); ++j)
        if (yspace.dist_to_centroid(img.point_ptr(j)) <= rho_star)
          preimage_reach = std::max(preimage_reach, dx);
    }
  };
  track(S, C);
  track(S, D);
  track(T, C);
  track(T, D);
  const double rho_bar = radii.rho_bar ? *radii.rho_bar : preimage_reach + 1e-6;
  r.require_gt("rho_bar_gt_preimage_reach", rho_bar, preimage_reach - 1e-12);
  r.note("rho_bar = " + fmt(rho_bar) + ", preimage reach = " + fmt(preimage_reach));

  const ExtReal dl_cd = trunc_hausdorff(C, D, rho_bar);
  const double dl_cd_v = dl_cd.is_finite() ? dl_cd.raw() : kInf;
  const double rho_hat = radii.rho_hat ? *radii.rho_hat : rho_bar + dl_cd_v + 1e-6;
  r.require_gt("rho_hat_gt_rho_bar_plus_dl", rho_hat, rho_bar + dl_cd_v - 1e-12);
  r.note("dl_rhobar(C, D) = " + fmt(dl_cd));

  auto bad_s = validate_set_map_modulus(S, probes, rho_hat, tol);
  auto bad_t = validate_set_map_modulus(T, probes, rho_hat, tol);
  r.add_condition("modulus_valid_S", !bad_s.has_value(), 0.0);
  if (bad_s) r.note("S modulus violated: " + *bad_s);
  r.add_condition("modulus_valid_T", !bad_t.has_value(), 0.0);
  if (bad_t) r.note("T modulus violated: " + *bad_t);

  ExtReal sup_term(0.0);
  std::size_t used = 0;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    if (probes.space().dist_to_centroid(probes.point_ptr(i)) > rho_bar) continue;
    ++used;
    const FiniteSet sx = S.evaluate(probes.point(i));
    const FiniteSet tx = T.evaluate(probes.point(i));
    if (sx.empty() || tx.empty())
      throw std::invalid_argument("check_lipschitz_image: empty value on probe");
    sup_term = ext_max(sup_term, trunc_hausdorff(sx, tx, rho_star));
  }
  r.note("probe sup over " + std::to_string(used) + " points = " + fmt(sup_term));

  const double kappa = std::max(S.modulus ? S.modulus(rho_hat) : 0.0,
                                T.modulus ? T.modulus(rho_hat) : 0.0);
  r.lhs = trunc_hausdorff(SC, TD, rho);
  r.rhs = sup_term + ExtReal(kappa * dl_cd_v);
  r.finalize(tol);
  return r;
}

BoundReport check_sum(std::span<const FiniteSet> Cs, std::span<const FiniteSet> Ds,
                      double rho, double tol) {
  require_same_spaces(Cs, Ds, "check_sum");
  BoundReport r;
  r.check_id = "sum";
  const std::size_t m = Cs.size();

  std::vector<std::size_t> unbounded;
  for (std::size_t i = 0; i < m; ++i) {
    const double reach = std::max(max_dist_to_centroid(Cs[i]), max_dist_to_centroid(Ds[i]));
    if (reach > rho) unbounded.push_back(i);
    r.note("pair " + std::to_string(i) + " within B(rho): " +
           (reach <= rho ? "yes" : "no") + " (reach " + fmt(reach) + ")");
  }
  if (unbounded.size() >= 2)
    throw std::invalid_argument(
        "check_sum: two or more summand pairs leave B(rho); no sum rule exists for that "
        "case (crossing rays drive the truncated distance to rho)");

  ExtReal rhs(0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const bool relaxed = !unbounded.empty() && unbounded[0] == i;
    const double radius = relaxed ? static_cast<double>(m) * rho : rho;
    rhs = rhs + trunc_hausdorff(Cs[i], Ds[i], radius);
    if (relaxed)
      r.note("pair " + std::to_string(i) + " measured at m*rho = " + fmt(radius));
  }
  r.add_condition("at_most_one_unbounded_pair", unbounded.size() <= 1,
                  static_cast<double>(unbounded.size()));
  r.lhs = trunc_hausdorff(minkowski_sum(Cs), minkowski_sum(Ds), rho);
  r.rhs = rhs;
  r.finalize(tol);
  return r;
}

BoundReport check_scaling(const FiniteSet& C, const FiniteSet& D, double lambda, double mu,
                          double rho, double rho_bar, double tol) {
  if (lambda == 0.0 || mu == 0.0)
    throw std::invalid_argument("check_scaling: scalars must be nonzero");
  if (!C.space().same_geometry(D.space(), 1e-12))
    throw std::invalid_argument("check_scaling: space mismatch");
  require_vector_space(C, "check_scaling");
  BoundReport r;
  r.check_id = "scaling";
  const double d0c = min_dist_to_centroid(C);
  const double d0d = min_dist_to_centroid(D);
  const double threshold =
      (2.0 * rho + std::max({std::abs(lambda) * d0c, std::abs(lambda) * d0d,
                             std::abs(mu) * d0d})) *
      std::max(1.0 / std::abs(lambda), 1.0 / std::abs(mu));
  r.require_gt("rho_bar_gt_scaled_threshold", rho_bar, threshold);
  r.lhs = trunc_hausdorff(scale_set(C, lambda), scale_set(D, mu), rho);
  const ExtReal dl_bar = trunc_hausdorff(C, D, rho_bar);
  r.rhs = dl_bar.is_finite()
              ? ExtReal(rho_bar * std::abs(lambda - mu) +
                        std::max(std::abs(lambda), std::abs(mu)) * dl_bar.raw())
              : ExtReal::inf();
  r.finalize(tol);
  return r;
}

BoundReport check_convex_level_sets(const GriddedFunction& f, const GriddedFunction& g,
                                    double alpha, double beta, double rho, double tol,
                                    std::optional<double> rho0,
                                    std::optional<double> rho_star) {
  if (!f.same_grid(g)) throw std::invalid_argument("check_convex_level_sets: grids differ");
  BoundReport r;
  r.check_id = "convex-level-sets";

  auto conv_f = validate_midpoint_convexity(f, 1e-9);
  auto conv_g = validate_midpoint_convexity(g, 1e-9);
  r.add_condition("f_midpoint_convex", !conv_f.has_value(), 0.0);
  if (conv_f) r.note("f convexity violated: " + *conv_f);
  r.add_condition("g_midpoint_convex", !conv_g.has_value(), 0.0);
  if (conv_g) r.note("g convexity violated: " + *conv_g);

  const double probe = 1e-12;
  const double eps_list[] = {probe};
  const SolutionSummary sf = solution_summary(f, eps_list, {});
  const SolutionSummary sg = solution_summary(g, eps_list, {});
  r.add_condition("argmin_f_nonempty", !sf.argmin_eps[0].second.empty(),
                  static_cast<double>(sf.argmin_eps[0].second.size()));
  r.add_condition("argmin_g_nonempty", !sg.argmin_eps[0].second.empty(),
                  static_cast<double>(sg.argmin_eps[0].second.size()));
  const double inf_f = sf.infimum.is_finite() ? sf.infimum.raw() : kInf;
  const double inf_g = sg.infimum.is_finite() ? sg.infimum.raw() : kInf;
  r.require_gt("alpha_gt_inf_f", alpha, inf_f);
  r.require_gt("beta_gt_inf_g", beta, inf_g);
  r.require_ge("alpha_ge_-rho", alpha, -rho);
  r.require_ge("rho_ge_alpha", rho, alpha);
  r.require_ge("beta_ge_-rho", beta, -rho);
  r.require_ge("rho_ge_beta", rho, beta);

  const double rho0_req = std::max(min_dist_to_centroid(sf.argmin_eps[0].second),
                                   min_dist_to_centroid(sg.argmin_eps[0].second));
  const double rho0_v = rho0 ? *rho0 : rho0_req;
  r.require_ge("rho0_ge_argmin_dist", rho0_v, rho0_req);

  const ExtReal eta_e = kenmochi_dl(f, g, rho);
  r.note("eta = dl_rho(epi f, epi g) = " + fmt(eta_e));
  if (!eta_e.is_finite()) {
    r.lhs = trunc_hausdorff(level_ball_cloud(f, ExtReal(alpha), kInf),
                            level_ball_cloud(g, ExtReal(beta), kInf), rho);
    r.rhs = ExtReal::inf();
    r.finalize(tol);
    return r;
  }
  const double eta = eta_e.raw();
  const double rho_star_req = std::max(rho0_v, rho + eta);
  const double rho_star_v = rho_star ? *rho_star : rho_star_req;
  r.require_ge("rho_star_ge_max", rho_star_v, rho_star_req);

  auto rhs_at = [&](double e) {
    const double r1 = alpha + e - beta > 0.0 ? (alpha + e - beta) / (alpha + e - inf_g) : 0.0;
    const double r2 = beta + e - alpha > 0.0 ? (beta + e - alpha) / (beta + e - inf_f) : 0.0;
    return e + (rho_star_v + rho0_v) * std::max(r1, r2);
  };

  FiniteSet lev_f(f.space(), "lev_alpha f");
  FiniteSet lev_g(g.space(), "lev_beta g");
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.value(i) <= ExtReal(alpha)) lev_f.push_back(f.node(i));
    if (g.value(i) <= ExtReal(beta)) lev_g.push_back(g.node(i));
  }
  r.lhs = trunc_hausdorff(lev_f, lev_g, rho);
  r.rhs = ExtReal(rhs_at(eta));

  // The proposition concerns the continuous functions; the grid shifts eta
  // and both level sets by at most one step, so widen the tolerance by the
  // observed sensitivity of the bound.
  const double h = f.geom().max_step();
  const double slack = h + std::max(0.0, rhs_at(eta + h) - rhs_at(eta));
  r.note("grid slack = " + fmt(slack));
  r.finalize(tol + slack);
  return r;
}

}  // namespace setdist
