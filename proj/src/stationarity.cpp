#include "setdist/stationarity.hpp"

#include <algorithm>
#include <cmath>
#include "note_fmt.hpp"
#include <stdexcept>

#include "setdist/distance.hpp"

namespace setdist {

std::vector<double> eval_gradient(const SmoothFn& f, std::span<const double> x, double h_fd) {
  if (f.gradient) return f.gradient(x);
  if (!(h_fd > 0.0)) throw std::invalid_argument("finite-difference step must be > 0");
  std::vector<double> g(x.size());
  std::vector<double> probe(x.begin(), x.end());
  for (std::size_t k = 0; k < x.size(); ++k) {
    probe[k] = x[k] + h_fd;
    const double hi = f.value(probe);
    probe[k] = x[k] - h_fd;
    const double lo = f.value(probe);
    probe[k] = x[k];
    g[k] = (hi - lo) / (2.0 * h_fd);
  }
  return g;
}

GriddedMapping gradient_mapping(const SmoothFn& f, const FiniteSet& xnodes, double h_fd,
                                std::string name) {
  const MetricSpace cod = MetricSpace::sup(xnodes.dim());
  GriddedMapping g(xnodes.space(), cod, name.empty() ? "gradient" : std::move(name));
  for (std::size_t i = 0; i < xnodes.size(); ++i) {
    FiniteSet v(cod);
    v.push_back(eval_gradient(f, xnodes.point(i), h_fd));
    g.add_node(xnodes.point(i), std::move(v));
  }
  return g;
}

BoundReport dc_mapping_bound(const PwlConvex& f1, const PwlConvex& f2,
                             const PwlConvex& g1, const PwlConvex& g2,
                             double rho, double step, double tol) {
  BoundReport r;
  r.check_id = "dc-mapping";
  const double extent = rho + 0.5;

  std::vector<double> bps;
  for (const PwlConvex* f : {&f1, &f2, &g1, &g2})
    bps.insert(bps.end(), f->breakpoints().begin(), f->breakpoints().end());
  const std::vector<double> xs = grid_with_breakpoints(bps, extent, step);
  const FiniteSet vgrid = sample_interval(-extent, extent, step);

  const MetricSpace dom = MetricSpace::sup(2);
  const MetricSpace cod = MetricSpace::sup(2);
  const auto build = [&](const PwlConvex& a, const PwlConvex& b, std::string name) {
    GriddedMapping m(dom, cod, std::move(name));
    for (double x : xs) {
      const auto [alo, ahi] = a.subgradient(x);
      const auto [blo, bhi] = b.subgradient(x);
      const FiniteSet A = interval_values(alo, ahi, step);
      const FiniteSet B = interval_values(blo, bhi, step);
      for (std::size_t iv = 0; iv < vgrid.size(); ++iv) {
        const double v = vgrid.point(iv)[0];
        FiniteSet vals(cod);
        vals.reserve(A.size() * B.size());
        for (std::size_t ia = 0; ia < A.size(); ++ia)
          for (std::size_t ib = 0; ib < B.size(); ++ib)
            vals.push_back({A.point(ia)[0] - v, B.point(ib)[0] - v});
        m.add_node({x, v}, std::move(vals));
      }
    }
    return m;
  };

  const GriddedMapping S = build(f1, f2, "dc-actual");
  const GriddedMapping T = build(g1, g2, "dc-approx");
  const FiniteSet gph_s = graph_cloud(S);
  const FiniteSet gph_t = graph_cloud(T);
  r.lhs = trunc_hausdorff(gph_s, gph_t, rho);

  ExtReal rhs(0.0);
  const PwlConvex* fs[2] = {&f1, &f2};
  const PwlConvex* gs[2] = {&g1, &g2};
  for (double x : xs) {
    if (std::abs(x) > rho) continue;
    for (int i = 0; i < 2; ++i) {
      const auto [flo, fhi] = fs[i]->subgradient(x);
      const auto [glo, ghi] = gs[i]->subgradient(x);
      rhs = ext_max(rhs, trunc_hausdorff(interval_values(flo, fhi, step),
                                         interval_values(glo, ghi, step), 2.0 * rho));
    }
  }
  r.rhs = rhs;
  r.note(detail::cat("graph sizes ", gph_s.size(), " / ", gph_t.size()));
  r.finalize(tol);
  return r;
}

namespace {

bool analytic_gradients(const KktProblem& p) {
  if (!p.f0.gradient) return false;
  for (const SmoothFn& c : p.constraints)
    if (!c.gradient) return false;
  return true;
}

}  // namespace

GriddedMapping kkt_mapping(const KktProblem& p, std::string name) {
  const std::size_t n = p.xnodes.dim();
  const std::size_t m = p.constraints.size();
  if (m == 0) throw std::invalid_argument("need at least one constraint");
  const MetricSpace dom = MetricSpace::sup(n + m);
  const MetricSpace cod = MetricSpace::sup(3 * m + n);
  GriddedMapping g(dom, cod, name.empty() ? "kkt" : std::move(name));

  const std::vector<double> ylo(m, 0.0), yhi(m, p.y_max);
  const FiniteSet ygrid = sample_box(MetricSpace::sup(m), ylo, yhi, p.y_step);
  const auto K = static_cast<std::size_t>(std::floor(p.ray_extent / p.ray_step + 1e-9));

  std::vector<double> node(n + m), val(3 * m + n);
  for (std::size_t ix = 0; ix < p.xnodes.size(); ++ix) {
    const std::span<const double> x = p.xnodes.point(ix);
    std::vector<double> fvals(m);
    for (std::size_t i = 0; i < m; ++i) fvals[i] = p.constraints[i].value(x);
    const std::vector<double> grad0 = eval_gradient(p.f0, x, p.h_fd);
    std::vector<std::vector<double>> gradc(m);
    for (std::size_t i = 0; i < m; ++i) gradc[i] = eval_gradient(p.constraints[i], x, p.h_fd);

    for (std::size_t iy = 0; iy < ygrid.size(); ++iy) {
      const std::span<const double> y = ygrid.point(iy);
      std::copy(x.begin(), x.end(), node.begin());
      std::copy(y.begin(), y.end(), node.begin() + static_cast<std::ptrdiff_t>(n));

      for (std::size_t i = 0; i < m; ++i) val[2 * m + i] = y[i] * fvals[i];
      for (std::size_t k = 0; k < n; ++k) {
        double s = grad0[k];
        for (std::size_t i = 0; i < m; ++i) s += y[i] * gradc[i][k];
        val[3 * m + k] = s;
      }

      FiniteSet vals(cod);
      // Odometer over the 2m sampled interval components: u_i runs up from
      // its moving endpoint f_i(x), v_i runs down from y_i.
      std::vector<std::size_t> idx(2 * m, 0);
      bool done = false;
      while (!done) {
        for (std::size_t i = 0; i < m; ++i)
          val[i] = fvals[i] + static_cast<double>(idx[i]) * p.ray_step;
        for (std::size_t i = 0; i < m; ++i)
          val[m + i] = y[i] - static_cast<double>(idx[m + i]) * p.ray_step;
        vals.push_back(val);
        done = true;
        for (std::size_t d = 0; d < 2 * m; ++d) {
          if (++idx[d] <= K) {
            done = false;
            break;
          }
          idx[d] = 0;
        }
      }
      g.add_node(node, std::move(vals));
    }
  }
  g.codomain_extent = p.ray_extent;
  return g;
}

BoundReport check_kkt_bound(const KktProblem& pf, const KktProblem& pg, double rho,
                            double tol) {
  const std::size_t n = pf.xnodes.dim();
  const std::size_t m = pf.constraints.size();
  if (n != pg.xnodes.dim() || m != pg.constraints.size())
    throw std::invalid_argument("problems must share dimensions");
  if (pf.xnodes.size() != pg.xnodes.size())
    throw std::invalid_argument("problems must share the x-grid");

  BoundReport r;
  r.check_id = "kkt-bound";

  const GriddedMapping S = kkt_mapping(pf, "kkt-actual");
  const GriddedMapping T = kkt_mapping(pg, "kkt-approx");
  const FiniteSet gph_s = graph_cloud(S);
  const FiniteSet gph_t = graph_cloud(T);
  r.lhs = trunc_hausdorff(gph_s, gph_t, rho);

  double delta = 0.0, eta = 0.0, cover = 0.0;
  for (std::size_t ix = 0; ix < pf.xnodes.size(); ++ix) {
    const std::span<const double> x = pf.xnodes.point(ix);
    cover = std::max(cover, pf.xnodes.space().dist_to_centroid(x));
    if (pf.xnodes.space().dist_to_centroid(x) > rho) continue;
    for (std::size_t i = 0; i <= m; ++i) {
      const SmoothFn& fi = i == 0 ? pf.f0 : pf.constraints[i - 1];
      const SmoothFn& gi = i == 0 ? pg.f0 : pg.constraints[i - 1];
      if (i > 0) delta = std::max(delta, std::abs(fi.value(x) - gi.value(x)));
      const std::vector<double> df = eval_gradient(fi, x, pf.h_fd);
      const std::vector<double> dg = eval_gradient(gi, x, pg.h_fd);
      for (std::size_t k = 0; k < n; ++k) eta = std::max(eta, std::abs(df[k] - dg[k]));
    }
  }
  const double md = static_cast<double>(m);
  r.rhs = ExtReal(std::max({delta, rho * delta, (1.0 + md * rho) * eta}));

  r.require_ge("multiplier_box_covers_rho", std::min(pf.y_max, pg.y_max), rho);
  r.require_ge("x_grid_covers_ball", cover, rho);
  r.note(detail::cat("delta=", delta, " eta=", eta));
  r.note(detail::cat("graph sizes ", gph_s.size(), " / ", gph_t.size()));
  r.note(detail::cat(
      "gradients: ",
      analytic_gradients(pf) ? "analytic" : detail::cat("central-diff h=", pf.h_fd),
      " / ",
      analytic_gradients(pg) ? "analytic" : detail::cat("central-diff h=", pg.h_fd)));
  r.finalize(tol);
  return r;
}

BoundReport composite_stationarity_bound(const PwlConvex& phi, const PwlConvex& psi,
                                         const SmoothFn& F, const SmoothFn& G,
                                         const FiniteSet& xnodes, double rho,
                                         double step, double tol) {
  BoundReport r;
  r.check_id = "composite-stationarity";
  const std::size_t n = xnodes.dim();
  const double extent = rho + 2.0 * step;
  constexpr double kFdStep = 1e-4;

  std::vector<double> bps = phi.breakpoints();
  bps.insert(bps.end(), psi.breakpoints().begin(), psi.breakpoints().end());
  const std::vector<double> zs = grid_with_breakpoints(bps, extent, step);
  const FiniteSet ygrid = sample_interval(-extent, extent, step);

  const MetricSpace dom = MetricSpace::sup(n + 2);  // (x, y, z)
  const MetricSpace cod = MetricSpace::sup(2 + n);  // (u, v, w)
  const auto build = [&](const PwlConvex& outer, const SmoothFn& inner, std::string name) {
    GriddedMapping mmap(dom, cod, std::move(name));
    std::vector<double> node(n + 2), val(2 + n);
    for (std::size_t ix = 0; ix < xnodes.size(); ++ix) {
      const std::span<const double> x = xnodes.point(ix);
      std::copy(x.begin(), x.end(), node.begin());
      const double inner_x = inner.value(x);
      const std::vector<double> grad = eval_gradient(inner, x, kFdStep);
      for (std::size_t iy = 0; iy < ygrid.size(); ++iy) {
        const double y = ygrid.point(iy)[0];
        node[n] = y;
        for (std::size_t k = 0; k < n; ++k) val[2 + k] = grad[k] * y;
        for (const double z : zs) {
          node[n + 1] = z;
          val[0] = inner_x - z;
          const auto [slo, shi] = outer.subgradient(z);
          const FiniteSet subs = interval_values(slo, shi, step);
          FiniteSet vals(cod);
          vals.reserve(subs.size());
          for (std::size_t is = 0; is < subs.size(); ++is) {
            val[1] = subs.point(is)[0] - y;
            vals.push_back(val);
          }
          mmap.add_node(node, std::move(vals));
        }
      }
    }
    return mmap;
  };

  const GriddedMapping S = build(phi, F, "composite-actual");
  const GriddedMapping T = build(psi, G, "composite-approx");
  const FiniteSet gph_s = graph_cloud(S);
  const FiniteSet gph_t = graph_cloud(T);
  r.lhs = trunc_hausdorff(gph_s, gph_t, rho);

  const GriddedMapping dphi = subgradient_graph(phi, 2.0 * rho + 0.5, step);
  const GriddedMapping dpsi = subgradient_graph(psi, 2.0 * rho + 0.5, step);
  const ExtReal sub_dl = trunc_hausdorff(graph_cloud(dphi), graph_cloud(dpsi), 2.0 * rho);
  r.add_condition("subgradient_graph_dl_finite", sub_dl.is_finite(),
                  sub_dl.is_finite() ? sub_dl.raw() : 0.0);

  double rhs = 0.0;
  for (std::size_t ix = 0; ix < xnodes.size() && sub_dl.is_finite(); ++ix) {
    const std::span<const double> x = xnodes.point(ix);
    if (xnodes.space().dist_to_centroid(x) > rho) continue;
    const double value_diff = std::abs(G.value(x) - F.value(x));
    const std::vector<double> df = eval_gradient(F, x, kFdStep);
    const std::vector<double> dg = eval_gradient(G, x, kFdStep);
    double grad_diff = 0.0;
    for (std::size_t k = 0; k < n; ++k) grad_diff = std::max(grad_diff, std::abs(dg[k] - df[k]));
    rhs = std::max(rhs, std::max(value_diff + sub_dl.raw(), rho * grad_diff));
  }
  r.rhs = sub_dl.is_finite() ? ExtReal(rhs) : ExtReal::inf();

  r.note(detail::cat("graph sizes ", gph_s.size(), " / ", gph_t.size()));
  r.note(detail::cat("gradients: ", F.gradient ? "analytic" : "central-diff", " / ",
                     G.gradient ? "analytic" : "central-diff"));
  r.finalize(tol);
  return r;
}

}  // namespace setdist
