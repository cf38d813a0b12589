#include "setdist/mappings.hpp"

#include <cmath>
#include "note_fmt.hpp"
#include <stdexcept>
#include <utility>

#include "setdist/distance.hpp"
#include "setdist/set_ops.hpp"

namespace setdist {

GriddedMapping::GriddedMapping(MetricSpace domain, MetricSpace codomain, std::string name)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      nodes_(domain_, name.empty() ? std::string("nodes") : name + ".nodes"),
      name_(std::move(name)) {}

void GriddedMapping::add_node(std::span<const double> x, FiniteSet value) {
  if (!value.space().same_geometry(codomain_))
    throw std::invalid_argument("value set geometry does not match the codomain");
  nodes_.push_back(x);
  values_.push_back(std::move(value));
}

void GriddedMapping::add_node(std::initializer_list<double> x, FiniteSet value) {
  add_node(std::span<const double>(x.begin(), x.size()), std::move(value));
}

bool GriddedMapping::nonempty_valued() const {
  for (const FiniteSet& v : values_)
    if (v.empty()) return false;
  return true;
}

std::size_t GriddedMapping::graph_size() const {
  std::size_t n = 0;
  for (const FiniteSet& v : values_) n += v.size();
  return n;
}

MetricSpace GriddedMapping::graph_space() const {
  return MetricSpace::product(domain_, codomain_);
}

FiniteSet graph_cloud(const GriddedMapping& S, std::string label) {
  FiniteSet g(S.graph_space(), label.empty() ? "gph " + S.name() : std::move(label));
  g.reserve(S.graph_size());
  std::vector<double> pt(S.domain().dim() + S.codomain().dim());
  for (std::size_t i = 0; i < S.size(); ++i) {
    std::span<const double> x = S.node(i);
    std::copy(x.begin(), x.end(), pt.begin());
    const FiniteSet& vals = S.value(i);
    for (std::size_t j = 0; j < vals.size(); ++j) {
      std::span<const double> y = vals.point(j);
      std::copy(y.begin(), y.end(), pt.begin() + static_cast<std::ptrdiff_t>(x.size()));
      g.push_back(pt);
    }
  }
  return g;
}

FiniteSet near_solution_set(const GriddedMapping& S, std::span<const double> y_star,
                            double eps, double tol) {
  if (y_star.size() != S.codomain().dim())
    throw std::invalid_argument("y_star dimension does not match the codomain");
  if (eps < 0.0) throw std::invalid_argument("eps must be >= 0");
  FiniteSet out(S.domain(), S.name().empty() ? "near-solutions" : S.name() + "^-1");
  for (std::size_t i = 0; i < S.size(); ++i) {
    const FiniteSet& vals = S.value(i);
    bool hit = false;
    for (std::size_t j = 0; j < vals.size() && !hit; ++j)
      hit = S.codomain().distance(vals.point(j), y_star) <= eps + tol;
    if (hit) out.push_back(S.node(i));
  }
  return out;
}

FiniteSet near_solution_set(const GriddedMapping& S, const NearSolutionQuery& q, double tol) {
  return near_solution_set(S, q.y_star, q.eps, tol);
}

BoundReport check_geneq_bound(const GriddedMapping& S, const GriddedMapping& T,
                              const NearSolutionQuery& q, double tol) {
  if (!S.domain().same_geometry(T.domain()) || !T.codomain().same_geometry(S.codomain()))
    throw std::invalid_argument("mappings must share domain and codomain geometry");
  if (q.y_star.size() != S.codomain().dim())
    throw std::invalid_argument("y_star dimension does not match the codomain");
  if (q.eps < 0.0 || q.eps > q.rho) throw std::invalid_argument("need 0 <= eps <= rho");

  BoundReport r;
  r.check_id = "geneq-bound";

  const FiniteSet gph_s = graph_cloud(S);
  const FiniteSet gph_t = graph_cloud(T);
  r.add_condition("graphs_nonempty", !gph_s.empty() && !gph_t.empty(),
                  static_cast<double>(std::min(gph_s.size(), gph_t.size())));

  const double y_off = S.codomain().dist_to_centroid(q.y_star);
  r.require_ge("ystar_in_ball", q.rho - q.eps, y_off);

  const ExtReal dl = trunc_hausdorff(gph_s, gph_t, q.rho);
  r.rhs = dl;
  if (dl.is_finite())
    r.require_ge("delta_ge_eps_plus_graph_dl", q.delta, q.eps + dl.raw() - 1e-12);
  else
    r.add_condition("delta_ge_eps_plus_graph_dl", false, -kNoCutoff);

  const FiniteSet near_s = near_solution_set(S, q.y_star, q.eps);
  const FiniteSet near_t = near_solution_set(T, q.y_star, q.delta);
  r.lhs = excess(ball_intersect(near_s, q.rho), near_t);

  r.note(detail::cat("graph sizes ", gph_s.size(), " / ", gph_t.size()));
  r.note(detail::cat("near-solution sizes ", near_s.size(), " / ", near_t.size()));
  r.finalize(tol);
  return r;
}

GriddedMapping sum_mappings(const GriddedMapping& S1, const GriddedMapping& S2,
                            std::string name) {
  if (!S1.domain().same_geometry(S2.domain()) || !S1.codomain().same_geometry(S2.codomain()))
    throw std::invalid_argument("summand mappings must share domain and codomain geometry");
  if (S1.size() != S2.size())
    throw std::invalid_argument("summand mappings must share the node list");
  if (name.empty()) name = S1.name() + "+" + S2.name();
  GriddedMapping out(S1.domain(), S1.codomain(), std::move(name));
  for (std::size_t i = 0; i < S1.size(); ++i) {
    if (S1.domain().distance(S1.node(i), S2.node(i)) > 1e-12)
      throw std::invalid_argument("summand mappings must share the node list");
    const FiniteSet parts[2] = {S1.value(i), S2.value(i)};
    out.add_node(S1.node(i), minkowski_sum(parts));
  }
  out.codomain_extent = std::min(S1.codomain_extent, S2.codomain_extent);
  return out;
}

namespace {

// Largest codomain distance-to-centroid over the values attached to nodes
// inside B_X(rho); 0 when no node lands in the ball.
double value_bound_in_ball(const GriddedMapping& S, double rho) {
  double bound = 0.0;
  for (std::size_t i = 0; i < S.size(); ++i) {
    if (S.domain().dist_to_centroid(S.node(i)) > rho) continue;
    const FiniteSet& vals = S.value(i);
    for (std::size_t j = 0; j < vals.size(); ++j)
      bound = std::max(bound, S.codomain().dist_to_centroid(vals.point(j)));
  }
  return bound;
}

void require_extent(const GriddedMapping& S, double needed, const char* which) {
  if (S.codomain_extent < needed)
    throw std::runtime_error(detail::cat(
        which, " values are sampled only up to codomain radius ", S.codomain_extent,
        " but the check needs radius ", needed,
        "; rebuild the mapping with a larger extent"));
}

}  // namespace

BoundReport check_sum_mappings(const GriddedMapping& S1, const GriddedMapping& T1,
                               const GriddedMapping& S2, const GriddedMapping& T2,
                               const std::function<double(double)>& kappa,
                               const RadiusBundle& radii, double tol) {
  for (const GriddedMapping* m : {&T1, &S2, &T2}) {
    if (!S1.domain().same_geometry(m->domain()) || !S1.codomain().same_geometry(m->codomain()))
      throw std::invalid_argument("all four mappings must share domain and codomain geometry");
  }
  if (!S1.nonempty_valued() || !T1.nonempty_valued())
    throw std::invalid_argument("S1 and T1 must be nonempty-valued");

  BoundReport r;
  r.check_id = "sum-mappings";
  const double rho = radii.rho;

  // Radius chain.
  const double rho_prime =
      std::max(value_bound_in_ball(S1, rho), value_bound_in_ball(T1, rho));
  const double rho_bar = radii.rho_bar.value_or(rho + rho_prime + 1e-6);
  r.require_ge("rho_bar_ge_rho_plus_value_bound", rho_bar, rho + rho_prime);

  const FiniteSet gph_s2 = graph_cloud(S2);
  const FiniteSet gph_t2 = graph_cloud(T2);
  r.add_condition("perturbation_graphs_nonempty", !gph_s2.empty() && !gph_t2.empty(),
                  static_cast<double>(std::min(gph_s2.size(), gph_t2.size())));
  const ExtReal graph_dl = trunc_hausdorff(gph_s2, gph_t2, rho_bar);
  if (!graph_dl.is_finite()) {
    r.add_condition("perturbation_graph_dl_finite", false, -kNoCutoff);
    r.lhs = ExtReal::inf();
    r.rhs = ExtReal::inf();
    r.finalize(tol);
    return r;
  }

  const double rho_hat = radii.rho_hat.value_or(rho + graph_dl.raw() + 1e-6);
  r.require_gt("rho_hat_gt_rho_plus_graph_dl", rho_hat, rho + graph_dl.raw());

  const double kappa_hat = kappa(rho_hat);
  const double rho_star =
      radii.rho_star.value_or(3.0 * rho_prime + kappa_hat * (rho_hat - rho) + 1e-6);
  r.require_gt("rho_star_gt_3rhoprime_plus_kappa_term", rho_star,
               3.0 * rho_prime + kappa_hat * (rho_hat - rho));

  // Sampled value sets must actually be known out to rho*; refuse truncated data.
  require_extent(S1, rho_star, "S1");
  require_extent(T1, rho_star, "T1");
  require_extent(S2, rho_bar, "S2");
  require_extent(T2, rho_bar, "T2");

  // Modulus validation: dl_{rho*}(M(x), M(x')) <= kappa(rho_hat) d(x, x') for
  // node pairs inside B(rho_hat), for M in {S1, T1}.
  double worst_slack = kNoCutoff;
  bool modulus_ok = true;
  for (const GriddedMapping* m : {&S1, &T1}) {
    for (std::size_t a = 0; a < m->size() && modulus_ok; ++a) {
      if (m->domain().dist_to_centroid(m->node(a)) > rho_hat) continue;
      for (std::size_t b = a + 1; b < m->size(); ++b) {
        if (m->domain().dist_to_centroid(m->node(b)) > rho_hat) continue;
        const ExtReal dl_ab = trunc_hausdorff(m->value(a), m->value(b), rho_star);
        const double allowed =
            kappa_hat * m->domain().distance(m->node(a), m->node(b)) + 1e-9;
        const double slack = allowed - (dl_ab.is_finite() ? dl_ab.raw() : kNoCutoff);
        worst_slack = std::min(worst_slack, slack);
        if (slack < 0.0) {
          modulus_ok = false;
          break;
        }
      }
    }
  }
  r.add_condition("modulus_holds_on_grid", modulus_ok,
                  std::isfinite(worst_slack) ? worst_slack : 0.0);

  // Bound sides.
  const GriddedMapping sum_s = sum_mappings(S1, S2);
  const GriddedMapping sum_t = sum_mappings(T1, T2);
  r.lhs = trunc_hausdorff(graph_cloud(sum_s), graph_cloud(sum_t), rho);

  ExtReal sup_value_dl(0.0);
  for (std::size_t i = 0; i < S1.size(); ++i) {
    if (S1.domain().dist_to_centroid(S1.node(i)) > rho) continue;
    sup_value_dl = ext_max(sup_value_dl, trunc_hausdorff(S1.value(i), T1.value(i), rho_star));
  }
  if (sup_value_dl.is_finite())
    r.rhs = ExtReal(sup_value_dl.raw() + (1.0 + kappa_hat) * graph_dl.raw());
  else
    r.rhs = ExtReal::inf();

  r.note(detail::cat("rho'=", rho_prime, " rho_bar=", rho_bar, " rho_hat=", rho_hat,
                     " rho*=", rho_star));
  r.note(detail::cat("sup value dl=",
                     sup_value_dl.is_finite() ? sup_value_dl.raw() : kNoCutoff,
                     " graph dl=", graph_dl.raw(), " kappa(rho_hat)=", kappa_hat));
  r.finalize(tol);
  return r;
}

}  // namespace setdist
