#include "setdist/scalar_field.hpp"

#include <cmath>
#include <stdexcept>

#include "setdist/rng.hpp"

namespace setdist {

GridGeom GridGeom::uniform(std::span<const std::array<double, 2>> box, double h) {
  if (h <= 0) throw std::invalid_argument("grid spacing must be > 0");
  GridGeom g;
  for (const auto& [a, b] : box) {
    if (b < a) throw std::invalid_argument("grid box is empty");
    g.lo.push_back(a);
    g.step.push_back(h);
    g.count.push_back(static_cast<std::size_t>(std::floor((b - a) / h + 1e-9)) + 1);
  }
  return g;
}

void GridGeom::node(std::size_t flat, std::span<double> out) const {
  for (std::size_t k = dim(); k-- > 0;) {
    std::size_t i = flat % count[k];
    flat /= count[k];
    out[k] = lo[k] + static_cast<double>(i) * step[k];
  }
}

std::size_t GridGeom::nearest(std::span<const double> x) const {
  std::size_t flat = 0;
  for (std::size_t k = 0; k < dim(); ++k) {
    double t = (x[k] - lo[k]) / step[k];
    long i = std::lround(t);
    if (i < 0) i = 0;
    if (i >= static_cast<long>(count[k])) i = static_cast<long>(count[k]) - 1;
    flat = flat * count[k] + static_cast<std::size_t>(i);
  }
  return flat;
}

double GridGeom::max_step() const {
  double m = 0;
  for (double s : step) m = std::max(m, s);
  return m;
}

GriddedFunction::GriddedFunction(MetricSpace space, GridGeom geom, std::string name)
    : space_(std::move(space)), geom_(std::move(geom)) {
  if (space_.dim() != geom_.dim())
    throw std::invalid_argument("grid/space dimension mismatch");
  field_.name = std::move(name);
  std::size_t n = geom_.num_nodes();
  field_.values.assign(n, ExtReal::inf());
  field_.nodes = FiniteSet(space_);
  field_.nodes.reserve(n);
  std::vector<double> p(space_.dim());
  for (std::size_t i = 0; i < n; ++i) {
    geom_.node(i, p);
    field_.nodes.push_back(p);
  }
}

GriddedFunction GriddedFunction::from_fn(
    MetricSpace space, GridGeom geom,
    const std::function<ExtReal(std::span<const double>)>& fn, std::string name) {
  GriddedFunction f(std::move(space), std::move(geom), std::move(name));
  for (std::size_t i = 0; i < f.size(); ++i) f.set_value(i, fn(f.node(i)));
  return f;
}

GriddedFunction GriddedFunction::line(double a, double b, double h,
                                      const std::function<ExtReal(double)>& fn,
                                      std::string name) {
  return from_fn(MetricSpace::line(), GridGeom::line(a, b, h),
                 [&fn](std::span<const double> x) { return fn(x[0]); }, std::move(name));
}

bool GriddedFunction::same_grid(const GriddedFunction& o, double tol) const {
  if (geom_.count != o.geom_.count || !space_.same_geometry(o.space_, tol)) return false;
  for (std::size_t k = 0; k < geom_.dim(); ++k) {
    if (std::abs(geom_.lo[k] - o.geom_.lo[k]) > tol) return false;
    if (std::abs(geom_.step[k] - o.geom_.step[k]) > tol) return false;
  }
  return true;
}

GriddedFunction GriddedFunction::plus(const GriddedFunction& g, std::string name) const {
  if (!same_grid(g)) throw std::invalid_argument("grid mismatch in function sum");
  GriddedFunction out = *this;
  out.field_.name = name.empty() ? field_.name + "+" + g.field_.name : std::move(name);
  for (std::size_t i = 0; i < out.size(); ++i)
    out.field_.values[i] = field_.values[i] + g.field_.values[i];
  return out;
}

GriddedFunction GriddedFunction::shifted(double c) const {
  GriddedFunction out = *this;
  for (auto& v : out.field_.values) v = v + ExtReal(c);
  return out;
}

SolutionSummary solution_summary(const ScalarField& f, std::span<const double> eps_list,
                                 std::span<const double> delta_list,
                                 std::optional<double> reference_infimum) {
  SolutionSummary out;
  for (ExtReal v : f.values) out.infimum = ext_min(out.infimum, v);
  ExtReal base = reference_infimum ? ExtReal(*reference_infimum) : out.infimum;
  for (double eps : eps_list) {
    FiniteSet pts(f.nodes.space());
    if (!base.is_pos_inf()) {
      for (std::size_t i = 0; i < f.size(); ++i)
        if (f.values[i] <= base + ExtReal(eps)) pts.push_back(f.nodes.point(i));
    }
    out.argmin_eps.emplace_back(eps, std::move(pts));
  }
  for (double delta : delta_list) {
    FiniteSet pts(f.nodes.space());
    for (std::size_t i = 0; i < f.size(); ++i)
      if (f.values[i] <= ExtReal(delta)) pts.push_back(f.nodes.point(i));
    out.level_sets.emplace_back(delta, std::move(pts));
  }
  return out;
}

namespace {
std::string describe_pair(const ScalarField& f, std::size_t i, std::size_t j,
                          double lhs, double rhs) {
  return "pair (" + std::to_string(i) + "," + std::to_string(j) + ") of " + f.name +
         ": |f(x)-f(y)| = " + std::to_string(lhs) + " > " + std::to_string(rhs);
}
}  // namespace

std::optional<std::string> validate_holder(const ScalarField& f, const HolderModulus& m,
                                           double rho, double tol, std::size_t budget,
                                           std::uint64_t seed) {
  if (!m.kappa) throw std::invalid_argument("Hoelder modulus has no kappa");
  std::vector<std::size_t> in_ball;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.values[i].is_finite() &&
        f.nodes.space().dist_to_centroid(f.nodes.point_ptr(i)) <= rho)
      in_ball.push_back(i);
  }
  double kap = m.kappa(rho);
  auto check = [&](std::size_t i, std::size_t j) -> bool {
    double d = f.nodes.space().distance(f.nodes.point(i), f.nodes.point(j));
    double lhs = std::abs(f.values[i].raw() - f.values[j].raw());
    return lhs <= kap * std::pow(d, m.exponent) + tol;
  };
  std::size_t n = in_ball.size();
  if (n * (n - 1) / 2 <= budget) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (!check(in_ball[a], in_ball[b])) {
          double d = f.nodes.space().distance(f.nodes.point(in_ball[a]), f.nodes.point(in_ball[b]));
          return describe_pair(f, in_ball[a], in_ball[b],
                               std::abs(f.values[in_ball[a]].raw() - f.values[in_ball[b]].raw()),
                               kap * std::pow(d, m.exponent) + tol);
        }
  } else {
    Rng rng(seed);
    for (std::size_t t = 0; t < budget; ++t) {
      std::size_t a = rng.below(n), b = rng.below(n);
      if (a == b) continue;
      if (!check(in_ball[a], in_ball[b])) {
        double d = f.nodes.space().distance(f.nodes.point(in_ball[a]), f.nodes.point(in_ball[b]));
        return describe_pair(f, in_ball[a], in_ball[b],
                             std::abs(f.values[in_ball[a]].raw() - f.values[in_ball[b]].raw()),
                             kap * std::pow(d, m.exponent) + tol);
      }
    }
  }
  return std::nullopt;
}

std::optional<std::string> validate_midpoint_convexity(const GriddedFunction& f, double tol,
                                                       std::size_t budget, std::uint64_t seed) {
  const GridGeom& g = f.geom();
  std::size_t n = f.size();
  std::vector<std::size_t> idx_i(g.dim()), idx_j(g.dim());
  auto unflatten = [&](std::size_t flat, std::vector<std::size_t>& idx) {
    for (std::size_t k = g.dim(); k-- > 0;) {
      idx[k] = flat % g.count[k];
      flat /= g.count[k];
    }
  };
  auto flatten = [&](const std::vector<std::size_t>& idx) {
    std::size_t flat = 0;
    for (std::size_t k = 0; k < g.dim(); ++k) flat = flat * g.count[k] + idx[k];
    return flat;
  };
  auto check = [&](std::size_t i, std::size_t j) -> std::optional<std::string> {
    unflatten(i, idx_i);
    unflatten(j, idx_j);
    std::vector<std::size_t> mid(g.dim());
    for (std::size_t k = 0; k < g.dim(); ++k) {
      if ((idx_i[k] + idx_j[k]) % 2 != 0) return std::nullopt;  // midpoint not a node
      mid[k] = (idx_i[k] + idx_j[k]) / 2;
    }
    ExtReal lhs = f.value(flatten(mid));
    ExtReal fi = f.value(i), fj = f.value(j);
    if (fi.is_pos_inf() || fj.is_pos_inf()) return std::nullopt;  // rhs is +inf
    ExtReal rhs(0.5 * (fi.raw() + fj.raw()));
    if (lhs > rhs + ExtReal(tol))
      return "midpoint convexity fails between nodes " + std::to_string(i) + " and " +
             std::to_string(j) + " of " + f.name();
    return std::nullopt;
  };
  if (n * (n - 1) / 2 <= budget) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (auto bad = check(i, j)) return bad;
  } else {
    Rng rng(seed);
    for (std::size_t t = 0; t < budget; ++t) {
      std::size_t i = rng.below(n), j = rng.below(n);
      if (i == j) continue;
      if (auto bad = check(i, j)) return bad;
    }
  }
  return std::nullopt;
}

}  // namespace setdist
