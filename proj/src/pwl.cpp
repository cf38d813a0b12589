#include "setdist/pwl.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace setdist {

PwlConvex::PwlConvex(std::vector<double> breakpoints, std::vector<double> slopes,
                     double anchor_value, std::string name)
    : breakpoints_(std::move(breakpoints)),
      slopes_(std::move(slopes)),
      anchor_(anchor_value),
      name_(std::move(name)) {
  if (slopes_.size() != breakpoints_.size() + 1)
    throw std::invalid_argument("need one more slope than breakpoints");
  for (std::size_t i = 1; i < breakpoints_.size(); ++i)
    if (!(breakpoints_[i] > breakpoints_[i - 1]))
      throw std::invalid_argument("breakpoints must be strictly ascending");
  for (std::size_t i = 1; i < slopes_.size(); ++i)
    if (slopes_[i] < slopes_[i - 1] - 1e-12)
      throw std::invalid_argument("slopes must be nondecreasing (convexity)");
}

double PwlConvex::operator()(double x) const {
  if (breakpoints_.empty()) return anchor_ + slopes_[0] * x;
  const double b0 = breakpoints_.front();
  if (x < b0) return anchor_ + slopes_[0] * (x - b0);
  double v = anchor_;
  double prev = b0;
  std::size_t seg = 1;  // slopes_[seg] rules (breakpoints_[seg-1], breakpoints_[seg])
  while (seg < breakpoints_.size() && breakpoints_[seg] <= x) {
    v += slopes_[seg] * (breakpoints_[seg] - prev);
    prev = breakpoints_[seg];
    ++seg;
  }
  return v + slopes_[seg] * (x - prev);
}

std::pair<double, double> PwlConvex::subgradient(double x, double tol) const {
  for (std::size_t j = 0; j < breakpoints_.size(); ++j)
    if (std::abs(x - breakpoints_[j]) <= tol) return {slopes_[j], slopes_[j + 1]};
  std::size_t seg = 0;
  while (seg < breakpoints_.size() && x > breakpoints_[seg]) ++seg;
  return {slopes_[seg], slopes_[seg]};
}

std::vector<double> grid_with_breakpoints(std::span<const double> breakpoints,
                                          double extent, double step) {
  FiniteSet base = sample_interval(-extent, extent, step);
  std::vector<double> xs;
  xs.reserve(base.size() + breakpoints.size());
  for (std::size_t i = 0; i < base.size(); ++i) xs.push_back(base.point(i)[0]);
  for (double b : breakpoints)
    if (std::abs(b) <= extent) xs.push_back(b);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end(),
                       [](double a, double b) { return std::abs(a - b) < 1e-12; }),
           xs.end());
  return xs;
}

FiniteSet interval_values(double lo, double hi, double step) {
  if (hi <= lo) return FiniteSet::from_points(MetricSpace::line(), {{lo}});
  return sample_interval(lo, hi, step);
}

GriddedMapping subgradient_graph(const PwlConvex& f, double extent, double step) {
  GriddedMapping g(MetricSpace::line(), MetricSpace::line(),
                   f.name().empty() ? "subgradient" : "d" + f.name());
  for (double x : grid_with_breakpoints(f.breakpoints(), extent, step)) {
    auto [lo, hi] = f.subgradient(x);
    g.add_node({x}, interval_values(lo, hi, step));
  }
  return g;
}

GriddedMapping normal_cone_graph(double a, double b, double extent, double step,
                                 std::string name) {
  if (a > b) throw std::invalid_argument("interval endpoints out of order");
  GriddedMapping g(MetricSpace::line(), MetricSpace::line(),
                   name.empty() ? "normal-cone" : std::move(name));
  FiniteSet xs = sample_interval(a, b, step);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs.point(i)[0];
    const bool at_left = std::abs(x - a) <= 1e-12;
    const bool at_right = std::abs(x - b) <= 1e-12;
    if (at_left && at_right)
      g.add_node({x}, sample_interval(-extent, extent, step));
    else if (at_left)
      g.add_node({x}, sample_interval(-extent, 0.0, step));
    else if (at_right)
      g.add_node({x}, sample_interval(0.0, extent, step));
    else
      g.add_node({x}, FiniteSet::from_points(MetricSpace::line(), {{0.0}}));
  }
  g.codomain_extent = extent;
  return g;
}

namespace {

struct Vec2 {
  double x = 0.0, y = 0.0;
};

double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

// Sampled cone {t * dir(theta) : t in [0, extent], theta in [th0, th0+span]}
// appended into `vals`; includes the origin exactly once per caller.
void append_fan(FiniteSet& vals, double th0, double span, double extent, double step,
                std::size_t directions) {
  for (std::size_t k = 0; k < directions; ++k) {
    const double th =
        th0 + span * (directions == 1 ? 0.0
                                      : static_cast<double>(k) / static_cast<double>(directions - 1));
    const double dir[2] = {std::cos(th), std::sin(th)};
    FiniteSet ray = sample_ray(MetricSpace::euclidean(2), dir, extent, step);
    for (std::size_t i = 1; i < ray.size(); ++i) vals.push_back(ray.point(i));
  }
}

}  // namespace

GriddedMapping normal_cone_graph(std::span<const std::array<double, 2>> polygon,
                                 double extent, double step, std::string name) {
  if (polygon.size() < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
  std::vector<Vec2> v;
  v.reserve(polygon.size());
  for (const auto& p : polygon) v.push_back({p[0], p[1]});

  double area2 = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2& p = v[i];
    const Vec2& q = v[(i + 1) % v.size()];
    area2 += cross(p, q);
  }
  if (area2 < 0.0) std::reverse(v.begin(), v.end());  // normalize to CCW
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e1{v[(i + 1) % n].x - v[i].x, v[(i + 1) % n].y - v[i].y};
    const Vec2 e2{v[(i + 2) % n].x - v[(i + 1) % n].x, v[(i + 2) % n].y - v[(i + 1) % n].y};
    if (cross(e1, e2) <= 1e-12)
      throw std::invalid_argument("polygon must be strictly convex and non-degenerate");
  }

  const MetricSpace plane = MetricSpace::euclidean(2);
  GriddedMapping g(plane, plane, name.empty() ? "normal-cone" : std::move(name));

  // Outward unit normal of each CCW edge i: v[i] -> v[i+1].
  std::vector<Vec2> normals(n);
  std::vector<double> angles(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e{v[(i + 1) % n].x - v[i].x, v[(i + 1) % n].y - v[i].y};
    const double len = std::hypot(e.x, e.y);
    normals[i] = {e.y / len, -e.x / len};
    angles[i] = std::atan2(normals[i].y, normals[i].x);
  }

  const FiniteSet origin = FiniteSet::from_points(plane, {{0.0, 0.0}});

  // Interior lattice nodes: strictly inside every edge.
  double lo[2] = {v[0].x, v[0].y}, hi[2] = {v[0].x, v[0].y};
  for (const Vec2& p : v) {
    lo[0] = std::min(lo[0], p.x);
    lo[1] = std::min(lo[1], p.y);
    hi[0] = std::max(hi[0], p.x);
    hi[1] = std::max(hi[1], p.y);
  }
  FiniteSet lattice = sample_box(plane, lo, hi, step);
  for (std::size_t idx = 0; idx < lattice.size(); ++idx) {
    const Vec2 p{lattice.point(idx)[0], lattice.point(idx)[1]};
    bool strictly_inside = true;
    for (std::size_t i = 0; i < n && strictly_inside; ++i) {
      const Vec2 e{v[(i + 1) % n].x - v[i].x, v[(i + 1) % n].y - v[i].y};
      const Vec2 w{p.x - v[i].x, p.y - v[i].y};
      strictly_inside = cross(e, w) > 1e-9;
    }
    if (strictly_inside) g.add_node(lattice.point(idx), origin);
  }

  // Edge nodes (vertices excluded): sampled outward normal ray.
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = v[i];
    const Vec2& q = v[(i + 1) % n];
    const double len = std::hypot(q.x - p.x, q.y - p.y);
    const double dir_n[2] = {normals[i].x, normals[i].y};
    FiniteSet ray = sample_ray(plane, dir_n, extent, step);
    for (double t = step; t < len - 1e-12; t += step) {
      const double node[2] = {p.x + t * (q.x - p.x) / len, p.y + t * (q.y - p.y) / len};
      g.add_node(node, ray);
    }
  }

  // Vertex nodes: fan between the normals of the two incident edges.
  constexpr std::size_t kFanDirections = 9;
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  for (std::size_t i = 0; i < n; ++i) {
    const double th_prev = angles[(i + n - 1) % n];
    double span = angles[i] - th_prev;
    while (span < 0.0) span += kTwoPi;
    FiniteSet vals = origin;
    append_fan(vals, th_prev, span, extent, step, kFanDirections);
    g.add_node({v[i].x, v[i].y}, std::move(vals));
  }

  g.codomain_extent = extent;
  return g;
}

}  // namespace setdist
