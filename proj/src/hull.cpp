#include "setdist/hull.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace setdist {
namespace {

struct P2 {
  double x, y;
};

double cross(const P2& o, const P2& a, const P2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

std::vector<P2> dedup(std::vector<P2> pts) {
  std::sort(pts.begin(), pts.end(), [](const P2& a, const P2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const P2& a, const P2& b) { return a.x == b.x && a.y == b.y; }),
            pts.end());
  return pts;
}

// Andrew's monotone chain; returns counterclockwise vertices, collinear
// points dropped. Input must be deduplicated and sorted.
std::vector<P2> monotone_chain(const std::vector<P2>& pts) {
  const std::size_t n = pts.size();
  if (n <= 2) return pts;
  std::vector<P2> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

Norm single_factor_norm(const MetricSpace& space) {
  if (space.factors().size() != 1)
    throw std::invalid_argument("hull: single-factor normed space required");
  return space.factors()[0].norm;
}

double seg_dist_l2(const P2& a, const P2& b, const P2& p) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0.0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const double ex = p.x - a.x - t * dx, ey = p.y - a.y - t * dy;
  return std::sqrt(ex * ex + ey * ey);
}

// Exact l-inf point-to-segment distance: the objective
// t -> max(|u - t dx|, |v - t dy|) is piecewise-linear convex, so the
// minimum sits at an endpoint, a kink, or a branch crossing.
double seg_dist_linf(const P2& a, const P2& b, const P2& p) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double u = p.x - a.x, v = p.y - a.y;
  std::vector<double> cand{0.0, 1.0};
  if (dx != 0.0) cand.push_back(u / dx);
  if (dy != 0.0) cand.push_back(v / dy);
  if (dx - dy != 0.0) cand.push_back((u - v) / (dx - dy));
  if (dx + dy != 0.0) cand.push_back((u + v) / (dx + dy));
  double best = kNoCutoff;
  for (double t : cand) {
    t = std::clamp(t, 0.0, 1.0);
    best = std::min(best, std::max(std::abs(u - t * dx), std::abs(v - t * dy)));
  }
  return best;
}

double seg_dist(Norm n, const P2& a, const P2& b, const P2& p) {
  return n == Norm::L2 ? seg_dist_l2(a, b, p) : seg_dist_linf(a, b, p);
}

bool inside_polygon(const std::vector<P2>& poly, const P2& p) {
  bool in = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const P2& a = poly[i];
    const P2& b = poly[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double xint = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
      if (p.x < xint) in = !in;
    }
  }
  return in;
}

double dist_to_poly(Norm n, const std::vector<P2>& poly, const P2& p) {
  if (poly.empty()) return kNoCutoff;
  if (poly.size() == 1) {
    const double ax = std::abs(p.x - poly[0].x), ay = std::abs(p.y - poly[0].y);
    return n == Norm::L2 ? std::hypot(ax, ay) : std::max(ax, ay);
  }
  if (poly.size() >= 3 && inside_polygon(poly, p)) return 0.0;
  double best = kNoCutoff;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++)
    best = std::min(best, seg_dist(n, poly[j], poly[i], p));
  return best;
}

// Clip a convex polygon (possibly degenerate) to the axis box
// [cx-r, cx+r] x [cy-r, cy+r].
std::vector<P2> clip_to_box(const std::vector<P2>& poly, double cx, double cy, double r) {
  if (poly.empty()) return {};
  if (poly.size() == 1) {
    const P2& p = poly[0];
    if (std::abs(p.x - cx) <= r && std::abs(p.y - cy) <= r) return poly;
    return {};
  }
  if (poly.size() == 2) {
    // parametric clip of a segment against the four slabs
    const P2 a = poly[0], b = poly[1];
    double t0 = 0.0, t1 = 1.0;
    auto slab = [&](double p0, double d, double lo, double hi) {
      if (d == 0.0) return p0 >= lo && p0 <= hi;
      double ta = (lo - p0) / d, tb = (hi - p0) / d;
      if (ta > tb) std::swap(ta, tb);
      t0 = std::max(t0, ta);
      t1 = std::min(t1, tb);
      return true;
    };
    if (!slab(a.x, b.x - a.x, cx - r, cx + r)) return {};
    if (!slab(a.y, b.y - a.y, cy - r, cy + r)) return {};
    if (t0 > t1) return {};
    return {{a.x + t0 * (b.x - a.x), a.y + t0 * (b.y - a.y)},
            {a.x + t1 * (b.x - a.x), a.y + t1 * (b.y - a.y)}};
  }
  // Sutherland-Hodgman against each box edge.
  std::vector<P2> cur = poly;
  auto pass = [&](auto keep, auto intersect) {
    std::vector<P2> out;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      const P2& s = cur[i];
      const P2& e = cur[(i + 1) % cur.size()];
      const bool ks = keep(s), ke = keep(e);
      if (ks) out.push_back(s);
      if (ks != ke) out.push_back(intersect(s, e));
    }
    cur = std::move(out);
  };
  const double xlo = cx - r, xhi = cx + r, ylo = cy - r, yhi = cy + r;
  auto ix = [](const P2& s, const P2& e, double x) {
    const double t = (x - s.x) / (e.x - s.x);
    return P2{x, s.y + t * (e.y - s.y)};
  };
  auto iy = [](const P2& s, const P2& e, double y) {
    const double t = (y - s.y) / (e.y - s.y);
    return P2{s.x + t * (e.x - s.x), y};
  };
  pass([&](const P2& p) { return p.x >= xlo; },
       [&](const P2& s, const P2& e) { return ix(s, e, xlo); });
  pass([&](const P2& p) { return p.x <= xhi; },
       [&](const P2& s, const P2& e) { return ix(s, e, xhi); });
  pass([&](const P2& p) { return p.y >= ylo; },
       [&](const P2& s, const P2& e) { return iy(s, e, ylo); });
  pass([&](const P2& p) { return p.y <= yhi; },
       [&](const P2& s, const P2& e) { return iy(s, e, yhi); });
  return cur;
}

std::vector<P2> to_p2(const FiniteSet& C) {
  std::vector<P2> pts;
  pts.reserve(C.size());
  for (std::size_t i = 0; i < C.size(); ++i) pts.push_back({C.point(i)[0], C.point(i)[1]});
  return pts;
}

// Extreme points of con C truncated to B(rho), plus (for L2, where the
// boundary is curved) boundary samples; `exact` reports whether the list
// carries the sup of any convex function over the truncated hull.
struct TruncatedHull {
  std::vector<P2> queries;
  bool exact = true;
  std::string note;
};

TruncatedHull truncate_hull_2d(const std::vector<P2>& hull, const MetricSpace& space,
                               double rho) {
  TruncatedHull out;
  if (hull.empty()) return out;
  const double cx = space.centroid()[0], cy = space.centroid()[1];
  const Norm norm = space.factors()[0].norm;
  bool contained = true;
  for (const P2& p : hull) {
    const double pt[2] = {p.x, p.y};
    if (space.dist_to_centroid(pt) > rho) {
      contained = false;
      break;
    }
  }
  if (contained) {
    out.queries = hull;
    return out;
  }
  if (norm == Norm::LInf) {
    out.queries = clip_to_box(hull, cx, cy, rho);
    return out;
  }
  // L2 ball: polygon/disk intersection has curved pieces; sample the
  // boundary and record the step.
  constexpr int kSamples = 2048;
  out.exact = false;
  out.note = "L2 truncation sampled with 2048 boundary points per piece";
  for (std::size_t i = 0, j = hull.size() - 1; i < hull.size(); j = i++) {
    const P2 a = hull[j], b = hull[i];
    for (int s = 0; s <= kSamples; ++s) {
      const double t = static_cast<double>(s) / kSamples;
      const P2 p{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
      if (std::hypot(p.x - cx, p.y - cy) <= rho) out.queries.push_back(p);
    }
    if (hull.size() == 2) break;  // a segment has one edge
  }
  for (int s = 0; s < kSamples; ++s) {
    const double ang = 2.0 * 3.14159265358979323846 * s / kSamples;
    const P2 p{cx + rho * std::cos(ang), cy + rho * std::sin(ang)};
    if (hull.size() >= 3 && inside_polygon(hull, p)) out.queries.push_back(p);
  }
  return out;
}

}  // namespace

FiniteSet convex_hull_vertices(const FiniteSet& C) {
  const std::size_t d = C.dim();
  if (d == 0 || d > 2)
    throw std::invalid_argument("convex_hull_vertices: dimension must be 1 or 2");
  FiniteSet out(C.space(), C.label().empty() ? "hull" : "con " + C.label());
  if (C.empty()) return out;
  if (d == 1) {
    double lo = C.point(0)[0], hi = lo;
    for (std::size_t i = 1; i < C.size(); ++i) {
      lo = std::min(lo, C.point(i)[0]);
      hi = std::max(hi, C.point(i)[0]);
    }
    out.push_back({lo});
    if (hi != lo) out.push_back({hi});
    return out;
  }
  const std::vector<P2> hull = monotone_chain(dedup(to_p2(C)));
  for (const P2& p : hull) out.push_back({p.x, p.y});
  return out;
}

FiniteSet convex_hull_sampled(const FiniteSet& C, std::size_t m, std::size_t cap) {
  if (m < 1) throw std::invalid_argument("convex_hull_sampled: resolution must be >= 1");
  const std::size_t n = C.size();
  const std::size_t d = C.dim();
  FiniteSet out(C.space(), "con~" + C.label());
  if (n == 0) return out;
  const std::size_t k = std::min(n, d + 1);  // points per combination

  // subsets of size k, weights on the simplex lattice {w : sum w_i = m}
  std::vector<std::size_t> subset(k);
  std::iota(subset.begin(), subset.end(), 0);
  std::vector<std::size_t> w(k);
  std::vector<double> pt(d);
  std::size_t produced = 0;

  auto emit_weights = [&](auto&& self, std::size_t pos, std::size_t left) -> void {
    if (pos + 1 == k) {
      w[pos] = left;
      std::fill(pt.begin(), pt.end(), 0.0);
      for (std::size_t i = 0; i < k; ++i) {
        const double wi = static_cast<double>(w[i]) / static_cast<double>(m);
        std::span<const double> p = C.point(subset[i]);
        for (std::size_t c = 0; c < d; ++c) pt[c] += wi * p[c];
      }
      if (++produced > cap)
        throw std::invalid_argument("convex_hull_sampled: enumeration exceeds cap");
      out.push_back(pt);
      return;
    }
    for (std::size_t v = 0; v <= left; ++v) {
      w[pos] = v;
      self(self, pos + 1, left - v);
    }
  };

  // enumerate k-subsets in lexicographic order
  while (true) {
    emit_weights(emit_weights, 0, m);
    std::size_t i = k;
    while (i-- > 0) {
      if (subset[i] + (k - i) <= n - 1) {
        ++subset[i];
        for (std::size_t j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
        break;
      }
      if (i == 0) return out;
    }
  }
}

double dist_to_hull(const FiniteSet& hull_vertices, std::span<const double> x) {
  const std::size_t d = hull_vertices.dim();
  if (hull_vertices.empty()) return kNoCutoff;
  if (d == 1) {
    double lo = hull_vertices.point(0)[0], hi = lo;
    for (std::size_t i = 1; i < hull_vertices.size(); ++i) {
      lo = std::min(lo, hull_vertices.point(i)[0]);
      hi = std::max(hi, hull_vertices.point(i)[0]);
    }
    return std::max({lo - x[0], x[0] - hi, 0.0});
  }
  const Norm norm = single_factor_norm(hull_vertices.space());
  return dist_to_poly(norm, to_p2(hull_vertices), {x[0], x[1]});
}

HullDistance hull_trunc_dl(const FiniteSet& C, const FiniteSet& D, double rho) {
  if (!C.space().same_geometry(D.space(), 1e-12))
    throw std::invalid_argument("hull_trunc_dl: space mismatch");
  const std::size_t d = C.dim();
  if (d == 0 || d > 2) throw std::invalid_argument("hull_trunc_dl: dimension must be 1 or 2");
  if (!(rho >= 0.0) || !std::isfinite(rho))
    throw std::invalid_argument("hull_trunc_dl: bad radius");
  single_factor_norm(C.space());

  HullDistance res;
  const FiniteSet hc = convex_hull_vertices(C);
  const FiniteSet hd = convex_hull_vertices(D);

  auto one_side = [&](const FiniteSet& qh, const FiniteSet& th) -> ExtReal {
    if (qh.empty()) return ExtReal(0.0);
    if (d == 1) {
      double lo = qh.point(0)[0], hi = lo;
      for (std::size_t i = 1; i < qh.size(); ++i) {
        lo = std::min(lo, qh.point(i)[0]);
        hi = std::max(hi, qh.point(i)[0]);
      }
      const double c = qh.space().centroid()[0];
      lo = std::max(lo, c - rho);
      hi = std::min(hi, c + rho);
      if (lo > hi) return ExtReal(0.0);
      if (th.empty()) return ExtReal::inf();
      const double a[1] = {lo}, b[1] = {hi};
      return ExtReal(std::max(dist_to_hull(th, a), dist_to_hull(th, b)));
    }
    TruncatedHull tq = truncate_hull_2d(to_p2(qh), qh.space(), rho);
    if (!tq.exact) {
      res.exact = false;
      res.note = tq.note;
    }
    if (tq.queries.empty()) return ExtReal(0.0);
    if (th.empty()) return ExtReal::inf();
    const Norm norm = qh.space().factors()[0].norm;
    const std::vector<P2> target = to_p2(th);
    double worst = 0.0;
    for (const P2& p : tq.queries) worst = std::max(worst, dist_to_poly(norm, target, p));
    return ExtReal(worst);
  };

  res.value = ext_max(one_side(hc, hd), one_side(hd, hc));
  return res;
}

}  // namespace setdist
