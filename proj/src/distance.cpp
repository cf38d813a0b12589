#include "setdist/distance.hpp"

#include <stdexcept>

namespace setdist {

namespace {

double min_dist_to(const MetricSpace& space, const double* x, const FiniteSet& D) {
  double best = kInf;
  const std::size_t nd = D.size();
  for (std::size_t j = 0; j < nd; ++j) {
    double d = space.distance_pruned(x, D.point_ptr(j), best);
    if (d < best) best = d;
  }
  return best;
}

void require_same_space(const FiniteSet& C, const FiniteSet& D) {
  if (!C.space().same_geometry(D.space()))
    throw std::invalid_argument("space mismatch between point clouds");
}

}  // namespace

ExtReal point_dist(std::span<const double> x, const FiniteSet& C) {
  if (x.size() != C.dim() && !C.empty())
    throw std::invalid_argument("query point dimension mismatch");
  if (C.empty()) return ExtReal::inf();
  return min_dist_to(C.space(), x.data(), C);
}

ExtReal excess_serial(const FiniteSet& C, const FiniteSet& D) {
  if (C.empty()) return 0.0;
  require_same_space(C, D);
  if (D.empty()) return ExtReal::inf();
  double worst = 0.0;
  for (std::size_t i = 0; i < C.size(); ++i) {
    double di = min_dist_to(C.space(), C.point_ptr(i), D);
    if (di > worst) worst = di;
  }
  return worst;
}

ExtReal excess(const FiniteSet& C, const FiniteSet& D) {
  if (C.empty()) return 0.0;
  require_same_space(C, D);
  if (D.empty()) return ExtReal::inf();
  const std::size_t nc = C.size();
  double worst = 0.0;
  const MetricSpace& space = C.space();
#pragma omp parallel for reduction(max : worst) schedule(static)
  for (std::size_t i = 0; i < nc; ++i) {
    double di = min_dist_to(space, C.point_ptr(i), D);
    if (di > worst) worst = di;
  }
  return worst;
}

FiniteSet ball_intersect(const FiniteSet& C, double rho) {
  if (!(rho >= 0)) throw std::invalid_argument("ball radius must be >= 0");
  FiniteSet out(C.space(), C.label());
  for (std::size_t i = 0; i < C.size(); ++i) {
    if (C.space().dist_to_centroid(C.point_ptr(i)) <= rho) out.push_back(C.point(i));
  }
  return out;
}

ExtReal trunc_hausdorff(const FiniteSet& C, const FiniteSet& D, double rho) {
  require_same_space(C, D);
  if (!(rho >= 0) || rho == kInf)
    throw std::invalid_argument("truncation radius must be finite and >= 0");
  return ext_max(excess(ball_intersect(C, rho), D), excess(ball_intersect(D, rho), C));
}

ExtReal trunc_hausdorff_serial(const FiniteSet& C, const FiniteSet& D, double rho) {
  require_same_space(C, D);
  if (!(rho >= 0) || rho == kInf)
    throw std::invalid_argument("truncation radius must be finite and >= 0");
  return ext_max(excess_serial(ball_intersect(C, rho), D),
                 excess_serial(ball_intersect(D, rho), C));
}

}  // namespace setdist
