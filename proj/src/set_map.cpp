#include "setdist/set_map.hpp"

#include <cmath>
#include <cstdio>

#include "setdist/distance.hpp"

namespace setdist {
namespace {

std::string violation(const char* what, std::size_t i, std::size_t j, double lhs, double rhs) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%s: pair (%zu, %zu) gives %.6g > allowed %.6g", what, i, j,
                lhs, rhs);
  return buf;
}

// Indices of samples inside B(rho), then a deterministic stride keeping the
// pair count within budget.
std::vector<std::size_t> in_ball(const FiniteSet& samples, double rho) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < samples.size(); ++i)
    if (samples.space().dist_to_centroid(samples.point_ptr(i)) <= rho) idx.push_back(i);
  return idx;
}

std::size_t pair_stride(std::size_t n, std::size_t budget) {
  const std::size_t pairs = n * (n > 0 ? n - 1 : 0) / 2;
  if (pairs <= budget || budget == 0) return 1;
  return pairs / budget + 1;
}

}  // namespace

std::optional<std::string> validate_set_map_modulus(const LipschitzSetMap& S,
                                                    const FiniteSet& samples, double rho,
                                                    double tol, std::size_t budget) {
  if (!S.evaluate || !S.modulus) return "set map missing evaluator or modulus";
  const std::vector<std::size_t> idx = in_ball(samples, rho);
  const double kappa = S.modulus(rho);
  std::vector<FiniteSet> images;
  images.reserve(idx.size());
  for (std::size_t i : idx) images.push_back(S.evaluate(samples.point(i)));

  const std::size_t stride = pair_stride(idx.size(), budget);
  std::size_t counter = 0;
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      if (counter++ % stride != 0) continue;
      const double d =
          samples.space().distance(samples.point_ptr(idx[a]), samples.point_ptr(idx[b]));
      // relative_radius = +inf declares an untruncated modulus
      const ExtReal dl =
          std::isfinite(S.relative_radius)
              ? trunc_hausdorff(images[a], images[b], S.relative_radius)
              : ext_max(excess(images[a], images[b]), excess(images[b], images[a]));
      const double allowed = kappa * d + tol;
      if (!(dl <= ExtReal(allowed)))
        return violation("set-map modulus", idx[a], idx[b],
                         dl.is_finite() ? dl.raw() : kInf, allowed);
    }
  }
  return std::nullopt;
}

std::optional<std::string> validate_point_map_modulus(const PointMap& F,
                                                      const MetricSpace& codomain,
                                                      const std::function<double(double)>& kappa,
                                                      const FiniteSet& samples, double rho,
                                                      double tol, std::size_t budget) {
  if (!F || !kappa) return "point map missing evaluator or modulus";
  const std::vector<std::size_t> idx = in_ball(samples, rho);
  const double k = kappa(rho);
  std::vector<std::vector<double>> images;
  images.reserve(idx.size());
  for (std::size_t i : idx) images.push_back(F(samples.point(i)));

  const std::size_t stride = pair_stride(idx.size(), budget);
  std::size_t counter = 0;
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      if (counter++ % stride != 0) continue;
      const double d =
          samples.space().distance(samples.point_ptr(idx[a]), samples.point_ptr(idx[b]));
      const double dy = codomain.distance(images[a].data(), images[b].data());
      if (!(dy <= k * d + tol))
        return violation("point-map modulus", idx[a], idx[b], dy, k * d + tol);
    }
  }
  return std::nullopt;
}

}  // namespace setdist
