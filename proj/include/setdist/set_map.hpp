#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "setdist/ext_real.hpp"
#include "setdist/finite_set.hpp"

namespace setdist {

using PointMap = std::function<std::vector<double>(std::span<const double>)>;

// Set-valued map with a caller-declared Lipschitz (Hoelder exponent 1)
// modulus relative to truncation at relative_radius; the declaration is
// machine-validated on sampled data before any checker trusts it.
struct LipschitzSetMap {
  std::function<FiniteSet(std::span<const double>)> evaluate;
  std::function<double(double)> modulus;  // kappa(rho), nondecreasing
  double relative_radius = kInf;          // rho* of the declaration
};

// Validates dl_{rho*}(S(x), S(xbar)) <= kappa(rho) * d(x, xbar) + tol on all
// pairs from `samples` within B(rho) (up to `budget` pairs). Returns a
// description of the first violation, if any.
std::optional<std::string> validate_set_map_modulus(const LipschitzSetMap& S,
                                                    const FiniteSet& samples, double rho,
                                                    double tol, std::size_t budget = 20000);

// Same contract for a single-valued map: d(F(x), F(xbar)) <= kappa * d + tol.
std::optional<std::string> validate_point_map_modulus(const PointMap& F,
                                                      const MetricSpace& codomain,
                                                      const std::function<double(double)>& kappa,
                                                      const FiniteSet& samples, double rho,
                                                      double tol, std::size_t budget = 20000);

}  // namespace setdist
