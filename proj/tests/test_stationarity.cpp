#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "setdist/rng.hpp"
#include "setdist/stationarity.hpp"

using namespace setdist;

namespace {

constexpr double kTol = 1e-9;

SmoothFn quadratic(double a, double b, double c) {
  return SmoothFn{[=](std::span<const double> x) { return a * x[0] * x[0] + b * x[0] + c; },
                  [=](std::span<const double> x) {
                    return std::vector<double>{2.0 * a * x[0] + b};
                  }};
}

// Random convex piecewise-linear function with `k` breakpoints in
// [-spread, spread] and slopes built from nonnegative increments.
PwlConvex random_pwl(Rng& rng, int k, double spread) {
  std::vector<double> bps;
  for (int i = 0; i < k; ++i) bps.push_back(rng.uniform(-spread, spread));
  std::sort(bps.begin(), bps.end());
  for (std::size_t i = 1; i < bps.size(); ++i)
    if (bps[i] - bps[i - 1] < 1e-3) bps[i] = bps[i - 1] + 1e-3;
  std::vector<double> slopes;
  double s = rng.uniform(-2.0, 0.0);
  slopes.push_back(s);
  for (int i = 0; i < k; ++i) {
    s += rng.uniform(0.2, 1.5);
    slopes.push_back(s);
  }
  return PwlConvex(std::move(bps), std::move(slopes));
}

}  // namespace

TEST_CASE("gradient evaluation falls back to central differences") {
  const SmoothFn f = quadratic(1.0, 0.5, 2.0);
  const std::vector<double> x{0.7};
  const auto analytic = eval_gradient(f, x, 1e-4);
  CHECK(analytic[0] == doctest::Approx(1.9));

  SmoothFn numeric = f;
  numeric.gradient = nullptr;
  const auto fd = eval_gradient(numeric, x, 1e-4);
  CHECK(fd[0] == doctest::Approx(1.9).epsilon(1e-6));
  CHECK_THROWS_AS(eval_gradient(numeric, x, 0.0), std::invalid_argument);
}

TEST_CASE("difference-of-convex bound: identical data") {
  const PwlConvex half({0.0}, {-0.5, 0.5});
  const PwlConvex absfn({0.0}, {-1.0, 1.0});
  const BoundReport r = dc_mapping_bound(half, absfn, half, absfn, 1.0, 0.25, kTol);
  CHECK(r.applicable);
  CHECK(r.passed);
  CHECK(r.lhs == ExtReal(0.0));
  CHECK(r.rhs == ExtReal(0.0));
}

TEST_CASE("difference-of-convex bound: horizontal shift") {
  // f = 0.5|x| - |x| vs g = 0.5|x| - |x - 0.1|: the bound ranges over
  // per-point subdifferential distances, which jump to 2 at x = 0 where
  // the kink of f2 faces a flat stretch of g2.
  const PwlConvex half({0.0}, {-0.5, 0.5});
  const PwlConvex absfn({0.0}, {-1.0, 1.0});
  const PwlConvex absfn_shift({0.1}, {-1.0, 1.0});
  const BoundReport r =
      dc_mapping_bound(half, absfn, half, absfn_shift, 1.0, 0.1, kTol);
  CHECK(r.applicable);
  CHECK(r.passed);
  CHECK(r.rhs.raw() == doctest::Approx(2.0));
  CHECK(r.lhs.raw() > 0.01);
  CHECK(r.lhs.raw() <= 0.6);
}

TEST_CASE("difference-of-convex bound: seeded quadruples") {
  Rng rng(42);
  for (int trial = 0; trial < 10; ++trial) {
    const PwlConvex f1 = random_pwl(rng, 1, 0.8);
    const PwlConvex f2 = random_pwl(rng, 1, 0.8);
    const PwlConvex g1 = f1;
    // Horizontal perturbation of f2's breakpoints.
    std::vector<double> bps = f2.breakpoints();
    const double t = rng.uniform(-0.05, 0.05);
    for (double& b : bps) b += t;
    const PwlConvex g2(std::move(bps), f2.slopes());
    const BoundReport r = dc_mapping_bound(f1, f2, g1, g2, 0.75, 0.25, kTol);
    CHECK(r.applicable);
    CHECK(r.passed);
  }
}

TEST_CASE("stationarity system of an inequality-constrained problem") {
  KktProblem p;
  p.f0 = quadratic(1.0, 0.0, 0.0);
  p.constraints.push_back(quadratic(0.0, 1.0, -1.0));  // x - 1 <= 0
  p.xnodes = sample_interval(-1.2, 1.2, 0.4);
  p.y_max = 1.0;
  p.y_step = 0.5;
  p.ray_extent = 1.0;
  p.ray_step = 0.5;
  const GriddedMapping S = kkt_mapping(p, "kkt");
  CHECK(S.domain().dim() == 2);
  CHECK(S.codomain().dim() == 4);  // 3m + n with m = n = 1
  CHECK(S.size() == 7 * 3);
  CHECK(S.codomain_extent == 1.0);
  // Each value stacks the moving-endpoint ray samples: (K+1)^2 tuples.
  CHECK(S.value(0).size() == 9);

  KktProblem empty = p;
  empty.constraints.clear();
  CHECK_THROWS_AS(kkt_mapping(empty), std::invalid_argument);
}

TEST_CASE("first-order system bound: zero perturbation is exact") {
  KktProblem p;
  p.f0 = quadratic(1.0, 0.0, 0.0);
  p.constraints.push_back(quadratic(0.0, 1.0, -1.0));
  p.xnodes = sample_interval(-1.2, 1.2, 0.2);
  p.y_max = 1.2;
  p.y_step = 0.2;
  p.ray_extent = 2.0;
  p.ray_step = 0.25;
  const BoundReport r = check_kkt_bound(p, p, 1.0, kTol);
  CHECK(r.applicable);
  CHECK(r.passed);
  CHECK(r.lhs == ExtReal(0.0));
  CHECK(r.rhs == ExtReal(0.0));
}

TEST_CASE("first-order system bound: perturbed objective and constraint") {
  KktProblem pf;
  pf.f0 = quadratic(1.0, 0.0, 0.0);                     // x^2
  pf.constraints.push_back(quadratic(0.0, 1.0, -1.0));  // x - 1
  pf.xnodes = sample_interval(-1.2, 1.2, 0.2);
  pf.y_max = 1.2;
  pf.y_step = 0.2;
  pf.ray_extent = 2.0;
  pf.ray_step = 0.25;

  KktProblem pg = pf;
  pg.f0 = quadratic(1.0, 0.05, 0.0);                     // x^2 + 0.05 x
  pg.constraints[0] = quadratic(0.0, 1.0, -1.05);        // x - 1.05

  const BoundReport r = check_kkt_bound(pf, pg, 1.0, kTol);
  CHECK(r.applicable);
  CHECK(r.passed);
  // delta = 0.05 (constraint drift), eta = 0.05 (objective gradient drift);
  // bound max{delta, rho delta, (1 + m rho) eta} = 0.1.
  CHECK(r.rhs.raw() == doctest::Approx(0.1));
  CHECK(r.lhs.raw() <= 0.05 + 1e-9);
  CHECK(r.lhs.raw() > 0.0);
}

TEST_CASE("first-order system bound flags a short multiplier box") {
  KktProblem p;
  p.f0 = quadratic(1.0, 0.0, 0.0);
  p.constraints.push_back(quadratic(0.0, 1.0, -1.0));
  p.xnodes = sample_interval(-1.2, 1.2, 0.4);
  p.y_max = 0.5;  // < rho
  p.y_step = 0.25;
  p.ray_extent = 1.0;
  p.ray_step = 0.5;
  const BoundReport r = check_kkt_bound(p, p, 1.0, kTol);
  CHECK_FALSE(r.applicable);
  CHECK(r.status() == "not-applicable");
}

TEST_CASE("composite stationarity: identical data") {
  const PwlConvex absfn({0.0}, {-1.0, 1.0});
  const SmoothFn F{[](std::span<const double> x) { return x[0]; },
                   [](std::span<const double>) {
                     return std::vector<double>{1.0};
                   }};
  const FiniteSet xs = sample_interval(-1.1, 1.1, 0.2);
  const BoundReport r =
      composite_stationarity_bound(absfn, absfn, F, F, xs, 1.0, 0.1, kTol);
  CHECK(r.applicable);
  CHECK(r.passed);
  CHECK(r.lhs == ExtReal(0.0));
  CHECK(r.rhs == ExtReal(0.0));
}

TEST_CASE("composite stationarity: vertical shift of the outer function") {
  // psi = phi + 1 leaves every subgradient unchanged, so the graphs agree.
  const PwlConvex phi({0.0}, {-1.0, 1.0}, 0.0);
  const PwlConvex psi({0.0}, {-1.0, 1.0}, 1.0);
  const SmoothFn F{[](std::span<const double> x) { return x[0]; },
                   [](std::span<const double>) {
                     return std::vector<double>{1.0};
                   }};
  const FiniteSet xs = sample_interval(-1.1, 1.1, 0.2);
  const BoundReport r =
      composite_stationarity_bound(phi, psi, F, F, xs, 1.0, 0.1, kTol);
  CHECK(r.applicable);
  CHECK(r.passed);
  CHECK(r.lhs == ExtReal(0.0));
  CHECK(r.rhs == ExtReal(0.0));
}

TEST_CASE("composite stationarity: shifted kink and drifted inner map") {
  const PwlConvex phi({0.0}, {-1.0, 1.0});
  const PwlConvex psi({0.1}, {-1.0, 1.0});
  const SmoothFn F{[](std::span<const double> x) { return x[0]; },
                   [](std::span<const double>) {
                     return std::vector<double>{1.0};
                   }};
  const SmoothFn G{[](std::span<const double> x) { return 1.02 * x[0]; },
                   [](std::span<const double>) {
                     return std::vector<double>{1.02};
                   }};
  const FiniteSet xs = sample_interval(-1.2, 1.2, 0.2);
  const BoundReport r =
      composite_stationarity_bound(phi, psi, F, G, xs, 1.0, 0.1, kTol);
  CHECK(r.applicable);
  CHECK(r.passed);
  // sup_{|x|<=1} |G - F| = 0.02, subgradient graph shift 0.1, gradient drift
  // branch rho * 0.02; the first branch dominates: 0.12.
  CHECK(r.rhs.raw() == doctest::Approx(0.12).epsilon(1e-6));
  CHECK(r.lhs.raw() > 0.01);
  CHECK(r.lhs.raw() <= r.rhs.raw() + kTol);
}
