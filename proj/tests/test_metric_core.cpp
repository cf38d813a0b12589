#include <algorithm>
#include <vector>

#include "doctest.h"
#include "setdist/distance.hpp"
#include "setdist/finite_set.hpp"
#include "setdist/rng.hpp"

using namespace setdist;

namespace {

FiniteSet reals(std::initializer_list<double> xs, std::string label = "") {
  FiniteSet s(MetricSpace::line(), std::move(label));
  for (double x : xs) s.push_back({x});
  return s;
}

FiniteSet random_cloud(Rng& rng, const MetricSpace& space, std::size_t n) {
  FiniteSet s(space);
  std::vector<double> pt(space.dim());
  for (std::size_t i = 0; i < n; ++i) {
    for (double& c : pt) c = rng.uniform(-3.0, 3.0);
    s.push_back(pt);
  }
  return s;
}

FiniteSet shuffled(const FiniteSet& C, Rng& rng) {
  std::vector<std::size_t> order(C.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (std::size_t i = order.size(); i > 1; --i)
    std::swap(order[i - 1], order[rng.below(i)]);
  FiniteSet out(C.space(), C.label());
  for (std::size_t i : order) out.push_back(C.point(i));
  return out;
}

}  // namespace

TEST_CASE("point_dist basics") {
  CHECK(point_dist(std::vector<double>{0.0}, reals({0.0})).raw() == 0.0);
  CHECK(point_dist(std::vector<double>{0.0}, reals({})).is_pos_inf());
  FiniteSet plane = FiniteSet::from_points(MetricSpace::euclidean(2), {{3.0, 4.0}});
  CHECK(point_dist(std::vector<double>{0.0, 0.0}, plane).raw() == doctest::Approx(5.0));
}

TEST_CASE("excess conventions") {
  CHECK(excess(reals({}), reals({})).raw() == 0.0);
  CHECK(excess(reals({0.0, 1.0}), reals({0.0})).raw() == doctest::Approx(1.0));
  CHECK(excess(reals({0.0}), reals({})).is_pos_inf());
}

TEST_CASE("ball_intersect") {
  CHECK(ball_intersect(reals({0.0}), 0.0).size() == 1);
  CHECK(ball_intersect(reals({2.0}), 1.0).empty());
  const FiniteSet kept = ball_intersect(reals({-1.0, 0.5, 3.0}), 1.0);
  REQUIRE(kept.size() == 2);
  CHECK(kept.point(0)[0] == -1.0);
  CHECK(kept.point(1)[0] == 0.5);
  CHECK_THROWS_AS(ball_intersect(reals({0.0}), -0.5), std::invalid_argument);
}

TEST_CASE("truncated distance on the line") {
  CHECK(trunc_hausdorff(reals({1.0, 2.0}), reals({1.0, 2.0}), 3.0).raw() == 0.0);
  // only C survives truncation; targets stay untruncated
  CHECK(trunc_hausdorff(reals({0.0}), reals({2.0}), 1.0).raw() == doctest::Approx(2.0));
  // computed value is eps, not 2*eps (flagged discrepancy with the
  // prose around the intersection example)
  CHECK(trunc_hausdorff(reals({0.0}), reals({-0.25}), 1.0).raw() == doctest::Approx(0.25));
}

TEST_CASE("product spaces use the max metric") {
  const MetricSpace prod = MetricSpace::product(MetricSpace::euclidean(2), MetricSpace::line());
  const double a[] = {0.0, 0.0, 0.0};
  const double b[] = {3.0, 4.0, 2.0};
  CHECK(prod.distance(a, b) == doctest::Approx(5.0));
  const double c[] = {0.3, 0.4, 9.0};
  CHECK(prod.distance(a, c) == doctest::Approx(9.0));

  const MetricSpace sup = MetricSpace::sup(2);
  const double u[] = {1.0, -2.0};
  const double v[] = {0.0, 0.0};
  CHECK(sup.distance(u, v) == doctest::Approx(2.0));
}

TEST_CASE("distance_pruned contract: exact below cutoff, lower-bounded above") {
  Rng rng(7);
  const MetricSpace space =
      MetricSpace::product(MetricSpace::euclidean(2), MetricSpace::sup(2));
  std::vector<double> x(4), y(4);
  for (int trial = 0; trial < 500; ++trial) {
    for (double& c : x) c = rng.uniform(-2.0, 2.0);
    for (double& c : y) c = rng.uniform(-2.0, 2.0);
    const double exact = space.distance(x.data(), y.data());
    const double cutoff = rng.uniform(0.0, 4.0);
    const double pruned = space.distance_pruned(x.data(), y.data(), cutoff);
    if (exact < cutoff)
      CHECK(pruned == exact);
    else
      CHECK(pruned >= cutoff);
  }
}

TEST_CASE("dl properties: symmetry, monotonicity, duplicates, shuffling") {
  Rng rng(42);
  const MetricSpace space = MetricSpace::euclidean(3);
  for (int trial = 0; trial < 50; ++trial) {
    FiniteSet C = random_cloud(rng, space, 1 + rng.below(20));
    FiniteSet D = random_cloud(rng, space, 1 + rng.below(20));
    const double rho1 = rng.uniform(0.0, 2.0);
    const double rho2 = rho1 + rng.uniform(0.0, 2.0);

    const ExtReal d12 = trunc_hausdorff(C, D, rho1);
    CHECK(trunc_hausdorff(D, C, rho1) == d12);
    CHECK(d12 <= trunc_hausdorff(C, D, rho2));
    CHECK(trunc_hausdorff(C, C, rho1).raw() == 0.0);

    FiniteSet dup = C;
    dup.push_back(C.point(rng.below(C.size())));
    CHECK(trunc_hausdorff(dup, D, rho1) == d12);

    CHECK(trunc_hausdorff(shuffled(C, rng), shuffled(D, rng), rho1) == d12);
  }
}

TEST_CASE("parallel kernel is bit-identical to the serial reference") {
  Rng rng(2024);
  const MetricSpace space = MetricSpace::sup(2);
  for (int trial = 0; trial < 30; ++trial) {
    FiniteSet C = random_cloud(rng, space, 1 + rng.below(60));
    FiniteSet D = random_cloud(rng, space, 1 + rng.below(60));
    CHECK(excess(C, D).raw() == excess_serial(C, D).raw());
    const double rho = rng.uniform(0.5, 3.0);
    CHECK(trunc_hausdorff(C, D, rho).raw() == trunc_hausdorff_serial(C, D, rho).raw());
  }
}

TEST_CASE("space mismatch is an input error") {
  FiniteSet a(MetricSpace::euclidean(2));
  FiniteSet b(MetricSpace::sup(2));
  a.push_back({0.0, 0.0});
  b.push_back({0.0, 0.0});
  CHECK_THROWS_AS((void)excess(a, b), std::invalid_argument);
  CHECK_THROWS_AS((void)trunc_hausdorff(a, b, 1.0), std::invalid_argument);
}

TEST_CASE("interval sampler hits both endpoints exactly") {
  const FiniteSet s = sample_interval(-1.0, 2.0, 0.7);
  REQUIRE(s.size() >= 2);
  CHECK(s.point(0)[0] == -1.0);
  CHECK(s.point(s.size() - 1)[0] == 2.0);
  const FiniteSet exact_fit = sample_interval(0.0, 1.0, 0.25);
  CHECK(exact_fit.size() == 5);
}
