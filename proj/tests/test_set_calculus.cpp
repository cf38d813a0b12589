#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "setdist/distance.hpp"
#include "setdist/rng.hpp"
#include "setdist/set_ops.hpp"

using namespace setdist;

namespace {

FiniteSet pts1(std::initializer_list<double> xs, std::string label = "") {
  FiniteSet s(MetricSpace::line(), std::move(label));
  for (double x : xs) s.push_back({x});
  return s;
}

bool contains_point(const FiniteSet& s, std::initializer_list<double> p, double tol = 1e-12) {
  std::vector<double> q(p);
  const ExtReal d = point_dist(q, s);
  return d.is_finite() && d.raw() <= tol;
}

constexpr double kTol = 1e-9;

double raw(ExtReal v) {
  REQUIRE(v.is_finite());
  return v.raw();
}

}  // namespace

// --- constructors -----------------------------------------------------------

TEST_CASE("product_set enumerates the Cartesian product") {
  std::vector<FiniteSet> fs{pts1({0.0, 1.0}), pts1({2.0, 3.0, 4.0})};
  FiniteSet p = product_set(fs);
  CHECK(p.size() == 6);
  CHECK(p.dim() == 2);
  CHECK(contains_point(p, {0.0, 2.0}));
  CHECK(contains_point(p, {1.0, 4.0}));
  CHECK_FALSE(contains_point(p, {2.0, 2.0}));
  std::vector<FiniteSet> empty;
  CHECK_THROWS_AS(product_set(empty), std::invalid_argument);
}

TEST_CASE("union_set concatenates and minkowski_sum of {0} is the identity") {
  std::vector<FiniteSet> us{pts1({0.0, 1.0}), pts1({1.0, 5.0})};
  FiniteSet u = union_set(us);
  CHECK(u.size() == 4);  // multiset union; duplicates are harmless for dl

  std::vector<FiniteSet> ms{pts1({0.0}), pts1({-1.0, 2.0, 7.0})};
  FiniteSet s = minkowski_sum(ms);
  CHECK(s.size() == 3);
  CHECK(raw(excess(s, ms[1])) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(raw(excess(ms[1], s)) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("scale_set and image_set under the identity map") {
  FiniteSet c = pts1({1.0, -2.0});
  FiniteSet sc = scale_set(c, -3.0);
  CHECK(contains_point(sc, {-3.0}));
  CHECK(contains_point(sc, {6.0}));

  LipschitzSetMap id;
  id.evaluate = [](std::span<const double> x) {
    FiniteSet out(MetricSpace::line());
    out.push_back(x);
    return out;
  };
  id.modulus = [](double) { return 1.0; };
  FiniteSet img = image_set(id, c);
  CHECK(img.size() == c.size());
  CHECK(raw(excess(img, c)) == 0.0);
}

TEST_CASE("indicator_epigraph builds the vertical lattice") {
  FiniteSet c = pts1({0.0});
  FiniteSet epi = indicator_epigraph(c, 1.0, 0.5);
  CHECK(epi.size() == 3);  // alpha in {0, 0.5, 1}
  CHECK(contains_point(epi, {0.0, 0.0}));
  CHECK(contains_point(epi, {0.0, 0.5}));
  CHECK(contains_point(epi, {0.0, 1.0}));
}

// --- check_triangle ----------------------------------------------------------

TEST_CASE("triangle inequality checker on singletons") {
  FiniteSet c0 = pts1({0.0}), c1 = pts1({1.0}), c2 = pts1({2.0});

  BoundReport same = check_triangle(c0, c0, c0, 1.0, 5.0, kTol);
  CHECK(same.status() == "pass");
  CHECK(raw(same.lhs) == 0.0);
  CHECK(raw(same.rhs) == 0.0);

  BoundReport r = check_triangle(c0, c1, c2, 1.0, 5.0, kTol);
  CHECK(r.status() == "pass");
  CHECK(raw(r.lhs) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(raw(r.rhs) == doctest::Approx(2.0).epsilon(1e-12));

  // rho_bar = 3 violates rho_bar > 2 rho + max dist(centroid, C_i) = 4.
  BoundReport na = check_triangle(c0, c1, c2, 1.0, 3.0, kTol);
  CHECK(na.status() == "not-applicable");
  CHECK_FALSE(na.applicable);
  CHECK(na.passed);  // vacuously

  FiniteSet plane(MetricSpace::euclidean(2));
  plane.push_back({0.0, 0.0});
  CHECK_THROWS_AS(check_triangle(c0, c1, plane, 1.0, 5.0, kTol), std::invalid_argument);
}

// --- check_product -----------------------------------------------------------

TEST_CASE("product checker asserts equality when both products meet the ball") {
  std::vector<FiniteSet> cs{pts1({0.0}), pts1({0.0})};
  std::vector<FiniteSet> ds{pts1({1.0}), pts1({0.0})};
  BoundReport r = check_product(cs, ds, 2.0, kTol);
  CHECK(r.status() == "pass");
  CHECK(raw(r.lhs) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(raw(r.rhs) == doctest::Approx(1.0).epsilon(1e-12));

  BoundReport same = check_product(cs, cs, 2.0, kTol);
  CHECK(same.status() == "pass");
  CHECK(raw(same.lhs) == 0.0);

  // Truncation empties the D product: the inequality path still reports pass
  // and the nonemptiness flags are recorded as notes.
  std::vector<FiniteSet> cs2{pts1({0.0}), pts1({0.0})};
  std::vector<FiniteSet> ds2{pts1({3.0}), pts1({0.0})};
  BoundReport far = check_product(cs2, ds2, 1.0, kTol);
  CHECK(far.status() == "pass");
  CHECK(raw(far.lhs) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(raw(far.rhs) == doctest::Approx(3.0).epsilon(1e-12));
  bool saw_flag = false;
  for (const std::string& n : far.notes)
    if (n.find("product D meets B(rho): no") != std::string::npos) saw_flag = true;
  CHECK(saw_flag);
}

// --- check_indicator ---------------------------------------------------------

TEST_CASE("indicator epigraph distance equals the base-set distance") {
  BoundReport r = check_indicator(pts1({0.0}), pts1({1.0}), 2.0, 0.1, kTol);
  CHECK(r.status() == "pass");
  CHECK(raw(r.lhs) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(raw(r.rhs) == doctest::Approx(1.0).epsilon(1e-12));

  BoundReport r2 = check_indicator(pts1({0.0}), pts1({-0.25}), 2.0, 0.1, kTol);
  CHECK(r2.status() == "pass");
  CHECK(raw(r2.lhs) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(raw(r2.rhs) == doctest::Approx(0.25).epsilon(1e-12));

  BoundReport same = check_indicator(pts1({0.5}), pts1({0.5}), 1.0, 0.25, kTol);
  CHECK(same.status() == "pass");
  CHECK(raw(same.lhs) == 0.0);
}

// --- check_union -------------------------------------------------------------

TEST_CASE("union checker") {
  std::vector<FiniteSet> cs{pts1({0.0}), pts1({1.0})};
  std::vector<FiniteSet> ds{pts1({0.1}), pts1({0.9})};
  BoundReport r = check_union(cs, ds, 2.0, kTol);
  CHECK(r.status() == "pass");
  CHECK(raw(r.lhs) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(raw(r.rhs) == doctest::Approx(0.1).epsilon(1e-12));

  // Truncation hides the far components on BOTH sides of the inequality:
  // dl_1({5},{5.5}) is 0 because neither point meets B(1), so lhs = rhs = 0.
  std::vector<FiniteSet> cs2{pts1({0.0}), pts1({5.0})};
  std::vector<FiniteSet> ds2{pts1({0.0}), pts1({5.5})};
  BoundReport far = check_union(cs2, ds2, 1.0, kTol);
  CHECK(far.status() == "pass");
  CHECK(raw(far.lhs) == 0.0);
  CHECK(raw(far.rhs) == 0.0);

  std::vector<FiniteSet> mismatched{pts1({0.0})};
  CHECK_THROWS_AS(check_union(mismatched, ds2, 1.0, kTol), std::invalid_argument);
}

// --- intersections -----------------------------------------------------------

TEST_CASE("outer intersection approximation covers the true intersection") {
  SUBCASE("identical lists") {
    std::vector<FiniteSet> cs{pts1({0.0, 1.0}), pts1({0.0, 2.0})};
    BoundReport r = check_intersection_outer(cs, cs, kTol);
    CHECK(r.status() == "pass");
    CHECK(raw(r.lhs) == 0.0);
  }
  SUBCASE("symmetric eps shift") {
    std::vector<FiniteSet> cs{pts1({0.0}), pts1({0.0})};
    std::vector<FiniteSet> ds{pts1({-0.25}), pts1({0.25})};
    FiniteSet outer = intersection_outer(cs, ds);
    CHECK(contains_point(outer, {0.0}));
    // every surviving candidate is the origin (it appears once per C_a)
    CHECK(raw(excess(outer, pts1({0.0}))) == 0.0);
    BoundReport r = check_intersection_outer(cs, ds, kTol);
    CHECK(r.status() == "pass");
    CHECK(raw(r.lhs) == 0.0);
  }
}

TEST_CASE("no general intersection rule: small component error, distance-2 intersections") {
  // C1 = D1 = [-1,0] u [1,2]; C2 = [-1,0] u [2,3]; D2 = [-1,0] u [2.5,3].
  FiniteSet c1 = sample_interval(-1.0, 0.0, 0.1);
  c1.append(sample_interval(1.0, 2.0, 0.1));
  FiniteSet d1 = c1;
  FiniteSet c2 = sample_interval(-1.0, 0.0, 0.1);
  c2.append(sample_interval(2.0, 3.0, 0.1));
  FiniteSet d2 = sample_interval(-1.0, 0.0, 0.1);
  d2.append(sample_interval(2.5, 3.0, 0.1));

  const double rho = 4.0;
  CHECK(raw(trunc_hausdorff(c1, d1, rho)) == 0.0);
  CHECK(raw(trunc_hausdorff(c2, d2, rho)) == doctest::Approx(0.5).epsilon(1e-12));

  std::vector<FiniteSet> cs{c1, c2}, ds{d1, d2};
  FiniteSet ci = intersect_clouds(cs);
  FiniteSet di = intersect_clouds(ds);
  CHECK(contains_point(ci, {2.0}));
  CHECK_FALSE(contains_point(di, {2.0}, 0.4));
  CHECK(raw(trunc_hausdorff(ci, di, rho)) == doctest::Approx(2.0).epsilon(1e-12));
}

// --- check_hull --------------------------------------------------------------

TEST_CASE("hull checker: sup-norm cross pair violates the boundedness hypothesis") {
  MetricSpace sup2 = MetricSpace::sup(2);
  FiniteSet c(sup2), d(sup2);
  c.push_back({-2.0, 2.0});
  c.push_back({2.0, -2.0});
  d.push_back({2.0, 2.0});
  d.push_back({-2.0, -2.0});

  BoundReport r = check_hull(c, d, 1.0, kTol);
  CHECK(r.status() == "not-applicable");
  CHECK_FALSE(r.applicable);
  CHECK(r.passed);  // vacuous: the hypothesis C,D within B(rho) fails
  CHECK(raw(r.lhs) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(raw(r.rhs) == 0.0);
}

TEST_CASE("hull checker on intervals and shifted triangles") {
  BoundReport r = check_hull(pts1({0.0, 1.0}), pts1({0.0, 0.9}), 2.0, kTol);
  CHECK(r.status() == "pass");
  CHECK(raw(r.lhs) == doctest::Approx(0.1).epsilon(1e-9));
  CHECK(raw(r.rhs) == doctest::Approx(0.1).epsilon(1e-12));

  MetricSpace e2 = MetricSpace::euclidean(2);
  FiniteSet tri(e2), tri2(e2);
  tri.push_back({0.0, 0.0});
  tri.push_back({0.8, 0.0});
  tri.push_back({0.0, 0.8});
  tri2.push_back({0.1, 0.0});
  tri2.push_back({0.9, 0.0});
  tri2.push_back({0.1, 0.8});
  BoundReport rt = check_hull(tri, tri2, 2.0, kTol);
  CHECK(rt.status() == "pass");
  CHECK(raw(rt.lhs) == doctest::Approx(0.1).epsilon(1e-9));
  CHECK(raw(rt.rhs) == doctest::Approx(0.1).epsilon(1e-12));

  BoundReport same = check_hull(tri, tri, 2.0, kTol);
  CHECK(same.status() == "pass");
  CHECK(raw(same.lhs) == 0.0);
}

// --- check_lipschitz_image ---------------------------------------------------

namespace {

LipschitzSetMap affine_map(double scale, double shift, double kappa) {
  LipschitzSetMap m;
  m.evaluate = [scale, shift](std::span<const double> x) {
    FiniteSet out(MetricSpace::line());
    out.push_back({scale * x[0] + shift});
    return out;
  };
  m.modulus = [kappa](double) { return kappa; };
  m.relative_radius = kInf;
  return m;
}

}  // namespace

TEST_CASE("image checker under Lipschitz set-valued maps") {
  FiniteSet probes = pts1({0.0, 0.25, 0.5, 0.75, 1.0});

  SUBCASE("identity, identical sets") {
    LipschitzSetMap id = affine_map(1.0, 0.0, 1.0);
    RadiusBundle radii;
    radii.rho = 1.0;
    BoundReport r = check_lipschitz_image(id, id, pts1({0.3}), pts1({0.3}), probes, radii, kTol);
    CHECK(r.status() == "pass");
    CHECK(raw(r.lhs) == 0.0);
  }
  SUBCASE("same doubling map, shifted argument sets") {
    LipschitzSetMap dbl = affine_map(2.0, 0.0, 2.0);
    RadiusBundle radii;
    radii.rho = 5.0;
    radii.rho_bar = 5.0;
    radii.rho_hat = 6.0;
    radii.rho_star = 12.0;  // > 2 rho + max image anchor = 11
    BoundReport r =
        check_lipschitz_image(dbl, dbl, pts1({0.0}), pts1({0.5}), probes, radii, kTol);
    CHECK(r.status() == "pass");
    CHECK(raw(r.lhs) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(raw(r.rhs) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("shifted map vs identity on equal sets") {
    LipschitzSetMap sh = affine_map(1.0, 0.1, 1.0);
    LipschitzSetMap id = affine_map(1.0, 0.0, 1.0);
    RadiusBundle radii;
    radii.rho = 5.0;
    radii.rho_bar = 5.0;
    radii.rho_hat = 6.0;
    radii.rho_star = 12.0;
    FiniteSet c = pts1({0.0, 1.0});
    BoundReport r = check_lipschitz_image(sh, id, c, c, probes, radii, kTol);
    CHECK(r.status() == "pass");
    CHECK(raw(r.lhs) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(raw(r.rhs) == doctest::Approx(0.1).epsilon(1e-12));
  }
}

// --- check_sum ---------------------------------------------------------------

TEST_CASE("sum checker: sharpness, strictness, and the refusal path") {
  SUBCASE("sharp at twice the shift") {
    std::vector<FiniteSet> cs{pts1({0.0}), pts1({1.0})};
    std::vector<FiniteSet> ds{pts1({0.3}), pts1({1.3})};
    BoundReport r = check_sum(cs, ds, 10.0, kTol);
    CHECK(r.status() == "pass");
    CHECK(raw(r.lhs) == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(raw(r.rhs) == doctest::Approx(0.6).epsilon(1e-12));
  }
  SUBCASE("strict inequality") {
    std::vector<FiniteSet> cs{pts1({1.0}), pts1({-1.0})};
    std::vector<FiniteSet> ds{pts1({2.0}), pts1({-2.0})};
    BoundReport r = check_sum(cs, ds, 5.0, kTol);
    CHECK(r.status() == "pass");
    CHECK(raw(r.lhs) == 0.0);
    CHECK(raw(r.rhs) == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("single unbounded pair measured at m rho") {
    std::vector<FiniteSet> cs{pts1({0.0, 10.0}), pts1({0.0})};
    std::vector<FiniteSet> ds{pts1({0.0, 10.0}), pts1({0.2})};
    BoundReport r = check_sum(cs, ds, 5.0, kTol);
    CHECK(r.status() == "pass");
    CHECK(raw(r.lhs) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(raw(r.rhs) == doctest::Approx(0.2).epsilon(1e-12));
  }
  SUBCASE("two unbounded pairs are refused") {
    std::vector<FiniteSet> cs{pts1({0.0, 10.0}), pts1({0.0, -10.0})};
    std::vector<FiniteSet> ds{pts1({0.0, 10.0}), pts1({0.0, -10.0})};
    CHECK_THROWS_AS(check_sum(cs, ds, 5.0, kTol), std::invalid_argument);
  }
}

// --- check_scaling -----------------------------------------------------------

TEST_CASE("scaling checker") {
  SUBCASE("different scalars on a singleton") {
    BoundReport r = check_scaling(pts1({1.0}), pts1({1.0}), 1.0, 2.0, 3.0, 8.08, kTol);
    CHECK(r.status() == "pass");
    CHECK(raw(r.lhs) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(raw(r.rhs) == doctest::Approx(8.08).epsilon(1e-12));

    // rho_bar at 8 fails the strict hypothesis (threshold is exactly 8).
    BoundReport na = check_scaling(pts1({1.0}), pts1({1.0}), 1.0, 2.0, 3.0, 8.0, kTol);
    CHECK(na.status() == "not-applicable");
  }
  SUBCASE("equal scalars, shifted singletons") {
    BoundReport r = check_scaling(pts1({1.0}), pts1({1.5}), 2.0, 2.0, 3.0, 5.0, kTol);
    CHECK(r.status() == "pass");
    CHECK(raw(r.lhs) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(raw(r.rhs) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("zero scalar refused") {
    CHECK_THROWS_AS(check_scaling(pts1({1.0}), pts1({1.0}), 0.0, 1.0, 1.0, 9.0, kTol),
                    std::invalid_argument);
  }
}

// --- check_convex_level_sets -------------------------------------------------

TEST_CASE("convex level-set checker") {
  const double h = 0.01;
  GriddedFunction absf = GriddedFunction::line(
      -2.0, 2.0, h, [](double x) { return ExtReal(std::abs(x)); }, "abs");

  SUBCASE("identical functions") {
    BoundReport r = check_convex_level_sets(absf, absf, 1.0, 1.0, 2.0, kTol);
    CHECK(r.status() == "pass");
    CHECK(raw(r.lhs) == 0.0);
    CHECK(raw(r.rhs) == 0.0);
  }
  SUBCASE("vertical shift by 0.1") {
    GriddedFunction g = absf.shifted(0.1);
    BoundReport r = check_convex_level_sets(absf, g, 1.0, 1.0, 2.0, kTol);
    CHECK(r.status() == "pass");
    // level sets [-1,1] vs [-0.9,0.9]; eta = 0.1; bound 0.1 + 2.1 * 0.1
    CHECK(raw(r.lhs) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(raw(r.rhs) == doctest::Approx(0.31).epsilon(1e-9));
  }
  SUBCASE("horizontal shift by 0.2") {
    GriddedFunction g = GriddedFunction::line(
        -2.0, 2.0, h, [](double x) { return ExtReal(std::abs(x - 0.2)); }, "abs-shift");
    BoundReport r = check_convex_level_sets(absf, g, 1.0, 1.0, 2.0, kTol);
    CHECK(r.status() == "pass");
    CHECK(raw(r.lhs) == doctest::Approx(0.2).epsilon(1e-12));
    // Under the max metric on X x R the epigraph distance of a 0.2-shift is
    // 0.1 (diagonal moves): rhs = 0.1 + (2.1 + 0.2) * (0.1 / 1.1).
    CHECK(raw(r.rhs) == doctest::Approx(0.1 + 2.3 * (0.1 / 1.1)).epsilon(1e-9));
  }
  SUBCASE("nonconvex sample rejected") {
    GriddedFunction bump = GriddedFunction::line(
        -2.0, 2.0, 0.1, [](double x) { return ExtReal(-std::abs(x)); }, "cave");
    BoundReport r = check_convex_level_sets(bump, bump, 1.0, 1.0, 2.0, kTol);
    CHECK(r.status() == "not-applicable");
  }
}

// --- randomized property suite ----------------------------------------------

namespace {

FiniteSet random_cloud(Rng& rng, const MetricSpace& space, std::size_t max_pts, double span) {
  FiniteSet s(space);
  const std::size_t n = 1 + rng.below(max_pts);
  std::vector<double> p(space.dim());
  for (std::size_t i = 0; i < n; ++i) {
    for (double& v : p) v = rng.uniform(-span, span);
    s.push_back(p);
  }
  return s;
}

}  // namespace

TEST_CASE("randomized calculus suite: checkers hold on admissible instances") {
  Rng rng(20250817);
  for (int iter = 0; iter < 120; ++iter) {
    const std::size_t dim = 1 + rng.below(3);
    const MetricSpace space =
        rng.below(2) == 0 ? MetricSpace::euclidean(dim) : MetricSpace::sup(dim);
    const double rho = rng.uniform(0.5, 3.0);
    const double span = rho;  // keep everything inside B(rho)

    FiniteSet c1 = random_cloud(rng, space, 12, span);
    FiniteSet c2 = random_cloud(rng, space, 12, span);
    FiniteSet c3 = random_cloud(rng, space, 12, span);
    FiniteSet d1 = random_cloud(rng, space, 12, span);
    FiniteSet d2 = random_cloud(rng, space, 12, span);

    CAPTURE(iter);
    {
      const double anchor_bound = dim * span * 2 + 2 * rho;  // generous
      BoundReport r = check_triangle(c1, c2, c3, rho, anchor_bound + 1.0, kTol);
      CHECK(r.status() == "pass");
    }
    {
      std::vector<FiniteSet> cs{c1, c2}, ds{d1, d2};
      BoundReport r = check_union(cs, ds, rho, kTol);
      CHECK(r.status() == "pass");
      BoundReport rs = check_sum(cs, ds, 2.0 * dim * span, kTol);
      CHECK(rs.status() == "pass");
    }
    {
      std::vector<FiniteSet> cs{c1, c2}, ds{d1, d2};
      BoundReport r = check_product(cs, ds, rho, kTol);
      CHECK(r.status() == "pass");
    }
    {
      const double lam = rng.uniform(0.5, 2.0);
      const double mu = rng.uniform(0.5, 2.0);
      const double threshold =
          (2.0 * rho + std::max(lam, mu) * (dim * span * 2.0 + 1.0)) / std::min(lam, mu);
      BoundReport r = check_scaling(c1, d1, lam, mu, rho, threshold + 1.0, kTol);
      CHECK(r.status() == "pass");
    }
    if (dim <= 2) {
      BoundReport r = check_hull(c1, d1, dim * span * 2.0 + 1.0, kTol);
      CHECK(r.status() == "pass");
    }
  }
}
