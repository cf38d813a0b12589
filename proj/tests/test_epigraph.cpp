#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "setdist/epigraph.hpp"
#include "setdist/rng.hpp"
#include "setdist/set_ops.hpp"

using namespace setdist;

namespace {

constexpr double kTol = 1e-9;

double raw(ExtReal v) {
  REQUIRE(v.is_finite());
  return v.raw();
}

GriddedFunction fn_line(double a, double b, double h, const std::function<double(double)>& f,
                        std::string name) {
  return GriddedFunction::line(
      a, b, h, [&](double x) { return ExtReal(f(x)); }, std::move(name));
}

// f + indicator of [lo, hi] on the same grid.
GriddedFunction restricted(double a, double b, double h,
                           const std::function<double(double)>& f, double lo, double hi,
                           std::string name) {
  return GriddedFunction::line(
      a, b, h,
      [&](double x) {
        if (x < lo - 1e-12 || x > hi + 1e-12) return ExtReal::inf();
        return ExtReal(f(x));
      },
      std::move(name));
}

}  // namespace

// --- epi_cloud ---------------------------------------------------------------

TEST_CASE("epi_cloud lattice structure") {
  GriddedFunction zero = fn_line(-1.0, 1.0, 1.0, [](double) { return 0.0; }, "zero");
  FiniteSet cloud = epi_cloud(zero, 1.0, 0.5);
  // per node: base 0 plus lattice {0.5, 1} -> 3 points, 3 nodes
  CHECK(cloud.size() == 9);
  CHECK(cloud.dim() == 2);

  GriddedFunction mixed = GriddedFunction::line(
      -1.0, 1.0, 1.0,
      [](double x) {
        if (x < -0.5) return ExtReal::inf();
        return x < 0.5 ? ExtReal(0.3) : ExtReal(5.0);
      },
      "mixed");
  FiniteSet mc = epi_cloud(mixed, 1.0, 0.5);
  // node -1: infinite value, nothing; node 0: {0.3, 0.5, 1}; node 1: value
  // above rho keeps only its base point (target-only)
  CHECK(mc.size() == 4);
}

TEST_CASE("epi_cloud of an everywhere-infinite function is empty") {
  GriddedFunction none = GriddedFunction::line(
      0.0, 1.0, 0.5, [](double) { return ExtReal::inf(); }, "none");
  CHECK(none.field().epigraph_empty());
  CHECK(epi_cloud(none, 1.0, 0.1).empty());
}

// --- kenmochi_dl basics --------------------------------------------------------

TEST_CASE("kenmochi distance: identity, symmetry, vertical shifts") {
  GriddedFunction f = fn_line(-2.0, 2.0, 0.01, [](double x) { return x * x; }, "sq");
  GriddedFunction g = f.shifted(0.1);

  CHECK(kenmochi_dl(f, f, 2.0) == ExtReal(0.0));

  const ExtReal d = kenmochi_dl(f, g, 2.0);
  CHECK(raw(d) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(kenmochi_dl(g, f, 2.0) == d);  // symmetric by construction

  // a vertical shift by c moves the epigraph by at most c
  GriddedFunction far = f.shifted(0.75);
  const ExtReal df = kenmochi_dl(f, far, 2.0);
  CHECK(df <= ExtReal(0.75 + 1e-12));

  // the two one-sided excesses compose to the distance
  CHECK(kenmochi_dl(f, g, 2.0) ==
        ext_max(epi_excess(f.field(), g.field(), 2.0), epi_excess(g.field(), f.field(), 2.0)));
}

TEST_CASE("kenmochi distance halves horizontal shifts of V-shaped functions") {
  // Under the max metric on X x R, a diagonal move costs max(dx, dvalue):
  // shifting |x| sideways by 0.2 moves its epigraph by only 0.1.
  GriddedFunction f = fn_line(-2.0, 2.0, 0.01, [](double x) { return std::abs(x); }, "abs");
  GriddedFunction g =
      fn_line(-2.0, 2.0, 0.01, [](double x) { return std::abs(x - 0.2); }, "abs-shift");
  CHECK(raw(kenmochi_dl(f, g, 2.0)) == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("kenmochi distance is nondecreasing in rho") {
  Rng rng(91);
  for (int it = 0; it < 10; ++it) {
    GriddedFunction f = oracles::random_pw_quadratic(rng, -1.0, 1.0, 0.1, 2.0, "f");
    GriddedFunction g = oracles::random_pw_quadratic(rng, -1.0, 1.0, 0.1, 2.0, "g");
    ExtReal prev(0.0);
    for (double rho : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      const ExtReal cur = kenmochi_dl(f, g, rho);
      CHECK(cur >= prev);
      prev = cur;
    }
  }
}

TEST_CASE("kenmochi empty-epigraph conventions") {
  GriddedFunction none = GriddedFunction::line(
      -1.0, 1.0, 0.5, [](double) { return ExtReal::inf(); }, "none");
  GriddedFunction zero = fn_line(-1.0, 1.0, 0.5, [](double) { return 0.0; }, "zero");
  CHECK(kenmochi_dl(none, none, 1.0) == ExtReal(0.0));
  CHECK(kenmochi_dl(none, zero, 1.0).is_pos_inf());
  CHECK(kenmochi_dl(zero, none, 1.0).is_pos_inf());
}

TEST_CASE("serial kernels agree with the parallel ones") {
  Rng rng(17);
  for (int it = 0; it < 8; ++it) {
    GriddedFunction f = oracles::random_pw_quadratic(rng, -1.0, 1.0, 0.05, 2.0, "f");
    GriddedFunction g = oracles::random_pw_quadratic(rng, -1.0, 1.0, 0.05, 2.0, "g");
    const double rho = rng.uniform(0.5, 2.5);
    CHECK(kenmochi_dl_serial(f.field(), g.field(), rho) == kenmochi_dl(f, g, rho));
    CHECK(epi_excess_serial(f.field(), g.field(), rho) ==
          epi_excess(f.field(), g.field(), rho));
  }
}

// --- oracle cross-validation ---------------------------------------------------

TEST_CASE("indicator epigraphs reproduce the base-set distance exactly") {
  Rng rng(23);
  for (int it = 0; it < 20; ++it) {
    const double h = 0.25;
    std::vector<bool> inC, inD;
    for (int k = 0; k <= 16; ++k) {
      inC.push_back(rng.below(3) != 0);
      inD.push_back(rng.below(3) != 0);
    }
    std::size_t idx = 0;
    auto mk = [&](const std::vector<bool>& mask) {
      idx = 0;
      return GriddedFunction::line(
          -2.0, 2.0, h,
          [&](double) { return mask[idx++] ? ExtReal(0.0) : ExtReal::inf(); }, "ind");
    };
    GriddedFunction fC = mk(inC);
    GriddedFunction fD = mk(inD);
    FiniteSet C(fC.space()), D(fC.space());
    for (std::size_t i = 0; i < fC.size(); ++i) {
      if (fC.value(i) == ExtReal(0.0)) C.push_back(fC.node(i));
      if (fD.value(i) == ExtReal(0.0)) D.push_back(fD.node(i));
    }
    const double rho = 1.5;
    CHECK(kenmochi_dl(fC, fD, rho) == trunc_hausdorff(C, D, rho));
  }
}

TEST_CASE("fiber oracle equals the materialized cloud distance exactly") {
  Rng rng(20250818);
  for (int it = 0; it < 12; ++it) {
    GriddedFunction f = oracles::random_pw_quadratic(rng, -1.0, 1.0, 0.25, 1.5, "f");
    GriddedFunction g = oracles::random_pw_quadratic(rng, -1.0, 1.0, 0.25, 1.5, "g");

    // dyadic rho/vstep: lattice rungs k*vstep are exact doubles, so the rung
    // at -rho survives the ball test and the cloud can only overestimate
    {
      const double rho = 1.25, vstep = 0.25;
      const ExtReal mat =
          trunc_hausdorff(epi_cloud(f, rho, vstep), epi_cloud(g, rho, vstep), rho);
      CHECK(mat == oracles::fiber_cloud_dl(f, g, rho, vstep));
      const ExtReal ken = kenmochi_dl(f, g, rho);
      CHECK(ken <= mat + ExtReal(1e-12));
      CHECK(mat <= ken + ExtReal(vstep + 1e-12));
      CHECK(ext_abs_diff(oracles::binary_search_dl(f.field(), g.field(), rho), ken) <=
            ExtReal(1e-12));
    }

    // non-dyadic pair: the bottom rung may round just outside B(rho), losing
    // the deepest query, so only the two-sided one-rung bound is guaranteed
    {
      const double rho = 1.2, vstep = 0.2;
      const ExtReal mat =
          trunc_hausdorff(epi_cloud(f, rho, vstep), epi_cloud(g, rho, vstep), rho);
      CHECK(mat == oracles::fiber_cloud_dl(f, g, rho, vstep));
      const ExtReal ken = kenmochi_dl(f, g, rho);
      CHECK(ext_abs_diff(ken, mat) <= ExtReal(vstep + 1e-12));
      CHECK(ext_abs_diff(oracles::binary_search_dl(f.field(), g.field(), rho), ken) <=
            ExtReal(1e-12));
    }
  }
}

TEST_CASE("oracle equivalence survives partial domains and clipping") {
  Rng rng(7);
  for (int it = 0; it < 8; ++it) {
    const double lo = rng.uniform(-1.0, -0.25), hi = rng.uniform(0.25, 1.0);
    GriddedFunction f = restricted(
        -1.0, 1.0, 0.25, [](double x) { return std::abs(x); }, lo, hi, "f");
    GriddedFunction g = oracles::random_pw_quadratic(rng, -1.0, 1.0, 0.25, 1.5, "g");
    const double rho = 1.0, vstep = 0.25;
    CHECK(trunc_hausdorff(epi_cloud(f, rho, vstep), epi_cloud(g, rho, vstep), rho) ==
          oracles::fiber_cloud_dl(f, g, rho, vstep));
    CHECK(ext_abs_diff(oracles::binary_search_dl(f.field(), g.field(), rho),
                       kenmochi_dl(f, g, rho)) <= ExtReal(1e-12));
  }
}

// --- cloud helpers --------------------------------------------------------------

TEST_CASE("level and union clouds") {
  GriddedFunction f = fn_line(-2.0, 2.0, 0.5, [](double x) { return x * x; }, "sq");
  FiniteSet lev = level_ball_cloud(f, ExtReal(1.0), 2.0, "lev");
  CHECK(lev.size() == 5);  // {-1, -0.5, 0, 0.5, 1}

  FiniteSet tight = level_ball_cloud(f, ExtReal(1.0), 0.6, "lev-ball");
  CHECK(tight.size() == 3);  // ball B(0.6) keeps {-0.5, 0, 0.5}

  GriddedFunction g = f.shifted(3.5);  // lev_1 g is empty
  FiniteSet uni = union_level_cloud(f, g, 1.0);
  // f <= 1 on {-1,-0.5,0,0.5,1}, all inside B(1); g contributes nothing.
  CHECK(uni.size() == 5);

  CHECK(raw(sup_abs_in_ball(f, 2.0)) == doctest::Approx(4.0));
  CHECK(raw(sup_abs_in_ball(f, 0.6)) == doctest::Approx(0.25));
  GriddedFunction part = restricted(
      -2.0, 2.0, 0.5, [](double x) { return x; }, -2.0, 0.0, "part");
  CHECK(sup_abs_in_ball(part, 2.0).is_pos_inf());  // infinite value inside the ball
}

TEST_CASE("inf_projection takes pointwise minima") {
  GriddedFunction a = fn_line(0.0, 1.0, 0.5, [](double x) { return x; }, "a");
  GriddedFunction b = fn_line(0.0, 1.0, 0.5, [](double x) { return 1.0 - x; }, "b");
  std::vector<GriddedFunction> fam{a, b};
  GriddedFunction m = inf_projection(fam, "min");
  CHECK(raw(m.value(0)) == doctest::Approx(0.0));
  CHECK(raw(m.value(1)) == doctest::Approx(0.5));
  CHECK(raw(m.value(2)) == doctest::Approx(0.0));
}

TEST_CASE("solution_summary scans infima, argmins and level sets") {
  GriddedFunction f = fn_line(-2.0, 2.0, 0.1, [](double x) { return x * x; }, "sq");
  const double eps[] = {0.0, 0.01 + 1e-9};
  const double del[] = {0.25};
  SolutionSummary s = solution_summary(f.field(), eps, del);
  CHECK(raw(s.infimum) == 0.0);
  CHECK(s.argmin_eps[0].second.size() == 1);  // exactly the origin
  CHECK(s.argmin_eps[1].second.size() == 3);  // {-0.1, 0, 0.1}
  CHECK(s.level_sets[0].second.size() == 11);  // |x| <= 0.5

  // a reference infimum below the grid minimum empties tight argmin sets
  SolutionSummary t = solution_summary(f.field(), eps, {}, -1.0);
  CHECK(t.argmin_eps[0].second.empty());
  CHECK(raw(t.infimum) == 0.0);  // infimum still reports the grid scan
}

// --- checkers -------------------------------------------------------------------

TEST_CASE("solution estimate checker") {
  const double h = 0.01;
  GriddedFunction f = fn_line(-2.0, 2.0, h, [](double x) { return x * x; }, "sq");

  SUBCASE("vertical shift: the infimum gap saturates the bound") {
    GriddedFunction g = f.shifted(0.1);
    BoundReport r = check_solution_estimates(f, g, 0.0, 0.25, 2.0, kTol);
    CHECK(r.status() == "pass");
    CHECK(raw(r.lhs) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(raw(r.rhs) == doctest::Approx(0.1).epsilon(1e-12));
  }
  SUBCASE("horizontal shift: argmins move but stay within the delta-argmin") {
    GriddedFunction fa = fn_line(-2.0, 2.0, h, [](double x) { return std::abs(x); }, "abs");
    GriddedFunction ga =
        fn_line(-2.0, 2.0, h, [](double x) { return std::abs(x - 0.2); }, "abs-shift");
    BoundReport r = check_solution_estimates(fa, ga, 0.0, 0.25, 2.0, kTol);
    CHECK(r.status() == "pass");
    CHECK(raw(r.lhs) <= 1e-9);  // inf gap ~0 and argmin excess 0
    CHECK(raw(r.rhs) == doctest::Approx(0.1).epsilon(1e-9));
  }
  SUBCASE("unattained infimum trips the applicability conditions") {
    // f = x restricted to (0, 1]: its infimum 0 is never attained, so the
    // delta-argmin relative to the reference infimum is empty.
    GriddedFunction f0 = restricted(
        0.0, 1.0, 0.1, [](double x) { return x; }, 0.1, 1.0, "open");
    GriddedFunction g0 = fn_line(0.0, 1.0, 0.1, [](double x) { return x; }, "closed");
    CHECK(raw(kenmochi_dl(f0, g0, 1.0)) == doctest::Approx(0.1).epsilon(1e-9));
    BoundReport r = check_solution_estimates(f0, g0, 0.0, 0.05, 1.0, kTol, 0.0, 0.0);
    CHECK(r.status() == "not-applicable");
    CHECK(r.lhs.is_pos_inf());  // exs(argmin g; empty set) = +inf
  }
}

TEST_CASE("level-set estimate checker") {
  const double h = 0.01;
  SUBCASE("upward shift keeps epi g inside epi f") {
    GriddedFunction f = fn_line(-2.0, 2.0, h, [](double x) { return x * x; }, "sq");
    GriddedFunction g = f.shifted(0.1);
    BoundReport r = check_level_set_estimate(f, g, 1.0, 1.15, 2.0, kTol);
    CHECK(r.status() == "pass");
    CHECK(raw(r.lhs) == 0.0);
    CHECK(raw(r.rhs) == 0.0);
  }
  SUBCASE("downward shift costs the one-sided excess") {
    GriddedFunction f = fn_line(-2.0, 2.0, h, [](double x) { return std::abs(x); }, "abs");
    GriddedFunction g = f.shifted(-0.1);
    BoundReport r = check_level_set_estimate(f, g, 0.5, 0.65, 2.0, kTol);
    CHECK(r.status() == "pass");
    CHECK(raw(r.lhs) == 0.0);
    CHECK(raw(r.rhs) == doctest::Approx(0.1).epsilon(1e-9));

    BoundReport na = check_level_set_estimate(f, g, 0.5, 0.55, 2.0, kTol);
    CHECK(na.status() == "not-applicable");  // eps <= delta + excess
  }
}

TEST_CASE("sup-norm bound checker") {
  const double h = 0.01;
  SUBCASE("plain bound") {
    GriddedFunction f = fn_line(-2.0, 2.0, h, [](double x) { return x * x; }, "sq");
    GriddedFunction g = f.shifted(0.1);
    BoundReport r = check_supnorm_bound(f, g, 2.0, kTol);
    CHECK(r.status() == "pass");
    CHECK(raw(r.lhs) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(raw(r.rhs) == doctest::Approx(0.1).epsilon(1e-12));
  }
  SUBCASE("refined bound with a probe set carrying a Lipschitz modulus") {
    GriddedFunction f = fn_line(-2.0, 2.0, h, [](double x) { return std::abs(x); }, "abs");
    GriddedFunction g = f.shifted(0.05);
    FiniteSet probe = sample_interval(-2.0, 2.0, h, "probe");
    HolderModulus lip;
    lip.exponent = 1.0;
    lip.kappa = [](double) { return 1.0; };
    BoundReport r = check_supnorm_bound(f, g, 2.0, kTol, &probe, &lip);
    CHECK(r.status() == "pass");
    CHECK(raw(r.lhs) == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(raw(r.rhs) == doctest::Approx(0.05).epsilon(1e-9));
  }
}

TEST_CASE("Hoelder sum checker on an indicator perturbation") {
  const double h = 0.01;
  GriddedFunction f1 = fn_line(-2.0, 2.0, h, [](double x) { return std::abs(x); }, "abs");
  GriddedFunction f2 = restricted(
      -2.0, 2.0, h, [](double) { return 0.0; }, 0.0, 1.0, "ind01");
  GriddedFunction g2 = restricted(
      -2.0, 2.0, h, [](double) { return 0.0; }, 0.1, 1.0, "ind011");
  HolderModulus lip;
  lip.exponent = 1.0;
  lip.kappa = [](double) { return 1.0; };
  BoundReport r = check_holder_sum(f1, f2, f1, g2, lip, 2.0, kTol);
  CHECK(r.status() == "pass");
  CHECK(raw(r.lhs) == doctest::Approx(0.1).epsilon(1e-9));
  CHECK(raw(r.rhs) == doctest::Approx(0.2).epsilon(1e-9));
}

TEST_CASE("inner composition checker") {
  MetricSpace dom = MetricSpace::line();
  GridGeom dg = GridGeom::line(-3.0, 3.0, 0.01);

  SUBCASE("scaled quadratic with a vertical perturbation") {
    GriddedFunction f = fn_line(-6.2, 6.2, 0.01, [](double y) { return y * y; }, "sq");
    GriddedFunction g = f.shifted(0.1);
    InnerCompositionData data;
    data.f = &f;
    data.g = &g;
    data.F = [](std::span<const double> x) { return std::vector<double>{2.0 * x[0]}; };
    data.G = data.F;
    data.F_inv.evaluate = [&](std::span<const double> y) {
      FiniteSet out(dom);
      out.push_back({0.5 * y[0]});
      return out;
    };
    data.F_inv.modulus = [](double) { return 0.5; };
    data.G_inv = data.F_inv;
    data.domain = &dom;
    data.domain_geom = dg;
    FiniteSet probes = sample_interval(-4.0, 4.0, 0.5, "y-probes");
    data.probes = &probes;

    BoundReport r = check_comp_inner(data, 1.0, kTol);
    CHECK(r.status() == "pass");
    CHECK(raw(r.lhs) == doctest::Approx(0.1).epsilon(1e-6));
    CHECK(raw(r.rhs) == doctest::Approx(0.1).epsilon(1e-9));
  }
  SUBCASE("different linear maps compared through the probe sup") {
    GriddedFunction f = fn_line(-6.25, 6.25, 0.0025, [](double y) { return std::abs(y); },
                                "abs");
    InnerCompositionData data;
    data.f = &f;
    data.g = &f;
    data.F = [](std::span<const double> x) { return std::vector<double>{x[0]}; };
    data.G = [](std::span<const double> x) { return std::vector<double>{1.25 * x[0]}; };
    data.F_inv.evaluate = [&](std::span<const double> y) {
      FiniteSet out(dom);
      out.push_back({y[0]});
      return out;
    };
    data.F_inv.modulus = [](double) { return 1.0; };
    data.G_inv.evaluate = [&](std::span<const double> y) {
      FiniteSet out(dom);
      out.push_back({0.8 * y[0]});
      return out;
    };
    data.G_inv.modulus = [](double) { return 0.8; };
    data.domain = &dom;
    data.domain_geom = dg;
    FiniteSet probes = sample_interval(-2.5, 2.5, 0.25, "y-probes");
    data.probes = &probes;

    BoundReport r = check_comp_inner(data, 1.0, kTol);
    CHECK(r.status() == "pass");
    CHECK(raw(r.lhs) == doctest::Approx(0.1125).epsilon(1e-9));
    CHECK(raw(r.rhs) == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("outer composition checker") {
  MetricSpace dom = MetricSpace::line();
  GridGeom dg = GridGeom::line(-1.0, 1.0, 0.01);
  PointMap F = [](std::span<const double> x) { return std::vector<double>{x[0]}; };
  PointMap G = [](std::span<const double> x) { return std::vector<double>{x[0] + 0.2}; };

  SUBCASE("slope one") {
    GriddedFunction f = fn_line(-2.0, 2.0, 0.01, [](double y) { return std::abs(y); }, "abs");
    HolderModulus lip;
    lip.exponent = 1.0;
    lip.kappa = [](double) { return 1.0; };
    BoundReport r = check_comp_outer(f, lip, F, G, dom, dg, 1.0, kTol);
    CHECK(r.status() == "pass");
    CHECK(raw(r.lhs) == doctest::Approx(0.1).epsilon(1e-9));
    CHECK(raw(r.rhs) == doctest::Approx(0.2).epsilon(1e-9));
  }
  SUBCASE("slope two doubles the graph term") {
    GriddedFunction f =
        fn_line(-2.0, 2.0, 0.01, [](double y) { return 2.0 * std::abs(y); }, "2abs");
    HolderModulus lip;
    lip.exponent = 1.0;
    lip.kappa = [](double) { return 2.0; };
    BoundReport r = check_comp_outer(f, lip, F, G, dom, dg, 1.0, kTol);
    CHECK(r.status() == "pass");
    CHECK(raw(r.lhs) == doctest::Approx(0.14).epsilon(1e-9));
    CHECK(raw(r.rhs) == doctest::Approx(0.4).epsilon(1e-9));
  }
}

TEST_CASE("inf-projection checker") {
  const double h = 0.01;
  std::vector<GriddedFunction> fs{
      fn_line(-2.0, 2.0, h, [](double x) { return std::abs(x); }, "f1"),
      fn_line(-2.0, 2.0, h, [](double x) { return std::abs(x - 1.0); }, "f2")};
  std::vector<GriddedFunction> gs{fs[0].shifted(0.1), fs[1].shifted(0.05)};
  BoundReport r = check_inf_projection(fs, gs, 2.0, kTol);
  CHECK(r.status() == "pass");
  CHECK(raw(r.lhs) == doctest::Approx(0.1).epsilon(1e-9));
  CHECK(raw(r.rhs) == doctest::Approx(0.1).epsilon(1e-9));
}

TEST_CASE("epigraphical push-forward") {
  MetricSpace target = MetricSpace::line();
  GridGeom tg = GridGeom::line(-3.0, 3.0, 0.01);
  GriddedFunction f = fn_line(-2.0, 2.0, 0.01, [](double x) { return x * x; }, "sq");

  SUBCASE("grid-aligned translation is exact") {
    PointMap F = [](std::span<const double> x) { return std::vector<double>{x[0] + 0.5}; };
    GriddedFunction Ff = epi_composition(f, F, target, tg, "Ff");
    for (std::size_t i = 0; i < Ff.size(); ++i) {
      const double y = Ff.node(i)[0];
      if (y < -1.5 - 1e-9 || y > 2.5 + 1e-9) {
        CHECK(Ff.value(i).is_pos_inf());
      } else {
        const double want = (y - 0.5) * (y - 0.5);
        CHECK(raw(Ff.value(i)) == doctest::Approx(want).epsilon(1e-9));
      }
    }
  }
  SUBCASE("misaligned translation lands within one bucket") {
    PointMap F = [](std::span<const double> x) { return std::vector<double>{x[0] + 0.503}; };
    GriddedFunction Ff = epi_composition(f, F, target, tg, "Ff");
    for (std::size_t i = 0; i < Ff.size(); ++i) {
      const double y = Ff.node(i)[0];
      if (y < -1.49 || y > 2.49) continue;
      REQUIRE(Ff.value(i).is_finite());
      const double want = (y - 0.503) * (y - 0.503);
      CHECK(std::abs(Ff.value(i).raw() - want) <= 0.05);
    }
  }
  SUBCASE("bound checker for composed epigraphs") {
    PointMap F = [](std::span<const double> x) { return std::vector<double>{x[0]}; };
    PointMap G = [](std::span<const double> x) { return std::vector<double>{x[0] + 0.1}; };
    BoundReport r = check_epi_composition(
        f, f, F, G, [](double) { return 1.0; }, target, tg, 1.0, kTol);
    CHECK(r.status() == "pass");
    CHECK(raw(r.rhs) == doctest::Approx(0.1).epsilon(1e-9));
    CHECK(raw(r.lhs) >= 0.05);
    CHECK(raw(r.lhs) <= 0.08);
  }
}

// --- randomized checker sweep ---------------------------------------------------

TEST_CASE("randomized epigraph checker suite") {
  Rng rng(424242);
  for (int it = 0; it < 40; ++it) {
    GriddedFunction f = oracles::random_pw_quadratic(rng, -2.0, 2.0, 0.05, 3.0, "f");
    // correlated perturbation keeps the distances small but nontrivial
    const double c = rng.uniform(-0.3, 0.3);
    GriddedFunction g = f.shifted(c);
    const double rho = rng.uniform(1.0, 3.0);

    BoundReport sup = check_supnorm_bound(f, g, rho, kTol);
    CHECK(sup.status() == "pass");

    const double dl = raw(kenmochi_dl(f, g, rho));
    const double eps = rng.uniform(0.0, 0.1);
    const double delta = eps + 2.0 * dl + rng.uniform(0.01, 0.2);
    BoundReport sol = check_solution_estimates(f, g, eps, delta, rho, kTol);
    // conditions may rule some draws out; violations are never allowed
    CHECK(sol.passed);

    std::vector<GriddedFunction> fs{f, oracles::random_pw_quadratic(rng, -2.0, 2.0, 0.05,
                                                                    3.0, "f2")};
    std::vector<GriddedFunction> gs{g, fs[1].shifted(rng.uniform(-0.2, 0.2))};
    BoundReport ip = check_inf_projection(fs, gs, rho, kTol);
    CHECK(ip.status() == "pass");
  }
}
