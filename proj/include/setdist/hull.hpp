#pragma once

#include <string>

#include "setdist/distance.hpp"
#include "setdist/finite_set.hpp"

namespace setdist {

// Convex hulls are exact in dimensions 1 and 2 (interval endpoints, monotone
// chain) and sampled via Caratheodory combinations in higher dimensions.
// Exact mode requires a single-factor space.

// Extreme points of con C: 1-D {min, max}; 2-D counterclockwise polygon
// vertices (collinear clouds degenerate to the two endpoints). Dimension
// >= 3 is rejected.
FiniteSet convex_hull_vertices(const FiniteSet& C);

// Sampled hull: convex combinations of every subset of <= dim+1 points with
// weights on the simplex lattice of resolution m. Worst-case gap to the true
// hull is diam(C)/m. Refuses when the enumeration exceeds `cap` points.
FiniteSet convex_hull_sampled(const FiniteSet& C, std::size_t m, std::size_t cap = 400000);

// Exact distance from a point to con(vertices) in a 1- or 2-D single-factor
// space (L2 or LInf); vertices as returned by convex_hull_vertices.
double dist_to_hull(const FiniteSet& hull_vertices, std::span<const double> x);

// Truncated distance between hulls. Exact whenever each hull either sits
// inside B(rho) or the norm is LInf (polygon clipped to the box); otherwise
// the boundary is sampled and `exact` is false with the step recorded.
struct HullDistance {
  ExtReal value{0.0};
  bool exact = true;
  std::string note;
};
HullDistance hull_trunc_dl(const FiniteSet& C, const FiniteSet& D, double rho);

}  // namespace setdist
