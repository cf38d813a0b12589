#pragma once

#include "setdist/ext_real.hpp"
#include "setdist/finite_set.hpp"

namespace setdist {

// dist(x, C): min over points of C; +inf when C is empty.
ExtReal point_dist(std::span<const double> x, const FiniteSet& C);

// exs(C; D) = sup_{x in C} dist(x, D); 0 when C is empty, +inf when C is
// nonempty and D is empty. `excess` is the OpenMP kernel, `excess_serial`
// the plain reference implementation kept for testing; both are exact and
// return bit-identical results (the reductions are min/max).
ExtReal excess(const FiniteSet& C, const FiniteSet& D);
ExtReal excess_serial(const FiniteSet& C, const FiniteSet& D);

// C ∩ B(centroid, rho); rho must be >= 0.
FiniteSet ball_intersect(const FiniteSet& C, double rho);

// dl_rho(C, D) = max{ exs(C ∩ B(rho); D), exs(D ∩ B(rho); C) }.
// Requires matching space geometry and finite rho >= 0. Note the excess
// targets are the full sets; only the sup side is truncated.
ExtReal trunc_hausdorff(const FiniteSet& C, const FiniteSet& D, double rho);
ExtReal trunc_hausdorff_serial(const FiniteSet& C, const FiniteSet& D, double rho);

}  // namespace setdist
