#pragma once

// Test-side oracles, deliberately independent of the library's solver paths:
// nested grid search over the weight simplex, exact face enumeration for the
// Euclidean case, and a spatial mesh scan for center optimality.

#include "helly/helly_solver.hpp"
#include "helly/normed_space.hpp"
#include "helly/polytope.hpp"

namespace helly::oracles {

/// min over simplex weights of |x - V w|_p by hierarchical barycentric grid
/// refinement (the objective is convex in the weights). Accurate to ~1e-6
/// for the small instances tests use.
double grid_min_distance(const Vec& x, const VPolytope& K, const NormSpec& space);

/// Exact Euclidean distance by enumerating vertex subsets and solving the
/// affine-hull least-squares problem on each face. Only for small m.
double exact_l2_distance(const Vec& x, const VPolytope& K);

/// Scans the mesh of spacing `step` over [-radius, radius]^dim and reports
/// whether any point has mean-of-max distance below `threshold`.
bool grid_beats(const ColorfulFamily& fam, double radius, double step, double threshold);

}  // namespace helly::oracles
