#pragma once

#include <optional>
#include <vector>

#include "helly/normed_space.hpp"

namespace helly {

/// Convex hull of an explicit vertex list.
struct VPolytope {
  std::vector<Vec> vertices;

  VPolytope() = default;
  explicit VPolytope(std::vector<Vec> v) : vertices(std::move(v)) {
    if (vertices.empty()) throw std::invalid_argument("VPolytope: needs at least one vertex");
    for (const Vec& w : vertices) {
      if (w.size() != vertices.front().size()) {
        throw std::invalid_argument("VPolytope: vertex dimensions differ");
      }
    }
  }

  int dim() const { return static_cast<int>(vertices.front().size()); }
  int size() const { return static_cast<int>(vertices.size()); }
};

struct DistanceResult {
  double value = 0.0;
  Eigen::VectorXd weights;            // simplex weights over the vertices
  Vec nearest;                        // weighted vertex combination
  std::optional<Vec> subgradient;     // present when value > tol
  bool converged = true;
  double gap = 0.0;                   // certified bound on value - optimum
  int iterations = 0;
};

/// Distance from x to the polytope in the given norm.
///
/// p in {1, inf} solves an exact linear program (dual multipliers give the
/// subgradient); smooth p runs away-step Frank-Wolfe over the simplex with a
/// duality-gap stop translated to the value scale.
DistanceResult distance(const Vec& x, const VPolytope& K, const NormSpec& space,
                        double tol = 1e-9);

/// Subgradient of the distance function at x, only defined off the set:
/// dual norm <= 1 + tol and <psi, z - x> <= -(value - tol) for every z in K.
/// Throws when distance(x, K) <= tol.
Vec distance_subgradient(const Vec& x, const VPolytope& K, const NormSpec& space,
                         double tol = 1e-9);

/// max over vertices of <psi, v> (= support over the hull, by convexity).
double support_value(const VPolytope& K, const Vec& psi);

bool contains(const Vec& x, const VPolytope& K, const NormSpec& space, double tol = 1e-9);

}  // namespace helly
