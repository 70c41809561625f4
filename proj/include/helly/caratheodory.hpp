#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "helly/normed_space.hpp"
#include "helly/polytope.hpp"

namespace helly {

/// Points u_1..u_m inside the unit ball of the ambient space, optionally with
/// simplex weights whose combination is (near) zero.
struct PointCloud {
  std::vector<Vec> points;
  std::optional<Eigen::VectorXd> weights;
};

/// Validates the cloud against a space: all norms <= 1 + tol, weights on the
/// simplex when present. Throws on violation.
void validate_cloud(const PointCloud& cloud, const NormSpec& space, double tol = 1e-9);

/// One point family per color, plus the per-color anchors a_i = sum_j l_ij u_ij.
struct ColorGroup {
  std::vector<PointCloud> groups;
  std::vector<Vec> anchors;
};

/// Computes anchors from the groups' weights (each group must carry weights).
ColorGroup make_color_group(std::vector<PointCloud> groups, const NormSpec& space);

struct MaureyResult {
  std::vector<int> indices;  // sorted; one entry per draw (or per color)
  Vec average;               // (1/k) sum of the selected points
  double norm = 0.0;
  int trials_used = 0;
  std::uint64_t seed = 0;
};

struct SimplexWeights {
  Eigen::VectorXd weights;
  double residual = 0.0;   // |sum_j l_j u_j| at the returned weights
  double gap = 0.0;        // certified bound on residual - minimum
  bool feasible = false;   // residual <= tol
};

/// Simplex weights minimizing |sum_j l_j u_j|. Infeasibility (the minimum
/// exceeds tol) is a valid return, certified through the reported gap.
SimplexWeights weights_for_zero(const std::vector<Vec>& points, const NormSpec& space,
                                double tol = 1e-9);

/// Draws k indices i.i.d. from the cloud's weights, `trials` times, and keeps
/// the draw whose average has the smallest norm. Requires weights.
MaureyResult maurey_sample(const PointCloud& cloud, int k, int trials,
                           std::uint64_t seed, const NormSpec& space);

/// One independent draw per color and trial; anchors must sum to ~0.
MaureyResult colorful_maurey_sample(const ColorGroup& group, int trials,
                                    std::uint64_t seed, const NormSpec& space,
                                    double tol = 1e-9);

/// Exact minimizer over all size-k multisets of [m]. Budget m^k <= 1e7.
MaureyResult brute_force_best_tuple(const PointCloud& cloud, int k, const NormSpec& space);

/// Exact minimizer over one-index-per-color selections. Budget prod m_i <= 1e7.
MaureyResult brute_force_best_tuple(const ColorGroup& group, const NormSpec& space);

/// Deterministic alternative to sampling: k Frank-Wolfe steps toward zero,
/// reading the vertex trace as the selection.
MaureyResult maurey_greedy(const PointCloud& cloud, int k, const NormSpec& space);

}  // namespace helly
