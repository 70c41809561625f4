#include "helly/caratheodory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace helly {

void validate_cloud(const PointCloud& cloud, const NormSpec& space, double tol) {
  if (cloud.points.empty()) throw std::invalid_argument("PointCloud: empty point list");
  for (std::size_t j = 0; j < cloud.points.size(); ++j) {
    double n = norm(cloud.points[j], space);
    if (n > 1.0 + tol) {
      throw std::invalid_argument("PointCloud: point " + std::to_string(j) +
                                  " has norm " + std::to_string(n) + " > 1");
    }
  }
  if (cloud.weights) {
    const auto& w = *cloud.weights;
    if (w.size() != static_cast<Eigen::Index>(cloud.points.size())) {
      throw std::invalid_argument("PointCloud: weight count does not match points");
    }
    if (w.minCoeff() < -1e-10 || std::abs(w.sum() - 1.0) > 1e-10) {
      throw std::invalid_argument("PointCloud: weights must be a probability vector");
    }
  }
}

ColorGroup make_color_group(std::vector<PointCloud> groups, const NormSpec& space) {
  ColorGroup g;
  g.anchors.reserve(groups.size());
  for (const PointCloud& cloud : groups) {
    validate_cloud(cloud, space);
    if (!cloud.weights) {
      throw std::invalid_argument("make_color_group: every color needs weights");
    }
    Vec a = Vec::Zero(space.dim);
    for (std::size_t j = 0; j < cloud.points.size(); ++j) {
      a += (*cloud.weights)[j] * cloud.points[j];
    }
    g.anchors.push_back(std::move(a));
  }
  g.groups = std::move(groups);
  return g;
}

SimplexWeights weights_for_zero(const std::vector<Vec>& points, const NormSpec& space,
                                double tol) {
  if (points.empty()) throw std::invalid_argument("weights_for_zero: empty point list");
  DistanceResult d = distance(Vec::Zero(space.dim), VPolytope(points), space, tol);
  SimplexWeights out;
  out.weights = d.weights;
  out.residual = d.value;
  out.gap = d.gap;
  out.feasible = d.value <= tol;
  return out;
}

namespace {

// Exact average of the selected points, summed in sorted index order so the
// same multiset always produces bit-identical arithmetic.
void finalize(MaureyResult& r, const std::vector<Vec>& from_points, const NormSpec& space) {
  std::sort(r.indices.begin(), r.indices.end());
  Vec sum = Vec::Zero(space.dim);
  for (int idx : r.indices) sum += from_points[idx];
  r.average = sum / static_cast<double>(r.indices.size());
  r.norm = norm(r.average, space);
}

// Colorful variant: indices[i] selects within color i; summation order is the
// (fixed) color order.
void finalize_colorful(MaureyResult& r, const ColorGroup& group, const NormSpec& space) {
  Vec sum = Vec::Zero(space.dim);
  for (std::size_t i = 0; i < r.indices.size(); ++i) {
    sum += group.groups[i].points[r.indices[i]];
  }
  r.average = sum / static_cast<double>(r.indices.size());
  r.norm = norm(r.average, space);
}

int draw_index(const Eigen::VectorXd& weights, double u) {
  double acc = 0.0;
  int m = static_cast<int>(weights.size());
  for (int j = 0; j < m; ++j) {
    acc += weights[j];
    if (u < acc) return j;
  }
  return m - 1;
}

}  // namespace

MaureyResult maurey_sample(const PointCloud& cloud, int k, int trials,
                           std::uint64_t seed, const NormSpec& space) {
  validate_cloud(cloud, space);
  if (!cloud.weights) throw std::invalid_argument("maurey_sample: cloud has no weights");
  if (k < 1 || trials < 1) throw std::invalid_argument("maurey_sample: k and trials must be >= 1");

  MaureyResult best;
  best.seed = seed;
  best.trials_used = trials;
  double best_norm = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    CounterRng rng(seed, {static_cast<std::uint64_t>(t)});
    MaureyResult cur;
    cur.indices.reserve(k);
    for (int d = 0; d < k; ++d) cur.indices.push_back(draw_index(*cloud.weights, rng.unit()));
    finalize(cur, cloud.points, space);
    if (cur.norm < best_norm) {  // strict: earliest trial wins ties
      best_norm = cur.norm;
      best.indices = cur.indices;
      best.average = cur.average;
      best.norm = cur.norm;
    }
  }
  return best;
}

MaureyResult colorful_maurey_sample(const ColorGroup& group, int trials,
                                    std::uint64_t seed, const NormSpec& space,
                                    double tol) {
  if (group.groups.empty()) throw std::invalid_argument("colorful_maurey_sample: no colors");
  if (trials < 1) throw std::invalid_argument("colorful_maurey_sample: trials must be >= 1");
  Vec anchor_sum = Vec::Zero(space.dim);
  for (const Vec& a : group.anchors) anchor_sum += a;
  if (norm(anchor_sum, space) > tol) {
    throw std::invalid_argument("colorful_maurey_sample: anchors sum to " +
                                std::to_string(norm(anchor_sum, space)) +
                                ", expected ~0");
  }
  for (const PointCloud& cloud : group.groups) {
    validate_cloud(cloud, space);
    if (!cloud.weights) {
      throw std::invalid_argument("colorful_maurey_sample: every color needs weights");
    }
  }

  const int k = static_cast<int>(group.groups.size());
  MaureyResult best;
  best.seed = seed;
  best.trials_used = trials;
  double best_norm = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    MaureyResult cur;
    cur.indices.resize(k);
    for (int i = 0; i < k; ++i) {
      // One stream per (trial, color): draws never depend on evaluation order.
      CounterRng rng(seed, {static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(i)});
      cur.indices[i] = draw_index(*group.groups[i].weights, rng.unit());
    }
    finalize_colorful(cur, group, space);
    if (cur.norm < best_norm) {
      best_norm = cur.norm;
      best.indices = cur.indices;
      best.average = cur.average;
      best.norm = cur.norm;
    }
  }
  return best;
}

MaureyResult brute_force_best_tuple(const PointCloud& cloud, int k, const NormSpec& space) {
  validate_cloud(cloud, space);
  if (k < 1) throw std::invalid_argument("brute_force_best_tuple: k must be >= 1");
  const int m = static_cast<int>(cloud.points.size());
  double tuples = std::pow(static_cast<double>(m), k);
  if (tuples > 1e7) {
    throw std::invalid_argument("brute_force_best_tuple: m^k exceeds the 1e7 budget");
  }

  // Averages are permutation-invariant, so enumerate nondecreasing index
  // multisets only.
  MaureyResult best;
  best.trials_used = 0;
  double best_norm = std::numeric_limits<double>::infinity();
  std::vector<int> idx(k, 0);
  for (;;) {
    Vec sum = Vec::Zero(space.dim);
    for (int d = 0; d < k; ++d) sum += cloud.points[idx[d]];
    double nrm = norm(Vec(sum / k), space);
    ++best.trials_used;
    if (nrm < best_norm) {
      best_norm = nrm;
      best.indices = idx;
      best.norm = nrm;
      best.average = sum / k;
    }
    int d = k - 1;
    while (d >= 0 && idx[d] == m - 1) --d;
    if (d < 0) break;
    int v = idx[d] + 1;
    for (int e = d; e < k; ++e) idx[e] = v;
  }
  return best;
}

MaureyResult brute_force_best_tuple(const ColorGroup& group, const NormSpec& space) {
  const int k = static_cast<int>(group.groups.size());
  if (k == 0) throw std::invalid_argument("brute_force_best_tuple: no colors");
  double tuples = 1.0;
  for (const PointCloud& c : group.groups) tuples *= static_cast<double>(c.points.size());
  if (tuples > 1e7) {
    throw std::invalid_argument("brute_force_best_tuple: selection count exceeds the 1e7 budget");
  }

  MaureyResult best;
  best.trials_used = 0;
  double best_norm = std::numeric_limits<double>::infinity();
  std::vector<int> idx(k, 0);
  for (;;) {
    Vec sum = Vec::Zero(space.dim);
    for (int i = 0; i < k; ++i) sum += group.groups[i].points[idx[i]];
    double nrm = norm(Vec(sum / k), space);
    ++best.trials_used;
    if (nrm < best_norm) {
      best_norm = nrm;
      best.indices = idx;
      best.norm = nrm;
      best.average = sum / k;
    }
    int i = k - 1;
    while (i >= 0 && idx[i] == static_cast<int>(group.groups[i].points.size()) - 1) --i;
    if (i < 0) break;
    ++idx[i];
    for (int e = i + 1; e < k; ++e) idx[e] = 0;
  }
  return best;
}

MaureyResult maurey_greedy(const PointCloud& cloud, int k, const NormSpec& space) {
  validate_cloud(cloud, space);
  if (k < 1) throw std::invalid_argument("maurey_greedy: k must be >= 1");
  const int m = static_cast<int>(cloud.points.size());
  MaureyResult out;
  out.trials_used = 1;
  Vec sum = Vec::Zero(space.dim);
  for (int d = 0; d < k; ++d) {
    int pick = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < m; ++j) {
      double cand = norm(Vec((sum + cloud.points[j]) / (d + 1.0)), space);
      if (cand < best) {
        best = cand;
        pick = j;
      }
    }
    out.indices.push_back(pick);
    sum += cloud.points[pick];
  }
  finalize(out, cloud.points, space);
  return out;
}

}  // namespace helly
