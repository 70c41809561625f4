#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "helly/caratheodory.hpp"
#include "helly/counterexample.hpp"
#include "helly/helly_solver.hpp"
#include "helly/normed_space.hpp"

namespace helly {

struct RainbowInstance {
  ColorfulFamily family;
  WitnessMap witnesses;                    // tuple (set index per color) -> point
  std::vector<std::vector<int>> covered;   // tuples whose intersection is witnessed
  bool exhaustive = true;
};

/// Builds a k-color family that provably satisfies the rainbow hypothesis on
/// the covered tuples: each covered tuple draws one point uniformly from the
/// unit ball and appends it to all k chosen sets. Exhaustive when the tuple
/// count fits the budget; otherwise `sample_count` tuples are drawn (plus one
/// per otherwise-empty set) and recorded.
RainbowInstance generate_rainbow_instance(const NormSpec& space, int k,
                                          const std::vector<int>& sizes, std::uint64_t seed,
                                          long long tuple_budget = 1000000,
                                          std::optional<int> sample_count = std::nullopt);

/// Random cloud with known simplex weights combining to zero: m-1 points
/// sampled in the unit ball, the last placed to balance them, everything
/// rescaled into the ball. Weights are near-uniform.
PointCloud random_zero_cloud(const NormSpec& space, int m, std::uint64_t seed);

/// Random colorful instance with anchors summing to zero.
ColorGroup random_zero_group(const NormSpec& space, int k, int max_m, std::uint64_t seed);

/// Euclidean family with a known optimum: unit functionals in antipodal
/// pairs, each set hanging below its supporting hyperplane at depth `radius`,
/// so (psi_i, radius) is a valid lower certificate, the minimum equals
/// `radius`, and the origin attains it.
struct CertifiedInstance {
  Family family;
  LowerCertificate certificate;
  double optimum = 0.0;
};
CertifiedInstance random_certified_instance(int dim, int pairs, int extra_vertices,
                                            std::uint64_t seed);

enum class SweepMode { helly, maurey, counterexample };

struct ExperimentConfig {
  NormSpec space{2, Exponent::finite(2.0)};
  std::vector<int> ks;
  std::vector<int> sizes;      // per-color size template, cycled; empty = auto
  int instances = 1;           // per k
  int trials = 64;             // sampler trials (maurey mode)
  int cloud_size = 8;          // points per cloud (maurey mode)
  std::uint64_t seed = 0;
  double tol = 1e-6;
  int solver_iters = 1500;
  int solver_starts = 4;
  SweepMode mode = SweepMode::helly;
};

struct SweepRow {
  int k = 0;
  double empirical = 0.0;
  double bound = 0.0;
  double residual = 0.0;
  double ms = 0.0;
  std::string status;  // "pass", "warn" (uncertified violation), "FAIL"
};

/// Runs the configured experiment; rows come back ordered by (k, instance)
/// regardless of the worker pool's schedule. The HELLY_THREADS environment
/// variable caps the pool.
std::vector<SweepRow> run_sweep(const ExperimentConfig& config);

/// True iff some row is a hard failure (bound violated on a certified solve).
bool sweep_failed(const std::vector<SweepRow>& rows);

std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string sweep_json(const std::vector<SweepRow>& rows);

/// Moment exponent and tabulated constant used for a sweep in `space`:
/// the dual space's table entry at p = min(2, dual exponent).
TypeEstimate sweep_type_estimate(const NormSpec& space);

int thread_pool_size();

}  // namespace helly
