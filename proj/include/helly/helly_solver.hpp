#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "helly/caratheodory.hpp"
#include "helly/normed_space.hpp"
#include "helly/polytope.hpp"

namespace helly {

struct Family {
  NormSpec space;
  std::vector<VPolytope> sets;
};

struct ColorfulFamily {
  NormSpec space;
  std::vector<std::vector<VPolytope>> colors;
};

ColorfulFamily to_colorful(const Family& f);

void validate_family(const ColorfulFamily& fam);

struct SolveOptions {
  double tol = 1e-6;
  int max_iters = 2000;       // per start
  int starts = 8;
  std::uint64_t seed = 0;
  std::optional<double> lower_bound;  // enables true Polyak steps
  bool clamp_to_ball = true;          // keep iterates inside 2B when f_i(0) <= 1
  double activity_rel = 0.01;
};

struct HellyOutcome {
  Vec center;
  std::vector<double> radii;              // f_i at the center, one per color
  double objective = 0.0;                 // mean of the radii
  std::vector<std::vector<int>> active;   // per color, set indices at the max
  double certificate_residual = 0.0;
  bool certified = false;
  int iterations = 0;
  std::string message;
};

/// Minimizes the average over colors of the maximal distance to the color's
/// sets, by multi-start projected subgradient descent (Polyak steps when a
/// lower bound is known, adaptive target otherwise). Deterministic for a
/// fixed seed. An uncertified outcome is returned, not thrown.
HellyOutcome minimize_max_distance(const ColorfulFamily& fam, const SolveOptions& opts = {});
HellyOutcome minimize_max_distance(const Family& fam, const SolveOptions& opts = {});

/// Radii (max distance per color) at an arbitrary center.
std::vector<double> radii_at(const ColorfulFamily& fam, const Vec& x, double tol = 1e-9);

struct CertificateCheck {
  double residual = 0.0;                      // dual norm of the best stacked combination
  double gap = 0.0;                           // optimality gap of the stacked solve
  std::vector<std::vector<int>> active;       // per color
  std::vector<Eigen::VectorXd> weights;       // per color, over its active sets
};

/// First-order optimality residual at x0: the smallest (dual) norm achievable
/// by averaging one convex combination of active-set subgradients per color.
/// Colors whose radius is ~0 contribute the zero functional.
CertificateCheck optimality_certificate(const Vec& x0, const ColorfulFamily& fam, double tol);

/// Functionals psi_i, one per set, with sum ~0, dual norms <= 1, and
/// support_value(K_i, psi_i) <= -bound: witnesses that every center keeps a
/// max distance of at least `bound`.
struct LowerCertificate {
  std::vector<Vec> functionals;
  double bound = 0.0;
};

/// Checks the three certificate conditions within tol. On success every
/// center y satisfies max_i dist(y, K_i) >= bound - c*tol with c <= 3 + 2|y|.
bool verify_lower_bound(const Family& fam, const LowerCertificate& cert, double tol,
                        std::string* why = nullptr);

using WitnessMap = std::map<std::vector<int>, Vec>;

struct KwiseReport {
  bool all_pass = false;
  long long subsets_checked = 0;
  std::vector<std::vector<int>> failures;
};

/// For every k-subset J of the family, verifies a common point of the unit
/// ball and all sets indexed by J: either the supplied witness, or one found
/// by minimizing max(max_{i in J} dist(x, K_i), |x| - 1).
KwiseReport verify_kwise_intersection(const Family& fam, int k, double tol,
                                      const WitnessMap* witnesses = nullptr,
                                      long long subset_budget = 2000000);

/// 6 * T * k^(-1 + 1/p) for a type estimate with moment exponent p in (1, 2].
double upper_bound(const TypeEstimate& type, int k);

/// Minimal dual norm of (1/divisor) * sum over blocks of one convex
/// combination each; LP-exact when the dual exponent is 1 or infinity,
/// Frank-Wolfe otherwise. Exposed for reuse by the certificate machinery.
struct StackedZeroResult {
  double residual = 0.0;
  double gap = 0.0;
  std::vector<Eigen::VectorXd> weights;
};
StackedZeroResult stacked_weights_for_zero(const std::vector<std::vector<Vec>>& blocks,
                                           int divisor, const NormSpec& dual, double tol);

}  // namespace helly
