#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "helly/exponent.hpp"
#include "helly/rng.hpp"

namespace helly {

using Vec = Eigen::VectorXd;

/// A finite-dimensional l_p space.
struct NormSpec {
  int dim = 0;
  Exponent p = Exponent::finite(2.0);

  NormSpec() = default;
  NormSpec(int dim_, Exponent p_) : dim(dim_), p(p_) {
    if (dim < 1) throw std::invalid_argument("NormSpec: dim must be >= 1");
  }
};

/// The dual space: same dimension, conjugate exponent.
inline NormSpec dual_space(const NormSpec& s) { return NormSpec(s.dim, s.p.dual()); }

/// l_p norm of x. Throws on dimension mismatch or non-finite coordinates.
double norm(const Vec& x, const NormSpec& space);

/// Norm of a functional, i.e. the norm of the dual space.
inline double dual_norm(const Vec& psi, const NormSpec& space) {
  return norm(psi, dual_space(space));
}

/// A subgradient of the norm at x: dual norm <= 1 and <psi, x> = |x|.
/// Returns the zero functional at x = 0.
Vec norm_subgradient(const Vec& x, const NormSpec& space);

enum class Provenance { tabulated, empirical_lower_bound, user_supplied };

std::string to_string(Provenance p);

struct TypeEstimate {
  double p = 2.0;           // moment exponent in (1, 2]
  double constant = 1.0;    // >= 1 for any space
  Provenance provenance = Provenance::user_supplied;
};

struct RademacherAverage {
  double value = 0.0;       // (average of |sum +-s_i|^p over sign patterns)^(1/p)
  double std_error = 0.0;   // 0 for exhaustive enumeration
  std::uint64_t patterns = 0;
};

struct MonteCarloMode {
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
};

/// Exact enumeration over all 2^|vectors| sign patterns. Capped at 24 vectors.
RademacherAverage rademacher_average(const std::vector<Vec>& vectors, double p,
                                     const NormSpec& space);

/// Unbiased Monte Carlo estimate of the p-th moment, reported on the value
/// scale with a delta-method standard error. Reproducible given (seed, trials)
/// and independent of evaluation order.
RademacherAverage rademacher_average(const std::vector<Vec>& vectors, double p,
                                     const NormSpec& space, const MonteCarloMode& mc);

/// Empirical lower bound on the type-p constant witnessed by one vector set:
/// rademacher_average / (sum |s_i|^p)^(1/p). Never exceeds the true constant.
TypeEstimate type_lower_bound(const std::vector<Vec>& vectors, double p,
                              const NormSpec& space);

struct TypeTableOptions {
  double linf_c = 2.0;  // leading constant for the l_inf entry C*sqrt(ln n)
};

/// Documented upper bounds on the type-p constant of l_q^n, p in (1, 2]:
///   q in [p, 2]   -> 1
///   q in (2, inf) -> sqrt(q - 1)
///   q = inf       -> max(1, C*sqrt(ln n))
/// Anything else raises: there is no dimension-free entry to return.
TypeEstimate type_constant_tabulated(const NormSpec& space, double p,
                                     const TypeTableOptions& opts = {});

/// Uniform sample from the unit ball of the space.
Vec sample_unit_ball(const NormSpec& space, CounterRng& rng);

}  // namespace helly
