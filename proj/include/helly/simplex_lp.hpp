#pragma once

#include <Eigen/Dense>

namespace helly {

/// min c'x  s.t.  A x = b,  x >= 0.
struct LpProblem {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
};

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

struct LpSolution {
  LpStatus status = LpStatus::iteration_limit;
  double objective = 0.0;
  Eigen::VectorXd x;      // primal solution
  Eigen::VectorXd duals;  // one multiplier per equality row, original sign convention
  int pivots = 0;
};

/// Dense two-phase primal simplex with Bland's (smallest-index) pivot rule,
/// so ties resolve deterministically and cycling cannot occur. Suited to the
/// small dense programs this project generates (tens of rows).
LpSolution solve_lp(const LpProblem& problem, int max_pivots = 50000);

}  // namespace helly
