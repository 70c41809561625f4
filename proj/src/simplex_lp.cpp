#include "helly/simplex_lp.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace helly {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr double kFeasTol = 1e-7;

struct Tableau {
  // T = B^{-1} [A | I], rhs = B^{-1} b. The identity block doubles as the
  // running basis inverse, which is what the dual extraction reads.
  Eigen::MatrixXd T;
  Eigen::VectorXd rhs;
  std::vector<int> basis;  // column index basic in each row
  int m = 0;
  int n = 0;  // structural columns (identity block lives at [n, n+m))

  void pivot(int row, int col) {
    double piv = T(row, col);
    T.row(row) /= piv;
    rhs[row] /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == row) continue;
      double f = T(i, col);
      if (f == 0.0) continue;
      T.row(i) -= f * T.row(row);
      rhs[i] -= f * rhs[row];
      if (rhs[i] < 0.0 && rhs[i] > -1e-11) rhs[i] = 0.0;
    }
    basis[row] = col;
  }
};

// One simplex phase under Bland's rule. cost has size n + m (artificials
// included); eligible marks columns allowed to enter.
LpStatus run_phase(Tableau& tab, const Eigen::VectorXd& cost,
                   const std::vector<bool>& eligible, int max_pivots, int& pivots) {
  const int total = tab.n + tab.m;
  for (;;) {
    if (pivots >= max_pivots) return LpStatus::iteration_limit;
    Eigen::VectorXd cb(tab.m);
    for (int i = 0; i < tab.m; ++i) cb[i] = cost[tab.basis[i]];
    // Reduced costs via the tableau: r_j = c_j - c_B' T_j.
    int enter = -1;
    for (int j = 0; j < total; ++j) {
      if (!eligible[j]) continue;
      double red = cost[j] - cb.dot(tab.T.col(j));
      if (red < -kCostTol) {
        enter = j;
        break;  // Bland: smallest index
      }
    }
    if (enter < 0) return LpStatus::optimal;
    // Ratio test, ties by smallest basic index.
    int leave = -1;
    double best = 0.0;
    for (int i = 0; i < tab.m; ++i) {
      double a = tab.T(i, enter);
      if (a <= kPivotTol) continue;
      double ratio = tab.rhs[i] / a;
      if (leave < 0 || ratio < best - 1e-12 ||
          (ratio <= best + 1e-12 && tab.basis[i] < tab.basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) return LpStatus::unbounded;
    tab.pivot(leave, enter);
    ++pivots;
  }
}

}  // namespace

LpSolution solve_lp(const LpProblem& problem, int max_pivots) {
  const int m = static_cast<int>(problem.A.rows());
  const int n = static_cast<int>(problem.A.cols());
  if (problem.b.size() != m || problem.c.size() != n) {
    throw std::invalid_argument("solve_lp: inconsistent problem dimensions");
  }

  Tableau tab;
  tab.m = m;
  tab.n = n;
  tab.T.resize(m, n + m);
  tab.rhs.resize(m);
  Eigen::VectorXd flip = Eigen::VectorXd::Ones(m);
  for (int i = 0; i < m; ++i) {
    double s = problem.b[i] < 0.0 ? -1.0 : 1.0;
    flip[i] = s;
    tab.T.row(i).head(n) = s * problem.A.row(i);
    tab.rhs[i] = s * problem.b[i];
  }
  tab.T.middleCols(n, m).setIdentity();
  tab.basis.resize(m);
  for (int i = 0; i < m; ++i) tab.basis[i] = n + i;

  LpSolution sol;
  sol.x = Eigen::VectorXd::Zero(n);
  sol.duals = Eigen::VectorXd::Zero(m);

  // Phase 1: minimize the artificial mass.
  Eigen::VectorXd cost1 = Eigen::VectorXd::Zero(n + m);
  cost1.tail(m).setOnes();
  std::vector<bool> eligible(n + m, true);
  LpStatus st = run_phase(tab, cost1, eligible, max_pivots, sol.pivots);
  if (st != LpStatus::optimal) {
    sol.status = st;
    return sol;
  }
  double artificial_mass = 0.0;
  for (int i = 0; i < m; ++i) {
    if (tab.basis[i] >= n) artificial_mass += tab.rhs[i];
  }
  if (artificial_mass > kFeasTol) {
    sol.status = LpStatus::infeasible;
    return sol;
  }
  // Try to drive any zero-level artificial out of the basis.
  for (int i = 0; i < m; ++i) {
    if (tab.basis[i] < n) continue;
    int col = -1;
    for (int j = 0; j < n; ++j) {
      if (std::abs(tab.T(i, j)) > 1e-7) {
        col = j;
        break;
      }
    }
    if (col >= 0) tab.pivot(i, col);
    // Otherwise the row is redundant; the artificial stays basic at zero.
  }

  // Phase 2: original costs, artificials barred from entering.
  Eigen::VectorXd cost2 = Eigen::VectorXd::Zero(n + m);
  cost2.head(n) = problem.c;
  for (int j = n; j < n + m; ++j) eligible[j] = false;
  st = run_phase(tab, cost2, eligible, max_pivots, sol.pivots);
  sol.status = st;
  if (st != LpStatus::optimal) return sol;

  for (int i = 0; i < m; ++i) {
    if (tab.basis[i] < n) sol.x[tab.basis[i]] = tab.rhs[i];
  }
  sol.objective = problem.c.dot(sol.x);
  // pi = c_B' B^{-1}; the identity block of the tableau is B^{-1}.
  Eigen::VectorXd cb(m);
  for (int i = 0; i < m; ++i) cb[i] = cost2[tab.basis[i]];
  Eigen::RowVectorXd pi = cb.transpose() * tab.T.middleCols(n, m);
  for (int i = 0; i < m; ++i) sol.duals[i] = flip[i] * pi[i];
  return sol;
}

}  // namespace helly
