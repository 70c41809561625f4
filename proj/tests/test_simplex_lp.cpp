#include <doctest.h>

#include "helly/rng.hpp"
#include "helly/simplex_lp.hpp"

using namespace helly;

TEST_CASE("simplex solves a small equality-form program") {
  // min -x1 - 2 x2  s.t.  x1 + x2 + s = 4, x2 + t = 3, x >= 0
  LpProblem lp;
  lp.A.resize(2, 4);
  lp.A << 1, 1, 1, 0,
          0, 1, 0, 1;
  lp.b = Eigen::Vector2d(4, 3);
  lp.c.resize(4);
  lp.c << -1, -2, 0, 0;
  LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::optimal);
  CHECK(sol.objective == doctest::Approx(-7.0));
  CHECK(sol.x[0] == doctest::Approx(1.0));
  CHECK(sol.x[1] == doctest::Approx(3.0));
}

TEST_CASE("simplex detects infeasibility and unboundedness") {
  LpProblem infeasible;
  infeasible.A.resize(2, 1);
  infeasible.A << 1, 1;
  infeasible.b = Eigen::Vector2d(1, 2);  // x = 1 and x = 2
  infeasible.c = Eigen::VectorXd::Zero(1);
  CHECK(solve_lp(infeasible).status == LpStatus::infeasible);

  LpProblem unbounded;  // min -x1 with x1 - x2 = 0
  unbounded.A.resize(1, 2);
  unbounded.A << 1, -1;
  unbounded.b = Eigen::VectorXd::Zero(1);
  unbounded.c.resize(2);
  unbounded.c << -1, 0;
  CHECK(solve_lp(unbounded).status == LpStatus::unbounded);
}

TEST_CASE("duals satisfy strong duality on random feasible programs") {
  for (int rep = 0; rep < 60; ++rep) {
    CounterRng rng(2024, {static_cast<std::uint64_t>(rep)});
    int m = 2 + static_cast<int>(rng.below(4));
    int n = m + 1 + static_cast<int>(rng.below(5));
    LpProblem lp;
    lp.A.resize(m, n);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) lp.A(i, j) = rng.uniform(-1, 1);
    }
    // b = A * (positive point) keeps the program feasible.
    Eigen::VectorXd x0(n);
    for (int j = 0; j < n; ++j) x0[j] = rng.uniform(0.1, 1.0);
    lp.b = lp.A * x0;
    lp.c.resize(n);
    for (int j = 0; j < n; ++j) lp.c[j] = rng.uniform(0.0, 2.0);  // bounded below
    LpSolution sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::optimal);
    // b' pi = c' x and reduced costs stay nonnegative.
    CHECK(lp.b.dot(sol.duals) == doctest::Approx(sol.objective).epsilon(1e-7));
    Eigen::VectorXd reduced = lp.c - lp.A.transpose() * sol.duals;
    CHECK(reduced.minCoeff() >= -1e-7);
    CHECK(sol.x.minCoeff() >= -1e-9);
    CHECK((lp.A * sol.x - lp.b).cwiseAbs().maxCoeff() <= 1e-7);
  }
}
