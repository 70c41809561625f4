#include "helly/polytope.hpp"

#include <cmath>
#include <stdexcept>

#include "helly/simplex_lp.hpp"

namespace helly {

namespace {

void check_dims(const Vec& x, const VPolytope& K, const char* what) {
  if (x.size() != K.dim()) {
    throw std::invalid_argument(std::string(what) + ": point dimension " +
                                std::to_string(x.size()) + " vs polytope dimension " +
                                std::to_string(K.dim()));
  }
}

Eigen::MatrixXd vertex_matrix(const VPolytope& K) {
  Eigen::MatrixXd V(K.dim(), K.size());
  for (int j = 0; j < K.size(); ++j) V.col(j) = K.vertices[j];
  return V;
}

// ---------------------------------------------------------------------------
// Exact path for p in {1, inf}.
//
// p = inf:  min t    s.t. (V l)_c + t - u_c = x_c,  (V l)_c - t + w_c = x_c
// p = 1:    min sum s_c  with per-coordinate s_c in place of the shared t.
// Row multipliers pi^A (first block) and pi^B (second block) combine into the
// dual certificate psi_c = pi^A_c + pi^B_c with |psi|_dual <= 1 and
// <psi, v_j> <= -pi^simplex for every vertex, hence <psi, z - x> <= -value.
// ---------------------------------------------------------------------------
DistanceResult distance_lp(const Vec& x, const VPolytope& K, const NormSpec& space,
                           double tol) {
  const int n = space.dim;
  const int m = K.size();
  const bool linf = space.p.is_infinite();
  const int t_vars = linf ? 1 : n;
  const int cols = m + t_vars + 2 * n;
  const int rows = 2 * n + 1;

  Eigen::MatrixXd V = vertex_matrix(K);
  LpProblem lp;
  lp.A = Eigen::MatrixXd::Zero(rows, cols);
  lp.b = Eigen::VectorXd::Zero(rows);
  lp.c = Eigen::VectorXd::Zero(cols);

  for (int c = 0; c < n; ++c) {
    lp.A.block(c, 0, 1, m) = V.row(c);
    lp.A.block(n + c, 0, 1, m) = V.row(c);
    int tj = linf ? m : m + c;
    lp.A(c, tj) = 1.0;       // (Vl)_c + t >= x_c  (slack u)
    lp.A(n + c, tj) = -1.0;  // (Vl)_c - t <= x_c  (slack w)
    lp.A(c, m + t_vars + c) = -1.0;
    lp.A(n + c, m + t_vars + n + c) = 1.0;
    lp.b[c] = x[c];
    lp.b[n + c] = x[c];
  }
  lp.A.block(rows - 1, 0, 1, m).setOnes();
  lp.b[rows - 1] = 1.0;
  lp.c.segment(m, t_vars).setOnes();

  LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::optimal) {
    throw std::runtime_error("distance: LP solve failed (status " +
                             std::to_string(static_cast<int>(sol.status)) + ")");
  }

  DistanceResult out;
  out.weights = sol.x.head(m);
  // Clean tiny negatives from pivoting and renormalize.
  for (int j = 0; j < m; ++j) out.weights[j] = std::max(0.0, out.weights[j]);
  double mass = out.weights.sum();
  if (mass > 0) out.weights /= mass;
  out.nearest = V * out.weights;
  out.value = norm(x - out.nearest, space);
  out.gap = 0.0;
  out.iterations = sol.pivots;
  out.converged = true;
  if (out.value > tol) {
    Vec psi(n);
    for (int c = 0; c < n; ++c) psi[c] = sol.duals[c] + sol.duals[n + c];
    out.subgradient = psi;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Smooth path: away-step Frank-Wolfe on phi(l) = |x - V l|_p^p.
// ---------------------------------------------------------------------------

struct SmoothObjective {
  const Eigen::MatrixXd& V;
  const Vec& x;
  double p;

  double phi(const Vec& r) const {
    double acc = 0.0;
    for (int c = 0; c < r.size(); ++c) acc += std::pow(std::abs(r[c]), p);
    return acc;
  }

  // gradient of phi w.r.t. lambda given the residual r = x - V lambda
  Vec grad(const Vec& r) const {
    Vec g(r.size());
    for (int c = 0; c < r.size(); ++c) {
      double a = std::abs(r[c]);
      g[c] = a == 0.0 ? 0.0 : (r[c] > 0 ? -p : p) * std::pow(a, p - 1.0);
    }
    return V.transpose() * g;
  }
};

// Exact line search on the convex 1-d slice t -> phi(r0 - t*dr), t in [0, tmax],
// by bisection on the (monotone) directional derivative.
double line_search(const SmoothObjective& f, const Vec& r0, const Vec& dr, double tmax) {
  auto deriv = [&](double t) {
    // d/dt |r0_c - t dr_c|^p = -p sign(rc) |rc|^(p-1) dr_c
    double acc = 0.0;
    for (int c = 0; c < r0.size(); ++c) {
      double rc = r0[c] - t * dr[c];
      double a = std::abs(rc);
      if (a > 0.0) acc -= (rc > 0 ? f.p : -f.p) * std::pow(a, f.p - 1.0) * dr[c];
    }
    return acc;
  };
  if (deriv(0.0) >= 0.0) return 0.0;
  if (deriv(tmax) <= 0.0) return tmax;
  double lo = 0.0, hi = tmax;
  for (int it = 0; it < 80; ++it) {
    double mid = 0.5 * (lo + hi);
    (deriv(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

DistanceResult distance_fw(const Vec& x, const VPolytope& K, const NormSpec& space,
                           double tol) {
  const int m = K.size();
  const double p = space.p.value();
  Eigen::MatrixXd V = vertex_matrix(K);
  SmoothObjective f{V, x, p};

  Eigen::VectorXd lam = Eigen::VectorXd::Constant(m, 1.0 / m);
  Vec r = x - V * lam;
  double value = std::pow(f.phi(r), 1.0 / p);
  double gap_value = value;  // certified value-scale gap
  const int max_iters = 100000;
  int it = 0;

  for (; it < max_iters; ++it) {
    Vec g = f.grad(r);
    int fw = 0, away = -1;
    for (int j = 1; j < m; ++j) {
      if (g[j] < g[fw]) fw = j;
    }
    for (int j = 0; j < m; ++j) {
      if (lam[j] > 1e-14 && (away < 0 || g[j] > g[away])) away = j;
    }
    double glam = g.dot(lam);
    double fw_gap = glam - g[fw];  // bounds phi(lam) - phi*

    // Stop when the certified gap, mapped to the value scale, is below tol.
    double phi_now = f.phi(r);
    value = std::pow(phi_now, 1.0 / p);
    double phi_lb = std::max(0.0, phi_now - fw_gap);
    gap_value = value - std::pow(phi_lb, 1.0 / p);
    if (gap_value <= tol || value <= tol) break;

    double away_gap = away >= 0 ? g[away] - glam : -1.0;
    Vec dl;
    double tmax;
    if (fw_gap >= away_gap) {
      dl = -lam;
      dl[fw] += 1.0;
      tmax = 1.0;
    } else {
      dl = lam;
      dl[away] -= 1.0;
      tmax = lam[away] / (1.0 - lam[away] + 1e-300);
    }
    Vec dr = V * dl;  // r(t) = r0 - t*dr
    double t = line_search(f, r, dr, tmax);
    if (t <= 0.0) break;
    lam += t * dl;
    for (int j = 0; j < m; ++j) lam[j] = std::max(0.0, lam[j]);
    lam /= lam.sum();
    r = x - V * lam;
  }

  DistanceResult out;
  out.weights = lam;
  out.nearest = V * lam;
  out.value = norm(x - out.nearest, space);
  out.gap = gap_value;
  out.iterations = it;
  out.converged = gap_value <= tol || out.value <= tol;
  if (out.value > tol) {
    // Gradient of the norm at the residual: unit dual norm, pairs to the value.
    out.subgradient = norm_subgradient(x - out.nearest, space);
  }
  return out;
}

}  // namespace

DistanceResult distance(const Vec& x, const VPolytope& K, const NormSpec& space,
                        double tol) {
  check_dims(x, K, "distance");
  if (K.dim() != space.dim) {
    throw std::invalid_argument("distance: polytope dimension does not match space");
  }
  if (tol <= 0.0) throw std::invalid_argument("distance: tol must be positive");
  if (space.p.is_infinite() || space.p.value() == 1.0) return distance_lp(x, K, space, tol);
  return distance_fw(x, K, space, tol);
}

Vec distance_subgradient(const Vec& x, const VPolytope& K, const NormSpec& space,
                         double tol) {
  DistanceResult res = distance(x, K, space, tol);
  if (res.value <= tol || !res.subgradient) {
    throw std::invalid_argument(
        "distance_subgradient: point lies on the set; the subgradient is not unique there");
  }
  return *res.subgradient;
}

double support_value(const VPolytope& K, const Vec& psi) {
  if (psi.size() != K.dim()) {
    throw std::invalid_argument("support_value: functional dimension mismatch");
  }
  double best = psi.dot(K.vertices.front());
  for (const Vec& v : K.vertices) best = std::max(best, psi.dot(v));
  return best;
}

bool contains(const Vec& x, const VPolytope& K, const NormSpec& space, double tol) {
  return distance(x, K, space, tol).value <= tol;
}

}  // namespace helly
