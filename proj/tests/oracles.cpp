#include "oracles.hpp"

#include <cmath>
#include <functional>
#include <vector>

namespace helly::oracles {

namespace {

// All weight vectors with entries i/divisions summing to 1.
void compositions(int m, int divisions, const std::function<void(const Eigen::VectorXd&)>& visit) {
  std::vector<int> parts(m, 0);
  std::function<void(int, int)> rec = [&](int idx, int left) {
    if (idx == m - 1) {
      parts[idx] = left;
      Eigen::VectorXd w(m);
      for (int i = 0; i < m; ++i) w[i] = static_cast<double>(parts[i]) / divisions;
      visit(w);
      return;
    }
    for (int take = 0; take <= left; ++take) {
      parts[idx] = take;
      rec(idx + 1, left - take);
    }
  };
  rec(0, divisions);
}

}  // namespace

namespace {

// For p in {1, inf} the problem is a linear program; the minimum sits at a
// basic feasible point. Enumerating every basis is slow but exact and shares
// no code with the solver under test.
double basis_enumeration_distance(const Vec& x, const VPolytope& K, const NormSpec& space) {
  const int n = K.dim();
  const int m = K.size();
  const bool linf = space.p.is_infinite();
  const int t_vars = linf ? 1 : n;
  const int cols = m + t_vars + 2 * n;
  const int rows = 2 * n + 1;
  if (cols > 20) throw std::invalid_argument("basis_enumeration_distance: instance too large");

  Eigen::MatrixXd V(n, m);
  for (int j = 0; j < m; ++j) V.col(j) = K.vertices[j];
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, cols);
  Eigen::VectorXd b(rows), c = Eigen::VectorXd::Zero(cols);
  for (int cc = 0; cc < n; ++cc) {
    A.block(cc, 0, 1, m) = V.row(cc);
    A.block(n + cc, 0, 1, m) = V.row(cc);
    int tj = linf ? m : m + cc;
    A(cc, tj) = 1.0;
    A(n + cc, tj) = -1.0;
    A(cc, m + t_vars + cc) = -1.0;
    A(n + cc, m + t_vars + n + cc) = 1.0;
    b[cc] = x[cc];
    b[n + cc] = x[cc];
  }
  A.block(rows - 1, 0, 1, m).setOnes();
  b[rows - 1] = 1.0;
  c.segment(m, t_vars).setOnes();

  double best = std::numeric_limits<double>::infinity();
  std::vector<int> pick(rows);
  for (int i = 0; i < rows; ++i) pick[i] = i;
  // iterate over all rows-subsets of the columns
  for (;;) {
    Eigen::MatrixXd B(rows, rows);
    for (int i = 0; i < rows; ++i) B.col(i) = A.col(pick[i]);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(B);
    if (lu.isInvertible()) {
      Eigen::VectorXd yb = lu.solve(b);
      if (yb.minCoeff() >= -1e-9) {
        double val = 0.0;
        for (int i = 0; i < rows; ++i) val += c[pick[i]] * yb[i];
        best = std::min(best, val);
      }
    }
    int i = rows - 1;
    while (i >= 0 && pick[i] == cols - rows + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int e = i + 1; e < rows; ++e) pick[e] = pick[e - 1] + 1;
  }
  return best;
}

}  // namespace

double grid_min_distance(const Vec& x, const VPolytope& K, const NormSpec& space) {
  const int m = K.size();
  if (space.p.is_infinite() || space.p.value() == 1.0) {
    return basis_enumeration_distance(x, K, space);
  }
  Eigen::MatrixXd V(K.dim(), m);
  for (int j = 0; j < m; ++j) V.col(j) = K.vertices[j];
  auto value = [&](const Eigen::VectorXd& w) { return norm(Vec(x - V * w), space); };

  Eigen::VectorXd best_w = Eigen::VectorXd::Constant(m, 1.0 / m);
  double best = value(best_w);
  compositions(m, 12, [&](const Eigen::VectorXd& w) {
    double v = value(w);
    if (v < best) {
      best = v;
      best_w = w;
    }
  });

  // Shrink a local simplex around the incumbent; convexity keeps the global
  // minimum reachable through the recentering.
  double radius = 1.0;
  for (int level = 0; level < 80; ++level) {
    radius *= 0.7;
    Eigen::VectorXd center = best_w;
    compositions(m, 6, [&](const Eigen::VectorXd& w) {
      Eigen::VectorXd cand = (1.0 - radius) * center + radius * w;
      double v = value(cand);
      if (v < best) {
        best = v;
        best_w = cand;
      }
    });
  }

  // Pattern-search polish at shrinking step sizes. Pairwise exchanges alone
  // stall on piecewise-linear kinks, so the direction set also moves mass
  // from one coordinate into every nonempty subset of the others.
  std::vector<Eigen::VectorXd> dirs;
  for (int a = 0; a < m; ++a) {
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
      if (mask & (1u << a)) continue;
      int bits = 0;
      for (int b = 0; b < m; ++b) bits += (mask >> b) & 1;
      Eigen::VectorXd d = Eigen::VectorXd::Zero(m);
      d[a] = 1.0;
      for (int b = 0; b < m; ++b) {
        if (mask & (1u << b)) d[b] = -1.0 / bits;
      }
      dirs.push_back(d);
    }
  }
  for (double step = 0.5; step > 1e-11; step *= 0.5) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (const Eigen::VectorXd& d : dirs) {
        Eigen::VectorXd cand = best_w + step * d;
        if (cand.minCoeff() < 0.0) continue;
        double v = value(cand);
        if (v < best - 1e-15) {
          best = v;
          best_w = cand;
          improved = true;
        }
      }
    }
  }
  return best;
}

double exact_l2_distance(const Vec& x, const VPolytope& K) {
  const int m = K.size();
  if (m > 16) throw std::invalid_argument("exact_l2_distance: too many vertices");
  Eigen::MatrixXd V(K.dim(), m);
  for (int j = 0; j < m; ++j) V.col(j) = K.vertices[j];

  double best = std::numeric_limits<double>::infinity();
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    std::vector<int> S;
    for (int j = 0; j < m; ++j) {
      if (mask & (1u << j)) S.push_back(j);
    }
    const int s = static_cast<int>(S.size());
    Eigen::MatrixXd Vs(K.dim(), s);
    for (int j = 0; j < s; ++j) Vs.col(j) = V.col(S[j]);
    // Stationarity over the affine hull of the face: KKT system in (mu, nu).
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(s + 1, s + 1);
    kkt.topLeftCorner(s, s) = 2.0 * Vs.transpose() * Vs;
    kkt.topRightCorner(s, 1).setOnes();
    kkt.bottomLeftCorner(1, s).setOnes();
    Eigen::VectorXd rhs(s + 1);
    rhs.head(s) = 2.0 * Vs.transpose() * x;
    rhs[s] = 1.0;
    Eigen::VectorXd sol = kkt.completeOrthogonalDecomposition().solve(rhs);
    Eigen::VectorXd mu = sol.head(s);
    if (std::abs(mu.sum() - 1.0) > 1e-8 || mu.minCoeff() < -1e-9) continue;
    best = std::min(best, (x - Vs * mu).norm());
  }
  return best;
}

bool grid_beats(const ColorfulFamily& fam, double radius, double step, double threshold) {
  const int d = fam.space.dim;
  if (d > 3) throw std::invalid_argument("grid_beats: meant for dimension <= 3");
  const int per_axis = static_cast<int>(std::floor(2.0 * radius / step)) + 1;
  const int k = static_cast<int>(fam.colors.size());

  std::vector<int> idx(d, 0);
  Vec x(d);
  for (;;) {
    for (int c = 0; c < d; ++c) x[c] = -radius + idx[c] * step;
    double sum = 0.0;
    bool aborted = false;
    for (int i = 0; i < k; ++i) {
      double r = 0.0;
      for (const VPolytope& K : fam.colors[i]) {
        r = std::max(r, distance(x, K, fam.space, 1e-9).value);
      }
      sum += r;
      if (sum / k >= threshold) {  // cannot beat anymore
        aborted = true;
        break;
      }
    }
    if (!aborted && sum / k < threshold) return true;
    int c = 0;
    while (c < d && idx[c] == per_axis - 1) {
      idx[c] = 0;
      ++c;
    }
    if (c == d) break;
    ++idx[c];
  }
  return false;
}

}  // namespace helly::oracles
