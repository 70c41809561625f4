#include "helly/counterexample.hpp"

#include <cmath>
#include <stdexcept>

#include "helly/rational.hpp"

namespace helly {

namespace {

// Colexicographic walk over the k-subsets of [n], 0-based.
template <typename F>
void for_each_subset(int n, int k, F&& visit) {
  std::vector<int> J(k);
  for (int i = 0; i < k; ++i) J[i] = i;
  for (;;) {
    visit(const_cast<const std::vector<int>&>(J));
    int i = 0;
    while (i + 1 < k && J[i] + 1 == J[i + 1]) ++i;
    if (i == k - 1 && J[i] + 1 >= n) break;
    ++J[i];
    for (int e = 0; e < i; ++e) J[e] = e;
  }
}

long long binomial(int n, int k) {
  long long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace

CounterexampleInstance build_linf_counterexample(int k) {
  if (k < 1 || k > 10) {
    throw std::invalid_argument("build_linf_counterexample: k must lie in [1, 10]");
  }
  const int n = 2 * k;
  CounterexampleInstance inst;
  inst.k = k;
  inst.a_k = static_cast<double>(k) / (2 * k - 1);
  inst.family.space = NormSpec(n, Exponent::infinity());

  // u_i has coordinate 1/2 at i and -1/(2(2k-1)) elsewhere: unit l_1 norm,
  // zero total sum.
  const double off = -1.0 / (2.0 * (2 * k - 1));
  for (int i = 0; i < n; ++i) {
    Vec u = Vec::Constant(n, off);
    u[i] = 0.5;
    inst.functionals.push_back(std::move(u));
  }

  std::vector<std::vector<Vec>> vertices(n);
  for_each_subset(n, k, [&](const std::vector<int>& J) {
    Vec x = Vec::Ones(n);
    for (int i : J) x[i] = -1.0;
    inst.witnesses.emplace(J, x);
    for (int i : J) vertices[i].push_back(x);
  });
  for (int i = 0; i < n; ++i) {
    inst.family.sets.push_back(VPolytope(std::move(vertices[i])));
  }
  return inst;
}

bool exact_invariant_check(int k) {
  if (k < 1 || k > 6) {
    throw std::invalid_argument("exact_invariant_check: rational path supports k in [1, 6]");
  }
  const int n = 2 * k;
  const Rational a_k(k, 2 * k - 1);
  const Rational half(1, 2);
  const Rational off(-1, 2 * (2 * k - 1));

  // Functionals: unit l_1 norm and zero sum.
  std::vector<std::vector<Rational>> u(n, std::vector<Rational>(n, off));
  for (int i = 0; i < n; ++i) u[i][i] = half;
  for (int i = 0; i < n; ++i) {
    Rational l1(0);
    for (int t = 0; t < n; ++t) {
      Rational a = u[i][t];
      l1 = l1 + (a < Rational(0) ? -a : a);
    }
    if (l1 != Rational(1)) return false;
  }
  for (int t = 0; t < n; ++t) {
    Rational s(0);
    for (int i = 0; i < n; ++i) s = s + u[i][t];
    if (s != Rational(0)) return false;
  }

  // Witnesses: balanced sign vectors pairing to -a_k on incident functionals
  // and +a_k elsewhere; per-set incidence count C(2k-1, k-1).
  std::vector<long long> incident(n, 0);
  bool ok = true;
  for_each_subset(n, k, [&](const std::vector<int>& J) {
    std::vector<Rational> x(n, Rational(1));
    Rational coord_sum(0);
    for (int i : J) x[i] = Rational(-1);
    for (int t = 0; t < n; ++t) coord_sum = coord_sum + x[t];
    if (coord_sum != Rational(0)) ok = false;
    std::vector<bool> in(n, false);
    for (int i : J) {
      in[i] = true;
      ++incident[i];
    }
    for (int i = 0; i < n; ++i) {
      Rational pair(0);
      for (int t = 0; t < n; ++t) pair = pair + u[i][t] * x[t];
      if (in[i] && pair != -a_k) ok = false;
      if (!in[i] && pair != a_k) ok = false;
    }
  });
  const long long expected = binomial(2 * k - 1, k - 1);
  for (int i = 0; i < n; ++i) ok = ok && incident[i] == expected;
  return ok;
}

Embedding identity_embedding(int k) {
  Embedding e;
  e.map = Eigen::MatrixXd::Identity(2 * k, 2 * k);
  e.eta = 0.0;
  return e;
}

namespace {

// min |x|_p subject to A x = c (consistent). Seeds with the minimum-l2
// solution, then alternates norm-subgradient steps with re-projection onto
// the affine set.
Vec affine_min_norm(const Eigen::MatrixXd& A, const Vec& c, const NormSpec& space) {
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(A);
  Vec x = cod.solve(c);
  if (space.p == Exponent::finite(2.0)) return x;
  Vec best = x;
  double best_norm = norm(x, space);
  double scale = std::max(best_norm, 1e-6);
  for (int t = 1; t <= 4000; ++t) {
    Vec g = norm_subgradient(x, space);
    double step = 0.5 * scale / std::sqrt(static_cast<double>(t));
    x -= step * g;
    x -= cod.solve(A * x - c);  // back onto the constraint set
    double nx = norm(x, space);
    if (nx < best_norm) {
      best_norm = nx;
      best = x;
    }
  }
  return best;
}

}  // namespace

TransferResult transfer_counterexample(int k, const NormSpec& target,
                                       const Embedding& emb, double delta) {
  if (k < 1 || k > 10) throw std::invalid_argument("transfer_counterexample: k must lie in [1, 10]");
  if (delta <= 0.0) throw std::invalid_argument("transfer_counterexample: delta must be positive");
  if (emb.eta < 0.0) throw std::invalid_argument("transfer_counterexample: eta must be >= 0");
  const int n = 2 * k;
  if (emb.map.rows() != target.dim || emb.map.cols() != n) {
    throw std::invalid_argument("transfer_counterexample: embedding must be target_dim x 2k");
  }
  if (target.dim < n) {
    throw std::invalid_argument("transfer_counterexample: target dimension must be at least 2k");
  }
  // Operator norm l_1 -> dual is the worst column; the certificate needs it <= 1.
  for (int j = 0; j < n; ++j) {
    double cn = dual_norm(emb.map.col(j), target);
    if (cn > 1.0 + 1e-9) {
      throw std::invalid_argument("transfer_counterexample: embedding column " +
                                  std::to_string(j) + " has dual norm " + std::to_string(cn) +
                                  " > 1");
    }
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(emb.map);
  qr.setThreshold(1e-10);
  if (qr.rank() < n) {
    throw std::invalid_argument("transfer_counterexample: embedding is rank-deficient");
  }

  CounterexampleInstance base = build_linf_counterexample(k);
  const double a = base.a_k / (1.0 + emb.eta);

  TransferResult out;
  out.family.space = target;
  out.certificate.bound = a - delta;
  for (int i = 0; i < n; ++i) {
    out.certificate.functionals.push_back(emb.map * base.functionals[i]);
  }

  // Pairing rows for the realization problems.
  Eigen::MatrixXd Psi(n, target.dim);
  for (int i = 0; i < n; ++i) Psi.row(i) = out.certificate.functionals[i].transpose();

  std::vector<std::vector<Vec>> vertices(n);
  double worst_gap = 0.0;
  for (const auto& [J, x0] : base.witnesses) {
    Vec c(n);
    std::vector<bool> in(n, false);
    for (int i : J) in[i] = true;
    for (int i = 0; i < n; ++i) c[i] = in[i] ? -a : a;
    Vec x = affine_min_norm(Psi, c, target);
    double nx = norm(x, target);
    if (nx > 1.0) x /= nx;  // stay inside the ball; delta absorbs the pairing loss
    double gap = 0.0;
    for (int i : J) gap = std::max(gap, out.certificate.functionals[i].dot(x) + a);
    if (gap > delta) {
      throw std::runtime_error("transfer_counterexample: witness realization infeasible at delta=" +
                               std::to_string(delta) + ", best achievable gap " +
                               std::to_string(gap));
    }
    worst_gap = std::max(worst_gap, gap);
    out.witnesses.emplace(J, x);
    for (int i : J) vertices[i].push_back(x);
  }
  for (int i = 0; i < n; ++i) out.family.sets.push_back(VPolytope(std::move(vertices[i])));
  out.achieved_gap = worst_gap;
  return out;
}

}  // namespace helly
