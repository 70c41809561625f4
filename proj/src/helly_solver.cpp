#include "helly/helly_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "helly/simplex_lp.hpp"

namespace helly {

ColorfulFamily to_colorful(const Family& f) {
  ColorfulFamily cf;
  cf.space = f.space;
  cf.colors.push_back(f.sets);
  return cf;
}

void validate_family(const ColorfulFamily& fam) {
  if (fam.colors.empty()) throw std::invalid_argument("family: no colors");
  for (std::size_t i = 0; i < fam.colors.size(); ++i) {
    if (fam.colors[i].empty()) {
      throw std::invalid_argument("family: color " + std::to_string(i) + " is empty");
    }
    for (std::size_t j = 0; j < fam.colors[i].size(); ++j) {
      if (fam.colors[i][j].dim() != fam.space.dim) {
        throw std::invalid_argument("family: set " + std::to_string(j) + " of color " +
                                    std::to_string(i) + " has dimension " +
                                    std::to_string(fam.colors[i][j].dim()) +
                                    ", space has " + std::to_string(fam.space.dim));
      }
    }
  }
}

namespace {

struct Eval {
  double objective = 0.0;
  std::vector<double> radii;
  std::vector<int> argmax;
  Vec subgradient;  // (1/k) sum of per-color max-set subgradients
};

Eval evaluate(const ColorfulFamily& fam, const Vec& x, double inner_tol) {
  const int k = static_cast<int>(fam.colors.size());
  Eval e;
  e.radii.resize(k);
  e.argmax.resize(k);
  e.subgradient = Vec::Zero(fam.space.dim);
  for (int i = 0; i < k; ++i) {
    double r = -1.0;
    int arg = 0;
    DistanceResult best;
    for (std::size_t j = 0; j < fam.colors[i].size(); ++j) {
      DistanceResult d = distance(x, fam.colors[i][j], fam.space, inner_tol);
      if (d.value > r) {
        r = d.value;
        arg = static_cast<int>(j);
        best = std::move(d);
      }
    }
    e.radii[i] = r;
    e.argmax[i] = arg;
    if (best.subgradient) e.subgradient += *best.subgradient;
    e.objective += r;
  }
  e.objective /= k;
  e.subgradient /= k;
  return e;
}

}  // namespace

std::vector<double> radii_at(const ColorfulFamily& fam, const Vec& x, double tol) {
  validate_family(fam);
  return evaluate(fam, x, tol).radii;
}

// ---------------------------------------------------------------------------
// Stacked zero problem over a product of simplices.
// ---------------------------------------------------------------------------

namespace {

StackedZeroResult stacked_lp(const std::vector<std::vector<Vec>>& blocks, int divisor,
                             const NormSpec& dual, double /*tol*/) {
  const int n = dual.dim;
  const int k = static_cast<int>(blocks.size());
  const bool min_linf = dual.p.is_infinite();
  int mu_count = 0;
  for (const auto& b : blocks) mu_count += static_cast<int>(b.size());

  // min |z|_1: z_c = s+ - s-;  min |z|_inf: bound |z_c| by a shared t.
  const int aux = min_linf ? 1 + 2 * n : 2 * n;
  const int rows = (min_linf ? 2 * n : n) + k;
  LpProblem lp;
  lp.A = Eigen::MatrixXd::Zero(rows, mu_count + aux);
  lp.b = Eigen::VectorXd::Zero(rows);
  lp.c = Eigen::VectorXd::Zero(mu_count + aux);

  int col = 0;
  for (int i = 0; i < k; ++i) {
    for (const Vec& psi : blocks[i]) {
      for (int c = 0; c < n; ++c) {
        double a = psi[c] / divisor;
        lp.A(c, col) = a;
        if (min_linf) lp.A(n + c, col) = -a;
      }
      lp.A((min_linf ? 2 * n : n) + i, col) = 1.0;
      ++col;
    }
  }
  if (min_linf) {
    // rows c:      z_c - t + u_c = 0
    // rows n + c: -z_c - t + w_c = 0
    for (int c = 0; c < n; ++c) {
      lp.A(c, mu_count) = -1.0;
      lp.A(n + c, mu_count) = -1.0;
      lp.A(c, mu_count + 1 + c) = 1.0;
      lp.A(n + c, mu_count + 1 + n + c) = 1.0;
    }
    lp.c[mu_count] = 1.0;
  } else {
    // rows c: z_c - s+_c + s-_c = 0, objective sum(s+ + s-)
    for (int c = 0; c < n; ++c) {
      lp.A(c, mu_count + c) = -1.0;
      lp.A(c, mu_count + n + c) = 1.0;
      lp.c[mu_count + c] = 1.0;
      lp.c[mu_count + n + c] = 1.0;
    }
  }
  for (int i = 0; i < k; ++i) lp.b[(min_linf ? 2 * n : n) + i] = 1.0;

  LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::optimal) {
    throw std::runtime_error("stacked_weights_for_zero: LP solve failed");
  }
  StackedZeroResult out;
  col = 0;
  Vec z = Vec::Zero(n);
  for (int i = 0; i < k; ++i) {
    Eigen::VectorXd w(blocks[i].size());
    for (std::size_t j = 0; j < blocks[i].size(); ++j) {
      w[j] = std::max(0.0, sol.x[col]);
      ++col;
    }
    double mass = w.sum();
    if (mass > 0) w /= mass;
    for (std::size_t j = 0; j < blocks[i].size(); ++j) z += w[j] * blocks[i][j];
    out.weights.push_back(std::move(w));
  }
  out.residual = norm(Vec(z / divisor), dual);
  out.gap = 0.0;
  return out;
}

StackedZeroResult stacked_fw(const std::vector<std::vector<Vec>>& blocks, int divisor,
                             const NormSpec& dual, double tol) {
  const int n = dual.dim;
  const int k = static_cast<int>(blocks.size());
  // Optimize the Euclidean surrogate, report the true dual norm. An l2
  // minimum of zero is a dual-norm minimum of zero, so certification at
  // tolerance tol needs the l2 target shrunk by the worst norm ratio.
  double q = dual.p.value();
  double ratio = q < 2.0 ? std::pow(static_cast<double>(n), 1.0 / q - 0.5) : 1.0;
  double l2_target = tol / ratio;

  std::vector<Eigen::VectorXd> w(k);
  Vec z = Vec::Zero(n);
  for (int i = 0; i < k; ++i) {
    w[i] = Eigen::VectorXd::Constant(blocks[i].size(), 1.0 / blocks[i].size());
    for (std::size_t j = 0; j < blocks[i].size(); ++j) z += w[i][j] * blocks[i][j] / divisor;
  }

  double gap = std::numeric_limits<double>::infinity();
  const int max_iters = 20000;
  for (int it = 0; it < max_iters; ++it) {
    if (z.norm() <= l2_target) break;
    // Per-block linear minimization of the gradient 2 z' psi / divisor;
    // dz ends up as z(joint vertex) - z(current).
    Vec dz = -z;
    gap = 0.0;
    std::vector<int> pick(k);
    for (int i = 0; i < k; ++i) {
      int best = 0;
      double bestv = std::numeric_limits<double>::infinity();
      double cur = 0.0;
      for (std::size_t j = 0; j < blocks[i].size(); ++j) {
        double v = z.dot(blocks[i][j]);
        if (v < bestv) {
          bestv = v;
          best = static_cast<int>(j);
        }
        cur += w[i][j] * v;
      }
      pick[i] = best;
      gap += 2.0 * (cur - bestv) / divisor;
      dz += blocks[i][best] / divisor;
    }
    if (gap <= l2_target * l2_target) break;
    double denom = dz.squaredNorm();
    if (denom <= 0.0) break;
    double t = std::clamp(-z.dot(dz) / denom, 0.0, 1.0);
    if (t <= 0.0) break;
    for (int i = 0; i < k; ++i) {
      w[i] *= (1.0 - t);
      w[i][pick[i]] += t;
    }
    z += t * dz;
  }

  StackedZeroResult out;
  out.weights = std::move(w);
  out.residual = norm(Vec(z), dual);
  out.gap = gap;
  return out;
}

}  // namespace

StackedZeroResult stacked_weights_for_zero(const std::vector<std::vector<Vec>>& blocks,
                                           int divisor, const NormSpec& dual, double tol) {
  if (blocks.empty()) {
    StackedZeroResult out;
    out.residual = 0.0;
    return out;
  }
  for (const auto& b : blocks) {
    if (b.empty()) throw std::invalid_argument("stacked_weights_for_zero: empty block");
  }
  if (dual.p.is_infinite() || dual.p.value() == 1.0) {
    return stacked_lp(blocks, divisor, dual, tol);
  }
  return stacked_fw(blocks, divisor, dual, tol);
}

// ---------------------------------------------------------------------------
// Optimality certificate.
// ---------------------------------------------------------------------------

CertificateCheck optimality_certificate(const Vec& x0, const ColorfulFamily& fam, double tol) {
  validate_family(fam);
  const int k = static_cast<int>(fam.colors.size());
  const NormSpec dual = dual_space(fam.space);
  const double inner_tol = std::min(1e-9, 0.1 * tol);

  CertificateCheck out;
  out.active.resize(k);
  out.weights.resize(k);
  std::vector<std::vector<Vec>> blocks;
  std::vector<int> block_color;

  for (int i = 0; i < k; ++i) {
    std::vector<DistanceResult> ds;
    double r = 0.0;
    for (const VPolytope& K : fam.colors[i]) {
      ds.push_back(distance(x0, K, fam.space, inner_tol));
      r = std::max(r, ds.back().value);
    }
    double act_tol = std::max(10.0 * tol, 0.01 * r);
    if (r <= act_tol) {
      // The color's maximum is ~0: x0 minimizes that color outright, which
      // corresponds to the zero functional. Nothing to stack.
      out.weights[i] = Eigen::VectorXd();
      continue;
    }
    std::vector<Vec> psis;
    for (std::size_t j = 0; j < ds.size(); ++j) {
      if (ds[j].value >= r - act_tol && ds[j].subgradient) {
        out.active[i].push_back(static_cast<int>(j));
        psis.push_back(*ds[j].subgradient);
      }
    }
    if (psis.empty()) continue;
    blocks.push_back(std::move(psis));
    block_color.push_back(i);
  }

  if (blocks.empty()) {
    out.residual = 0.0;
    out.gap = 0.0;
    return out;
  }
  StackedZeroResult stacked = stacked_weights_for_zero(blocks, k, dual, tol);
  out.residual = stacked.residual;
  out.gap = stacked.gap;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    out.weights[block_color[b]] = stacked.weights[b];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Subgradient descent.
// ---------------------------------------------------------------------------

HellyOutcome minimize_max_distance(const ColorfulFamily& fam, const SolveOptions& opts) {
  validate_family(fam);
  const int n = fam.space.dim;
  const double inner_tol = std::max(1e-10, std::min(1e-8, 0.01 * opts.tol));

  Eval origin = evaluate(fam, Vec::Zero(n), inner_tol);
  bool sets_near_origin = true;
  for (double r : origin.radii) sets_near_origin = sets_near_origin && r <= 1.0 + 1e-9;
  const bool clamp = opts.clamp_to_ball && sets_near_origin;

  // Start list: origin, global vertex centroid, then seeded random points.
  std::vector<Vec> starts;
  starts.push_back(Vec::Zero(n));
  {
    Vec c = Vec::Zero(n);
    long long cnt = 0;
    for (const auto& color : fam.colors) {
      for (const VPolytope& K : color) {
        for (const Vec& v : K.vertices) {
          c += v;
          ++cnt;
        }
      }
    }
    if (cnt > 0) starts.push_back(c / static_cast<double>(cnt));
  }
  for (int s = static_cast<int>(starts.size()); s < std::max(1, opts.starts); ++s) {
    CounterRng rng(opts.seed, {0xa11ce5ull, static_cast<std::uint64_t>(s)});
    starts.push_back(2.0 * sample_unit_ball(fam.space, rng));
  }

  Vec best_x = starts.front();
  double best_F = std::numeric_limits<double>::infinity();
  int total_iters = 0;

  for (const Vec& x0 : starts) {
    Vec x = x0;
    Eval e = evaluate(fam, x, inner_tol);
    double local_best = e.objective;
    Vec local_best_x = x;
    double delta = std::max(0.05 * std::max(e.objective, 1e-3), 20.0 * opts.tol);
    int since_improve = 0;

    for (int t = 0; t < opts.max_iters; ++t) {
      ++total_iters;
      double g2 = e.subgradient.squaredNorm();
      if (g2 < 1e-26) break;  // stationary: certificate will confirm

      double target;
      if (opts.lower_bound) {
        target = *opts.lower_bound;
        if (e.objective - target <= 0.25 * opts.tol) break;
      } else {
        target = local_best - delta;
      }
      double alpha = std::max(0.0, e.objective - target) / g2;
      if (alpha <= 0.0) break;
      x -= alpha * e.subgradient;
      if (clamp) {
        double nx = norm(x, fam.space);
        if (nx > 2.0) x *= 2.0 / nx;
      }
      e = evaluate(fam, x, inner_tol);
      if (e.objective < local_best - 1e-14) {
        local_best = e.objective;
        local_best_x = x;
        since_improve = 0;
      } else {
        ++since_improve;
        if (since_improve >= 40) {
          // Tighten the target and restart from the incumbent.
          delta *= 0.5;
          x = local_best_x;
          e = evaluate(fam, x, inner_tol);
          since_improve = 0;
          if (!opts.lower_bound && delta < 0.05 * opts.tol) break;
        }
      }
    }
    if (local_best < best_F) {
      best_F = local_best;
      best_x = local_best_x;
    }
  }

  HellyOutcome out;
  out.center = best_x;
  Eval final_eval = evaluate(fam, best_x, inner_tol);
  out.radii = final_eval.radii;
  out.objective = final_eval.objective;
  out.iterations = total_iters;

  const int k = static_cast<int>(fam.colors.size());
  out.active.assign(k, {});
  CertificateCheck cert = optimality_certificate(best_x, fam, opts.tol);
  out.active = cert.active;
  out.certificate_residual = cert.residual;
  out.certified = cert.residual <= opts.tol;
  if (!out.certified) {
    out.message = "uncertified: stationarity residual " + std::to_string(cert.residual) +
                  " exceeds tol " + std::to_string(opts.tol);
  }
  return out;
}

HellyOutcome minimize_max_distance(const Family& fam, const SolveOptions& opts) {
  return minimize_max_distance(to_colorful(fam), opts);
}

// ---------------------------------------------------------------------------
// Lower-bound certificates and k-wise intersection checks.
// ---------------------------------------------------------------------------

bool verify_lower_bound(const Family& fam, const LowerCertificate& cert, double tol,
                        std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (cert.functionals.size() != fam.sets.size()) {
    return fail("certificate has " + std::to_string(cert.functionals.size()) +
                " functionals for " + std::to_string(fam.sets.size()) + " sets");
  }
  const NormSpec dual = dual_space(fam.space);
  Vec sum = Vec::Zero(fam.space.dim);
  for (std::size_t i = 0; i < cert.functionals.size(); ++i) {
    const Vec& psi = cert.functionals[i];
    if (psi.size() != fam.space.dim) return fail("functional " + std::to_string(i) + ": bad dimension");
    double dn = norm(psi, dual);
    if (dn > 1.0 + tol) {
      return fail("functional " + std::to_string(i) + ": dual norm " + std::to_string(dn) + " > 1");
    }
    double sv = support_value(fam.sets[i], psi);
    if (sv > -cert.bound + tol) {
      return fail("set " + std::to_string(i) + ": support value " + std::to_string(sv) +
                  " > -bound " + std::to_string(-cert.bound));
    }
    sum += psi;
  }
  double sn = norm(sum, dual);
  if (sn > tol) return fail("functionals sum to norm " + std::to_string(sn) + ", expected ~0");
  if (why) why->clear();
  return true;
}

namespace {

// min over x of max(max_{i in J} dist(x, K_i), |x| - 1), Polyak steps with
// the known optimum 0 of feasible instances.
double solve_subset_feasibility(const Family& fam, const std::vector<int>& J, double tol,
                                Vec* found) {
  const NormSpec& sp = fam.space;
  const double inner = std::max(1e-10, 0.01 * tol);
  Vec x = Vec::Zero(sp.dim);
  double best = std::numeric_limits<double>::infinity();
  Vec best_x = x;
  for (int t = 0; t < 3000; ++t) {
    double G = norm(x, sp) - 1.0;
    Vec g = norm_subgradient(x, sp);
    for (int i : J) {
      DistanceResult d = distance(x, fam.sets[i], sp, inner);
      if (d.value > G) {
        G = d.value;
        g = d.subgradient ? *d.subgradient : Vec::Zero(sp.dim);
      }
    }
    if (G < best) {
      best = G;
      best_x = x;
      if (best <= 0.25 * tol) break;
    }
    double g2 = g.squaredNorm();
    if (g2 < 1e-26) break;
    x -= (G / g2) * g;
  }
  if (found) *found = best_x;
  return std::max(0.0, best);
}

}  // namespace

KwiseReport verify_kwise_intersection(const Family& fam, int k, double tol,
                                      const WitnessMap* witnesses, long long subset_budget) {
  const int N = static_cast<int>(fam.sets.size());
  if (k < 1 || k > N) throw std::invalid_argument("verify_kwise_intersection: k out of range");
  double count = 1.0;
  for (int i = 0; i < k; ++i) count = count * (N - i) / (i + 1);
  if (count > static_cast<double>(subset_budget)) {
    throw std::invalid_argument("verify_kwise_intersection: C(" + std::to_string(N) + "," +
                                std::to_string(k) + ") exceeds the subset budget");
  }

  KwiseReport report;
  report.all_pass = true;
  std::vector<int> J(k);
  for (int i = 0; i < k; ++i) J[i] = i;
  // Colexicographic walk over k-subsets.
  for (;;) {
    ++report.subsets_checked;
    bool ok = false;
    const Vec* w = nullptr;
    if (witnesses) {
      auto it = witnesses->find(J);
      if (it != witnesses->end()) w = &it->second;
    }
    if (w) {
      ok = norm(*w, fam.space) <= 1.0 + tol;
      for (int i : J) {
        if (!ok) break;
        ok = distance(*w, fam.sets[i], fam.space, std::max(1e-10, 0.01 * tol)).value <= tol;
      }
    } else {
      ok = solve_subset_feasibility(fam, J, tol, nullptr) <= tol;
    }
    if (!ok) {
      report.all_pass = false;
      report.failures.push_back(J);
    }
    // next subset in colex order
    int i = 0;
    while (i + 1 < k && J[i] + 1 == J[i + 1]) ++i;
    if (i == k - 1 && J[i] + 1 >= N) break;
    ++J[i];
    for (int e = 0; e < i; ++e) J[e] = e;
  }
  return report;
}

double upper_bound(const TypeEstimate& type, int k) {
  if (!(type.p > 1.0 && type.p <= 2.0)) {
    throw std::invalid_argument("upper_bound: moment exponent must lie in (1, 2]");
  }
  if (k < 1) throw std::invalid_argument("upper_bound: k must be >= 1");
  return 6.0 * type.constant * std::pow(static_cast<double>(k), -1.0 + 1.0 / type.p);
}

}  // namespace helly
