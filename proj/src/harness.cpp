#include "helly/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace helly {

RainbowInstance generate_rainbow_instance(const NormSpec& space, int k,
                                          const std::vector<int>& sizes, std::uint64_t seed,
                                          long long tuple_budget,
                                          std::optional<int> sample_count) {
  if (k < 1) throw std::invalid_argument("generate_rainbow_instance: k must be >= 1");
  if (sizes.empty()) throw std::invalid_argument("generate_rainbow_instance: sizes must be nonempty");
  std::vector<int> m(k);
  for (int i = 0; i < k; ++i) {
    m[i] = sizes[i % sizes.size()];
    if (m[i] < 1) throw std::invalid_argument("generate_rainbow_instance: sizes must be >= 1");
  }
  double total = 1.0;
  for (int mi : m) total *= mi;

  RainbowInstance out;
  out.family.space = space;
  out.family.colors.resize(k);
  std::vector<std::vector<std::vector<Vec>>> verts(k);
  for (int i = 0; i < k; ++i) verts[i].resize(m[i]);

  auto add_tuple = [&](const std::vector<int>& tuple, std::uint64_t id) {
    CounterRng rng(seed, {0x7ab1e5ull, id});
    Vec w = sample_unit_ball(space, rng);
    for (int i = 0; i < k; ++i) verts[i][tuple[i]].push_back(w);
    out.witnesses.emplace(tuple, std::move(w));
    out.covered.push_back(tuple);
  };

  if (total <= static_cast<double>(tuple_budget)) {
    // Exhaustive: mixed-radix counter, first color fastest.
    std::vector<int> t(k, 0);
    std::uint64_t id = 0;
    for (;;) {
      add_tuple(t, id++);
      int i = 0;
      while (i < k && t[i] == m[i] - 1) {
        t[i] = 0;
        ++i;
      }
      if (i == k) break;
      ++t[i];
    }
    out.exhaustive = true;
  } else {
    if (!sample_count) {
      throw std::invalid_argument(
          "generate_rainbow_instance: tuple budget exceeded; pass a sample count");
    }
    out.exhaustive = false;
    CounterRng pick(seed, {0x5e1ec7ull});
    for (int s = 0; s < *sample_count; ++s) {
      std::vector<int> t(k);
      for (int i = 0; i < k; ++i) t[i] = static_cast<int>(pick.below(m[i]));
      if (out.witnesses.count(t)) continue;
      add_tuple(t, 0x100000ull + static_cast<std::uint64_t>(s));
    }
    // No set may stay empty: route one extra tuple through each uncovered set.
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < m[i]; ++j) {
        if (!verts[i][j].empty()) continue;
        std::vector<int> t(k, 0);
        t[i] = j;
        if (!out.witnesses.count(t)) {
          add_tuple(t, 0x200000ull + static_cast<std::uint64_t>(i * 1000 + j));
        }
      }
    }
  }

  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < m[i]; ++j) {
      out.family.colors[i].push_back(VPolytope(std::move(verts[i][j])));
    }
  }
  return out;
}

PointCloud random_zero_cloud(const NormSpec& space, int m, std::uint64_t seed) {
  if (m < 2) throw std::invalid_argument("random_zero_cloud: need at least 2 points");
  CounterRng rng(seed, {0xc10dull});
  Eigen::VectorXd w(m);
  for (int j = 0; j < m; ++j) w[j] = 1.0 + 0.15 * rng.uniform(-1.0, 1.0);
  w /= w.sum();

  std::vector<Vec> pts;
  Vec acc = Vec::Zero(space.dim);
  for (int j = 0; j < m - 1; ++j) {
    pts.push_back(sample_unit_ball(space, rng));
    acc += w[j] * pts.back();
  }
  pts.push_back(Vec(-acc / w[m - 1]));

  double max_norm = 0.0;
  for (const Vec& u : pts) max_norm = std::max(max_norm, norm(u, space));
  if (max_norm > 1.0) {
    for (Vec& u : pts) u /= max_norm;
  }
  PointCloud cloud;
  cloud.points = std::move(pts);
  cloud.weights = w;
  return cloud;
}

ColorGroup random_zero_group(const NormSpec& space, int k, int max_m, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("random_zero_group: k must be >= 1");
  CounterRng rng(seed, {0x9f00ull});
  std::vector<PointCloud> groups(k);
  std::vector<Vec> anchors(k, Vec::Zero(space.dim));
  Vec total = Vec::Zero(space.dim);
  for (int i = 0; i < k; ++i) {
    int m = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_m)));
    Eigen::VectorXd w(m);
    for (int j = 0; j < m; ++j) w[j] = 1.0 + 0.15 * rng.uniform(-1.0, 1.0);
    w /= w.sum();
    for (int j = 0; j < m; ++j) {
      groups[i].points.push_back(sample_unit_ball(space, rng));
      anchors[i] += w[j] * groups[i].points.back();
    }
    groups[i].weights = w;
    total += anchors[i];
  }
  // Shift every point by -total/k so the anchors cancel, then rescale into
  // the unit ball. Both operations preserve the weights.
  Vec shift = total / static_cast<double>(k);
  double max_norm = 0.0;
  for (int i = 0; i < k; ++i) {
    for (Vec& u : groups[i].points) {
      u -= shift;
      max_norm = std::max(max_norm, norm(u, space));
    }
  }
  if (max_norm > 1.0) {
    for (auto& g : groups) {
      for (Vec& u : g.points) u /= max_norm;
    }
  }
  return make_color_group(std::move(groups), space);
}

CertifiedInstance random_certified_instance(int dim, int pairs, int extra_vertices,
                                            std::uint64_t seed) {
  if (dim < 2 || pairs < 1) {
    throw std::invalid_argument("random_certified_instance: need dim >= 2 and pairs >= 1");
  }
  NormSpec space(dim, Exponent::finite(2.0));
  CounterRng rng(seed, {0xce27ull});
  double radius = rng.uniform(0.3, 1.2);

  CertifiedInstance inst;
  inst.family.space = space;
  inst.optimum = radius;
  inst.certificate.bound = radius;

  for (int p = 0; p < pairs; ++p) {
    Vec dir(dim);
    for (int c = 0; c < dim; ++c) dir[c] = rng.normal();
    dir.normalize();
    for (int sgn = 0; sgn < 2; ++sgn) {
      Vec psi = sgn == 0 ? dir : Vec(-dir);
      std::vector<Vec> verts{Vec(-radius * psi)};
      // The first pair stays a pure singleton pair so the origin's
      // subgradients cancel exactly; later sets may grow extra vertices
      // strictly below the supporting hyperplane <psi, .> = -radius.
      if (p > 0) {
        int extras = static_cast<int>(rng.below(static_cast<std::uint64_t>(extra_vertices + 1)));
        for (int e = 0; e < extras; ++e) {
          Vec w(dim);
          for (int c = 0; c < dim; ++c) w[c] = 0.7 * rng.normal();
          w -= std::max(0.0, psi.dot(w)) * psi;  // force <psi, w> <= 0
          verts.push_back(Vec(-radius * psi + w));
        }
      }
      inst.family.sets.push_back(VPolytope(std::move(verts)));
      inst.certificate.functionals.push_back(psi);
    }
  }
  return inst;
}

// ---------------------------------------------------------------------------
// Sweep driver.
// ---------------------------------------------------------------------------

TypeEstimate sweep_type_estimate(const NormSpec& space) {
  NormSpec dual = dual_space(space);
  double p = dual.p.is_infinite() ? 2.0 : std::min(2.0, dual.p.value());
  return type_constant_tabulated(dual, p);
}

int thread_pool_size() {
  if (const char* env = std::getenv("HELLY_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return std::min(n, 64);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

std::vector<int> auto_sizes(int k, const std::vector<int>& requested, long long tuple_cap) {
  std::vector<int> sizes(k, 1);
  long long tuples = 1;
  for (int i = 0; i < k; ++i) {
    int want = requested.empty() ? (i < 2 ? 2 : 1) : requested[i % requested.size()];
    while (want > 1 && tuples * want > tuple_cap) --want;
    sizes[i] = std::max(1, want);
    tuples *= sizes[i];
  }
  return sizes;
}

SweepRow run_row(const ExperimentConfig& cfg, int k, int instance_idx) {
  auto t0 = std::chrono::steady_clock::now();
  CounterRng seeder(cfg.seed, {static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(instance_idx)});
  std::uint64_t row_seed = seeder.next_u64();

  SweepRow row;
  row.k = k;
  switch (cfg.mode) {
    case SweepMode::helly: {
      TypeEstimate type = sweep_type_estimate(cfg.space);
      row.bound = upper_bound(type, k);
      RainbowInstance inst =
          generate_rainbow_instance(cfg.space, k, auto_sizes(k, cfg.sizes, 64), row_seed);
      SolveOptions opts;
      opts.tol = cfg.tol;
      opts.max_iters = cfg.solver_iters;
      opts.starts = cfg.solver_starts;
      opts.seed = row_seed;
      HellyOutcome out = minimize_max_distance(inst.family, opts);
      row.empirical = out.objective;
      row.residual = out.certificate_residual;
      bool within = row.empirical <= row.bound + cfg.tol;
      row.status = within ? "pass" : (out.certified ? "FAIL" : "warn");
      break;
    }
    case SweepMode::counterexample: {
      CounterexampleInstance inst = build_linf_counterexample(k);
      row.bound = inst.a_k;
      SolveOptions opts;
      opts.tol = cfg.tol;
      opts.max_iters = cfg.solver_iters;
      opts.starts = cfg.solver_starts;
      opts.seed = row_seed;
      opts.lower_bound = inst.a_k;  // certified by the construction
      HellyOutcome out = minimize_max_distance(inst.family, opts);
      row.empirical = out.objective;
      row.residual = out.certificate_residual;
      row.status = row.empirical >= row.bound - cfg.tol ? "pass" : "FAIL";
      break;
    }
    case SweepMode::maurey: {
      double moment = cfg.space.p.is_infinite() ? 2.0 : std::min(2.0, cfg.space.p.value());
      TypeEstimate type = type_constant_tabulated(cfg.space, moment);
      row.bound = 2.0 * type.constant * std::pow(static_cast<double>(k), -1.0 + 1.0 / type.p);
      PointCloud cloud = random_zero_cloud(cfg.space, cfg.cloud_size, row_seed);
      MaureyResult res = maurey_sample(cloud, k, cfg.trials, row_seed, cfg.space);
      row.empirical = res.norm;
      row.residual = 0.0;
      row.status = row.empirical <= row.bound + cfg.tol ? "pass" : "FAIL";
      break;
    }
  }
  auto t1 = std::chrono::steady_clock::now();
  row.ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg) {
  if (cfg.ks.empty()) throw std::invalid_argument("run_sweep: empty k range");
  if (cfg.instances < 1 || cfg.trials < 1) {
    throw std::invalid_argument("run_sweep: instances and trials must be >= 1");
  }
  if (cfg.tol <= 0.0) throw std::invalid_argument("run_sweep: tol must be positive");

  struct Job {
    int k;
    int idx;
  };
  std::vector<Job> jobs;
  for (int k : cfg.ks) {
    if (k < 1) throw std::invalid_argument("run_sweep: k values must be >= 1");
    for (int i = 0; i < cfg.instances; ++i) jobs.push_back({k, i});
  }

  std::vector<SweepRow> rows(jobs.size());
  int workers = std::min<int>(thread_pool_size(), static_cast<int>(jobs.size()));
  if (workers <= 1) {
    for (std::size_t j = 0; j < jobs.size(); ++j) rows[j] = run_row(cfg, jobs[j].k, jobs[j].idx);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w]() {
        for (std::size_t j = w; j < jobs.size(); j += workers) {
          rows[j] = run_row(cfg, jobs[j].k, jobs[j].idx);
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  return rows;
}

bool sweep_failed(const std::vector<SweepRow>& rows) {
  for (const SweepRow& r : rows) {
    if (r.status == "FAIL") return true;
  }
  return false;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "k,empirical,bound,residual,ms,status\n";
  os.precision(17);
  for (const SweepRow& r : rows) {
    os << r.k << ',' << r.empirical << ',' << r.bound << ',' << r.residual << ',' << r.ms
       << ',' << r.status << '\n';
  }
  return os.str();
}

std::string sweep_json(const std::vector<SweepRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const SweepRow& r : rows) {
    arr.push_back({{"k", r.k},
                   {"empirical", r.empirical},
                   {"bound", r.bound},
                   {"residual", r.residual},
                   {"ms", r.ms},
                   {"status", r.status}});
  }
  return arr.dump(2) + "\n";
}

}  // namespace helly
