// Command-line front end: solve families, build the hard l_inf instances,
// run Maurey sampling, drive bound sweeps, and verify certificates.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "helly/harness.hpp"
#include "helly/io.hpp"

namespace {

using helly::io::json;

void emit(const std::string& out_path, const std::string& payload) {
  if (out_path.empty() || out_path == "-") {
    std::cout << payload;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw std::runtime_error("cannot open " + out_path + " for writing");
  f << payload;
}

helly::Exponent parse_exponent(const std::string& s) {
  if (s == "inf" || s == "infinity") return helly::Exponent::infinity();
  return helly::Exponent::finite(std::stod(s));
}

int cmd_solve(const std::string& in, const std::string& out, double tol, std::uint64_t seed,
              int iters, int starts, std::optional<double> lower_bound) {
  json j = helly::io::load_json_file(in);
  helly::ColorfulFamily fam = helly::io::colorful_from_json(j);
  helly::SolveOptions opts;
  opts.tol = tol;
  opts.seed = seed;
  opts.max_iters = iters;
  opts.starts = starts;
  opts.lower_bound = lower_bound;
  helly::HellyOutcome outcome = helly::minimize_max_distance(fam, opts);
  emit(out, helly::io::to_json(outcome).dump(2) + "\n");
  return 0;
}

int cmd_counterexample(int k, const std::string& embed_file, double delta,
                       const std::string& out) {
  if (embed_file.empty()) {
    helly::CounterexampleInstance inst = helly::build_linf_counterexample(k);
    emit(out, helly::io::to_json(inst).dump(2) + "\n");
    return 0;
  }
  json ej = helly::io::load_json_file(embed_file);
  helly::NormSpec target = helly::io::space_from_json(ej.at("space"), "/space");
  helly::Embedding emb;
  emb.eta = ej.value("eta", 0.0);
  const json& mj = ej.at("map");
  emb.map.resize(mj.size(), mj.empty() ? 0 : mj[0].size());
  for (std::size_t r = 0; r < mj.size(); ++r) {
    for (std::size_t c = 0; c < mj[r].size(); ++c) emb.map(r, c) = mj[r][c].get<double>();
  }
  helly::TransferResult res = helly::transfer_counterexample(k, target, emb, delta);
  json out_j = helly::io::to_json(helly::to_colorful(res.family), &res.witnesses);
  out_j["certificate"] = helly::io::to_json(res.certificate);
  out_j["achieved_gap"] = res.achieved_gap;
  emit(out, out_j.dump(2) + "\n");
  return 0;
}

int cmd_maurey(const std::string& in, int k, int trials, std::uint64_t seed, bool colorful,
               const std::string& out) {
  json j = helly::io::load_json_file(in);
  helly::NormSpec space = helly::io::space_from_json(j.at("space"), "/space");
  helly::MaureyResult res;
  if (colorful) {
    const json& gj = j.at("groups");
    std::vector<helly::PointCloud> groups;
    for (std::size_t i = 0; i < gj.size(); ++i) {
      groups.push_back(helly::io::cloud_from_json(gj[i], "/groups/" + std::to_string(i)));
    }
    helly::ColorGroup group = helly::make_color_group(std::move(groups), space);
    res = helly::colorful_maurey_sample(group, trials, seed, space);
  } else {
    helly::PointCloud cloud = helly::io::cloud_from_json(j);
    res = helly::maurey_sample(cloud, k, trials, seed, space);
  }
  emit(out, helly::io::to_json(res).dump(2) + "\n");
  return 0;
}

int cmd_sweep(const helly::ExperimentConfig& cfg, const std::string& out,
              const std::string& format) {
  std::vector<helly::SweepRow> rows = helly::run_sweep(cfg);
  emit(out, format == "csv" ? helly::sweep_csv(rows) : helly::sweep_json(rows));
  return helly::sweep_failed(rows) ? 1 : 0;
}

int cmd_verify(const std::string& family_file, const std::string& cert_file, double tol) {
  helly::Family fam = helly::io::family_from_json(helly::io::load_json_file(family_file));
  json cj = helly::io::load_json_file(cert_file);
  if (cj.contains("certificate")) cj = cj["certificate"];  // accept counterexample output
  helly::LowerCertificate cert = helly::io::certificate_from_json(cj);
  std::string why;
  bool ok = helly::verify_lower_bound(fam, cert, tol, &why);
  if (ok) {
    std::cout << "certificate valid: every center keeps max distance >= "
              << cert.bound << " (tol " << tol << ")\n";
    return 0;
  }
  std::cout << "certificate INVALID: " << why << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"no-dimensional Helly toolkit: max-distance centers, Maurey sampling, "
               "hard l_inf families, certificate checks"};
  app.require_subcommand(1);

  // solve
  std::string in_file, out_file, embed_file, cert_file;
  double tol = 1e-6, delta = 1e-9;
  std::uint64_t seed = 0;
  int iters = 2000, starts = 8, k = 1, trials = 64;
  double lower_bound_val = 0.0;
  bool has_lower_bound = false, colorful = false;

  CLI::App* solve = app.add_subcommand("solve", "family JSON -> outcome JSON");
  solve->add_option("--in", in_file, "instance JSON file")->required();
  solve->add_option("--out", out_file, "output path (default stdout)");
  solve->add_option("--tol", tol, "optimality tolerance");
  solve->add_option("--seed", seed, "random seed");
  solve->add_option("--iters", iters, "iterations per start");
  solve->add_option("--starts", starts, "number of starts");
  auto* lb_opt = solve->add_option("--lower-bound", lower_bound_val,
                                   "known lower bound on the objective (Polyak steps)");

  // counterexample
  CLI::App* ce = app.add_subcommand("counterexample", "emit the hard l_inf^{2k} family");
  ce->add_option("--k", k, "subfamily size parameter")->required();
  ce->add_option("--embed", embed_file, "embedding JSON {space, map, eta} for transfer");
  ce->add_option("--delta", delta, "realization slack for transfer");
  ce->add_option("--out", out_file, "output path (default stdout)");

  // maurey
  CLI::App* maurey = app.add_subcommand("maurey", "sample sparse averages from a cloud");
  maurey->add_option("--in", in_file, "cloud JSON {space, points, weights}")->required();
  maurey->add_option("--k", k, "points per average");
  maurey->add_option("--trials", trials, "independent trials");
  maurey->add_option("--seed", seed, "random seed");
  maurey->add_flag("--colorful", colorful, "input holds one cloud per color");
  maurey->add_option("--out", out_file, "output path (default stdout)");

  // sweep
  helly::ExperimentConfig cfg;
  std::string mode_str = "helly", p_str = "2", format = "json";
  int dim = 10;
  std::vector<int> ks;
  CLI::App* sweep = app.add_subcommand("sweep", "bound sweeps over k");
  sweep->add_option("--mode", mode_str, "helly | maurey | counterexample")
      ->check(CLI::IsMember({"helly", "maurey", "counterexample"}));
  sweep->add_option("--p", p_str, "space exponent (number or 'inf')");
  sweep->add_option("--dim", dim, "space dimension");
  sweep->add_option("--k", ks, "k values")->delimiter(',')->required();
  sweep->add_option("--instances", cfg.instances, "instances per k");
  sweep->add_option("--trials", cfg.trials, "sampler trials (maurey mode)");
  sweep->add_option("--cloud-size", cfg.cloud_size, "points per cloud (maurey mode)");
  sweep->add_option("--sizes", cfg.sizes, "per-color set counts")->delimiter(',');
  sweep->add_option("--seed", cfg.seed, "random seed");
  sweep->add_option("--tol", cfg.tol, "comparison tolerance");
  sweep->add_option("--iters", cfg.solver_iters, "solver iterations per start");
  sweep->add_option("--starts", cfg.solver_starts, "solver starts");
  sweep->add_option("--out", out_file, "output path (default stdout)");
  sweep->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));

  // verify
  CLI::App* verify = app.add_subcommand("verify", "check a lower certificate against a family");
  verify->add_option("--family", in_file, "family JSON")->required();
  verify->add_option("--cert", cert_file, "certificate JSON")->required();
  verify->add_option("--tol", tol, "verification tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  has_lower_bound = lb_opt->count() > 0;

  try {
    if (solve->parsed()) {
      return cmd_solve(in_file, out_file, tol, seed, iters, starts,
                       has_lower_bound ? std::optional<double>(lower_bound_val) : std::nullopt);
    }
    if (ce->parsed()) return cmd_counterexample(k, embed_file, delta, out_file);
    if (maurey->parsed()) return cmd_maurey(in_file, k, trials, seed, colorful, out_file);
    if (sweep->parsed()) {
      cfg.ks = ks;
      cfg.space = helly::NormSpec(dim, parse_exponent(p_str));
      if (mode_str == "helly") cfg.mode = helly::SweepMode::helly;
      if (mode_str == "maurey") cfg.mode = helly::SweepMode::maurey;
      if (mode_str == "counterexample") cfg.mode = helly::SweepMode::counterexample;
      return cmd_sweep(cfg, out_file, format);
    }
    if (verify->parsed()) return cmd_verify(in_file, cert_file, tol);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
