// beamalign: beam alignment from truncated rate-derivative polynomial systems.
//
//   beamalign solve    --seed 209 --eps1 0.7 --eps2 0.7
//   beamalign sweep    --eps-pairs 0.6:0.6,0.7:0.7 --out results.csv --svg plot.svg
//   beamalign baseline --grid 360
//   beamalign series   --which f1 --eps 0.6 --out coeffs.csv
//
// Every subcommand accepts --config FILE with `key = value` lines; flags given
// on the command line override the file.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "beamalign/config.hpp"
#include "beamalign/error.hpp"
#include "beamalign/grid_search.hpp"
#include "beamalign/io.hpp"
#include "beamalign/pipeline.hpp"

using namespace beamalign;

namespace {

struct CommonFlags {
  std::string config;
  std::uint64_t seed = 0;
  std::size_t nt = 0, nr = 0;
  int degree_cap = 0;
  std::string centers;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* nt_opt = nullptr;
  CLI::Option* nr_opt = nullptr;
  CLI::Option* cap_opt = nullptr;
  CLI::Option* center_opt = nullptr;

  void attach(CLI::App* app) {
    app->add_option("--config", config, "key = value config file")->check(CLI::ExistingFile);
    seed_opt = app->add_option("--seed", seed, "channel RNG seed");
    nt_opt = app->add_option("--nt", nt, "transmit antennas");
    nr_opt = app->add_option("--nr", nr, "receive antennas");
    cap_opt = app->add_option("--degree-cap", degree_cap, "truncation degree of the rate series");
    center_opt = app->add_option("--center", centers, "expansion point(s) 'rx,tx[;rx,tx...]'");
  }

  AlignmentConfig resolve() const {
    AlignmentConfig cfg;
    if (!config.empty()) load_config(cfg, std::filesystem::path(config));
    if (seed_opt->count()) cfg.seed = seed;
    if (nt_opt->count()) cfg.n_tx = nt;
    if (nr_opt->count()) cfg.n_rx = nr;
    if (cap_opt->count()) cfg.degree_cap = degree_cap;
    if (center_opt->count()) cfg.centers = parse_centers(centers);
    cfg.validate();
    return cfg;
  }
};

int run_solve(const CommonFlags& common, double eps1, double eps2) {
  const auto cfg = common.resolve();
  const auto h = cfg.channel();
  const auto res = align(h, cfg.alphas, eps1, eps2, cfg);
  std::printf("theta_rx  %.12f\n", res.best.rx);
  std::printf("theta_tx  %.12f\n", res.best.tx);
  std::printf("r_est     %.12f\n", res.r_est);
  std::printf("eta       %lld\n", static_cast<long long>(res.eta));
  std::printf("delta     %.12g\n", res.delta);
  std::printf("roots     %zu (real in domain: %zu)%s\n", res.n_roots, res.n_real_roots,
              res.no_roots ? " no_roots" : "");
  return 0;
}

int run_sweep_cmd(AlignmentConfig cfg, const std::string& out, const std::string& svg) {
  const auto records = run_sweep(cfg);
  if (out.empty()) {
    write_results_csv(std::cout, records);
  } else {
    std::ofstream os(out);
    if (!os) throw std::runtime_error("cannot open " + out);
    write_results_csv(os, records);
  }
  if (!svg.empty()) {
    std::ofstream os(svg);
    if (!os) throw std::runtime_error("cannot open " + svg);
    write_sweep_svg(os, records);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Beam alignment from truncated rate-derivative polynomial systems"};
  app.require_subcommand(1);

  CommonFlags solve_flags, sweep_flags, base_flags, series_flags;

  auto* solve = app.add_subcommand("solve", "align one channel with thresholds (eps1, eps2)");
  solve_flags.attach(solve);
  double eps1 = 0.7, eps2 = 0.7;
  solve->add_option("--eps1", eps1, "threshold for dR/dtheta_rx")->capture_default_str();
  solve->add_option("--eps2", eps2, "threshold for dR/dtheta_tx")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "threshold-pair sweep written as results.csv");
  sweep_flags.attach(sweep);
  std::string pairs, out, svg;
  std::size_t sweep_grid = 0;
  bool timing = false;
  auto* pairs_opt = sweep->add_option("--eps-pairs", pairs, "pairs 'e1:e2,e1:e2,...'");
  auto* sweep_grid_opt = sweep->add_option("--grid", sweep_grid, "baseline grid points per axis");
  sweep->add_option("--out", out, "results CSV (stdout when omitted)");
  sweep->add_option("--svg", svg, "plot of objective and |R_e - R_x| per pair");
  sweep->add_flag("--timing", timing, "record per-pair wall time in wall_ms");

  auto* baseline = app.add_subcommand("baseline", "exhaustive beam sweep");
  base_flags.attach(baseline);
  std::size_t grid = 0;
  auto* grid_opt = baseline->add_option("--grid", grid, "grid points per axis");

  auto* series = app.add_subcommand("series", "normalized Taylor coefficients of f1 or f2");
  series_flags.attach(series);
  std::string which = "f1", series_out = "coeffs.csv";
  double eps = 0.0;
  series->add_option("--which", which, "f1 (d/dtheta_rx) or f2 (d/dtheta_tx)")
      ->check(CLI::IsMember({"f1", "f2"}))
      ->capture_default_str();
  auto* eps_opt = series->add_option("--eps", eps, "mark terms kept at this threshold");
  series->add_option("--out", series_out, "output CSV")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) return run_solve(solve_flags, eps1, eps2);
    if (*sweep) {
      auto cfg = sweep_flags.resolve();
      if (pairs_opt->count()) cfg.eps_pairs = parse_eps_pairs(pairs);
      if (sweep_grid_opt->count()) cfg.grid_points = sweep_grid;
      if (timing) cfg.record_timing = true;
      cfg.validate();
      return run_sweep_cmd(cfg, out, svg);
    }
    if (*baseline) {
      auto cfg = base_flags.resolve();
      if (grid_opt->count()) cfg.grid_points = grid;
      cfg.validate();
      const auto r = exhaustive_search(cfg.channel(), cfg.alphas, cfg.grid_points);
      std::printf("theta_rx  %.12f\n", r.angles.rx);
      std::printf("theta_tx  %.12f\n", r.angles.tx);
      std::printf("r_exh     %.12f\n", r.rate);
      return 0;
    }
    if (*series) {
      const auto cfg = series_flags.resolve();
      std::optional<double> e;
      if (eps_opt->count()) e = eps;
      dump_series_csv(cfg, which == "f1" ? Variable::rx : Variable::tx, e, series_out);
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "beamalign: %s\n", e.what());
    return 1;
  }
  return 0;
}
