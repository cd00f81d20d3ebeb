// aweno: run problems, convergence studies and LCD cost benchmarks.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "aweno/driver.hpp"

namespace {

using namespace aweno;

// Flags shared by run and converge; only the ones given override the config file.
struct Overrides {
  std::optional<std::string> config, problem, backend, out;
  std::optional<int> order, n, nx, ny, steps;
  std::optional<double> cfl, tend, gamma;
  bool no_pp_interp = false;
  bool no_pp_flux = false;
  bool accuracy_mode = false;
  bool split_xi = false;

  void attach(CLI::App* app) {
    app->add_option("--config", config, "key=value file; flags given here take precedence");
    app->add_option("--problem", problem, "problem id (see list-problems)");
    app->add_option("--order", order, "WENO order k: 3, 5, 7 or 9");
    app->add_option("--backend", backend, "ch_ri, ch_con or cp_con");
    app->add_option("--n", n, "cells (x cells in 2D; y follows the default aspect)");
    app->add_option("--nx", nx, "x cells");
    app->add_option("--ny", ny, "y cells");
    app->add_option("--cfl", cfl, "CFL number");
    app->add_option("--tend", tend, "end time");
    app->add_option("--gamma", gamma, "ratio of specific heats");
    app->add_option("--steps", steps, "stop after this many steps");
    app->add_flag("--no-pp-interp", no_pp_interp, "disable the interpolation limiter");
    app->add_flag("--no-pp-flux", no_pp_flux, "disable the flux limiter");
    app->add_flag("--accuracy-mode", accuracy_mode, "scale dt by (h/h0)^(k/3-1)");
    app->add_flag("--split-xi", split_xi, "ch_con: split left action");
    app->add_option("--out", out, "output directory");
  }

  RunConfig resolve() const {
    RunConfig cfg = config ? load_config(*config) : RunConfig{};
    if (problem) cfg.problem = *problem;
    if (order) cfg.order = *order;
    if (backend) cfg.backend = parse_backend(*backend);
    if (n) cfg.nx = *n;
    if (nx) cfg.nx = *nx;
    if (ny) cfg.ny = *ny;
    if (cfl) cfg.cfl = *cfl;
    if (tend) cfg.t_end = *tend;
    if (gamma) cfg.gamma = *gamma;
    if (steps) cfg.max_steps = *steps;
    if (no_pp_interp) cfg.pp_interp = false;
    if (no_pp_flux) cfg.pp_flux = false;
    if (accuracy_mode) cfg.accuracy_mode = true;
    if (split_xi) cfg.split_xi = true;
    if (out) cfg.out_dir = *out;
    validate(cfg);
    return cfg;
  }
};

std::string run_name(const RunConfig& cfg, const RunResult& r) {
  std::string name = cfg.problem + "_k" + std::to_string(cfg.order) + "_" +
                     std::string(to_string(cfg.backend)) + "_" + std::to_string(r.snapshot.nx);
  if (r.snapshot.dim == 2) name += "x" + std::to_string(r.snapshot.ny);
  return name + ".dat";
}

int do_run(const Overrides& ov) {
  const RunConfig cfg = ov.resolve();
  const RunResult r = run(cfg);
  const auto& st = r.stats;
  std::printf("%s k=%d %s cells=%dx%d t=%.6g steps=%ld retried=%ld\n", cfg.problem.c_str(),
              cfg.order, std::string(to_string(cfg.backend)).c_str(), r.snapshot.nx, r.snapshot.ny,
              r.snapshot.t, st.steps, st.retried_steps);
  std::printf("min rho %.6e  min p %.6e  conservation drift %.3e\n", st.min_rho, st.min_p,
              r.conservation_drift);
  std::printf("limiter hits: interpolation %ld, flux %ld (%ld steps)\n", st.interp_limiter_hits,
              st.flux_limiter_hits, st.flux_limited_steps);
  std::printf("mults: left %llu right %llu transforms %llu  wall %.3fs (%.3e s/step)\n",
              static_cast<unsigned long long>(st.mults.left),
              static_cast<unsigned long long>(st.mults.right),
              static_cast<unsigned long long>(st.mults.transform), st.wall_seconds,
              r.seconds_per_step);
  if (!cfg.out_dir.empty()) {
    std::filesystem::create_directories(cfg.out_dir);
    const std::string path = (std::filesystem::path(cfg.out_dir) / run_name(cfg, r)).string();
    emit_snapshot(r, path);
    std::printf("wrote %s\n", path.c_str());
  }
  return 0;
}

int do_converge(const Overrides& ov, const std::vector<int>& ns) {
  RunConfig cfg = ov.resolve();
  const auto rows = convergence_study(cfg, ns);
  const std::string table = format_convergence(rows);
  std::fputs(table.c_str(), stdout);
  if (!cfg.out_dir.empty()) {
    std::filesystem::create_directories(cfg.out_dir);
    const auto path = std::filesystem::path(cfg.out_dir) /
                      (cfg.problem + "_k" + std::to_string(cfg.order) + "_" +
                       std::string(to_string(cfg.backend)) + "_convergence.tsv");
    std::FILE* f = std::fopen(path.string().c_str(), "w");
    if (!f) throw Error(ErrorKind::config, "cannot write " + path.string());
    std::fputs(table.c_str(), f);
    std::fclose(f);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"High-order A-WENO solver for the compressible Euler equations"};
  app.require_subcommand(1);

  Overrides run_ov;
  auto* run_cmd = app.add_subcommand("run", "advance one problem to its end time");
  run_ov.attach(run_cmd);

  Overrides conv_ov;
  std::vector<int> ns{20, 40, 60, 80, 100, 120, 140, 160};
  auto* conv_cmd = app.add_subcommand("converge", "accuracy-mode refinement study");
  conv_ov.attach(conv_cmd);
  conv_cmd->add_option("--ns", ns, "cell counts, coarsest first")->delimiter(',');

  int bench_dim = 1;
  int bench_n = 0;
  int bench_steps = 5;
  std::vector<int> bench_orders{5, 7, 9};
  std::vector<std::string> bench_backends{"ch_ri", "ch_con", "cp_con"};
  auto* bench_cmd = app.add_subcommand("bench", "per-step cost and LCD multiplication counts");
  bench_cmd->add_option("--dim", bench_dim, "1 or 2")->check(CLI::IsMember({1, 2}));
  bench_cmd->add_option("--n", bench_n, "cells per direction (default 2000 in 1D, 400 in 2D)");
  bench_cmd->add_option("--steps", bench_steps, "timed steps");
  bench_cmd->add_option("--orders", bench_orders, "orders to time")->delimiter(',');
  bench_cmd->add_option("--backends", bench_backends, "backends to time")->delimiter(',');

  app.add_subcommand("list-problems", "print the problem ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run_cmd->parsed()) return do_run(run_ov);
    if (conv_cmd->parsed()) return do_converge(conv_ov, ns);
    if (bench_cmd->parsed()) {
      std::vector<LcdBackend> backends;
      for (const auto& b : bench_backends) backends.push_back(parse_backend(b));
      for (int k : bench_orders) WenoOrder{k};
      const int n = bench_n > 0 ? bench_n : (bench_dim == 2 ? 400 : 2000);
      const auto rows = efficiency_report(bench_dim, n, bench_orders, backends, bench_steps);
      std::fputs(format_efficiency(rows).c_str(), stdout);
      return 0;
    }
    for (const auto& id : problem_ids()) {
      const ProblemSpec p = make_problem(id);
      std::printf("%-20s %dD  T=%g  default cells %d%s\n", id.c_str(), p.dim, p.t_end, p.nx,
                  p.dim == 2 ? ("x" + std::to_string(p.ny)).c_str() : "");
    }
    return 0;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.numerical() ? 3 : 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
