#pragma once

// Run orchestration shared by the command-line tool, the benchmarks and
// the acceptance suite.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aweno/problems.hpp"
#include "aweno/solver.hpp"

namespace aweno {

struct RunConfig {
  std::string problem = "sod";
  int order = 5;
  LcdBackend backend = LcdBackend::ch_ri;
  int nx = 0;  // 0: problem default
  int ny = 0;
  double cfl = 0.5;
  std::optional<double> gamma;
  std::optional<double> t_end;
  bool pp_interp = true;
  bool pp_flux = true;
  bool accuracy_mode = false;
  double h0 = 0.0;  // 0 with accuracy_mode: domain length / 20
  bool split_xi = false;
  int max_steps = 0;  // > 0: stop after this many steps instead of at t_end
  std::string out_dir;
  std::uint64_t seed = 0;
};

// key=value settings; keys match the long CLI flags without dashes.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);
RunConfig load_config(const std::string& path);
void validate(const RunConfig& cfg);

// Point values in row-major order with x fastest.
struct Snapshot {
  std::string problem;
  int dim = 1;
  int nx = 0, ny = 1;
  int order = 5;
  LcdBackend backend = LcdBackend::ch_ri;
  double gamma = 1.4;
  double t = 0.0;
  std::vector<double> x, y, rho, u, v, p, S;
};

struct RunResult {
  Snapshot snapshot;
  RunStats stats;
  std::array<double, 4> initial_totals{};
  std::array<double, 4> final_totals{};
  // max over components of |final - initial| / sum |q| at t = 0
  double conservation_drift = 0.0;
  double seconds_per_step = 0.0;
};

RunResult run(const RunConfig& cfg);

struct ErrorNorms {
  double l1 = 0.0;  // cell_volume * sum |e|
  double l2 = 0.0;  // sqrt(cell_volume * sum e^2)
  double linf = 0.0;
};

ErrorNorms error_norms(std::span<const double> numeric, std::span<const double> exact,
                       double cell_volume);
// Density errors against the problem's exact solution at the snapshot time.
ErrorNorms density_errors(const Snapshot& s, const ProblemSpec& p);

struct ConvergenceRow {
  int n = 0;
  double l2_error = 0.0;
  double l2_order = 0.0;  // NaN on the first row
  double linf_error = 0.0;
  double linf_order = 0.0;
};

double observed_order(double e_coarse, double e_fine, int n_coarse, int n_fine);

// Accuracy-mode runs on each n (square grids in 2D); h0 from the first n.
std::vector<ConvergenceRow> convergence_study(const RunConfig& base, const std::vector<int>& ns);

struct EfficiencyRow {
  int dim = 1;
  int order = 5;
  LcdBackend backend = LcdBackend::ch_ri;
  int steps = 0;
  double seconds_per_step = 0.0;
  std::uint64_t left_mults = 0;
  std::uint64_t right_mults = 0;
  std::uint64_t transform_evals = 0;
  std::uint64_t interfaces = 0;  // interface evaluations (all stages, all sweeps)
  // 1 - lcd(ch_ri) / lcd(ch_con) at the same order; NaN when ch_con is absent
  double lcd_saving = 0.0;
  double time_saving = 0.0;
};

// Fixed number of steps on a uniform periodic flow (n cells, n x n in 2D).
std::vector<EfficiencyRow> efficiency_report(int dim, int n, const std::vector<int>& orders,
                                             const std::vector<LcdBackend>& backends, int steps);

std::string format_convergence(const std::vector<ConvergenceRow>& rows);
std::string format_efficiency(const std::vector<EfficiencyRow>& rows);

// Writes <path> (columns plus one header line) and <path>.json metadata.
void emit_snapshot(const RunResult& r, const std::string& path);
std::string snapshot_text(const Snapshot& s);

}  // namespace aweno
