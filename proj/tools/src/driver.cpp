#include "aweno/driver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace aweno {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "off" || v == "no") return false;
  throw Error(ErrorKind::config, key + ": expected a boolean, got '" + v + "'");
}

template <typename T>
T parse_number(const std::string& key, const std::string& v) {
  std::istringstream in(v);
  T out{};
  in >> out;
  if (in.fail() || !in.eof()) throw Error(ErrorKind::config, key + ": bad number '" + v + "'");
  return out;
}

std::string fmt_g(double v, int digits = 17) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string fmt_e(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3E", v);
  return buf;
}

template <int Dim>
RunResult run_dim(const ProblemSpec& p, const RunConfig& cfg, int nx, int ny) {
  SchemeOptions scheme;
  scheme.order = cfg.order;
  scheme.backend = cfg.backend;
  scheme.split_xi = cfg.split_xi;
  scheme.limiter.interpolation = cfg.pp_interp;
  scheme.limiter.flux = cfg.pp_flux;
  TimeControl tc;
  tc.cfl = cfg.cfl;
  tc.t_end = p.t_end;
  tc.accuracy_mode = cfg.accuracy_mode;
  tc.h0 = cfg.h0 > 0.0 ? cfg.h0 : (p.x_max - p.x_min) / 20.0;

  const Grid grid = make_grid(p, nx, ny, cfg.order);
  const GasModel gas(p.gamma);
  Solver<Dim> solver(grid, gas, p.boundary, p.source, scheme, tc);
  initialize(solver, p);

  RunResult res;
  constexpr int M = Solver<Dim>::M;
  const auto t0 = solver.totals();
  std::array<double, M> scale{};
  const double vol = grid.dx() * (Dim == 2 ? grid.dy() : 1.0);
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      for (int c = 0; c < M; ++c) scale[c] += std::abs(solver.state()(i, j)[c]) * vol;
    }
  }

  if (cfg.max_steps > 0) {
    solver.advance_steps(cfg.max_steps);
  } else {
    solver.advance();
  }

  const auto t1 = solver.totals();
  for (int c = 0; c < M; ++c) {
    res.initial_totals[c] = t0[c];
    res.final_totals[c] = t1[c];
    if (scale[c] > 0.0) {
      res.conservation_drift = std::max(res.conservation_drift, std::abs(t1[c] - t0[c]) / scale[c]);
    }
  }
  res.stats = solver.stats();
  res.seconds_per_step = res.stats.steps > 0 ? res.stats.wall_seconds / res.stats.steps : 0.0;

  Snapshot& s = res.snapshot;
  s.problem = p.id;
  s.dim = Dim;
  s.nx = grid.nx;
  s.ny = grid.ny;
  s.order = cfg.order;
  s.backend = cfg.backend;
  s.gamma = p.gamma;
  s.t = solver.time();
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const auto w = cons_to_prim(ConservedState<M>{solver.state()(i, j)}, gas);
      s.x.push_back(grid.xc(i));
      if (Dim == 2) s.y.push_back(grid.yc(j));
      s.rho.push_back(w.rho());
      s.u.push_back(w.u());
      if (Dim == 2) s.v.push_back(w.v());
      s.p.push_back(w.p());
      s.S.push_back(entropy_S(w, gas));
    }
  }
  return res;
}

RunResult run_problem(ProblemSpec p, const RunConfig& cfg) {
  validate(cfg);
  if (cfg.gamma) p.gamma = *cfg.gamma;
  if (cfg.t_end) p.t_end = *cfg.t_end;
  int nx = cfg.nx > 0 ? cfg.nx : p.nx;
  int ny = p.ny;
  if (p.dim == 2) {
    if (cfg.ny > 0) {
      ny = cfg.ny;
    } else if (cfg.nx > 0) {
      ny = std::max(1, static_cast<int>(std::lround(static_cast<double>(cfg.nx) * p.ny / p.nx)));
    }
    return run_dim<2>(p, cfg, nx, ny);
  }
  return run_dim<1>(p, cfg, nx, 1);
}

ProblemSpec uniform_flow(int dim) {
  ProblemSpec p;
  p.id = "uniform";
  p.dim = dim;
  p.x_min = p.y_min = 0.0;
  p.x_max = p.y_max = 1.0;
  p.t_end = std::numeric_limits<double>::max();
  p.initial = [](double, double) -> Prim4 { return {1.0, 0.5, 0.25, 1.0}; };
  return p;
}

}  // namespace

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  const std::string k = trim(key);
  const std::string v = trim(value);
  if (k == "problem") {
    cfg.problem = v;
  } else if (k == "order") {
    cfg.order = parse_number<int>(k, v);
  } else if (k == "backend") {
    cfg.backend = parse_backend(v);
  } else if (k == "n" || k == "nx") {
    cfg.nx = parse_number<int>(k, v);
  } else if (k == "ny") {
    cfg.ny = parse_number<int>(k, v);
  } else if (k == "cfl") {
    cfg.cfl = parse_number<double>(k, v);
  } else if (k == "gamma") {
    cfg.gamma = parse_number<double>(k, v);
  } else if (k == "tend") {
    cfg.t_end = parse_number<double>(k, v);
  } else if (k == "pp-interp" || k == "pp_interp") {
    cfg.pp_interp = parse_bool(k, v);
  } else if (k == "pp-flux" || k == "pp_flux") {
    cfg.pp_flux = parse_bool(k, v);
  } else if (k == "accuracy-mode" || k == "accuracy_mode") {
    cfg.accuracy_mode = parse_bool(k, v);
  } else if (k == "h0") {
    cfg.h0 = parse_number<double>(k, v);
  } else if (k == "split-xi" || k == "split_xi") {
    cfg.split_xi = parse_bool(k, v);
  } else if (k == "steps") {
    cfg.max_steps = parse_number<int>(k, v);
  } else if (k == "out") {
    cfg.out_dir = v;
  } else if (k == "seed") {
    cfg.seed = parse_number<std::uint64_t>(k, v);
  } else {
    throw Error(ErrorKind::config, "unknown setting '" + k + "'");
  }
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::config, "cannot open config file " + path);
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::config, path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1));
  }
  return cfg;
}

void validate(const RunConfig& cfg) {
  WenoOrder{cfg.order};
  if (!(cfg.cfl > 0.0 && cfg.cfl <= 1.0)) {
    throw Error(ErrorKind::config, "CFL must lie in (0, 1], got " + fmt_g(cfg.cfl, 6));
  }
  if (cfg.nx < 0 || cfg.ny < 0) throw Error(ErrorKind::config, "cell counts must be positive");
  if (cfg.gamma && !(*cfg.gamma > 1.0)) throw Error(ErrorKind::config, "gamma must exceed 1");
  if (cfg.t_end && !(*cfg.t_end > 0.0)) throw Error(ErrorKind::config, "end time must be positive");
}

RunResult run(const RunConfig& cfg) { return run_problem(make_problem(cfg.problem), cfg); }

ErrorNorms error_norms(std::span<const double> numeric, std::span<const double> exact,
                       double cell_volume) {
  if (numeric.size() != exact.size()) throw Error(ErrorKind::config, "error_norms size mismatch");
  ErrorNorms n;
  double s1 = 0.0;
  double s2 = 0.0;
  for (std::size_t i = 0; i < numeric.size(); ++i) {
    const double e = std::abs(numeric[i] - exact[i]);
    s1 += e;
    s2 += e * e;
    n.linf = std::max(n.linf, e);
  }
  n.l1 = cell_volume * s1;
  n.l2 = std::sqrt(cell_volume * s2);
  return n;
}

ErrorNorms density_errors(const Snapshot& s, const ProblemSpec& p) {
  std::vector<double> ex;
  ex.reserve(s.rho.size());
  const double dx = (p.x_max - p.x_min) / s.nx;
  double vol = dx;
  if (s.dim == 2) {
    vol *= (p.y_max - p.y_min) / s.ny;
    for (std::size_t i = 0; i < s.rho.size(); ++i) ex.push_back(p.exact(s.x[i], s.y[i], s.t)[0]);
  } else {
    ex = exact_profile(p, s.nx, s.t).rho;
  }
  return error_norms(s.rho, ex, vol);
}

double observed_order(double e_coarse, double e_fine, int n_coarse, int n_fine) {
  return std::log(e_coarse / e_fine) / std::log(static_cast<double>(n_fine) / n_coarse);
}

std::vector<ConvergenceRow> convergence_study(const RunConfig& base, const std::vector<int>& ns) {
  if (ns.empty()) throw Error(ErrorKind::config, "convergence study needs at least one n");
  const ProblemSpec p = make_problem(base.problem);
  if (p.reference != ReferenceKind::exact) {
    throw Error(ErrorKind::config, base.problem + " has no exact smooth solution");
  }
  std::vector<ConvergenceRow> rows;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    RunConfig cfg = base;
    cfg.accuracy_mode = true;
    cfg.h0 = (p.x_max - p.x_min) / ns.front();
    cfg.nx = ns[i];
    cfg.ny = p.dim == 2 ? ns[i] : 0;
    const RunResult r = run_problem(p, cfg);
    const ErrorNorms e = density_errors(r.snapshot, p);
    ConvergenceRow row;
    row.n = ns[i];
    row.l2_error = e.l2;
    row.linf_error = e.linf;
    if (i == 0) {
      row.l2_order = row.linf_order = std::numeric_limits<double>::quiet_NaN();
    } else {
      const auto& prev = rows.back();
      row.l2_order = observed_order(prev.l2_error, e.l2, prev.n, row.n);
      row.linf_order = observed_order(prev.linf_error, e.linf, prev.n, row.n);
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<EfficiencyRow> efficiency_report(int dim, int n, const std::vector<int>& orders,
                                             const std::vector<LcdBackend>& backends, int steps) {
  std::vector<EfficiencyRow> rows;
  const ProblemSpec p = uniform_flow(dim);
  for (int k : orders) {
    const std::size_t first = rows.size();
    for (LcdBackend b : backends) {
      RunConfig cfg;
      cfg.problem = p.id;
      cfg.order = k;
      cfg.backend = b;
      cfg.nx = n;
      cfg.ny = dim == 2 ? n : 0;
      cfg.max_steps = steps;
      const RunResult r = run_problem(p, cfg);
      EfficiencyRow row;
      row.dim = dim;
      row.order = k;
      row.backend = b;
      row.steps = static_cast<int>(r.stats.steps);
      row.seconds_per_step = r.seconds_per_step;
      row.left_mults = r.stats.mults.left;
      row.right_mults = r.stats.mults.right;
      row.transform_evals = r.stats.mults.transform;
      const std::uint64_t per_stage = dim == 2 ? static_cast<std::uint64_t>(n + 1) * n * 2
                                               : static_cast<std::uint64_t>(n + 1);
      row.interfaces = per_stage * 3 * static_cast<std::uint64_t>(row.steps);
      rows.push_back(row);
    }
    const auto con = std::find_if(rows.begin() + first, rows.end(), [](const EfficiencyRow& r) {
      return r.backend == LcdBackend::ch_con;
    });
    for (auto it = rows.begin() + first; it != rows.end(); ++it) {
      if (con == rows.end()) {
        it->lcd_saving = it->time_saving = std::numeric_limits<double>::quiet_NaN();
        continue;
      }
      const double lcd = static_cast<double>(it->left_mults + it->right_mults);
      const double lcd_con = static_cast<double>(con->left_mults + con->right_mults);
      it->lcd_saving = 1.0 - lcd / lcd_con;
      it->time_saving = 1.0 - it->seconds_per_step / con->seconds_per_step;
    }
  }
  return rows;
}

std::string format_convergence(const std::vector<ConvergenceRow>& rows) {
  std::ostringstream out;
  out << "N\tl2 error\tl2 order\tlinf error\tlinf order\n";
  for (const auto& r : rows) {
    out << r.n << '\t' << fmt_e(r.l2_error) << '\t'
        << (std::isnan(r.l2_order) ? std::string("-") : fmt_g(r.l2_order, 4)) << '\t'
        << fmt_e(r.linf_error) << '\t'
        << (std::isnan(r.linf_order) ? std::string("-") : fmt_g(r.linf_order, 4)) << '\n';
  }
  return out.str();
}

std::string format_efficiency(const std::vector<EfficiencyRow>& rows) {
  std::ostringstream out;
  out << "dim\tk\tbackend\tsteps\ts/step\tleft mults\tright mults\ttransforms\tLCD saving\ttime saving\n";
  for (const auto& r : rows) {
    const auto pct = [](double v) { return std::isnan(v) ? std::string("-") : fmt_g(100.0 * v, 4) + "%"; };
    out << r.dim << '\t' << r.order << '\t' << to_string(r.backend) << '\t' << r.steps << '\t'
        << fmt_e(r.seconds_per_step) << '\t' << r.left_mults << '\t' << r.right_mults << '\t'
        << r.transform_evals << '\t' << pct(r.lcd_saving) << '\t' << pct(r.time_saving) << '\n';
  }
  return out.str();
}

std::string snapshot_text(const Snapshot& s) {
  std::ostringstream out;
  out << "# problem=" << s.problem << " dim=" << s.dim << " nx=" << s.nx << " ny=" << s.ny
      << " order=" << s.order << " backend=" << to_string(s.backend) << " gamma=" << fmt_g(s.gamma)
      << " t=" << fmt_g(s.t) << " columns=" << (s.dim == 2 ? "x,y,rho,u,v,p,S" : "x,rho,u,p,S")
      << '\n';
  for (std::size_t i = 0; i < s.rho.size(); ++i) {
    out << fmt_g(s.x[i]);
    if (s.dim == 2) out << ' ' << fmt_g(s.y[i]);
    out << ' ' << fmt_g(s.rho[i]) << ' ' << fmt_g(s.u[i]);
    if (s.dim == 2) out << ' ' << fmt_g(s.v[i]);
    out << ' ' << fmt_g(s.p[i]) << ' ' << fmt_g(s.S[i]) << '\n';
  }
  return out.str();
}

void emit_snapshot(const RunResult& r, const std::string& path) {
  {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::config, "cannot write " + path);
    out << snapshot_text(r.snapshot);
    if (!out) throw Error(ErrorKind::config, "write failed: " + path);
  }
  const auto& st = r.stats;
  nlohmann::json meta{
      {"problem", r.snapshot.problem},
      {"dim", r.snapshot.dim},
      {"cells", {r.snapshot.nx, r.snapshot.ny}},
      {"order", r.snapshot.order},
      {"backend", std::string(to_string(r.snapshot.backend))},
      {"gamma", r.snapshot.gamma},
      {"t", r.snapshot.t},
      {"steps", st.steps},
      {"retried_steps", st.retried_steps},
      {"interp_limiter_hits", st.interp_limiter_hits},
      {"flux_limiter_hits", st.flux_limiter_hits},
      {"flux_limited_steps", st.flux_limited_steps},
      {"min_rho", st.min_rho},
      {"min_p", st.min_p},
      {"dt_min", st.dt_min},
      {"dt_max", st.dt_max},
      {"left_mults", st.mults.left},
      {"right_mults", st.mults.right},
      {"transform_evals", st.mults.transform},
      {"conservation_drift", r.conservation_drift},
      {"initial_totals", r.initial_totals},
      {"final_totals", r.final_totals},
      {"wall_seconds", st.wall_seconds},
      {"seconds_per_step", r.seconds_per_step},
  };
  std::ofstream js(path + ".json");
  if (!js) throw Error(ErrorKind::config, "cannot write " + path + ".json");
  js << meta.dump(2) << '\n';
}

}  // namespace aweno
