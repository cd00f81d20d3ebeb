// Acceptance suite: one PASS/FAIL line per criterion, plus reduced-size
// 2D smoke runs selected with --smoke <dmr|rti|khi>.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "aweno/driver.hpp"
#include "aweno/exact_riemann.hpp"
#include "oracles.hpp"

using namespace aweno;

namespace {

constexpr double kPi = std::numbers::pi;

// Pinned tolerances.
constexpr double kOrderTol = 0.5;
constexpr double kErrorFactor = 3.0;
constexpr double kEPropertyTol = 1e-11;
constexpr double kMinLcdSavingK9 = 0.78;
constexpr double kShockL1Tol = 0.01;
constexpr double kOvershootFraction = 0.01;
constexpr int kDiscontinuityMargin = 5;
constexpr double kBackendL1Tol = 2e-3;
constexpr double kBetaTol = 1e-12;
constexpr double kConservationTol = 1e-12;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Reference l2 density errors for the periodic transport test.
struct ReferenceRow {
  int k;
  LcdBackend backend;
  std::vector<int> ns;
  std::vector<double> l2;
};

const std::vector<ReferenceRow>& reference_accuracy1() {
  static const std::vector<int> n8{20, 40, 60, 80, 100, 120, 140, 160};
  static const std::vector<int> n6{20, 40, 60, 80, 100, 120};
  static const std::vector<ReferenceRow> rows{
      {5, LcdBackend::ch_ri, n8, {8.02e-04, 3.53e-05, 4.95e-06, 1.19e-06, 3.88e-07, 1.54e-07, 7.03e-08, 3.54e-08}},
      {5, LcdBackend::ch_con, n8, {4.66e-04, 1.44e-05, 1.85e-06, 4.34e-07, 1.41e-07, 5.62e-08, 2.59e-08, 1.32e-08}},
      {7, LcdBackend::ch_ri, n8, {1.28e-04, 2.07e-06, 1.68e-07, 2.54e-08, 5.20e-09, 1.30e-09, 3.84e-10, 1.30e-10}},
      {7, LcdBackend::ch_con, n8, {3.52e-05, 4.99e-07, 4.56e-08, 7.91e-09, 1.86e-09, 5.26e-10, 1.69e-10, 6.04e-11}},
      {9, LcdBackend::ch_ri, n6, {1.95e-05, 4.70e-08, 1.38e-09, 1.09e-10, 1.48e-11, 3.25e-12}},
      {9, LcdBackend::ch_con, n6, {1.63e-05, 3.20e-08, 8.32e-10, 6.24e-11, 8.31e-12, 2.18e-12}},
  };
  return rows;
}

RunConfig accuracy_config(const std::string& problem, int k, LcdBackend b) {
  RunConfig cfg;
  cfg.problem = problem;
  cfg.order = k;
  cfg.backend = b;
  cfg.accuracy_mode = true;
  return cfg;
}

std::string label(int k, LcdBackend b) { return "k=" + std::to_string(k) + " " + std::string(to_string(b)); }

Outcome criterion1() {
  Outcome o;
  std::ostringstream d;
  for (const auto& row : reference_accuracy1()) {
    const auto rows = convergence_study(accuracy_config("accuracy1_1d", row.k, row.backend), row.ns);
    const double order = rows.back().l2_order;
    double worst_ratio = 1.0;
    int worst_n = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const double ratio = std::max(rows[i].l2_error / row.l2[i], row.l2[i] / rows[i].l2_error);
      if (ratio > worst_ratio) {
        worst_ratio = ratio;
        worst_n = rows[i].n;
      }
    }
    const bool ok_order = std::abs(order - row.k) <= kOrderTol;
    const bool ok_err = worst_ratio <= kErrorFactor;
    o.pass = o.pass && ok_order && ok_err;
    d << label(row.k, row.backend) << ": order " << fmt("%.3f", order) << (ok_order ? "" : " (out of band)")
      << ", worst error ratio " << fmt("%.2f", worst_ratio) << " at N=" << worst_n << (ok_err ? "" : " (too far)")
      << "; ";
  }
  o.detail = d.str();
  return o;
}

Outcome criterion2() {
  Outcome o;
  std::ostringstream d;
  const std::vector<int> ns{20, 40, 60, 80, 100, 120, 140, 160};
  for (auto [k, target] : {std::pair{7, 7.303}, std::pair{5, 5.481}}) {
    const auto rows = convergence_study(accuracy_config("accuracy2_1d", k, LcdBackend::ch_ri), ns);
    const double order = rows.back().l2_order;
    const bool ok = std::abs(order - target) <= kOrderTol;
    o.pass = o.pass && ok;
    d << "k=" << k << " ch_ri N=160 order " << fmt("%.3f", order) << " (target " << target << ")"
      << (ok ? "" : " out of band") << "; ";
  }
  o.detail = d.str();
  return o;
}

Outcome criterion3() {
  Outcome o;
  std::ostringstream d;
  const std::vector<int> ns{20, 40, 60, 80};
  for (auto [b, target] : {std::pair{LcdBackend::ch_ri, 4.931}, std::pair{LcdBackend::ch_con, 5.039}}) {
    const auto rows = convergence_study(accuracy_config("accuracy_2d", 5, b), ns);
    const double order = rows.back().l2_order;
    const bool ok = std::abs(order - target) <= kOrderTol;
    o.pass = o.pass && ok;
    d << to_string(b) << " N=80 l2 " << fmt("%.3e", rows.back().l2_error) << " order " << fmt("%.3f", order)
      << " (target " << target << "); ";
  }
  o.detail = d.str();
  return o;
}

Outcome criterion4() {
  Outcome o;
  std::ostringstream d;
  for (auto b : {LcdBackend::ch_ri, LcdBackend::ch_con, LcdBackend::cp_con}) {
    Grid g;
    g.x_max = 2.0;
    g.nx = 50;
    SchemeOptions s;
    s.order = 5;
    s.backend = b;
    TimeControl tc;
    tc.t_end = 1e9;
    Solver<1> solver(g, GasModel(1.4), {}, {}, s, tc);
    solver.set_initial([](double x, double) -> Prim4 { return {1.0 + 0.5 * std::sin(kPi * x), 1.0, 0.0, 1.0}; });
    solver.advance_steps(50);
    double dev = 0.0;
    for (int i = 0; i < g.nx; ++i) {
      const auto w = cons_to_prim(ConservedState<3>{solver.state()(i)}, solver.gas());
      dev = std::max({dev, std::abs(w.u() - 1.0), std::abs(w.p() - 1.0)});
    }
    if (b != LcdBackend::cp_con) o.pass = o.pass && dev <= kEPropertyTol;
    d << to_string(b) << " " << fmt("%.2e", dev) << (b == LcdBackend::cp_con ? " (not required)" : "") << "; ";
  }
  o.detail = "max |u-1|,|p-1| after 50 steps: " + d.str();
  return o;
}

Outcome criterion5() {
  Outcome o;
  std::ostringstream d;
  const GasModel gas(1.4);
  const auto measure = [&]<int M>(LcdBackend b, bool split) {
    const auto w = make_primitive<M>(1.2, 0.3, -0.4, 0.9);
    const auto q = prim_to_cons(w, gas);
    const auto roe = roe_average<M>(q, q, gas);
    const auto frame = build_frame<M>(roe, b, gas, Direction::x, split);
    MulCounter ctr;
    to_characteristic<M>(frame, q.q, ctr);
    return ctr.left;
  };
  const std::vector<std::tuple<std::string, std::uint64_t, std::uint64_t>> counts{
      {"ch_ri 1D", measure.template operator()<3>(LcdBackend::ch_ri, false), 1},
      {"ch_ri 2D", measure.template operator()<4>(LcdBackend::ch_ri, false), 1},
      {"ch_con 1D", measure.template operator()<3>(LcdBackend::ch_con, false), 9},
      {"ch_con 2D", measure.template operator()<4>(LcdBackend::ch_con, false), 16},
  };
  d << "left-action mults per call:";
  for (const auto& [name, got, want] : counts) {
    o.pass = o.pass && got == want;
    d << " " << name << "=" << got << (got == want ? "" : " (expected " + std::to_string(want) + ")");
  }
  d << " [split ch_con 1D=" << measure.template operator()<3>(LcdBackend::ch_con, true)
    << " 2D=" << measure.template operator()<4>(LcdBackend::ch_con, true) << "]";
  for (int dim : {1, 2}) {
    const auto rows = efficiency_report(dim, dim == 1 ? 400 : 64, {9}, {LcdBackend::ch_ri, LcdBackend::ch_con}, 3);
    for (const auto& r : rows) {
      if (r.backend != LcdBackend::ch_ri) continue;
      o.pass = o.pass && r.lcd_saving >= kMinLcdSavingK9;
      d << "; " << dim << "D k=9 LCD count saving " << fmt("%.2f", 100.0 * r.lcd_saving) << "% (wall-time saving "
        << fmt("%.1f", 100.0 * r.time_saving) << "%, reported only)";
    }
  }
  o.detail = d.str();
  return o;
}

Outcome criterion6() {
  Outcome o;
  std::ostringstream d;
  struct Case {
    std::string id;
    int n;
  };
  for (const Case& c : {Case{"leblanc", 2000}, Case{"sedov_1d", 2001}, Case{"double_rarefaction", 200}}) {
    for (auto b : {LcdBackend::ch_ri, LcdBackend::ch_con}) {
      for (int k : {5, 7, 9}) {
        RunConfig cfg;
        cfg.problem = c.id;
        cfg.nx = c.n;
        cfg.order = k;
        cfg.backend = b;
        bool ok = false;
        std::string what;
        try {
          const auto r = run(cfg);
          const double t_end = make_problem(c.id).t_end;
          ok = std::abs(r.snapshot.t - t_end) <= 1e-12 * t_end && r.stats.min_rho > 0.0 && r.stats.min_p > 0.0;
          what = "min rho " + fmt("%.2e", r.stats.min_rho) + " min p " + fmt("%.2e", r.stats.min_p);
        } catch (const Error& e) {
          what = e.what();
        }
        if (!ok) d << c.id << " " << label(k, b) << " failed: " << what << "; ";
        o.pass = o.pass && ok;
      }
    }
    d << c.id << " N=" << c.n << " done; ";
  }
  o.detail = d.str();
  return o;
}

struct ShockReport {
  double l1 = 0.0;
  double overshoot = 0.0;  // relative to the nearest exact jump
  std::vector<double> rho;
};

ShockReport shock_tube(const std::string& id, int k, LcdBackend b) {
  const ProblemSpec p = make_problem(id);
  RunConfig cfg;
  cfg.problem = id;
  cfg.nx = 200;
  cfg.order = k;
  cfg.backend = b;
  const auto r = run(cfg);
  const auto ex = exact_profile(p, 200, p.t_end);
  ShockReport rep;
  rep.rho = r.snapshot.rho;
  // mean absolute error: l1 per unit length
  rep.l1 = error_norms(r.snapshot.rho, ex.rho, 1.0 / 200.0).l1;

  const int n = 200;
  double range = 0.0;
  for (int i = 0; i < n; ++i) range = std::max(range, std::abs(ex.rho[i] - ex.rho[0]));
  // exact jumps between neighbouring centres well above the smooth variation
  std::vector<std::pair<int, double>> jumps;
  for (int i = 0; i + 1 < n; ++i) {
    const double j = std::abs(ex.rho[i + 1] - ex.rho[i]);
    if (j > 0.05 * range) jumps.push_back({i, j});
  }
  for (int i = 0; i < n; ++i) {
    double nearest = 1e300, jump = range;
    for (const auto& [at, size] : jumps) {
      const double dist = std::min(std::abs(i - at), std::abs(i - at - 1));
      if (dist < nearest) {
        nearest = dist;
        jump = size;
      }
    }
    if (nearest <= kDiscontinuityMargin) continue;
    const int lo = std::max(0, i - kDiscontinuityMargin), hi = std::min(n - 1, i + kDiscontinuityMargin);
    const double emin = *std::min_element(ex.rho.begin() + lo, ex.rho.begin() + hi + 1);
    const double emax = *std::max_element(ex.rho.begin() + lo, ex.rho.begin() + hi + 1);
    const double over = std::max({0.0, rep.rho[i] - emax, emin - rep.rho[i]});
    rep.overshoot = std::max(rep.overshoot, over / jump);
  }
  return rep;
}

Outcome criterion7() {
  Outcome o;
  std::ostringstream d;
  for (const std::string id : {"sod", "lax"}) {
    for (int k : {5, 7, 9}) {
      const auto ri = shock_tube(id, k, LcdBackend::ch_ri);
      const auto con = shock_tube(id, k, LcdBackend::ch_con);
      const double diff = error_norms(ri.rho, con.rho, 1.0 / 200.0).l1;
      const bool ok = ri.l1 <= kShockL1Tol && con.l1 <= kShockL1Tol && ri.overshoot <= kOvershootFraction &&
                      con.overshoot <= kOvershootFraction && diff <= kBackendL1Tol;
      o.pass = o.pass && ok;
      d << id << " k=" << k << ": l1 " << fmt("%.2e", ri.l1) << "/" << fmt("%.2e", con.l1) << " overshoot "
        << fmt("%.1e", ri.overshoot) << "/" << fmt("%.1e", con.overshoot) << " diff " << fmt("%.1e", diff)
        << (ok ? "" : " (fails)") << "; ";
    }
  }
  o.detail = "ch_ri/ch_con, " + d.str();
  return o;
}

Outcome criterion8() {
  Outcome o;
  std::ostringstream d;
  const double x = 0.7;
  for (int r = 2; r <= 5; ++r) {
    const double h0 = r <= 3 ? 0.2 : 0.8;
    std::vector<double> err;
    for (int m = 0; m < 3; ++m) {
      const double h = h0 / (1 << m);
      err.push_back(std::abs(oracle::corrected_sine_derivative(x, h, r) - std::cos(x)));
    }
    const double order = std::log2(err[1] / err[2]);
    const bool ok = std::abs(order - 2 * r) <= kOrderTol;
    o.pass = o.pass && ok;
    d << "r=" << r << " order " << fmt("%.3f", order) << "; ";
  }
  o.detail = d.str();
  return o;
}

Outcome criterion9() {
  Outcome o;
  std::ostringstream d;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int k : {3, 5, 7, 9}) {
    const WenoOrder ord(k);
    double worst = 0.0, worst_sos = 0.0;
    for (int n = 0; n < 1000; ++n) {
      std::vector<double> w(k);
      for (auto& v : w) v = dist(rng);
      const auto beta = smoothness_indicators(w, ord);
      const auto quad = oracle::quadrature_beta(w, ord.r());
      const auto sos = sos_oracle_beta(w, ord);
      for (int s = 0; s < ord.r(); ++s) {
        const double scale = std::max(1.0, std::abs(quad[s]));
        worst = std::max(worst, std::abs(beta[s] - quad[s]) / scale);
        worst_sos = std::max(worst_sos, std::abs(beta[s] - sos[s]) / scale);
      }
    }
    o.pass = o.pass && worst <= kBetaTol && worst_sos <= kBetaTol;
    d << "k=" << k << " max rel diff " << fmt("%.1e", worst) << " (SOS form " << fmt("%.1e", worst_sos) << "); ";
  }
  o.detail = d.str();
  return o;
}

Outcome criterion10() {
  Outcome o;
  std::ostringstream d;
  double worst = 0.0;
  int runs = 0;
  const auto check = [&](RunConfig cfg) {
    const auto r = run(cfg);
    ++runs;
    if (r.conservation_drift > worst) worst = r.conservation_drift;
    if (r.conservation_drift > kConservationTol) {
      o.pass = false;
      d << cfg.problem << " " << label(cfg.order, cfg.backend) << " drift " << fmt("%.2e", r.conservation_drift)
        << "; ";
    }
  };
  for (const std::string id : {"accuracy1_1d", "accuracy2_1d"}) {
    for (auto b : {LcdBackend::ch_ri, LcdBackend::ch_con, LcdBackend::cp_con}) {
      for (int k : {3, 5, 7, 9}) {
        RunConfig cfg;
        cfg.problem = id;
        cfg.order = k;
        cfg.backend = b;
        cfg.nx = 80;
        check(cfg);
      }
    }
  }
  for (auto b : {LcdBackend::ch_ri, LcdBackend::ch_con}) {
    RunConfig cfg;
    cfg.problem = "accuracy_2d";
    cfg.nx = cfg.ny = 20;
    cfg.backend = b;
    check(cfg);
    cfg.problem = "khi";
    cfg.nx = cfg.ny = 32;
    cfg.max_steps = 40;
    check(cfg);
  }
  d << runs << " periodic runs, worst relative drift " << fmt("%.2e", worst);
  o.detail = d.str();
  return o;
}

int smoke(const std::string& which) {
  RunConfig cfg;
  cfg.problem = which;
  cfg.order = 5;
  cfg.backend = LcdBackend::ch_ri;
  const ProblemSpec p = make_problem(which);
  RunResult r;
  try {
    r = run(cfg);
  } catch (const Error& e) {
    std::printf("SMOKE %s FAIL: %s\n", which.c_str(), e.what());
    return 1;
  }
  const auto& s = r.snapshot;
  bool ok = std::abs(s.t - p.t_end) <= 1e-12 * p.t_end && r.stats.min_rho > 0.0 && r.stats.min_p > 0.0;
  std::ostringstream d;
  d << s.nx << "x" << s.ny << " t=" << s.t << " steps=" << r.stats.steps << " min rho " << fmt("%.3e", r.stats.min_rho)
    << " min p " << fmt("%.3e", r.stats.min_p);
  const auto at = [&](int i, int j) { return static_cast<std::size_t>(j) * s.nx + i; };
  double asym = -1.0;
  if (which == "rti") {
    // mirror about x = 1/8 with u reversed
    asym = 0.0;
    for (int j = 0; j < s.ny; ++j) {
      for (int i = 0; i < s.nx; ++i) {
        const auto a = at(i, j), b = at(s.nx - 1 - i, j);
        asym = std::max({asym, std::abs(s.rho[a] - s.rho[b]), std::abs(s.u[a] + s.u[b]), std::abs(s.v[a] - s.v[b]),
                         std::abs(s.p[a] - s.p[b])});
      }
    }
  } else if (which == "khi") {
    // invariant under (x, y) -> (x + 1/2, -y) with v reversed
    asym = 0.0;
    for (int j = 0; j < s.ny; ++j) {
      for (int i = 0; i < s.nx; ++i) {
        const auto a = at(i, j), b = at((i + s.nx / 2) % s.nx, s.ny - 1 - j);
        asym = std::max({asym, std::abs(s.rho[a] - s.rho[b]), std::abs(s.u[a] - s.u[b]), std::abs(s.v[a] + s.v[b]),
                         std::abs(s.p[a] - s.p[b])});
      }
    }
  }
  if (asym >= 0.0) {
    constexpr double kSymmetryTol = 1e-8;
    ok = ok && asym <= kSymmetryTol;
    d << " symmetry defect " << fmt("%.2e", asym);
  }
  std::printf("SMOKE %s %s: %s\n", which.c_str(), ok ? "PASS" : "FAIL", d.str().c_str());
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::string smoke_case;
  std::vector<int> only;
  app.add_option("--smoke", smoke_case, "reduced-resolution 2D run")->check(CLI::IsMember({"dmr", "rti", "khi"}));
  app.add_option("--criterion", only, "run only these criteria")->delimiter(',');
  CLI11_PARSE(app, argc, argv);
  if (!smoke_case.empty()) return smoke(smoke_case);

  const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                       criterion5, criterion6, criterion7, criterion8,
                                                       criterion9, criterion10};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("CRITERION %d %s: %s [%.1fs]\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
