#pragma once

// A-WENO finite-difference solver for the 1D/2D Euler equations.
//
// The semi-discrete scheme is du_j/dt = -(F_{j+1/2} - F_{j-1/2})/dx with
// F = F_low(u^-, u^+) + F_cor, where u^+- are WENO interpolations carried
// out on local characteristic fields of the backend's basis and F_cor is
// the 2r-point central correction. 2D is handled dimension by dimension;
// y sweeps run the x-direction kernel on velocity-swapped states.

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "aweno/characteristic.hpp"
#include "aweno/euler_state.hpp"
#include "aweno/pp_limiters.hpp"
#include "aweno/weno.hpp"

namespace aweno {

// Primitive (rho, u, v, p) regardless of dimension; v is ignored in 1D.
using Prim4 = std::array<double, 4>;
using PrimitiveField = std::function<Prim4(double x, double y, double t)>;

struct Grid {
  int dim = 1;
  double x_min = 0.0, x_max = 1.0;
  double y_min = 0.0, y_max = 1.0;
  int nx = 1;
  int ny = 1;
  int ghost = 3;

  double dx() const { return (x_max - x_min) / nx; }
  double dy() const { return (y_max - y_min) / ny; }
  // Zero-based cell centres; ghost indices are negative or >= n.
  double xc(int i) const { return x_min + (i + 0.5) * dx(); }
  double yc(int j) const { return y_min + (j + 0.5) * dy(); }
};

enum class BoundaryKind { periodic, reflective, fixed, exact, dmr_bottom };

struct SideCondition {
  BoundaryKind kind = BoundaryKind::periodic;
  Prim4 state{};           // fixed
  PrimitiveField exact;    // exact, and dmr_bottom ahead of the wall
  double wall_start = 0.0;  // dmr_bottom: reflective for x >= wall_start

  static SideCondition periodic() { return {}; }
  static SideCondition reflective() { return {BoundaryKind::reflective, {}, {}, 0.0}; }
  static SideCondition fixed(Prim4 s) { return {BoundaryKind::fixed, s, {}, 0.0}; }
  static SideCondition exact_state(PrimitiveField f) { return {BoundaryKind::exact, {}, std::move(f), 0.0}; }
  static SideCondition dmr_bottom(PrimitiveField f, double x0) {
    return {BoundaryKind::dmr_bottom, {}, std::move(f), x0};
  }
};

struct BoundarySpec {
  SideCondition left, right, bottom, top;
};

struct SourceSpec {
  double gx = 0.0;
  double gy = 0.0;
  bool active() const { return gx != 0.0 || gy != 0.0; }
};

struct TimeControl {
  double cfl = 0.5;
  double t_end = 1.0;
  // dt *= (h / h0)^(k/3 - 1) so that RK3 error scales like the spatial one.
  bool accuracy_mode = false;
  double h0 = 0.0;
};

struct SchemeOptions {
  int order = 5;
  LcdBackend backend = LcdBackend::ch_ri;
  double eps = kWenoEps;
  bool split_xi = false;  // ch_con: split-xi left action
  LimiterConfig limiter{};
  int max_step_retries = 12;
};

struct RunStats {
  long steps = 0;
  long retried_steps = 0;
  long interp_limiter_hits = 0;
  long flux_limiter_hits = 0;
  long flux_limited_steps = 0;
  MulCounter mults{};
  double min_rho = 0.0;
  double min_p = 0.0;
  double dt_min = 0.0;
  double dt_max = 0.0;
  double wall_seconds = 0.0;
};

template <int M>
class Field {
 public:
  Field() = default;
  Field(int nx, int ny, int ghost, int dim)
      : nx_(nx), ny_(ny), gx_(ghost), gy_(dim == 2 ? ghost : 0),
        data_(static_cast<std::size_t>(nx + 2 * gx_) * (ny + 2 * gy_)) {}

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int ghost() const { return gx_; }

  Vec<M>& operator()(int i, int j = 0) { return data_[index(i, j)]; }
  const Vec<M>& operator()(int i, int j = 0) const { return data_[index(i, j)]; }

  std::vector<Vec<M>>& raw() { return data_; }
  const std::vector<Vec<M>>& raw() const { return data_; }

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j + gy_) * (nx_ + 2 * gx_) + static_cast<std::size_t>(i + gx_);
  }

  int nx_ = 0, ny_ = 0, gx_ = 0, gy_ = 0;
  std::vector<Vec<M>> data_;
};

// Shu-Osher form of SSP-RK(3,3): stage s computes
//   a_s u^n + b_s u^(s-1) + c_s dt L(u^(s-1)) at time t + frac_s dt.
struct SspRk3Stage {
  double a, b, c, frac;
};
inline constexpr std::array<SspRk3Stage, 3> kSspRk3{{
    {1.0, 0.0, 1.0, 0.0},
    {0.75, 0.25, 0.25, 1.0},
    {1.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0, 0.5},
}};

// Generic SSP-RK3 step for vector states; rhs(u, t) returns du/dt.
template <typename Rhs>
std::vector<double> ssprk3_step(const std::vector<double>& u, double t, double dt, Rhs&& rhs) {
  std::vector<double> prev = u;
  std::vector<double> next(u.size());
  for (const auto& st : kSspRk3) {
    const std::vector<double> l = rhs(prev, t + st.frac * dt);
    for (std::size_t i = 0; i < u.size(); ++i) {
      next[i] = st.a * u[i] + st.b * prev[i] + st.c * dt * l[i];
    }
    prev.swap(next);
  }
  return prev;
}

// Time step from per-interface signal speeds. alpha holds nx + 1 values
// per row (row-major, ny rows); beta holds ny + 1 values per column
// (column-major, nx columns) and is empty in 1D. The CFL value is multiplied
// by scale and then clipped so that t + dt does not pass t_end.
double select_dt(std::span<const double> alpha, std::span<const double> beta, const Grid& grid,
                 const TimeControl& tc, int order, double t, double scale = 1.0);

struct RhsInfo {
  double dt = 0.0;
  bool feasible = true;  // flux limiter found an admissible low-order fallback everywhere
  long flux_limiter_hits = 0;
  long interp_limiter_hits = 0;
};

template <int Dim>
class Solver {
 public:
  static constexpr int M = Dim + 2;
  using State = Vec<M>;

  Solver(Grid grid, GasModel gas, BoundarySpec bc, SourceSpec source, SchemeOptions scheme,
         TimeControl time);

  // Initialise interior cells from primitive data at cell centres.
  void set_initial(const std::function<Prim4(double x, double y)>& prim);
  void set_initial_conserved(const Field<M>& q);

  const Field<M>& state() const { return u_; }
  Field<M>& state() { return u_; }
  double time() const { return t_; }
  const Grid& grid() const { return grid_; }
  const GasModel& gas() const { return gas_; }
  const SchemeOptions& scheme() const { return scheme_; }
  const TimeControl& time_control() const { return time_; }
  const RunStats& stats() const { return stats_; }

  // One SSP-RK3 step; dt from the CFL rule unless given. Returns dt used.
  double step(std::optional<double> fixed_dt = std::nullopt);
  // Steps until t_end (final step clipped to land on it).
  void advance();
  void advance_steps(int n);

  void fill_ghosts(Field<M>& u, double t) const;

  // du/dt into dudt. When dt is empty it is chosen from the signal speeds
  // of this evaluation; the flux limiter uses the resulting dt.
  RhsInfo semidiscrete_rhs(Field<M>& u, double t, std::optional<double> dt, Field<M>& dudt,
                           double dt_scale = 1.0);

  // Sum over interior cells of q * cell volume, per component.
  State totals() const;

 private:
  struct LineOut {
    std::vector<State> f_high;
    std::vector<State> f_pp;
    std::vector<double> speed;
  };

  template <int R, LcdBackend B>
  void sweep_line(int n, LineOut& out, std::size_t offset);
  void sweep_dispatch(int n, LineOut& out, std::size_t offset);

  State boundary_state(const SideCondition& side, double x, double y, double t) const;
  // Tracks minima over interior cells; false if any rho or p <= 0.
  bool stage_valid(const Field<M>& u, double& min_rho, double& min_p) const;

  Grid grid_;
  GasModel gas_;
  BoundarySpec bc_;
  SourceSpec source_;
  SchemeOptions scheme_;
  TimeControl time_;
  int r_;

  Field<M> u_, stage_, rhs_;
  double t_ = 0.0;
  bool strict_next_ = false;
  RunStats stats_;

  // per-line scratch, sized for the longer direction
  std::vector<State> line_q_, line_v_, line_f_;
  std::vector<PrimitiveState<M>> line_w_;
  LineOut x_out_, y_out_;
  long interp_hits_ = 0;
};

extern template class Solver<1>;
extern template class Solver<2>;

}  // namespace aweno
