#include "aweno/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "aweno/riemann_flux.hpp"
#include "aweno/weno.hpp"

namespace aweno {

double select_dt(std::span<const double> alpha, std::span<const double> beta, const Grid& grid,
                 const TimeControl& tc, int order, double t, double scale) {
  double rate = 0.0;
  const double dx = grid.dx();
  if (grid.dim == 1 || beta.empty()) {
    for (double a : alpha) rate = std::max(rate, a);
    rate /= dx;
  } else {
    const double dy = grid.dy();
    const std::size_t sx = static_cast<std::size_t>(grid.nx) + 1;
    const std::size_t sy = static_cast<std::size_t>(grid.ny) + 1;
    for (int j = 0; j < grid.ny; ++j) {
      for (int i = 0; i < grid.nx; ++i) {
        const double a = std::max(alpha[j * sx + i], alpha[j * sx + i + 1]);
        const double b = std::max(beta[i * sy + j], beta[i * sy + j + 1]);
        rate = std::max(rate, a / dx + b / dy);
      }
    }
  }
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw Error(ErrorKind::degenerate_speeds, "signal speed bound " + show(rate));
  }
  double dt = tc.cfl / rate;
  if (tc.accuracy_mode && tc.h0 > 0.0) dt *= std::pow(dx / tc.h0, order / 3.0 - 1.0);
  dt *= scale;
  return std::min(dt, tc.t_end - t);
}

template <int Dim>
Solver<Dim>::Solver(Grid grid, GasModel gas, BoundarySpec bc, SourceSpec source,
                    SchemeOptions scheme, TimeControl time)
    : grid_(grid), gas_(gas), bc_(std::move(bc)), source_(source), scheme_(scheme), time_(time),
      r_(WenoOrder(scheme.order).r()) {
  if (grid_.dim != Dim) throw Error(ErrorKind::config, "grid dimension does not match solver");
  if (grid_.nx < 1 || (Dim == 2 && grid_.ny < 1)) throw Error(ErrorKind::config, "empty grid");
  if (!(time_.cfl > 0.0)) throw Error(ErrorKind::config, "CFL must be positive");
  if (Dim == 1) grid_.ny = 1;
  grid_.ghost = r_;
  u_ = Field<M>(grid_.nx, grid_.ny, r_, Dim);
  stage_ = u_;
  rhs_ = u_;
  const int longest = std::max(grid_.nx, Dim == 2 ? grid_.ny : 0) + 2 * r_;
  line_q_.resize(longest);
  line_v_.resize(longest);
  line_f_.resize(longest);
  line_w_.resize(longest);
  const std::size_t nxi = static_cast<std::size_t>(grid_.nx + 1) * grid_.ny;
  x_out_.f_high.resize(nxi);
  x_out_.f_pp.resize(nxi);
  x_out_.speed.resize(nxi);
  if constexpr (Dim == 2) {
    const std::size_t nyi = static_cast<std::size_t>(grid_.ny + 1) * grid_.nx;
    y_out_.f_high.resize(nyi);
    y_out_.f_pp.resize(nyi);
    y_out_.speed.resize(nyi);
  }
  stats_.min_rho = std::numeric_limits<double>::infinity();
  stats_.min_p = std::numeric_limits<double>::infinity();
}

template <int Dim>
void Solver<Dim>::set_initial(const std::function<Prim4(double, double)>& prim) {
  for (int j = 0; j < grid_.ny; ++j) {
    const double y = Dim == 2 ? grid_.yc(j) : 0.0;
    for (int i = 0; i < grid_.nx; ++i) {
      const Prim4 w = prim(grid_.xc(i), y);
      u_(i, j) = prim_to_cons(make_primitive<M>(w[0], w[1], w[2], w[3]), gas_).q;
    }
  }
  t_ = 0.0;
  stage_valid(u_, stats_.min_rho, stats_.min_p);
}

template <int Dim>
void Solver<Dim>::set_initial_conserved(const Field<M>& q) {
  for (int j = 0; j < grid_.ny; ++j) {
    for (int i = 0; i < grid_.nx; ++i) u_(i, j) = q(i, j);
  }
  t_ = 0.0;
  stage_valid(u_, stats_.min_rho, stats_.min_p);
}

template <int Dim>
typename Solver<Dim>::State Solver<Dim>::boundary_state(const SideCondition& side, double x,
                                                        double y, double t) const {
  const Prim4 w = side.kind == BoundaryKind::fixed ? side.state : side.exact(x, y, t);
  return prim_to_cons(make_primitive<M>(w[0], w[1], w[2], w[3]), gas_).q;
}

template <int Dim>
void Solver<Dim>::fill_ghosts(Field<M>& u, double t) const {
  const int g = r_;
  const int nx = grid_.nx;
  const int ny = grid_.ny;
  const auto mirrored = [](State s, int slot) {
    s[slot] = -s[slot];
    return s;
  };
  for (int j = 0; j < ny; ++j) {
    const double y = Dim == 2 ? grid_.yc(j) : 0.0;
    for (int m = 0; m < g; ++m) {
      const int il = -1 - m;
      const int ir = nx + m;
      switch (bc_.left.kind) {
        case BoundaryKind::periodic: u(il, j) = u(nx - 1 - m, j); break;
        case BoundaryKind::reflective: u(il, j) = mirrored(u(m, j), 1); break;
        default: u(il, j) = boundary_state(bc_.left, grid_.xc(il), y, t); break;
      }
      switch (bc_.right.kind) {
        case BoundaryKind::periodic: u(ir, j) = u(m, j); break;
        case BoundaryKind::reflective: u(ir, j) = mirrored(u(nx - 1 - m, j), 1); break;
        default: u(ir, j) = boundary_state(bc_.right, grid_.xc(ir), y, t); break;
      }
    }
  }
  if constexpr (Dim == 2) {
    for (int i = 0; i < nx; ++i) {
      const double x = grid_.xc(i);
      for (int m = 0; m < g; ++m) {
        const int jb = -1 - m;
        const int jt = ny + m;
        switch (bc_.bottom.kind) {
          case BoundaryKind::periodic: u(i, jb) = u(i, ny - 1 - m); break;
          case BoundaryKind::reflective: u(i, jb) = mirrored(u(i, m), 2); break;
          case BoundaryKind::dmr_bottom:
            u(i, jb) = x < bc_.bottom.wall_start ? boundary_state(bc_.bottom, x, grid_.yc(jb), t)
                                                 : mirrored(u(i, m), 2);
            break;
          default: u(i, jb) = boundary_state(bc_.bottom, x, grid_.yc(jb), t); break;
        }
        switch (bc_.top.kind) {
          case BoundaryKind::periodic: u(i, jt) = u(i, m); break;
          case BoundaryKind::reflective: u(i, jt) = mirrored(u(i, ny - 1 - m), 2); break;
          default: u(i, jt) = boundary_state(bc_.top, x, grid_.yc(jt), t); break;
        }
      }
    }
  }
}

// The line buffers hold n + 2r states in the sweep frame. Interface k sits
// between buffer cells r + k - 1 and r + k.
template <int Dim>
template <int R, LcdBackend B>
void Solver<Dim>::sweep_line(int n, LineOut& out, std::size_t offset) {
  constexpr int W = 2 * R;
  const int total = n + 2 * R;
  MulCounter& ctr = stats_.mults;
  const LimiterConfig& lim = scheme_.limiter;
  const AdmissibleSet set = admissible_set_for(B);
  const double eps = scheme_.eps;

  for (int m = 0; m < total; ++m) {
    const PrimitiveState<M> w = cons_to_prim(ConservedState<M>{line_q_[m]}, gas_);
    line_w_[m] = w;
    line_f_[m] = euler_flux<M>(line_q_[m], w.p());
    if constexpr (B == LcdBackend::ch_ri) line_v_[m] = prim_to_transform(w, gas_).t;
  }
  if constexpr (B == LcdBackend::ch_ri) ctr.transform += static_cast<std::uint64_t>(total);
  const std::vector<State>& basis = B == LcdBackend::ch_ri ? line_v_ : line_q_;

  std::array<State, W> ch;
  double buf[W - 1];
  for (int k = 0; k <= n; ++k) {
    const int il = R + k - 1;
    const int ir = R + k;
    const int base = k;  // il - R + 1
    const RoeState roe = roe_average<M>(line_w_[il], line_q_[il], line_w_[ir], line_q_[ir], gas_);
    const EigenFrame<M> frame = build_frame<M>(roe, B, gas_, Direction::x, scheme_.split_xi);
    for (int s = 0; s < W; ++s) ch[s] = to_characteristic<M>(frame, basis[base + s], ctr);

    State wm, wp;
    for (int c = 0; c < M; ++c) {
      for (int m = 0; m < W - 1; ++m) buf[m] = ch[m][c];
      wm[c] = weno_left<R>(buf, eps);
      for (int m = 0; m < W - 1; ++m) buf[m] = ch[W - 1 - m][c];
      wp[c] = weno_left<R>(buf, eps);
    }
    State vm = from_characteristic<M>(frame, wm, ctr);
    State vp = from_characteristic<M>(frame, wp, ctr);

    if (lim.interpolation) {
      if (limit_interface_values<M>(basis[il], std::span<State>(&vm, 1), set, lim) < 1.0) {
        ++interp_hits_;
      }
      if (limit_interface_values<M>(basis[ir], std::span<State>(&vp, 1), set, lim) < 1.0) {
        ++interp_hits_;
      }
    }

    PrimitiveState<M> pm, pp;
    State qm, qp;
    if constexpr (B == LcdBackend::ch_ri) {
      pm = transform_to_prim(TransformState<M>{vm}, gas_);
      pp = transform_to_prim(TransformState<M>{vp}, gas_);
      qm = prim_to_cons(pm, gas_).q;
      qp = prim_to_cons(pp, gas_).q;
      ctr.transform += 2;
    } else {
      qm = vm;
      qp = vp;
      pm = cons_to_prim(ConservedState<M>{qm}, gas_);
      pp = cons_to_prim(ConservedState<M>{qp}, gas_);
    }

    const RoeState face_roe = roe_average<M>(pm, qm, pp, qp, gas_);
    const WaveSpeedPair s = einfeldt_speeds<M>(pm, pp, face_roe, gas_);
    State f = hll_flux<M>(qm, qp, euler_flux<M>(qm, pm.p()), euler_flux<M>(qp, pp.p()), s);
    const State cor = flux_correction<R, M>(&line_f_[base]);
    for (int c = 0; c < M; ++c) f[c] += cor[c];

    out.f_high[offset + k] = f;
    out.speed[offset + k] = s.max_abs();
    if (lim.flux) {
      const WaveSpeedPair tr = two_rarefaction_speeds<M>(line_w_[il], line_w_[ir], gas_);
      out.f_pp[offset + k] = hll_flux<M>(line_q_[il], line_q_[ir], line_f_[il], line_f_[ir], tr);
    }
  }
}

template <int Dim>
void Solver<Dim>::sweep_dispatch(int n, LineOut& out, std::size_t offset) {
  const auto go = [&]<int R>() {
    switch (scheme_.backend) {
      case LcdBackend::ch_ri: sweep_line<R, LcdBackend::ch_ri>(n, out, offset); break;
      case LcdBackend::ch_con: sweep_line<R, LcdBackend::ch_con>(n, out, offset); break;
      case LcdBackend::cp_con: sweep_line<R, LcdBackend::cp_con>(n, out, offset); break;
    }
  };
  switch (r_) {
    case 2: go.template operator()<2>(); break;
    case 3: go.template operator()<3>(); break;
    case 4: go.template operator()<4>(); break;
    case 5: go.template operator()<5>(); break;
    default: throw Error(ErrorKind::config, "unsupported stencil radius");
  }
}

namespace {

std::string where(const char* sweep, int line, double t) {
  char buf[96];
  std::snprintf(buf, sizeof buf, " [%s sweep, line %d, t = %.9g]", sweep, line, t);
  return buf;
}

}  // namespace

template <int Dim>
RhsInfo Solver<Dim>::semidiscrete_rhs(Field<M>& u, double t, std::optional<double> dt,
                                      Field<M>& dudt, double dt_scale) {
  RhsInfo info;
  const int g = r_;
  const int nx = grid_.nx;
  const int ny = grid_.ny;
  const std::size_t sx = static_cast<std::size_t>(nx) + 1;
  const std::size_t sy = static_cast<std::size_t>(ny) + 1;
  const long hits_before = interp_hits_;
  fill_ghosts(u, t);

  for (int j = 0; j < ny; ++j) {
    for (int i = -g; i < nx + g; ++i) line_q_[i + g] = u(i, j);
    try {
      sweep_dispatch(nx, x_out_, j * sx);
    } catch (const Error& e) {
      throw Error(e.kind(), e.detail() + where("x", j, t));
    }
  }
  if constexpr (Dim == 2) {
    for (int i = 0; i < nx; ++i) {
      for (int j = -g; j < ny + g; ++j) line_q_[j + g] = swap_velocity<M>(u(i, j));
      try {
        sweep_dispatch(ny, y_out_, i * sy);
      } catch (const Error& e) {
        throw Error(e.kind(), e.detail() + where("y", i, t));
      }
    }
  }
  info.interp_limiter_hits = interp_hits_ - hits_before;

  info.dt = dt ? *dt
               : select_dt(x_out_.speed, Dim == 2 ? std::span<const double>(y_out_.speed)
                                                  : std::span<const double>(),
                           grid_, time_, scheme_.order, t, dt_scale);

  const double dx = grid_.dx();
  const double dy = grid_.dy();
  const LimiterConfig& lim = scheme_.limiter;
  if (lim.flux) {
    double ratio_x = 2.0 * info.dt / dx;
    double ratio_y = 0.0;
    if constexpr (Dim == 2) {
      const double a = *std::max_element(x_out_.speed.begin(), x_out_.speed.end()) / dx;
      const double b = *std::max_element(y_out_.speed.begin(), y_out_.speed.end()) / dy;
      const double tau_x = a + b > 0.0 ? a / (a + b) : 0.5;
      const double tau_y = 1.0 - tau_x;
      ratio_x = tau_x > 0.0 ? 2.0 * info.dt / (dx * tau_x) : 0.0;
      ratio_y = tau_y > 0.0 ? 2.0 * info.dt / (dy * tau_y) : 0.0;
    }
    const auto limit = [&](State& fh, const State& fl, const State& ql, const State& qr,
                           double ratio, bool left_inside, bool right_inside) {
      const State fql = euler_flux<M>(ql, cons_to_prim(ConservedState<M>{ql}, gas_).p());
      const State fqr = euler_flux<M>(qr, cons_to_prim(ConservedState<M>{qr}, gas_).p());
      const FluxLimitResult res =
          pp_flux_limit<M>(fh, fl, ql, fql, qr, fqr, ratio, lim, left_inside, right_inside);
      if (res.theta < 1.0) ++info.flux_limiter_hits;
      if (!res.feasible) info.feasible = false;
    };
    for (int j = 0; j < ny; ++j) {
      for (int k = 0; k <= nx; ++k) {
        const std::size_t idx = j * sx + k;
        limit(x_out_.f_high[idx], x_out_.f_pp[idx], u(k - 1, j), u(k, j), ratio_x, k > 0, k < nx);
      }
    }
    if constexpr (Dim == 2) {
      for (int i = 0; i < nx; ++i) {
        for (int k = 0; k <= ny; ++k) {
          const std::size_t idx = i * sy + k;
          limit(y_out_.f_high[idx], y_out_.f_pp[idx], swap_velocity<M>(u(i, k - 1)),
                swap_velocity<M>(u(i, k)), ratio_y, k > 0, k < ny);
        }
      }
    }
  }

  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const State& fl = x_out_.f_high[j * sx + i];
      const State& fr = x_out_.f_high[j * sx + i + 1];
      State d;
      for (int c = 0; c < M; ++c) d[c] = -(fr[c] - fl[c]) / dx;
      if constexpr (Dim == 2) {
        const State gb = swap_velocity<M>(y_out_.f_high[i * sy + j]);
        const State gt = swap_velocity<M>(y_out_.f_high[i * sy + j + 1]);
        for (int c = 0; c < M; ++c) d[c] -= (gt[c] - gb[c]) / dy;
      }
      if (source_.active()) {
        const State& q = u(i, j);
        d[1] += q[0] * source_.gx;
        double work = q[1] * source_.gx;
        if constexpr (Dim == 2) {
          d[2] += q[0] * source_.gy;
          work += q[2] * source_.gy;
        }
        d[M - 1] += work;
      }
      dudt(i, j) = d;
    }
  }
  return info;
}

template <int Dim>
bool Solver<Dim>::stage_valid(const Field<M>& u, double& min_rho, double& min_p) const {
  bool ok = true;
  for (int j = 0; j < grid_.ny; ++j) {
    for (int i = 0; i < grid_.nx; ++i) {
      const State& q = u(i, j);
      const double p = (gas_.gamma - 1.0) * pp_detail::internal_energy<M>(q);
      min_rho = std::min(min_rho, q[0]);
      min_p = std::min(min_p, p);
      if (!(q[0] > 0.0) || !(p > 0.0)) ok = false;
    }
  }
  return ok;
}

template <int Dim>
double Solver<Dim>::step(std::optional<double> fixed_dt) {
  const auto start = std::chrono::steady_clock::now();
  const bool any_limiter = scheme_.limiter.interpolation || scheme_.limiter.flux;
  double scale = strict_next_ ? scheme_.limiter.strict_cfl_factor : 1.0;
  for (int attempt = 0;; ++attempt) {
    std::optional<double> dt_req;
    if (fixed_dt) dt_req = *fixed_dt * (attempt == 0 ? 1.0 : scale);
    double dt = 0.0;
    long flux_hits = 0;
    long interp_hits = 0;
    bool ok = true;
    double min_rho = stats_.min_rho;
    double min_p = stats_.min_p;
    stage_ = u_;
    for (std::size_t s = 0; s < kSspRk3.size() && ok; ++s) {
      const auto& st = kSspRk3[s];
      const RhsInfo info = semidiscrete_rhs(stage_, t_ + st.frac * dt,
                                            s == 0 ? dt_req : std::optional<double>(dt), rhs_,
                                            scale);
      if (s == 0) dt = info.dt;
      flux_hits += info.flux_limiter_hits;
      interp_hits += info.interp_limiter_hits;
      if (!info.feasible) {
        ok = false;
        break;
      }
      for (int j = 0; j < grid_.ny; ++j) {
        for (int i = 0; i < grid_.nx; ++i) {
          State& v = stage_(i, j);
          const State& u0 = u_(i, j);
          const State& l = rhs_(i, j);
          for (int c = 0; c < M; ++c) v[c] = st.a * u0[c] + st.b * v[c] + st.c * dt * l[c];
        }
      }
      if (!stage_valid(stage_, min_rho, min_p)) {
        if (!any_limiter) {
          throw Error(ErrorKind::non_positive_pressure,
                      "inadmissible state after RK stage " + std::to_string(s + 1) +
                          " at t = " + show(t_));
        }
        ok = false;
      }
    }
    if (!ok) {
      ++stats_.retried_steps;
      if (attempt + 1 >= scheme_.max_step_retries) {
        throw Error(ErrorKind::non_positive_pressure,
                    "no admissible step after " + std::to_string(attempt + 1) +
                        " attempts at t = " + show(t_));
      }
      scale *= 0.5;
      continue;
    }

    std::swap(u_, stage_);
    stats_.min_rho = min_rho;
    stats_.min_p = min_p;
    const bool clipped = !fixed_dt && dt >= time_.t_end - t_;
    t_ = clipped ? time_.t_end : t_ + dt;
    strict_next_ = flux_hits > 0;
    ++stats_.steps;
    if (flux_hits > 0) ++stats_.flux_limited_steps;
    stats_.flux_limiter_hits += flux_hits;
    stats_.interp_limiter_hits += interp_hits;
    stats_.dt_min = stats_.steps == 1 ? dt : std::min(stats_.dt_min, dt);
    stats_.dt_max = std::max(stats_.dt_max, dt);
    stats_.wall_seconds +=
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return dt;
  }
}

template <int Dim>
void Solver<Dim>::advance() {
  while (t_ < time_.t_end) {
    const double dt = step();
    if (!(dt > 0.0)) throw Error(ErrorKind::degenerate_speeds, "time step collapsed to zero");
  }
}

template <int Dim>
void Solver<Dim>::advance_steps(int n) {
  for (int s = 0; s < n && t_ < time_.t_end; ++s) step();
}

template <int Dim>
typename Solver<Dim>::State Solver<Dim>::totals() const {
  State sum{};
  const double vol = grid_.dx() * (Dim == 2 ? grid_.dy() : 1.0);
  for (int j = 0; j < grid_.ny; ++j) {
    for (int i = 0; i < grid_.nx; ++i) {
      for (int c = 0; c < M; ++c) sum[c] += u_(i, j)[c] * vol;
    }
  }
  return sum;
}

template class Solver<1>;
template class Solver<2>;

}  // namespace aweno
