#pragma once

// Roe averaging, eigenstructure of the Euler flux Jacobian, and the three
// local characteristic decomposition (LCD) backends:
//
//   ch_ri   characteristic fields of the Riemann-invariant transform
//           variables; both eigenmatrices are the identity except for the
//           entries +-mu in the entropy column.
//   ch_con  classical characteristic fields of the conserved variables.
//   cp_con  component-wise: identity transforms.
//
// Every eigenmatrix-vector action reports its floating-point
// multiplications to a MulCounter.

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>

#include "aweno/euler_state.hpp"

namespace aweno {

enum class LcdBackend { ch_ri, ch_con, cp_con };

std::string_view to_string(LcdBackend b);
LcdBackend parse_backend(std::string_view token);

struct MulCounter {
  std::uint64_t left = 0;
  std::uint64_t right = 0;
  // exp/log evaluations spent building transform variables (not matvec cost)
  std::uint64_t transform = 0;

  MulCounter& operator+=(const MulCounter& o) {
    left += o.left;
    right += o.right;
    transform += o.transform;
    return *this;
  }
};

struct RoeState {
  double rho = 0.0;
  double u = 0.0;
  double v = 0.0;
  double H = 0.0;
  double c = 0.0;
  double p = 0.0;  // rho c^2 / gamma
};

template <int M>
RoeState roe_average(const PrimitiveState<M>& wl, const Vec<M>& ql, const PrimitiveState<M>& wr,
                     const Vec<M>& qr, const GasModel& g) {
  const double sl = std::sqrt(wl.rho());
  const double sr = std::sqrt(wr.rho());
  const double inv = 1.0 / (sl + sr);
  const double hl = (ql[M - 1] + wl.p()) / wl.rho();
  const double hr = (qr[M - 1] + wr.p()) / wr.rho();
  RoeState roe;
  roe.rho = sl * sr;
  roe.u = (sl * wl.u() + sr * wr.u()) * inv;
  roe.v = (sl * wl.v() + sr * wr.v()) * inv;
  roe.H = (sl * hl + sr * hr) * inv;
  const double c2 = (g.gamma - 1.0) * (roe.H - 0.5 * (roe.u * roe.u + roe.v * roe.v));
  if (!(c2 > 0.0)) throw Error(ErrorKind::imaginary_sound_speed, "c^2 = " + show(c2));
  roe.c = std::sqrt(c2);
  roe.p = roe.rho * c2 / g.gamma;
  return roe;
}

template <int M>
RoeState roe_average(const ConservedState<M>& left, const ConservedState<M>& right,
                     const GasModel& g) {
  return roe_average<M>(cons_to_prim(left, g), left.q, cons_to_prim(right, g), right.q, g);
}

template <int M>
using Matrix = std::array<Vec<M>, M>;

// Eigenstructure frozen at one interface. Actions take vectors in the
// backend's basis (transform variables for ch_ri, conserved otherwise).
template <int M>
struct EigenFrame {
  LcdBackend backend = LcdBackend::cp_con;
  Direction dir = Direction::x;
  Vec<M> eigenvalues{};
  // ch_ri: mu = 2 sqrt(g) p^((g-1)/(2g)) / (g-1) at the Roe state.
  double mu = 0.0;
  // ch_con: x-direction matrices at the (velocity-swapped for y) Roe state.
  Matrix<M> left{};
  Matrix<M> right{};
  // ch_con split-xi evaluation of the left action
  bool split = false;
  double xi_u = 0.0, xi_v = 0.0, xi_c = 0.0, xi_k = 0.0, xi_kq = 0.0, xi_ku = 0.0, xi_kv = 0.0;
};

namespace lcd_detail {

template <int M>
Matrix<M> conserved_left(double u, double v, double c, double gamma) {
  const double k = (gamma - 1.0) / c;
  const double q = 0.5 * (u * u + v * v);
  Matrix<M> l{};
  if constexpr (M == 4) {
    l[0] = {-u - k * q, 1.0 + k * u, k * v, -k};
    l[1] = {k * q - c, -k * u, -k * v, k};
    l[2] = {-v, 0.0, 1.0, 0.0};
    l[3] = {-u + k * q, 1.0 - k * u, -k * v, k};
  } else {
    (void)v;
    l[0] = {-u - k * q, 1.0 + k * u, -k};
    l[1] = {k * q - c, -k * u, k};
    l[2] = {-u + k * q, 1.0 - k * u, k};
  }
  return l;
}

// Rows of the returned matrix are rows of R (R[i][j] = component i of r_j).
template <int M>
Matrix<M> conserved_right(double u, double v, double c, double H) {
  const double h = 0.5 / c;
  const double q = 0.5 * (u * u + v * v);
  Matrix<M> r{};
  if constexpr (M == 4) {
    const Vec<4> r1{-h, 0.5 - h * u, -h * v, 0.5 * u - h * H};
    const Vec<4> r2{-1.0 / c, -u / c, -v / c, -q / c};
    const Vec<4> r3{0.0, 0.0, 1.0, v};
    const Vec<4> r4{h, 0.5 + h * u, h * v, 0.5 * u + h * H};
    for (int i = 0; i < 4; ++i) r[i] = {r1[i], r2[i], r3[i], r4[i]};
  } else {
    (void)v;
    const Vec<3> r1{-h, 0.5 - h * u, 0.5 * u - h * H};
    const Vec<3> r2{-1.0 / c, -u / c, -q / c};
    const Vec<3> r4{h, 0.5 + h * u, 0.5 * u + h * H};
    for (int i = 0; i < 3; ++i) r[i] = {r1[i], r2[i], r4[i]};
  }
  return r;
}

template <int M>
Vec<M> matvec(const Matrix<M>& a, const Vec<M>& x) {
  Vec<M> y{};
  for (int i = 0; i < M; ++i) {
    double s = 0.0;
    for (int j = 0; j < M; ++j) s += a[i][j] * x[j];
    y[i] = s;
  }
  return y;
}

}  // namespace lcd_detail

inline double ri_coefficient(double p, double gamma) {
  return 2.0 * std::sqrt(gamma) * std::pow(p, (gamma - 1.0) / (2.0 * gamma)) / (gamma - 1.0);
}

template <int M>
EigenFrame<M> build_frame(const RoeState& roe, LcdBackend backend, const GasModel& g,
                          Direction dir = Direction::x, bool split = false) {
  EigenFrame<M> f;
  f.backend = backend;
  f.dir = dir;
  // x-direction code run on the velocity-swapped state serves y.
  const double un = dir == Direction::x ? roe.u : roe.v;
  const double ut = dir == Direction::x ? roe.v : roe.u;
  f.eigenvalues[0] = un - roe.c;
  for (int i = 1; i < M - 1; ++i) f.eigenvalues[i] = un;
  f.eigenvalues[M - 1] = un + roe.c;
  switch (backend) {
    case LcdBackend::ch_ri:
      f.mu = ri_coefficient(roe.p, g.gamma);
      break;
    case LcdBackend::ch_con: {
      f.left = lcd_detail::conserved_left<M>(un, ut, roe.c, g.gamma);
      f.right = lcd_detail::conserved_right<M>(un, ut, roe.c, roe.H);
      f.split = split;
      const double k = (g.gamma - 1.0) / roe.c;
      f.xi_u = un;
      f.xi_v = ut;
      f.xi_c = roe.c;
      f.xi_k = k;
      f.xi_kq = k * 0.5 * (un * un + ut * ut);
      f.xi_ku = k * un;
      f.xi_kv = k * ut;
      break;
    }
    case LcdBackend::cp_con:
      break;
  }
  return f;
}

// Multiplications per call of the left action.
template <int M>
constexpr int left_action_cost(LcdBackend b, bool split) {
  switch (b) {
    case LcdBackend::ch_ri: return 1;
    case LcdBackend::ch_con: return split ? (M == 4 ? 7 : 5) : M * M;
    case LcdBackend::cp_con: return 0;
  }
  return 0;
}

template <int M>
constexpr int right_action_cost(LcdBackend b) {
  switch (b) {
    case LcdBackend::ch_ri: return 1;
    case LcdBackend::ch_con: return M * M;
    case LcdBackend::cp_con: return 0;
  }
  return 0;
}

template <int M>
inline Vec<M> to_characteristic(const EigenFrame<M>& f, const std::type_identity_t<Vec<M>>& vals, MulCounter& ctr) {
  switch (f.backend) {
    case LcdBackend::ch_ri: {
      ctr.left += 1;
      const double a = f.mu * vals[1];
      Vec<M> w = vals;
      w[0] += a;
      w[M - 1] -= a;
      return w;
    }
    case LcdBackend::ch_con: {
      const Vec<M> q = f.dir == Direction::y ? swap_velocity<M>(vals) : vals;
      if (!f.split) {
        ctr.left += M * M;
        return lcd_detail::matvec<M>(f.left, q);
      }
      // l1 = xi1 - xi2, l2 = xi2 - xi3, l3 = xi4, l4 = xi1 + xi2
      const double x1 = q[1] - f.xi_u * q[0];
      const double x3 = f.xi_c * q[0];
      if constexpr (M == 4) {
        ctr.left += 7;
        const double x2 = f.xi_kq * q[0] - f.xi_ku * q[1] - f.xi_kv * q[2] + f.xi_k * q[3];
        const double x4 = q[2] - f.xi_v * q[0];
        return {x1 - x2, x2 - x3, x4, x1 + x2};
      } else {
        ctr.left += 5;
        const double x2 = f.xi_kq * q[0] - f.xi_ku * q[1] + f.xi_k * q[2];
        return {x1 - x2, x2 - x3, x1 + x2};
      }
    }
    case LcdBackend::cp_con:
      return vals;
  }
  return vals;
}

template <int M>
inline Vec<M> from_characteristic(const EigenFrame<M>& f, const std::type_identity_t<Vec<M>>& w, MulCounter& ctr) {
  switch (f.backend) {
    case LcdBackend::ch_ri: {
      ctr.right += 1;
      const double a = f.mu * w[1];
      Vec<M> v = w;
      v[0] -= a;
      v[M - 1] += a;
      return v;
    }
    case LcdBackend::ch_con: {
      ctr.right += M * M;
      const Vec<M> q = lcd_detail::matvec<M>(f.right, w);
      return f.dir == Direction::y ? swap_velocity<M>(q) : q;
    }
    case LcdBackend::cp_con:
      return w;
  }
  return w;
}

// Dense forms of the frame's actions (L acting on the backend basis in the
// caller's component order).
template <int M>
Matrix<M> left_matrix(const EigenFrame<M>& f) {
  Matrix<M> out{};
  MulCounter scratch;
  for (int j = 0; j < M; ++j) {
    Vec<M> e{};
    e[j] = 1.0;
    const Vec<M> col = to_characteristic(f, e, scratch);
    for (int i = 0; i < M; ++i) out[i][j] = col[i];
  }
  return out;
}

template <int M>
Matrix<M> right_matrix(const EigenFrame<M>& f) {
  Matrix<M> out{};
  MulCounter scratch;
  for (int j = 0; j < M; ++j) {
    Vec<M> e{};
    e[j] = 1.0;
    const Vec<M> col = from_characteristic(f, e, scratch);
    for (int i = 0; i < M; ++i) out[i][j] = col[i];
  }
  return out;
}

}  // namespace aweno
