#pragma once

// Positivity-preserving limiters.
//
// limit_interface_values pulls interpolated face values toward the node
// value along a segment until they sit inside the admissible set:
//   transform basis: J- < J+ and S^(1/2g) > 0
//   conserved basis: rho > 0 and rho e > 0
// Both sets are convex, so admissibility along the segment is an interval
// starting at theta = 0.
//
// pp_flux_limit blends a high-order interface flux toward a low-order flux
// that keeps the forward-Euler update admissible. The cell update is read as
// the average of two half-cell updates, one per face, so each interface can
// be limited on its own.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>

#include "aweno/characteristic.hpp"
#include "aweno/euler_state.hpp"

namespace aweno {

enum class AdmissibleSet { transform, conserved };

inline AdmissibleSet admissible_set_for(LcdBackend b) {
  return b == LcdBackend::ch_ri ? AdmissibleSet::transform : AdmissibleSet::conserved;
}

struct LimiterConfig {
  bool interpolation = true;
  bool flux = true;
  // Floors are this fraction of the reference (node or cell) value.
  double floor_fraction = 1e-13;
  // dt multiplier for the step after the flux limiter fired.
  double strict_cfl_factor = 0.5;
  double bisection_tol = 1e-12;
};

namespace pp_detail {

template <int M>
inline double internal_energy(const Vec<M>& q) {
  double m2 = q[1] * q[1];
  if constexpr (M == 4) m2 += q[2] * q[2];
  return q[M - 1] - 0.5 * m2 / q[0];
}

template <int M>
inline Vec<M> lerp(const Vec<M>& a, const Vec<M>& b, double theta) {
  Vec<M> out;
  for (int i = 0; i < M; ++i) out[i] = a[i] + theta * (b[i] - a[i]);
  return out;
}

// Largest theta in [0, hi] keeping a linear quantity a + theta (b - a) >= floor,
// given a >= floor.
inline double linear_theta(double a, double b, double floor, double hi) {
  if (b >= floor) return hi;
  return std::clamp((a - floor) / (a - b), 0.0, hi);
}

// Largest theta in [0, hi] with internal energy of lerp(a, b, theta) >= floor,
// given it holds at 0 and rho stays positive on [0, hi].
template <int M>
double energy_theta(const Vec<M>& a, const Vec<M>& b, double floor, double hi, double tol) {
  if (internal_energy<M>(lerp<M>(a, b, hi)) >= floor) return hi;
  double lo = 0.0;
  double up = hi;
  while (up - lo > tol) {
    const double mid = 0.5 * (lo + up);
    if (internal_energy<M>(lerp<M>(a, b, mid)) >= floor) {
      lo = mid;
    } else {
      up = mid;
    }
  }
  return lo;
}

template <int M>
double conserved_theta(const Vec<M>& node, const Vec<M>& face, double rho_floor, double e_floor,
                       double tol) {
  const double t_rho = linear_theta(node[0], face[0], rho_floor, 1.0);
  return energy_theta<M>(node, face, e_floor, t_rho, tol);
}

}  // namespace pp_detail

template <int M>
bool admissible(const Vec<M>& v, AdmissibleSet set) {
  if (set == AdmissibleSet::transform) return v[0] < v[M - 1] && v[1] > 0.0;
  return is_physical<M>(v);
}

// Limits faces in place toward node with one shared theta; returns theta.
template <int M>
double limit_interface_values(const Vec<M>& node, std::span<Vec<M>> faces, AdmissibleSet set,
                              const LimiterConfig& cfg) {
  const double f = cfg.floor_fraction;
  double theta = 1.0;
  if (set == AdmissibleSet::transform) {
    const double spread = node[M - 1] - node[0];
    if (!(spread > 0.0) || !(node[1] > 0.0)) {
      throw Error(ErrorKind::inadmissible_node, "transform node outside J- < J+, S > 0");
    }
    // J+ - J- cancels when |u| >> c; keep the floor a few ulps above zero.
    const double ulps = 64.0 * std::numeric_limits<double>::epsilon() *
                        (std::abs(node[0]) + std::abs(node[M - 1]));
    const double spread_floor = std::min(std::max(f * spread, ulps), spread);
    const double s_floor = f * node[1];
    for (const auto& face : faces) {
      theta = pp_detail::linear_theta(spread, face[M - 1] - face[0], spread_floor, theta);
      theta = pp_detail::linear_theta(node[1], face[1], s_floor, theta);
    }
  } else {
    if (!is_physical<M>(node)) {
      throw Error(ErrorKind::inadmissible_node, "conserved node with rho <= 0 or e <= 0");
    }
    const double rho_floor = f * node[0];
    const double e_floor = f * pp_detail::internal_energy<M>(node);
    for (const auto& face : faces) {
      theta = std::min(theta, pp_detail::conserved_theta<M>(node, face, rho_floor, e_floor,
                                                             cfg.bisection_tol));
    }
  }
  if (theta < 1.0) {
    for (auto& face : faces) {
      face = pp_detail::lerp<M>(node, face, theta);
      if (!admissible<M>(face, set)) {
        face = node;
        theta = 0.0;
      }
    }
  }
  return theta;
}

struct FluxLimitResult {
  double theta = 1.0;
  // false when even the low-order flux leaves a half-cell state inadmissible
  // (time step too large for the low-order bound).
  bool feasible = true;
};

// Interface between cell L (to the left) and cell R. ratio = 2 dt / dx in
// 1D; in 2D the solver passes the per-direction share. f_high is replaced by
// f_low + theta (f_high - f_low). Either side's constraint may be skipped
// (boundary ghost cells).
template <int M>
FluxLimitResult pp_flux_limit(Vec<M>& f_high, const Vec<M>& f_low, const Vec<M>& q_left,
                              const Vec<M>& f_left, const Vec<M>& q_right, const Vec<M>& f_right,
                              double ratio, const LimiterConfig& cfg, bool check_left = true,
                              bool check_right = true) {
  // Half states are affine in the interface flux F:
  //   left  cell, right half:  q_L - ratio (F - f_L)
  //   right cell, left  half:  q_R + ratio (F - f_R)
  const auto half = [&](const Vec<M>& flux, bool left_side) {
    Vec<M> out;
    for (int i = 0; i < M; ++i) {
      out[i] = left_side ? q_left[i] - ratio * (flux[i] - f_left[i])
                         : q_right[i] + ratio * (flux[i] - f_right[i]);
    }
    return out;
  };

  FluxLimitResult res;
  double theta = 1.0;
  for (int side = 0; side < 2; ++side) {
    const bool left_side = side == 0;
    if (left_side ? !check_left : !check_right) continue;
    const Vec<M>& cell = left_side ? q_left : q_right;
    const double rho_floor = cfg.floor_fraction * cell[0];
    const double e_floor = cfg.floor_fraction * std::max(pp_detail::internal_energy<M>(cell), 0.0);
    const Vec<M> lo = half(f_low, left_side);
    const Vec<M> hi = half(f_high, left_side);
    if (!(lo[0] >= rho_floor) || !(pp_detail::internal_energy<M>(lo) >= e_floor)) {
      res.feasible = false;
      theta = 0.0;
      continue;
    }
    theta = std::min(theta, pp_detail::conserved_theta<M>(lo, hi, rho_floor, e_floor,
                                                           cfg.bisection_tol));
  }
  res.theta = theta;
  if (theta < 1.0) f_high = pp_detail::lerp<M>(f_low, f_high, theta);
  return res;
}

template <int M>
FluxLimitResult pp_flux_limit(Vec<M>& f_high, const Vec<M>& f_low, const Vec<M>& q_left,
                              const Vec<M>& f_left, const Vec<M>& q_right, const Vec<M>& f_right,
                              double dt, double dx, const LimiterConfig& cfg) {
  return pp_flux_limit<M>(f_high, f_low, q_left, f_left, q_right, f_right, 2.0 * dt / dx, cfg);
}

}  // namespace aweno
