#pragma once

// Thermodynamic states of the gamma-law Euler equations and the exact
// conversions between conserved, primitive and Riemann-invariant variables.
//
// Component layouts (M = 3 in 1D, M = 4 in 2D):
//   primitive   (rho, u, p)            | (rho, u, v, p)
//   conserved   (rho, rho u, E)        | (rho, rho u, rho v, E)
//   transform   (J-, S^(1/2g), J+)     | (J-, S^(1/2g), v_t, J+)
// where J- = u - 2c/(g-1), J+ = u + 2c/(g-1) and S = p rho^-g. Velocities
// are taken in the sweep direction; in 2D the solver permutes (u, v) before
// calling into x-direction code for y sweeps.

#include <array>
#include <cmath>
#include <string>

#include "aweno/errors.hpp"

namespace aweno {

template <int M>
using Vec = std::array<double, M>;

enum class Direction { x, y };

struct GasModel {
  double gamma = 1.4;

  GasModel() = default;
  explicit GasModel(double g) : gamma(g) {
    if (!(g > 1.0)) throw Error(ErrorKind::config, "gamma must exceed 1, got " + show(g));
  }

  // The two-rarefaction bound on the physical wave speeds holds for gamma <= 5/3.
  bool wave_speed_bound_guaranteed() const { return gamma <= 5.0 / 3.0 + 1e-14; }
};

template <int M>
struct PrimitiveState {
  static_assert(M == 3 || M == 4);
  Vec<M> w{};

  double rho() const { return w[0]; }
  double u() const { return w[1]; }
  double v() const {
    if constexpr (M == 4) return w[2];
    return 0.0;
  }
  double p() const { return w[M - 1]; }
};

template <int M>
struct ConservedState {
  static_assert(M == 3 || M == 4);
  Vec<M> q{};

  double rho() const { return q[0]; }
  double mx() const { return q[1]; }
  double my() const {
    if constexpr (M == 4) return q[2];
    return 0.0;
  }
  double E() const { return q[M - 1]; }
  double kinetic() const { return 0.5 * (mx() * mx() + my() * my()) / rho(); }
  double internal() const { return E() - kinetic(); }
};

template <int M>
struct TransformState {
  static_assert(M == 3 || M == 4);
  Vec<M> t{};

  double j_minus() const { return t[0]; }
  double srt_entropy() const { return t[1]; }
  double v_tang() const {
    if constexpr (M == 4) return t[2];
    return 0.0;
  }
  double j_plus() const { return t[M - 1]; }
};

template <int M>
inline PrimitiveState<M> make_primitive(double rho, double u, double v, double p) {
  if constexpr (M == 4) {
    return {{rho, u, v, p}};
  } else {
    (void)v;
    return {{rho, u, p}};
  }
}

template <int M>
inline ConservedState<M> prim_to_cons(const PrimitiveState<M>& w, const GasModel& g) {
  ConservedState<M> q;
  const double rho = w.rho();
  q.q[0] = rho;
  q.q[1] = rho * w.u();
  if constexpr (M == 4) q.q[2] = rho * w.v();
  q.q[M - 1] = w.p() / (g.gamma - 1.0) + 0.5 * rho * (w.u() * w.u() + w.v() * w.v());
  return q;
}

template <int M>
inline PrimitiveState<M> cons_to_prim(const ConservedState<M>& q, const GasModel& g) {
  if (!(q.rho() > 0.0)) {
    throw Error(ErrorKind::non_positive_pressure, "non-positive density " + show(q.rho()));
  }
  PrimitiveState<M> w;
  const double rho = q.rho();
  w.w[0] = rho;
  w.w[1] = q.mx() / rho;
  if constexpr (M == 4) w.w[2] = q.my() / rho;
  const double p = (g.gamma - 1.0) * q.internal();
  if (!(p > 0.0)) throw Error(ErrorKind::non_positive_pressure, "p = " + show(p));
  w.w[M - 1] = p;
  return w;
}

template <int M>
inline double sound_speed(const PrimitiveState<M>& w, const GasModel& g) {
  return std::sqrt(g.gamma * w.p() / w.rho());
}

template <int M>
inline double entropy_S(const PrimitiveState<M>& w, const GasModel& g) {
  return w.p() * std::exp(-g.gamma * std::log(w.rho()));
}

// S^(1/(2 gamma)) = p^(1/(2 gamma)) rho^(-1/2). One exp and two logs per
// node; this is the dominant per-node cost of the transform basis.
template <int M>
inline TransformState<M> prim_to_transform(const PrimitiveState<M>& w, const GasModel& g) {
  const double c = sound_speed(w, g);
  const double k = 2.0 * c / (g.gamma - 1.0);
  TransformState<M> t;
  t.t[0] = w.u() - k;
  t.t[1] = std::exp(std::log(w.p()) / (2.0 * g.gamma) - 0.5 * std::log(w.rho()));
  if constexpr (M == 4) t.t[2] = w.v();
  t.t[M - 1] = w.u() + k;
  return t;
}

template <int M>
inline PrimitiveState<M> transform_to_prim(const TransformState<M>& t, const GasModel& g) {
  const double gm1 = g.gamma - 1.0;
  const double spread = t.j_plus() - t.j_minus();
  if (!(spread > 0.0)) {
    throw Error(ErrorKind::degenerate_state, "J+ - J- = " + show(spread));
  }
  if (!(t.srt_entropy() > 0.0)) {
    throw Error(ErrorKind::degenerate_state, "S^(1/2g) = " + show(t.srt_entropy()));
  }
  const double c = 0.25 * gm1 * spread;
  const double c2_over_gamma = c * c / g.gamma;
  // rho = s^(2g/(1-g)) (c^2/g)^(1/(g-1))
  const double log_rho =
      (2.0 * g.gamma / (1.0 - g.gamma)) * std::log(t.srt_entropy()) + std::log(c2_over_gamma) / gm1;
  const double rho = std::exp(log_rho);
  return make_primitive<M>(rho, 0.5 * (t.j_plus() + t.j_minus()), t.v_tang(), rho * c2_over_gamma);
}

template <int M>
inline ConservedState<M> transform_to_cons(const TransformState<M>& t, const GasModel& g) {
  return prim_to_cons(transform_to_prim(t, g), g);
}

template <int M>
inline TransformState<M> cons_to_transform(const ConservedState<M>& q, const GasModel& g) {
  return prim_to_transform(cons_to_prim(q, g), g);
}

// Admissibility in conserved variables: rho > 0 and internal energy > 0.
template <int M>
inline bool is_physical(const Vec<M>& q) {
  if (!(q[0] > 0.0)) return false;
  double m2 = q[1] * q[1];
  if constexpr (M == 4) m2 += q[2] * q[2];
  return q[M - 1] - 0.5 * m2 / q[0] > 0.0;
}

// Swaps the two velocity/momentum slots of a 2D state; identity in 1D.
template <int M>
inline Vec<M> swap_velocity(Vec<M> a) {
  if constexpr (M == 4) std::swap(a[1], a[2]);
  return a;
}

}  // namespace aweno
