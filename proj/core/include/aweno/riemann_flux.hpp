#pragma once

// Interface fluxes: the HLL flux with Einfeldt or two-rarefaction signal
// speeds, and the high-order central correction that lifts the low-order
// interface flux to order 2r.
//
// States passed here are expressed in the sweep frame: u is the normal
// velocity. The solver permutes 2D states for y sweeps.

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <string>

#include "aweno/characteristic.hpp"
#include "aweno/euler_state.hpp"

namespace aweno {

struct WaveSpeedPair {
  double sL = 0.0;
  double sR = 0.0;
  double max_abs() const { return std::max(std::abs(sL), std::abs(sR)); }
};

template <int M>
WaveSpeedPair einfeldt_speeds(const PrimitiveState<M>& wl, const PrimitiveState<M>& wr,
                              const RoeState& roe, const GasModel& g) {
  const double cl = sound_speed(wl, g);
  const double cr = sound_speed(wr, g);
  return {std::min(wl.u() - cl, roe.u - roe.c), std::max(wr.u() + cr, roe.u + roe.c)};
}

// Star pressure of the two-rarefaction approximation; 0 when the data
// would open a vacuum.
template <int M>
double two_rarefaction_pressure(const PrimitiveState<M>& wl, const PrimitiveState<M>& wr,
                                const GasModel& g) {
  const double z = (g.gamma - 1.0) / (2.0 * g.gamma);
  const double cl = sound_speed(wl, g);
  const double cr = sound_speed(wr, g);
  const double num = cl + cr - 0.5 * (g.gamma - 1.0) * (wr.u() - wl.u());
  if (!(num > 0.0)) return 0.0;
  const double den = cl * std::pow(wl.p(), -z) + cr * std::pow(wr.p(), -z);
  return std::pow(num / den, 1.0 / z);
}

template <int M>
WaveSpeedPair two_rarefaction_speeds(const PrimitiveState<M>& wl, const PrimitiveState<M>& wr,
                                     const GasModel& g) {
  const double pstar = two_rarefaction_pressure(wl, wr, g);
  const double a = (g.gamma + 1.0) / (2.0 * g.gamma);
  const auto factor = [&](double pk) {
    return pstar <= pk ? 1.0 : std::sqrt(1.0 + a * (pstar / pk - 1.0));
  };
  return {wl.u() - sound_speed(wl, g) * factor(wl.p()),
          wr.u() + sound_speed(wr, g) * factor(wr.p())};
}

// Flux from a conserved state and its pressure.
template <int M>
inline Vec<M> euler_flux(const Vec<M>& q, double p) {
  const double u = q[1] / q[0];
  Vec<M> f;
  f[0] = q[1];
  f[1] = q[1] * u + p;
  if constexpr (M == 4) f[2] = q[2] * u;
  f[M - 1] = u * (q[M - 1] + p);
  return f;
}

template <int M>
Vec<M> physical_flux(const ConservedState<M>& q, const GasModel& g, Direction dir = Direction::x) {
  const double p = (g.gamma - 1.0) * q.internal();
  if (dir == Direction::x) return euler_flux<M>(q.q, p);
  return swap_velocity<M>(euler_flux<M>(swap_velocity<M>(q.q), p));
}

template <int M>
Vec<M> hll_flux(const Vec<M>& ql, const Vec<M>& qr, const Vec<M>& fl, const Vec<M>& fr,
                const WaveSpeedPair& s) {
  if (s.sL >= 0.0) return fl;
  if (s.sR <= 0.0) return fr;
  const double width = s.sR - s.sL;
  if (!(width > 1e-300)) {
    throw Error(ErrorKind::degenerate_speeds, "sR - sL = " + show(width));
  }
  const double inv = 1.0 / width;
  Vec<M> f;
  for (int i = 0; i < M; ++i) {
    f[i] = (s.sR * fl[i] - s.sL * fr[i] + s.sL * s.sR * (qr[i] - ql[i])) * inv;
  }
  return f;
}

template <int M>
Vec<M> hll_flux(const ConservedState<M>& ql, const ConservedState<M>& qr, const WaveSpeedPair& s,
                const GasModel& g) {
  return hll_flux<M>(ql.q, qr.q, physical_flux(ql, g), physical_flux(qr, g), s);
}

namespace flux_detail {

// Coefficient of the pair (f_{j-p}, f_{j+1+p}), innermost pair first.
template <int R>
struct Correction;

template <>
struct Correction<1> {
  static constexpr std::array<double, 1> pair{0.0};
};
template <>
struct Correction<2> {
  static constexpr std::array<double, 2> pair{1.0 / 48.0, -1.0 / 48.0};
};
template <>
struct Correction<3> {
  static constexpr std::array<double, 3> pair{59.0 / 1920.0, -137.0 / 3840.0, 19.0 / 3840.0};
};
template <>
struct Correction<4> {
  static constexpr std::array<double, 4> pair{7823.0 / 215040.0, -9859.0 / 215040.0,
                                              2279.0 / 215040.0, -81.0 / 71680.0};
};
template <>
struct Correction<5> {
  static constexpr std::array<double, 5> pair{413017.0 / 10321920.0, -274129.0 / 5160960.0,
                                              81491.0 / 5160960.0, -60841.0 / 20643840.0,
                                              5359.0 / 20643840.0};
};

}  // namespace flux_detail

// f points at f_{j-r+1}; 2r consecutive values.
template <int R, int M>
inline Vec<M> flux_correction(const Vec<M>* f) {
  Vec<M> out{};
  if constexpr (R == 1) return out;
  for (int p = 0; p < R; ++p) {
    const double c = flux_detail::Correction<R>::pair[p];
    const Vec<M>& a = f[R - 1 - p];
    const Vec<M>& b = f[R + p];
    for (int i = 0; i < M; ++i) out[i] += c * (a[i] + b[i]);
  }
  return out;
}

// Scalar form: window holds f_{j-r+1}, ..., f_{j+r}.
double flux_correction(std::span<const double> window, int r);

// Coefficients of the pair (f_{j-p}, f_{j+1+p}), p = 0..r-1.
std::span<const double> correction_coefficients(int r);

}  // namespace aweno
