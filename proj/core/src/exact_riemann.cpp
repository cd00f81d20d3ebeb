#include "aweno/exact_riemann.hpp"

#include "aweno/riemann_flux.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace aweno {

ExactRiemann::ExactRiemann(const PrimitiveState<3>& left, const PrimitiveState<3>& right,
                           const GasModel& g, double tol)
    : wl_(left), wr_(right), gamma_(g.gamma) {
  if (!(left.rho() > 0.0 && left.p() > 0.0 && right.rho() > 0.0 && right.p() > 0.0)) {
    throw Error(ErrorKind::non_positive_pressure, "Riemann data must have rho, p > 0");
  }
  cl_ = sound_speed(wl_, g);
  cr_ = sound_speed(wr_, g);
  const double gm1 = gamma_ - 1.0;
  const double du = wr_.u() - wl_.u();
  const double margin = 2.0 * (cl_ + cr_) / gm1 - du;
  if (margin <= 1e-12 * (cl_ + cr_)) {
    vacuum_ = true;
    return;
  }

  // The two-rarefaction estimate is exact when both waves are rarefactions.
  double p = std::max(two_rarefaction_pressure(wl_, wr_, g), tol);
  for (iterations_ = 1; iterations_ <= 100; ++iterations_) {
    double dl = 0.0;
    double dr = 0.0;
    const double f = pressure_function(p, wl_, &dl) + pressure_function(p, wr_, &dr) + du;
    double next = p - f / (dl + dr);
    if (next <= 0.0) next = 0.5 * p;
    const double change = 2.0 * std::abs(next - p) / (next + p);
    p = next;
    if (change < tol) break;
  }
  if (iterations_ > 100) throw Error(ErrorKind::no_convergence, "star pressure iteration");
  p_star_ = p;
  u_star_ = 0.5 * (wl_.u() + wr_.u()) +
            0.5 * (pressure_function(p, wr_) - pressure_function(p, wl_));
}

double ExactRiemann::pressure_function(double p, const PrimitiveState<3>& k, double* dfdp) const {
  const double g = gamma_;
  const double ck = std::sqrt(g * k.p() / k.rho());
  if (p > k.p()) {
    const double a = 2.0 / ((g + 1.0) * k.rho());
    const double b = (g - 1.0) / (g + 1.0) * k.p();
    const double q = std::sqrt(a / (p + b));
    if (dfdp) *dfdp = q * (1.0 - 0.5 * (p - k.p()) / (b + p));
    return (p - k.p()) * q;
  }
  const double ratio = p / k.p();
  if (dfdp) *dfdp = std::pow(ratio, -(g + 1.0) / (2.0 * g)) / (k.rho() * ck);
  return 2.0 * ck / (g - 1.0) * (std::pow(ratio, (g - 1.0) / (2.0 * g)) - 1.0);
}

PrimitiveState<3> ExactRiemann::sample_left(double xi) const {
  const double g = gamma_;
  const double g5 = 2.0 / (g + 1.0);
  const double g6 = (g - 1.0) / (g + 1.0);
  const double g7 = 0.5 * (g - 1.0);
  const double ratio = p_star_ / wl_.p();
  if (!vacuum_ && p_star_ > wl_.p()) {
    const double s = wl_.u() - cl_ * std::sqrt((g + 1.0) / (2.0 * g) * ratio + (g - 1.0) / (2.0 * g));
    if (xi <= s) return wl_;
    return make_primitive<3>(wl_.rho() * (ratio + g6) / (g6 * ratio + 1.0), u_star_, 0.0, p_star_);
  }
  if (xi <= wl_.u() - cl_) return wl_;
  if (!vacuum_) {
    const double tail = u_star_ - cl_ * std::pow(ratio, (g - 1.0) / (2.0 * g));
    if (xi > tail) {
      return make_primitive<3>(wl_.rho() * std::pow(ratio, 1.0 / g), u_star_, 0.0, p_star_);
    }
  }
  const double base = std::max(g5 + g6 / cl_ * (wl_.u() - xi), 0.0);
  return make_primitive<3>(wl_.rho() * std::pow(base, 2.0 / (g - 1.0)),
                           g5 * (cl_ + g7 * wl_.u() + xi), 0.0,
                           wl_.p() * std::pow(base, 2.0 * g / (g - 1.0)));
}

PrimitiveState<3> ExactRiemann::sample_right(double xi) const {
  const double g = gamma_;
  const double g5 = 2.0 / (g + 1.0);
  const double g6 = (g - 1.0) / (g + 1.0);
  const double g7 = 0.5 * (g - 1.0);
  const double ratio = p_star_ / wr_.p();
  if (!vacuum_ && p_star_ > wr_.p()) {
    const double s = wr_.u() + cr_ * std::sqrt((g + 1.0) / (2.0 * g) * ratio + (g - 1.0) / (2.0 * g));
    if (xi >= s) return wr_;
    return make_primitive<3>(wr_.rho() * (ratio + g6) / (g6 * ratio + 1.0), u_star_, 0.0, p_star_);
  }
  if (xi >= wr_.u() + cr_) return wr_;
  if (!vacuum_) {
    const double tail = u_star_ + cr_ * std::pow(ratio, (g - 1.0) / (2.0 * g));
    if (xi < tail) {
      return make_primitive<3>(wr_.rho() * std::pow(ratio, 1.0 / g), u_star_, 0.0, p_star_);
    }
  }
  const double base = std::max(g5 - g6 / cr_ * (wr_.u() - xi), 0.0);
  return make_primitive<3>(wr_.rho() * std::pow(base, 2.0 / (g - 1.0)),
                           g5 * (-cr_ + g7 * wr_.u() + xi), 0.0,
                           wr_.p() * std::pow(base, 2.0 * g / (g - 1.0)));
}

PrimitiveState<3> ExactRiemann::sample(double xi) const {
  if (vacuum_) {
    const double head_l = wl_.u() + 2.0 * cl_ / (gamma_ - 1.0);
    const double head_r = wr_.u() - 2.0 * cr_ / (gamma_ - 1.0);
    if (xi < head_l) return sample_left(xi);
    if (xi > head_r) return sample_right(xi);
    return make_primitive<3>(0.0, xi, 0.0, 0.0);
  }
  return xi <= u_star_ ? sample_left(xi) : sample_right(xi);
}

}  // namespace aweno
