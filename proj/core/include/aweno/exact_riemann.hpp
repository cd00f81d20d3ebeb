#pragma once

// Exact solution of the 1D Riemann problem for a gamma-law gas: Newton on
// the star-pressure function, then self-similar sampling at xi = x / t.
// Data that would open a vacuum is solved with the two-rarefaction-plus-
// vacuum fan and flagged rather than rejected.

#include "aweno/euler_state.hpp"

namespace aweno {

class ExactRiemann {
 public:
  ExactRiemann(const PrimitiveState<3>& left, const PrimitiveState<3>& right, const GasModel& g,
               double tol = 1e-12);

  PrimitiveState<3> sample(double xi) const;

  double p_star() const { return p_star_; }
  double u_star() const { return u_star_; }
  bool vacuum_formed() const { return vacuum_; }
  int iterations() const { return iterations_; }

  // One side of the pressure function and its derivative.
  double pressure_function(double p, const PrimitiveState<3>& k, double* dfdp = nullptr) const;

 private:
  PrimitiveState<3> sample_left(double xi) const;
  PrimitiveState<3> sample_right(double xi) const;

  PrimitiveState<3> wl_, wr_;
  double gamma_;
  double cl_, cr_;
  double p_star_ = 0.0;
  double u_star_ = 0.0;
  bool vacuum_ = false;
  int iterations_ = 0;
};

}  // namespace aweno
