#pragma once

// WENO-JS interpolation of point values to the right cell face,
// u^-_{j+1/2}, at orders k = 2r - 1 in {3, 5, 7, 9}.
//
// A window holds the 2r - 1 values u_{j-r+1}, ..., u_{j+r-1}; u_j sits at
// index r - 1. Substencil s in [0, r) covers u_{j-s}, ..., u_{j-s+r-1}, so
// s = 0 is the right-most substencil.

#include <array>
#include <span>
#include <vector>

namespace aweno {

class WenoOrder {
 public:
  explicit WenoOrder(int k);
  int k() const { return k_; }
  int r() const { return (k_ + 1) / 2; }
  int window() const { return k_; }

 private:
  int k_;
};

inline constexpr double kWenoEps = 1e-6;

namespace weno_detail {

template <int R>
struct Table;

template <>
struct Table<2> {
  static constexpr std::array<double, 2> d{3.0 / 4.0, 1.0 / 4.0};
  static constexpr std::array<std::array<double, 2>, 2> c{{
      {1.0 / 2.0, 1.0 / 2.0},
      {-1.0 / 2.0, 3.0 / 2.0},
  }};
};

template <>
struct Table<3> {
  static constexpr std::array<double, 3> d{5.0 / 16.0, 5.0 / 8.0, 1.0 / 16.0};
  static constexpr std::array<std::array<double, 3>, 3> c{{
      {3.0 / 8.0, 3.0 / 4.0, -1.0 / 8.0},
      {-1.0 / 8.0, 3.0 / 4.0, 3.0 / 8.0},
      {3.0 / 8.0, -5.0 / 4.0, 15.0 / 8.0},
  }};
};

template <>
struct Table<4> {
  static constexpr std::array<double, 4> d{7.0 / 64.0, 35.0 / 64.0, 21.0 / 64.0, 1.0 / 64.0};
  static constexpr std::array<std::array<double, 4>, 4> c{{
      {5.0 / 16.0, 15.0 / 16.0, -5.0 / 16.0, 1.0 / 16.0},
      {-1.0 / 16.0, 9.0 / 16.0, 9.0 / 16.0, -1.0 / 16.0},
      {1.0 / 16.0, -5.0 / 16.0, 15.0 / 16.0, 5.0 / 16.0},
      {-5.0 / 16.0, 21.0 / 16.0, -35.0 / 16.0, 35.0 / 16.0},
  }};
};

template <>
struct Table<5> {
  static constexpr std::array<double, 5> d{9.0 / 256.0, 21.0 / 64.0, 63.0 / 128.0, 9.0 / 64.0,
                                           1.0 / 256.0};
  static constexpr std::array<std::array<double, 5>, 5> c{{
      {35.0 / 128.0, 35.0 / 32.0, -35.0 / 64.0, 7.0 / 32.0, -5.0 / 128.0},
      {-5.0 / 128.0, 15.0 / 32.0, 45.0 / 64.0, -5.0 / 32.0, 3.0 / 128.0},
      {3.0 / 128.0, -5.0 / 32.0, 45.0 / 64.0, 15.0 / 32.0, -5.0 / 128.0},
      {-5.0 / 128.0, 7.0 / 32.0, -35.0 / 64.0, 35.0 / 32.0, 35.0 / 128.0},
      {35.0 / 128.0, -45.0 / 32.0, 189.0 / 64.0, -105.0 / 32.0, 315.0 / 128.0},
  }};
};

inline double sq(double x) { return x * x; }

// Smoothness indicators in closed form. u points at u_{j-r+1}.
template <int R>
inline void betas(const double* u, double* b);

template <>
inline void betas<2>(const double* u, double* b) {
  b[0] = sq(u[1] - u[2]);
  b[1] = sq(u[0] - u[1]);
}

template <>
inline void betas<3>(const double* u, double* b) {
  const double um2 = u[0], um1 = u[1], u0 = u[2], up1 = u[3], up2 = u[4];
  b[0] = 13.0 / 12.0 * sq(u0 - 2.0 * up1 + up2) + 0.25 * sq(3.0 * u0 - 4.0 * up1 + up2);
  // The first-derivative term of the central substencil is (u_{j-1} - u_{j+1})/2.
  b[1] = 13.0 / 12.0 * sq(um1 - 2.0 * u0 + up1) + 0.25 * sq(um1 - up1);
  b[2] = 13.0 / 12.0 * sq(um2 - 2.0 * um1 + u0) + 0.25 * sq(um2 - 4.0 * um1 + 3.0 * u0);
}

template <>
inline void betas<4>(const double* u, double* b) {
  const double um3 = u[0], um2 = u[1], um1 = u[2], u0 = u[3], up1 = u[4], up2 = u[5], up3 = u[6];
  constexpr double c2 = 13.0 / 12.0;
  constexpr double c3 = 781.0 / 720.0;
  b[0] = sq(-15.0 * u0 + 25.0 * up1 - 13.0 * up2 + 3.0 * up3) / 64.0 +
         c2 * sq(2.0 * u0 - 5.0 * up1 + 4.0 * up2 - up3) +
         c3 * sq(-u0 + 3.0 * up1 - 3.0 * up2 + up3);
  b[1] = sq(-3.0 * um1 - 3.0 * u0 + 7.0 * up1 - up2) / 64.0 + c2 * sq(um1 - 2.0 * u0 + up1) +
         c3 * sq(-um1 + 3.0 * u0 - 3.0 * up1 + up2);
  b[2] = sq(um2 - 7.0 * um1 + 3.0 * u0 + 3.0 * up1) / 64.0 + c2 * sq(um1 - 2.0 * u0 + up1) +
         c3 * sq(-um2 + 3.0 * um1 - 3.0 * u0 + up1);
  b[3] = sq(-3.0 * um3 + 13.0 * um2 - 25.0 * um1 + 15.0 * u0) / 64.0 +
         c2 * sq(-um3 + 4.0 * um2 - 5.0 * um1 + 2.0 * u0) +
         c3 * sq(-um3 + 3.0 * um2 - 3.0 * um1 + u0);
}

template <>
inline void betas<5>(const double* u, double* b) {
  const double um4 = u[0], um3 = u[1], um2 = u[2], um1 = u[3], u0 = u[4];
  const double up1 = u[5], up2 = u[6], up3 = u[7], up4 = u[8];
  constexpr double c3 = 781.0 / 2880.0;
  constexpr double c4 = 1421461.0 / 1310400.0;
  b[0] = sq(-35.0 * u0 + 70.0 * up1 - 56.0 * up2 + 26.0 * up3 - 5.0 * up4) / 256.0 +
         sq(4613.0 * u0 - 13772.0 * up1 + 15198.0 * up2 - 7532.0 * up3 + 1493.0 * up4) / 2246400.0 +
         c3 * sq(-5.0 * u0 + 18.0 * up1 - 24.0 * up2 + 14.0 * up3 - 3.0 * up4) +
         c4 * sq(u0 - 4.0 * up1 + 6.0 * up2 - 4.0 * up3 + up4);
  b[1] = sq(-5.0 * um1 - 10.0 * u0 + 20.0 * up1 - 6.0 * up2 + up3) / 256.0 +
         sq(1493.0 * um1 - 2852.0 * u0 + 1158.0 * up1 + 268.0 * up2 - 67.0 * up3) / 2246400.0 +
         c3 * sq(-3.0 * um1 + 10.0 * u0 - 12.0 * up1 + 6.0 * up2 - up3) +
         c4 * sq(um1 - 4.0 * u0 + 6.0 * up1 - 4.0 * up2 + up3);
  b[2] = sq(um2 - 10.0 * um1 + 10.0 * up1 - up2) / 256.0 +
         sq(-67.0 * um2 + 1828.0 * um1 - 3522.0 * u0 + 1828.0 * up1 - 67.0 * up2) / 2246400.0 +
         c3 * sq(-um2 + 2.0 * um1 - 2.0 * up1 + up2) +
         c4 * sq(um2 - 4.0 * um1 + 6.0 * u0 - 4.0 * up1 + up2);
  b[3] = sq(-um3 + 6.0 * um2 - 20.0 * um1 + 10.0 * u0 + 5.0 * up1) / 256.0 +
         sq(-67.0 * um3 + 268.0 * um2 + 1158.0 * um1 - 2852.0 * u0 + 1493.0 * up1) / 2246400.0 +
         c3 * sq(um3 - 6.0 * um2 + 12.0 * um1 - 10.0 * u0 + 3.0 * up1) +
         c4 * sq(um3 - 4.0 * um2 + 6.0 * um1 - 4.0 * u0 + up1);
  b[4] = sq(5.0 * um4 - 26.0 * um3 + 56.0 * um2 - 70.0 * um1 + 35.0 * u0) / 256.0 +
         sq(1493.0 * um4 - 7532.0 * um3 + 15198.0 * um2 - 13772.0 * um1 + 4613.0 * u0) / 2246400.0 +
         c3 * sq(3.0 * um4 - 14.0 * um3 + 24.0 * um2 - 18.0 * um1 + 5.0 * u0) +
         c4 * sq(um4 - 4.0 * um3 + 6.0 * um2 - 4.0 * um1 + u0);
}

}  // namespace weno_detail

// Hot-path kernel: u points at u_{j-r+1}, 2r - 1 contiguous values.
template <int R>
inline double weno_left(const double* u, double eps = kWenoEps) {
  using T = weno_detail::Table<R>;
  double beta[R];
  weno_detail::betas<R>(u, beta);
  double num = 0.0;
  double den = 0.0;
  for (int s = 0; s < R; ++s) {
    const double e = eps + beta[s];
    const double alpha = T::d[s] / (e * e);
    const double* sub = u + (R - 1 - s);
    double cand = 0.0;
    for (int m = 0; m < R; ++m) cand += T::c[s][m] * sub[m];
    num += alpha * cand;
    den += alpha;
  }
  return num / den;
}

// u^-_{j+1/2} from the window u_{j-r+1..j+r-1}.
double weno_interpolate(std::span<const double> window, WenoOrder ord, double eps = kWenoEps);

// u^+_{j+1/2} from the window u_{j-r+2..j+r} given in increasing-x order;
// the left-biased formula is applied to the reversed window.
double weno_interpolate_right(std::span<const double> window, WenoOrder ord,
                              double eps = kWenoEps);

// Nonlinear weights omega_s, indexed like the substencils.
std::vector<double> weno_weights(std::span<const double> window, WenoOrder ord,
                                 double eps = kWenoEps);

// Substencil candidate values u^{-,(s)}_{j+1/2}.
std::vector<double> substencil_values(std::span<const double> window, WenoOrder ord);

// beta_s from the closed-form quadratic forms used by the kernel.
std::vector<double> smoothness_indicators(std::span<const double> window, WenoOrder ord);

// beta_s rebuilt from scratch: interpolate each substencil, take scaled
// derivatives at x_j and combine them with the sum-of-squares identity for
// the smoothness integral. Independent of the closed forms above.
std::vector<double> sos_oracle_beta(std::span<const double> window, WenoOrder ord);

struct WenoTable {
  int r;
  std::vector<double> linear_weights;            // d_s
  std::vector<std::vector<double>> coefficients;  // c[s][m], m over the substencil
};

const WenoTable& weno_table(int r);

}  // namespace aweno
