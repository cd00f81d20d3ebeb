#include <doctest.h>

#include <cmath>
#include <random>

#include "aweno/characteristic.hpp"
#include "aweno/riemann_flux.hpp"

using namespace aweno;

namespace {

template <int M>
using Mat = Matrix<M>;

template <int M>
Mat<M> mul(const Mat<M>& a, const Mat<M>& b) {
  Mat<M> c{};
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j)
      for (int k = 0; k < M; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

// Central-difference Jacobian of a map R^M -> R^M.
template <int M, typename F>
Mat<M> jacobian(F&& f, const Vec<M>& x) {
  Mat<M> j{};
  for (int c = 0; c < M; ++c) {
    const double h = 1e-6 * std::max(1.0, std::abs(x[c]));
    Vec<M> xp = x, xm = x;
    xp[c] += h;
    xm[c] -= h;
    const Vec<M> fp = f(xp), fm = f(xm);
    for (int r = 0; r < M; ++r) j[r][c] = (fp[r] - fm[r]) / (2.0 * h);
  }
  return j;
}

template <int M>
PrimitiveState<M> random_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> lr(-2.0, 2.0), vel(-3.0, 3.0);
  return make_primitive<M>(std::exp(lr(rng)), vel(rng), vel(rng), std::exp(lr(rng)));
}

template <int M>
RoeState roe_of(const PrimitiveState<M>& w, const GasModel& g) {
  const auto q = prim_to_cons(w, g);
  return roe_average<M>(q, q, g);
}

template <int M>
double max_offdiag_vs(const Mat<M>& a, const Vec<M>& diag) {
  double e = 0.0;
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j) e = std::max(e, std::abs(a[i][j] - (i == j ? diag[i] : 0.0)));
  return e;
}

}  // namespace

TEST_CASE("Roe average examples") {
  const GasModel g(1.4);
  const auto a = prim_to_cons(make_primitive<3>(1.0, 0.0, 0.0, 1.0), g);
  const RoeState same = roe_average<3>(a, a, g);
  CHECK(same.u == 0.0);
  CHECK(same.c == doctest::Approx(std::sqrt(1.4)).epsilon(1e-15));

  const auto b = prim_to_cons(make_primitive<3>(0.125, 0.0, 0.0, 0.1), g);
  const RoeState sod = roe_average<3>(a, b, g);
  const double s = std::sqrt(0.125);
  CHECK(sod.rho == doctest::Approx(s).epsilon(1e-15));
  CHECK(sod.u == 0.0);
  CHECK(sod.H == doctest::Approx((3.5 + s * 2.8) / (1.0 + s)).epsilon(1e-15));

  const auto l = prim_to_cons(make_primitive<3>(1.0, 0.4, 0.0, 1.0), g);
  const auto r = prim_to_cons(make_primitive<3>(0.3, -0.2, 0.0, 0.5), g);
  const auto lm = prim_to_cons(make_primitive<3>(0.3, 0.2, 0.0, 0.5), g);
  const auto rm = prim_to_cons(make_primitive<3>(1.0, -0.4, 0.0, 1.0), g);
  CHECK(roe_average<3>(lm, rm, g).u == doctest::Approx(-roe_average<3>(l, r, g).u).epsilon(1e-15));

  // a non-physical state makes c^2 negative
  const PrimitiveState<3> bad{{1.0, 0.0, -10.0}};
  const Vec<3> qbad{1.0, 0.0, -25.0};
  try {
    roe_average<3>(bad, qbad, bad, qbad, g);
    FAIL("expected ImaginarySoundSpeed");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::imaginary_sound_speed);
  }
}

TEST_CASE("frame construction") {
  const GasModel g(1.4);
  const RoeState roe = roe_of(make_primitive<3>(1.0, 0.0, 0.0, 1.0), g);
  const auto ri = build_frame<3>(roe, LcdBackend::ch_ri, g);
  CHECK(ri.mu == doctest::Approx(5.0 * std::sqrt(1.4)).epsilon(1e-15));
  CHECK(ri.eigenvalues[0] <= ri.eigenvalues[1]);
  CHECK(ri.eigenvalues[1] <= ri.eigenvalues[2]);

  MulCounter ctr;
  const auto cp = build_frame<4>(roe_of(make_primitive<4>(1.0, 0.3, -0.2, 1.0), g), LcdBackend::cp_con, g);
  const Vec<4> v{1, 2, 3, 4};
  CHECK(to_characteristic(cp, v, ctr) == v);
  CHECK(from_characteristic(cp, v, ctr) == v);
  CHECK(ctr.left == 0);
  CHECK(ctr.right == 0);
}

TEST_CASE("sparse CH-RI action example") {
  EigenFrame<3> f;
  f.backend = LcdBackend::ch_ri;
  f.mu = 2.0;
  MulCounter ctr;
  const Vec<3> w = to_characteristic<3>(f, {1, 3, 5}, ctr);
  CHECK(w == Vec<3>{7, 3, -1});
  CHECK(ctr.left == 1);
  CHECK(from_characteristic<3>(f, w, ctr) == Vec<3>{1, 3, 5});
  CHECK(ctr.right == 1);
}

TEST_CASE("per-call multiplication counts") {
  const GasModel g(1.4);
  MulCounter ctr;
  const auto roe4 = roe_of(make_primitive<4>(1.2, 0.3, -0.4, 0.9), g);
  const auto roe3 = roe_of(make_primitive<3>(1.2, 0.3, 0.0, 0.9), g);
  const auto count = [&](auto frame, auto v) {
    ctr = {};
    to_characteristic(frame, v, ctr);
    const auto l = ctr.left;
    ctr = {};
    from_characteristic(frame, v, ctr);
    return std::pair{l, ctr.right};
  };
  CHECK(count(build_frame<3>(roe3, LcdBackend::ch_ri, g), Vec<3>{1, 2, 3}) == std::pair<std::uint64_t, std::uint64_t>{1, 1});
  CHECK(count(build_frame<4>(roe4, LcdBackend::ch_ri, g), Vec<4>{1, 2, 3, 4}) == std::pair<std::uint64_t, std::uint64_t>{1, 1});
  CHECK(count(build_frame<3>(roe3, LcdBackend::ch_con, g), Vec<3>{1, 2, 3}).first == 9);
  CHECK(count(build_frame<4>(roe4, LcdBackend::ch_con, g), Vec<4>{1, 2, 3, 4}).first == 16);
  CHECK(count(build_frame<4>(roe4, LcdBackend::ch_con, g, Direction::x, true), Vec<4>{1, 2, 3, 4}).first == 7);
  CHECK(count(build_frame<4>(roe4, LcdBackend::ch_con, g), Vec<4>{1, 2, 3, 4}).second == 16);
  CHECK(count(build_frame<4>(roe4, LcdBackend::cp_con, g), Vec<4>{1, 2, 3, 4}) == std::pair<std::uint64_t, std::uint64_t>{0, 0});
  CHECK(left_action_cost<4>(LcdBackend::ch_ri, false) == 1);
  CHECK(left_action_cost<3>(LcdBackend::ch_con, false) == 9);
  CHECK(left_action_cost<4>(LcdBackend::ch_con, false) == 16);
  CHECK(left_action_cost<4>(LcdBackend::ch_con, true) == 7);
  CHECK(right_action_cost<4>(LcdBackend::ch_ri) == 1);
}

TEST_CASE("CH-CON diagonalises the finite-difference flux Jacobian") {
  const GasModel g(1.4);
  std::mt19937_64 rng(21);
  for (int n = 0; n < 50; ++n) {
    const auto w = random_state<4>(rng);
    const auto q = prim_to_cons(w, g);
    const auto frame = build_frame<4>(roe_of(w, g), LcdBackend::ch_con, g);
    const auto a = jacobian<4>([&](const Vec<4>& x) { return physical_flux(ConservedState<4>{x}, g); }, q.q);
    const auto lar = mul<4>(mul<4>(left_matrix(frame), a), right_matrix(frame));
    const double scale = std::abs(w.u()) + sound_speed(w, g);
    CHECK(max_offdiag_vs<4>(lar, frame.eigenvalues) <= 1e-6 * scale);
  }
}

TEST_CASE("CH-RI diagonalises the Jacobian in transform variables") {
  const GasModel g(1.4);
  std::mt19937_64 rng(22);
  for (int n = 0; n < 50; ++n) {
    const auto w = random_state<4>(rng);
    const auto v = prim_to_transform(w, g);
    const auto frame = build_frame<4>(roe_of(w, g), LcdBackend::ch_ri, g);
    // B = (dv/dq) A (dq/dv) = (dv/dq) d f(q(v)) / dv
    const auto fv = jacobian<4>(
        [&](const Vec<4>& x) { return physical_flux(transform_to_cons(TransformState<4>{x}, g), g); }, v.t);
    const auto dvdq = jacobian<4>(
        [&](const Vec<4>& x) { return cons_to_transform(ConservedState<4>{x}, g).t; }, prim_to_cons(w, g).q);
    const auto b = mul<4>(dvdq, fv);
    const auto lbr = mul<4>(mul<4>(left_matrix(frame), b), right_matrix(frame));
    const double scale = std::abs(w.u()) + sound_speed(w, g);
    CHECK(max_offdiag_vs<4>(lbr, frame.eigenvalues) <= 1e-5 * scale);
  }
}

TEST_CASE_TEMPLATE("left and right actions are inverse", T, std::integral_constant<int, 3>, std::integral_constant<int, 4>) {
  constexpr int M = T::value;
  const GasModel g(1.4);
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> dist(-10.0, 10.0);
  for (auto b : {LcdBackend::ch_ri, LcdBackend::ch_con, LcdBackend::cp_con}) {
    for (auto dir : {Direction::x, Direction::y}) {
      if (M == 3 && dir == Direction::y) continue;
      double worst = 0.0;
      for (int n = 0; n < 1000; ++n) {
        const auto frame = build_frame<M>(roe_of(random_state<M>(rng), g), b, g, dir);
        const auto lr = mul<M>(left_matrix(frame), right_matrix(frame));
        const auto rl = mul<M>(right_matrix(frame), left_matrix(frame));
        Vec<M> ones{};
        ones.fill(1.0);
        worst = std::max({worst, max_offdiag_vs<M>(lr, ones), max_offdiag_vs<M>(rl, ones)});
        Vec<M> v;
        for (auto& x : v) x = dist(rng);
        MulCounter ctr;
        const auto back = from_characteristic(frame, to_characteristic(frame, v, ctr), ctr);
        double vmax = 0.0;
        for (int i = 0; i < M; ++i) vmax = std::max(vmax, std::abs(v[i]));
        for (int i = 0; i < M; ++i) worst = std::max(worst, std::abs(back[i] - v[i]) / vmax);
      }
      CHECK(worst <= 1e-12);
    }
  }
}

TEST_CASE("split-xi left action equals the dense one") {
  const GasModel g(1.4);
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  for (int n = 0; n < 500; ++n) {
    const auto roe4 = roe_of(random_state<4>(rng), g);
    for (auto dir : {Direction::x, Direction::y}) {
      const auto dense = build_frame<4>(roe4, LcdBackend::ch_con, g, dir, false);
      const auto split = build_frame<4>(roe4, LcdBackend::ch_con, g, dir, true);
      Vec<4> v;
      for (auto& x : v) x = dist(rng);
      MulCounter c;
      const auto a = to_characteristic(dense, v, c);
      const auto b = to_characteristic(split, v, c);
      for (int i = 0; i < 4; ++i) CHECK(b[i] == doctest::Approx(a[i]).epsilon(1e-12).scale(10.0));
    }
    const auto roe3 = roe_of(random_state<3>(rng), g);
    const auto d3 = build_frame<3>(roe3, LcdBackend::ch_con, g, Direction::x, false);
    const auto s3 = build_frame<3>(roe3, LcdBackend::ch_con, g, Direction::x, true);
    const Vec<3> v{dist(rng), dist(rng), dist(rng)};
    MulCounter c;
    const auto a = to_characteristic(d3, v, c);
    const auto b = to_characteristic(s3, v, c);
    for (int i = 0; i < 3; ++i) CHECK(b[i] == doctest::Approx(a[i]).epsilon(1e-12).scale(10.0));
  }
}

TEST_CASE("CH-RI right eigenmatrix sparsity") {
  const GasModel g(1.4);
  const auto frame = build_frame<4>(roe_of(make_primitive<4>(0.8, 0.1, 0.2, 1.3), g), LcdBackend::ch_ri, g);
  const auto r = right_matrix(frame);
  for (int col : {0, 2, 3}) {
    for (int row = 0; row < 4; ++row) CHECK(r[row][col] == (row == col ? 1.0 : 0.0));
  }
  CHECK(r[0][1] == -frame.mu);
  CHECK(r[3][1] == frame.mu);
  CHECK(r[1][1] == 1.0);
  CHECK(r[2][1] == 0.0);
}

TEST_CASE("y frame is the x frame of the swapped state") {
  const GasModel g(1.4);
  std::mt19937_64 rng(25);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  for (int n = 0; n < 200; ++n) {
    const auto w = random_state<4>(rng);
    const auto ws = make_primitive<4>(w.rho(), w.v(), w.u(), w.p());
    const auto fy = build_frame<4>(roe_of(w, g), LcdBackend::ch_con, g, Direction::y);
    const auto fx = build_frame<4>(roe_of(ws, g), LcdBackend::ch_con, g, Direction::x);
    Vec<4> v;
    for (auto& x : v) x = dist(rng);
    MulCounter c;
    const auto a = to_characteristic(fy, v, c);
    const auto b = to_characteristic(fx, swap_velocity<4>(v), c);
    for (int i = 0; i < 4; ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-13));
    for (int i = 0; i < 4; ++i) CHECK(fy.eigenvalues[i] == doctest::Approx(fx.eigenvalues[i]).epsilon(1e-14));
  }
}

TEST_CASE("backend names") {
  CHECK(parse_backend("ch_ri") == LcdBackend::ch_ri);
  CHECK(parse_backend("CH-CON") == LcdBackend::ch_con);
  CHECK(to_string(LcdBackend::cp_con) == "cp_con");
  CHECK_THROWS_AS(parse_backend("roe"), Error);
}
