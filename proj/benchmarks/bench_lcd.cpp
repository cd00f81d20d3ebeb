#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "aweno/characteristic.hpp"
#include "aweno/solver.hpp"
#include "aweno/weno.hpp"

using namespace aweno;

namespace {

template <int M>
void BM_LeftAction(benchmark::State& st) {
  const auto backend = static_cast<LcdBackend>(st.range(0));
  const GasModel gas(1.4);
  const auto wl = make_primitive<M>(1.0, 0.3, 0.1, 1.0);
  const auto wr = make_primitive<M>(0.8, 0.2, -0.1, 0.7);
  const auto roe = roe_average<M>(prim_to_cons(wl, gas), prim_to_cons(wr, gas), gas);
  const auto frame = build_frame<M>(roe, backend, gas);
  Vec<M> v = backend == LcdBackend::ch_ri ? prim_to_transform(wl, gas).t : prim_to_cons(wl, gas).q;
  MulCounter ctr;
  for (auto _ : st) {
    benchmark::DoNotOptimize(v = to_characteristic(frame, v, ctr));
    benchmark::DoNotOptimize(v = from_characteristic(frame, v, ctr));
  }
  st.SetLabel(std::string(to_string(backend)));
}

void BM_Weno(benchmark::State& st) {
  const int k = static_cast<int>(st.range(0));
  std::vector<double> w(k);
  for (int i = 0; i < k; ++i) w[i] = std::sin(0.3 * i);
  const WenoOrder ord(k);
  for (auto _ : st) benchmark::DoNotOptimize(weno_interpolate(w, ord));
}

template <int Dim>
void BM_Step(benchmark::State& st) {
  const int k = static_cast<int>(st.range(0));
  const auto backend = static_cast<LcdBackend>(st.range(1));
  Grid g;
  g.dim = Dim;
  g.x_max = g.y_max = 2.0;
  g.nx = Dim == 1 ? 400 : 48;
  g.ny = Dim == 1 ? 1 : 48;
  SchemeOptions s;
  s.order = k;
  s.backend = backend;
  TimeControl tc;
  tc.t_end = 1e9;
  Solver<Dim> solver(g, GasModel(1.4), {}, {}, s, tc);
  solver.set_initial([](double x, double y) -> Prim4 {
    return {1.0 + 0.2 * std::sin(M_PI * (x + y)), 1.0, Dim == 2 ? 1.0 : 0.0, 1.0};
  });
  for (auto _ : st) benchmark::DoNotOptimize(solver.step(1e-4));
  st.SetLabel(std::string(to_string(backend)));
}

void backends(benchmark::internal::Benchmark* b) {
  for (auto be : {LcdBackend::ch_ri, LcdBackend::ch_con, LcdBackend::cp_con}) b->Arg(static_cast<int>(be));
}

void orders_backends(benchmark::internal::Benchmark* b) {
  for (int k : {5, 7, 9})
    for (auto be : {LcdBackend::ch_ri, LcdBackend::ch_con, LcdBackend::cp_con}) b->Args({k, static_cast<int>(be)});
}

}  // namespace

BENCHMARK(BM_LeftAction<3>)->Apply(backends);
BENCHMARK(BM_LeftAction<4>)->Apply(backends);
BENCHMARK(BM_Weno)->DenseRange(3, 9, 2);
BENCHMARK(BM_Step<1>)->Apply(orders_backends)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Step<2>)->Apply(orders_backends)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
