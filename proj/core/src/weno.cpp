#include "aweno/weno.hpp"

#include <algorithm>
#include <string>

#include "aweno/errors.hpp"

namespace aweno {

WenoOrder::WenoOrder(int k) : k_(k) {
  if (k != 3 && k != 5 && k != 7 && k != 9) {
    throw Error(ErrorKind::config, "WENO order must be 3, 5, 7 or 9, got " + std::to_string(k));
  }
}

namespace {

void check_window(std::span<const double> window, WenoOrder ord) {
  if (static_cast<int>(window.size()) != ord.window()) {
    throw Error(ErrorKind::config, "WENO window of length " + std::to_string(window.size()) +
                                       " for order " + std::to_string(ord.k()));
  }
}

template <int R>
WenoTable make_table() {
  using T = weno_detail::Table<R>;
  WenoTable t;
  t.r = R;
  t.linear_weights.assign(T::d.begin(), T::d.end());
  for (const auto& row : T::c) t.coefficients.emplace_back(row.begin(), row.end());
  return t;
}

template <typename F>
auto dispatch(int r, F&& f) {
  switch (r) {
    case 2: return f(std::integral_constant<int, 2>{});
    case 3: return f(std::integral_constant<int, 3>{});
    case 4: return f(std::integral_constant<int, 4>{});
    default: return f(std::integral_constant<int, 5>{});
  }
}

}  // namespace

double weno_interpolate(std::span<const double> window, WenoOrder ord, double eps) {
  check_window(window, ord);
  return dispatch(ord.r(), [&](auto R) { return weno_left<decltype(R)::value>(window.data(), eps); });
}

double weno_interpolate_right(std::span<const double> window, WenoOrder ord, double eps) {
  check_window(window, ord);
  std::vector<double> reversed(window.rbegin(), window.rend());
  return weno_interpolate(reversed, ord, eps);
}

std::vector<double> smoothness_indicators(std::span<const double> window, WenoOrder ord) {
  check_window(window, ord);
  std::vector<double> b(ord.r());
  dispatch(ord.r(), [&](auto R) {
    weno_detail::betas<decltype(R)::value>(window.data(), b.data());
    return 0;
  });
  return b;
}

std::vector<double> substencil_values(std::span<const double> window, WenoOrder ord) {
  check_window(window, ord);
  const int r = ord.r();
  const WenoTable& t = weno_table(r);
  std::vector<double> out(r, 0.0);
  for (int s = 0; s < r; ++s) {
    for (int m = 0; m < r; ++m) out[s] += t.coefficients[s][m] * window[r - 1 - s + m];
  }
  return out;
}

std::vector<double> weno_weights(std::span<const double> window, WenoOrder ord, double eps) {
  const auto beta = smoothness_indicators(window, ord);
  const WenoTable& t = weno_table(ord.r());
  std::vector<double> w(beta.size());
  double sum = 0.0;
  for (std::size_t s = 0; s < beta.size(); ++s) {
    w[s] = t.linear_weights[s] / ((eps + beta[s]) * (eps + beta[s]));
    sum += w[s];
  }
  for (double& x : w) x /= sum;
  return w;
}

std::vector<double> sos_oracle_beta(std::span<const double> window, WenoOrder ord) {
  check_window(window, ord);
  const int r = ord.r();
  std::vector<double> out(r);
  for (int s = 0; s < r; ++s) {
    // Nodes of substencil s relative to x_j, unit spacing.
    std::vector<long double> nodes(r);
    for (int m = 0; m < r; ++m) nodes[m] = static_cast<long double>(m - s);

    // Interpolating polynomial in monomial form: sum over Lagrange bases.
    std::vector<long double> poly(r, 0.0L);
    for (int m = 0; m < r; ++m) {
      std::vector<long double> basis{1.0L};
      long double denom = 1.0L;
      for (int n = 0; n < r; ++n) {
        if (n == m) continue;
        std::vector<long double> next(basis.size() + 1, 0.0L);
        for (std::size_t i = 0; i < basis.size(); ++i) {
          next[i + 1] += basis[i];
          next[i] -= nodes[n] * basis[i];
        }
        basis = std::move(next);
        denom *= nodes[m] - nodes[n];
      }
      const long double value = window[r - 1 - s + m];
      for (int i = 0; i < r; ++i) poly[i] += value * basis[i] / denom;
    }

    // h^l p^(l)(0) = l! a_l with h = 1.
    long double d[5] = {0.0L, 0.0L, 0.0L, 0.0L, 0.0L};
    long double factorial = 1.0L;
    for (int l = 1; l < r; ++l) {
      factorial *= l;
      d[l] = factorial * poly[l];
    }
    const long double t1 = d[1] + d[3] / 24.0L;
    const long double t2 = 520.0L * d[2] + 21.0L * d[4];
    const long double beta = t1 * t1 + t2 * t2 / 249600.0L + 781.0L / 720.0L * d[3] * d[3] +
                             1421461.0L / 1310400.0L * d[4] * d[4];
    out[s] = static_cast<double>(beta);
  }
  return out;
}

const WenoTable& weno_table(int r) {
  static const WenoTable tables[4] = {make_table<2>(), make_table<3>(), make_table<4>(),
                                      make_table<5>()};
  if (r < 2 || r > 5) throw Error(ErrorKind::config, "no WENO table for r = " + std::to_string(r));
  return tables[r - 2];
}

}  // namespace aweno
