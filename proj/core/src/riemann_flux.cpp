#include "aweno/riemann_flux.hpp"

#include <string>

namespace aweno {

std::span<const double> correction_coefficients(int r) {
  using namespace flux_detail;
  switch (r) {
    case 1: return Correction<1>::pair;
    case 2: return Correction<2>::pair;
    case 3: return Correction<3>::pair;
    case 4: return Correction<4>::pair;
    case 5: return Correction<5>::pair;
    default: break;
  }
  throw Error(ErrorKind::config, "flux correction needs r in 1..5, got " + std::to_string(r));
}

double flux_correction(std::span<const double> window, int r) {
  const auto coeff = correction_coefficients(r);
  if (static_cast<int>(window.size()) != 2 * r) {
    throw Error(ErrorKind::config, "flux correction window must hold 2r values");
  }
  double out = 0.0;
  for (int p = 0; p < r; ++p) out += coeff[p] * (window[r - 1 - p] + window[r + p]);
  return out;
}

}  // namespace aweno
