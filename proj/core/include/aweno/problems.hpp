#pragma once

// Catalogue of test problems: initial data, boundaries, sources, end
// times, and exact or reference solutions.

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aweno/solver.hpp"

namespace aweno {

enum class ReferenceKind { exact, riemann, numerical, none };

struct RiemannData {
  Prim4 left{};
  Prim4 right{};
  double x0 = 0.0;
};

struct ProblemSpec {
  std::string id;
  int dim = 1;
  double x_min = 0.0, x_max = 1.0;
  double y_min = 0.0, y_max = 1.0;
  int nx = 200;
  int ny = 1;
  double gamma = 1.4;
  double t_end = 1.0;
  BoundarySpec boundary;
  SourceSpec source;
  std::function<Prim4(double x, double y)> initial;
  PrimitiveField exact;  // set when reference == exact, and for DMR boundaries
  std::optional<RiemannData> riemann;
  ReferenceKind reference = ReferenceKind::none;
  int reference_n = 0;
  int desk_reference_n = 0;
  // Extra total energy deposited at the centre cell as point_energy / dx.
  double point_energy = 0.0;
  bool odd_cells = false;
};

const std::vector<std::string>& problem_ids();
ProblemSpec make_problem(std::string_view id);
std::vector<ProblemSpec> catalog();

// Serialisable part of a spec; functions are rebuilt from the id.
std::string to_json(const ProblemSpec& p);
ProblemSpec problem_from_json(const std::string& text);

PrimitiveState<3> exact_accuracy1(double x, double t);

// J- of the isentropic gamma = 3 test: J = sin(pi (x - J t)).
double burgers_characteristic(double x, double t);
PrimitiveState<3> exact_accuracy2(double x, double t);

PrimitiveState<4> exact_accuracy_2d(double x, double y, double t);

inline constexpr double kDmrWallStart = 1.0 / 6.0;
// x position of the incident shock at height y and time t.
double dmr_shock_x(double y, double t);
Prim4 dmr_state(double x, double y, double t);

struct Profile1D {
  std::vector<double> x, rho, u, p;
};

// Exact density etc. sampled at cell centres of an n-cell grid.
Profile1D exact_profile(const ProblemSpec& p, int n, double t);

struct ReferencePolicy {
  bool desk_scale = true;
  int order = 5;
  LcdBackend backend = LcdBackend::ch_con;
};

// Fine-grid numerical solution for problems without a closed form;
// cached per (id, resolution, order, backend) within the process.
const Profile1D& reference_solution(const ProblemSpec& p, const ReferencePolicy& policy = {});

Grid make_grid(const ProblemSpec& p, int nx, int ny, int order);

template <int Dim>
void initialize(Solver<Dim>& s, const ProblemSpec& p);

extern template void initialize<1>(Solver<1>&, const ProblemSpec&);
extern template void initialize<2>(Solver<2>&, const ProblemSpec&);

}  // namespace aweno
