#include "aweno/problems.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include <json.hpp>

#include "aweno/exact_riemann.hpp"

namespace aweno {

namespace {

constexpr double kPi = std::numbers::pi;

ProblemSpec riemann_tube(std::string id, Prim4 left, Prim4 right, double t_end, int n) {
  ProblemSpec p;
  p.id = std::move(id);
  p.x_min = -5.0;
  p.x_max = 5.0;
  p.nx = n;
  p.t_end = t_end;
  p.initial = [left, right](double x, double) { return x < 0.0 ? left : right; };
  p.boundary.left = SideCondition::fixed(left);
  p.boundary.right = SideCondition::fixed(right);
  p.riemann = RiemannData{left, right, 0.0};
  p.reference = ReferenceKind::riemann;
  return p;
}

Prim4 to_prim4(const PrimitiveState<3>& w) { return {w.rho(), w.u(), 0.0, w.p()}; }

ProblemSpec build(std::string_view id) {
  ProblemSpec p;
  p.id = std::string(id);
  if (id == "accuracy1_1d") {
    p.x_min = 0.0;
    p.x_max = 2.0;
    p.nx = 80;
    p.t_end = 2.0;
    p.exact = [](double x, double, double t) { return to_prim4(exact_accuracy1(x, t)); };
    p.initial = [](double x, double) { return to_prim4(exact_accuracy1(x, 0.0)); };
    p.reference = ReferenceKind::exact;
  } else if (id == "accuracy2_1d") {
    p.x_min = -1.0;
    p.x_max = 1.0;
    p.nx = 80;
    p.gamma = 3.0;
    p.t_end = 0.2;
    p.exact = [](double x, double, double t) { return to_prim4(exact_accuracy2(x, t)); };
    p.initial = [](double x, double) { return to_prim4(exact_accuracy2(x, 0.0)); };
    p.reference = ReferenceKind::exact;
  } else if (id == "sod") {
    p = riemann_tube(p.id, {1.0, 0.0, 0.0, 1.0}, {0.125, 0.0, 0.0, 0.1}, 2.0, 200);
  } else if (id == "lax") {
    p = riemann_tube(p.id, {0.445, 0.698, 0.0, 3.528}, {0.5, 0.0, 0.0, 0.571}, 1.3, 200);
  } else if (id == "leblanc") {
    p = riemann_tube(p.id, {2.0, 0.0, 0.0, 1e9}, {1e-3, 0.0, 0.0, 1.0}, 5e-5, 2000);
  } else if (id == "double_rarefaction") {
    p = riemann_tube(p.id, {7.0, -1.0, 0.0, 0.2}, {7.0, 1.0, 0.0, 0.2}, 3.3, 200);
  } else if (id == "blast_waves") {
    p.x_min = 0.0;
    p.x_max = 1.0;
    p.nx = 800;
    p.t_end = 0.038;
    p.initial = [](double x, double) -> Prim4 {
      const double pr = x < 0.1 ? 1000.0 : (x < 0.9 ? 0.01 : 100.0);
      return {1.0, 0.0, 0.0, pr};
    };
    p.boundary.left = SideCondition::reflective();
    p.boundary.right = SideCondition::reflective();
    p.reference = ReferenceKind::numerical;
    p.reference_n = 40000;
    p.desk_reference_n = 8000;
  } else if (id == "sedov_1d") {
    p.x_min = -2.0;
    p.x_max = 2.0;
    p.nx = 401;
    p.t_end = 1e-3;
    p.initial = [](double, double) -> Prim4 { return {1.0, 0.0, 0.0, 1e-12}; };
    p.boundary.left = SideCondition::fixed({1.0, 0.0, 0.0, 1e-12});
    p.boundary.right = SideCondition::fixed({1.0, 0.0, 0.0, 1e-12});
    p.point_energy = 3.2e6;
    p.odd_cells = true;
    p.reference = ReferenceKind::numerical;
    p.reference_n = 4001;
    p.desk_reference_n = 2001;
  } else if (id == "shock_density") {
    const Prim4 post{27.0 / 7.0, 4.0 * std::sqrt(35.0) / 9.0, 0.0, 31.0 / 3.0};
    const auto wave = [](double x) -> Prim4 { return {1.0 + 0.2 * std::sin(5.0 * x), 0.0, 0.0, 1.0}; };
    p.x_min = -5.0;
    p.x_max = 5.0;
    p.nx = 400;
    p.t_end = 1.8;
    p.initial = [post, wave](double x, double) { return x < -4.0 ? post : wave(x); };
    p.boundary.left = SideCondition::fixed(post);
    p.boundary.right = SideCondition::exact_state([wave](double x, double, double) { return wave(x); });
    p.reference = ReferenceKind::numerical;
    p.reference_n = 40000;
    p.desk_reference_n = 8000;
  } else if (id == "accuracy_2d") {
    p.dim = 2;
    p.x_min = p.y_min = 0.0;
    p.x_max = p.y_max = 2.0;
    p.nx = p.ny = 40;
    p.t_end = 2.0;
    p.exact = [](double x, double y, double t) {
      const auto w = exact_accuracy_2d(x, y, t);
      return Prim4{w.w[0], w.w[1], w.w[2], w.w[3]};
    };
    p.initial = [f = p.exact](double x, double y) { return f(x, y, 0.0); };
    p.boundary = {};
    p.reference = ReferenceKind::exact;
  } else if (id == "dmr") {
    p.dim = 2;
    p.x_min = 0.0;
    p.x_max = 4.0;
    p.y_min = 0.0;
    p.y_max = 1.0;
    p.nx = 480;
    p.ny = 120;
    p.t_end = 0.2;
    p.exact = dmr_state;
    p.initial = [](double x, double y) { return dmr_state(x, y, 0.0); };
    p.boundary.left = SideCondition::exact_state(dmr_state);
    p.boundary.right = SideCondition::exact_state(dmr_state);
    p.boundary.top = SideCondition::exact_state(dmr_state);
    p.boundary.bottom = SideCondition::dmr_bottom(dmr_state, kDmrWallStart);
  } else if (id == "rti") {
    p.dim = 2;
    p.x_min = 0.0;
    p.x_max = 0.25;
    p.y_min = 0.0;
    p.y_max = 1.0;
    p.nx = 60;
    p.ny = 240;
    p.gamma = 5.0 / 3.0;
    p.t_end = 1.95;
    const double g = p.gamma;
    p.initial = [g](double x, double y) -> Prim4 {
      const double rho = y < 0.5 ? 2.0 : 1.0;
      const double pr = y < 0.5 ? 2.0 * y + 1.0 : y + 1.5;
      const double c = std::sqrt(g * pr / rho);
      return {rho, 0.0, -0.025 * c * std::cos(8.0 * kPi * x), pr};
    };
    p.boundary.left = SideCondition::reflective();
    p.boundary.right = SideCondition::reflective();
    p.boundary.top = SideCondition::fixed({1.0, 0.0, 0.0, 2.5});
    p.boundary.bottom = SideCondition::fixed({2.0, 0.0, 0.0, 1.0});
    p.source.gy = 1.0;
  } else if (id == "khi") {
    p.dim = 2;
    p.x_min = p.y_min = -0.5;
    p.x_max = p.y_max = 0.5;
    p.nx = p.ny = 128;
    p.t_end = 1.0;
    p.initial = [](double x, double y) -> Prim4 {
      const double v = 0.01 * std::sin(2.0 * kPi * x);
      return std::abs(y) <= 0.25 ? Prim4{2.0, -0.5, v, 2.5} : Prim4{1.0, 0.5, v, 2.5};
    };
  } else {
    throw Error(ErrorKind::unknown_problem, "no problem named '" + std::string(id) + "'");
  }
  if (p.dim == 1) {
    p.ny = 1;
    p.y_min = 0.0;
    p.y_max = 1.0;
  }
  return p;
}

std::string kind_name(BoundaryKind k) {
  switch (k) {
    case BoundaryKind::periodic: return "periodic";
    case BoundaryKind::reflective: return "reflective";
    case BoundaryKind::fixed: return "fixed";
    case BoundaryKind::exact: return "exact";
    case BoundaryKind::dmr_bottom: return "dmr_bottom";
  }
  return "?";
}

std::string reference_name(ReferenceKind k) {
  switch (k) {
    case ReferenceKind::exact: return "exact";
    case ReferenceKind::riemann: return "riemann";
    case ReferenceKind::numerical: return "numerical";
    case ReferenceKind::none: return "none";
  }
  return "?";
}

nlohmann::json side_json(const SideCondition& s) {
  nlohmann::json j{{"kind", kind_name(s.kind)}};
  if (s.kind == BoundaryKind::fixed) j["state"] = s.state;
  if (s.kind == BoundaryKind::dmr_bottom) j["wall_start"] = s.wall_start;
  return j;
}

}  // namespace

const std::vector<std::string>& problem_ids() {
  static const std::vector<std::string> ids{
      "accuracy1_1d", "accuracy2_1d",  "sod",         "lax", "leblanc", "double_rarefaction",
      "blast_waves",  "sedov_1d",      "shock_density", "accuracy_2d", "dmr", "rti", "khi"};
  return ids;
}

ProblemSpec make_problem(std::string_view id) { return build(id); }

std::vector<ProblemSpec> catalog() {
  std::vector<ProblemSpec> out;
  for (const auto& id : problem_ids()) out.push_back(build(id));
  return out;
}

std::string to_json(const ProblemSpec& p) {
  nlohmann::json j;
  j["id"] = p.id;
  j["dim"] = p.dim;
  j["domain"] = {p.x_min, p.x_max, p.y_min, p.y_max};
  j["cells"] = {p.nx, p.ny};
  j["gamma"] = p.gamma;
  j["t_end"] = p.t_end;
  j["boundary"] = {{"left", side_json(p.boundary.left)},
                   {"right", side_json(p.boundary.right)},
                   {"bottom", side_json(p.boundary.bottom)},
                   {"top", side_json(p.boundary.top)}};
  j["gravity"] = {p.source.gx, p.source.gy};
  j["reference"] = reference_name(p.reference);
  j["reference_n"] = p.reference_n;
  j["desk_reference_n"] = p.desk_reference_n;
  j["point_energy"] = p.point_energy;
  j["odd_cells"] = p.odd_cells;
  if (p.riemann) {
    j["riemann"] = {{"left", p.riemann->left}, {"right", p.riemann->right}, {"x0", p.riemann->x0}};
  }
  return j.dump();
}

ProblemSpec problem_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::config, std::string("problem json: ") + e.what());
  }
  ProblemSpec p = build(j.at("id").get<std::string>());
  const auto domain = j.at("domain").get<std::array<double, 4>>();
  p.x_min = domain[0];
  p.x_max = domain[1];
  p.y_min = domain[2];
  p.y_max = domain[3];
  const auto cells = j.at("cells").get<std::array<int, 2>>();
  p.nx = cells[0];
  p.ny = cells[1];
  p.gamma = j.at("gamma").get<double>();
  p.t_end = j.at("t_end").get<double>();
  const auto grav = j.at("gravity").get<std::array<double, 2>>();
  p.source = {grav[0], grav[1]};
  p.reference_n = j.at("reference_n").get<int>();
  p.desk_reference_n = j.at("desk_reference_n").get<int>();
  p.point_energy = j.at("point_energy").get<double>();
  return p;
}

PrimitiveState<3> exact_accuracy1(double x, double t) {
  return make_primitive<3>(1.0 + 0.2 * std::sin(kPi * (x - t)), 1.0, 0.0, 1.0);
}

double burgers_characteristic(double x, double t) {
  // sin(pi x) data steepens into a shock at t = 1/pi
  if (t * kPi >= 1.0) {
    throw Error(ErrorKind::no_convergence, "characteristics cross (t = " + show(t) + " past shock formation)");
  }
  const auto residual = [&](double j) { return j - std::sin(kPi * (x - j * t)); };
  const auto slope = [&](double j) { return 1.0 + kPi * t * std::cos(kPi * (x - j * t)); };
  double lo = -1.0;
  double hi = 1.0;
  double j = std::sin(kPi * x);
  bool converged = false;
  for (int it = 0; it < 200 && !converged; ++it) {
    const double f = residual(j);
    if (f == 0.0) {
      converged = true;
      break;
    }
    if (f > 0.0) {
      hi = std::min(hi, j);
    } else {
      lo = std::max(lo, j);
    }
    const double df = slope(j);
    double next = df > 0.0 ? j - f / df : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    converged = std::abs(next - j) <= 1e-15 * (1.0 + std::abs(j));
    j = next;
  }
  if (!converged && !(std::abs(residual(j)) < 1e-14)) {
    throw Error(ErrorKind::no_convergence,
                "Burgers characteristic at x = " + show(x) + ", t = " + show(t));
  }
  if (!(slope(j) > 0.0)) {
    throw Error(ErrorKind::no_convergence, "characteristics cross (t past shock formation)");
  }
  return j;
}

PrimitiveState<3> exact_accuracy2(double x, double t) {
  const double jm = burgers_characteristic(x, t);
  const double jp = 2.0;
  const double u = 0.5 * (jp + jm);
  const double c = 0.5 * (jp - jm);
  const double rho = c / std::sqrt(3.0);
  return make_primitive<3>(rho, u, 0.0, rho * rho * rho);
}

PrimitiveState<4> exact_accuracy_2d(double x, double y, double t) {
  return make_primitive<4>(1.0 + 0.2 * std::sin(kPi * (x + y - 2.0 * t)), 1.0, 1.0, 1.0);
}

double dmr_shock_x(double y, double t) { return kDmrWallStart + (y + 20.0 * t) / std::sqrt(3.0); }

Prim4 dmr_state(double x, double y, double t) {
  static const double us = 8.25 * std::cos(kPi / 6.0);
  static const double vs = -8.25 * std::sin(kPi / 6.0);
  if (x < dmr_shock_x(y, t)) return {8.0, us, vs, 116.5};
  return {1.4, 0.0, 0.0, 1.0};
}

Grid make_grid(const ProblemSpec& p, int nx, int ny, int order) {
  Grid g;
  g.dim = p.dim;
  g.x_min = p.x_min;
  g.x_max = p.x_max;
  g.y_min = p.y_min;
  g.y_max = p.y_max;
  g.nx = nx;
  g.ny = p.dim == 2 ? ny : 1;
  g.ghost = WenoOrder(order).r();
  if (p.odd_cells && nx % 2 == 0) {
    throw Error(ErrorKind::config, p.id + " needs an odd number of cells");
  }
  return g;
}

template <int Dim>
void initialize(Solver<Dim>& s, const ProblemSpec& p) {
  s.set_initial(p.initial);
  if (p.point_energy != 0.0) {
    const int centre = s.grid().nx / 2;
    s.state()(centre, 0)[Solver<Dim>::M - 1] += p.point_energy / s.grid().dx();
  }
}

template void initialize<1>(Solver<1>&, const ProblemSpec&);
template void initialize<2>(Solver<2>&, const ProblemSpec&);

Profile1D exact_profile(const ProblemSpec& p, int n, double t) {
  if (p.dim != 1) throw Error(ErrorKind::config, "exact_profile is 1D only");
  Profile1D out;
  const double dx = (p.x_max - p.x_min) / n;
  std::optional<ExactRiemann> rs;
  if (p.reference == ReferenceKind::riemann) {
    const auto& d = *p.riemann;
    rs.emplace(make_primitive<3>(d.left[0], d.left[1], 0.0, d.left[3]),
               make_primitive<3>(d.right[0], d.right[1], 0.0, d.right[3]), GasModel(p.gamma));
  } else if (p.reference != ReferenceKind::exact) {
    throw Error(ErrorKind::config, p.id + " has no exact solution");
  }
  for (int i = 0; i < n; ++i) {
    const double x = p.x_min + (i + 0.5) * dx;
    Prim4 w;
    if (rs) {
      w = t > 0.0 ? to_prim4(rs->sample((x - p.riemann->x0) / t)) : p.initial(x, 0.0);
    } else {
      w = p.exact(x, 0.0, t);
    }
    out.x.push_back(x);
    out.rho.push_back(w[0]);
    out.u.push_back(w[1]);
    out.p.push_back(w[3]);
  }
  return out;
}

const Profile1D& reference_solution(const ProblemSpec& p, const ReferencePolicy& policy) {
  static std::map<std::string, Profile1D> cache;
  if (p.dim != 1 || p.reference != ReferenceKind::numerical) {
    throw Error(ErrorKind::config, p.id + " has no numerical reference");
  }
  const int n = policy.desk_scale ? p.desk_reference_n : p.reference_n;
  const std::string key = p.id + "/" + std::to_string(n) + "/" + std::to_string(policy.order) +
                          "/" + std::string(to_string(policy.backend));
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  SchemeOptions scheme;
  scheme.order = policy.order;
  scheme.backend = policy.backend;
  TimeControl tc;
  tc.t_end = p.t_end;
  Solver<1> s(make_grid(p, n, 1, policy.order), GasModel(p.gamma), p.boundary, p.source, scheme, tc);
  initialize(s, p);
  s.advance();

  Profile1D prof;
  const GasModel gas(p.gamma);
  for (int i = 0; i < n; ++i) {
    const auto w = cons_to_prim(ConservedState<3>{s.state()(i)}, gas);
    prof.x.push_back(s.grid().xc(i));
    prof.rho.push_back(w.rho());
    prof.u.push_back(w.u());
    prof.p.push_back(w.p());
  }
  return cache.emplace(key, std::move(prof)).first->second;
}

}  // namespace aweno
