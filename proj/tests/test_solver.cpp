#include <doctest.h>

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "wavelab/errors.hpp"
#include "wavelab/free_oracle.hpp"
#include "wavelab/profile.hpp"
#include "wavelab/quadrature.hpp"
#include "wavelab/solver.hpp"

using namespace wavelab;

namespace {

constexpr double kPi = std::numbers::pi;

FieldState make_state(SolverMode mode, double h, const InitialData& d, Equation eq, double T,
                      Exec exec = Exec::parallel, double margin = 0.0) {
  const Grid g = make_grid(mode, h, d.support_radius() + T + 2 * h + margin);
  return init_state(g, time_step_for(h, kDefaultCfl, T), d, eq, T, exec);
}

InitialData radial_pair(double eps) {
  InitialData d;
  d.epsilon = eps;
  d.f[0].push_back({{0, 0}, 1.0, 1.0});
  d.g[0].push_back({{0, 0}, 1.5, 0.8});
  d.f[1].push_back({{0, 0}, 2.0, 0.6});
  d.g[1].push_back({{0, 0}, 1.0, -0.7});
  return d;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TEST_CASE("time step divides T exactly within the CFL bound") {
  const double dt = time_step_for(0.01, 0.45, 3.0);
  CHECK(dt <= 0.45 * 0.01);
  const double steps = 3.0 / dt;
  CHECK(std::abs(steps - std::round(steps)) < 1e-9);
  CHECK(time_step_for(0.01, 0.45, 0.0) == doctest::Approx(0.0045));
}

TEST_CASE("grids reach the requested extent") {
  const Grid r = make_grid(SolverMode::radial, 0.1, 5.0);
  CHECK(r.extent() >= 5.0);
  CHECK(r.coord(0) == doctest::Approx(0.05));
  const Grid c = make_grid(SolverMode::cartesian2d, 0.1, 5.0);
  CHECK(c.extent() >= 5.0);
  CHECK(c.coord(c.half()) == 0.0);
  CHECK(c.size() == static_cast<std::size_t>(c.n) * c.n);
}

TEST_CASE("zero data stays zero") {
  InitialData d;
  d.f[0].push_back({{0, 0}, 1.0, 1.0});
  d.epsilon = 0.0;
  for (auto mode : {SolverMode::radial, SolverMode::cartesian2d}) {
    FieldState s = make_state(mode, 1.0 / 16, d, Equation::coupled, 1.0);
    const auto trace = run_simulation(s, 1.0);
    for (int j = 0; j < 2; ++j) {
      CHECK(max_abs(s.u(j)) == 0.0);
      CHECK(max_abs(s.ut(j)) == 0.0);
    }
    for (const auto& r : trace.records) {
      CHECK(r.e1sq == 0.0);
      CHECK(r.e2sq == 0.0);
      CHECK(r.cum_dissipation == 0.0);
    }
  }
}

TEST_CASE("initial energy converges to the quadrature value") {
  const Bump b{{0, 0}, 1.0, 1.0};
  InitialData d;
  d.epsilon = 0.5;
  d.f[0].push_back(b);
  // Independent polar integral of |f'(r)|^2 against the 30-digit value 2 pi.
  const double grad_sq =
      2 * kPi * integrate_composite([&](double r) { const Jet j = bump_jet(b, {r, 0}); return r * j.dx * j.dx; }, 0, 1,
                                    64, gauss_legendre(32));
  CHECK(std::abs(grad_sq - 6.28318530717958647692528676656) < 1e-12);
  const double exact = 0.5 * d.epsilon * d.epsilon * grad_sq;

  for (auto mode : {SolverMode::radial, SolverMode::cartesian2d}) {
    CAPTURE(to_string(mode));
    std::vector<double> E;
    for (double h : {1.0 / 128, 1.0 / 256}) E.push_back(energies_and_dissipation(make_state(mode, h, d, Equation::free, 0.1)).e1sq);
    const double e0 = std::abs(E[0] - exact), e1 = std::abs(E[1] - exact);
    CHECK(e0 / exact < 1e-3);
    CHECK(std::log2(e0 / e1) >= 1.9);
    // One Richardson step removes the h^2 term.
    const double rich = (4.0 * E[1] - E[0]) / 3.0;
    CHECK(std::abs(rich - exact) / exact <= 1e-6);
  }
}

TEST_CASE("initial levels hold the exact data at the nodes") {
  InitialData d;
  d.epsilon = 0.5;
  d.f[0].push_back({{0, 0}, 1.0, 1.0});
  d.f[1].push_back({{0, 0}, 1.0, -0.5});
  d.g[0].push_back({{0, 0}, 1.0, 1.0});
  const double h = 1.0 / 64;
  const FieldState sc = make_state(SolverMode::cartesian2d, h, d, Equation::free, 1.0);
  const Grid& gc = sc.grid();
  for (int row = 0; row < gc.n; row += 7)
    for (int col = 0; col < gc.n; col += 5) {
      const auto p = build_initial_data(d, {gc.coord(col), gc.coord(row)});
      CHECK(sc.value(0, col, row) == p.u[0]);
      CHECK(sc.value(1, col, row) == p.u[1]);
      CHECK(sc.ut(0)[sc.index(col, row)] == p.ut[0]);
    }
  const FieldState sr = make_state(SolverMode::radial, h, d, Equation::free, 1.0);
  for (int i = 0; i < sr.grid().n; ++i) {
    const auto p = build_initial_data(d, {sr.grid().coord(i), 0});
    CHECK(sr.u(0)[i] == p.u[0]);
    CHECK(sr.u(1)[i] == p.u[1]);
  }
}

TEST_CASE("radial cubic interpolation matches Cartesian nodes at fourth order") {
  InitialData d;
  d.epsilon = 0.5;
  d.f[0].push_back({{0, 0}, 1.0, 1.0});
  d.f[1].push_back({{0, 0}, 1.0, -0.5});
  d.g[0].push_back({{0, 0}, 1.0, 1.0});
  std::vector<double> diffs;
  for (double h : {1.0 / 128, 1.0 / 256}) {
    const FieldState sr = make_state(SolverMode::radial, h, d, Equation::free, 1.0);
    const FieldState sc = make_state(SolverMode::cartesian2d, h, d, Equation::free, 1.0);
    const Grid& gc = sc.grid();
    double mx = 0.0;
    for (int c = gc.half() + 2; c < gc.n; ++c) {
      const double x = gc.coord(c);
      if (x > 1.2) break;
      const auto p = interpolate_fields(sr, {x, 0});
      for (int j = 0; j < 2; ++j) mx = std::max(mx, std::abs(p.u[j] - sc.value(j, c, gc.half())));
    }
    diffs.push_back(mx);
  }
  CHECK(diffs[0] < 2e-6);
  CHECK(std::log2(diffs[0] / diffs[1]) >= 3.5);
}

TEST_CASE("symmetric data keeps the components identical") {
  InitialData d;
  d.epsilon = 0.4;
  const Bump f{{0.2, 0.1}, 1.0, 1.0}, g{{-0.1, 0.0}, 1.2, -0.8};
  d.f = {std::vector<Bump>{f}, std::vector<Bump>{f}};
  d.g = {std::vector<Bump>{g}, std::vector<Bump>{g}};
  FieldState s = make_state(SolverMode::cartesian2d, 1.0 / 16, d, Equation::coupled, 2.0);
  run_simulation(s, 2.0);
  CHECK(std::equal(s.u(0).begin(), s.u(0).end(), s.u(1).begin()));
  CHECK(std::equal(s.ut(0).begin(), s.ut(0).end(), s.ut(1).begin()));
}

TEST_CASE("swapping component labels swaps the energies") {
  const InitialData d = radial_pair(0.3);
  InitialData sw = d;
  std::swap(sw.f[0], sw.f[1]);
  std::swap(sw.g[0], sw.g[1]);
  FieldState a = make_state(SolverMode::radial, 1.0 / 32, d, Equation::coupled, 4.0);
  FieldState b = make_state(SolverMode::radial, 1.0 / 32, sw, Equation::coupled, 4.0);
  const auto ta = run_simulation(a, 4.0);
  const auto tb = run_simulation(b, 4.0);
  REQUIRE(ta.records.size() == tb.records.size());
  for (std::size_t i = 0; i < ta.records.size(); ++i) {
    CHECK(ta.records[i].e1sq == tb.records[i].e2sq);
    CHECK(ta.records[i].e2sq == tb.records[i].e1sq);
    CHECK(ta.records[i].dissipation == tb.records[i].dissipation);
  }
}

TEST_CASE("energy records start at zero, step by the interval and end at T") {
  const InitialData d = radial_pair(0.3);
  FieldState s = make_state(SolverMode::radial, 1.0 / 32, d, Equation::coupled, 1.0);
  const auto trace = run_simulation(s, 1.0);
  REQUIRE(trace.records.size() == 5);
  CHECK(trace.records.front().t == 0.0);
  CHECK(trace.records.back().t == doctest::Approx(1.0));
  CHECK(s.time() == doctest::Approx(1.0));
  FieldState z = make_state(SolverMode::radial, 1.0 / 32, d, Equation::coupled, 1.0);
  CHECK(run_simulation(z, 0.0).records.size() == 1);
}

static double max_free_drift(const InitialData& d, double h, double T) {
  FieldState s = make_state(SolverMode::radial, h, d, Equation::free, T);
  const auto trace = run_simulation(s, T);
  double drift = 0.0;
  for (int j = 0; j < 2; ++j) {
    const double e0 = j == 0 ? trace.records.front().e1sq : trace.records.front().e2sq;
    for (const auto& r : trace.records) drift = std::max(drift, std::abs((j == 0 ? r.e1sq : r.e2sq) - e0) / e0);
  }
  return drift;
}

TEST_CASE("free energy is conserved over long runs at default resolution") {
  InitialData d;
  d.epsilon = 1.0;
  d.g[0].push_back({{0, 0}, 1.0, 1.0});
  d.g[1].push_back({{0, 0}, 0.8, -0.6});
  CHECK(max_free_drift(d, d.support_radius() / kDefaultCellsPerRadius, 20.0) <= 1e-4);
}

TEST_CASE("free energy drift of steep position data is a second-order transient") {
  // The worst drift occurs while the pulse focuses at the axis, t < 1.
  InitialData d;
  d.epsilon = 1.0;
  d.f[0].push_back({{0, 0}, 1.0, 1.0});
  d.f[1].push_back({{0, 0}, 1.0, 0.5});
  const double a = max_free_drift(d, 1.0 / 128, 2.0);
  const double b = max_free_drift(d, 1.0 / 256, 2.0);
  CHECK(a < 1e-3);
  CHECK(std::log2(a / b) >= 1.9);
}

TEST_CASE("coupled energies obey the difference and balance identities") {
  const InitialData d = radial_pair(0.3);
  FieldState s = make_state(SolverMode::radial, d.support_radius() / 128, d, Equation::coupled, 10.0);
  const auto trace = run_simulation(s, 10.0);
  const auto& r0 = trace.records.front();
  const double scale = r0.e1sq + r0.e2sq;
  double prev_sum = scale;
  for (const auto& r : trace.records) {
    CHECK(std::abs((r.e1sq - r.e2sq) - (r0.e1sq - r0.e2sq)) / scale < 5e-3);
    CHECK(std::abs((r.e1sq + r.e2sq) + 2 * r.cum_dissipation - scale) / scale < 5e-3);
    CHECK(r.cum_dissipation >= 0.0);
    CHECK(r.e1sq + r.e2sq <= prev_sum * (1 + 1e-3));
    prev_sum = r.e1sq + r.e2sq;
  }
}

TEST_CASE("undersized domains and off-centre radial data are rejected") {
  const InitialData d = radial_pair(0.3);
  const Grid small = make_grid(SolverMode::radial, 1.0 / 32, 3.0);
  CHECK_THROWS_AS(init_state(small, 0.01, d, Equation::coupled, 5.0), ValidationError);
  InitialData off = d;
  off.f[0][0].center = {0.5, 0.0};
  const Grid big = make_grid(SolverMode::radial, 1.0 / 32, 10.0);
  CHECK_THROWS_AS(init_state(big, 0.01, off, Equation::coupled, 5.0), ValidationError);
}

TEST_CASE("large amplitudes raise an instability error") {
  InitialData d;
  d.f[0].push_back({{0, 0}, 1.0, 1.0});
  d.g[1].push_back({{0, 0}, 1.0, 1.0});
  d.epsilon = 50.0;
  FieldState s = make_state(SolverMode::radial, 1.0 / 64, d, Equation::coupled, 10.0);
  bool thrown = false;
  try {
    run_simulation(s, 10.0);
  } catch (const InstabilityError& e) {
    thrown = true;
    CHECK(e.last_stable_time() <= e.time());
    CHECK(e.time() <= 10.0);
  }
  CHECK(thrown);
}

TEST_CASE("discrete precursors outside the light cone are second order and die off") {
  InitialData d;
  d.epsilon = 1.0;
  d.f[0].push_back({{0, 0}, 1.0, 1.0});
  d.g[1].push_back({{0, 0}, 1.0, 1.0});
  const double T = 4.0;
  std::vector<double> near;
  for (double h : {1.0 / 32, 1.0 / 64}) {
    FieldState s = make_state(SolverMode::radial, h, d, Equation::coupled, T, Exec::parallel, 3.0);
    run_simulation(s, T);
    double peak = 0.0, out2 = 0.0, out32 = 0.0;
    for (int i = 0; i < s.grid().n; ++i) {
      const double r = s.grid().coord(i);
      for (int j = 0; j < 2; ++j) {
        const double v = std::abs(s.u(j)[i]);
        peak = std::max(peak, v);
        if (r > 1 + T + 2 * h) out2 = std::max(out2, v);
        if (r > 1 + T + 32 * h) out32 = std::max(out32, v);
      }
    }
    near.push_back(out2 / peak);
    CHECK(out32 < 1e-14 * peak);
  }
  CHECK(near[0] < 5e-3);
  CHECK(std::log2(near[0] / near[1]) >= 1.6);
}

TEST_CASE("free radial solution converges to the Poisson oracle at second order") {
  InitialData d;
  d.epsilon = 1.0;
  d.f[0].push_back({{0, 0}, 2.0, 1.0});
  d.g[0].push_back({{0, 0}, 2.5, 0.5});
  d.f[1].push_back({{0, 0}, 2.0, -0.7});
  const double T = 2.0;
  std::vector<double> err;
  for (double h : {1.0 / 32, 1.0 / 64, 1.0 / 128}) {
    FieldState s = make_state(SolverMode::radial, h, d, Equation::free, T);
    run_simulation(s, T);
    double e = 0.0;
    for (int i = 0; i < s.grid().n; i += std::max(1, s.grid().n / 40)) {
      const double r = s.grid().coord(i);
      const auto o = free_oracle_eval(d, T, {r, 0});
      for (int j = 0; j < 2; ++j) e = std::max(e, std::abs(s.u(j)[i] - o.u[j]));
    }
    err.push_back(e);
  }
  CHECK(err[2] < 1e-3);
  CHECK(std::log2(err[1] / err[2]) >= 1.9);
}

TEST_CASE("radial and Cartesian solvers agree on nonlinear radial data") {
  InitialData d = radial_pair(0.5);
  for (auto& comp : d.f)
    for (auto& b : comp) b.radius = 2.0;
  for (auto& comp : d.g)
    for (auto& b : comp) b.radius = 2.0;
  const double h = 1.0 / 16, T = 1.0;
  FieldState sr = make_state(SolverMode::radial, h, d, Equation::coupled, T);
  FieldState sc = make_state(SolverMode::cartesian2d, h, d, Equation::coupled, T);
  run_simulation(sr, T);
  run_simulation(sc, T);
  const Grid& g = sc.grid();
  double mx = 0.0;
  for (int c = g.half() + 2; c < g.n; ++c) {
    const double x = g.coord(c);
    if (x > d.support_radius() + T) break;
    const auto p = interpolate_fields(sr, {x, 0});
    for (int j = 0; j < 2; ++j) mx = std::max(mx, std::abs(p.u[j] - sc.value(j, c, g.half())));
  }
  CHECK(mx <= 5 * h * h);
}

TEST_CASE("whole runs are bitwise reproducible across execution modes and thread counts") {
  const InitialData d = radial_pair(0.4);
  InitialData off = d;
  off.f[0][0].center = {0.3, -0.2};
  for (auto mode : {SolverMode::radial, SolverMode::cartesian2d}) {
    const InitialData& data = mode == SolverMode::radial ? d : off;
    const double h = 1.0 / 16;
    FieldState ref = make_state(mode, h, data, Equation::coupled, 2.0, Exec::serial);
    const auto tref = run_simulation(ref, 2.0);
    for (int threads : {1, 3, 8}) {
      omp_set_num_threads(threads);
      FieldState par = make_state(mode, h, data, Equation::coupled, 2.0, Exec::parallel);
      const auto tpar = run_simulation(par, 2.0);
      for (int j = 0; j < 2; ++j) CHECK(std::equal(ref.u(j).begin(), ref.u(j).end(), par.u(j).begin()));
      REQUIRE(tref.records.size() == tpar.records.size());
      for (std::size_t i = 0; i < tref.records.size(); ++i) {
        CHECK(tref.records[i].e1sq == tpar.records[i].e1sq);
        CHECK(tref.records[i].cum_dissipation == tpar.records[i].cum_dissipation);
      }
    }
  }
}

TEST_CASE("samplers fire once at the step nearest each requested time") {
  const InitialData d = radial_pair(0.3);
  FieldState s = make_state(SolverMode::radial, 1.0 / 32, d, Equation::coupled, 2.0);
  std::vector<double> seen;
  Sampler sm{{0.0, 0.5, 1.234, 2.0}, [&](const FieldState& st) { seen.push_back(st.time()); }};
  std::vector<Sampler> samplers{sm};
  run_simulation(s, 2.0, samplers);
  REQUIRE(seen.size() == 4);
  for (std::size_t i = 0; i < seen.size(); ++i) CHECK(std::abs(seen[i] - sm.times[i]) <= 0.5 * s.dt() + 1e-12);
}
