#include "wavelab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "wavelab/errors.hpp"

namespace wavelab {
namespace {

kernels::StepBuffers buffers(std::array<std::vector<double>, 2>& cur, std::array<std::vector<double>, 2>& prev,
                             std::array<std::vector<double>, 2>& next, std::array<std::vector<double>, 2>& ut) {
  kernels::StepBuffers b;
  for (int j = 0; j < 2; ++j) {
    b.cur[j] = cur[j];
    b.prev[j] = prev[j];
    b.next[j] = next[j];
    b.ut[j] = ut[j];
  }
  return b;
}

std::string locate_non_finite(const FieldState& s) {
  for (int j = 0; j < 2; ++j) {
    const auto u = s.u(j);
    for (std::size_t c = 0; c < u.size(); ++c) {
      if (std::isfinite(u[c]) && std::isfinite(s.ut(j)[c])) continue;
      const Grid& g = s.grid();
      if (g.mode == SolverMode::radial)
        return "u" + std::to_string(j + 1) + " at r=" + std::to_string(g.coord(static_cast<int>(c)));
      const int row = static_cast<int>(c / g.n);
      const int col = static_cast<int>(c % g.n);
      return "u" + std::to_string(j + 1) + " at x=(" + std::to_string(g.coord(col)) + ", " +
             std::to_string(g.coord(row)) + ")";
    }
  }
  return "energy sum";
}

}  // namespace

Grid make_grid(SolverMode mode, double h, double required_extent) {
  if (!(h > 0.0)) throw ValidationError("h", "must be positive");
  Grid g;
  g.mode = mode;
  g.h = h;
  const int cells = static_cast<int>(std::ceil(required_extent / h)) + 3;
  g.n = mode == SolverMode::radial ? cells : 2 * cells + 1;
  return g;
}

FieldState::FieldState(Grid grid, double dt, Equation equation, Exec exec)
    : grid_(grid), dt_(dt), equation_(equation), exec_(exec) {
  if (!(dt > 0.0)) throw ValidationError("dt", "must be positive");
  const double max_cfl = grid.mode == SolverMode::radial ? kMaxCflRadial : kMaxCflCartesian;
  if (dt > max_cfl * grid.h * (1.0 + 1e-12))
    throw ValidationError("cfl", "time step exceeds the stability limit");
  for (int j = 0; j < 2; ++j) {
    cur_[j].assign(grid.size(), 0.0);
    prev_[j].assign(grid.size(), 0.0);
    next_[j].assign(grid.size(), 0.0);
    ut_[j].assign(grid.size(), 0.0);
  }
  if (grid.mode == SolverMode::radial) {
    outer_.resize(grid.n);
    inner_.resize(grid.n);
    const double h = grid.h;
    for (int i = 0; i < grid.n; ++i) {
      const double r = grid.coord(i);
      outer_[i] = (r + 0.5 * h) / (r * h * h);
      inner_[i] = (r - 0.5 * h) / (r * h * h);
    }
  }
}

double time_step_for(double h, double cfl, double T) {
  if (!(T > 0.0)) return cfl * h;
  const double steps = std::ceil(T / (cfl * h) - 1e-9);
  return T / std::max(1.0, steps);
}

FieldState init_state(const Grid& grid, double dt, const InitialData& data, Equation equation, double T,
                      Exec exec) {
  const double r0 = data.support_radius();
  if (grid.extent() < r0 + T + 2.0 * grid.h)
    throw ValidationError("extent", "domain extent " + std::to_string(grid.extent()) + " is below R0 + T + 2h = " +
                                        std::to_string(r0 + T + 2.0 * grid.h));
  if (grid.mode == SolverMode::radial && !data.all_centered())
    throw ValidationError("mode", "radial solver mode requires centred data");

  FieldState s(grid, dt, equation, exec);
  const int n = grid.n;
  if (grid.mode == SolverMode::radial) {
    for (int i = 0; i < n; ++i) {
      const InitialPoint p = build_initial_data(data, {grid.coord(i), 0.0});
      for (int j = 0; j < 2; ++j) {
        s.u_mut(j)[i] = p.u[j];
        s.ut_mut(j)[i] = p.ut[j];
      }
    }
  } else {
    // Boundary nodes stay zero.
    for (int row = 1; row + 1 < n; ++row)
      for (int col = 1; col + 1 < n; ++col) {
        const InitialPoint p = build_initial_data(data, {grid.coord(col), grid.coord(row)});
        const std::size_t c = s.index(col, row);
        for (int j = 0; j < 2; ++j) {
          s.u_mut(j)[c] = p.u[j];
          s.ut_mut(j)[c] = p.ut[j];
        }
      }
  }

  // Taylor start: evaluate one explicit step backwards in time with the exact ut.
  // Lap_h u is obtained from the free kernel with prev = cur: next = u + dt^2 Lap_h u.
  std::array<std::vector<double>, 2> cur, prev, lap, scratch;
  for (int j = 0; j < 2; ++j) {
    cur[j].assign(s.u(j).begin(), s.u(j).end());
    prev[j] = cur[j];
    lap[j].assign(grid.size(), 0.0);
    scratch[j].assign(grid.size(), 0.0);
  }
  const auto b = buffers(cur, prev, lap, scratch);
  if (grid.mode == SolverMode::radial)
    kernels::leapfrog_radial_serial(s.radial_outer(), s.radial_inner(), dt, false, b);
  else
    kernels::leapfrog_cartesian_serial(n, grid.h, dt, false, b);

  const bool coupled = equation == Equation::coupled;
  for (std::size_t c = 0; c < grid.size(); ++c) {
    const double v0 = s.ut(0)[c];
    const double v1 = s.ut(1)[c];
    const double nl[2] = {coupled ? -(v1 * v1) * v0 : 0.0, coupled ? -(v0 * v0) * v1 : 0.0};
    for (int j = 0; j < 2; ++j) {
      const double u = cur[j][c];
      const double dt2_lap = lap[j][c] - u;  // dt^2 Lap_h u
      s.u_prev_mut(j)[c] = u - dt * s.ut(j)[c] + 0.5 * (dt2_lap + dt * dt * nl[j]);
    }
  }
  if (grid.mode == SolverMode::cartesian2d) {
    for (int j = 0; j < 2; ++j)
      for (int i = 0; i < n; ++i)
        for (std::size_t c : {s.index(i, 0), s.index(i, n - 1), s.index(0, i), s.index(n - 1, i)})
          s.u_prev_mut(j)[c] = 0.0;
  }
  return s;
}

FieldState init_state(const ScenarioConfig& config, const InitialData& data, Equation equation, Exec exec) {
  const Grid grid = make_grid(config.mode, config.h, data.support_radius() + config.T + 2.0 * config.h);
  return init_state(grid, time_step_for(config.h, config.cfl, config.T), data, equation, config.T, exec);
}

void step(FieldState& s) {
  const bool nonlinear = s.equation_ == Equation::coupled;
  const auto b = buffers(s.cur_, s.prev_, s.next_, s.ut_);
  if (s.grid_.mode == SolverMode::radial) {
    if (s.exec_ == Exec::parallel)
      kernels::leapfrog_radial_parallel(s.outer_, s.inner_, s.dt_, nonlinear, b);
    else
      kernels::leapfrog_radial_serial(s.outer_, s.inner_, s.dt_, nonlinear, b);
  } else {
    if (s.exec_ == Exec::parallel)
      kernels::leapfrog_cartesian_parallel(s.grid_.n, s.grid_.h, s.dt_, nonlinear, b);
    else
      kernels::leapfrog_cartesian_serial(s.grid_.n, s.grid_.h, s.dt_, nonlinear, b);
  }
  for (int j = 0; j < 2; ++j) {
    std::swap(s.prev_[j], s.cur_[j]);
    std::swap(s.cur_[j], s.next_[j]);
  }
  ++s.steps_;
}

Energies energies_and_dissipation(const FieldState& s) {
  const std::array<std::span<const double>, 2> u{s.u(0), s.u(1)};
  const std::array<std::span<const double>, 2> ut{s.ut(0), s.ut(1)};
  const Grid& g = s.grid();
  const kernels::EnergySums sums = g.mode == SolverMode::radial ? kernels::energy_radial(s.exec(), g.h, u, ut)
                                                                : kernels::energy_cartesian(s.exec(), g.n, g.h, u, ut);
  return {0.5 * sums.grad_sq[0], 0.5 * sums.grad_sq[1], sums.dissipation};
}

namespace {

double dissipation_only(const FieldState& s) {
  if (s.equation() == Equation::free) return 0.0;
  const std::array<std::span<const double>, 2> ut{s.ut(0), s.ut(1)};
  const Grid& g = s.grid();
  return g.mode == SolverMode::radial ? kernels::dissipation_radial(s.exec(), g.h, ut)
                                      : kernels::dissipation_cartesian(s.exec(), g.n, g.h, ut);
}

}  // namespace

EnergyTrace run_simulation(FieldState& state, double T, std::span<Sampler> samplers, double energy_interval) {
  const double dt = state.dt();
  const long last = std::lround(T / dt);
  if (std::abs(last * dt - T) > 1e-9 * std::max(1.0, T))
    throw std::invalid_argument("run_simulation: T is not a whole number of time steps");

  // Step indices at which each sampler fires.
  std::vector<std::vector<long>> fire(samplers.size());
  for (std::size_t k = 0; k < samplers.size(); ++k) {
    for (double t : samplers[k].times) {
      if (t > T + 0.5 * dt || t < 0.0) throw std::invalid_argument("run_simulation: sample time outside [0, T]");
      fire[k].push_back(std::lround(t / dt));
    }
    std::sort(fire[k].begin(), fire[k].end());
    fire[k].erase(std::unique(fire[k].begin(), fire[k].end()), fire[k].end());
  }
  std::vector<std::size_t> cursor(samplers.size(), 0);
  auto run_samplers = [&] {
    for (std::size_t k = 0; k < samplers.size(); ++k) {
      while (cursor[k] < fire[k].size() && fire[k][cursor[k]] < state.steps()) ++cursor[k];
      if (cursor[k] < fire[k].size() && fire[k][cursor[k]] == state.steps()) {
        samplers[k].callback(state);
        ++cursor[k];
      }
    }
  };

  EnergyTrace trace;
  double cumulative = 0.0;
  double last_stable = state.time();
  auto record = [&](double d) {
    const Energies e = energies_and_dissipation(state);
    if (!std::isfinite(e.e1sq) || !std::isfinite(e.e2sq) || !std::isfinite(e.dissipation))
      throw InstabilityError(state.time(), last_stable, locate_non_finite(state));
    last_stable = state.time();
    trace.records.push_back({state.time(), e.e1sq, e.e2sq, d, cumulative});
  };

  double d_prev = dissipation_only(state);
  long next_record = energy_interval > 0.0 ? std::lround(energy_interval / dt) : last;
  long records_done = 1;
  record(d_prev);
  run_samplers();
  while (state.steps() < last) {
    step(state);
    const double d = dissipation_only(state);
    if (!std::isfinite(d)) throw InstabilityError(state.time(), last_stable, locate_non_finite(state));
    cumulative += 0.5 * dt * (d_prev + d);
    d_prev = d;
    if (state.steps() == next_record || state.steps() == last) {
      record(d);
      if (state.steps() == next_record) {
        ++records_done;
        next_record = std::lround(records_done * energy_interval / dt);
        if (next_record <= state.steps()) next_record = state.steps() + 1;
      }
    }
    run_samplers();
  }
  return trace;
}

}  // namespace wavelab
