#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "wavelab/config.hpp"
#include "wavelab/initial_data.hpp"
#include "wavelab/kernels.hpp"

namespace wavelab {

using kernels::Exec;

/// Free wave equation or the coupled cubic system.
enum class Equation { free, coupled };

/// Cartesian: n x n nodes at (i - n/2) h, boundary nodes fixed at zero.
/// Radial: n cells centred at r_i = (i + 1/2) h.
struct Grid {
  SolverMode mode = SolverMode::cartesian2d;
  double h = 0.0;
  int n = 0;

  std::size_t size() const {
    return mode == SolverMode::radial ? static_cast<std::size_t>(n) : static_cast<std::size_t>(n) * n;
  }
  int half() const { return n / 2; }
  /// Distance from the origin to the zero boundary.
  double extent() const { return mode == SolverMode::radial ? n * h : half() * h; }
  double coord(int i) const { return mode == SolverMode::radial ? (i + 0.5) * h : (i - half()) * h; }
};

/// Smallest grid whose extent is at least `required_extent` plus a stencil margin.
Grid make_grid(SolverMode mode, double h, double required_extent);

/// Two components at the current and previous time level plus the time derivative at the
/// current level.
class FieldState {
 public:
  FieldState(Grid grid, double dt, Equation equation, Exec exec = Exec::parallel);

  const Grid& grid() const { return grid_; }
  double dt() const { return dt_; }
  double time() const { return static_cast<double>(steps_) * dt_; }
  long steps() const { return steps_; }
  Equation equation() const { return equation_; }
  Exec exec() const { return exec_; }
  void set_exec(Exec e) { exec_ = e; }

  std::span<const double> u(int j) const { return cur_[j]; }
  std::span<const double> u_prev(int j) const { return prev_[j]; }
  std::span<const double> ut(int j) const { return ut_[j]; }

  std::span<double> u_mut(int j) { return cur_[j]; }
  std::span<double> u_prev_mut(int j) { return prev_[j]; }
  std::span<double> ut_mut(int j) { return ut_[j]; }
  void set_steps(long steps) { steps_ = steps; }

  /// Radial flux coefficients (r_i +- h/2) / (r_i h^2); empty in Cartesian mode.
  std::span<const double> radial_outer() const { return outer_; }
  std::span<const double> radial_inner() const { return inner_; }

  /// Cartesian nodes are indexed [row * n + col] with row along y.
  double value(int j, int col, int row = 0) const { return cur_[j][index(col, row)]; }
  std::size_t index(int col, int row = 0) const {
    return grid_.mode == SolverMode::radial ? static_cast<std::size_t>(col)
                                            : static_cast<std::size_t>(row) * grid_.n + col;
  }

 private:
  friend void step(FieldState& state);

  Grid grid_;
  double dt_;
  long steps_ = 0;
  Equation equation_;
  Exec exec_;
  std::array<std::vector<double>, 2> cur_, prev_, next_, ut_;
  std::vector<double> outer_, inner_;  // radial face coefficients
};

/// dt = T / ceil(T / (cfl h)), so that T is reached exactly with CFL number <= cfl.
double time_step_for(double h, double cfl, double T);

/// Level 0 from eps f_j, previous level from the second-order Taylor start
/// u(-dt) = u - dt eps g + dt^2/2 (Lap_h u + N). Throws ValidationError when the grid
/// extent is below R0 + T + 2h, or radial mode is used with off-centre data.
FieldState init_state(const Grid& grid, double dt, const InitialData& data, Equation equation, double T,
                      Exec exec = Exec::parallel);
FieldState init_state(const ScenarioConfig& config, const InitialData& data, Equation equation,
                      Exec exec = Exec::parallel);

/// Advances by one leapfrog step. Non-finite values are not checked here; run_simulation
/// does that at every energy sample.
void step(FieldState& state);

struct Energies {
  double e1sq = 0.0;  ///< ||u_1||_E^2
  double e2sq = 0.0;
  double dissipation = 0.0;  ///< int (ut_1)^2 (ut_2)^2 dx
};

Energies energies_and_dissipation(const FieldState& state);

struct EnergyRecord {
  double t = 0.0;
  double e1sq = 0.0;
  double e2sq = 0.0;
  double dissipation = 0.0;
  double cum_dissipation = 0.0;  ///< int_0^t D, trapezoidal over every step
};

struct EnergyTrace {
  std::vector<EnergyRecord> records;
};

/// Callback invoked on the step nearest to each requested time.
struct Sampler {
  std::vector<double> times;
  std::function<void(const FieldState&)> callback;
};

inline constexpr double kEnergyInterval = 0.25;

/// Advances `state` to time T. Samplers see read-only states; energies are recorded at
/// t = 0, every `energy_interval` and at T. Throws InstabilityError on non-finite fields.
EnergyTrace run_simulation(FieldState& state, double T, std::span<Sampler> samplers = {},
                           double energy_interval = kEnergyInterval);

}  // namespace wavelab
