#pragma once

// Stencil kernels for the two-component leapfrog scheme. Every kernel exists as a plain
// serial reference and an OpenMP version; both perform the same floating-point operations
// per cell in the same order, so their outputs are bitwise identical for any thread count.

#include <array>
#include <span>
#include <vector>

namespace wavelab::kernels {

enum class Exec { serial, parallel };

/// Read-only input levels and writable outputs of one leapfrog step.
struct StepBuffers {
  std::array<std::span<const double>, 2> cur;
  std::array<std::span<const double>, 2> prev;
  std::array<std::span<double>, 2> next;
  /// Receives the one-sided second-order time derivative at the new level.
  std::array<std::span<double>, 2> ut;
};

/// Number of fixed-point passes for the time derivative inside the cubic term: one
/// predictor with the lagged difference, then two correctors with the centered one.
inline constexpr int kNonlinearPasses = 3;

/// n x n node grid, boundary nodes held at zero, 5-point Laplacian.
void leapfrog_cartesian_serial(int n, double h, double dt, bool nonlinear, const StepBuffers& b);
void leapfrog_cartesian_parallel(int n, double h, double dt, bool nonlinear, const StepBuffers& b);

/// Cell-centred radial operator u_rr + u_r / r in flux form; `outer` and `inner` are the
/// per-cell face coefficients (r_i +- h/2) / (r_i h^2). Even reflection at the axis and a
/// zero ghost beyond the last cell.
void leapfrog_radial_serial(std::span<const double> outer, std::span<const double> inner, double dt,
                            bool nonlinear, const StepBuffers& b);
void leapfrog_radial_parallel(std::span<const double> outer, std::span<const double> inner, double dt,
                              bool nonlinear, const StepBuffers& b);

/// Unscaled integrals: sum |du_j|^2 and sum (ut_1 ut_2)^2 with the cell measure applied.
struct EnergySums {
  std::array<double, 2> grad_sq{};
  double dissipation = 0.0;
};

/// Per-row partial sums combined by pairwise summation over rows, so the result does not
/// depend on the thread count.
EnergySums energy_cartesian(Exec exec, int n, double h, std::array<std::span<const double>, 2> u,
                            std::array<std::span<const double>, 2> ut);
double dissipation_cartesian(Exec exec, int n, double h, std::array<std::span<const double>, 2> ut);

/// Radial measure 2 pi r_i h. Fixed blocks of kRadialBlock cells are reduced pairwise.
inline constexpr int kRadialBlock = 256;
EnergySums energy_radial(Exec exec, double h, std::array<std::span<const double>, 2> u,
                         std::array<std::span<const double>, 2> ut);
double dissipation_radial(Exec exec, double h, std::array<std::span<const double>, 2> ut);

}  // namespace wavelab::kernels
