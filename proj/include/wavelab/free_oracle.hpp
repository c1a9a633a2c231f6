#pragma once

#include <array>

#include "wavelab/initial_data.hpp"

namespace wavelab {

/// Free solution eps u0_j with data (eps f_j, eps g_j) and its first derivatives.
struct FreeSample {
  std::array<double, 2> u{};
  std::array<double, 2> ut{};
  std::array<Vec2, 2> grad{};
};

/// Quadrature resolution per bump: composite Gauss-Legendre panels in the polar angle
/// around x and in the rim variable beta (rho = t sin beta).
struct OracleResolution {
  int alpha_panels = 8;
  int beta_panels = 4;
  int order = 32;
};

/// Evaluates the free solution through Poisson's formula
///   u(t,x) = (1/2pi) int_{|z|<1} [f + t z.grad f + t g](x + t z) / sqrt(1 - |z|^2) dz
/// and its t- and x-derivatives, integrating each bump over its own support in polar
/// coordinates about x. The substitution |z| = sin(beta) removes the rim singularity.
/// Returns the exact initial values at t = 0 and zeros for |x| > R0 + t.
FreeSample free_oracle_eval(const InitialData& data, double t, Vec2 x, const OracleResolution& res = {});

}  // namespace wavelab
