#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "wavelab/config.hpp"
#include "wavelab/initial_data.hpp"

namespace wavelab {

/// Gauss-Legendre nodes per bump radius of chord length in line integrals.
inline constexpr int kLineNodesPerRadius = 32;
/// Gauss-Legendre nodes per unit length of the substituted variable tau (s = sigma + tau^2).
inline constexpr int kAbelNodesPerUnit = 64;

/// Line integral R[(w.grad)^k phi](s, w) over {y . w = s} for a bump sum, k in {0, 1, 2}.
/// Each bump's contribution is integrated over its exact chord; 0 when the line misses
/// every support disk.
double radon_line_integral(std::span<const Bump> phi, double s, Vec2 omega, int k);

/// The k = 0, 1, 2 line integrals of a single bump in one pass.
std::array<double, 3> radon_bump(const Bump& bump, double s, Vec2 omega);

/// (1/(2 sqrt(2) pi)) * int_sigma^inf line(s) (s - sigma)^(-1/2) ds for a line function
/// supported in [s_lo, s_hi]. Evaluated after the substitution s = sigma + tau^2, which
/// leaves the smooth integrand 2 line(sigma + tau^2) on tau in [sqrt(s_lo-sigma)+, sqrt(s_hi-sigma)].
double half_integral_R2(const std::function<double(double)>& line_values, double sigma, double s_lo,
                        double s_hi);

/// Same with the support taken as [-support_radius, support_radius]; 0 for sigma >= R0.
double half_integral_R2(const std::function<double(double)>& line_values, double sigma,
                        double support_radius);

/// Radiation field and its sigma-derivative for both components, per unit amplitude
/// (no epsilon factor).
struct RadiationPoint {
  std::array<double, 2> F{};
  std::array<double, 2> dF{};
};

RadiationPoint friedlander_point(const InitialData& data, double sigma, Vec2 omega);

/// F_j and dF_j sampled on a (sigma, theta) grid, sigma-major storage.
struct RadiationTable {
  std::vector<double> sigma;
  std::vector<double> theta;
  std::array<std::vector<double>, 2> F;
  std::array<std::vector<double>, 2> dF;
  double support_radius = 0.0;

  std::size_t index(std::size_t is, std::size_t it) const { return is * theta.size() + it; }
  double F_at(int j, std::size_t is, std::size_t it) const { return F[j][index(is, it)]; }
  double dF_at(int j, std::size_t is, std::size_t it) const { return dF[j][index(is, it)]; }

  /// Bilinear in (sigma, theta), periodic in theta. Exactly 0 for sigma > support_radius;
  /// throws std::out_of_range for sigma outside the grid otherwise.
  double interpolate_dF(int j, double sigma, Vec2 omega) const;
};

/// Cells are computed in parallel; each cell is a pure function of its (sigma, theta).
RadiationTable friedlander_table(const InitialData& data, std::vector<double> sigma_grid,
                                 std::vector<double> theta_grid);

/// sigma in [-50, R0 + 1] with step 0.05.
std::vector<double> default_sigma_grid(double support_radius);
/// 16 equispaced angles, or the single angle 0 in radial mode.
std::vector<double> default_theta_grid(SolverMode mode);

struct SigmaDecayFit {
  double theta = 0.0;
  double slope = 0.0;
  double r_squared = 0.0;
  int points = 0;
};

/// Log-log slope of |dF_j| against <sigma> = sqrt(1 + sigma^2) over sigma in [lo, hi],
/// one fit per angle. The window must lie in sigma < -2 R0. Throws NumericError when an
/// angle has fewer than 8 samples with nonzero |dF_j|.
std::vector<SigmaDecayFit> fit_sigma_decay(const RadiationTable& table, int component, double lo, double hi);

}  // namespace wavelab
