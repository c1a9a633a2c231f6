#pragma once

#include <array>
#include <vector>

#include "wavelab/radiation.hpp"
#include "wavelab/solver.hpp"

namespace wavelab {

/// t_{0,sigma} = max{2, -2 sigma}: start of the correction integral.
double t0_sigma(double sigma);
/// t_{1,sigma} = max{1/eps, -2 sigma}: truncation time used for the leading-order estimate.
double t1_sigma(double sigma, double eps);

/// Grid quantities interpolated to a point: u, radial derivative omega.grad u, time
/// derivative and Omega^2 u with Omega = x1 d2 - x2 d1 (identically 0 in radial mode).
struct PointFields {
  double r = 0.0;
  std::array<double, 2> u{};
  std::array<double, 2> ur{};
  std::array<double, 2> ut{};
  std::array<double, 2> omega2u{};
};

/// Bicubic (Cartesian) or cubic (radial) Lagrange interpolation of node values. Gradients and
/// Omega^2 use centred stencils at the nodes. Throws std::domain_error for |x| < h or when
/// the stencil leaves the grid.
PointFields interpolate_fields(const FieldState& state, Vec2 x);

/// U_j = (1/2)(d_r - d_t)(r^{1/2} u_j) at x.
std::array<double, 2> compute_U(const FieldState& state, Vec2 x);
std::array<double, 2> compute_U(const PointFields& p);

/// V_j(t; sigma, omega) = U_j(t, (t + sigma) omega). Requires t + sigma >= h.
std::array<double, 2> sample_V(const FieldState& state, double sigma, Vec2 omega);

/// Remainders H_1, H_2 at x (time t >= 2):
///   H_1 = (1/2)(r^{1/2} (ut_2)^2 ut_1 + U_2^2 U_1 / t) - (4 Omega^2 + 1) u_1 / (8 r^{3/2})
/// and symmetrically for H_2.
std::array<double, 2> compute_H(const FieldState& state, Vec2 x);
std::array<double, 2> compute_H(const PointFields& p, double t);

/// m = V1^2 - V2^2, the invariant of the truncated profile system.
double profile_invariant(double v1, double v2);

struct ProfilePath {
  std::vector<double> t;
  std::vector<double> v1;
  std::vector<double> v2;
};

/// Integrates dV1/dt = -V1 V2^2 / (2t), dV2/dt = -V1^2 V2 / (2t) with an adaptive
/// Dormand-Prince 5(4) scheme in log-time, relative tolerance `rtol`. The path is reported
/// at `samples` log-spaced times including both ends. Requires t_start >= 2 and
/// t_end > t_start; throws NumericError if the integrator fails.
ProfilePath truncated_profile_solve(double v10, double v20, double t_start, double t_end, int samples = 65,
                                    double rtol = 1e-10);

/// Closed-form solution of the same system: with m = V1^2 - V2^2 and P = V2^2,
/// P / (P + m) = [P0 / (P0 + m)] (t / t_start)^(-m), and P = P0 / (1 + P0 log(t / t_start))
/// for m = 0. Signs of V1 and V2 are preserved.
std::array<double, 2> truncated_profile_closed_form(double v10, double v20, double t_start, double t);

struct ProfileSample {
  double t = 0.0;
  double v1 = 0.0;
  double v2 = 0.0;
  double k1 = 0.0;
  double k2 = 0.0;
  double rho = 0.0;
  bool has_k = false;
};

/// V, K and rho = V1 K1 - V2 K2 along the ray x = (t + sigma) omega.
struct ProfileTrace {
  double sigma = 0.0;
  double theta = 0.0;
  double epsilon = 0.0;
  double dt = 0.0;
  double t0 = 0.0;
  double t1 = 0.0;
  std::vector<ProfileSample> samples;
};

/// Builds a Sampler that appends to `trace` every `stride` steps on [t_begin, T]; V is
/// recorded whenever t + sigma >= h, K and rho once t >= 2.
Sampler make_profile_sampler(ProfileTrace& trace, const FieldState& state, double t_begin, double T,
                             int stride = 1);

struct MCorrection {
  double value = 0.0;
  /// Heuristic magnitude of the omitted tail int_{T_cut}^inf rho, 2 |rho(T_cut)| T_cut,
  /// assuming |rho| decays at least like t^{-3/2}. Not added to `value`.
  double tail_bound = 0.0;
  double t_start = 0.0;
};

/// V1(t0)^2 - V2(t0)^2 + 2 int_{t0}^{T_cut} rho dt with the trapezoidal rule. Throws
/// std::domain_error when the trace does not cover [t0, T_cut] with spacing <= 4 dt.
MCorrection m_correction(const ProfileTrace& trace, double T_cut);

/// eps^2 (dF_1^2 - dF_2^2) at (sigma, omega) from a per-unit-amplitude table.
double m_leading(const RadiationTable& table, double eps, double sigma, Vec2 omega);

struct MEstimate {
  double sigma = 0.0;
  double theta = 0.0;
  double epsilon = 0.0;
  double m_direct = 0.0;
  double m_corrected = 0.0;
  double m_leading = 0.0;
  double residual = 0.0;
};

}  // namespace wavelab
