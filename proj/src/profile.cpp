#include "wavelab/profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/numeric/odeint.hpp>

#include "wavelab/errors.hpp"

namespace wavelab {
namespace {

std::array<double, 4> cubic_weights(double xi) {
  return {-xi * (xi - 1.0) * (xi - 2.0) / 6.0, (xi + 1.0) * (xi - 1.0) * (xi - 2.0) / 2.0,
          -(xi + 1.0) * xi * (xi - 2.0) / 2.0, (xi + 1.0) * xi * (xi - 1.0) / 6.0};
}

PointFields interpolate_cartesian(const FieldState& s, Vec2 x) {
  const Grid& g = s.grid();
  const double h = g.h;
  const int half = g.half();
  const double fx = x.x / h + half;
  const double fy = x.y / h + half;
  const int i0 = static_cast<int>(std::floor(fx));
  const int j0 = static_cast<int>(std::floor(fy));
  if (i0 - 2 < 0 || j0 - 2 < 0 || i0 + 3 >= g.n || j0 + 3 >= g.n)
    throw std::domain_error("interpolate_fields: point too close to the grid boundary");
  const auto wx = cubic_weights(fx - i0);
  const auto wy = cubic_weights(fy - j0);
  const double inv_2h = 0.5 / h;
  const double inv_h2 = 1.0 / (h * h);
  const double inv_4h2 = 0.25 * inv_h2;
  const double r = norm(x);
  const Vec2 omega{x.x / r, x.y / r};

  PointFields p;
  p.r = r;
  for (int j = 0; j < 2; ++j) {
    const auto u = s.u(j);
    const auto ut = s.ut(j);
    auto at = [&](int col, int row) { return u[s.index(col, row)]; };
    double su = 0.0, sux = 0.0, suy = 0.0, sut = 0.0, so2 = 0.0;
    for (int b = 0; b < 4; ++b) {
      const int row = j0 - 1 + b;
      const double yn = g.coord(row);
      for (int a = 0; a < 4; ++a) {
        const int col = i0 - 1 + a;
        const double xn = g.coord(col);
        const double w = wx[a] * wy[b];
        const double c = at(col, row);
        const double ux = (at(col + 1, row) - at(col - 1, row)) * inv_2h;
        const double uy = (at(col, row + 1) - at(col, row - 1)) * inv_2h;
        const double uxx = (at(col + 1, row) - 2.0 * c + at(col - 1, row)) * inv_h2;
        const double uyy = (at(col, row + 1) - 2.0 * c + at(col, row - 1)) * inv_h2;
        const double uxy = (at(col + 1, row + 1) - at(col + 1, row - 1) - at(col - 1, row + 1) +
                            at(col - 1, row - 1)) *
                           inv_4h2;
        const double o2 = yn * yn * uxx - 2.0 * xn * yn * uxy + xn * xn * uyy - xn * ux - yn * uy;
        su += w * c;
        sux += w * ux;
        suy += w * uy;
        sut += w * ut[s.index(col, row)];
        so2 += w * o2;
      }
    }
    p.u[j] = su;
    p.ur[j] = omega.x * sux + omega.y * suy;
    p.ut[j] = sut;
    p.omega2u[j] = so2;
  }
  return p;
}

PointFields interpolate_radial(const FieldState& s, double r) {
  const Grid& g = s.grid();
  const double h = g.h;
  const double fr = r / h - 0.5;
  const int i0 = static_cast<int>(std::floor(fr));
  if (i0 + 3 >= g.n) throw std::domain_error("interpolate_fields: point too close to the grid boundary");
  const auto w = cubic_weights(fr - i0);
  const double inv_2h = 0.5 / h;
  PointFields p;
  p.r = r;
  for (int j = 0; j < 2; ++j) {
    const auto u = s.u(j);
    const auto ut = s.ut(j);
    // Even reflection across the axis, zero beyond the last cell.
    auto cell = [&](std::span<const double> v, int k) {
      if (k < 0) k = -k - 1;
      return k >= g.n ? 0.0 : v[k];
    };
    for (int a = 0; a < 4; ++a) {
      const int k = i0 - 1 + a;
      p.u[j] += w[a] * cell(u, k);
      p.ut[j] += w[a] * cell(ut, k);
      p.ur[j] += w[a] * (cell(u, k + 1) - cell(u, k - 1)) * inv_2h;
    }
  }
  return p;
}

}  // namespace

double t0_sigma(double sigma) { return std::max(2.0, -2.0 * sigma); }
double t1_sigma(double sigma, double eps) { return std::max(1.0 / eps, -2.0 * sigma); }

PointFields interpolate_fields(const FieldState& state, Vec2 x) {
  const double r = norm(x);
  if (r < state.grid().h) throw std::domain_error("interpolate_fields: |x| < h");
  return state.grid().mode == SolverMode::radial ? interpolate_radial(state, r) : interpolate_cartesian(state, x);
}

std::array<double, 2> compute_U(const PointFields& p) {
  const double sr = std::sqrt(p.r);
  std::array<double, 2> out{};
  for (int j = 0; j < 2; ++j) out[j] = 0.5 * (sr * p.ur[j] + 0.5 * p.u[j] / sr - sr * p.ut[j]);
  return out;
}

std::array<double, 2> compute_U(const FieldState& state, Vec2 x) { return compute_U(interpolate_fields(state, x)); }

std::array<double, 2> sample_V(const FieldState& state, double sigma, Vec2 omega) {
  const double r = state.time() + sigma;
  if (r < state.grid().h) throw std::domain_error("sample_V: foot point (t + sigma) omega is within h of the origin");
  return compute_U(state, r * omega);
}

std::array<double, 2> compute_H(const PointFields& p, double t) {
  if (t < 2.0) throw std::domain_error("compute_H: requires t >= 2");
  const auto U = compute_U(p);
  const double sr = std::sqrt(p.r);
  const double angular = 1.0 / (8.0 * p.r * sr);
  const double h1 = 0.5 * (sr * (p.ut[1] * p.ut[1]) * p.ut[0] + (U[1] * U[1]) * U[0] / t) -
                    angular * (4.0 * p.omega2u[0] + p.u[0]);
  const double h2 = 0.5 * (sr * (p.ut[0] * p.ut[0]) * p.ut[1] + (U[0] * U[0]) * U[1] / t) -
                    angular * (4.0 * p.omega2u[1] + p.u[1]);
  return {h1, h2};
}

std::array<double, 2> compute_H(const FieldState& state, Vec2 x) {
  return compute_H(interpolate_fields(state, x), state.time());
}

double profile_invariant(double v1, double v2) { return v1 * v1 - v2 * v2; }

ProfilePath truncated_profile_solve(double v10, double v20, double t_start, double t_end, int samples,
                                    double rtol) {
  namespace ode = boost::numeric::odeint;
  if (!(t_start >= 2.0)) throw std::invalid_argument("truncated_profile_solve: t_start must be >= 2");
  if (!(t_end > t_start)) throw std::invalid_argument("truncated_profile_solve: t_end must exceed t_start");
  samples = std::max(samples, 2);

  using State = std::array<double, 2>;
  // In s = log t the system is autonomous: dV1/ds = -V1 V2^2 / 2.
  auto rhs = [](const State& v, State& dv, double) {
    dv[0] = -0.5 * v[0] * (v[1] * v[1]);
    dv[1] = -0.5 * (v[0] * v[0]) * v[1];
  };
  const double s0 = std::log(t_start);
  const double s1 = std::log(t_end);
  std::vector<double> s_obs(samples);
  for (int k = 0; k < samples; ++k) s_obs[k] = s0 + (s1 - s0) * k / (samples - 1);
  s_obs.back() = s1;

  ProfilePath path;
  State v{v10, v20};
  auto stepper = ode::make_controlled(1e-16, rtol, ode::runge_kutta_dopri5<State>());
  try {
    ode::integrate_times(stepper, rhs, v, s_obs.begin(), s_obs.end(), (s1 - s0) / (8.0 * samples),
                         [&](const State& x, double s) {
                           path.t.push_back(std::exp(s));
                           path.v1.push_back(x[0]);
                           path.v2.push_back(x[1]);
                         });
  } catch (const std::exception& e) {
    throw NumericError(std::string("truncated_profile_solve: ") + e.what());
  }
  path.t.front() = t_start;
  path.t.back() = t_end;
  for (std::size_t k = 0; k < path.t.size(); ++k)
    if (!std::isfinite(path.v1[k]) || !std::isfinite(path.v2[k]))
      throw NumericError("truncated_profile_solve: non-finite solution");
  return path;
}

std::array<double, 2> truncated_profile_closed_form(double v10, double v20, double t_start, double t) {
  const double m = profile_invariant(v10, v20);
  const double p0 = v20 * v20;
  const double ds = std::log(t / t_start);
  double p = 0.0;
  if (p0 == 0.0) {
    p = 0.0;
  } else if (m == 0.0) {
    p = p0 / (1.0 + p0 * ds);
  } else {
    p = m * p0 * std::exp(-m * ds) / (m - p0 * std::expm1(-m * ds));
  }
  const double q = std::max(0.0, p + m);
  return {std::copysign(std::sqrt(q), v10), std::copysign(std::sqrt(p), v20)};
}

Sampler make_profile_sampler(ProfileTrace& trace, const FieldState& state, double t_begin, double T, int stride) {
  const double dt = state.dt();
  const double h = state.grid().h;
  trace.dt = dt;
  trace.t0 = t0_sigma(trace.sigma);
  trace.t1 = t1_sigma(trace.sigma, trace.epsilon);
  Sampler sampler;
  const long step_stride = std::max(1, stride);
  const long first = static_cast<long>(std::ceil(std::max(0.0, t_begin) / (step_stride * dt) - 1e-9));
  const long last = std::lround(T / dt);
  for (long k = first * step_stride; k <= last; k += step_stride) sampler.times.push_back(k * dt);
  const Vec2 omega = unit_vector(trace.theta);
  sampler.callback = [&trace, omega, h](const FieldState& s) {
    const double t = s.time();
    const double r = t + trace.sigma;
    if (r < h) return;
    const PointFields p = interpolate_fields(s, r * omega);
    const auto V = compute_U(p);
    ProfileSample sample{t, V[0], V[1]};
    if (t >= 2.0) {
      const auto K = compute_H(p, t);
      sample.k1 = K[0];
      sample.k2 = K[1];
      sample.rho = V[0] * K[0] - V[1] * K[1];
      sample.has_k = true;
    }
    trace.samples.push_back(sample);
  };
  return sampler;
}

MCorrection m_correction(const ProfileTrace& trace, double T_cut) {
  const auto& s = trace.samples;
  const double tol = 0.5 * trace.dt + 1e-12;
  // A sample a rounding error below t = 2 carries no K, so the start is the first one that does.
  auto start = std::find_if(s.begin(), s.end(),
                            [&](const ProfileSample& p) { return p.has_k && p.t >= trace.t0 - tol; });
  if (start == s.end() || start->t > trace.t0 + 4.0 * trace.dt || !start->has_k)
    throw std::domain_error("m_correction: trace does not start at t0");
  MCorrection out;
  out.t_start = start->t;
  double integral = 0.0;
  auto it = start;
  for (auto next = start + 1; next != s.end() && next->t <= T_cut + tol; ++next) {
    if (next->t - it->t > 4.0 * trace.dt + tol) throw std::domain_error("m_correction: trace spacing exceeds 4 dt");
    integral += 0.5 * (next->t - it->t) * (it->rho + next->rho);
    it = next;
  }
  if (it->t < T_cut - tol) throw std::domain_error("m_correction: trace ends before T_cut");
  out.value = profile_invariant(start->v1, start->v2) + 2.0 * integral;
  out.tail_bound = 2.0 * std::abs(it->rho) * it->t;
  return out;
}

double m_leading(const RadiationTable& table, double eps, double sigma, Vec2 omega) {
  const double d1 = table.interpolate_dF(0, sigma, omega);
  const double d2 = table.interpolate_dF(1, sigma, omega);
  return eps * eps * (d1 * d1 - d2 * d2);
}

}  // namespace wavelab
