#include "wavelab/radiation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wavelab/errors.hpp"
#include "wavelab/fit.hpp"
#include "wavelab/quadrature.hpp"

namespace wavelab {
namespace {

constexpr double kAbelScale = 1.0 / (2.0 * std::numbers::sqrt2 * std::numbers::pi);

int panels_for(double length, double unit) { return std::max(1, static_cast<int>(std::ceil(length / unit - 1e-12))); }

// R2 of s -> R[(w.grad)^k b](s, w) for k = 0, 1, 2 in one tau sweep.
std::array<double, 3> abel_bump(const Bump& b, double sigma, Vec2 omega, const GaussRule& rule) {
  const double mid = dot(b.center, omega);
  const double s_lo = mid - b.radius;
  const double s_hi = mid + b.radius;
  std::array<double, 3> out{};
  if (sigma >= s_hi) return out;
  const double tau_lo = std::sqrt(std::max(0.0, s_lo - sigma));
  const double tau_hi = std::sqrt(s_hi - sigma);
  const int panels = panels_for(tau_hi - tau_lo, 1.0);
  const double width = (tau_hi - tau_lo) / panels;
  for (int p = 0; p < panels; ++p) {
    const double c = tau_lo + (p + 0.5) * width;
    for (int q = 0; q < rule.size(); ++q) {
      const double tau = c + 0.5 * width * rule.nodes[q];
      const auto line = radon_bump(b, sigma + tau * tau, omega);
      const double w = 0.5 * width * rule.weights[q];
      for (int k = 0; k < 3; ++k) out[k] += w * line[k];
    }
  }
  for (double& v : out) v *= 2.0 * kAbelScale;
  return out;
}

}  // namespace

std::array<double, 3> radon_bump(const Bump& b, double s, Vec2 omega) {
  const double offset = s - dot(b.center, omega);
  std::array<double, 3> out{};
  if (std::abs(offset) >= b.radius) return out;
  const Vec2 perp{-omega.y, omega.x};
  const double half = std::sqrt(b.radius * b.radius - offset * offset);
  const double tc = dot(b.center, perp);
  const GaussRule& rule = gauss_legendre(kLineNodesPerRadius);
  const int panels = panels_for(2.0 * half, b.radius);
  const double width = 2.0 * half / panels;
  for (int p = 0; p < panels; ++p) {
    const double c = tc - half + (p + 0.5) * width;
    for (int q = 0; q < rule.size(); ++q) {
      const double t = c + 0.5 * width * rule.nodes[q];
      const Jet jet = bump_jet(b, s * omega + t * perp);
      const double w = 0.5 * width * rule.weights[q];
      out[0] += w * jet.value;
      out[1] += w * jet.directional(omega, 1);
      out[2] += w * jet.directional(omega, 2);
    }
  }
  return out;
}

double radon_line_integral(std::span<const Bump> phi, double s, Vec2 omega, int k) {
  if (k < 0 || k > 2) throw std::invalid_argument("radon_line_integral: derivative order must be 0, 1 or 2");
  double total = 0.0;
  for (const Bump& b : phi) total += radon_bump(b, s, omega)[k];
  return total;
}

double half_integral_R2(const std::function<double(double)>& line_values, double sigma, double s_lo,
                        double s_hi) {
  if (sigma >= s_hi) return 0.0;
  const double tau_lo = std::sqrt(std::max(0.0, s_lo - sigma));
  const double tau_hi = std::sqrt(s_hi - sigma);
  const GaussRule& rule = gauss_legendre(kAbelNodesPerUnit);
  const double integral = integrate_composite([&](double tau) { return line_values(sigma + tau * tau); },
                                              tau_lo, tau_hi, panels_for(tau_hi - tau_lo, 1.0), rule);
  return 2.0 * kAbelScale * integral;
}

double half_integral_R2(const std::function<double(double)>& line_values, double sigma,
                        double support_radius) {
  return half_integral_R2(line_values, sigma, -support_radius, support_radius);
}

RadiationPoint friedlander_point(const InitialData& data, double sigma, Vec2 omega) {
  const GaussRule& rule = gauss_legendre(kAbelNodesPerUnit);
  RadiationPoint out;
  for (int j = 0; j < 2; ++j) {
    // F = -d_sigma R2[f] + R2[g], dF = -d_sigma^2 R2[f] + d_sigma R2[g], with
    // d_sigma^k R2[phi] = R2[R[(w.grad)^k phi]].
    for (const Bump& b : data.f[j]) {
      const auto a = abel_bump(b, sigma, omega, rule);
      out.F[j] -= a[1];
      out.dF[j] -= a[2];
    }
    for (const Bump& b : data.g[j]) {
      const auto a = abel_bump(b, sigma, omega, rule);
      out.F[j] += a[0];
      out.dF[j] += a[1];
    }
  }
  for (int j = 0; j < 2; ++j) {
    if (!std::isfinite(out.F[j]) || !std::isfinite(out.dF[j]))
      throw NumericError("friedlander_point: non-finite radiation field at sigma=" + std::to_string(sigma));
  }
  return out;
}

RadiationTable friedlander_table(const InitialData& data, std::vector<double> sigma_grid,
                                 std::vector<double> theta_grid) {
  if (sigma_grid.empty() || theta_grid.empty())
    throw std::invalid_argument("friedlander_table: empty grid");
  for (std::size_t i = 1; i < sigma_grid.size(); ++i)
    if (!(sigma_grid[i] > sigma_grid[i - 1])) throw std::invalid_argument("friedlander_table: sigma grid not increasing");
  for (std::size_t i = 1; i < theta_grid.size(); ++i)
    if (!(theta_grid[i] > theta_grid[i - 1])) throw std::invalid_argument("friedlander_table: theta grid not increasing");

  RadiationTable table;
  table.sigma = std::move(sigma_grid);
  table.theta = std::move(theta_grid);
  table.support_radius = data.support_radius();
  const std::size_t ns = table.sigma.size();
  const std::size_t nt = table.theta.size();
  for (int j = 0; j < 2; ++j) {
    table.F[j].assign(ns * nt, 0.0);
    table.dF[j].assign(ns * nt, 0.0);
  }
  gauss_legendre(kAbelNodesPerUnit);
  gauss_legendre(kLineNodesPerRadius);

  const long cells = static_cast<long>(ns * nt);
  bool failed = false;
#pragma omp parallel for schedule(dynamic, 16)
  for (long c = 0; c < cells; ++c) {
    const std::size_t is = static_cast<std::size_t>(c) / nt;
    const std::size_t it = static_cast<std::size_t>(c) % nt;
    try {
      const RadiationPoint p = friedlander_point(data, table.sigma[is], unit_vector(table.theta[it]));
      for (int j = 0; j < 2; ++j) {
        table.F[j][c] = p.F[j];
        table.dF[j][c] = p.dF[j];
      }
    } catch (const NumericError&) {
#pragma omp atomic write
      failed = true;
    }
  }
  if (failed) throw NumericError("friedlander_table: non-finite radiation field");
  return table;
}

double RadiationTable::interpolate_dF(int j, double s, Vec2 omega) const {
  if (s > support_radius) return 0.0;
  if (s < sigma.front() || s > sigma.back())
    throw std::out_of_range("interpolate_dF: sigma=" + std::to_string(s) + " outside the table grid");
  std::size_t is = 0;
  if (sigma.size() > 1) {
    is = std::upper_bound(sigma.begin(), sigma.end(), s) - sigma.begin();
    is = std::clamp<std::size_t>(is, 1, sigma.size() - 1) - 1;
  }
  const double ws = sigma.size() == 1 ? 0.0 : (s - sigma[is]) / (sigma[is + 1] - sigma[is]);

  auto column = [&](std::size_t it) {
    const double lo = dF_at(j, is, it);
    return sigma.size() == 1 ? lo : lo + ws * (dF_at(j, is + 1, it) - lo);
  };
  if (theta.size() == 1) return column(0);

  constexpr double two_pi = 2.0 * std::numbers::pi;
  double th = std::atan2(omega.y, omega.x);
  // Bring th into [theta.front(), theta.front() + 2 pi).
  th = theta.front() + std::fmod(std::fmod(th - theta.front(), two_pi) + two_pi, two_pi);
  std::size_t it = std::upper_bound(theta.begin(), theta.end(), th) - theta.begin() - 1;
  const std::size_t next = (it + 1) % theta.size();
  const double upper = next == 0 ? theta.front() + two_pi : theta[next];
  const double wt = (th - theta[it]) / (upper - theta[it]);
  return (1.0 - wt) * column(it) + wt * column(next);
}

std::vector<double> default_sigma_grid(double support_radius) {
  std::vector<double> grid;
  const double hi = support_radius + 1.0;
  for (long i = 0;; ++i) {
    const double s = -50.0 + 0.05 * static_cast<double>(i);
    if (s > hi + 1e-12) break;
    grid.push_back(s);
  }
  return grid;
}

std::vector<double> default_theta_grid(SolverMode mode) {
  if (mode == SolverMode::radial) return {0.0};
  std::vector<double> grid(16);
  for (int i = 0; i < 16; ++i) grid[i] = 2.0 * std::numbers::pi * i / 16.0;
  return grid;
}

std::vector<SigmaDecayFit> fit_sigma_decay(const RadiationTable& table, int component, double lo, double hi) {
  if (!(lo < hi)) throw std::invalid_argument("fit_sigma_decay: empty window");
  if (hi >= -2.0 * table.support_radius)
    throw std::invalid_argument("fit_sigma_decay: window must lie in sigma < -2 R0");
  std::vector<SigmaDecayFit> fits;
  for (std::size_t it = 0; it < table.theta.size(); ++it) {
    std::vector<double> xs, ys;
    for (std::size_t is = 0; is < table.sigma.size(); ++is) {
      const double s = table.sigma[is];
      const double v = std::abs(table.dF_at(component, is, it));
      if (s < lo || s > hi || v == 0.0) continue;
      xs.push_back(std::sqrt(1.0 + s * s));
      ys.push_back(v);
    }
    if (xs.size() < 8)
      throw NumericError("fit_sigma_decay: degenerate fit, fewer than 8 nonzero samples in the window");
    const PowerLawFit fit = fit_power_law(xs, ys);
    fits.push_back({table.theta[it], fit.slope, fit.r_squared, static_cast<int>(xs.size())});
  }
  return fits;
}

}  // namespace wavelab
