#include "wavelab/free_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "wavelab/quadrature.hpp"

namespace wavelab {
namespace {

struct Partial {
  double u = 0.0;
  double ut = 0.0;
  double ux = 0.0;
  double uy = 0.0;
};

// Contribution of one bump used as position data (velocity = false) or velocity data.
Partial bump_contribution(const Bump& b, bool velocity, double t, Vec2 x, const OracleResolution& res,
                          const GaussRule& rule) {
  Partial out;
  const Vec2 to_c = b.center - x;
  const double d = norm(to_c);
  if (d - b.radius >= t) return out;

  const double ac = std::atan2(to_c.y, to_c.x);
  double a_lo = ac - std::numbers::pi, a_hi = ac + std::numbers::pi;
  if (d > b.radius) {
    const double half = std::asin(b.radius / d);
    a_lo = ac - half;
    a_hi = ac + half;
  }
  // rho_hi = min(t, chord end) has a kink where the light circle crosses the rim; the
  // angular rule is split there so each piece stays smooth.
  std::vector<double> breaks{a_lo, a_hi};
  if (d > 0.0) {
    const double c = (t * t + d * d - b.radius * b.radius) / (2.0 * t * d);
    if (std::abs(c) < 1.0) {
      const double off = std::acos(c);
      for (double a : {ac - off, ac + off})
        if (a > a_lo && a < a_hi) breaks.push_back(a);
    }
  }
  std::sort(breaks.begin(), breaks.end());
  const double r2 = b.radius * b.radius;
  for (std::size_t piece = 0; piece + 1 < breaks.size(); ++piece) {
    const double aw = (breaks[piece + 1] - breaks[piece]) / res.alpha_panels;
    for (int pa = 0; pa < res.alpha_panels; ++pa) {
      const double amid = breaks[piece] + (pa + 0.5) * aw;
      for (int qa = 0; qa < rule.size(); ++qa) {
        const double alpha = amid + 0.5 * aw * rule.nodes[qa];
        const double wa = 0.5 * aw * rule.weights[qa];
        const Vec2 e{std::cos(alpha), std::sin(alpha)};
        const double p = dot(e, to_c);
        const double disc2 = p * p - (d * d - r2);
        if (disc2 <= 0.0) continue;
        const double disc = std::sqrt(disc2);
        const double rho_lo = std::max(0.0, p - disc);
        const double rho_hi = std::min(t, p + disc);
        if (rho_hi <= rho_lo) continue;
        const double b_lo = std::asin(std::min(1.0, rho_lo / t));
        const double b_hi = std::asin(std::min(1.0, rho_hi / t));
        const double bw = (b_hi - b_lo) / res.beta_panels;
        Partial ray;
        for (int pb = 0; pb < res.beta_panels; ++pb) {
          const double bmid = b_lo + (pb + 0.5) * bw;
          for (int qb = 0; qb < rule.size(); ++qb) {
            const double beta = bmid + 0.5 * bw * rule.nodes[qb];
            const double sb = std::sin(beta);
            const double rho = t * sb;
            const Jet J = bump_jet(b, x + rho * e);
            const double de = e.x * J.dx + e.y * J.dy;
            const double w = 0.5 * bw * rule.weights[qb] * sb;
            if (velocity) {
              ray.u += w * t * J.value;
              ray.ux += w * t * J.dx;
              ray.uy += w * t * J.dy;
              ray.ut += w * (J.value + rho * de);
            } else {
              const double hee = e.x * e.x * J.dxx + 2.0 * e.x * e.y * J.dxy + e.y * e.y * J.dyy;
              ray.u += w * (J.value + rho * de);
              ray.ux += w * (J.dx + rho * (e.x * J.dxx + e.y * J.dxy));
              ray.uy += w * (J.dy + rho * (e.x * J.dxy + e.y * J.dyy));
              ray.ut += w * (2.0 * sb * de + rho * sb * hee);
            }
          }
        }
        out.u += wa * ray.u;
        out.ut += wa * ray.ut;
        out.ux += wa * ray.ux;
        out.uy += wa * ray.uy;
      }
    }
  }
  return out;
}

}  // namespace

FreeSample free_oracle_eval(const InitialData& data, double t, Vec2 x, const OracleResolution& res) {
  FreeSample out;
  if (t <= 0.0) {
    const InitialPoint p = build_initial_data(data, x);
    for (int j = 0; j < 2; ++j) {
      out.u[j] = p.u[j];
      out.ut[j] = p.ut[j];
      out.grad[j] = p.grad_u[j];
    }
    return out;
  }
  if (norm(x) > data.support_radius() + t) return out;

  const GaussRule& rule = gauss_legendre(res.order);
  const double scale = data.epsilon / (2.0 * std::numbers::pi);
  for (int j = 0; j < 2; ++j) {
    Partial acc;
    for (int kind = 0; kind < 2; ++kind) {
      for (const Bump& b : kind == 0 ? data.f[j] : data.g[j]) {
        const Partial p = bump_contribution(b, kind == 1, t, x, res, rule);
        acc.u += p.u;
        acc.ut += p.ut;
        acc.ux += p.ux;
        acc.uy += p.uy;
      }
    }
    out.u[j] = scale * acc.u;
    out.ut[j] = scale * acc.ut;
    out.grad[j] = {scale * acc.ux, scale * acc.uy};
  }
  return out;
}

}  // namespace wavelab
