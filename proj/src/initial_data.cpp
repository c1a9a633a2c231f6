#include "wavelab/initial_data.hpp"

#include <algorithm>
#include <stdexcept>

namespace wavelab {
namespace {

// Profile p(q) = exp(1 - 1/(1-q)) in q = |x-c|^2/R^2 and its first two q-derivatives.
struct Profile {
  double p = 0.0;
  double dp = 0.0;
  double d2p = 0.0;
};

Profile profile(double q) {
  if (q >= 1.0) return {};
  const double s = 1.0 / (1.0 - q);
  const double p = std::exp(1.0 - s);
  // p' = -p s^2, p'' = p (s^4 - 2 s^3)
  return {p, -p * s * s, p * (s * s * s * s - 2.0 * s * s * s)};
}

}  // namespace

Jet bump_jet(const Bump& bump, Vec2 x) {
  const double inv_r2 = 1.0 / (bump.radius * bump.radius);
  const Vec2 d = x - bump.center;
  const double q = dot(d, d) * inv_r2;
  if (q >= 1.0) return {};
  const Profile pr = profile(q);
  const double a = bump.amplitude;
  const double qx = 2.0 * d.x * inv_r2;
  const double qy = 2.0 * d.y * inv_r2;
  Jet j;
  j.value = a * pr.p;
  j.dx = a * pr.dp * qx;
  j.dy = a * pr.dp * qy;
  j.dxx = a * (pr.d2p * qx * qx + pr.dp * 2.0 * inv_r2);
  j.dxy = a * (pr.d2p * qx * qy);
  j.dyy = a * (pr.d2p * qy * qy + pr.dp * 2.0 * inv_r2);
  return j;
}

double eval_bump(const Bump& bump, Vec2 x, DerivativeOrder order) {
  if (order.dx < 0 || order.dy < 0 || order.dx + order.dy > 2)
    throw std::invalid_argument("eval_bump: derivative order must be a multi-index of total order <= 2");
  const Jet j = bump_jet(bump, x);
  switch (order.dx * 3 + order.dy) {
    case 0: return j.value;
    case 1: return j.dy;
    case 2: return j.dyy;
    case 3: return j.dx;
    case 4: return j.dxy;
    default: return j.dxx;
  }
}

Jet bump_sum_jet(std::span<const Bump> bumps, Vec2 x) {
  Jet acc;
  for (const Bump& b : bumps) acc += bump_jet(b, x);
  return acc;
}

double InitialData::support_radius() const {
  double r = 0.0;
  for (int j = 0; j < 2; ++j) {
    for (const Bump& b : f[j]) r = std::max(r, norm(b.center) + b.radius);
    for (const Bump& b : g[j]) r = std::max(r, norm(b.center) + b.radius);
  }
  return r;
}

bool InitialData::all_centered() const {
  for (int j = 0; j < 2; ++j) {
    for (const Bump& b : f[j])
      if (b.center.x != 0.0 || b.center.y != 0.0) return false;
    for (const Bump& b : g[j])
      if (b.center.x != 0.0 || b.center.y != 0.0) return false;
  }
  return true;
}

InitialData InitialData::with_epsilon(double eps) const {
  InitialData copy = *this;
  copy.epsilon = eps;
  return copy;
}

InitialPoint build_initial_data(const InitialData& data, Vec2 x) {
  InitialPoint out;
  for (int j = 0; j < 2; ++j) {
    const Jet fj = bump_sum_jet(data.f[j], x);
    const Jet gj = bump_sum_jet(data.g[j], x);
    out.u[j] = data.epsilon * fj.value;
    out.grad_u[j] = {data.epsilon * fj.dx, data.epsilon * fj.dy};
    out.ut[j] = data.epsilon * gj.value;
  }
  return out;
}

}  // namespace wavelab
