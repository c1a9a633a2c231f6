#pragma once

#include <array>
#include <cmath>
#include <span>
#include <vector>

namespace wavelab {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline Vec2 unit_vector(double theta) { return {std::cos(theta), std::sin(theta)}; }

/// Smooth bump A * exp(1 - 1/(1 - |x-c|^2/R^2)) supported in the closed disk |x-c| <= R.
struct Bump {
  Vec2 center;
  double radius = 1.0;
  double amplitude = 1.0;
};

/// Partial derivative order d^dx/dx^dx d^dy/dy^dy; total order at most 2.
struct DerivativeOrder {
  int dx = 0;
  int dy = 0;
};

/// Value, gradient and Hessian at a point.
struct Jet {
  double value = 0.0;
  double dx = 0.0;
  double dy = 0.0;
  double dxx = 0.0;
  double dxy = 0.0;
  double dyy = 0.0;

  Jet& operator+=(const Jet& o) {
    value += o.value;
    dx += o.dx;
    dy += o.dy;
    dxx += o.dxx;
    dxy += o.dxy;
    dyy += o.dyy;
    return *this;
  }
  /// (w . grad)^k applied to the function, k in {0, 1, 2}.
  double directional(Vec2 w, int k) const {
    switch (k) {
      case 0: return value;
      case 1: return w.x * dx + w.y * dy;
      default: return w.x * w.x * dxx + 2.0 * w.x * w.y * dxy + w.y * w.y * dyy;
    }
  }
};

/// Throws std::invalid_argument for total order above 2 or negative orders.
double eval_bump(const Bump& bump, Vec2 x, DerivativeOrder order = {});

Jet bump_jet(const Bump& bump, Vec2 x);
Jet bump_sum_jet(std::span<const Bump> bumps, Vec2 x);

/// Position data f_j, velocity data g_j for j = 0, 1 and the amplitude epsilon.
struct InitialData {
  std::array<std::vector<Bump>, 2> f;
  std::array<std::vector<Bump>, 2> g;
  double epsilon = 0.1;

  /// max over all bumps of |center| + radius (0 for empty data).
  double support_radius() const;
  bool all_centered() const;
  /// Same data with the amplitude replaced.
  InitialData with_epsilon(double eps) const;
};

/// Initial values at one point: eps f_j, eps grad f_j, eps g_j.
struct InitialPoint {
  std::array<double, 2> u{};
  std::array<Vec2, 2> grad_u{};
  std::array<double, 2> ut{};
};

InitialPoint build_initial_data(const InitialData& data, Vec2 x);

}  // namespace wavelab
