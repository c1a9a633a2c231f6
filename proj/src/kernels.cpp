#include "wavelab/kernels.hpp"

#include <numbers>

#include "wavelab/quadrature.hpp"

namespace wavelab::kernels {
namespace {

struct Coeffs {
  double dt2;
  double inv_dt;
  double inv_2dt;
};

Coeffs coeffs(double dt) { return {dt * dt, 1.0 / dt, 0.5 / dt}; }

// Shared per-cell tail: cubic coupling with predictor/corrector passes, then the new level
// and its one-sided time derivative.
inline void finish_cell(std::size_t c, double base0, double base1, bool nonlinear, const Coeffs& k,
                        const StepBuffers& b) {
  const double u0 = b.cur[0][c], u1 = b.cur[1][c];
  const double p0 = b.prev[0][c], p1 = b.prev[1][c];
  double w0 = base0, w1 = base1;
  if (nonlinear) {
    double v0 = (u0 - p0) * k.inv_dt;
    double v1 = (u1 - p1) * k.inv_dt;
    for (int pass = 0; pass < kNonlinearPasses; ++pass) {
      const double n0 = -(v1 * v1) * v0;
      const double n1 = -(v0 * v0) * v1;
      w0 = base0 + k.dt2 * n0;
      w1 = base1 + k.dt2 * n1;
      v0 = (w0 - p0) * k.inv_2dt;
      v1 = (w1 - p1) * k.inv_2dt;
    }
  }
  b.next[0][c] = w0;
  b.next[1][c] = w1;
  b.ut[0][c] = (3.0 * w0 - 4.0 * u0 + p0) * k.inv_2dt;
  b.ut[1][c] = (3.0 * w1 - 4.0 * u1 + p1) * k.inv_2dt;
}

inline double cartesian_base(std::span<const double> u, std::span<const double> p, std::size_t c,
                             std::size_t n, double inv_h2, double dt2) {
  const double lap = ((u[c - 1] + u[c + 1]) + (u[c - n] + u[c + n]) - 4.0 * u[c]) * inv_h2;
  return (2.0 * u[c] - p[c]) + dt2 * lap;
}

void zero_cartesian_boundary(int n, const StepBuffers& b) {
  const std::size_t nn = static_cast<std::size_t>(n);
  for (int j = 0; j < 2; ++j) {
    for (std::size_t i = 0; i < nn; ++i) {
      for (std::size_t c : {i, (nn - 1) * nn + i, i * nn, i * nn + nn - 1}) {
        b.next[j][c] = 0.0;
        b.ut[j][c] = 0.0;
      }
    }
  }
}

void cartesian_row(std::size_t row, std::size_t n, double inv_h2, bool nonlinear, const Coeffs& k,
                   const StepBuffers& b) {
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const std::size_t c = row * n + i;
    const double base0 = cartesian_base(b.cur[0], b.prev[0], c, n, inv_h2, k.dt2);
    const double base1 = cartesian_base(b.cur[1], b.prev[1], c, n, inv_h2, k.dt2);
    finish_cell(c, base0, base1, nonlinear, k, b);
  }
}

inline double radial_base(std::span<const double> u, std::span<const double> p, std::span<const double> outer,
                          std::span<const double> inner, std::size_t i, double dt2) {
  const std::size_t n = u.size();
  const double left = i == 0 ? u[0] : u[i - 1];
  const double right = i + 1 == n ? 0.0 : u[i + 1];
  const double lap = outer[i] * (right - u[i]) - inner[i] * (u[i] - left);
  return (2.0 * u[i] - p[i]) + dt2 * lap;
}

double cartesian_energy_row(std::size_t row, std::size_t n, double inv_2h, std::span<const double> u,
                            std::span<const double> ut) {
  double acc = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const std::size_t c = row * n + i;
    const double ux = (u[c + 1] - u[c - 1]) * inv_2h;
    const double uy = (u[c + n] - u[c - n]) * inv_2h;
    acc += ut[c] * ut[c] + ux * ux + uy * uy;
  }
  return acc;
}

double cartesian_dissipation_row(std::size_t row, std::size_t n, std::span<const double> a,
                                 std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const std::size_t c = row * n + i;
    const double q = a[c] * b[c];
    acc += q * q;
  }
  return acc;
}

double radial_energy_block(std::size_t block, double h, std::span<const double> u, std::span<const double> ut) {
  const std::size_t n = u.size();
  const std::size_t lo = block * kRadialBlock;
  const std::size_t hi = std::min(n, lo + kRadialBlock);
  const double inv_2h = 0.5 / h;
  double acc = 0.0;
  for (std::size_t i = lo; i < hi; ++i) {
    const double left = i == 0 ? u[0] : u[i - 1];
    const double right = i + 1 == n ? 0.0 : u[i + 1];
    const double ur = (right - left) * inv_2h;
    const double r = (static_cast<double>(i) + 0.5) * h;
    acc += r * (ut[i] * ut[i] + ur * ur);
  }
  return acc;
}

double radial_dissipation_block(std::size_t block, double h, std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  const std::size_t lo = block * kRadialBlock;
  const std::size_t hi = std::min(n, lo + kRadialBlock);
  double acc = 0.0;
  for (std::size_t i = lo; i < hi; ++i) {
    const double q = a[i] * b[i];
    const double r = (static_cast<double>(i) + 0.5) * h;
    acc += r * (q * q);
  }
  return acc;
}

template <class RowFn>
double reduce_rows(Exec exec, std::size_t first, std::size_t last, RowFn&& row_fn) {
  std::vector<double> partial(last - first, 0.0);
  const long count = static_cast<long>(last - first);
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (long r = 0; r < count; ++r) partial[r] = row_fn(first + static_cast<std::size_t>(r));
  } else {
    for (long r = 0; r < count; ++r) partial[r] = row_fn(first + static_cast<std::size_t>(r));
  }
  return pairwise_sum(partial);
}

}  // namespace

// Reference: whole-array passes in the order the scheme is usually written down
// (Laplacian, explicit base, predictor, correctors, derivative).
void leapfrog_cartesian_serial(int n, double h, double dt, bool nonlinear, const StepBuffers& b) {
  const std::size_t nn = static_cast<std::size_t>(n);
  const Coeffs k = coeffs(dt);
  const double inv_h2 = 1.0 / (h * h);
  std::array<std::vector<double>, 2> base;
  for (int j = 0; j < 2; ++j) {
    base[j].assign(nn * nn, 0.0);
    for (std::size_t row = 1; row + 1 < nn; ++row)
      for (std::size_t i = 1; i + 1 < nn; ++i) {
        const std::size_t c = row * nn + i;
        base[j][c] = cartesian_base(b.cur[j], b.prev[j], c, nn, inv_h2, k.dt2);
      }
  }
  for (std::size_t row = 1; row + 1 < nn; ++row)
    for (std::size_t i = 1; i + 1 < nn; ++i) {
      const std::size_t c = row * nn + i;
      finish_cell(c, base[0][c], base[1][c], nonlinear, k, b);
    }
  zero_cartesian_boundary(n, b);
}

void leapfrog_cartesian_parallel(int n, double h, double dt, bool nonlinear, const StepBuffers& b) {
  const std::size_t nn = static_cast<std::size_t>(n);
  const Coeffs k = coeffs(dt);
  const double inv_h2 = 1.0 / (h * h);
  const long rows = n - 2;
#pragma omp parallel for schedule(static)
  for (long r = 0; r < rows; ++r) cartesian_row(static_cast<std::size_t>(r) + 1, nn, inv_h2, nonlinear, k, b);
  zero_cartesian_boundary(n, b);
}

void leapfrog_radial_serial(std::span<const double> outer, std::span<const double> inner, double dt,
                            bool nonlinear, const StepBuffers& b) {
  const std::size_t n = b.cur[0].size();
  const Coeffs k = coeffs(dt);
  std::array<std::vector<double>, 2> base;
  for (int j = 0; j < 2; ++j) {
    base[j].resize(n);
    for (std::size_t i = 0; i < n; ++i) base[j][i] = radial_base(b.cur[j], b.prev[j], outer, inner, i, k.dt2);
  }
  for (std::size_t i = 0; i < n; ++i) finish_cell(i, base[0][i], base[1][i], nonlinear, k, b);
}

void leapfrog_radial_parallel(std::span<const double> outer, std::span<const double> inner, double dt,
                              bool nonlinear, const StepBuffers& b) {
  const long n = static_cast<long>(b.cur[0].size());
  const Coeffs k = coeffs(dt);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    const std::size_t c = static_cast<std::size_t>(i);
    const double base0 = radial_base(b.cur[0], b.prev[0], outer, inner, c, k.dt2);
    const double base1 = radial_base(b.cur[1], b.prev[1], outer, inner, c, k.dt2);
    finish_cell(c, base0, base1, nonlinear, k, b);
  }
}

EnergySums energy_cartesian(Exec exec, int n, double h, std::array<std::span<const double>, 2> u,
                            std::array<std::span<const double>, 2> ut) {
  const std::size_t nn = static_cast<std::size_t>(n);
  const double inv_2h = 0.5 / h;
  const double cell = h * h;
  EnergySums out;
  for (int j = 0; j < 2; ++j)
    out.grad_sq[j] = cell * reduce_rows(exec, 1, nn - 1, [&](std::size_t row) {
                       return cartesian_energy_row(row, nn, inv_2h, u[j], ut[j]);
                     });
  out.dissipation = dissipation_cartesian(exec, n, h, ut);
  return out;
}

double dissipation_cartesian(Exec exec, int n, double h, std::array<std::span<const double>, 2> ut) {
  const std::size_t nn = static_cast<std::size_t>(n);
  return h * h * reduce_rows(exec, 1, nn - 1, [&](std::size_t row) {
           return cartesian_dissipation_row(row, nn, ut[0], ut[1]);
         });
}

EnergySums energy_radial(Exec exec, double h, std::array<std::span<const double>, 2> u,
                         std::array<std::span<const double>, 2> ut) {
  const std::size_t blocks = (u[0].size() + kRadialBlock - 1) / kRadialBlock;
  const double measure = 2.0 * std::numbers::pi * h;
  EnergySums out;
  for (int j = 0; j < 2; ++j)
    out.grad_sq[j] = measure * reduce_rows(exec, 0, blocks, [&](std::size_t blk) {
                       return radial_energy_block(blk, h, u[j], ut[j]);
                     });
  out.dissipation = dissipation_radial(exec, h, ut);
  return out;
}

double dissipation_radial(Exec exec, double h, std::array<std::span<const double>, 2> ut) {
  const std::size_t blocks = (ut[0].size() + kRadialBlock - 1) / kRadialBlock;
  return 2.0 * std::numbers::pi * h * reduce_rows(exec, 0, blocks, [&](std::size_t blk) {
           return radial_dissipation_block(blk, h, ut[0], ut[1]);
         });
}

}  // namespace wavelab::kernels
