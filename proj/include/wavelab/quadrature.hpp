#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace wavelab {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  int size() const { return static_cast<int>(nodes.size()); }
};

/// Rules are computed once per order and cached; safe to call concurrently.
const GaussRule& gauss_legendre(int order);

/// Composite Gauss-Legendre over [a, b] split into `panels` equal panels.
template <class F>
double integrate_composite(F&& f, double a, double b, int panels, const GaussRule& rule) {
  if (!(b > a)) return 0.0;
  const double width = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    const double mid = lo + 0.5 * width;
    double acc = 0.0;
    for (int k = 0; k < rule.size(); ++k) acc += rule.weights[k] * f(mid + 0.5 * width * rule.nodes[k]);
    total += 0.5 * width * acc;
  }
  return total;
}

/// Pairwise (cascade) summation in a fixed order. The result depends only on the input
/// sequence, never on how the caller produced it.
double pairwise_sum(std::span<const double> values);

}  // namespace wavelab
