#pragma once

#include <span>

namespace wavelab {

struct PowerLawFit {
  double slope = 0.0;
  double intercept = 0.0;  ///< natural log of the prefactor
  double r_squared = 0.0;
};

/// Least squares of log(ys) against log(xs). Requires at least 3 points, all positive;
/// throws std::domain_error otherwise.
PowerLawFit fit_power_law(std::span<const double> xs, std::span<const double> ys);

}  // namespace wavelab
