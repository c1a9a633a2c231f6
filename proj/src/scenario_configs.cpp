#include <array>
#include <utility>

#include "wavelab/scenarios.hpp"

namespace wavelab {
namespace {

// Radial data with unequal f/g content per component.
constexpr const char* kConservation = R"(# Energy identities of the coupled system.
[scenario]
name = conservation
refine_levels = 2

[grid]
mode = radial
T = 40

[data]
epsilon = 0.3

[thresholds]
diff_residual = 5e-3
balance_residual = 5e-3
diff_order = 1.8

[[bump]]
component = 1
kind = f
center = "0, 0"
radius = 1
amplitude = 1

[[bump]]
component = 1
kind = g
center = "0, 0"
radius = 1.5
amplitude = 0.8

[[bump]]
component = 2
kind = f
center = "0, 0"
radius = 2
amplitude = 0.6

[[bump]]
component = 2
kind = g
center = "0, 0"
radius = 1
amplitude = -0.7
)";

// Wide off-centre bumps: radius >= 2 keeps the edge layers resolved at h = 1/32.
constexpr const char* kFreeValidation = R"(# Free 2D leapfrog against the Poisson quadrature oracle.
[scenario]
name = free-validation
levels = 3
sample_times = 4

[grid]
mode = cartesian-2d
h = 0.03125
T = 3

[data]
epsilon = 1

[thresholds]
max_error_over_h2 = 5
order = 1.9

[[bump]]
component = 1
kind = f
center = "0.3, -0.2"
radius = 2
amplitude = 1

[[bump]]
component = 1
kind = g
center = "-0.4, 0.3"
radius = 2.5
amplitude = 0.5

[[bump]]
component = 2
kind = f
center = "0, 0"
radius = 2
amplitude = 1

[[bump]]
component = 2
kind = g
center = "0.5, 0.5"
radius = 2
amplitude = -0.5
)";

// Component 1 is a pure velocity bump; component 2 mixes off-centre f and g.
constexpr const char* kRadiationDecay = R"(# Radiation field decay, support and free-field approximation.
[scenario]
name = radiation-decay
fit_lo = -40
fit_hi = -10
ray_t_min = 5
ray_count = 5

[grid]
mode = cartesian-2d

[data]
epsilon = 1
sigma_samples = -1, 0
theta_samples = 0, 1.5707963267948966, 3.9269908169744976

[thresholds]
decay_slope_lo = -1.65
decay_slope_hi = -1.35
ray_slope = -0.8

[[bump]]
component = 1
kind = g
center = "0, 0"
radius = 1
amplitude = 1

[[bump]]
component = 2
kind = f
center = "0.3, -0.2"
radius = 1.5
amplitude = 1

[[bump]]
component = 2
kind = g
center = "-0.4, 0.3"
radius = 1.2
amplitude = 0.5
)";

constexpr const char* kProfileOracle = R"(# Truncated profile system: integrator, closed form and trichotomy.
[scenario]
name = profile-oracle
grid_n = 5
v_min = 0.05
v_max = 0.5
t_start = 2
t_end_factor = 1e6
trichotomy_delta = 0.05

[thresholds]
closed_form_rel_error = 1e-8
invariant_drift = 1e-9
trichotomy_terminal_error = 1e-6
)";

// Radii 3, 4.5, 6 keep every sampled sigma away from the steep edges at sigma = -R.
// Amplitudes make dF1^2 - dF2^2 change sign between sigma = -2 and sigma = -1.
constexpr const char* kEpsilonScaling = R"(# Invariant m against eps^2 (dF1^2 - dF2^2) over a range of eps.
[scenario]
name = epsilon-scaling
t_eval_factor = 4
floor_check = 1
trace_stride = 1

[grid]
mode = radial
h = 0.0234375

[data]
epsilon = 0.4, 0.283, 0.2, 0.141, 0.1
sigma_samples = -2, -1, 0, 0.5
theta_samples = 0

[thresholds]
residual_slope = 2.2
leading_ratio_error = 0.15
floor_factor = 10
correction_consistency = 5e-3

[[bump]]
component = 1
kind = f
center = "0, 0"
radius = 3
amplitude = -0.9

[[bump]]
component = 1
kind = g
center = "0, 0"
radius = 4.5
amplitude = 0.9

[[bump]]
component = 2
kind = f
center = "0, 0"
radius = 6
amplitude = 1

[[bump]]
component = 2
kind = g
center = "0, 0"
radius = 3
amplitude = 0.9
)";

constexpr const char* kNondecay = R"(# Both energies persist when each component dominates somewhere.
[scenario]
name = nondecay-demo

[grid]
mode = radial
T = 20

[data]
epsilon = 0.2
sigma_samples = -2, -1, 0, 0.5

[thresholds]
crossing_margin = 1e-2
energy_floor = 0.2

[[bump]]
component = 1
kind = f
center = "0, 0"
radius = 3
amplitude = -0.9

[[bump]]
component = 1
kind = g
center = "0, 0"
radius = 4.5
amplitude = 0.9

[[bump]]
component = 2
kind = f
center = "0, 0"
radius = 6
amplitude = 1

[[bump]]
component = 2
kind = g
center = "0, 0"
radius = 3
amplitude = 0.9
)";

constexpr const char* kSymmetric = R"(# f1 = f2, g1 = g2: single-equation dynamics.
[scenario]
name = symmetric-decay
profile_ratio = 1.25

[grid]
mode = radial
h = 0.017578125
T = 100

[data]
epsilon = 0.2
sigma_samples = 0

[thresholds]
symmetry_error = 1e-12
profile_shape_error = 0.2

[[bump]]
component = 1
kind = f
center = "0, 0"
radius = 3
amplitude = -0.9

[[bump]]
component = 1
kind = g
center = "0, 0"
radius = 4.5
amplitude = 0.9

[[bump]]
component = 2
kind = f
center = "0, 0"
radius = 3
amplitude = -0.9

[[bump]]
component = 2
kind = g
center = "0, 0"
radius = 4.5
amplitude = 0.9
)";

constexpr std::array<std::pair<const char*, const char*>, 7> kBuiltins{{
    {"conservation", kConservation},
    {"free-validation", kFreeValidation},
    {"radiation-decay", kRadiationDecay},
    {"profile-oracle", kProfileOracle},
    {"epsilon-scaling", kEpsilonScaling},
    {"nondecay-demo", kNondecay},
    {"symmetric-decay", kSymmetric},
}};

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, text] : kBuiltins) out.emplace_back(name);
    return out;
  }();
  return names;
}

std::string_view builtin_config(std::string_view name) {
  for (const auto& [n, text] : kBuiltins)
    if (name == n) return text;
  throw UnknownScenario(std::string(name));
}

ScenarioConfig builtin_scenario(std::string_view name, const std::vector<std::string>& overrides) {
  return parse_scenario(builtin_config(name), overrides);
}

}  // namespace wavelab
