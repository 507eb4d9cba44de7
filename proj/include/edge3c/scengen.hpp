#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include "edge3c/model.hpp"

namespace edge3c {

// Per-parameter sampling interval; values are drawn from a truncated normal
// with mean (lo+hi)/2 whose spread scales with the interval width.
struct ParamRange {
  double lo = 0.0;
  double hi = 1.0;
};

// Experiment parameter intervals (device capacities, demands, unit costs).
struct ParamRanges {
  ParamRange q_down{0.0, 10.0};
  ParamRange q_up{0.0, 4.0};
  ParamRange q_d2d{0.0, 50.0};
  ParamRange q_cpu{0.0, 10.0};
  ParamRange d_cpu{0.0, 10.0};
  ParamRange c_down{0.0, 2.8};
  ParamRange c_cpu{0.0, 1.2};
  ParamRange c_up{0.0, 2.8};
  ParamRange c_d2d{0.0, 0.8};
};

struct GenConfig {
  int n_devices = 20;
  int n_contents = 10;
  double edge_prob = 0.3; // pairwise D2D connection probability
  double sigma = 1.0;     // heterogeneity knob, see generate()
  // When set, every D2D edge cost becomes beta times the transmitting
  // device's downloading cost instead of an independent draw.
  std::optional<double> beta;
  // Mix over {downloading, content sharing, distributed data analysis}.
  std::array<double, 3> task_mix{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  // Delay bounds are the noncooperation subtask times scaled by a slack
  // drawn uniformly from this range (slack >= 1 keeps noncooperation
  // feasible by construction).
  double slack_lo = 1.0;
  double slack_hi = 3.0;
  std::uint64_t seed = 0;
  ParamRanges ranges;
};

// Thrown when repeated draws keep failing scenario validation.
class RetryExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class CoopMode : std::uint8_t { OneC2C, ThreeC };

// Draws a random scenario: G(N, p) D2D graph, one task per device,
// truncated-normal parameters with mean (lo+hi)/2 and standard deviation
// sigma*(hi-lo)/10, and delay bounds anchored to the noncooperation times.
// Deterministic in cfg (same config => identical scenario).
Scenario generate(const GenConfig& cfg);

// ThreeC returns the scenario unchanged; OneC2C removes every D2D edge whose
// endpoint devices host different sets of task types (devices can only
// cooperate within their own task kind).
Scenario restrict_cooperation(const Scenario& sc, CoopMode mode);

} // namespace edge3c
