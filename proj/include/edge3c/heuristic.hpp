#pragma once

// Delay-aware scheduling heuristic: repeatedly solve the relaxed allocation
// LP and prevent the allocations responsible for delay-bound violations
// until every bound holds.

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "edge3c/milp.hpp"
#include "edge3c/model.hpp"

namespace edge3c {

// Raised by prevention_step when a sweep cannot flip any control bit even
// though a delay bound is violated. The convergence argument says this state
// is unreachable from LP solutions; run_heuristic still degrades gracefully.
class NoPreventableTask : public std::runtime_error {
 public:
  explicit NoPreventableTask(const std::string& what)
      : std::runtime_error(what) {}
};

struct HeuristicOptions {
  SimplexOptions lp;
  // When set, one JSON line per iteration: {"iteration", "violated",
  // "flipped", "objective"}.
  std::ostream* trace = nullptr;
};

struct HeuristicResult {
  Assignment assignment;
  int iterations = 0; // delay-repair sweeps (1 when no bound was violated)
  double energy = 0.0;
  ControlParams controls;      // final prevention state
  double max_fractionality = 0.0; // worst |x - round(x)| seen across solves
  bool fallback_noncooperation = false;
};

HeuristicResult run_heuristic(const Scenario& sc,
                              const HeuristicOptions& opt = {});

// One prevention sweep over all tasks in index order (violated subtask
// families only). Returns the updated controls; at least one bit flips or
// NoPreventableTask is thrown. `a` must violate at least one delay bound.
ControlParams prevention_step(const Scenario& sc, const Assignment& a,
                              const ControlParams& ctrl);

} // namespace edge3c
