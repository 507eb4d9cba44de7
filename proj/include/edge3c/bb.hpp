#pragma once

// Exact solver for the integer scheduling problem: LP-based branch-and-bound,
// plus a brute-force enumeration oracle for tiny instances.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "edge3c/milp.hpp"
#include "edge3c/model.hpp"

namespace edge3c {

enum class BnbStatus { Optimal, Infeasible, NodeLimit };

struct BnbOptions {
  long node_limit = 1'000'000;
  SimplexOptions lp;
  // Optional warm incumbent (full variable vector, e.g. the noncooperation
  // point); must satisfy the instance rows.
  std::optional<std::vector<double>> incumbent;
};

struct BnbResult {
  BnbStatus status = BnbStatus::Infeasible;
  Assignment assignment; // valid when an incumbent exists
  double objective = 0.0;
  long nodes = 0;        // search-tree nodes processed
  long lp_pivots = 0;    // simplex pivots summed over all node relaxations
  double root_bound = 0.0;
};

BnbResult branch_and_bound(const MilpInstance& inst, const BnbOptions& opt = {});

class TooLarge : public std::runtime_error {
 public:
  explicit TooLarge(const std::string& what) : std::runtime_error(what) {}
};

// Exhaustive enumeration of all subtask allocations with min-cost routing,
// filtered by feasibility. Guarded to N <= 4, S <= 4, K <= 3 (throws TooLarge
// beyond, or when the combination count explodes).
struct BruteForceResult {
  Assignment assignment;
  double objective = 0.0;
  long long combinations = 0;
};

BruteForceResult enumerate_bruteforce(const Scenario& sc);

// Helpers shared with tests: embed an integral Assignment into a full
// variable vector for `vm` (deriving y when present), and check a vector
// against an instance's rows and bounds.
std::vector<double> assignment_to_vector(const VarMap& vm, const Scenario& sc,
                                         const Assignment& a);
bool satisfies_instance(const LpInstance& lp, const std::vector<double>& x,
                        double tol = 1e-7);

} // namespace edge3c
