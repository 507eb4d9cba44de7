#pragma once

// Bounded-variable revised simplex. The solver always returns a basic
// feasible solution (a vertex of the feasible polytope); that property is
// load-bearing for the scheduler, because vertices of the relaxed scheduling
// polytope are integral.

#include <cstdint>
#include <utility>
#include <vector>

namespace edge3c {

// One ranged row: lo <= sum(coef * x[var]) <= hi (either side may be
// infinite; lo == hi encodes an equality).
struct LinearConstraint {
  std::vector<std::pair<int, double>> terms;
  double lo = 0.0;
  double hi = 0.0;
};

struct LpInstance {
  int num_vars = 0;
  std::vector<double> obj; // minimized
  std::vector<double> lb, ub;
  std::vector<LinearConstraint> rows;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

// Vertex position of one column: in the basis or parked on a bound.
enum class ColStatus : uint8_t { Basic, AtLb, AtUb };

struct LpSolution {
  LpStatus status = LpStatus::IterationLimit;
  std::vector<double> x; // structural variable values (num_vars entries)
  double objective = 0.0;
  // Basic variable per row: structural j < num_vars, logical num_vars + r.
  std::vector<int> basis;
  // Status per column, structurals then logicals (num_vars + rows entries).
  std::vector<ColStatus> col_status;
  long pivots = 0;
};

struct SimplexOptions {
  long pivot_cap = 1'000'000;      // exceeded -> LpStatus::IterationLimit
  long bland_after = 10'000;       // degenerate pivots before Bland's rule
  double feas_tol = 1e-7;          // absolute primal feasibility
  double opt_tol = 1e-9;           // reduced-cost optimality
  long refactor_every = 128;       // basis updates between refactorizations
  int pricing_chunk = 8192;        // columns scanned per pricing round (0 = all)

  // Optional warm start: a basis plus column statuses, as returned in
  // LpSolution::basis / col_status by a solve of a related instance (same
  // shape, possibly different bounds). Nonbasics sit on their donor bound
  // and the solver repairs any bound violations the new instance introduces;
  // an unusable donor silently falls back to the cold start.
  const std::vector<int>* warm_basis = nullptr;
  const std::vector<ColStatus>* warm_status = nullptr;
};

LpSolution simplex_solve(const LpInstance& inst, const SimplexOptions& opt = {});

} // namespace edge3c
