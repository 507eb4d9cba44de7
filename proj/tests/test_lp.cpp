#include <doctest.h>

#include <cmath>

#include "edge3c/lp.hpp"

using namespace edge3c;

namespace {

LpInstance make(int nvars, std::vector<double> obj, std::vector<double> lb,
                std::vector<double> ub, std::vector<LinearConstraint> rows) {
  LpInstance i;
  i.num_vars = nvars;
  i.obj = std::move(obj);
  i.lb = std::move(lb);
  i.ub = std::move(ub);
  i.rows = std::move(rows);
  return i;
}

int interior_count(const LpInstance& inst, const LpSolution& sol, double tol = 1e-9) {
  int c = 0;
  for (int j = 0; j < inst.num_vars; ++j)
    if (sol.x[j] > inst.lb[j] + tol && sol.x[j] < inst.ub[j] - tol) ++c;
  return c;
}

} // namespace

TEST_CASE("simplex: single variable at its bound") {
  LpInstance i = make(1, {-1.0}, {0.0}, {1.0}, {{{{0, 1.0}}, -1e30, 1.0}});
  LpSolution s = simplex_solve(i);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.x[0] == doctest::Approx(1.0));
  CHECK(s.objective == doctest::Approx(-1.0));
}

TEST_CASE("simplex: no rows at all") {
  LpInstance i = make(2, {1.0, -2.0}, {0.0, 0.0}, {1.0, 3.0}, {});
  LpSolution s = simplex_solve(i);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.x[0] == doctest::Approx(0.0));
  CHECK(s.x[1] == doctest::Approx(3.0));
  CHECK(s.objective == doctest::Approx(-6.0));
}

TEST_CASE("simplex: covering constraint lands on a vertex, never the midpoint") {
  const double inf = std::numeric_limits<double>::infinity();
  LpInstance i = make(2, {1.0, 1.0}, {0.0, 0.0}, {1.0, 1.0},
                      {{{{0, 1.0}, {1, 1.0}}, 1.0, inf}});
  LpSolution s = simplex_solve(i);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.objective == doctest::Approx(1.0));
  const bool vertex_a = std::abs(s.x[0] - 1.0) < 1e-9 && std::abs(s.x[1]) < 1e-9;
  const bool vertex_b = std::abs(s.x[1] - 1.0) < 1e-9 && std::abs(s.x[0]) < 1e-9;
  CHECK((vertex_a || vertex_b));
}

TEST_CASE("simplex: infeasible covering demand") {
  const double inf = std::numeric_limits<double>::infinity();
  LpInstance i = make(2, {0.0, 0.0}, {0.0, 0.0}, {1.0, 1.0},
                      {{{{0, 1.0}, {1, 1.0}}, 3.0, inf}});
  CHECK(simplex_solve(i).status == LpStatus::Infeasible);
}

TEST_CASE("simplex: equality row with fractional rhs") {
  LpInstance i = make(2, {1.0, -1.0}, {0.0, 0.0}, {1.0, 1.0},
                      {{{{0, 1.0}, {1, 1.0}}, 1.5, 1.5}});
  LpSolution s = simplex_solve(i);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.x[0] == doctest::Approx(0.5));
  CHECK(s.x[1] == doctest::Approx(1.0));
  CHECK(s.objective == doctest::Approx(-0.5));
  CHECK(interior_count(i, s) <= static_cast<int>(i.rows.size()));
}

TEST_CASE("simplex: ranged row") {
  LpInstance i = make(2, {1.0, -1.0}, {0.0, 0.0}, {3.0, 3.0},
                      {{{{0, 1.0}, {1, 1.0}}, 1.0, 2.0}});
  LpSolution s = simplex_solve(i);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.x[0] == doctest::Approx(0.0));
  CHECK(s.x[1] == doctest::Approx(2.0));
  CHECK(s.objective == doctest::Approx(-2.0));
}

TEST_CASE("simplex: negative lower bounds") {
  LpInstance i = make(2, {1.0, 1.0}, {-2.0, -2.0}, {2.0, 2.0},
                      {{{{0, 1.0}, {1, -1.0}}, 1.0, 1.0}});
  LpSolution s = simplex_solve(i);
  REQUIRE(s.status == LpStatus::Optimal);
  // x - y = 1 with both minimized: x = -1, y = -2.
  CHECK(s.x[0] == doctest::Approx(-1.0));
  CHECK(s.x[1] == doctest::Approx(-2.0));
}

TEST_CASE("simplex: objective recomputes from primal values") {
  const double inf = std::numeric_limits<double>::infinity();
  LpInstance i = make(3, {2.0, 3.0, 0.5}, {0.0, 0.0, 0.0}, {5.0, 5.0, 5.0},
                      {{{{0, 1.0}, {1, 2.0}}, 4.0, inf},
                       {{{1, 1.0}, {2, 1.0}}, 3.0, inf}});
  LpSolution s = simplex_solve(i);
  REQUIRE(s.status == LpStatus::Optimal);
  double recomputed = 0.0;
  for (int j = 0; j < 3; ++j) recomputed += i.obj[j] * s.x[j];
  CHECK(s.objective == doctest::Approx(recomputed).epsilon(1e-9));
  CHECK(interior_count(i, s) <= static_cast<int>(i.rows.size()));
}

TEST_CASE("simplex: pivot cap reports IterationLimit") {
  const double inf = std::numeric_limits<double>::infinity();
  LpInstance i = make(2, {1.0, 1.0}, {0.0, 0.0}, {1.0, 1.0},
                      {{{{0, 1.0}, {1, 1.0}}, 1.0, inf}});
  SimplexOptions opt;
  opt.pivot_cap = 0;
  CHECK(simplex_solve(i, opt).status == LpStatus::IterationLimit);
}

TEST_CASE("simplex: assignment-polytope instances solve to binary vertices") {
  // min -sum x over a 3x3 doubly stochastic polytope: vertices are
  // permutation matrices, so every coordinate must come out integral.
  LpInstance i;
  i.num_vars = 9;
  i.obj = {-1, -2, -3, -2, -3, -1, -3, -1, -2};
  i.lb.assign(9, 0.0);
  i.ub.assign(9, 1.0);
  for (int r = 0; r < 3; ++r) {
    LinearConstraint row, col;
    for (int c = 0; c < 3; ++c) {
      row.terms.push_back({3 * r + c, 1.0});
      col.terms.push_back({3 * c + r, 1.0});
    }
    row.lo = row.hi = 1.0;
    col.lo = col.hi = 1.0;
    i.rows.push_back(row);
    i.rows.push_back(col);
  }
  LpSolution s = simplex_solve(i);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.objective == doctest::Approx(-9.0)); // pick the all-3 diagonal
  for (double v : s.x) CHECK(std::min(v, 1.0 - v) < 1e-9);
}
