#include <doctest.h>

#include <random>
#include <vector>

#include "edge3c/bb.hpp"
#include "edge3c/milp.hpp"
#include "helpers.hpp"

using namespace edge3c;


TEST_CASE("branch and bound matches exhaustive enumeration") {
  for (unsigned seed = 1; seed <= 25; ++seed) {
    CAPTURE(seed);
    Scenario sc = testutil::random_scenario(seed);
    BruteForceResult bf = enumerate_bruteforce(sc);
    BnbResult bb = branch_and_bound(build_opt_linear(sc));

    REQUIRE(bb.status == BnbStatus::Optimal);
    CHECK(check_feasible(sc, bf.assignment).empty());
    CHECK(check_feasible(sc, bb.assignment).empty());
    CHECK(bb.objective == doctest::Approx(bf.objective).epsilon(1e-9));
    CHECK(assignment_energy(sc, bb.assignment).total ==
          doctest::Approx(bb.objective).epsilon(1e-9));
    CHECK(bb.root_bound <= bb.objective + 1e-7);
    CHECK(bb.objective <=
          assignment_energy(sc, noncooperation_assignment(sc)).total + 1e-9);
  }
}

TEST_CASE("branch and bound matches enumeration on a dense instance") {
  // Three busy tasks with shared inputs, caches, uploads, and tight-but-
  // admissible download bounds.
  Scenario sc = testutil::blank_scenario(3, 3);
  sc.contents[0].size = 2.0;
  sc.contents[2].size = 0.5;
  sc.devices[0].cache = {0, 1, 0};
  sc.devices[2].cache = {0, 0, 1};
  sc.devices[1].c_cpu = 0.2;
  testutil::add_task(sc, 1, {1, 2}, 4.0, {3}, {});
  testutil::add_task(sc, 2, {1, 3}, 2.0, {}, {2});
  testutil::add_task(sc, 3, {2, 3}, 6.0, {1}, {});

  Assignment nonco = noncooperation_assignment(sc);
  TaskDelays base = worst_case_delays(sc, nonco);
  for (int s = 0; s < 3; ++s) {
    sc.tasks[s].delay_down = base.down[s] * 1.3;
    sc.tasks[s].delay_cpu = base.cpu[s] * 1.5;
  }
  REQUIRE(validate_scenario(sc).empty());

  BruteForceResult bf = enumerate_bruteforce(sc);
  BnbResult bb = branch_and_bound(build_opt_linear(sc));
  REQUIRE(bb.status == BnbStatus::Optimal);
  CHECK(bb.objective == doctest::Approx(bf.objective).epsilon(1e-9));
  CHECK(bb.objective <= assignment_energy(sc, nonco).total + 1e-9);
  CHECK(check_feasible(sc, bb.assignment).empty());
}

TEST_CASE("branch and bound is deterministic") {
  Scenario sc = testutil::random_scenario(3);
  BnbResult a = branch_and_bound(build_opt_linear(sc));
  BnbResult b = branch_and_bound(build_opt_linear(sc));
  CHECK(a.nodes == b.nodes);
  CHECK(a.objective == b.objective);
  CHECK(a.assignment == b.assignment);
}

TEST_CASE("unbounded-delay instances close the relaxation gap") {
  Scenario sc = testutil::blank_scenario(3, 2);
  sc.devices[1].cache = {1, 0};
  testutil::add_task(sc, 1, {1}, 4.0, {}, {});
  testutil::add_task(sc, 2, {1, 2}, 3.0, {2}, {1});
  testutil::add_task(sc, 3, {2}, 5.0, {}, {});

  BnbResult bb = branch_and_bound(build_opt_linear(sc));
  LpSolution relax =
      simplex_solve(build_opt_relax(sc, ControlParams::all_ones(sc)).lp);
  REQUIRE(bb.status == BnbStatus::Optimal);
  REQUIRE(relax.status == LpStatus::Optimal);
  CHECK(bb.objective == doctest::Approx(relax.objective).epsilon(1e-9));
}

TEST_CASE("warm incumbents are honoured and validated") {
  Scenario sc = testutil::random_scenario(7);
  MilpInstance mi = build_opt_linear(sc);

  BnbOptions warm;
  warm.incumbent =
      assignment_to_vector(mi.vm, sc, noncooperation_assignment(sc));
  BnbResult with_warm = branch_and_bound(mi, warm);
  BnbResult without = branch_and_bound(mi);
  REQUIRE(with_warm.status == BnbStatus::Optimal);
  CHECK(with_warm.objective == doctest::Approx(without.objective));
  CHECK(with_warm.nodes <= without.nodes);

  BnbOptions junk;
  junk.incumbent = std::vector<double>(mi.lp.num_vars, 0.25);
  CHECK_THROWS_AS((void)branch_and_bound(mi, junk), std::invalid_argument);
}

TEST_CASE("node limit reports a partial result") {
  Scenario sc = testutil::random_scenario(2);
  MilpInstance mi = build_opt_linear(sc);

  BnbOptions opt;
  opt.node_limit = 0;
  BnbResult empty = branch_and_bound(mi, opt);
  CHECK(empty.status == BnbStatus::NodeLimit);
  CHECK(empty.objective == kInf);

  opt.incumbent =
      assignment_to_vector(mi.vm, sc, noncooperation_assignment(sc));
  BnbResult seeded = branch_and_bound(mi, opt);
  CHECK(seeded.status == BnbStatus::NodeLimit);
  CHECK(seeded.objective ==
        doctest::Approx(
            assignment_energy(sc, noncooperation_assignment(sc)).total));
}

TEST_CASE("contradictory side constraints are reported infeasible") {
  Scenario sc = testutil::blank_scenario(2, 1);
  testutil::add_task(sc, 1, {1}, 4.0, {}, {});
  MilpInstance mi = build_opt_linear(sc);
  LinearConstraint row;
  row.terms = {{mi.vm.x_cpu(0, 0), 1.0}, {mi.vm.x_cpu(0, 1), 1.0}};
  row.lo = 2.0;
  row.hi = 2.0; // but Eq.3 forces the pair to sum to 1
  mi.lp.rows.push_back(row);
  BnbResult res = branch_and_bound(mi);
  CHECK(res.status == BnbStatus::Infeasible);
}

TEST_CASE("enumeration oracle rejects oversized scenarios") {
  Scenario big = testutil::blank_scenario(5, 1);
  testutil::add_task(big, 1, {1}, 1.0, {}, {});
  CHECK_THROWS_AS((void)enumerate_bruteforce(big), TooLarge);
}

TEST_CASE("enumeration oracle finds the cached-helper optimum") {
  Scenario sc = testutil::blank_scenario(2, 1);
  sc.devices[1].cache = {1};
  testutil::add_task(sc, 1, {1}, 4.0, {}, {});

  BruteForceResult bf = enumerate_bruteforce(sc);
  CHECK(bf.objective == doctest::Approx(0.4)); // compute beside the cache
  CHECK(bf.combinations == 4);                 // 2 cpu x 2 fetch choices
  CHECK(bf.assignment.cpu(0, 1) == 1);
  CHECK(bf.assignment.in(0, 0, 1) == 1);
  CHECK(assignment_energy(sc, bf.assignment).d2d[0] == doctest::Approx(0.0));
}
