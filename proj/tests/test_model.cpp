#include <doctest.h>

#include <algorithm>
#include <string>

#include "edge3c/json_io.hpp"
#include "edge3c/model.hpp"
#include "helpers.hpp"

using namespace edge3c;
using testutil::add_task;
using testutil::blank_scenario;

namespace {

bool has_violation(const std::vector<std::string>& v, const std::string& word) {
  return std::any_of(v.begin(), v.end(), [&](const std::string& s) {
    return s.find(word) != std::string::npos;
  });
}

} // namespace

TEST_CASE("subtask_times: direct substitution") {
  Scenario sc = blank_scenario(1, 3);
  sc.contents[0].size = 1.0;
  sc.contents[1].size = 2.0;
  sc.contents[2].size = 6.0;
  sc.devices[0].down_cap = 9.0;
  add_task(sc, 1, {1, 2, 3});
  Assignment a = noncooperation_assignment(sc);
  DeviceTimes t = subtask_times(sc, a);
  CHECK(t.down[0] == doctest::Approx(1.0)); // (1+2+6)/9

  SUBCASE("no subtask allocated -> zero times") {
    Assignment z = Assignment::zeros(sc);
    DeviceTimes tz = subtask_times(sc, z);
    CHECK(tz.down[0] == 0.0);
    CHECK(tz.cpu[0] == 0.0);
    CHECK(tz.up[0] == 0.0);
  }
}

TEST_CASE("subtask_times: cpu") {
  Scenario sc = blank_scenario(1, 1);
  add_task(sc, 1, {}, 10.0);
  Assignment a = noncooperation_assignment(sc);
  CHECK(subtask_times(sc, a).cpu[0] == doctest::Approx(1.0));
}

TEST_CASE("worst_case_delays: max over uncached downloaders") {
  Scenario sc = blank_scenario(3, 2);
  sc.devices[1].down_cap = 2.5; // tau = 0.4 for one unit content
  sc.devices[2].down_cap = 10.0 / 9.0; // tau = 0.9
  add_task(sc, 1, {1, 2});
  Assignment a = Assignment::zeros(sc);
  a.cpu(0, 0) = 1;
  a.in(0, 0, 1) = 1;
  a.down(0, 0, 1) = 1;
  a.in(0, 1, 2) = 1;
  a.down(0, 1, 2) = 1;
  // route both contents back to the owner so the assignment is coherent
  TaskDelays d = worst_case_delays(sc, a);
  CHECK(d.down[0] == doctest::Approx(0.9));

  SUBCASE("single downloader") {
    Assignment b = Assignment::zeros(sc);
    b.cpu(0, 0) = 1;
    b.in(0, 0, 2) = 1;
    b.down(0, 0, 2) = 1;
    b.in(0, 1, 2) = 1;
    b.down(0, 1, 2) = 1;
    CHECK(worst_case_delays(sc, b).down[0] == doctest::Approx(1.8));
  }
}

TEST_CASE("worst_case_delays: cached inputs are instantaneous") {
  Scenario sc = blank_scenario(1, 1);
  sc.devices[0].cache[0] = 1;
  add_task(sc, 1, {1});
  Assignment a = noncooperation_assignment(sc);
  CHECK(worst_case_delays(sc, a).down[0] == 0.0);
}

TEST_CASE("assignment_energy: owner-only task") {
  Scenario sc = blank_scenario(1, 2);
  Device& d = sc.devices[0];
  d.c_down = 2.0;
  d.down_cap = 10.0;
  d.c_cpu = 1.0;
  d.cpu_cap = 10.0;
  d.c_up = 2.0;
  d.up_cap = 4.0;
  add_task(sc, 1, {1}, 10.0, {2});
  Assignment a = noncooperation_assignment(sc);
  EnergyBreakdown e = assignment_energy(sc, a);
  CHECK(e.down[0] == doctest::Approx(0.2));
  CHECK(e.cpu[0] == doctest::Approx(1.0));
  CHECK(e.up[0] == doctest::Approx(0.5));
  CHECK(e.d2d[0] == 0.0);
  CHECK(e.task_total[0] == doctest::Approx(1.7));
  CHECK(e.total == doctest::Approx(1.7));
}

TEST_CASE("assignment_energy: empty task costs nothing") {
  Scenario sc = blank_scenario(1, 1);
  add_task(sc, 1);
  EnergyBreakdown e = assignment_energy(sc, noncooperation_assignment(sc));
  CHECK(e.total == 0.0);
}

TEST_CASE("assignment_energy: one relayed content") {
  Scenario sc = blank_scenario(2, 1);
  sc.graph.edges.clear();
  sc.graph.edges.push_back({2, 1, 50.0, 0.8});
  add_task(sc, 1, {1});
  Assignment a = Assignment::zeros(sc);
  a.cpu(0, 0) = 1;
  a.in(0, 0, 1) = 1;
  a.down(0, 0, 1) = 1;
  a.zin(0, 0, 0) = 1;
  EnergyBreakdown e = assignment_energy(sc, a);
  CHECK(e.d2d[0] == doctest::Approx(0.016));
}

TEST_CASE("validate_scenario: well-formed scenario has no violations") {
  Scenario sc = blank_scenario(2, 2);
  add_task(sc, 1, {1}, 5.0);
  add_task(sc, 2, {2});
  CHECK(validate_scenario(sc).empty());
}

TEST_CASE("validate_scenario: Assumption 1 violation is reported") {
  Scenario sc = blank_scenario(1, 1);
  add_task(sc, 1, {1});
  sc.tasks[0].delay_down = 0.05; // own download takes 1/10 = 0.1 > 0.05
  CHECK(has_violation(validate_scenario(sc), "Assumption 1"));
}

TEST_CASE("validate_scenario: zero capacity is a capacity violation") {
  Scenario sc = blank_scenario(1, 1);
  add_task(sc, 1, {}, 3.0);
  sc.devices[0].cpu_cap = 0.0;
  CHECK(has_violation(validate_scenario(sc), "capacity"));
}

TEST_CASE("noncooperation_assignment: uncached input is downloaded by owner") {
  Scenario sc = blank_scenario(1, 1);
  add_task(sc, 1, {1}, 1.0);
  Assignment a = noncooperation_assignment(sc);
  CHECK(a.down(0, 0, 0) == 1);
  CHECK(a.in(0, 0, 0) == 1);
  CHECK(a.cpu(0, 0) == 1);
  CHECK(std::all_of(a.z_in.begin(), a.z_in.end(), [](int v) { return v == 0; }));
}

TEST_CASE("noncooperation_assignment: cached input needs no download") {
  Scenario sc = blank_scenario(1, 1);
  sc.devices[0].cache[0] = 1;
  add_task(sc, 1, {1});
  Assignment a = noncooperation_assignment(sc);
  CHECK(a.down(0, 0, 0) == 0);
  CHECK(a.in(0, 0, 0) == 1);
}

TEST_CASE("noncooperation_assignment passes check_feasible on a 3-device scenario") {
  Scenario sc = blank_scenario(3, 3);
  sc.devices[1].cache[2] = 1;
  add_task(sc, 1, {1, 3}, 4.0, {2}, {1});
  add_task(sc, 2, {3}, 2.0);
  add_task(sc, 3, {2}, 0.0, {}, {2});
  REQUIRE(validate_scenario(sc).empty());
  CHECK(check_feasible(sc, noncooperation_assignment(sc)).empty());
}

TEST_CASE("check_feasible: duplicated computation violates Eq.3") {
  Scenario sc = blank_scenario(2, 1);
  add_task(sc, 1, {}, 1.0);
  Assignment a = noncooperation_assignment(sc);
  a.cpu(0, 1) = 1;
  auto v = check_feasible(sc, a);
  REQUIRE(v.size() == 1);
  CHECK(v[0] == "Eq.3");
}

TEST_CASE("check_feasible: broken relay chain violates Eq.7") {
  // Path 1-2-3; the input sits in device 3's cache, is fetched there, but the
  // copy never reaches the computing device 1 (flow imbalance at device 2).
  Scenario sc = blank_scenario(3, 1);
  sc.graph.edges.clear();
  for (auto [i, j] : {std::pair{1, 2}, {2, 1}, {2, 3}, {3, 2}})
    sc.graph.edges.push_back({i, j, 50.0, 0.1});
  sc.devices[2].cache[0] = 1;
  add_task(sc, 1, {1}, 1.0);
  Assignment a = Assignment::zeros(sc);
  a.cpu(0, 0) = 1;
  a.in(0, 0, 2) = 1;
  a.zin(0, 0, 3) = 1; // edge 3->2 only; nothing onward to 1
  auto v = check_feasible(sc, a);
  REQUIRE(v.size() == 1);
  CHECK(v[0] == "Eq.7");
}

TEST_CASE("check_feasible: missing download violates Eq.6") {
  Scenario sc = blank_scenario(2, 1);
  add_task(sc, 1, {1});
  Assignment a = noncooperation_assignment(sc);
  a.down(0, 0, 0) = 0; // fetch without cache or download
  auto v = check_feasible(sc, a);
  CHECK(has_violation(v, "Eq.6"));
}

TEST_CASE("check_feasible: delay bound violations are Eq.10") {
  Scenario sc = blank_scenario(1, 1);
  add_task(sc, 1, {1});
  REQUIRE(validate_scenario(sc).empty());
  sc.tasks[0].delay_down = 0.05; // nonco download time is 0.1
  Assignment a = noncooperation_assignment(sc);
  auto v = check_feasible(sc, a);
  REQUIRE(v.size() == 1);
  CHECK(v[0] == "Eq.10");
}

TEST_CASE("model invariants: doubling capacities halves times and local energies") {
  Scenario sc = blank_scenario(2, 2);
  sc.devices[0].cache[1] = 1;
  add_task(sc, 1, {1, 2}, 6.0, {1});
  add_task(sc, 2, {2}, 3.0);
  Assignment a = noncooperation_assignment(sc);
  DeviceTimes t1 = subtask_times(sc, a);
  EnergyBreakdown e1 = assignment_energy(sc, a);

  Scenario sc2 = sc;
  for (Device& d : sc2.devices) {
    d.down_cap *= 2;
    d.cpu_cap *= 2;
    d.up_cap *= 2;
  }
  DeviceTimes t2 = subtask_times(sc2, a);
  EnergyBreakdown e2 = assignment_energy(sc2, a);
  for (int n = 0; n < 2; ++n) {
    CHECK(t2.down[n] == doctest::Approx(t1.down[n] / 2));
    CHECK(t2.cpu[n] == doctest::Approx(t1.cpu[n] / 2));
    CHECK(t2.up[n] == doctest::Approx(t1.up[n] / 2));
  }
  for (int s = 0; s < 2; ++s) {
    CHECK(e2.down[s] == doctest::Approx(e1.down[s] / 2));
    CHECK(e2.cpu[s] == doctest::Approx(e1.cpu[s] / 2));
    CHECK(e2.up[s] == doctest::Approx(e1.up[s] / 2));
  }
}

TEST_CASE("model invariants: relabeling devices preserves total energy") {
  // Swap the two devices (and re-point tasks): totals must match.
  Scenario sc = blank_scenario(2, 1);
  sc.devices[0].c_cpu = 0.3;
  sc.devices[1].c_cpu = 1.1;
  sc.devices[1].cpu_cap = 4.0;
  add_task(sc, 1, {1}, 5.0);
  add_task(sc, 2, {}, 7.0);
  EnergyBreakdown e1 = assignment_energy(sc, noncooperation_assignment(sc));

  Scenario sw = sc;
  std::swap(sw.devices[0], sw.devices[1]);
  sw.devices[0].id = 1;
  sw.devices[1].id = 2;
  sw.devices[0].own_tasks = {2};
  sw.devices[1].own_tasks = {1};
  sw.tasks[0].owner = 2;
  sw.tasks[1].owner = 1;
  EnergyBreakdown e2 = assignment_energy(sw, noncooperation_assignment(sw));
  CHECK(e1.total == doctest::Approx(e2.total));
}

TEST_CASE("T^cpu equals tau^cpu of the single computing device") {
  Scenario sc = blank_scenario(3, 1);
  sc.devices[1].cpu_cap = 2.0;
  add_task(sc, 1, {}, 8.0);
  Assignment a = Assignment::zeros(sc);
  a.cpu(0, 1) = 1;
  DeviceTimes t = subtask_times(sc, a);
  TaskDelays d = worst_case_delays(sc, a);
  CHECK(d.cpu[0] == doctest::Approx(t.cpu[1]));
}

TEST_CASE("scenario JSON round-trip is the identity") {
  Scenario sc = blank_scenario(3, 2);
  sc.devices[0].cache[1] = 1;
  sc.devices[2].c_down = 2.75;
  Task& t1 = add_task(sc, 1, {1, 2}, 3.5, {1}, {2});
  t1.delay_down = 1.25;
  t1.type = TaskType::data_analysis;
  add_task(sc, 2, {2});
  const std::string text = scenario_to_json(sc);
  Scenario back = scenario_from_json(text);
  CHECK(back == sc);
  CHECK(scenario_to_json(back) == text);
}

TEST_CASE("scenario JSON encodes infinite delay bounds as \"inf\"") {
  Scenario sc = blank_scenario(1, 1);
  add_task(sc, 1, {1});
  const std::string text = scenario_to_json(sc);
  CHECK(text.find("\"inf\"") != std::string::npos);
  Scenario back = scenario_from_json(text);
  CHECK(back.tasks[0].delay_down == kInf);
}

TEST_CASE("scenario JSON parse errors are reported") {
  CHECK_THROWS_AS(scenario_from_json("{not json"), std::runtime_error);
  CHECK_THROWS_AS(scenario_from_json("{\"contents\":[]}"), std::runtime_error);
}

TEST_CASE("assignment JSON round-trip") {
  Scenario sc = blank_scenario(2, 1);
  add_task(sc, 1, {1}, 2.0);
  Assignment a = noncooperation_assignment(sc);
  a.zin(0, 0, 1) = 3;
  Assignment back = assignment_from_json(assignment_to_json(a));
  CHECK(back == a);
}
