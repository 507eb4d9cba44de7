#pragma once

// Shared scenario builders for the test suite.

#include <random>
#include <vector>

#include "edge3c/model.hpp"

namespace testutil {

// N devices (caps down/cpu/up = 10/10/10, unit energy costs, empty caches),
// K unit-size contents, a full directed mesh with cap 50 / cost 0.1, no tasks.
inline edge3c::Scenario blank_scenario(int N, int K) {
  edge3c::Scenario sc;
  for (int k = 1; k <= K; ++k) sc.contents.push_back({k, 1.0});
  for (int n = 1; n <= N; ++n) {
    edge3c::Device d;
    d.id = n;
    d.down_cap = d.cpu_cap = d.up_cap = 10.0;
    d.cache.assign(K, 0);
    d.c_down = d.c_cpu = d.c_up = 1.0;
    sc.devices.push_back(std::move(d));
  }
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j)
      if (i != j) sc.graph.edges.push_back({i, j, 50.0, 0.1});
  return sc;
}

inline edge3c::Task& add_task(edge3c::Scenario& sc, int owner,
                              std::vector<int> input_ids = {},
                              double cpu = 0.0,
                              std::vector<int> upload_ids = {},
                              std::vector<int> cache_out_ids = {}) {
  edge3c::Task t;
  t.id = static_cast<int>(sc.tasks.size()) + 1;
  t.owner = owner;
  const int K = sc.K();
  t.input.assign(K, 0);
  t.upload.assign(K, 0);
  t.cache_out.assign(K, 0);
  for (int k : input_ids) t.input[k - 1] = 1;
  for (int k : upload_ids) t.upload[k - 1] = 1;
  for (int k : cache_out_ids) t.cache_out[k - 1] = 1;
  t.cpu_demand = cpu;
  sc.tasks.push_back(std::move(t));
  sc.devices[owner - 1].own_tasks.push_back(sc.tasks.back().id);
  return sc.tasks.back();
}

// Small randomized-but-valid scenarios for oracle comparison (N, S in
// {2,3}, K in {2,3} by default). Delay bounds are drawn as multiples of the
// noncooperation delays so Assumption 1 holds; `bound_p` is the probability
// that a nonzero family gets a finite bound.
inline edge3c::Scenario random_scenario(unsigned seed, int max_n = 3,
                                        double bound_p = 0.6) {
  std::mt19937 rng(seed);
  auto real = [&](double a, double b) {
    return std::uniform_real_distribution<double>(a, b)(rng);
  };
  auto pick = [&](int a, int b) {
    return std::uniform_int_distribution<int>(a, b)(rng);
  };

  const int n = pick(2, max_n), k = pick(2, 3), s = pick(2, 3);
  edge3c::Scenario sc = blank_scenario(n, k);
  for (auto& c : sc.contents) c.size = real(0.5, 3.0);
  for (auto& d : sc.devices) {
    d.down_cap = real(2.0, 10.0);
    d.cpu_cap = real(2.0, 10.0);
    d.up_cap = real(2.0, 10.0);
    d.c_down = real(0.1, 2.0);
    d.c_cpu = real(0.1, 1.5);
    d.c_up = real(0.1, 2.0);
    for (auto& bit : d.cache) bit = real(0.0, 1.0) < 0.3 ? 1 : 0;
  }
  for (auto& e : sc.graph.edges) {
    e.cost = real(0.01, 0.5);
    e.cap = real(10.0, 50.0);
  }

  for (int i = 0; i < s; ++i) {
    std::vector<int> inputs;
    for (int c = 1; c <= k; ++c)
      if (static_cast<int>(inputs.size()) < 2 && real(0.0, 1.0) < 0.5)
        inputs.push_back(c);
    std::vector<int> uploads;
    if (real(0.0, 1.0) < 0.3) uploads.push_back(pick(1, k));
    std::vector<int> outs;
    if (real(0.0, 1.0) < 0.3) outs.push_back(pick(1, k));
    add_task(sc, pick(1, n), inputs, real(1.0, 8.0), uploads, outs);
  }

  edge3c::Assignment nonco = edge3c::noncooperation_assignment(sc);
  edge3c::TaskDelays base = edge3c::worst_case_delays(sc, nonco);
  for (int i = 0; i < s; ++i) {
    auto bound = [&](double t) {
      if (t <= 0.0 || real(0.0, 1.0) > bound_p) return edge3c::kInf;
      return t * real(1.1, 2.0);
    };
    sc.tasks[i].delay_down = bound(base.down[i]);
    sc.tasks[i].delay_cpu = bound(base.cpu[i]);
    sc.tasks[i].delay_up = bound(base.up[i]);
  }
  return sc;
}

} // namespace testutil
