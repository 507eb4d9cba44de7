#include "edge3c/scengen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "edge3c/analysis.hpp"

namespace edge3c {

namespace {

void check_config(const GenConfig& cfg) {
  if (cfg.n_devices < 1)
    throw std::invalid_argument("generate: need at least one device");
  if (cfg.n_contents < 1)
    throw std::invalid_argument("generate: need at least one content");
  if (!(cfg.edge_prob > 0.0) || cfg.edge_prob > 1.0)
    throw std::invalid_argument("generate: edge_prob outside (0,1]");
  if (!(cfg.sigma > 0.0))
    throw std::invalid_argument("generate: sigma must be positive");
  if (cfg.beta && *cfg.beta < 0.0)
    throw std::invalid_argument("generate: beta must be nonnegative");
  double weight_sum = 0.0;
  for (double w : cfg.task_mix) {
    if (w < 0.0)
      throw std::invalid_argument("generate: negative task-mix weight");
    weight_sum += w;
  }
  if (std::abs(weight_sum - 1.0) > 1e-9)
    throw std::invalid_argument("generate: task-mix weights must sum to 1");
  if (!(cfg.slack_lo >= 0.0) || cfg.slack_hi < cfg.slack_lo)
    throw std::invalid_argument("generate: bad delay-slack range");
  for (const ParamRange* r :
       {&cfg.ranges.q_down, &cfg.ranges.q_up, &cfg.ranges.q_d2d,
        &cfg.ranges.q_cpu, &cfg.ranges.d_cpu, &cfg.ranges.c_down,
        &cfg.ranges.c_cpu, &cfg.ranges.c_up, &cfg.ranges.c_d2d})
    if (!(r->lo < r->hi))
      throw std::invalid_argument("generate: parameter range needs lo < hi");
}

// Draws from a truncated normal centered on the range with a spread that
// scales as sigma * width / 10, by bisecting the cdf at a uniform variate.
class TruncatedSampler {
 public:
  TruncatedSampler(const ParamRange& r, double sigma)
      : dist_(truncated_normal(0.5 * (r.lo + r.hi),
                               sigma * (r.hi - r.lo) / 10.0, r.lo, r.hi)) {}

  double operator()(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double u = unit(rng);
    double lo = dist_.lo, hi = dist_.hi;
    for (int i = 0; i < 60; ++i) {
      const double mid = 0.5 * (lo + hi);
      (dist_.cdf(mid) < u ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }

 private:
  CapacityDistribution dist_;
};

Scenario attempt(const GenConfig& cfg, std::mt19937_64& rng) {
  const int n = cfg.n_devices;
  const int k = cfg.n_contents;
  const auto& pr = cfg.ranges;
  TruncatedSampler q_down(pr.q_down, cfg.sigma), q_up(pr.q_up, cfg.sigma),
      q_d2d(pr.q_d2d, cfg.sigma), q_cpu(pr.q_cpu, cfg.sigma),
      d_cpu(pr.d_cpu, cfg.sigma), c_down(pr.c_down, cfg.sigma),
      c_cpu(pr.c_cpu, cfg.sigma), c_up(pr.c_up, cfg.sigma),
      c_d2d(pr.c_d2d, cfg.sigma);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // Picks `want` distinct indices from {0, ..., pool-1}.
  auto pick = [&rng](int pool, int want) {
    std::vector<int> ids(pool);
    std::iota(ids.begin(), ids.end(), 0);
    for (int j = 0; j < want; ++j) {
      std::uniform_int_distribution<int> rest(j, pool - 1);
      std::swap(ids[j], ids[rest(rng)]);
    }
    ids.resize(want);
    return ids;
  };

  Scenario sc;
  sc.contents.resize(k);
  for (int i = 0; i < k; ++i) sc.contents[i] = {i + 1, 1.0};

  sc.devices.resize(n);
  const int cache_max = (k + 3) / 4;
  for (int i = 0; i < n; ++i) {
    Device& d = sc.devices[i];
    d.id = i + 1;
    d.down_cap = q_down(rng);
    d.up_cap = q_up(rng);
    d.cpu_cap = q_cpu(rng);
    d.c_down = c_down(rng);
    d.c_cpu = c_cpu(rng);
    d.c_up = c_up(rng);
    d.cache.assign(k, 0);
    std::uniform_int_distribution<int> cache_count(0, cache_max);
    for (int id : pick(k, cache_count(rng))) d.cache[id] = 1;
  }

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (unit(rng) >= cfg.edge_prob) continue;
      const double cap = q_d2d(rng);
      double cost_ij, cost_ji;
      if (cfg.beta) {
        cost_ij = *cfg.beta * sc.devices[i].c_down;
        cost_ji = *cfg.beta * sc.devices[j].c_down;
      } else {
        cost_ij = c_d2d(rng);
        cost_ji = c_d2d(rng);
      }
      sc.graph.edges.push_back({i + 1, j + 1, cap, cost_ij});
      sc.graph.edges.push_back({j + 1, i + 1, cap, cost_ji});
    }
  }

  sc.tasks.resize(n);
  const int popular = (k + 2) / 3; // most-shared content pool
  for (int s = 0; s < n; ++s) {
    Task& t = sc.tasks[s];
    t.id = s + 1;
    t.owner = s + 1;
    sc.devices[s].own_tasks.push_back(t.id);
    t.input.assign(k, 0);
    t.upload.assign(k, 0);
    t.cache_out.assign(k, 0);

    const double u = unit(rng);
    if (u < cfg.task_mix[0]) {
      t.type = TaskType::downloading;
      std::uniform_int_distribution<int> cnt(1, std::min(3, k));
      for (int id : pick(k, cnt(rng))) {
        t.input[id] = 1;
        t.cache_out[id] = 1;
      }
    } else if (u < cfg.task_mix[0] + cfg.task_mix[1]) {
      t.type = TaskType::content_sharing;
      std::uniform_int_distribution<int> cnt(1, std::min(3, popular));
      for (int id : pick(popular, cnt(rng))) {
        t.input[id] = 1;
        t.cache_out[id] = 1;
      }
    } else {
      t.type = TaskType::data_analysis;
      std::uniform_int_distribution<int> cnt(1, std::min(3, k));
      for (int id : pick(k, cnt(rng))) t.input[id] = 1;
      t.cpu_demand = d_cpu(rng);
      for (int id : pick(k, cnt(rng))) t.cache_out[id] = 1;
    }
  }

  // Delay bounds anchor to the noncooperation times so that schedule stays
  // admissible whenever the slack is at least one. A family with zero
  // noncooperation time has nothing to bound and stays unconstrained.
  const Assignment nonco = noncooperation_assignment(sc);
  const TaskDelays base = worst_case_delays(sc, nonco);
  std::uniform_real_distribution<double> slack(cfg.slack_lo, cfg.slack_hi);
  auto bound = [&](double t) { return t > 0.0 ? t * slack(rng) : kInf; };
  for (int s = 0; s < n; ++s) {
    sc.tasks[s].delay_down = bound(base.down[s]);
    sc.tasks[s].delay_cpu = bound(base.cpu[s]);
    sc.tasks[s].delay_up = bound(base.up[s]);
  }
  return sc;
}

} // namespace

Scenario generate(const GenConfig& cfg) {
  check_config(cfg);
  std::mt19937_64 rng(cfg.seed);
  std::string first_failure;
  for (int tries = 0; tries < 100; ++tries) {
    Scenario sc = attempt(cfg, rng);
    const auto errors = validate_scenario(sc);
    if (errors.empty()) return sc;
    if (first_failure.empty()) first_failure = errors.front();
  }
  throw RetryExhausted("generate: 100 attempts failed scenario validation (" +
                       first_failure + ")");
}

Scenario restrict_cooperation(const Scenario& sc, CoopMode mode) {
  if (mode == CoopMode::ThreeC) return sc;
  std::vector<std::set<TaskType>> kinds(sc.N());
  for (const Task& t : sc.tasks) kinds[t.owner - 1].insert(t.type);
  Scenario out = sc;
  out.graph.edges.clear();
  for (const Edge& e : sc.graph.edges)
    if (kinds[e.from - 1] == kinds[e.to - 1]) out.graph.edges.push_back(e);
  return out;
}

} // namespace edge3c
