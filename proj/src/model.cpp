#include "edge3c/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace edge3c {

namespace {

std::string fmt(const char* category, const std::string& detail) {
  return std::string(category) + ": " + detail;
}

bool is_binary_vec(const std::vector<uint8_t>& v) {
  return std::all_of(v.begin(), v.end(), [](uint8_t b) { return b <= 1; });
}

} // namespace

std::vector<int> D2DGraph::neighborhood(int n) const {
  std::set<int> out{n};
  for (const Edge& e : edges) {
    if (e.from == n) out.insert(e.to);
    if (e.to == n) out.insert(e.from);
  }
  return {out.begin(), out.end()};
}

bool D2DGraph::has_edge(int from, int to) const {
  return std::any_of(edges.begin(), edges.end(), [&](const Edge& e) {
    return e.from == from && e.to == to;
  });
}

Assignment Assignment::zeros(const Scenario& sc) {
  Assignment a;
  a.S = sc.S();
  a.K = sc.K();
  a.N = sc.N();
  a.E = sc.E();
  a.x_in.assign(static_cast<size_t>(a.S) * a.K * a.N, 0);
  a.x_down.assign(static_cast<size_t>(a.S) * a.K * a.N, 0);
  a.x_up.assign(static_cast<size_t>(a.S) * a.K * a.N, 0);
  a.x_cpu.assign(static_cast<size_t>(a.S) * a.N, 0);
  a.z_in.assign(static_cast<size_t>(a.S) * a.K * a.E, 0);
  a.z_up.assign(static_cast<size_t>(a.S) * a.K * a.E, 0);
  a.z_ca.assign(static_cast<size_t>(a.S) * a.K * a.E, 0);
  return a;
}

std::vector<std::string> validate_scenario(const Scenario& sc) {
  std::vector<std::string> out;
  const int N = sc.N(), S = sc.S(), K = sc.K();

  for (int k = 0; k < K; ++k) {
    const Content& c = sc.contents[k];
    if (c.id != k + 1)
      out.push_back(fmt("index", "content at position " + std::to_string(k) +
                                     " has id " + std::to_string(c.id)));
    if (!(c.size > 0))
      out.push_back(fmt("capacity", "content " + std::to_string(c.id) +
                                        " size must be positive"));
  }

  for (int n = 0; n < N; ++n) {
    const Device& d = sc.devices[n];
    const std::string dn = "device " + std::to_string(d.id);
    if (d.id != n + 1)
      out.push_back(fmt("index", "device at position " + std::to_string(n) +
                                     " has id " + std::to_string(d.id)));
    if (!(d.down_cap > 0)) out.push_back(fmt("capacity", dn + " down_cap must be positive"));
    if (!(d.cpu_cap > 0)) out.push_back(fmt("capacity", dn + " cpu_cap must be positive"));
    if (!(d.up_cap > 0)) out.push_back(fmt("capacity", dn + " up_cap must be positive"));
    if (d.c_down < 0 || d.c_cpu < 0 || d.c_up < 0)
      out.push_back(fmt("cost", dn + " energy coefficients must be nonnegative"));
    if (static_cast<int>(d.cache.size()) != K || !is_binary_vec(d.cache))
      out.push_back(fmt("cache", dn + " cache must be a binary vector of length K"));
    for (int t : d.own_tasks) {
      if (t < 1 || t > S)
        out.push_back(fmt("index", dn + " lists unknown task " + std::to_string(t)));
      else if (sc.tasks[t - 1].owner != d.id)
        out.push_back(fmt("index", dn + " lists task " + std::to_string(t) +
                                       " owned by another device"));
    }
  }

  for (int s = 0; s < S; ++s) {
    const Task& t = sc.tasks[s];
    const std::string tn = "task " + std::to_string(t.id);
    if (t.id != s + 1)
      out.push_back(fmt("index", "task at position " + std::to_string(s) +
                                     " has id " + std::to_string(t.id)));
    if (t.owner < 1 || t.owner > N) {
      out.push_back(fmt("index", tn + " has invalid owner"));
    } else {
      const auto& own = sc.devices[t.owner - 1].own_tasks;
      if (std::find(own.begin(), own.end(), t.id) == own.end())
        out.push_back(fmt("index", tn + " missing from owner's own_tasks"));
    }
    if (static_cast<int>(t.input.size()) != K || !is_binary_vec(t.input) ||
        static_cast<int>(t.upload.size()) != K || !is_binary_vec(t.upload) ||
        static_cast<int>(t.cache_out.size()) != K || !is_binary_vec(t.cache_out))
      out.push_back(fmt("task", tn + " demand vectors must be binary of length K"));
    if (t.cpu_demand < 0)
      out.push_back(fmt("task", tn + " cpu_demand must be nonnegative"));
    if (!(t.delay_down > 0) || !(t.delay_cpu > 0) || !(t.delay_up > 0))
      out.push_back(fmt("task", tn + " delay bounds must be positive"));
  }

  std::set<std::pair<int, int>> seen;
  for (const Edge& e : sc.graph.edges) {
    const std::string en =
        "edge " + std::to_string(e.from) + "->" + std::to_string(e.to);
    if (e.from < 1 || e.from > N || e.to < 1 || e.to > N)
      out.push_back(fmt("graph", en + " has invalid endpoint"));
    if (e.from == e.to) out.push_back(fmt("graph", en + " is a self-loop"));
    if (!(e.cap > 0)) out.push_back(fmt("capacity", en + " cap must be positive"));
    if (e.cost < 0) out.push_back(fmt("cost", en + " cost must be nonnegative"));
    if (!seen.insert({e.from, e.to}).second)
      out.push_back(fmt("graph", en + " is duplicated"));
  }

  // Assumption 1 requires evaluating the noncooperation schedule, which needs
  // a structurally sound scenario first.
  if (!out.empty()) return out;

  const Assignment nonco = noncooperation_assignment(sc);
  const TaskDelays d = worst_case_delays(sc, nonco);
  for (int s = 0; s < S; ++s) {
    const Task& t = sc.tasks[s];
    auto bad = [&](double got, double bound, const char* what) {
      std::ostringstream os;
      os << "task " << t.id << " noncooperation " << what << " time " << got
         << " exceeds bound " << bound;
      out.push_back(fmt("Assumption 1", os.str()));
    };
    if (d.down[s] > t.delay_down + kDelayTol) bad(d.down[s], t.delay_down, "downloading");
    if (d.cpu[s] > t.delay_cpu + kDelayTol) bad(d.cpu[s], t.delay_cpu, "computation");
    if (d.up[s] > t.delay_up + kDelayTol) bad(d.up[s], t.delay_up, "uploading");
  }
  return out;
}

Assignment noncooperation_assignment(const Scenario& sc) {
  Assignment a = Assignment::zeros(sc);
  for (int s = 0; s < sc.S(); ++s) {
    const Task& t = sc.tasks[s];
    const int u = t.owner - 1;
    a.cpu(s, u) = 1;
    for (int k = 0; k < sc.K(); ++k) {
      if (t.input[k]) {
        a.in(s, k, u) = 1;
        if (!sc.devices[u].cache[k]) a.down(s, k, u) = 1;
      }
      if (t.upload[k]) a.up(s, k, u) = 1;
    }
  }
  return a;
}

std::vector<std::string> check_feasible(const Scenario& sc, const Assignment& a) {
  const int N = sc.N(), S = sc.S(), K = sc.K(), E = sc.E();
  std::vector<std::string> out;
  std::set<std::string> hit;
  auto flag = [&](const char* id) {
    if (hit.insert(id).second) out.push_back(id);
  };

  // Variable domains (binary x, nonnegative integer z).
  const bool x_ok = is_binary_vec(a.x_in) && is_binary_vec(a.x_down) &&
                    is_binary_vec(a.x_up) && is_binary_vec(a.x_cpu);
  auto z_ok = [](const std::vector<int32_t>& z) {
    return std::all_of(z.begin(), z.end(), [](int32_t v) { return v >= 0; });
  };
  if (!x_ok || !z_ok(a.z_in) || !z_ok(a.z_up) || !z_ok(a.z_ca)) flag("domain");

  for (int s = 0; s < S; ++s) {
    const Task& t = sc.tasks[s];
    // Eq. (3): computation goes to exactly one device.
    int cpu_sum = 0;
    for (int n = 0; n < N; ++n) cpu_sum += a.cpu(s, n);
    if (cpu_sum != 1) flag("Eq.3");

    for (int k = 0; k < K; ++k) {
      // Eq. (4)/(5): each demanded content is fetched/uploaded exactly once.
      int in_sum = 0, up_sum = 0;
      for (int n = 0; n < N; ++n) {
        in_sum += a.in(s, k, n);
        up_sum += a.up(s, k, n);
      }
      if (in_sum != static_cast<int>(t.input[k])) flag("Eq.4");
      if (up_sum != static_cast<int>(t.upload[k])) flag("Eq.5");
    }
  }

  // Eq. (6): a fetching device must hold the content in cache or download it
  // (for some task).
  for (int k = 0; k < K; ++k) {
    for (int n = 0; n < N; ++n) {
      int downloads = 0;
      for (int s = 0; s < S; ++s) downloads += a.down(s, k, n);
      const int rhs = sc.devices[n].cache[k] + downloads;
      for (int s = 0; s < S; ++s)
        if (a.in(s, k, n) > rhs) flag("Eq.6");
    }
  }

  // Eq. (7)-(9): per-(s,k) flow balance of relayed copies at every device.
  for (int s = 0; s < S; ++s) {
    const Task& t = sc.tasks[s];
    for (int k = 0; k < K; ++k) {
      std::vector<int64_t> net_in(N, 0), net_up(N, 0), net_ca(N, 0);
      for (int e = 0; e < E; ++e) {
        const int i = sc.graph.edges[e].from - 1, j = sc.graph.edges[e].to - 1;
        net_in[j] += a.zin(s, k, e); net_in[i] -= a.zin(s, k, e);
        net_up[j] += a.zup(s, k, e); net_up[i] -= a.zup(s, k, e);
        net_ca[j] += a.zca(s, k, e); net_ca[i] -= a.zca(s, k, e);
      }
      const int din = t.input[k], dup = t.upload[k], dca = t.cache_out[k];
      for (int i = 0; i < N; ++i) {
        if (net_in[i] + a.in(s, k, i) * din != a.cpu(s, i) * din) flag("Eq.7");
        if (net_ca[i] + a.cpu(s, i) * dca != (sc.tasks[s].owner == i + 1 ? dca : 0))
          flag("Eq.8");
        if (net_up[i] + a.cpu(s, i) * dup != a.up(s, k, i) * dup) flag("Eq.9");
      }
    }
  }

  // Eq. (10): worst-case completion times within the delay bounds.
  const TaskDelays d = worst_case_delays(sc, a);
  for (int s = 0; s < S; ++s) {
    const Task& t = sc.tasks[s];
    if (d.down[s] > t.delay_down + kDelayTol ||
        d.cpu[s] > t.delay_cpu + kDelayTol ||
        d.up[s] > t.delay_up + kDelayTol)
      flag("Eq.10");
  }
  return out;
}

DeviceTimes subtask_times(const Scenario& sc, const Assignment& a) {
  const int N = sc.N(), S = sc.S(), K = sc.K();
  DeviceTimes t;
  t.down.assign(N, 0.0);
  t.cpu.assign(N, 0.0);
  t.up.assign(N, 0.0);
  for (int n = 0; n < N; ++n) {
    const Device& d = sc.devices[n];
    double bits_down = 0, bits_up = 0, cycles = 0;
    for (int s = 0; s < S; ++s) {
      for (int k = 0; k < K; ++k) {
        if (a.down(s, k, n)) bits_down += sc.contents[k].size;
        if (a.up(s, k, n)) bits_up += sc.contents[k].size;
      }
      if (a.cpu(s, n)) cycles += sc.tasks[s].cpu_demand;
    }
    t.down[n] = bits_down / d.down_cap;
    t.up[n] = bits_up / d.up_cap;
    t.cpu[n] = cycles / d.cpu_cap;
  }
  return t;
}

TaskDelays worst_case_delays(const Scenario& sc, const Assignment& a) {
  const int N = sc.N(), S = sc.S(), K = sc.K();
  const DeviceTimes tau = subtask_times(sc, a);
  TaskDelays d;
  d.down.assign(S, 0.0);
  d.cpu.assign(S, 0.0);
  d.up.assign(S, 0.0);
  for (int s = 0; s < S; ++s) {
    for (int n = 0; n < N; ++n) {
      // Eq. (13): only devices fetching at least one *uncached* input matter
      // (cache reads are instantaneous).
      bool waits_down = false, waits_up = false;
      for (int k = 0; k < K; ++k) {
        if (a.in(s, k, n) && !sc.devices[n].cache[k]) waits_down = true;
        if (a.up(s, k, n)) waits_up = true;
      }
      if (waits_down) d.down[s] = std::max(d.down[s], tau.down[n]);
      if (waits_up) d.up[s] = std::max(d.up[s], tau.up[n]);
      if (a.cpu(s, n)) d.cpu[s] += tau.cpu[n];
    }
  }
  return d;
}

EnergyBreakdown assignment_energy(const Scenario& sc, const Assignment& a) {
  const int N = sc.N(), S = sc.S(), K = sc.K(), E = sc.E();
  EnergyBreakdown e;
  e.down.assign(S, 0.0);
  e.cpu.assign(S, 0.0);
  e.up.assign(S, 0.0);
  e.d2d.assign(S, 0.0);
  e.task_total.assign(S, 0.0);
  for (int s = 0; s < S; ++s) {
    for (int n = 0; n < N; ++n) {
      const Device& d = sc.devices[n];
      for (int k = 0; k < K; ++k) {
        const double L = sc.contents[k].size;
        if (a.down(s, k, n)) e.down[s] += d.c_down * L / d.down_cap;
        if (a.up(s, k, n)) e.up[s] += d.c_up * L / d.up_cap;
      }
      if (a.cpu(s, n)) e.cpu[s] += d.c_cpu * sc.tasks[s].cpu_demand / d.cpu_cap;
    }
    for (int ed = 0; ed < E; ++ed) {
      const Edge& g = sc.graph.edges[ed];
      for (int k = 0; k < K; ++k) {
        const int copies = a.zin(s, k, ed) + a.zup(s, k, ed) + a.zca(s, k, ed);
        if (copies)
          e.d2d[s] += g.cost * copies * sc.contents[k].size / g.cap;
      }
    }
    e.task_total[s] = e.down[s] + e.cpu[s] + e.up[s] + e.d2d[s];
    e.total += e.task_total[s];
  }
  return e;
}

} // namespace edge3c
