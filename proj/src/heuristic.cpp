#include "edge3c/heuristic.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <utility>
#include <vector>

#include <json.hpp>

namespace edge3c {

namespace {

bool fetches_uncached(const Scenario& sc, const Assignment& a, int s, int n) {
  for (int k = 0; k < sc.K(); ++k)
    if (a.in(s, k, n) && !sc.devices[n].cache[k]) return true;
  return false;
}

bool uploads_at(const Scenario& sc, const Assignment& a, int s, int n) {
  for (int k = 0; k < sc.K(); ++k)
    if (a.up(s, k, n)) return true;
  return false;
}

std::string bit_name(const char* fam, int s, int k, int n) {
  std::string out = fam;
  out += "_s" + std::to_string(s + 1);
  if (k >= 0) out += "_k" + std::to_string(k + 1);
  out += "_n" + std::to_string(n + 1);
  return out;
}

// Tasks owned by a device, by 0-based device index.
std::vector<std::vector<int>> tasks_by_owner(const Scenario& sc) {
  std::vector<std::vector<int>> owned(sc.N());
  for (int s = 0; s < sc.S(); ++s)
    owned[sc.tasks[s].owner - 1].push_back(s);
  return owned;
}

// One prevention sweep (tasks in index order, violated families only).
// Returns the number of control bits flipped; collects flip names and the
// violated task ids when requested.
int sweep(const Scenario& sc, const Assignment& a, ControlParams& c,
          std::vector<std::string>* names, std::vector<int>* violated) {
  const int S = sc.S(), N = sc.N(), K = sc.K();
  DeviceTimes tau = subtask_times(sc, a);
  TaskDelays delay = worst_case_delays(sc, a);
  std::vector<std::vector<int>> owned = tasks_by_owner(sc);
  int flips = 0;

  for (int s = 0; s < S; ++s) {
    const Task& t = sc.tasks[s];
    bool task_violated = false;

    if (delay.down[s] > t.delay_down + kDelayTol) {
      task_violated = true;
      // Slowest device among those the task fetches uncached content from.
      int nhat = -1;
      double worst = 0.0;
      for (int n = 0; n < N; ++n)
        if (fetches_uncached(sc, a, s, n) && tau.down[n] > worst) {
          worst = tau.down[n];
          nhat = n;
        }
      if (nhat >= 0) {
        // Tasks sharing a fetched content at nhat with one of nhat's own
        // tasks are off limits: preventing them would break that sharing.
        std::vector<char> off_limits(S, 0);
        for (int s2 = 0; s2 < S; ++s2)
          for (int shat : owned[nhat]) {
            for (int k = 0; k < K; ++k)
              if (a.in(shat, k, nhat) && a.in(s2, k, nhat)) {
                off_limits[s2] = 1;
                break;
              }
            if (off_limits[s2]) break;
          }
        std::vector<std::pair<double, int>> cands;
        for (int s2 = 0; s2 < S; ++s2)
          if (!off_limits[s2] && fetches_uncached(sc, a, s2, nhat))
            cands.push_back({sc.tasks[s2].delay_down, s2});
        std::sort(cands.begin(), cands.end());
        for (const auto& [bound, sbar] : cands) {
          // Prevent every fetch, by any task, of the contents sbar fetches
          // uncached at nhat. Skip candidates whose bits are already spent.
          int local = 0;
          for (int k = 0; k < K; ++k) {
            if (!a.in(sbar, k, nhat) || sc.devices[nhat].cache[k]) continue;
            for (int s2 = 0; s2 < S; ++s2)
              if (a.in(s2, k, nhat) && c.n_in(s2, k, nhat)) {
                c.n_in(s2, k, nhat) = 0;
                ++local;
                if (names) names->push_back(bit_name("nin", s2, k, nhat));
              }
          }
          if (local > 0) {
            flips += local;
            break;
          }
        }
      }
    }

    if (delay.cpu[s] > t.delay_cpu + kDelayTol) {
      task_violated = true;
      int nhat = -1;
      double worst = 0.0;
      for (int n = 0; n < N; ++n)
        if (a.cpu(s, n) && tau.cpu[n] > worst) {
          worst = tau.cpu[n];
          nhat = n;
        }
      if (nhat >= 0) {
        std::vector<std::pair<double, int>> cands;
        for (int s2 = 0; s2 < S; ++s2)
          if (a.cpu(s2, nhat) && sc.tasks[s2].owner - 1 != nhat)
            cands.push_back({sc.tasks[s2].delay_cpu, s2});
        std::sort(cands.begin(), cands.end());
        for (const auto& [bound, sbar] : cands)
          if (c.n_cpu(sbar, nhat)) {
            c.n_cpu(sbar, nhat) = 0;
            ++flips;
            if (names) names->push_back(bit_name("ncpu", sbar, -1, nhat));
            break;
          }
      }
    }

    if (delay.up[s] > t.delay_up + kDelayTol) {
      task_violated = true;
      int nhat = -1;
      double worst = 0.0;
      for (int n = 0; n < N; ++n)
        if (uploads_at(sc, a, s, n) && tau.up[n] > worst) {
          worst = tau.up[n];
          nhat = n;
        }
      if (nhat >= 0) {
        std::vector<std::pair<double, int>> cands;
        for (int s2 = 0; s2 < S; ++s2)
          if (uploads_at(sc, a, s2, nhat) && sc.tasks[s2].owner - 1 != nhat)
            cands.push_back({sc.tasks[s2].delay_up, s2});
        std::sort(cands.begin(), cands.end());
        for (const auto& [bound, sbar] : cands) {
          // Progress requires flipping a bit the task actually uses; the
          // whole row of upload bits is then spent at once.
          bool progress = false;
          for (int k = 0; k < K; ++k)
            if (a.up(sbar, k, nhat) && c.n_up(sbar, k, nhat)) progress = true;
          if (!progress) continue;
          for (int k = 0; k < K; ++k)
            if (c.n_up(sbar, k, nhat)) {
              c.n_up(sbar, k, nhat) = 0;
              ++flips;
              if (names) names->push_back(bit_name("nup", sbar, k, nhat));
            }
          break;
        }
      }
    }

    if (task_violated && violated) violated->push_back(t.id);
  }
  return flips;
}

} // namespace

ControlParams prevention_step(const Scenario& sc, const Assignment& a,
                              const ControlParams& ctrl) {
  ControlParams next = ctrl;
  if (sweep(sc, a, next, nullptr, nullptr) == 0)
    throw NoPreventableTask(
        "no allocation can be prevented despite a delay violation");
  return next;
}

HeuristicResult run_heuristic(const Scenario& sc, const HeuristicOptions& opt) {
  {
    auto issues = validate_scenario(sc);
    if (!issues.empty())
      throw std::invalid_argument("invalid scenario: " + issues.front());
  }
  const int S = sc.S(), N = sc.N();
  const long sweep_cap = static_cast<long>(S) * std::max(0, N - 1);

  HeuristicResult res;
  res.controls = ControlParams::all_ones(sc);

  double last_objective = 0.0;
  auto solve_current = [&]() {
    MilpInstance mi = build_opt_relax(sc, res.controls);
    LpSolution sol = simplex_solve(mi.lp, opt.lp);
    if (sol.status != LpStatus::Optimal)
      throw std::runtime_error("relaxation solve failed");
    double frac = 0.0;
    for (double v : sol.x) frac = std::max(frac, std::abs(v - std::round(v)));
    res.max_fractionality = std::max(res.max_fractionality, frac);
    last_objective = sol.objective;
    return extract_assignment(mi.vm, sol.x);
  };

  auto finish = [&](Assignment a, int sweeps, bool fallback) {
    if (fallback) {
      a = noncooperation_assignment(sc);
      res.fallback_noncooperation = true;
      if (opt.trace)
        *opt.trace << nlohmann::json{{"iteration", sweeps},
                                     {"fallback", true}}
                          .dump()
                   << '\n';
    }
    res.assignment = std::move(a);
    res.energy = assignment_energy(sc, res.assignment).total;
    res.iterations = std::max(1, sweeps);
    return res;
  };

  Assignment a = solve_current();
  int sweeps = 0;
  while (true) {
    TaskDelays delay = worst_case_delays(sc, a);
    bool violated = false;
    for (int s = 0; s < S && !violated; ++s) {
      const Task& t = sc.tasks[s];
      violated = delay.down[s] > t.delay_down + kDelayTol ||
                 delay.cpu[s] > t.delay_cpu + kDelayTol ||
                 delay.up[s] > t.delay_up + kDelayTol;
    }
    if (!violated) return finish(std::move(a), sweeps, false);
    if (sweeps >= sweep_cap) return finish({}, sweeps, true);

    std::vector<std::string> flipped;
    std::vector<int> violated_ids;
    if (sweep(sc, a, res.controls, &flipped, &violated_ids) == 0)
      return finish({}, sweeps, true);
    a = solve_current();
    ++sweeps;
    if (opt.trace)
      *opt.trace << nlohmann::json{{"iteration", sweeps},
                                   {"violated", violated_ids},
                                   {"flipped", flipped},
                                   {"objective", last_objective}}
                        .dump()
                 << '\n';
  }
}

} // namespace edge3c
