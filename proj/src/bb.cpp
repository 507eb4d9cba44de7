#include "edge3c/bb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <queue>
#include <utility>
#include <vector>

namespace edge3c {

namespace {

constexpr double kPruneTol = 1e-9;
constexpr double kIntTol = 1e-6;

double dot_obj(const LpInstance& lp, const std::vector<double>& x) {
  double v = 0.0;
  for (int j = 0; j < lp.num_vars; ++j) v += lp.obj[j] * x[j];
  return v;
}

// Branching priority class: allocation binaries first, then indicator
// binaries, then routing integers.
int var_class(VarKind k) {
  switch (k) {
    case VarKind::x_in:
    case VarKind::x_down:
    case VarKind::x_up:
    case VarKind::x_cpu:
      return 0;
    case VarKind::y_down:
    case VarKind::y_up:
      return 1;
    default:
      return 2;
  }
}

} // namespace

std::vector<double> assignment_to_vector(const VarMap& vm, const Scenario& sc,
                                         const Assignment& a) {
  std::vector<double> v(static_cast<size_t>(vm.count()), 0.0);
  const int S = vm.S(), K = vm.K(), N = vm.N(), E = vm.E();
  // Combinations absent from the map must be unused by the assignment; a
  // nonzero value there would silently change the energy.
  auto set = [&](int idx, double val) {
    if (idx >= 0)
      v[idx] = val;
    else if (val != 0.0)
      throw std::invalid_argument("assignment uses a variable absent from the instance");
  };
  for (int s = 0; s < S; ++s) {
    for (int k = 0; k < K; ++k) {
      for (int n = 0; n < N; ++n) {
        set(vm.x_in(s, k, n), a.in(s, k, n));
        set(vm.x_down(s, k, n), a.down(s, k, n));
        set(vm.x_up(s, k, n), a.up(s, k, n));
      }
      for (int e = 0; e < E; ++e) {
        set(vm.z_in(s, k, e), a.zin(s, k, e));
        set(vm.z_up(s, k, e), a.zup(s, k, e));
        set(vm.z_ca(s, k, e), a.zca(s, k, e));
      }
    }
    for (int n = 0; n < N; ++n) set(vm.x_cpu(s, n), a.cpu(s, n));
  }
  if (vm.with_y()) {
    for (int s = 0; s < S; ++s) {
      for (int n = 0; n < N; ++n) {
        int fetches_uncached = 0;
        int uploads = 0;
        for (int k = 0; k < K; ++k) {
          if (a.in(s, k, n) && !sc.devices[n].cache[k]) fetches_uncached = 1;
          if (a.up(s, k, n)) uploads = 1;
        }
        set(vm.y_down(s, n), fetches_uncached);
        set(vm.y_up(s, n), uploads);
      }
    }
  }
  return v;
}

bool satisfies_instance(const LpInstance& lp, const std::vector<double>& x,
                        double tol) {
  if (static_cast<int>(x.size()) != lp.num_vars) return false;
  for (int j = 0; j < lp.num_vars; ++j) {
    if (x[j] < lp.lb[j] - tol || x[j] > lp.ub[j] + tol) return false;
  }
  for (const auto& row : lp.rows) {
    double v = 0.0;
    for (const auto& [j, c] : row.terms) v += c * x[j];
    if (v < row.lo - tol || v > row.hi + tol) return false;
  }
  return true;
}

BnbResult branch_and_bound(const MilpInstance& inst, const BnbOptions& opt) {
  const LpInstance& base = inst.lp;
  const int nv = base.num_vars;

  BnbResult res;
  res.objective = kInf;
  res.root_bound = -kInf;

  std::vector<double> incumbent;
  double incumbent_obj = kInf;
  if (opt.incumbent) {
    if (!satisfies_instance(base, *opt.incumbent))
      throw std::invalid_argument(
          "warm incumbent does not satisfy the instance");
    incumbent = *opt.incumbent;
    for (int j = 0; j < nv; ++j) {
      if (inst.integral[j]) {
        double r = std::round(incumbent[j]);
        if (std::abs(incumbent[j] - r) > kIntTol)
          throw std::invalid_argument("warm incumbent is not integral");
        incumbent[j] = r;
      }
    }
    incumbent_obj = dot_obj(base, incumbent);
  }

  // Each node records one variable-bound tightening relative to its parent;
  // the effective bounds of a node are gathered by walking the parent chain
  // (nearest override wins; records already store fully intersected bounds).
  // Nodes also carry their parent's optimal basis: the child differs by one
  // bound fixing, so it re-solves in a handful of repair pivots. The donor
  // is shared by both siblings and released once the node is processed.
  struct Warm {
    std::vector<int> basis;
    std::vector<ColStatus> status;
  };
  struct NodeRec {
    long parent;
    int var;
    double lb, ub;
    std::shared_ptr<const Warm> warm;
  };
  std::vector<NodeRec> arena;
  arena.push_back({-1, -1, 0.0, 0.0, nullptr}); // root

  // Best-bound search with newest-node tie-breaking, so equal bounds dive
  // depth-first. Entries: (parent bound, -node id).
  using QEntry = std::pair<double, long>;
  std::priority_queue<QEntry, std::vector<QEntry>, std::greater<QEntry>> pq;
  pq.push({-kInf, 0});

  LpInstance work = base;
  std::vector<char> seen(static_cast<size_t>(nv), 0);
  std::vector<int> touched;
  bool root_solved = false;
  bool hit_limit = false;

  while (!pq.empty()) {
    auto [bound, neg_id] = pq.top();
    pq.pop();
    const long id = -neg_id;
    const std::shared_ptr<const Warm> donor = std::move(arena[id].warm);
    arena[id].warm.reset();
    if (bound >= incumbent_obj - kPruneTol) continue;
    if (res.nodes >= opt.node_limit) {
      hit_limit = true;
      break;
    }

    // Load this node's bounds.
    for (int j : touched) {
      seen[j] = 0;
      work.lb[j] = base.lb[j];
      work.ub[j] = base.ub[j];
    }
    touched.clear();
    for (long t = id; t > 0; t = arena[t].parent) {
      const NodeRec& nr = arena[t];
      if (seen[nr.var]) continue;
      seen[nr.var] = 1;
      touched.push_back(nr.var);
      work.lb[nr.var] = nr.lb;
      work.ub[nr.var] = nr.ub;
    }

    LpSolution sol;
    if (donor) {
      SimplexOptions wopt = opt.lp;
      wopt.warm_basis = &donor->basis;
      wopt.warm_status = &donor->status;
      sol = simplex_solve(work, wopt);
      if (sol.status == LpStatus::IterationLimit)
        sol = simplex_solve(work, opt.lp); // retry cold before giving up
    } else {
      sol = simplex_solve(work, opt.lp);
    }
    ++res.nodes;
    res.lp_pivots += sol.pivots;
    if (sol.status == LpStatus::IterationLimit)
      throw std::runtime_error("node relaxation hit the pivot cap");
    if (!root_solved) {
      root_solved = true;
      res.root_bound =
          sol.status == LpStatus::Optimal ? sol.objective : kInf;
      if (sol.status == LpStatus::Infeasible && incumbent.empty()) {
        res.status = BnbStatus::Infeasible;
        return res;
      }
    }
    if (sol.status != LpStatus::Optimal) continue; // pruned by infeasibility
    if (sol.objective >= incumbent_obj - kPruneTol) continue;

    // Most fractional variable, allocation binaries first.
    int branch = -1, branch_cls = 3;
    double branch_frac = kIntTol;
    for (int j = 0; j < nv; ++j) {
      if (!inst.integral[j]) continue;
      double f = sol.x[j] - std::floor(sol.x[j]);
      double frac = std::min(f, 1.0 - f);
      if (frac <= kIntTol) continue;
      int cls = var_class(inst.vm.info(j).kind);
      if (cls < branch_cls ||
          (cls == branch_cls && frac > branch_frac + 1e-12)) {
        branch = j;
        branch_cls = cls;
        branch_frac = frac;
      }
    }

    if (branch < 0) {
      // Integral: candidate incumbent.
      std::vector<double> cand = sol.x;
      for (int j = 0; j < nv; ++j)
        if (inst.integral[j]) cand[j] = std::round(cand[j]);
      double obj = dot_obj(base, cand);
      if (obj < incumbent_obj - kPruneTol) {
        incumbent = std::move(cand);
        incumbent_obj = obj;
      }
      continue;
    }

    const double f = sol.x[branch];
    const double cur_lb = work.lb[branch];
    const double cur_ub = work.ub[branch];
    auto warm = std::make_shared<const Warm>(
        Warm{std::move(sol.basis), std::move(sol.col_status)});
    // Down child first, up child last: the up branch (allocation switched
    // on) is explored first among equal bounds.
    arena.push_back({id, branch, cur_lb, std::floor(f), warm});
    pq.push({sol.objective, -(static_cast<long>(arena.size()) - 1)});
    arena.push_back({id, branch, std::ceil(f), cur_ub, std::move(warm)});
    pq.push({sol.objective, -(static_cast<long>(arena.size()) - 1)});
  }

  if (!incumbent.empty()) {
    res.assignment = extract_assignment(inst.vm, incumbent);
    res.objective = incumbent_obj;
    res.status = hit_limit ? BnbStatus::NodeLimit : BnbStatus::Optimal;
  } else {
    res.status = hit_limit ? BnbStatus::NodeLimit : BnbStatus::Infeasible;
  }
  return res;
}

namespace {

struct Router {
  int N = 0, E = 0;
  // Per content: all-pairs min cost and next hop (-1 = unreachable).
  std::vector<std::vector<double>> dist; // [k][i*N+j]
  std::vector<std::vector<int>> nxt;     // [k][i*N+j]
  std::vector<int> eidx;                 // i*N+j -> edge index or -1

  explicit Router(const Scenario& sc) {
    N = sc.N();
    E = sc.E();
    const int K = sc.K();
    eidx.assign(static_cast<size_t>(N) * N, -1);
    for (int e = 0; e < E; ++e) {
      const Edge& ed = sc.graph.edges[e];
      eidx[(ed.from - 1) * N + (ed.to - 1)] = e;
    }
    dist.assign(K, {});
    nxt.assign(K, {});
    for (int k = 0; k < K; ++k) {
      auto& d = dist[k];
      auto& nx = nxt[k];
      d.assign(static_cast<size_t>(N) * N, kInf);
      nx.assign(static_cast<size_t>(N) * N, -1);
      for (int i = 0; i < N; ++i) {
        d[i * N + i] = 0.0;
        nx[i * N + i] = i;
      }
      for (int e = 0; e < E; ++e) {
        const Edge& ed = sc.graph.edges[e];
        int i = ed.from - 1, j = ed.to - 1;
        double w = ed.cost * sc.contents[k].size / ed.cap;
        if (w < d[i * N + j]) {
          d[i * N + j] = w;
          nx[i * N + j] = j;
        }
      }
      for (int m = 0; m < N; ++m)
        for (int i = 0; i < N; ++i)
          for (int j = 0; j < N; ++j) {
            double via = d[i * N + m] + d[m * N + j];
            if (via < d[i * N + j]) {
              d[i * N + j] = via;
              nx[i * N + j] = nx[i * N + m];
            }
          }
    }
  }

  // Adds one unit of (s,k) flow from `a` to `b` into `z` (layout S*K*E).
  // Returns false when unreachable.
  bool route(std::vector<int32_t>& z, int s, int K, int k, int a, int b) const {
    if (a == b) return true;
    if (nxt[k][a * N + b] < 0) return false;
    int cur = a;
    while (cur != b) {
      int hop = nxt[k][cur * N + b];
      z[(static_cast<size_t>(s) * K + k) * E + eidx[cur * N + hop]] += 1;
      cur = hop;
    }
    return true;
  }
};

} // namespace

BruteForceResult enumerate_bruteforce(const Scenario& sc) {
  const int N = sc.N(), S = sc.S(), K = sc.K();
  if (N > 4 || S > 4 || K > 3)
    throw TooLarge("bruteforce oracle limited to N<=4, S<=4, K<=3");

  // One device slot per computation, per demanded input, per demanded upload.
  struct Slot {
    int s;
    int kind; // 0 = cpu, 1 = input fetch, 2 = upload
    int k;    // content index for kinds 1 and 2
  };
  std::vector<Slot> slots;
  for (int s = 0; s < S; ++s) {
    slots.push_back({s, 0, -1});
    for (int k = 0; k < K; ++k)
      if (sc.tasks[s].input[k]) slots.push_back({s, 1, k});
    for (int k = 0; k < K; ++k)
      if (sc.tasks[s].upload[k]) slots.push_back({s, 2, k});
  }
  double est = std::pow(static_cast<double>(N),
                        static_cast<double>(slots.size()));
  if (est > 2e6)
    throw TooLarge("bruteforce oracle: too many combinations");

  Router router(sc);
  BruteForceResult best;
  best.objective = kInf;
  bool found = false;

  std::vector<int> choice(slots.size(), 0);
  Assignment a = Assignment::zeros(sc);
  const int E = sc.E();

  auto evaluate = [&]() {
    ++best.combinations;
    a = Assignment::zeros(sc);
    for (size_t i = 0; i < slots.size(); ++i) {
      const Slot& sl = slots[i];
      int n = choice[i];
      if (sl.kind == 0)
        a.cpu(sl.s, n) = 1;
      else if (sl.kind == 1)
        a.in(sl.s, sl.k, n) = 1;
      else
        a.up(sl.s, sl.k, n) = 1;
    }
    // Canonical shared downloads: the lowest-indexed fetching task holds the
    // download bit for each (content, device) needing one.
    for (int k = 0; k < K; ++k)
      for (int n = 0; n < N; ++n) {
        if (sc.devices[n].cache[k]) continue;
        for (int s = 0; s < S; ++s)
          if (a.in(s, k, n)) {
            a.down(s, k, n) = 1;
            break;
          }
      }
    // Route every unit flow along its cheapest path.
    for (int s = 0; s < S; ++s) {
      int c = -1;
      for (int n = 0; n < N; ++n)
        if (a.cpu(s, n)) c = n;
      const Task& t = sc.tasks[s];
      for (int k = 0; k < K; ++k) {
        if (t.input[k]) {
          int f = -1;
          for (int n = 0; n < N; ++n)
            if (a.in(s, k, n)) f = n;
          if (!router.route(a.z_in, s, K, k, f, c)) return;
        }
        if (t.upload[k]) {
          int u = -1;
          for (int n = 0; n < N; ++n)
            if (a.up(s, k, n)) u = n;
          if (!router.route(a.z_up, s, K, k, c, u)) return;
        }
        if (t.cache_out[k]) {
          if (!router.route(a.z_ca, s, K, k, c, t.owner - 1)) return;
        }
      }
    }
    TaskDelays delays = worst_case_delays(sc, a);
    for (int s = 0; s < S; ++s) {
      const Task& t = sc.tasks[s];
      if (delays.down[s] > t.delay_down + kDelayTol) return;
      if (delays.cpu[s] > t.delay_cpu + kDelayTol) return;
      if (delays.up[s] > t.delay_up + kDelayTol) return;
    }
    double obj = assignment_energy(sc, a).total;
    if (obj < best.objective - 1e-12 || !found) {
      found = true;
      best.objective = obj;
      best.assignment = a;
    }
  };

  // Odometer enumeration over all slot choices.
  while (true) {
    evaluate();
    size_t i = 0;
    while (i < slots.size() && ++choice[i] == N) {
      choice[i] = 0;
      ++i;
    }
    if (i == slots.size()) break;
  }
  (void)E;

  if (!found) throw std::runtime_error("no feasible assignment exists");
  return best;
}

} // namespace edge3c
