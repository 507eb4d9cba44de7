#include "edge3c/milp.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace edge3c {

VarMap::VarMap(int S, int K, int N, int E, bool with_y)
    : S_(S), K_(K), N_(N), E_(E), with_y_(with_y) {
  const std::vector<uint8_t> all(static_cast<size_t>(S) * K, 1);
  init(all, all, all);
}

VarMap::VarMap(const Scenario& sc, bool with_y)
    : S_(sc.S()), K_(sc.K()), N_(sc.N()), E_(sc.E()), with_y_(with_y) {
  std::vector<uint8_t> in(static_cast<size_t>(S_) * K_), up(in.size()), ca(in.size());
  for (int s = 0; s < S_; ++s)
    for (int k = 0; k < K_; ++k) {
      in[s * K_ + k] = sc.tasks[s].input[k];
      up[s * K_ + k] = sc.tasks[s].upload[k];
      ca[s * K_ + k] = sc.tasks[s].cache_out[k];
    }
  init(in, up, ca);
}

void VarMap::init(const std::vector<uint8_t>& live_in, const std::vector<uint8_t>& live_up,
                  const std::vector<uint8_t>& live_ca) {
  skn_ = S_ * K_ * N_;
  sn_ = S_ * N_;
  ske_ = S_ * K_ * E_;
  zbase_ = 3 * skn_ + sn_;
  ybase_ = zbase_ + 3 * ske_;
  t_.assign(static_cast<size_t>(ybase_) + 2 * sn_, -1);
  info_.clear();
  int next = 0;
  auto add = [&](int slot, VarKind kind, int s, int k, int n, int e) {
    t_[slot] = next++;
    info_.push_back({kind, s, k, n, e});
  };
  auto skn_block = [&](int base, VarKind kind, const std::vector<uint8_t>& live) {
    for (int s = 0; s < S_; ++s)
      for (int k = 0; k < K_; ++k) {
        if (!live[s * K_ + k]) continue;
        for (int n = 0; n < N_; ++n) add(base + (s * K_ + k) * N_ + n, kind, s, k, n, -1);
      }
  };
  auto ske_block = [&](int base, VarKind kind, const std::vector<uint8_t>& live) {
    for (int s = 0; s < S_; ++s)
      for (int k = 0; k < K_; ++k) {
        if (!live[s * K_ + k]) continue;
        for (int e = 0; e < E_; ++e) add(base + (s * K_ + k) * E_ + e, kind, s, k, -1, e);
      }
  };
  skn_block(0, VarKind::x_in, live_in);
  skn_block(skn_, VarKind::x_down, live_in); // downloads serve fetched inputs
  skn_block(2 * skn_, VarKind::x_up, live_up);
  for (int s = 0; s < S_; ++s)
    for (int n = 0; n < N_; ++n) add(3 * skn_ + s * N_ + n, VarKind::x_cpu, s, -1, n, -1);
  ske_block(zbase_, VarKind::z_in, live_in);
  ske_block(zbase_ + ske_, VarKind::z_up, live_up);
  ske_block(zbase_ + 2 * ske_, VarKind::z_ca, live_ca);
  if (with_y_) {
    auto any_of_task = [&](const std::vector<uint8_t>& live, int s) {
      for (int k = 0; k < K_; ++k)
        if (live[s * K_ + k]) return true;
      return false;
    };
    for (int s = 0; s < S_; ++s) {
      if (!any_of_task(live_in, s)) continue;
      for (int n = 0; n < N_; ++n) add(ybase_ + s * N_ + n, VarKind::y_down, s, -1, n, -1);
    }
    for (int s = 0; s < S_; ++s) {
      if (!any_of_task(live_up, s)) continue;
      for (int n = 0; n < N_; ++n) add(ybase_ + sn_ + s * N_ + n, VarKind::y_up, s, -1, n, -1);
    }
  }
  count_ = next;
}

std::string VarMap::name(int idx) const {
  const VarInfo v = info(idx);
  std::ostringstream os;
  switch (v.kind) {
    case VarKind::x_in: os << "xin"; break;
    case VarKind::x_down: os << "xdown"; break;
    case VarKind::x_up: os << "xup"; break;
    case VarKind::x_cpu: os << "xcpu"; break;
    case VarKind::z_in: os << "zin"; break;
    case VarKind::z_up: os << "zup"; break;
    case VarKind::z_ca: os << "zca"; break;
    case VarKind::y_down: os << "ydown"; break;
    case VarKind::y_up: os << "yup"; break;
  }
  os << "_s" << v.s + 1;
  if (v.k >= 0) os << "_k" << v.k + 1;
  if (v.n >= 0) os << "_n" << v.n + 1;
  if (v.e >= 0) os << "_e" << v.e + 1;
  return os.str();
}

ControlParams ControlParams::all_ones(const Scenario& sc) {
  ControlParams c;
  c.S = sc.S();
  c.K = sc.K();
  c.N = sc.N();
  c.in.assign(static_cast<size_t>(c.S) * c.K * c.N, 1);
  c.cpu.assign(static_cast<size_t>(c.S) * c.N, 1);
  c.up.assign(static_cast<size_t>(c.S) * c.K * c.N, 1);
  return c;
}

BigMValues big_m_values(const Scenario& sc) {
  BigMValues m;
  double down = 0, cpu = 0, up = 0;
  bool any_down = false, any_cpu = false, any_up = false;
  for (const Task& t : sc.tasks) {
    if (t.delay_down != kInf) { down = std::max(down, t.delay_down); any_down = true; }
    if (t.delay_cpu != kInf) { cpu = std::max(cpu, t.delay_cpu); any_cpu = true; }
    if (t.delay_up != kInf) { up = std::max(up, t.delay_up); any_up = true; }
  }
  if (any_down) m.down.assign(sc.N(), down);
  if (any_cpu) m.cpu.assign(sc.N(), cpu);
  if (any_up) m.up.assign(sc.N(), up);
  return m;
}

namespace {

// Objective: sum of task energies as a linear function of x and z.
std::vector<double> energy_objective(const Scenario& sc, const VarMap& vm) {
  std::vector<double> obj(vm.count(), 0.0);
  for (int j = 0; j < vm.count(); ++j) {
    const VarInfo v = vm.info(j);
    switch (v.kind) {
      case VarKind::x_down: {
        const Device& d = sc.devices[v.n];
        obj[j] = d.c_down * sc.contents[v.k].size / d.down_cap;
        break;
      }
      case VarKind::x_up: {
        const Device& d = sc.devices[v.n];
        obj[j] = d.c_up * sc.contents[v.k].size / d.up_cap;
        break;
      }
      case VarKind::x_cpu: {
        const Device& d = sc.devices[v.n];
        obj[j] = d.c_cpu * sc.tasks[v.s].cpu_demand / d.cpu_cap;
        break;
      }
      case VarKind::z_in:
      case VarKind::z_up:
      case VarKind::z_ca: {
        const Edge& g = sc.graph.edges[v.e];
        obj[j] = g.cost * sc.contents[v.k].size / g.cap;
        break;
      }
      default:
        break; // x_in and y carry no energy
    }
  }
  return obj;
}

// Shared core: variables, bounds with zero-demand fixing, objective, and the
// structural constraints Eq. (3)-(9).
MilpInstance build_core(const Scenario& sc, bool with_y) {
  const int S = sc.S(), K = sc.K(), N = sc.N(), E = sc.E();
  MilpInstance mi;
  // The VarMap itself is demand-trimmed: undemanded (s,k) combinations have
  // no variables at all, so no zero-fixing pass is needed.
  mi.vm = VarMap(sc, with_y);
  const VarMap& vm = mi.vm;
  LpInstance& lp = mi.lp;
  lp.num_vars = vm.count();
  lp.obj = energy_objective(sc, vm);
  lp.lb.assign(lp.num_vars, 0.0);
  lp.ub.assign(lp.num_vars, 1.0);
  mi.integral.assign(lp.num_vars, 1);

  const double zmax = z_cap(sc);
  for (int j = 0; j < lp.num_vars; ++j) {
    const VarKind kind = vm.info(j).kind;
    if (kind == VarKind::z_in || kind == VarKind::z_up || kind == VarKind::z_ca)
      lp.ub[j] = zmax;
  }

  // Eq. (3): each computation on exactly one device.
  for (int s = 0; s < S; ++s) {
    LinearConstraint row;
    for (int n = 0; n < N; ++n) row.terms.push_back({vm.x_cpu(s, n), 1.0});
    row.lo = row.hi = 1.0;
    lp.rows.push_back(std::move(row));
  }

  // Eq. (4)/(5): each demanded content fetched/uploaded exactly once.
  for (int s = 0; s < S; ++s) {
    const Task& t = sc.tasks[s];
    for (int k = 0; k < K; ++k) {
      if (t.input[k]) {
        LinearConstraint row;
        for (int n = 0; n < N; ++n) row.terms.push_back({vm.x_in(s, k, n), 1.0});
        row.lo = row.hi = 1.0;
        lp.rows.push_back(std::move(row));
      }
      if (t.upload[k]) {
        LinearConstraint row;
        for (int n = 0; n < N; ++n) row.terms.push_back({vm.x_up(s, k, n), 1.0});
        row.lo = row.hi = 1.0;
        lp.rows.push_back(std::move(row));
      }
    }
  }

  // Eq. (6): fetching needs the content cached or downloaded at that device.
  // Rows exist only where the cache bit is 0 (otherwise vacuous).
  for (int s = 0; s < S; ++s) {
    const Task& t = sc.tasks[s];
    for (int k = 0; k < K; ++k) {
      if (!t.input[k]) continue;
      for (int n = 0; n < N; ++n) {
        if (sc.devices[n].cache[k]) continue;
        LinearConstraint row;
        row.terms.push_back({vm.x_in(s, k, n), 1.0});
        for (int s2 = 0; s2 < S; ++s2)
          if (sc.tasks[s2].input[k]) row.terms.push_back({vm.x_down(s2, k, n), -1.0});
        row.lo = -kInf;
        row.hi = 0.0;
        lp.rows.push_back(std::move(row));
      }
    }
  }

  // Eq. (7)-(9): flow balance per demanded (s,k) at every device. The z terms
  // are identical in all three families; only the source/sink terms differ.
  auto flow_rows = [&](int s, int k, auto z_of, auto extra_terms, auto rhs_of) {
    for (int i = 0; i < N; ++i) {
      LinearConstraint row;
      for (int e = 0; e < E; ++e) {
        const Edge& g = sc.graph.edges[e];
        if (g.to == i + 1) row.terms.push_back({z_of(e), 1.0});
        if (g.from == i + 1) row.terms.push_back({z_of(e), -1.0});
      }
      extra_terms(row, i);
      row.lo = row.hi = rhs_of(i);
      lp.rows.push_back(std::move(row));
    }
  };
  for (int s = 0; s < S; ++s) {
    const Task& t = sc.tasks[s];
    const int owner = t.owner - 1;
    for (int k = 0; k < K; ++k) {
      if (t.input[k]) {
        // in-flow: sources x_in, sink x_cpu
        flow_rows(
            s, k, [&](int e) { return vm.z_in(s, k, e); },
            [&](LinearConstraint& row, int i) {
              row.terms.push_back({vm.x_in(s, k, i), 1.0});
              row.terms.push_back({vm.x_cpu(s, i), -1.0});
            },
            [](int) { return 0.0; });
      }
      if (t.cache_out[k]) {
        // cache-out flow: source x_cpu, sink the owner.
        flow_rows(
            s, k, [&](int e) { return vm.z_ca(s, k, e); },
            [&](LinearConstraint& row, int i) {
              row.terms.push_back({vm.x_cpu(s, i), 1.0});
            },
            [&](int i) { return i == owner ? 1.0 : 0.0; });
      }
      if (t.upload[k]) {
        // up-flow: source x_cpu, sink x_up.
        flow_rows(
            s, k, [&](int e) { return vm.z_up(s, k, e); },
            [&](LinearConstraint& row, int i) {
              row.terms.push_back({vm.x_cpu(s, i), 1.0});
              row.terms.push_back({vm.x_up(s, k, i), -1.0});
            },
            [](int) { return 0.0; });
      }
    }
  }
  return mi;
}

} // namespace

MilpInstance build_opt_linear(const Scenario& sc) {
  {
    const auto violations = validate_scenario(sc);
    if (!violations.empty())
      throw std::invalid_argument("invalid scenario: " + violations.front());
  }
  const int S = sc.S(), K = sc.K(), N = sc.N();
  MilpInstance mi = build_core(sc, /*with_y=*/true);
  const VarMap& vm = mi.vm;
  LpInstance& lp = mi.lp;
  const BigMValues big_m = big_m_values(sc);

  // The delay rows need M large enough that a row with its y switched off can
  // never bind for any feasible schedule; take the worst-case device busy
  // time, which may exceed the largest delay bound.
  std::vector<double> worst_down(N, 0.0), worst_cpu(N, 0.0), worst_up(N, 0.0);
  for (int n = 0; n < N; ++n) {
    double bits_down = 0, bits_up = 0, cycles = 0;
    for (int s = 0; s < S; ++s) {
      const Task& t = sc.tasks[s];
      for (int k = 0; k < K; ++k) {
        if (t.input[k]) bits_down += sc.contents[k].size;
        if (t.upload[k]) bits_up += sc.contents[k].size;
      }
      cycles += t.cpu_demand;
    }
    worst_down[n] = bits_down / sc.devices[n].down_cap;
    worst_cpu[n] = cycles / sc.devices[n].cpu_cap;
    worst_up[n] = bits_up / sc.devices[n].up_cap;
  }

  // y-link rows. A task with no inputs (or no uploads) has no y variables at
  // all; one whose inputs are all cached at a device gets the corresponding
  // y_down fixed to zero instead of vacuous rows.
  for (int s = 0; s < S; ++s) {
    const Task& t = sc.tasks[s];
    const bool has_inputs =
        std::any_of(t.input.begin(), t.input.end(), [](uint8_t b) { return b != 0; });
    const bool has_uploads =
        std::any_of(t.upload.begin(), t.upload.end(), [](uint8_t b) { return b != 0; });
    for (int n = 0; n < N; ++n) {
      // Eq. (18)/(19): y_down = 1 exactly when n fetches an uncached input of s.
      if (has_inputs) {
        std::vector<int> down_ks;
        for (int k = 0; k < K; ++k)
          if (t.input[k] && !sc.devices[n].cache[k]) down_ks.push_back(k);
        if (down_ks.empty()) {
          lp.ub[vm.y_down(s, n)] = 0.0;
        } else {
          LinearConstraint cap; // y <= sum_k x_in (the "min" split, with y <= 1 as a bound)
          cap.terms.push_back({vm.y_down(s, n), 1.0});
          for (int k : down_ks) cap.terms.push_back({vm.x_in(s, k, n), -1.0});
          cap.lo = -kInf;
          cap.hi = 0.0;
          lp.rows.push_back(std::move(cap));
          for (int k : down_ks) {
            LinearConstraint lo; // y >= x_in
            lo.terms.push_back({vm.y_down(s, n), 1.0});
            lo.terms.push_back({vm.x_in(s, k, n), -1.0});
            lo.lo = 0.0;
            lo.hi = kInf;
            lp.rows.push_back(std::move(lo));
          }
        }
      }
      // Eq. (24): same linking for uploads.
      if (has_uploads) {
        LinearConstraint cap;
        cap.terms.push_back({vm.y_up(s, n), 1.0});
        for (int k = 0; k < K; ++k)
          if (t.upload[k]) cap.terms.push_back({vm.x_up(s, k, n), -1.0});
        cap.lo = -kInf;
        cap.hi = 0.0;
        lp.rows.push_back(std::move(cap));
        for (int k = 0; k < K; ++k) {
          if (!t.upload[k]) continue;
          LinearConstraint lo;
          lo.terms.push_back({vm.y_up(s, n), 1.0});
          lo.terms.push_back({vm.x_up(s, k, n), -1.0});
          lo.lo = 0.0;
          lo.hi = kInf;
          lp.rows.push_back(std::move(lo));
        }
      }
    }
  }

  // Big-M delay rows Eq. (20)-(22), one per (task, device) with finite bound.
  // A task without inputs (or uploads) has no y switch; its download (or
  // upload) delay row would be vacuous by choice of M, so it is dropped.
  for (int s = 0; s < S; ++s) {
    const Task& t = sc.tasks[s];
    for (int n = 0; n < N; ++n) {
      const Device& d = sc.devices[n];
      if (t.delay_down != kInf && !big_m.down.empty() && vm.y_down(s, n) >= 0) {
        const double M = std::max(big_m.down[n], worst_down[n]);
        LinearConstraint row; // tau_down_n + M y <= Tbar + M
        for (int s2 = 0; s2 < S; ++s2)
          for (int k = 0; k < K; ++k)
            if (sc.tasks[s2].input[k])
              row.terms.push_back({vm.x_down(s2, k, n), sc.contents[k].size / d.down_cap});
        row.terms.push_back({vm.y_down(s, n), M});
        row.lo = -kInf;
        row.hi = t.delay_down + M;
        lp.rows.push_back(std::move(row));
      }
      if (t.delay_cpu != kInf && !big_m.cpu.empty()) {
        const double M = std::max(big_m.cpu[n], worst_cpu[n]);
        LinearConstraint row; // tau_cpu_n + M x_cpu(s,n) <= Tbar + M
        for (int s2 = 0; s2 < S; ++s2) {
          double coef = sc.tasks[s2].cpu_demand / d.cpu_cap;
          if (s2 == s) coef += M;
          if (coef != 0.0) row.terms.push_back({vm.x_cpu(s2, n), coef});
        }
        row.lo = -kInf;
        row.hi = t.delay_cpu + M;
        lp.rows.push_back(std::move(row));
      }
      if (t.delay_up != kInf && !big_m.up.empty() && vm.y_up(s, n) >= 0) {
        const double M = std::max(big_m.up[n], worst_up[n]);
        LinearConstraint row; // tau_up_n + M y <= Tbar + M
        for (int s2 = 0; s2 < S; ++s2)
          for (int k = 0; k < K; ++k)
            if (sc.tasks[s2].upload[k])
              row.terms.push_back({vm.x_up(s2, k, n), sc.contents[k].size / d.up_cap});
        row.terms.push_back({vm.y_up(s, n), M});
        row.lo = -kInf;
        row.hi = t.delay_up + M;
        lp.rows.push_back(std::move(row));
      }
    }
  }
  return mi;
}

MilpInstance build_opt_relax(const Scenario& sc, const ControlParams& ctrl) {
  {
    const auto violations = validate_scenario(sc);
    if (!violations.empty())
      throw std::invalid_argument("invalid scenario: " + violations.front());
  }
  const int S = sc.S(), K = sc.K(), N = sc.N();
  // The masks must never exclude the noncooperation point.
  for (int s = 0; s < S; ++s) {
    const Task& t = sc.tasks[s];
    const int u = t.owner - 1;
    if (!ctrl.n_cpu(s, u))
      throw std::invalid_argument("controls mask task " + std::to_string(s + 1) +
                                  " computation away from its owner");
    for (int k = 0; k < K; ++k) {
      if (t.input[k] && !ctrl.n_in(s, k, u))
        throw std::invalid_argument("controls mask task " + std::to_string(s + 1) +
                                    " input away from its owner");
      if (t.upload[k] && !ctrl.n_up(s, k, u))
        throw std::invalid_argument("controls mask task " + std::to_string(s + 1) +
                                    " upload away from its owner");
    }
  }

  MilpInstance mi = build_core(sc, /*with_y=*/false);
  mi.integral.assign(mi.lp.num_vars, 0);
  // Eq. (23): the controls act as variable upper bounds. Masks on undemanded
  // combinations have no variable to act on.
  for (int s = 0; s < S; ++s)
    for (int n = 0; n < N; ++n) {
      if (!ctrl.n_cpu(s, n)) mi.lp.ub[mi.vm.x_cpu(s, n)] = 0.0;
      for (int k = 0; k < K; ++k) {
        const int ji = mi.vm.x_in(s, k, n);
        if (ji >= 0 && !ctrl.n_in(s, k, n)) mi.lp.ub[ji] = 0.0;
        const int ju = mi.vm.x_up(s, k, n);
        if (ju >= 0 && !ctrl.n_up(s, k, n)) mi.lp.ub[ju] = 0.0;
      }
    }
  return mi;
}

Assignment extract_assignment(const VarMap& vm, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != vm.count())
    throw std::invalid_argument("solution vector length does not match VarMap");
  Assignment a;
  a.S = vm.S();
  a.K = vm.K();
  a.N = vm.N();
  a.E = vm.E();
  a.x_in.resize(static_cast<size_t>(a.S) * a.K * a.N);
  a.x_down.resize(a.x_in.size());
  a.x_up.resize(a.x_in.size());
  a.x_cpu.resize(static_cast<size_t>(a.S) * a.N);
  a.z_in.resize(static_cast<size_t>(a.S) * a.K * a.E);
  a.z_up.resize(a.z_in.size());
  a.z_ca.resize(a.z_in.size());

  auto rounded = [&](int idx) {
    if (idx < 0) return int64_t{0}; // combination carries no variable
    const double v = x[idx];
    const double r = std::round(v);
    if (std::abs(v - r) > 1e-6)
      throw FractionalSolution("variable " + vm.name(idx) + " = " +
                               std::to_string(v) + " is not integral");
    return static_cast<int64_t>(r);
  };
  for (int s = 0; s < a.S; ++s) {
    for (int n = 0; n < a.N; ++n)
      a.cpu(s, n) = static_cast<uint8_t>(rounded(vm.x_cpu(s, n)));
    for (int k = 0; k < a.K; ++k) {
      for (int n = 0; n < a.N; ++n) {
        a.in(s, k, n) = static_cast<uint8_t>(rounded(vm.x_in(s, k, n)));
        a.down(s, k, n) = static_cast<uint8_t>(rounded(vm.x_down(s, k, n)));
        a.up(s, k, n) = static_cast<uint8_t>(rounded(vm.x_up(s, k, n)));
      }
      for (int e = 0; e < a.E; ++e) {
        a.zin(s, k, e) = static_cast<int32_t>(rounded(vm.z_in(s, k, e)));
        a.zup(s, k, e) = static_cast<int32_t>(rounded(vm.z_up(s, k, e)));
        a.zca(s, k, e) = static_cast<int32_t>(rounded(vm.z_ca(s, k, e)));
      }
    }
  }
  return a;
}

void write_lp_format(const MilpInstance& inst, std::ostream& os) {
  const LpInstance& lp = inst.lp;
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::string(buf);
  };
  os << "\\ exported scheduling instance\n";
  os << "Minimize\n obj:";
  bool first = true;
  for (int j = 0; j < lp.num_vars; ++j) {
    if (lp.obj[j] == 0.0) continue;
    const double c = lp.obj[j];
    os << (c < 0 ? " - " : (first ? " " : " + ")) << num(std::abs(c)) << " "
       << inst.vm.name(j);
    first = false;
  }
  if (first) os << " 0 " << inst.vm.name(0);
  os << "\nSubject To\n";
  int ridx = 0;
  for (const LinearConstraint& row : lp.rows) {
    std::string lhs;
    bool f2 = true;
    for (const auto& [v, c] : row.terms) {
      lhs += (c < 0 ? " - " : (f2 ? " " : " + "));
      lhs += num(std::abs(c)) + " " + inst.vm.name(v);
      f2 = false;
    }
    if (row.lo == row.hi) {
      os << " c" << ridx++ << ":" << lhs << " = " << num(row.lo) << "\n";
    } else {
      if (row.hi != kInf) os << " c" << ridx++ << ":" << lhs << " <= " << num(row.hi) << "\n";
      if (row.lo != -kInf) os << " c" << ridx++ << ":" << lhs << " >= " << num(row.lo) << "\n";
    }
  }
  os << "Bounds\n";
  for (int j = 0; j < lp.num_vars; ++j)
    os << " " << num(lp.lb[j]) << " <= " << inst.vm.name(j) << " <= " << num(lp.ub[j])
       << "\n";
  bool any_int = std::any_of(inst.integral.begin(), inst.integral.end(),
                             [](uint8_t b) { return b != 0; });
  if (any_int) {
    os << "Generals\n";
    int col = 0;
    for (int j = 0; j < lp.num_vars; ++j) {
      if (!inst.integral[j]) continue;
      os << " " << inst.vm.name(j);
      if (++col % 8 == 0) os << "\n";
    }
    if (col % 8 != 0) os << "\n";
  }
  os << "End\n";
}

} // namespace edge3c
