#include "edge3c/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace edge3c {

namespace {

constexpr double kInfBound = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-9;  // minimum |alpha| to accept as pivot
constexpr double kDropTol = 1e-12;  // eta entries below this are dropped
constexpr double kDegenTol = 1e-9;  // step sizes below this count degenerate

using VarState = ColStatus; // internal name for the public column status

// One Gauss-Jordan elimination step in product form: the operator that maps
// the (already transformed) pivot column to the unit vector e_p.
struct Eta {
  int p = -1;
  double diag = 1.0;                          // 1 / alpha_p
  std::vector<std::pair<int, double>> off;    // -alpha_i / alpha_p, i != p
};

class Simplex {
 public:
  Simplex(const LpInstance& inst, const SimplexOptions& opt)
      : inst_(inst), opt_(opt), n_(inst.num_vars),
        m_(static_cast<int>(inst.rows.size())) {
    build_columns();
  }

  LpSolution run() {
    bool warm = opt_.warm_basis && opt_.warm_status && load_warm_basis();
    if (!warm) setup_initial_basis();
    LpSolution sol;
    for (int attempt = 0; attempt < 3; ++attempt) {
      if (need_phase1()) {
        const LpStatus st = iterate(/*phase1=*/true);
        if (st != LpStatus::Optimal) return finish(st);
        if (phase1_objective() > opt_.feas_tol) {
          // Incremental updates drift; recompute before giving up, and never
          // report infeasibility off a warm basis without a cold re-check.
          factorize();
          compute_basics();
          if (phase1_objective() <= opt_.feas_tol) {
            freeze_artificials();
          } else if (warm) {
            warm = false;
            reset_to_initial_basis();
            continue;
          } else {
            return finish(LpStatus::Infeasible);
          }
        } else {
          freeze_artificials();
        }
      }
      const LpStatus st = iterate(/*phase1=*/false);
      if (st != LpStatus::Optimal) return finish(st);
      factorize();
      compute_basics();
      if (primal_feasible()) return finish(LpStatus::Optimal);
      // Numerical drift or a basis repair broke feasibility; start over from
      // the all-logical basis.
      reset_to_initial_basis();
    }
    return finish(LpStatus::IterationLimit);
  }

 private:
  const LpInstance& inst_;
  const SimplexOptions& opt_;
  int n_ = 0, m_ = 0;

  // Column-major matrix over structurals [0,n), logicals [n, n+m), and
  // artificials [n+m, ...): rows of "a.x - s (+/- t) = 0".
  std::vector<int> col_ptr_, col_row_;
  std::vector<double> col_val_;
  std::vector<double> lb_, ub_;  // per column
  std::vector<VarState> state_;
  std::vector<double> x_;
  std::vector<int> basic_;       // column index per basis position (row)
  std::vector<Eta> etas_;
  long updates_since_refactor_ = 0;
  long pivots_ = 0;
  long degenerate_pivots_ = 0;
  int scan_pos_ = 0;     // rotating partial-pricing cursor
  long eta_nnz_ = 0;     // nonzeros pushed since the last refactorization
  long base_nnz_ = 0;    // nonzeros in the fresh factor itself
  // Rows whose basic variable is their own logical factor into a plain sign
  // flip ahead of every eta; storing them as per-row flags instead of
  // thousands of diagonal etas keeps btran/ftran traversal short.
  std::vector<uint8_t> basis_neg_;
  bool any_neg_ = false;
  std::vector<double> work_, y_;

  int ncols() const { return static_cast<int>(lb_.size()); }
  bool is_artificial(int j) const { return j >= n_ + m_; }
  bool fixed(int j) const { return lb_[j] == ub_[j]; }

  void build_columns() {
    // Transpose the row-wise constraints into columns for the structurals,
    // then append one logical unit column (-e_r) per row.
    std::vector<int> counts(n_, 0);
    for (const LinearConstraint& row : inst_.rows)
      for (const auto& [v, c] : row.terms) {
        if (v < 0 || v >= n_) throw std::invalid_argument("constraint references unknown variable");
        (void)c;
        ++counts[v];
      }
    col_ptr_.assign(n_ + m_ + 1, 0);
    for (int j = 0; j < n_; ++j) col_ptr_[j + 1] = col_ptr_[j] + counts[j];
    for (int r = 0; r < m_; ++r) col_ptr_[n_ + r + 1] = col_ptr_[n_ + r] + 1;
    col_row_.resize(col_ptr_.back());
    col_val_.resize(col_ptr_.back());
    std::vector<int> fill(n_, 0);
    for (int r = 0; r < m_; ++r)
      for (const auto& [v, c] : inst_.rows[r].terms) {
        const int at = col_ptr_[v] + fill[v]++;
        col_row_[at] = r;
        col_val_[at] = c;
      }
    for (int r = 0; r < m_; ++r) {
      col_row_[col_ptr_[n_ + r]] = r;
      col_val_[col_ptr_[n_ + r]] = -1.0;
    }

    lb_ = inst_.lb;
    ub_ = inst_.ub;
    lb_.resize(n_ + m_);
    ub_.resize(n_ + m_);
    for (int r = 0; r < m_; ++r) {
      lb_[n_ + r] = inst_.rows[r].lo;
      ub_[n_ + r] = inst_.rows[r].hi;
    }
    x_.assign(n_ + m_, 0.0);
    state_.assign(n_ + m_, VarState::AtLb);
    work_.assign(m_, 0.0);
    y_.assign(m_, 0.0);
  }

  void append_artificial(int row, double sign) {
    col_ptr_.push_back(static_cast<int>(col_row_.size()) + 1);
    col_row_.push_back(row);
    col_val_.push_back(sign);
    lb_.push_back(0.0);
    ub_.push_back(kInfBound);
    state_.push_back(VarState::Basic);
    x_.push_back(0.0);
  }

  void reset_to_initial_basis() {
    // Drop all artificial columns and rebuild the trivial basis.
    col_ptr_.resize(n_ + m_ + 1);
    col_row_.resize(col_ptr_.back());
    col_val_.resize(col_ptr_.back());
    lb_.resize(n_ + m_);
    ub_.resize(n_ + m_);
    state_.resize(n_ + m_);
    x_.resize(n_ + m_);
    for (int r = 0; r < m_; ++r) {
      lb_[n_ + r] = inst_.rows[r].lo;
      ub_[n_ + r] = inst_.rows[r].hi;
    }
    setup_initial_basis();
  }

  // Adopts a caller-provided basis: nonbasic variables sit on their donor
  // bound and basics are solved for. Out-of-bounds basics are left for the
  // phase-1 repair. Returns false when the donor cannot be used as-is.
  bool load_warm_basis() {
    std::vector<int> wb = *opt_.warm_basis;
    std::vector<ColStatus> ws = *opt_.warm_status;
    if (static_cast<int>(wb.size()) != m_ ||
        static_cast<int>(ws.size()) != n_ + m_)
      return false;
    // A degenerate artificial may still sit in the donor basis; swap in the
    // row's own logical instead.
    for (int r = 0; r < m_; ++r)
      if (wb[r] >= n_ + m_) {
        wb[r] = n_ + r;
        ws[n_ + r] = ColStatus::Basic;
      }
    std::vector<uint8_t> used(n_ + m_, 0);
    int basics = 0;
    for (int j = 0; j < n_ + m_; ++j)
      if (ws[j] == ColStatus::Basic) ++basics;
    if (basics != m_) return false;
    for (int j : wb) {
      if (j < 0 || j >= n_ + m_ || used[j] || ws[j] != ColStatus::Basic)
        return false;
      used[j] = 1;
    }
    for (int j = 0; j < n_ + m_; ++j) {
      if (ws[j] == ColStatus::Basic) continue;
      // A donor bound may have vanished (never the case for branch fixings,
      // which only tighten); flip to the other bound or give up.
      if (ws[j] == ColStatus::AtLb && lb_[j] == -kInfBound)
        ws[j] = ColStatus::AtUb;
      if (ws[j] == ColStatus::AtUb && ub_[j] == kInfBound) {
        if (lb_[j] == -kInfBound) return false; // free column
        ws[j] = ColStatus::AtLb;
      }
      x_[j] = (ws[j] == ColStatus::AtLb) ? lb_[j] : ub_[j];
    }
    state_.assign(ws.begin(), ws.end());
    basic_ = wb;
    factorize();
    compute_basics();
    return true;
  }

  void setup_initial_basis() {
    for (int j = 0; j < n_; ++j) {
      if (lb_[j] == -kInfBound && ub_[j] == kInfBound)
        throw std::invalid_argument("free structural variables are not supported");
      if (lb_[j] != -kInfBound) {
        state_[j] = VarState::AtLb;
        x_[j] = lb_[j];
      } else {
        state_[j] = VarState::AtUb;
        x_[j] = ub_[j];
      }
    }
    basic_.resize(m_);
    for (int r = 0; r < m_; ++r) {
      basic_[r] = n_ + r;
      state_[n_ + r] = VarState::Basic;
    }
    factorize();
    compute_basics();
    add_artificials_for_violations();
  }

  // Swap an artificial into the basis of every row whose logical value lies
  // outside its bounds, parking the logical at the violated bound.
  void add_artificials_for_violations() {
    bool added = false;
    for (int r = 0; r < m_; ++r) {
      const int j = basic_[r];
      // Only repair rows whose basic variable is their own logical; a general
      // out-of-bounds basic is handled by the phase-1 objective instead.
      if (j != n_ + r) continue;
      const double v = x_[j];
      if (v < lb_[j] - opt_.feas_tol) {
        state_[j] = VarState::AtLb;
        x_[j] = lb_[j];
        append_artificial(r, +1.0);
        basic_[r] = ncols() - 1;
        added = true;
      } else if (v > ub_[j] + opt_.feas_tol) {
        state_[j] = VarState::AtUb;
        x_[j] = ub_[j];
        append_artificial(r, -1.0);
        basic_[r] = ncols() - 1;
        added = true;
      }
    }
    if (added) {
      factorize();
      compute_basics();
    }
  }

  bool need_phase1() const {
    for (int r = 0; r < m_; ++r) {
      const int j = basic_[r];
      if (is_artificial(j) && !fixed(j)) return true;
      if (x_[j] < lb_[j] - opt_.feas_tol || x_[j] > ub_[j] + opt_.feas_tol)
        return true;
    }
    return false;
  }

  double phase1_objective() const {
    double s = 0.0;
    for (int j = n_ + m_; j < ncols(); ++j) s += std::max(0.0, x_[j]);
    for (int r = 0; r < m_; ++r) {
      const int j = basic_[r];
      if (is_artificial(j)) continue;
      if (lb_[j] != -kInfBound) s += std::max(0.0, lb_[j] - x_[j]);
      if (ub_[j] != kInfBound) s += std::max(0.0, x_[j] - ub_[j]);
    }
    return s;
  }

  void freeze_artificials() {
    for (int j = n_ + m_; j < ncols(); ++j) {
      lb_[j] = 0.0;
      ub_[j] = 0.0;
      if (state_[j] != VarState::Basic) x_[j] = 0.0;
    }
  }

  bool primal_feasible() const {
    for (int r = 0; r < m_; ++r) {
      const int j = basic_[r];
      if (x_[j] < lb_[j] - opt_.feas_tol || x_[j] > ub_[j] + opt_.feas_tol)
        return false;
    }
    return true;
  }

  // Phase-1 prices the composite infeasibility: artificials count fully and
  // an out-of-bounds basic contributes its violation (sign pushes it back
  // into range). These costs track the current point, so they are
  // recomputed on every pricing pass.
  double cost_of(int j, bool phase1) const {
    if (phase1) {
      if (is_artificial(j)) return 1.0;
      if (x_[j] > ub_[j] + opt_.feas_tol) return 1.0;
      if (x_[j] < lb_[j] - opt_.feas_tol) return -1.0;
      return 0.0;
    }
    return j < n_ ? inst_.obj[j] : 0.0;
  }

  // --- factorization and solves -------------------------------------------

  void scatter_column(int j, std::vector<double>& w,
                      std::vector<int>* touched = nullptr) const {
    for (int t = col_ptr_[j]; t < col_ptr_[j + 1]; ++t) {
      if (touched && w[col_row_[t]] == 0.0) touched->push_back(col_row_[t]);
      w[col_row_[t]] += col_val_[t];
    }
  }

  // `touched` (when given) collects every index this pass writes to, so the
  // caller can reset and scan w sparsely.
  void ftran(std::vector<double>& w, std::vector<int>* touched = nullptr) const {
    if (any_neg_)
      for (int r = 0; r < m_; ++r)
        if (basis_neg_[r]) w[r] = -w[r];
    for (const Eta& e : etas_) {
      const double t = w[e.p];
      if (t == 0.0) continue;
      w[e.p] = e.diag * t;
      for (const auto& [i, v] : e.off) {
        if (touched && w[i] == 0.0) touched->push_back(i);
        w[i] += v * t;
      }
    }
  }

  void btran(std::vector<double>& y) const {
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      double s = it->diag * y[it->p];
      for (const auto& [i, v] : it->off) s += v * y[i];
      y[it->p] = s;
    }
    if (any_neg_)
      for (int r = 0; r < m_; ++r)
        if (basis_neg_[r]) y[r] = -y[r];
  }

  void push_eta(const std::vector<double>& w, int p) {
    Eta e;
    e.p = p;
    e.diag = 1.0 / w[p];
    for (int i = 0; i < m_; ++i) {
      if (i == p || w[i] == 0.0) continue;
      const double v = -w[i] * e.diag;
      if (std::abs(v) > kDropTol) e.off.push_back({i, v});
    }
    eta_nnz_ += 1 + static_cast<long>(e.off.size());
    etas_.push_back(std::move(e));
  }

  // As push_eta, but reading only the (sorted, deduplicated) nonzero index
  // set of w instead of scanning every row.
  void push_eta_sparse(const std::vector<double>& w, const std::vector<int>& idx,
                       int p) {
    Eta e;
    e.p = p;
    e.diag = 1.0 / w[p];
    for (int i : idx) {
      if (i == p || w[i] == 0.0) continue;
      const double v = -w[i] * e.diag;
      if (std::abs(v) > kDropTol) e.off.push_back({i, v});
    }
    eta_nnz_ += 1 + static_cast<long>(e.off.size());
    etas_.push_back(std::move(e));
  }

  // Rebuild the product-form inverse from the current basis. Logical columns
  // pivot on their own row with no fill; the remaining columns are processed
  // shortest-first with partial pivoting over unpivoted rows.
  void factorize() {
    etas_.clear();
    updates_since_refactor_ = 0;
    eta_nnz_ = 0;
    basis_neg_.assign(m_, 0);
    any_neg_ = false;
    std::vector<uint8_t> row_pivoted(m_, 0);
    std::vector<int> pivot_row_of(m_, -1);
    std::vector<int> order;
    order.reserve(m_);
    for (int pos = 0; pos < m_; ++pos)
      if (basic_[pos] >= n_ && basic_[pos] < n_ + m_) {
        const int r = basic_[pos] - n_;
        // Unit column: a bare sign flip, hoisted ahead of the eta chain.
        basis_neg_[r] = 1;
        any_neg_ = true;
        eta_nnz_ += 1;
        row_pivoted[r] = 1;
        pivot_row_of[pos] = r;
      } else {
        order.push_back(pos);
      }
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      const int ja = basic_[a], jb = basic_[b];
      const int na = col_ptr_[ja + 1] - col_ptr_[ja];
      const int nb = col_ptr_[jb + 1] - col_ptr_[jb];
      return na != nb ? na < nb : a < b;
    });
    // Static row occupancy of the structural basis columns, used to steer
    // pivots into sparse rows (threshold pivoting): any entry within 10x of
    // the largest is acceptable, and among those the emptiest row wins. This
    // keeps fill-in - and with it both factor and update-chain cost - low.
    std::vector<int> row_cnt(m_, 0);
    for (int pos : order) {
      const int j = basic_[pos];
      for (int t = col_ptr_[j]; t < col_ptr_[j + 1]; ++t) ++row_cnt[col_row_[t]];
    }
    std::fill(work_.begin(), work_.end(), 0.0);
    std::vector<int> touched;
    for (int pos : order) {
      touched.clear();
      scatter_column(basic_[pos], work_, &touched);
      ftran(work_, &touched);
      std::sort(touched.begin(), touched.end());
      touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
      double amax = 0.0;
      for (int i : touched)
        if (!row_pivoted[i] && std::abs(work_[i]) > amax) amax = std::abs(work_[i]);
      int p = -1;
      int best_cnt = std::numeric_limits<int>::max();
      const double accept = 0.1 * amax;
      for (int i : touched)
        if (!row_pivoted[i] && std::abs(work_[i]) >= accept &&
            std::abs(work_[i]) > 1e-10 && row_cnt[i] < best_cnt) {
          best_cnt = row_cnt[i];
          p = i;
        }
      const double best = p >= 0 ? std::abs(work_[p]) : 0.0;
      if (p < 0 || best < 1e-10) {
        // Singular basis: evict this column in favor of the logical of the
        // first unpivoted row (always nonbasic here), clamping the evicted
        // variable to its nearest bound.
        int r = 0;
        while (r < m_ && row_pivoted[r]) ++r;
        const int evicted = basic_[pos];
        const double mid = (x_[evicted] - lb_[evicted] <= ub_[evicted] - x_[evicted])
                               ? lb_[evicted] : ub_[evicted];
        state_[evicted] = (mid == lb_[evicted]) ? VarState::AtLb : VarState::AtUb;
        x_[evicted] = std::isfinite(mid) ? mid : 0.0;
        basic_[pos] = n_ + r;
        state_[n_ + r] = VarState::Basic;
        Eta e;
        e.p = r;
        e.diag = -1.0;
        eta_nnz_ += 1;
        etas_.push_back(std::move(e));
        row_pivoted[r] = 1;
        pivot_row_of[pos] = r;
        for (int i : touched) work_[i] = 0.0;
        continue;
      }
      push_eta_sparse(work_, touched, p);
      row_pivoted[p] = 1;
      pivot_row_of[pos] = p;
      for (int i : touched) work_[i] = 0.0;
    }
    std::vector<int> reordered(m_);
    for (int pos = 0; pos < m_; ++pos) reordered[pivot_row_of[pos]] = basic_[pos];
    basic_ = std::move(reordered);
    base_nnz_ = eta_nnz_;
    eta_nnz_ = 0;
  }

  void compute_basics() {
    std::fill(work_.begin(), work_.end(), 0.0);
    for (int j = 0; j < ncols(); ++j) {
      if (state_[j] == VarState::Basic || x_[j] == 0.0) continue;
      for (int t = col_ptr_[j]; t < col_ptr_[j + 1]; ++t)
        work_[col_row_[t]] -= col_val_[t] * x_[j];
    }
    ftran(work_);
    for (int r = 0; r < m_; ++r) x_[basic_[r]] = work_[r];
  }

  // --- pricing and ratio test ---------------------------------------------

  // Returns the entering column and its direction (+1 off the lower bound,
  // -1 off the upper), or {-1, 0} at optimality.
  std::pair<int, int> price(bool phase1, bool bland) {
    std::fill(y_.begin(), y_.end(), 0.0);
    for (int r = 0; r < m_; ++r) {
      const double c = cost_of(basic_[r], phase1);
      if (c != 0.0) y_[r] = c;
    }
    btran(y_);
    int best_j = -1, best_dir = 0;
    double best_viol = opt_.opt_tol;
    // Partial (rotating) pricing: examine columns a chunk at a time from
    // where the previous pivot left off and stop at the first chunk holding
    // an eligible candidate. A full fruitless rotation proves optimality.
    // Bland's rule needs the smallest eligible index, so it scans from 0.
    const int total = ncols();
    const int chunk =
        (bland || opt_.pricing_chunk <= 0) ? total : opt_.pricing_chunk;
    int pos = (bland || scan_pos_ >= total) ? 0 : scan_pos_;
    for (int scanned = 0; scanned < total;) {
      const int end = std::min(pos + chunk, total);
      for (int j = pos; j < end; ++j) {
        if (state_[j] == VarState::Basic || fixed(j)) continue;
        double d = cost_of(j, phase1);
        for (int t = col_ptr_[j]; t < col_ptr_[j + 1]; ++t)
          d -= col_val_[t] * y_[col_row_[t]];
        const int dir = (state_[j] == VarState::AtLb) ? +1 : -1;
        const double viol = -dir * d;
        if (viol > best_viol) {
          best_j = j;
          best_dir = dir;
          best_viol = viol;
          if (bland) goto done; // smallest eligible index
        }
      }
      scanned += end - pos;
      pos = (end >= total) ? 0 : end;
      if (best_j >= 0) break;
    }
  done:
    scan_pos_ = pos;
    return {best_j, best_dir};
  }

  LpStatus iterate(bool phase1) {
    bool bland = false;
    while (true) {
      if (pivots_ >= opt_.pivot_cap) return LpStatus::IterationLimit;
      if (!bland && degenerate_pivots_ >= opt_.bland_after) bland = true;
      auto [q, dir] = price(phase1, bland);
      if (q < 0) return LpStatus::Optimal;

      std::fill(work_.begin(), work_.end(), 0.0);
      scatter_column(q, work_);
      ftran(work_);

      // Ratio test: the entering variable moves by t in direction dir;
      // basic i changes at rate -dir*alpha_i.
      double t_best = ub_[q] - lb_[q]; // bound-flip distance (may be inf)
      int leave_pos = -1;
      int leave_var = std::numeric_limits<int>::max();
      for (int r = 0; r < m_; ++r) {
        const double alpha = work_[r];
        if (std::abs(alpha) <= kPivotTol) continue;
        const int b = basic_[r];
        const double rate = dir * alpha; // basic value decreases at this rate
        // An out-of-bounds basic travelling back into range blocks at the
        // bound it crosses first, where it can leave the basis feasibly; one
        // travelling deeper into violation has no breakpoint and never
        // blocks (pricing already charges for its growing violation).
        double room;
        if (rate > 0) {
          if (x_[b] > ub_[b] + opt_.feas_tol) room = x_[b] - ub_[b];
          else if (x_[b] < lb_[b] - opt_.feas_tol) continue;
          else room = x_[b] - lb_[b];
        } else {
          if (x_[b] < lb_[b] - opt_.feas_tol) room = x_[b] - lb_[b];
          else if (x_[b] > ub_[b] + opt_.feas_tol) continue;
          else room = x_[b] - ub_[b];
        }
        if (!std::isfinite(room)) continue;
        const double t = std::max(0.0, room / rate);
        if (leave_pos < 0) {
          if (t < t_best) {
            t_best = t;
            leave_pos = r;
            leave_var = b;
          }
        } else if (t < t_best - kDegenTol) {
          t_best = t;
          leave_pos = r;
          leave_var = b;
        } else if (t <= t_best + kDegenTol && b < leave_var) {
          // Near-tie: deterministic break by smallest variable index.
          t_best = std::min(t_best, t);
          leave_pos = r;
          leave_var = b;
        }
      }

      if (leave_pos < 0) {
        if (!std::isfinite(t_best)) return LpStatus::Unbounded;
        // Bound flip: the entering variable crosses to its opposite bound.
        const double step = dir * t_best;
        for (int r = 0; r < m_; ++r)
          if (work_[r] != 0.0) x_[basic_[r]] -= step * work_[r];
        state_[q] = (dir > 0) ? VarState::AtUb : VarState::AtLb;
        x_[q] = (dir > 0) ? ub_[q] : lb_[q];
        ++pivots_;
        continue;
      }

      const double step = dir * t_best;
      for (int r = 0; r < m_; ++r)
        if (work_[r] != 0.0) x_[basic_[r]] -= step * work_[r];
      x_[q] += step; // nonbasic variables sit exactly at their bound

      const int out = basic_[leave_pos];
      // The leaving variable parks on whichever bound the step stopped at.
      const double vout = x_[out];
      const double dl =
          lb_[out] == -kInfBound ? kInfBound : std::abs(vout - lb_[out]);
      const double du =
          ub_[out] == kInfBound ? kInfBound : std::abs(vout - ub_[out]);
      state_[out] = (dl <= du) ? VarState::AtLb : VarState::AtUb;
      x_[out] = (state_[out] == VarState::AtLb) ? lb_[out] : ub_[out];
      state_[q] = VarState::Basic;
      basic_[leave_pos] = q;
      push_eta(work_, leave_pos);
      ++pivots_;
      if (t_best <= kDegenTol) ++degenerate_pivots_;
      // Refactorize on a pivot budget or when the update chain has grown to
      // rival the fresh factor itself (keeps btran/ftran cost bounded).
      if (++updates_since_refactor_ >= opt_.refactor_every ||
          eta_nnz_ > base_nnz_ + 8L * m_) {
        factorize();
        compute_basics();
      }
    }
  }

  LpSolution finish(LpStatus st) {
    LpSolution sol;
    sol.status = st;
    sol.pivots = pivots_;
    sol.x.assign(x_.begin(), x_.begin() + n_);
    sol.objective = 0.0;
    for (int j = 0; j < n_; ++j) sol.objective += inst_.obj[j] * sol.x[j];
    sol.basis = basic_;
    sol.col_status.assign(state_.begin(), state_.begin() + n_ + m_);
    return sol;
  }
};

} // namespace

LpSolution simplex_solve(const LpInstance& inst, const SimplexOptions& opt) {
  if (static_cast<int>(inst.obj.size()) != inst.num_vars ||
      static_cast<int>(inst.lb.size()) != inst.num_vars ||
      static_cast<int>(inst.ub.size()) != inst.num_vars)
    throw std::invalid_argument("LpInstance arrays must all have num_vars entries");
  Simplex s(inst, opt);
  return s.run();
}

} // namespace edge3c
