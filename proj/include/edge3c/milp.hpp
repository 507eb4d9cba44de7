#pragma once

// Builders for the two linear programs behind the scheduler: the exact
// integer formulation with big-M delay linearization, and the relaxed
// formulation with control-parameter bounds used by the heuristic.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "edge3c/lp.hpp"
#include "edge3c/model.hpp"

namespace edge3c {

enum class VarKind : uint8_t { x_in, x_down, x_up, x_cpu, z_in, z_up, z_ca, y_down, y_up };

struct VarInfo {
  VarKind kind;
  int s = -1, k = -1, n = -1, e = -1;
};

// Bijective index assignment for the decision variables of one instance.
// The scenario-aware constructor creates variables only for combinations a
// task actually demands (its input/upload/cache-out bits); accessors return
// -1 for combinations that carry no variable, which keeps the linear
// programs free of columns that would be fixed to zero anyway. Layout order:
// x_in, x_down, x_up, x_cpu, z_in, z_up, z_ca, then (for the exact
// formulation only) y_down, y_up.
class VarMap {
 public:
  VarMap() = default;
  VarMap(int S, int K, int N, int E, bool with_y); // every combination live
  VarMap(const Scenario& sc, bool with_y);         // demand-trimmed

  int count() const { return count_; }
  bool with_y() const { return with_y_; }
  int S() const { return S_; }
  int K() const { return K_; }
  int N() const { return N_; }
  int E() const { return E_; }

  int x_in(int s, int k, int n) const { return t_[(s * K_ + k) * N_ + n]; }
  int x_down(int s, int k, int n) const { return t_[skn_ + (s * K_ + k) * N_ + n]; }
  int x_up(int s, int k, int n) const { return t_[2 * skn_ + (s * K_ + k) * N_ + n]; }
  int x_cpu(int s, int n) const { return t_[3 * skn_ + s * N_ + n]; }
  int z_in(int s, int k, int e) const { return t_[zbase_ + (s * K_ + k) * E_ + e]; }
  int z_up(int s, int k, int e) const { return t_[zbase_ + ske_ + (s * K_ + k) * E_ + e]; }
  int z_ca(int s, int k, int e) const { return t_[zbase_ + 2 * ske_ + (s * K_ + k) * E_ + e]; }
  int y_down(int s, int n) const { return t_[ybase_ + s * N_ + n]; }
  int y_up(int s, int n) const { return t_[ybase_ + sn_ + s * N_ + n]; }

  VarInfo info(int idx) const { return info_[idx]; }
  std::string name(int idx) const;

 private:
  void init(const std::vector<uint8_t>& live_in, const std::vector<uint8_t>& live_up,
            const std::vector<uint8_t>& live_ca);

  int S_ = 0, K_ = 0, N_ = 0, E_ = 0;
  bool with_y_ = false;
  int skn_ = 0, sn_ = 0, ske_ = 0, zbase_ = 0, ybase_ = 0, count_ = 0;
  std::vector<int32_t> t_;     // combination slot -> variable index or -1
  std::vector<VarInfo> info_;  // variable index -> combination
};

// The N-tilde prevention masks. All-ones means nothing is prevented.
struct ControlParams {
  int S = 0, K = 0, N = 0;
  std::vector<uint8_t> in;   // [s*K*N + k*N + n]
  std::vector<uint8_t> cpu;  // [s*N + n]
  std::vector<uint8_t> up;   // [s*K*N + k*N + n]

  static ControlParams all_ones(const Scenario& sc);

  uint8_t& n_in(int s, int k, int n) { return in[(s * K + k) * N + n]; }
  uint8_t n_in(int s, int k, int n) const { return in[(s * K + k) * N + n]; }
  uint8_t& n_cpu(int s, int n) { return cpu[s * N + n]; }
  uint8_t n_cpu(int s, int n) const { return cpu[s * N + n]; }
  uint8_t& n_up(int s, int k, int n) { return up[(s * K + k) * N + n]; }
  uint8_t n_up(int s, int k, int n) const { return up[(s * K + k) * N + n]; }
};

struct MilpInstance {
  LpInstance lp;
  std::vector<uint8_t> integral; // per-variable integrality flag
  VarMap vm;
};

// Per-device big-M constants; an empty vector means every delay bound of that
// family is infinite and the corresponding delay rows are omitted entirely.
struct BigMValues {
  std::vector<double> down, cpu, up;
};

// Loose-but-safe upper bound on any z variable.
inline int z_cap(const Scenario& sc) { return sc.S() * sc.K(); }

BigMValues big_m_values(const Scenario& sc);

MilpInstance build_opt_linear(const Scenario& sc);

// Throws std::invalid_argument if the controls exclude the noncooperation
// point (masking a task away from its own owner signals a caller bug).
MilpInstance build_opt_relax(const Scenario& sc, const ControlParams& ctrl);

class FractionalSolution : public std::runtime_error {
 public:
  explicit FractionalSolution(const std::string& what) : std::runtime_error(what) {}
};

// Rounds a solution vector to an Assignment; y values are discarded. Throws
// FractionalSolution if any x/z value is farther than 1e-6 from an integer.
Assignment extract_assignment(const VarMap& vm, const std::vector<double>& x);

// Fixed-format LP text export (12 significant digits) for cross-checking
// against third-party solvers.
void write_lp_format(const MilpInstance& inst, std::ostream& os);

} // namespace edge3c
