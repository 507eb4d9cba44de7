#pragma once

// Domain data model for the 3C device-to-device resource-sharing scheduler:
// contents, devices, tasks, the D2D graph, candidate schedules (assignments),
// feasibility checking, delay and energy evaluation, and the noncooperation
// baseline.

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace edge3c {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Tolerance used when comparing computed delays against delay bounds.
inline constexpr double kDelayTol = 1e-9;

struct Content {
  int id = 0;        // 1-based content index k
  double size = 1.0; // L_k, bits

  bool operator==(const Content&) const = default;
};

// How a task was instantiated by the generator. `none` for hand-built tasks.
enum class TaskType : uint8_t { none, downloading, content_sharing, data_analysis };

struct Device {
  int id = 0;                  // 1-based device index n
  std::vector<int> own_tasks;  // task ids initialized by this device
  double down_cap = 1.0;       // Q^down_n, bits/s
  double cpu_cap = 1.0;        // Q^cpu_n, cycles/s
  double up_cap = 1.0;         // Q^up_n, bits/s
  std::vector<uint8_t> cache;  // Q^ca_n, length K, binary
  double c_down = 0.0;         // energy per second while downloading
  double c_cpu = 0.0;          // energy per second while computing
  double c_up = 0.0;           // energy per second while uploading

  bool operator==(const Device&) const = default;
};

// One directed D2D link.
struct Edge {
  int from = 0;
  int to = 0;
  double cap = 1.0;  // Q^d2d_{from->to}, bits/s
  double cost = 0.0; // c^d2d_{from->to}, energy per second

  bool operator==(const Edge&) const = default;
};

struct D2DGraph {
  std::vector<Edge> edges; // directed; generators emit both directions

  // Neighborhood E(n): n itself plus every device reachable over one edge
  // (in either direction). Returned sorted ascending.
  std::vector<int> neighborhood(int n) const;
  bool has_edge(int from, int to) const;

  bool operator==(const D2DGraph&) const = default;
};

struct Task {
  int id = 0;    // 1-based task index s
  int owner = 0; // u_s, device id
  std::vector<uint8_t> input;     // D^in_s, length K, binary
  double cpu_demand = 0.0;        // D^cpu_s, cycles
  std::vector<uint8_t> upload;    // D^up_s, length K, binary
  std::vector<uint8_t> cache_out; // D^ca_s, length K, binary
  double delay_down = kInf; // T-bar^down_s, seconds (+inf = unconstrained)
  double delay_cpu = kInf;  // T-bar^cpu_s
  double delay_up = kInf;   // T-bar^up_s
  TaskType type = TaskType::none;

  bool operator==(const Task&) const = default;
};

struct Scenario {
  std::vector<Content> contents;
  std::vector<Device> devices;
  std::vector<Task> tasks;
  D2DGraph graph;

  int N() const { return static_cast<int>(devices.size()); }
  int S() const { return static_cast<int>(tasks.size()); }
  int K() const { return static_cast<int>(contents.size()); }
  int E() const { return static_cast<int>(graph.edges.size()); }

  bool operator==(const Scenario&) const = default;
};

// A candidate schedule: values of every decision variable. x are binary
// allocation indicators; z count how many times a content crosses each
// directed edge (nonnegative integers, since a relay may forward the same
// content to several neighbors).
struct Assignment {
  int S = 0, K = 0, N = 0, E = 0;
  std::vector<uint8_t> x_in;   // [s*K*N + k*N + n]
  std::vector<uint8_t> x_down; // [s*K*N + k*N + n]
  std::vector<uint8_t> x_up;   // [s*K*N + k*N + n]
  std::vector<uint8_t> x_cpu;  // [s*N + n]
  std::vector<int32_t> z_in;   // [s*K*E + k*E + e]
  std::vector<int32_t> z_up;   // [s*K*E + k*E + e]
  std::vector<int32_t> z_ca;   // [s*K*E + k*E + e]

  static Assignment zeros(const Scenario& sc);

  uint8_t& in(int s, int k, int n) { return x_in[(s * K + k) * N + n]; }
  uint8_t in(int s, int k, int n) const { return x_in[(s * K + k) * N + n]; }
  uint8_t& down(int s, int k, int n) { return x_down[(s * K + k) * N + n]; }
  uint8_t down(int s, int k, int n) const { return x_down[(s * K + k) * N + n]; }
  uint8_t& up(int s, int k, int n) { return x_up[(s * K + k) * N + n]; }
  uint8_t up(int s, int k, int n) const { return x_up[(s * K + k) * N + n]; }
  uint8_t& cpu(int s, int n) { return x_cpu[s * N + n]; }
  uint8_t cpu(int s, int n) const { return x_cpu[s * N + n]; }
  int32_t& zin(int s, int k, int e) { return z_in[(s * K + k) * E + e]; }
  int32_t zin(int s, int k, int e) const { return z_in[(s * K + k) * E + e]; }
  int32_t& zup(int s, int k, int e) { return z_up[(s * K + k) * E + e]; }
  int32_t zup(int s, int k, int e) const { return z_up[(s * K + k) * E + e]; }
  int32_t& zca(int s, int k, int e) { return z_ca[(s * K + k) * E + e]; }
  int32_t zca(int s, int k, int e) const { return z_ca[(s * K + k) * E + e]; }

  bool operator==(const Assignment&) const = default;
};

// Per-task energy components and the scenario total.
struct EnergyBreakdown {
  std::vector<double> down, cpu, up, d2d; // per task
  std::vector<double> task_total;         // E_s
  double total = 0.0;                     // sum over tasks
};

// Per-device subtask completion times tau^X_n (Eq. 11-12).
struct DeviceTimes {
  std::vector<double> down, cpu, up;
};

// Per-task worst-case delays T^X_s (Eq. 13-15).
struct TaskDelays {
  std::vector<double> down, cpu, up;
};

// Empty result means the scenario satisfies every type invariant and the
// noncooperation assignment meets all delay bounds (Assumption 1).
std::vector<std::string> validate_scenario(const Scenario& sc);

// Every task executed entirely by its owner; downloads only for uncached
// inputs; no D2D traffic.
Assignment noncooperation_assignment(const Scenario& sc);

// Returns the ids of violated constraints ("Eq.3" ... "Eq.10"), empty when the
// assignment is feasible for (OPT).
std::vector<std::string> check_feasible(const Scenario& sc, const Assignment& a);

DeviceTimes subtask_times(const Scenario& sc, const Assignment& a);

TaskDelays worst_case_delays(const Scenario& sc, const Assignment& a);

EnergyBreakdown assignment_energy(const Scenario& sc, const Assignment& a);

} // namespace edge3c
