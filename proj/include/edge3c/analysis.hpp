#pragma once

// Closed-form expected-energy analysis on random sharing graphs: truncated
// normal capacities, order statistics, the W/Z expected-energy functions,
// maximum 3C reduction results, and a Monte-Carlo oracle for W.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace edge3c {

// Capacity distribution on a bounded positive support.
struct CapacityDistribution {
  std::function<double(double)> cdf;
  std::function<double(double)> pdf;
  double lo = 0.0, hi = 0.0; // support bounds, 0 < lo < hi
};

class DegenerateInterval : public std::runtime_error {
 public:
  explicit DegenerateInterval(const std::string& what)
      : std::runtime_error(what) {}
};

class BracketFailure : public std::runtime_error {
 public:
  explicit BracketFailure(const std::string& what)
      : std::runtime_error(what) {}
};

// Normal(mu, sigma^2) conditioned on (a, b).
CapacityDistribution truncated_normal(double mu, double sigma, double a,
                                      double b);

// Density of the maximum of n i.i.d. draws: n F(x)^{n-1} f(x).
std::function<double(double)> order_stat_max_pdf(
    const CapacityDistribution& dist, int n);

// Adaptive-Simpson integral of f over [a, b] to absolute tolerance tol.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-9);

// W(alpha, lambda): expected per-task energy on a mean-degree-lambda random
// graph where each device participates with probability alpha.
double expected_task_energy(const CapacityDistribution& dist, double alpha,
                            double lambda);

// Z(alpha, lambda): expected per-content download energy under caching;
// cache_ratio is the cached fraction of the catalog.
double expected_content_energy(double cache_ratio, double alpha,
                               double lambda);

struct CapacityReduction {
  double delta_w = 0.0;      // W(1/r, lambda_tilde) - W(1, lambda_tilde)
  double lambda_tilde = 0.0; // worst-case mean degree
  double normalized = 0.0;   // delta_w / W(0, 0)
};

// Maximum capacity-driven energy reduction of 3C over 1C sharing when the
// cooperation ratio is r (participation rises from 1/r to 1).
CapacityReduction max_reduction_capacity(const CapacityDistribution& dist,
                                         double r);

struct CachingReduction {
  double delta_z = 0.0;
  double normalized = 0.0; // independent of cache_ratio
};

CachingReduction max_reduction_caching(double cache_ratio, double r);

// Optimal 1C participation probability for content energy at mean degree
// lambda (piecewise closed form).
double optimal_alpha_caching(double cache_ratio, double r, double lambda);

struct MonteCarloStats {
  double mean = 0.0;
  double std_error = 0.0;
};

// Simulation oracle for expected_task_energy: trials independent G(N, p)
// graphs with p = lambda/N, i.i.d. capacities and alpha-participation; task
// energy is 1/max capacity over the owner and its participating neighbors.
// Deterministic for a given seed regardless of thread count.
MonteCarloStats monte_carlo_task_energy(const CapacityDistribution& dist,
                                        double alpha, double lambda,
                                        int n_devices, int trials,
                                        uint64_t seed);

// Single-threaded reference implementation (bit-identical results).
MonteCarloStats monte_carlo_task_energy_serial(
    const CapacityDistribution& dist, double alpha, double lambda,
    int n_devices, int trials, uint64_t seed);

} // namespace edge3c
