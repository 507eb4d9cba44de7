#include "edge3c/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace edge3c {

namespace {

// Adaptive Simpson quadrature with a global evaluation cap.
struct Quadrature {
  const std::function<double(double)>& f;
  long evals = 0;
  static constexpr long kMaxEvals = 100000;

  double eval(double x) {
    ++evals;
    return f(x);
  }

  double adapt(double a, double b, double fa, double fm, double fb,
               double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double flm = eval(0.5 * (a + m));
    const double frm = eval(0.5 * (m + b));
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || evals > kMaxEvals || std::abs(delta) <= 15.0 * tol)
      return left + right + delta / 15.0;
    return adapt(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adapt(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
  }

  double run(double a, double b, double tol) {
    // Fixed initial partition so narrow peaks inside a wide support are
    // never bridged over by the first Simpson probe.
    constexpr int kInitial = 64;
    const double h = (b - a) / kInitial;
    double total = 0.0;
    double x0 = a;
    double f0 = eval(a);
    for (int i = 1; i <= kInitial; ++i) {
      const double x1 = (i == kInitial) ? b : a + i * h;
      const double f1 = eval(x1);
      const double fm = eval(0.5 * (x0 + x1));
      const double whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
      total += adapt(x0, x1, f0, fm, f1, whole, tol / kInitial, 40);
      x0 = x1;
      f0 = f1;
    }
    return total;
  }
};

double std_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  if (!(b > a)) return 0.0;
  Quadrature q{f};
  return q.run(a, b, tol);
}

CapacityDistribution truncated_normal(double mu, double sigma, double a,
                                      double b) {
  if (!(a < b)) throw std::invalid_argument("truncated_normal: need a < b");
  if (!(sigma > 0.0))
    throw std::invalid_argument("truncated_normal: need sigma > 0");
  const double za = (a - mu) / sigma, zb = (b - mu) / sigma;
  const double mass = std_normal_cdf(zb) - std_normal_cdf(za);
  if (mass < 1e-12)
    throw DegenerateInterval(
        "truncated_normal: negligible probability mass on the interval");
  const double phi_scale =
      1.0 / (sigma * mass * std::sqrt(2.0 * 3.14159265358979323846));
  const double cdf_lo = std_normal_cdf(za);

  CapacityDistribution d;
  d.lo = a;
  d.hi = b;
  d.cdf = [=](double x) {
    if (x <= a) return 0.0;
    if (x >= b) return 1.0;
    return std::clamp((std_normal_cdf((x - mu) / sigma) - cdf_lo) / mass, 0.0,
                      1.0);
  };
  d.pdf = [=](double x) {
    if (x < a || x > b) return 0.0;
    const double z = (x - mu) / sigma;
    return std::exp(-0.5 * z * z) * phi_scale;
  };
  return d;
}

std::function<double(double)> order_stat_max_pdf(
    const CapacityDistribution& dist, int n) {
  if (n < 1) throw std::invalid_argument("order_stat_max_pdf: need n >= 1");
  auto cdf = dist.cdf;
  auto pdf = dist.pdf;
  return [cdf, pdf, n](double x) {
    return n * std::pow(cdf(x), n - 1) * pdf(x);
  };
}

double expected_task_energy(const CapacityDistribution& dist, double alpha,
                            double lambda) {
  if (alpha < 0.0 || alpha > 1.0)
    throw std::invalid_argument("expected_task_energy: alpha outside [0,1]");
  if (lambda < 0.0)
    throw std::invalid_argument("expected_task_energy: negative lambda");
  const double al = alpha * lambda;
  auto cdf = dist.cdf;
  auto f = [al, cdf](double x) {
    const double F = cdf(x);
    return std::exp(al * (F - 1.0)) * F / (x * x);
  };
  return 1.0 / dist.hi + integrate(f, dist.lo, dist.hi, 1e-9);
}

double expected_content_energy(double cache_ratio, double alpha,
                               double lambda) {
  if (cache_ratio < 0.0 || cache_ratio > 1.0)
    throw std::invalid_argument(
        "expected_content_energy: cache_ratio outside [0,1]");
  return (1.0 - cache_ratio) * std::exp(-alpha * lambda * cache_ratio);
}

CapacityReduction max_reduction_capacity(const CapacityDistribution& dist,
                                         double r) {
  if (r < 1.0)
    throw std::invalid_argument("max_reduction_capacity: need r >= 1");
  CapacityReduction out;
  if (r == 1.0) return out;

  // Stationarity condition for the worst-case mean degree: the derivative
  // of the reduction with respect to lambda vanishes.
  auto cdf = dist.cdf;
  const double lo_x = dist.lo, hi_x = dist.hi;
  auto condition = [&](double lam) {
    auto f = [&](double x) {
      const double F = cdf(x);
      const double t = F - 1.0;
      return t * F / (x * x) *
             (std::exp(lam * t / r) - r * std::exp(lam * t));
    };
    return integrate(f, lo_x, hi_x, 1e-9);
  };

  double lo = 1e-6;
  double g_lo = condition(lo);
  double hi = 0.0;
  bool bracketed = false;
  for (double lam = 1e-5; lam <= 1e4 * (1.0 + 1e-12); lam *= 10.0) {
    const double g = condition(lam);
    if (g_lo == 0.0) {
      hi = lo;
      bracketed = true;
      break;
    }
    if ((g_lo < 0.0) != (g < 0.0)) {
      hi = lam;
      bracketed = true;
      break;
    }
    lo = lam;
    g_lo = g;
  }
  if (!bracketed)
    throw BracketFailure(
        "max_reduction_capacity: stationarity condition has no sign change "
        "on (1e-6, 1e4)");
  const bool lo_neg = g_lo < 0.0;
  while (hi - lo > 1e-8) {
    const double mid = 0.5 * (lo + hi);
    if ((condition(mid) < 0.0) == lo_neg)
      lo = mid;
    else
      hi = mid;
  }

  out.lambda_tilde = 0.5 * (lo + hi);
  out.delta_w = expected_task_energy(dist, 1.0 / r, out.lambda_tilde) -
                expected_task_energy(dist, 1.0, out.lambda_tilde);
  out.normalized = out.delta_w / expected_task_energy(dist, 0.0, 0.0);
  return out;
}

CachingReduction max_reduction_caching(double cache_ratio, double r) {
  if (r < 1.0)
    throw std::invalid_argument("max_reduction_caching: need r >= 1");
  if (!(cache_ratio > 0.0) || cache_ratio > 1.0)
    throw std::invalid_argument(
        "max_reduction_caching: cache_ratio outside (0,1]");
  CachingReduction out;
  if (r == 1.0) return out; // limit value is exactly zero
  const double t = std::log(r) / (r - 1.0);
  out.normalized = std::exp(-t) - std::exp(-r * t);
  out.delta_z = (1.0 - cache_ratio) * out.normalized;
  return out;
}

double optimal_alpha_caching(double cache_ratio, double r, double lambda) {
  if (!(r > 1.0))
    throw std::invalid_argument("optimal_alpha_caching: need r > 1");
  if (!(cache_ratio > 0.0) || cache_ratio > 1.0)
    throw std::invalid_argument(
        "optimal_alpha_caching: cache_ratio outside (0,1]");
  if (lambda < 0.0)
    throw std::invalid_argument("optimal_alpha_caching: negative lambda");
  const double threshold = r * std::log(r) / ((r - 1.0) * cache_ratio);
  if (lambda <= threshold) return 1.0 / r;
  return std::log(r) / ((r - 1.0) * lambda * cache_ratio);
}

namespace {

uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Inverse-CDF sampling by bisection on the support.
double sample_capacity(const CapacityDistribution& d, double u) {
  double lo = d.lo, hi = d.hi;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (d.cdf(mid) < u ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Pairs (i, j), i < j, laid out row-major; row i holds n-1-i pairs.
long long pairs_before_row(int i, int n) {
  return static_cast<long long>(i) * (2 * n - i - 1) / 2;
}

double trial_mean(const CapacityDistribution& dist, double alpha,
                  double lambda, int n, uint64_t seed, int trial) {
  std::mt19937_64 rng(splitmix64(seed ^ splitmix64(0x7C3 + trial)));
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<double> q(n);
  for (int i = 0; i < n; ++i) q[i] = sample_capacity(dist, unit(rng));
  std::vector<char> participates(n);
  for (int i = 0; i < n; ++i) participates[i] = unit(rng) < alpha ? 1 : 0;

  // Highest capacity reachable by each owner (its own to start with).
  std::vector<double> best = q;

  const double p = std::min(1.0, lambda / n);
  if (p > 0.0 && n > 1) {
    // Sample the G(n, p) edge set by geometric skips over the linearized
    // pair index.
    const long long total = static_cast<long long>(n) * (n - 1) / 2;
    const double log_q = std::log1p(-p); // < 0 for p in (0,1)
    long long idx = -1;
    while (true) {
      long long skip = 1;
      if (p < 1.0) {
        const double u = unit(rng);
        skip = 1 + static_cast<long long>(std::floor(std::log1p(-u) / log_q));
      }
      idx += skip;
      if (idx >= total) break;
      // Decode the pair: largest row i with pairs_before_row(i) <= idx.
      const double disc = static_cast<double>(2 * n - 1) *
                              static_cast<double>(2 * n - 1) -
                          8.0 * static_cast<double>(idx);
      int i = static_cast<int>(
          std::floor(((2.0 * n - 1.0) - std::sqrt(std::max(0.0, disc))) / 2.0));
      i = std::clamp(i, 0, n - 2);
      while (i > 0 && pairs_before_row(i, n) > idx) --i;
      while (i < n - 2 && pairs_before_row(i + 1, n) <= idx) ++i;
      const int j = static_cast<int>(idx - pairs_before_row(i, n)) + i + 1;

      if (participates[j] && q[j] > best[i]) best[i] = q[j];
      if (participates[i] && q[i] > best[j]) best[j] = q[i];
    }
  }

  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += 1.0 / best[i];
  return sum / n;
}

MonteCarloStats summarize(const std::vector<double>& means) {
  MonteCarloStats st;
  const int t = static_cast<int>(means.size());
  for (double v : means) st.mean += v;
  st.mean /= t;
  if (t > 1) {
    double ss = 0.0;
    for (double v : means) ss += (v - st.mean) * (v - st.mean);
    st.std_error = std::sqrt(ss / (static_cast<double>(t) * (t - 1)));
  }
  return st;
}

void check_mc_args(double alpha, double lambda, int n_devices, int trials) {
  if (alpha < 0.0 || alpha > 1.0)
    throw std::invalid_argument("monte_carlo_task_energy: alpha outside [0,1]");
  if (lambda < 0.0)
    throw std::invalid_argument("monte_carlo_task_energy: negative lambda");
  if (n_devices < 1 || trials < 1)
    throw std::invalid_argument(
        "monte_carlo_task_energy: need n_devices >= 1 and trials >= 1");
}

} // namespace

MonteCarloStats monte_carlo_task_energy(const CapacityDistribution& dist,
                                        double alpha, double lambda,
                                        int n_devices, int trials,
                                        uint64_t seed) {
  check_mc_args(alpha, lambda, n_devices, trials);
  std::vector<double> means(trials);
#pragma omp parallel for schedule(dynamic)
  for (int t = 0; t < trials; ++t)
    means[t] = trial_mean(dist, alpha, lambda, n_devices, seed, t);
  return summarize(means);
}

MonteCarloStats monte_carlo_task_energy_serial(
    const CapacityDistribution& dist, double alpha, double lambda,
    int n_devices, int trials, uint64_t seed) {
  check_mc_args(alpha, lambda, n_devices, trials);
  std::vector<double> means(trials);
  for (int t = 0; t < trials; ++t)
    means[t] = trial_mean(dist, alpha, lambda, n_devices, seed, t);
  return summarize(means);
}

} // namespace edge3c
