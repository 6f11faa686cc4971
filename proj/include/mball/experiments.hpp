#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mball/constants.hpp"
#include "mball/empirical.hpp"
#include "mball/sampler.hpp"

namespace mball {

struct MonteCarloEstimate {
  double value = 0.0;
  double stderr_est = 0.0;  // sample standard deviation / sqrt(n_samples)
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
  std::map<std::string, double> metadata;
};

struct ScaledUllmanFit {
  double scale_hat = 0.0;
  double ks = 0.0;
};

// Atoms = sorted values * n^{-scale_exponent}.
EmpiricalMeasure empirical_measure(const EigenSample& sample,
                                   double scale_exponent);

// Fits the scale by p-th-moment matching, then returns the KS distance to
// the Ullman law at that scale.
ScaledUllmanFit ks_to_scaled_ullman(const EmpiricalMeasure& mu, double p);

// Kolmogorov-Smirnov distance between mu and the (tabulated) Ullman CDF.
double ks_to_ullman(const EmpiricalMeasure& mu, double p, double b);

// n^{1/p - 1/q} (sum |x_i|^q)^{1/q}.
double wlln_statistic(const EigenSample& sample, double p, double q);

// Mean and stderr of wlln_statistic over `reps` independent unit-ball
// samples. Metadata: c_pq, deviation |mean - C_pq|, sample_std.
MonteCarloEstimate wlln_experiment(const EnsembleSpec& spec, double q,
                                   std::size_t reps, const ChainConfig& chain,
                                   int threads = 1);

// log I_{n,beta,p} by uniform sampling of the classical ball:
//   log vol_n(B_p^n) + log-mean-exp of beta * log_vandermonde.
// Refuses n above `cap` (importance-free MC variance explodes).
MonteCarloEstimate estimate_log_I(const EnsembleSpec& spec,
                                  std::size_t samples, std::uint64_t seed,
                                  int cap = 8, int threads = 1);

// log vol = log c_{n,beta} + log I. Metadata carries the Theorem-style
// asymptotic surrogate for comparison (tagged, never mixed into the value).
MonteCarloEstimate log_volume_ball(const EnsembleSpec& spec,
                                   std::size_t samples, std::uint64_t seed,
                                   int threads = 1);

// For each t in t_grid, the fraction of uniform-ball samples with
// wlln_statistic * a_pq <= t. The same sample set is reused across the grid,
// so the fraction column is monotone by construction.
std::vector<std::pair<double, MonteCarloEstimate>> intersection_experiment(
    double p, double q, double beta, int n, const std::vector<double>& t_grid,
    std::size_t reps, const ChainConfig& chain, int threads = 1);

}  // namespace mball
