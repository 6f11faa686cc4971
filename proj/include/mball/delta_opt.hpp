#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace mball {

struct OptimizerConfig {
  double tol = 1e-10;        // gradient infinity-norm target
  int max_iter = 100000;
  int restarts = 5;          // extra random starts, used for p < 1
  std::uint64_t seed = 1234;
};

struct OptimizerResult {
  std::vector<double> points;  // strictly increasing, unit l_p norm
  double log_delta_n = 0.0;
  double lagrange_lambda_hat = 0.0;
  double max_lagrange_residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct LagrangeReport {
  double lambda_hat = 0.0;           // sum_k alpha_k t_k; algebraically n(n-1)/2
  std::vector<double> residuals;     // alpha_k - (n(n-1)/2)|t_k|^{p-1} sgn t_k
  std::vector<bool> applicable;      // false where t_k == 0 (condition is
                                     // alpha_k t_k = 0, trivially fulfilled)
};

// (2/(n(n-1))) sum_{i<j} log|t_i - t_j| - (1/p) log((1/n) sum |t_i|^p).
// Scale invariant; returns -infinity on coincident points.
double delta_objective(double p, std::span<const double> t);

// Maximizes delta_objective by BFGS from l_p-normalized Gauss-Lobatto nodes
// (plus random restarts for p < 1). For p <= 1 a coordinate that converges
// to 0 is frozen there and the remaining coordinates are re-optimized; the
// objective is nonsmooth at such points and the stationarity condition for
// the frozen index holds in the form alpha_k t_k = 0.
OptimizerResult optimize_delta_n(double p, int n, const OptimizerConfig& config = {});

LagrangeReport lagrange_residual(double p, std::span<const double> t);

}  // namespace mball
