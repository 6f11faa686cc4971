#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mball/constants.hpp"
#include "mball/rng.hpp"

namespace mball {

struct ChainConfig {
  int burn_in = 1000;           // sweeps discarded before recording
  int thinning = 0;             // sweeps per retained state; 0 = use n
  double proposal_scale = 0.5;  // initial random-walk scale, adapted in burn-in
  double target_acceptance = 0.4;
  std::uint64_t seed = 42;
};

enum class SampleSource { mcmc, tridiagonal_oracle, transform };

struct EigenSample {
  std::vector<double> values;  // unordered eigenvalue tuple
  SampleSource source = SampleSource::mcmc;
};

struct ChainDiagnostics {
  double acceptance_rate = 0.0;
  double final_proposal_scale = 0.0;
  double autocorr_lag1 = 0.0;  // lag-1 autocorrelation of sum |x_i|^2
  double ess_estimate = 0.0;   // effective sample size from the lag-1 model
};

// Unnormalized log density of Corollary-type log gas:
//   -sum |x_i|^p + beta * sum_{i<j} log|x_i - x_j|.
// Returns -infinity on collisions. p must be finite.
double loggas_logdensity(const EnsembleSpec& spec, std::span<const double> x);

// Metropolis-within-Gibbs random-walk sweeps targeting loggas_logdensity.
// The proposal scale adapts toward target_acceptance during burn-in only and
// is frozen afterwards. Deterministic given chain.seed.
std::vector<EigenSample> sample_loggas_mcmc(const EnsembleSpec& spec,
                                            std::size_t count,
                                            const ChainConfig& chain,
                                            ChainDiagnostics* diag = nullptr);

// Exact sampler for the p = 2 log gas at any beta > 0: eigenvalues of the
// standard symmetric tridiagonal beta-Hermite matrix, rescaled so the output
// density is proportional to e^{-sum x_i^2} prod |x_i - x_j|^beta.
std::vector<EigenSample> sample_beta_hermite(int n, double beta,
                                             std::size_t count,
                                             std::uint64_t seed);

// u^{1/(n+m)} x / ||x||_p with m = beta n(n-1)/2; maps a log-gas draw to a
// uniform point of the eigenvalue ball.
EigenSample schechtman_zinn_transform(const EigenSample& x, double u,
                                      const EnsembleSpec& spec);

// Eigenvalue tuples of matrices uniform in the unit ball: tridiagonal source
// at p = 2, MCMC otherwise.
std::vector<EigenSample> sample_unit_ball_eigen(const EnsembleSpec& spec,
                                                std::size_t count,
                                                const ChainConfig& chain);

// Uniform samples in the classical l_p^n ball via generalized-Gaussian
// direction times U^{1/n}.
std::vector<std::vector<double>> sample_classical_lp_ball(int n, double p,
                                                          std::size_t count,
                                                          std::uint64_t seed);

}  // namespace mball
