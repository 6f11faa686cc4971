#include "mball/sampler.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mball {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double require_finite_p(const EnsembleSpec& spec, const char* where) {
  if (spec.p.is_inf())
    throw std::invalid_argument(std::string(where) + ": p must be finite");
  return spec.p.value();
}

}  // namespace

double loggas_logdensity(const EnsembleSpec& spec, std::span<const double> x) {
  const double p = require_finite_p(spec, "loggas_logdensity");
  if (static_cast<int>(x.size()) != spec.n)
    throw std::invalid_argument("loggas_logdensity: length != n");
  double val = 0.0;
  for (double xi : x) val -= std::pow(std::fabs(xi), p);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double d = std::fabs(x[i] - x[j]);
      if (d == 0.0) return kNegInf;
      val += spec.beta * std::log(d);
    }
  return val;
}

std::vector<EigenSample> sample_loggas_mcmc(const EnsembleSpec& spec,
                                            std::size_t count,
                                            const ChainConfig& chain,
                                            ChainDiagnostics* diag) {
  const double p = require_finite_p(spec, "sample_loggas_mcmc");
  const int n = spec.n;
  const double beta = spec.beta;
  const int thin = chain.thinning > 0 ? chain.thinning : n;
  Rng rng(chain.seed);

  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = rng.normal();

  // Incremental single-coordinate update: the density change only involves
  // the proposed coordinate.
  const auto delta_logdensity = [&](int k, double xk_new) {
    double d = -std::pow(std::fabs(xk_new), p) + std::pow(std::fabs(x[k]), p);
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      const double dn = std::fabs(xk_new - x[i]);
      if (dn < 1e-300) return kNegInf;
      d += beta * (std::log(dn) - std::log(std::fabs(x[k] - x[i])));
    }
    return d;
  };

  double scale = chain.proposal_scale;
  long accepted = 0, proposed = 0;
  const auto sweep = [&](bool adapting) {
    int acc_sweep = 0;
    for (int k = 0; k < n; ++k) {
      const double prop = x[k] + scale * rng.normal();
      const double d = delta_logdensity(k, prop);
      ++proposed;
      if (d >= 0.0 || std::log(rng.uniform()) < d) {
        x[k] = prop;
        ++accepted;
        ++acc_sweep;
      }
    }
    if (adapting) {
      const double rate = static_cast<double>(acc_sweep) / n;
      scale *= std::exp(0.05 * (rate - chain.target_acceptance));
      scale = std::clamp(scale, 1e-4, 1e4);
    }
  };

  for (int s = 0; s < chain.burn_in; ++s) sweep(true);
  accepted = 0;
  proposed = 0;

  std::vector<EigenSample> out;
  out.reserve(count);
  std::vector<double> stat;  // sum x_i^2 per retained state, for diagnostics
  stat.reserve(count);
  for (std::size_t c = 0; c < count; ++c) {
    for (int s = 0; s < thin; ++s) sweep(false);
    EigenSample es;
    es.values = x;
    es.source = SampleSource::mcmc;
    out.push_back(std::move(es));
    double s2 = 0.0;
    for (double v : x) s2 += v * v;
    stat.push_back(s2);
  }

  if (diag) {
    diag->acceptance_rate =
        proposed > 0 ? static_cast<double>(accepted) / proposed : 0.0;
    diag->final_proposal_scale = scale;
    double rho = 0.0;
    if (stat.size() > 2) {
      double mean = 0.0;
      for (double v : stat) mean += v;
      mean /= stat.size();
      double num = 0.0, den = 0.0;
      for (std::size_t i = 0; i < stat.size(); ++i) {
        den += (stat[i] - mean) * (stat[i] - mean);
        if (i + 1 < stat.size())
          num += (stat[i] - mean) * (stat[i + 1] - mean);
      }
      rho = den > 0 ? num / den : 0.0;
    }
    diag->autocorr_lag1 = rho;
    const double r = std::clamp(rho, -0.999, 0.999);
    diag->ess_estimate = static_cast<double>(stat.size()) * (1.0 - r) / (1.0 + r);
  }
  return out;
}

std::vector<EigenSample> sample_beta_hermite(int n, double beta,
                                             std::size_t count,
                                             std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_beta_hermite: n < 1");
  if (!(beta > 0.0)) throw std::invalid_argument("sample_beta_hermite: beta <= 0");
  Rng rng(seed);
  std::vector<EigenSample> out;
  out.reserve(count);
  Eigen::VectorXd diag(n), sub(std::max(n - 1, 0));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (std::size_t c = 0; c < count; ++c) {
    // Tridiagonal beta-Hermite model: diagonal N(0,1), off-diagonal
    // chi_{beta k}/sqrt(2) with k = n-1,...,1; its eigenvalue density carries
    // the weight e^{-sum w_i^2 / 2}, so w/sqrt(2) has weight e^{-sum x_i^2}.
    for (int i = 0; i < n; ++i) diag[i] = rng.normal();
    for (int i = 0; i < n - 1; ++i)
      sub[i] = rng.chi(beta * (n - 1 - i)) * inv_sqrt2;
    EigenSample es;
    es.source = SampleSource::tridiagonal_oracle;
    if (n == 1) {
      es.values = {diag[0] * inv_sqrt2};
    } else {
      solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
      if (solver.info() != Eigen::Success)
        throw std::runtime_error("sample_beta_hermite: eigensolver failed");
      es.values.resize(n);
      for (int i = 0; i < n; ++i) es.values[i] = solver.eigenvalues()[i] * inv_sqrt2;
    }
    out.push_back(std::move(es));
  }
  return out;
}

EigenSample schechtman_zinn_transform(const EigenSample& x, double u,
                                      const EnsembleSpec& spec) {
  const double p = require_finite_p(spec, "schechtman_zinn_transform");
  if (!(u > 0.0) || !(u <= 1.0))
    throw std::invalid_argument("schechtman_zinn_transform: u must be in (0,1]");
  double norm_p = 0.0;
  for (double v : x.values) norm_p += std::pow(std::fabs(v), p);
  if (norm_p == 0.0)
    throw std::domain_error("schechtman_zinn_transform: zero vector");
  const double radius = std::pow(u, 1.0 / spec.dim()) / std::pow(norm_p, 1.0 / p);
  EigenSample out;
  out.source = SampleSource::transform;
  out.values.reserve(x.values.size());
  for (double v : x.values) out.values.push_back(radius * v);
  return out;
}

std::vector<EigenSample> sample_unit_ball_eigen(const EnsembleSpec& spec,
                                                std::size_t count,
                                                const ChainConfig& chain) {
  const double p = require_finite_p(spec, "sample_unit_ball_eigen");
  std::vector<EigenSample> base;
  if (p == 2.0) {
    base = sample_beta_hermite(spec.n, spec.beta, count, chain.seed);
  } else {
    base = sample_loggas_mcmc(spec, count, chain);
  }
  // The uniform radius factor uses a stream separated from the chain seed.
  Rng rng(chain.seed ^ 0x9e3779b97f4a7c15ull);
  std::vector<EigenSample> out;
  out.reserve(count);
  for (const auto& b : base)
    out.push_back(schechtman_zinn_transform(b, rng.uniform(), spec));
  return out;
}

std::vector<std::vector<double>> sample_classical_lp_ball(int n, double p,
                                                          std::size_t count,
                                                          std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_classical_lp_ball: n < 1");
  if (!(p > 0.0) || !std::isfinite(p))
    throw std::invalid_argument("sample_classical_lp_ball: p must be finite positive");
  Rng rng(seed);
  std::vector<std::vector<double>> out;
  out.reserve(count);
  std::vector<double> x(n);
  for (std::size_t c = 0; c < count; ++c) {
    double norm_p = 0.0;
    for (int i = 0; i < n; ++i) {
      // |X_i|^p ~ Gamma(1/p), sign symmetric: density prop. to e^{-|x|^p}.
      const double mag = std::pow(rng.gamma(1.0 / p), 1.0 / p);
      x[i] = rng.uniform() < 0.5 ? -mag : mag;
      norm_p += std::pow(mag, p);
    }
    const double radius =
        std::pow(rng.uniform(), 1.0 / n) / std::pow(norm_p, 1.0 / p);
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = radius * x[i];
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace mball
