#include "mball/delta_opt.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mball/rng.hpp"
#include "mball/vandermonde.hpp"

namespace mball {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double objective_impl(double p, const Eigen::VectorXd& t) {
  const int n = static_cast<int>(t.size());
  double pair_sum = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double d = std::fabs(t[i] - t[j]);
      if (d == 0.0) return kNegInf;
      pair_sum += std::log(d);
    }
  double norm_p = 0.0;
  for (int i = 0; i < n; ++i) norm_p += std::pow(std::fabs(t[i]), p);
  if (norm_p == 0.0) return kNegInf;
  return 2.0 / (static_cast<double>(n) * (n - 1)) * pair_sum -
         std::log(norm_p / n) / p;
}

// Gradient w.r.t. free coordinates; entries for frozen coordinates are 0.
Eigen::VectorXd gradient_impl(double p, const Eigen::VectorXd& t,
                              const std::vector<bool>& frozen) {
  const int n = static_cast<int>(t.size());
  Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
  double norm_p = 0.0;
  for (int i = 0; i < n; ++i) norm_p += std::pow(std::fabs(t[i]), p);
  for (int k = 0; k < n; ++k) {
    if (frozen[k]) continue;
    double alpha = 0.0;
    for (int i = 0; i < n; ++i)
      if (i != k) alpha += 1.0 / (t[k] - t[i]);
    const double sk = t[k] > 0 ? 1.0 : (t[k] < 0 ? -1.0 : 0.0);
    g[k] = 2.0 / (static_cast<double>(n) * (n - 1)) * alpha -
           sk * std::pow(std::fabs(t[k]), p - 1.0) / norm_p;
  }
  return g;
}

struct BfgsOutcome {
  Eigen::VectorXd t;
  double value = kNegInf;
  int iterations = 0;
  bool converged = false;
};

BfgsOutcome bfgs_maximize(double p, Eigen::VectorXd t,
                          const std::vector<bool>& frozen,
                          const OptimizerConfig& cfg) {
  const int n = static_cast<int>(t.size());
  Eigen::MatrixXd h_inv = Eigen::MatrixXd::Identity(n, n);
  double f = objective_impl(p, t);
  Eigen::VectorXd g = gradient_impl(p, t, frozen);

  BfgsOutcome out;
  int it = 0;
  for (; it < cfg.max_iter; ++it) {
    if (g.lpNorm<Eigen::Infinity>() <= cfg.tol) {
      out.converged = true;
      break;
    }
    Eigen::VectorXd dir = h_inv * g;  // ascent direction
    if (dir.dot(g) <= 0.0) {          // reset on indefinite curvature
      h_inv.setIdentity();
      dir = g;
    }
    double step = 1.0;
    double f_new = kNegInf;
    Eigen::VectorXd t_new;
    const double slope = dir.dot(g);
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      t_new = t + step * dir;
      f_new = objective_impl(p, t_new);
      if (std::isfinite(f_new) && f_new >= f + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // line search stalled (typically a nonsmooth point)
    Eigen::VectorXd g_new = gradient_impl(p, t_new, frozen);
    const Eigen::VectorXd s = t_new - t;
    const Eigen::VectorXd y = g_new - g;  // note: maximization, y = g_new - g
    const double sy = -s.dot(y);          // curvature of -f
    if (sy > 1e-12 * s.norm() * y.norm()) {
      const Eigen::VectorXd hy = h_inv * (-y);
      const double shy = s.dot(hy);
      h_inv += ((sy + (-y).dot(hy)) / (sy * sy)) * (s * s.transpose()) -
               (hy * s.transpose() + s * hy.transpose()) / sy;
    }
    t = t_new;
    f = f_new;
    g = g_new;
  }
  out.t = t;
  out.value = f;
  out.iterations = it;
  return out;
}

void normalize_lp(double p, Eigen::VectorXd& t) {
  double norm_p = 0.0;
  for (int i = 0; i < t.size(); ++i) norm_p += std::pow(std::fabs(t[i]), p);
  t /= std::pow(norm_p, 1.0 / p);
}

}  // namespace

double delta_objective(double p, std::span<const double> t) {
  if (!(p > 0.0)) throw std::invalid_argument("delta_objective: p <= 0");
  if (t.size() < 2)
    throw std::invalid_argument("delta_objective: need >= 2 points");
  Eigen::VectorXd v(static_cast<int>(t.size()));
  for (std::size_t i = 0; i < t.size(); ++i) v[static_cast<int>(i)] = t[i];
  return objective_impl(p, v);
}

OptimizerResult optimize_delta_n(double p, int n, const OptimizerConfig& cfg) {
  if (!(p > 0.0)) throw std::invalid_argument("optimize_delta_n: p <= 0");
  if (n < 2) throw std::invalid_argument("optimize_delta_n: n < 2");

  OptimizerResult res;
  if (n == 2) {
    // Antisymmetric closed form {-a, a}, a = 2^{-1/p}; objective log 2.
    const double a = std::pow(2.0, -1.0 / p);
    res.points = {-a, a};
    res.log_delta_n = std::log(2.0);
    res.converged = true;
    const auto rep = lagrange_residual(p, res.points);
    res.lagrange_lambda_hat = rep.lambda_hat;
    for (std::size_t k = 0; k < rep.residuals.size(); ++k)
      if (rep.applicable[k])
        res.max_lagrange_residual =
            std::max(res.max_lagrange_residual, std::fabs(rep.residuals[k]));
    return res;
  }

  std::vector<Eigen::VectorXd> starts;
  {
    const NodeSet gl = gauss_lobatto_nodes(n);
    Eigen::VectorXd t0(n);
    for (int i = 0; i < n; ++i) t0[i] = gl.points[i];
    normalize_lp(p, t0);
    starts.push_back(t0);
  }
  if (p < 1.0) {
    Rng rng(cfg.seed);
    for (int r = 0; r < cfg.restarts; ++r) {
      Eigen::VectorXd t0(n);
      for (int i = 0; i < n; ++i) t0[i] = rng.normal();
      std::sort(t0.data(), t0.data() + n);
      normalize_lp(p, t0);
      starts.push_back(t0);
    }
  }

  std::vector<bool> no_frozen(n, false);
  BfgsOutcome best;
  std::vector<bool> best_frozen = no_frozen;
  int total_iter = 0;
  for (const auto& t0 : starts) {
    BfgsOutcome out = bfgs_maximize(p, t0, no_frozen, cfg);
    total_iter += out.iterations;
    std::vector<bool> frozen = no_frozen;
    if (p <= 1.0) {
      // A coordinate driven to 0 marks a nonsmooth stationary point; pin it
      // and re-optimize the rest (the pinned condition is alpha_k t_k = 0).
      int k_min = 0;
      for (int i = 1; i < n; ++i)
        if (std::fabs(out.t[i]) < std::fabs(out.t[k_min])) k_min = i;
      const double scale = out.t.lpNorm<Eigen::Infinity>();
      if (std::fabs(out.t[k_min]) < 1e-3 * scale) {
        Eigen::VectorXd t1 = out.t;
        t1[k_min] = 0.0;
        std::vector<bool> fr = no_frozen;
        fr[k_min] = true;
        BfgsOutcome pinned = bfgs_maximize(p, t1, fr, cfg);
        total_iter += pinned.iterations;
        if (pinned.value > out.value) {
          out = pinned;
          frozen = fr;
        }
      }
    }
    if (out.value > best.value) {
      best = out;
      best_frozen = frozen;
    }
  }

  Eigen::VectorXd t = best.t;
  normalize_lp(p, t);
  std::sort(t.data(), t.data() + n);
  res.points.assign(t.data(), t.data() + n);
  res.log_delta_n = objective_impl(p, t);
  res.iterations = total_iter;
  res.converged = best.converged;

  const auto rep = lagrange_residual(p, res.points);
  res.lagrange_lambda_hat = rep.lambda_hat;
  for (std::size_t k = 0; k < rep.residuals.size(); ++k)
    if (rep.applicable[k])
      res.max_lagrange_residual =
          std::max(res.max_lagrange_residual, std::fabs(rep.residuals[k]));
  return res;
}

LagrangeReport lagrange_residual(double p, std::span<const double> t) {
  const int n = static_cast<int>(t.size());
  if (n < 2) throw std::invalid_argument("lagrange_residual: need >= 2 points");
  LagrangeReport rep;
  rep.residuals.resize(n);
  rep.applicable.resize(n);
  const double lambda = 0.5 * static_cast<double>(n) * (n - 1);
  for (int k = 0; k < n; ++k) {
    double alpha = 0.0;
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      const double d = t[k] - t[i];
      if (d == 0.0)
        throw std::domain_error("lagrange_residual: duplicate points");
      alpha += 1.0 / d;
    }
    rep.lambda_hat += alpha * t[k];
    if (t[k] == 0.0) {
      rep.residuals[k] = 0.0;  // alpha_k t_k = 0 holds trivially
      rep.applicable[k] = false;
    } else {
      const double sk = t[k] > 0 ? 1.0 : -1.0;
      rep.residuals[k] =
          alpha - lambda * sk * std::pow(std::fabs(t[k]), p - 1.0);
      rep.applicable[k] = true;
    }
  }
  return rep;
}

}  // namespace mball
