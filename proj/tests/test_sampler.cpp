#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include <doctest.h>

#include "mball/sampler.hpp"

using namespace mball;

namespace {

double ks_distance(std::vector<double> xs,
                   const std::function<double(double)>& cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double ks = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    ks = std::max(ks, std::fabs((i + 1) / n - f));
    ks = std::max(ks, std::fabs(i / n - f));
  }
  return ks;
}

std::vector<double> sum_sq(const std::vector<EigenSample>& samples) {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) {
    double v = 0.0;
    for (double x : s.values) v += x * x;
    out.push_back(v);
  }
  return out;
}

double two_sample_ks(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double ks = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    ks = std::max(ks, std::fabs(static_cast<double>(i) / a.size() -
                                static_cast<double>(j) / b.size()));
  }
  return ks;
}

}  // namespace

TEST_CASE("loggas_logdensity: symmetry, collisions") {
  const EnsembleSpec spec(3, 2.0, PNorm(2.0));
  const std::vector<double> x{0.3, -0.8, 1.1};
  const std::vector<double> perm{1.1, 0.3, -0.8};
  const std::vector<double> neg{-0.3, 0.8, -1.1};
  CHECK(loggas_logdensity(spec, x) ==
        doctest::Approx(loggas_logdensity(spec, perm)).epsilon(1e-13));
  CHECK(loggas_logdensity(spec, x) ==
        doctest::Approx(loggas_logdensity(spec, neg)).epsilon(1e-13));
  CHECK(std::isinf(loggas_logdensity(spec, std::vector<double>{0.5, 0.5, 1.0})));
}

TEST_CASE("mcmc determinism") {
  const EnsembleSpec spec(4, 2.0, PNorm(3.0));
  ChainConfig cfg;
  cfg.burn_in = 200;
  cfg.seed = 77;
  const auto a = sample_loggas_mcmc(spec, 50, cfg);
  const auto b = sample_loggas_mcmc(spec, 50, cfg);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(a[i].values == b[i].values);
}

TEST_CASE("tridiagonal oracle: semicircle second moment at beta=2") {
  // Density e^{-sum x^2} prod|dx|^2: E sum x_i^2 = n/2 + n(n-1)/2 (exact
  // moments of the scaled Hermite ensemble).
  const int n = 6;
  const auto samples = sample_beta_hermite(n, 2.0, 20000, 5);
  double m = 0.0;
  for (const auto& s : samples)
    for (double x : s.values) m += x * x;
  m /= samples.size();
  CHECK(m == doctest::Approx(0.5 * n + 0.5 * n * (n - 1)).epsilon(0.02));
}

TEST_CASE("mcmc agrees with tridiagonal oracle at p=2") {
  const int n = 4;
  for (double beta : {1.0, 2.0}) {
    const EnsembleSpec spec(n, beta, PNorm(2.0));
    ChainConfig cfg;
    cfg.burn_in = 2000;
    cfg.thinning = 2 * n;
    cfg.seed = 13;
    const auto mcmc = sample_loggas_mcmc(spec, 4000, cfg);
    const auto oracle = sample_beta_hermite(n, beta, 4000, 14);
    CHECK(two_sample_ks(sum_sq(mcmc), sum_sq(oracle)) < 0.04);
  }
}

TEST_CASE("schechtman-zinn: norm law and membership") {
  const EnsembleSpec spec(4, 2.0, PNorm(2.0));
  ChainConfig cfg;
  cfg.seed = 21;
  const auto samples = sample_unit_ball_eigen(spec, 20000, cfg);
  std::vector<double> pow_norm;
  for (const auto& s : samples) {
    double norm_p = 0.0;
    for (double x : s.values) norm_p += x * x;
    const double norm = std::sqrt(norm_p);
    CHECK(norm <= 1.0 + 1e-12);
    pow_norm.push_back(std::pow(norm, spec.dim()));
  }
  // ||x||^{n+m} ~ uniform(0,1).
  CHECK(ks_distance(pow_norm, [](double u) { return u; }) < 0.015);
}

TEST_CASE("n=1 ball samples are uniform on [-1,1]") {
  const EnsembleSpec spec(1, 2.0, PNorm(2.0));
  ChainConfig cfg;
  cfg.seed = 31;
  const auto samples = sample_unit_ball_eigen(spec, 100000, cfg);
  std::vector<double> xs;
  for (const auto& s : samples) xs.push_back(s.values[0]);
  CHECK(ks_distance(xs, [](double x) {
          return std::clamp(0.5 * (x + 1.0), 0.0, 1.0);
        }) < 0.01);
}

TEST_CASE("classical lp ball sampler") {
  // n=2, p=2: squared radius uniform on [0,1].
  const auto disk = sample_classical_lp_ball(2, 2.0, 50000, 8);
  std::vector<double> r2;
  for (const auto& v : disk) r2.push_back(v[0] * v[0] + v[1] * v[1]);
  CHECK(ks_distance(r2, [](double u) { return std::clamp(u, 0.0, 1.0); }) < 0.01);
  // n=1: uniform on [-1,1].
  const auto seg = sample_classical_lp_ball(1, 3.0, 50000, 9);
  std::vector<double> xs;
  for (const auto& v : seg) xs.push_back(v[0]);
  CHECK(ks_distance(xs, [](double x) {
          return std::clamp(0.5 * (x + 1.0), 0.0, 1.0);
        }) < 0.01);
  // n=2, p=1: the l_1 ball fills half of the enclosing square.
  const auto cross = sample_classical_lp_ball(2, 1.0, 50000, 10);
  std::size_t inside = 0;
  for (const auto& v : cross)
    if (std::fabs(v[0]) <= 0.5 && std::fabs(v[1]) <= 0.5) ++inside;
  // The square [-1/2,1/2]^2 sits entirely inside the l_1 ball; its area is 1
  // against ball area 2, so the hit fraction is 1/2.
  CHECK(static_cast<double>(inside) / cross.size() == doctest::Approx(0.5).epsilon(0.02));
}
