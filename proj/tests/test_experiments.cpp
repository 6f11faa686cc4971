#include <cmath>

#include <doctest.h>

#include "mball/experiments.hpp"
#include "mball/quadrature.hpp"
#include "mball/rng.hpp"
#include "mball/ullman.hpp"

using namespace mball;

TEST_CASE("empirical_measure scaling") {
  EigenSample s;
  s.values = {3.0, -1.0, 2.0};
  const auto mu0 = empirical_measure(s, 0.0);
  CHECK(mu0.atoms() == std::vector<double>{-1.0, 2.0, 3.0});
  const auto mu1 = empirical_measure(s, 1.0);
  CHECK(mu1.atoms()[2] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("ks_to_scaled_ullman self-test with the exact sampler") {
  Rng rng(17);
  auto draws = ullman_sample(UllmanDist(2.0, 2.0), 10000, rng);
  const EmpiricalMeasure mu(std::move(draws));
  const auto fit = ks_to_scaled_ullman(mu, 2.0);
  CHECK(fit.scale_hat == doctest::Approx(2.0).epsilon(0.02));
  CHECK(fit.ks < 0.02);
}

TEST_CASE("ks_to_scaled_ullman degenerate input") {
  const EmpiricalMeasure one(std::vector<double>{0.7});
  const auto fit = ks_to_scaled_ullman(one, 2.0);
  CHECK(fit.ks > 0.4);
  CHECK_THROWS_AS(ks_to_scaled_ullman(EmpiricalMeasure(std::vector<double>{0.0}), 2.0),
                  std::domain_error);
}

TEST_CASE("wlln_statistic at q = p is the l_p norm") {
  EigenSample s;
  s.values = {0.3, -0.4, 0.1};
  const double stat = wlln_statistic(s, 2.0, 2.0);
  CHECK(stat == doctest::Approx(std::sqrt(0.09 + 0.16 + 0.01)).epsilon(1e-13));
}

TEST_CASE("wlln_experiment at p = 2 approaches C_pq") {
  const EnsembleSpec spec(40, 2.0, PNorm(2.0));
  ChainConfig chain;
  chain.seed = 2024;
  const auto est = wlln_experiment(spec, 4.0, 300, chain, 2);
  CHECK(std::fabs(est.value - est.metadata.at("c_pq")) < 0.05 * est.metadata.at("c_pq"));
  // Ball membership bounds the q = p statistic by 1.
  const auto estp = wlln_experiment(spec, 2.0, 200, chain, 2);
  CHECK(estp.value <= 1.0);
  CHECK(estp.value > 0.8);
}

TEST_CASE("wlln_experiment is thread-count invariant") {
  const EnsembleSpec spec(10, 2.0, PNorm(2.0));
  ChainConfig chain;
  chain.seed = 5;
  const auto a = wlln_experiment(spec, 4.0, 160, chain, 1);
  const auto b = wlln_experiment(spec, 4.0, 160, chain, 4);
  CHECK(a.value == b.value);
  CHECK(a.stderr_est == b.stderr_est);
}

TEST_CASE("estimate_log_I: analytic oracle n=2 p=inf") {
  // I = int int_{[-1,1]^2} |x-y|^beta = 2^{beta+3}/((beta+1)(beta+2)).
  const double beta = 2.0;
  const EnsembleSpec spec(2, beta, PNorm::infinity());
  const auto est = estimate_log_I(spec, 200000, 101, 8, 2);
  const double exact = std::log(std::pow(2.0, beta + 3.0) / ((beta + 1.0) * (beta + 2.0)));
  CHECK(std::fabs(est.value - exact) < 3.0 * est.stderr_est + 1e-4);
}

TEST_CASE("estimate_log_I: quadrature oracle n=2 p=2 beta=2") {
  // I = int_{x^2+y^2<=1} (x-y)^2 dx dy = pi/2 by symmetry (E(x-y)^2 over the
  // disk = 2 * second moment = 2 * area/4).
  const EnsembleSpec spec(2, 2.0, PNorm(2.0));
  const auto est = estimate_log_I(spec, 200000, 202, 8, 2);
  const double exact = std::log(3.14159265358979323846 / 2.0);
  CHECK(std::fabs(est.value - exact) < 3.0 * est.stderr_est + 1e-4);
}

TEST_CASE("estimate_log_I refuses n above the cap") {
  const EnsembleSpec spec(9, 2.0, PNorm(2.0));
  CHECK_THROWS_AS(estimate_log_I(spec, 100, 1, 8, 1), std::invalid_argument);
}

TEST_CASE("log_volume_ball at n = 1 is the interval") {
  const EnsembleSpec spec(1, 2.0, PNorm(2.0));
  const auto est = log_volume_ball(spec, 1000, 3, 1);
  CHECK(est.value == doctest::Approx(std::log(2.0)).epsilon(1e-10));
}

TEST_CASE("intersection_experiment: coupled monotone fractions") {
  const std::vector<double> grid{0.8, 0.9, 1.0, 1.1, 1.2};
  ChainConfig chain;
  chain.seed = 404;
  const auto rows = intersection_experiment(2.0, 4.0, 2.0, 20, grid, 200, chain, 2);
  REQUIRE(rows.size() == grid.size());
  for (std::size_t i = 1; i < rows.size(); ++i)
    CHECK(rows[i].second.value >= rows[i - 1].second.value);
  for (const auto& [t, est] : rows) {
    CHECK(est.value >= 0.0);
    CHECK(est.value <= 1.0);
    CHECK(est.metadata.at("threshold") ==
          doctest::Approx(1.02391521257858).epsilon(1e-10));
  }
  CHECK_THROWS_AS(intersection_experiment(2.0, 2.0, 2.0, 10, grid, 200, chain, 1),
                  std::invalid_argument);
}
