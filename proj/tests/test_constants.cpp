#include <cmath>

#include <doctest.h>

#include "mball/constants.hpp"
#include "mball/rng.hpp"

using namespace mball;

TEST_CASE("PNorm parsing and infinity handling") {
  CHECK(PNorm::parse("2").value() == 2.0);
  CHECK(PNorm::parse("0.5").value() == 0.5);
  CHECK(PNorm::parse("inf").is_inf());
  CHECK(PNorm::parse("inf").inv() == 0.0);
  CHECK(PNorm(4.0).inv() == doctest::Approx(0.25));
  CHECK(PNorm::infinity().str() == "inf");
  CHECK_THROWS_AS(PNorm(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(PNorm(0.0), std::invalid_argument);
  CHECK_THROWS_AS(PNorm::infinity().value(), std::logic_error);
}

TEST_CASE("EnsembleSpec dimensions") {
  const EnsembleSpec s(4, 2.0, PNorm(2.0));
  CHECK(s.m() == doctest::Approx(12.0));
  CHECK(s.dim() == doctest::Approx(16.0));
  CHECK_THROWS_AS(EnsembleSpec(0, 2.0, PNorm(2.0)), std::invalid_argument);
  CHECK_THROWS_AS(EnsembleSpec(2, -1.0, PNorm(2.0)), std::invalid_argument);
}

TEST_CASE("log_c_n_beta pinned values") {
  CHECK(log_c_n_beta(1, 2.0) == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(log_c_n_beta(3, 2.0) == doctest::Approx(3.02872454944003614).epsilon(1e-12));
  CHECK(log_c_n_beta(4, 1.0) == doctest::Approx(4.17345443528943631).epsilon(1e-12));
  CHECK(log_c_n_beta(2, 4.0) == doctest::Approx(1.19084748303069066).epsilon(1e-12));
}

TEST_CASE("c_{n,beta} asymptotics") {
  for (double beta : {1.0, 2.0, 4.0}) {
    const double target = std::pow(4.0 * 3.14159265358979323846 / beta, 0.5 * beta) *
                          std::exp(0.75 * beta);
    const auto ratio = [&](int n) {
      return std::pow(n, 0.5 * beta) *
             std::exp(2.0 / (static_cast<double>(n) * n) * log_c_n_beta(n, beta)) /
             target;
    };
    // The correction in the exponent is O(log n / n), so convergence of the
    // plain ratio is slow; assert the trend with measured tolerances.
    const double r200 = ratio(200), r2000 = ratio(2000), r20000 = ratio(20000);
    CHECK(std::fabs(r200 - 1.0) < 0.10);
    CHECK(std::fabs(r2000 - 1.0) < 0.015);
    CHECK(std::fabs(r20000 - 1.0) < 0.002);
    CHECK(std::fabs(r20000 - 1.0) < std::fabs(r2000 - 1.0));
    CHECK(std::fabs(r2000 - 1.0) < std::fabs(r200 - 1.0));
  }
}

TEST_CASE("Delta(p): pinned values and entropy route") {
  CHECK(delta_p_closed_form(PNorm(0.5)) ==
        doctest::Approx(1.2646197583415802).epsilon(1e-13));
  CHECK(delta_p_closed_form(PNorm(1.0)) ==
        doctest::Approx(0.95273613236509).epsilon(1e-13));
  CHECK(delta_p_closed_form(PNorm(2.0)) ==
        doctest::Approx(std::exp(-0.25)).epsilon(1e-13));
  CHECK(delta_p_closed_form(PNorm(4.0)) ==
        doctest::Approx(0.67055263906077272).epsilon(1e-13));
  CHECK(delta_p_closed_form(PNorm::infinity()) == 0.5);
  for (double p : {0.5, 1.0, 2.0, 4.0, 7.3})
    CHECK(delta_p_entropy_form(p) ==
          doctest::Approx(delta_p_closed_form(PNorm(p))).epsilon(1e-12));
  // Delta(p) -> 1/2 from above as p grows.
  CHECK(delta_p_closed_form(PNorm(200.0)) == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("b_p and C_pq pinned values") {
  CHECK(b_p(1.0) == doctest::Approx(3.14159265358979324).epsilon(1e-13));
  CHECK(b_p(2.0) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(b_p(4.0) == doctest::Approx(1.5196713713031851).epsilon(1e-13));
  CHECK(C_pq(2.0, 4.0) == doctest::Approx(1.18920711500272105).epsilon(1e-13));
  CHECK(C_pq(1.0, 3.0) == doctest::Approx(1.48728031630047438).epsilon(1e-13));
  CHECK(C_pq(3.0, 3.0) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("threshold: pinned values, collapse identity, degeneracy") {
  CHECK(intersection_threshold(2.0, 4.0).value ==
        doctest::Approx(1.02391521257858048).epsilon(1e-14));
  CHECK(intersection_threshold(1.0, 3.0).value ==
        doctest::Approx(1.10769831586077425).epsilon(1e-14));
  CHECK(intersection_threshold(2.0, 2.0).degenerate);
  CHECK(intersection_threshold(2.0, 2.0).value == 1.0);
  Rng rng(99);
  for (int i = 0; i < 25; ++i) {
    const double p = 0.5 + 7.5 * rng.uniform();
    const double q = 0.5 + 7.5 * rng.uniform();
    if (p == q) continue;
    CHECK(std::fabs(intersection_threshold(p, q).value - C_pq(p, q) * a_pq(p, q)) <
          1e-12);
  }
}

TEST_CASE("a_pq and a_p_beta") {
  CHECK(a_pq(2.0, 4.0) == doctest::Approx(0.86100663178107341).epsilon(1e-13));
  CHECK(a_pq(2.0, 2.0) == doctest::Approx(1.0).epsilon(1e-14));
  const double pi = 3.14159265358979323846;
  CHECK(a_p_beta(PNorm(2.0), 2.0) ==
        doctest::Approx(std::exp(-0.5) * 2.0 * pi * std::exp(1.5)).epsilon(1e-12));
  CHECK(a_p_beta(PNorm::infinity(), 2.0) ==
        doctest::Approx(0.25 * 2.0 * pi * std::exp(1.5)).epsilon(1e-12));
}

TEST_CASE("classical ball volume") {
  // p=2: unit ball volumes pi (n=2), 4 pi/3 (n=3); p=1: 2^n/n!; p=inf: 2^n.
  const double pi = 3.14159265358979323846;
  CHECK(log_vol_classical_ball(2, PNorm(2.0)) ==
        doctest::Approx(std::log(pi)).epsilon(1e-13));
  CHECK(log_vol_classical_ball(3, PNorm(2.0)) ==
        doctest::Approx(std::log(4.0 * pi / 3.0)).epsilon(1e-13));
  CHECK(log_vol_classical_ball(3, PNorm(1.0)) ==
        doctest::Approx(std::log(8.0 / 6.0)).epsilon(1e-13));
  CHECK(log_vol_classical_ball(5, PNorm::infinity()) ==
        doctest::Approx(5.0 * std::log(2.0)).epsilon(1e-13));
}

TEST_CASE("classical A_pq reference constant") {
  // At p = infinity: A = (1/Gamma(1+1/q)) ((q+1)/(q e))^{1/q}.
  const double q = 4.0;
  const double expect = std::exp(-std::lgamma(1.0 + 1.0 / q)) *
                        std::pow((q + 1.0) / (q * std::exp(1.0)), 1.0 / q);
  CHECK(A_pq_classical(PNorm::infinity(), q) == doctest::Approx(expect).epsilon(1e-13));
  CHECK_THROWS_AS(A_pq_classical(PNorm(3.0), 3.0), std::invalid_argument);
}

TEST_CASE("asymptotic volume radius composes its factors") {
  const EnsembleSpec spec(10, 2.0, PNorm(2.0));
  CHECK(asymptotic_volume_radius(spec) ==
        doctest::Approx(std::pow(10.0, -2.0) * a_p_beta(PNorm(2.0), 2.0))
            .epsilon(1e-13));
}
