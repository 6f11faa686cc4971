#include <cmath>

#include <doctest.h>

#include "mball/quadrature.hpp"

using mball::quad::integrate;

TEST_CASE("polynomials are exact") {
  CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(integrate([](double x) { return std::pow(x, 7) - 3.0 * x; }, -2.0, 3.0) ==
        doctest::Approx(6305.0 / 8.0 - 7.5).epsilon(1e-13));
}

TEST_CASE("oscillatory and transcendental integrands") {
  const double pi = 3.14159265358979323846;
  CHECK(integrate([](double x) { return std::sin(x); }, 0.0, pi) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(integrate([](double x) { return std::exp(-x * x); }, -8.0, 8.0) ==
        doctest::Approx(std::sqrt(pi)).epsilon(1e-12));
  CHECK(integrate([](double x) { return std::sin(50.0 * x); }, 0.0, 1.0) ==
        doctest::Approx((1.0 - std::cos(50.0)) / 50.0).epsilon(1e-10));
}

TEST_CASE("integrable endpoint singularities") {
  CHECK(integrate([](double x) { return 1.0 / std::sqrt(x); }, 1e-300, 1.0) ==
        doctest::Approx(2.0).epsilon(1e-7));
  CHECK(integrate([](double x) { return std::log(x); }, 1e-300, 1.0) ==
        doctest::Approx(-1.0).epsilon(1e-7));
}

TEST_CASE("orientation and degenerate interval") {
  CHECK(integrate([](double x) { return x; }, 1.0, 0.0) ==
        doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(integrate([](double x) { return x; }, 2.0, 2.0) == 0.0);
}
