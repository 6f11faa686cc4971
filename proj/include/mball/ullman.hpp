#pragma once

#include <cstdint>
#include <vector>

#include "mball/empirical.hpp"
#include "mball/rng.hpp"

namespace mball {

// The equilibrium measure for the external field |x|^p / lambda_p, supported
// on [-b, b]. The density at scale 1 is
//   h_p(x) = (p/pi) * int_{|x|}^1 t^{p-1} / sqrt(t^2 - x^2) dt,  |x| <= 1,
// and the scaled density is (1/b) h_p(x/b).
struct UllmanDist {
  double p = 2.0;
  double b = 1.0;

  UllmanDist(double p_, double b_ = 1.0);
};

struct PotentialReport {
  double p = 0.0;
  double y = 0.0;
  double potential_value = 0.0;
  double identity_rhs = 0.0;
  double abs_error = 0.0;
};

// lambda_p = (2/sqrt(pi)) Gamma((p+1)/2) / Gamma(p/2).
double lambda_p(double p);

// Quadrature form of lambda_p: (p/pi) int_{-1}^1 |x|^p / sqrt(1-x^2) dx.
// Cross-check only; the closed form above is the production path.
double lambda_p_quadrature(double p);

// Density of the scaled Ullman distribution. For p <= 1 the density diverges
// at x = 0; the pointwise value there is +infinity.
double ullman_pdf(const UllmanDist& dist, double x);

// CDF by quadrature of the swapped integral representation
//   F(x) = 1/2 + x^p/2 + (p/pi) int_x^1 t^{p-1} asin(x/t) dt,  0 <= x <= 1,
// which avoids the singular density entirely.
double ullman_cdf(const UllmanDist& dist, double x);

// E|U|^q for U ~ Ullman(p):  (p/(p+q)) Gamma((q+1)/2) / (sqrt(pi) Gamma((q+2)/2)).
double ullman_abs_moment(double p, double q);

// Exact sampling via the product representation U = A*B with A arcsine on
// [-1,1] and B with density p x^{p-1} on [0,1].
std::vector<double> ullman_sample(const UllmanDist& dist, std::size_t count,
                                  Rng& rng);

// Logarithmic potential of the Ullman density against log|x - y| and the
// closed-form right-hand side |y|^p/lambda_p - log 2 - 1/p.
PotentialReport log_potential(double p, double y);

// The double log-energy integral of the Ullman density: -log 2 - 1/(2p).
double free_entropy(double p);

// Independent verification of free_entropy by stratified Monte Carlo over
// `pairs` sample pairs. The arcsine factor of each pair is integrated in
// closed form (log-potential of the arcsine law); the remaining three
// uniforms are sampled on a jittered grid. Unbiased, seed-deterministic.
double free_entropy_mc(double p, std::size_t pairs, std::uint64_t seed);

// Nested-quadrature evaluation of the double integral (slow, test oracle).
double free_entropy_quadrature(double p);

// Discrete energy functional with U-statistic weights 1/(n(n-1)) on
// off-diagonal pairs:
//   E_p(mu) = -(2/(n(n-1))) sum_{i<j} log|x_i-x_j| + (2/lambda_p) mean|x_i|^p.
double energy_functional(double p, const EmpiricalMeasure& mu);

// Scale-invariant functional
//   J_p(mu) = (2/(n(n-1))) sum_{i<j} log|x_i-x_j| - (1/p) log mean|x_i|^p.
double j_functional(double p, const EmpiricalMeasure& mu);

}  // namespace mball
