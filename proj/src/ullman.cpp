#include "mball/ullman.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mball/quadrature.hpp"

namespace mball {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_p(double p) {
  if (!(p > 0.0) || !std::isfinite(p))
    throw std::invalid_argument("ullman: p must be a positive real");
}

// h_p at scale 1 for 0 <= ax < 1, ax != 0 handled below; the substitution
// t = sqrt(x^2 + (1-x^2) u^2) removes the inverse-square-root endpoint
// singularity of the defining integral.
double h_unit(double p, double ax) {
  if (ax >= 1.0) return 0.0;
  if (ax == 0.0) {
    if (p > 1.0) return (p / kPi) / (p - 1.0);
    return std::numeric_limits<double>::infinity();
  }
  // t = x cosh(v) turns the defining integral into a smooth one on [0, V]:
  //   h = (p/pi) int_0^V (x cosh v)^{p-1} dv,  V = log((1 + sqrt(1-x^2))/x),
  // uniformly cheap even for x near 0 (where the original form needs
  // resolution down to scale x).
  const double c = std::sqrt((1.0 - ax) * (1.0 + ax));
  const double big_v = std::log((1.0 + c) / ax);
  const double lx = std::log(ax);
  const auto log_cosh = [](double v) {
    return v + std::log1p(std::exp(-2.0 * v)) - std::log(2.0);
  };
  if (p <= 1.0) {
    // Keep the integrand O(1): pull the diverging x^{p-1} prefactor out so
    // the absolute tolerance is meaningful even for tiny x.
    const double val = quad::integrate(
        [&](double v) { return std::exp((p - 1.0) * log_cosh(v)); }, 0.0,
        big_v, 1e-12);
    return (p / kPi) * std::exp((p - 1.0) * lx) * val;
  }
  const double val = quad::integrate(
      [&](double v) { return std::exp((p - 1.0) * (lx + log_cosh(v))); }, 0.0,
      big_v, 1e-12);
  return (p / kPi) * val;
}

}  // namespace

UllmanDist::UllmanDist(double p_, double b_) : p(p_), b(b_) {
  check_p(p);
  if (!(b > 0.0) || !std::isfinite(b))
    throw std::invalid_argument("UllmanDist: scale b must be positive");
}

double lambda_p(double p) {
  check_p(p);
  return 2.0 / std::sqrt(kPi) *
         std::exp(std::lgamma(0.5 * (p + 1.0)) - std::lgamma(0.5 * p));
}

double lambda_p_quadrature(double p) {
  check_p(p);
  // |x|^p / sqrt(1-x^2): substitute x = sin(theta).
  const double val = quad::integrate(
      [&](double th) { return std::pow(std::sin(th), p); }, 0.0, 0.5 * kPi,
      1e-12);
  return 2.0 * (p / kPi) * val;
}

double ullman_pdf(const UllmanDist& dist, double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("ullman_pdf: non-finite x");
  const double ax = std::fabs(x) / dist.b;
  return h_unit(dist.p, ax) / dist.b;
}

double ullman_cdf(const UllmanDist& dist, double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("ullman_cdf: non-finite x");
  const double z = x / dist.b;
  if (z <= -1.0) return 0.0;
  if (z >= 1.0) return 1.0;
  if (z < 0.0) return 1.0 - ullman_cdf(UllmanDist(dist.p, 1.0), -z);
  if (z == 0.0) return 0.5;
  const double p = dist.p;
  // F(z) - 1/2 = z^p/2 + (p/pi) int_z^1 t^{p-1} asin(z/t) dt, with the same
  // substitution t = sqrt(z^2 + (1-z^2) u^2) as in the density.
  const double z2 = z * z;
  const double c = 1.0 - z2;
  const double tail = quad::integrate(
      [&](double u) {
        const double t2 = z2 + c * u * u;
        const double t = std::sqrt(t2);
        return u * std::pow(t2, 0.5 * (p - 2.0)) * std::asin(z / t);
      },
      0.0, 1.0, 1e-12);
  const double f = 0.5 + 0.5 * std::pow(z, p) + (p / kPi) * c * tail;
  return std::clamp(f, 0.0, 1.0);
}

double ullman_abs_moment(double p, double q) {
  check_p(p);
  if (!(q > 0.0) || !std::isfinite(q))
    throw std::invalid_argument("ullman_abs_moment: q must be positive");
  return p / (p + q) *
         std::exp(std::lgamma(0.5 * (q + 1.0)) - std::lgamma(0.5 * (q + 2.0))) /
         std::sqrt(kPi);
}

std::vector<double> ullman_sample(const UllmanDist& dist, std::size_t count,
                                  Rng& rng) {
  std::vector<double> out(count);
  for (auto& v : out) {
    const double a = std::cos(kPi * rng.uniform());
    const double b = std::pow(rng.uniform(), 1.0 / dist.p);
    v = dist.b * a * b;
  }
  return out;
}

namespace {

double potential_at(double p, double y, double tol) {
  const auto h = [&](double x) { return h_unit(p, std::fabs(x)); };

  // Split points of [-1,1]: the singularity of log|x-y| at y and the possible
  // density singularity at 0 (p <= 1). Segments touching y use x = y -+ s^2.
  double pts[4] = {-1.0, 0.0, y, 1.0};
  std::sort(pts, pts + 4);

  // Integrates over one half-segment whose singular point (if any) is the
  // endpoint `e`; the other end `inner` is regular by construction.
  const auto piece = [&](double e, double inner) {
    if (std::fabs(inner - e) < 1e-15) return 0.0;
    if (e == y) {
      // x = y +- s^2 absorbs the log singularity at y.
      const double sgn = inner > y ? 1.0 : -1.0;
      const double s1 = std::sqrt(std::fabs(inner - y));
      return quad::integrate(
          [&](double s) { return 4.0 * s * h(y + sgn * s * s) * std::log(s); },
          0.0, s1, tol);
    }
    if (e == 0.0 && p <= 1.0) {
      // The density itself diverges at 0 for p <= 1; x = +-s^2 keeps
      // s * h(s^2) bounded up to a log factor.
      const double sgn = inner > 0.0 ? 1.0 : -1.0;
      const double s1 = std::sqrt(std::fabs(inner));
      return quad::integrate(
          [&](double s) {
            const double x = sgn * s * s;
            return 2.0 * s * h(x) * std::log(std::fabs(x - y));
          },
          0.0, s1, tol);
    }
    const double lo = std::min(e, inner), hi = std::max(e, inner);
    return quad::integrate(
        [&](double x) { return h(x) * std::log(std::fabs(x - y)); }, lo, hi,
        tol);
  };

  // Each segment between adjacent split points is halved so that at most one
  // singular endpoint lands in each piece.
  double total = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double a = pts[i], b = pts[i + 1];
    if (b - a < 1e-15) continue;
    const double c = 0.5 * (a + b);
    total += piece(a, c) + piece(b, c);
  }
  return total;
}

}  // namespace

PotentialReport log_potential(double p, double y) {
  check_p(p);
  if (!(std::fabs(y) <= 1.0))
    throw std::domain_error("log_potential: |y| must be <= 1");
  PotentialReport rep;
  rep.p = p;
  rep.y = y;
  rep.potential_value = potential_at(p, y, 1e-9);
  rep.identity_rhs =
      std::pow(std::fabs(y), p) / lambda_p(p) - std::log(2.0) - 1.0 / p;
  rep.abs_error = std::fabs(rep.potential_value - rep.identity_rhs);
  return rep;
}

double free_entropy(double p) {
  check_p(p);
  return -std::log(2.0) - 1.0 / (2.0 * p);
}

double free_entropy_mc(double p, std::size_t pairs, std::uint64_t seed) {
  check_p(p);
  if (pairs == 0) throw std::invalid_argument("free_entropy_mc: pairs == 0");
  // A pair (X, Y) = (A1*B1, A2*B2) contributes E_{A2} log|X - A2*B2|, the
  // log-potential of the arcsine law on [-B2, B2] at X:
  //   log(B2/2)                          if |X| <= B2,
  //   log((|X| + sqrt(X^2 - B2^2))/2)    otherwise.
  // The remaining three uniforms are stratified on a jittered k^3 grid.
  const auto k = static_cast<std::size_t>(
      std::llround(std::ceil(std::cbrt(static_cast<double>(pairs)))));
  Rng rng(seed);
  const double inv_k = 1.0 / static_cast<double>(k);
  const double inv_p = 1.0 / p;
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t l = 0; l < k; ++l) {
        const double u1 = (static_cast<double>(i) + rng.uniform()) * inv_k;
        const double u2 = (static_cast<double>(j) + rng.uniform()) * inv_k;
        const double u3 = (static_cast<double>(l) + rng.uniform()) * inv_k;
        const double x = std::cos(kPi * u1) * std::pow(u2, inv_p);
        const double b = std::pow(u3, inv_p);
        const double ax = std::fabs(x);
        if (ax <= b)
          sum += std::log(0.5 * b);
        else
          sum += std::log(0.5 * (ax + std::sqrt(ax * ax - b * b)));
      }
  return sum / static_cast<double>(k * k * k);
}

double free_entropy_quadrature(double p) {
  check_p(p);
  // 2 int_0^1 h_p(y) P_p(y) dy with the inner potential by singular
  // quadrature. Tolerances are looser than the production path: this is a
  // test oracle, and the cost is a full adaptive pass per inner evaluation.
  const auto f = [&](double y) {
    return h_unit(p, y) * potential_at(p, y, 1e-7);
  };
  return 2.0 * quad::integrate(f, 0.0, 1.0, 1e-6, 16);
}

namespace {

double log_pair_sum(const std::vector<double>& x) {
  const std::size_t n = x.size();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = std::fabs(x[i] - x[j]);
      if (d == 0.0)
        throw std::domain_error("energy/j functional: duplicate atoms");
      s += std::log(d);
    }
  return s;
}

}  // namespace

double energy_functional(double p, const EmpiricalMeasure& mu) {
  check_p(p);
  const std::size_t n = mu.size();
  if (n < 2) throw std::invalid_argument("energy_functional: need >= 2 atoms");
  const double pair_mean =
      log_pair_sum(mu.atoms()) * 2.0 / (static_cast<double>(n) * (n - 1));
  return -pair_mean + 2.0 * mu.abs_moment(p) / lambda_p(p);
}

double j_functional(double p, const EmpiricalMeasure& mu) {
  check_p(p);
  const std::size_t n = mu.size();
  if (n < 2) throw std::invalid_argument("j_functional: need >= 2 atoms");
  const double mp = mu.abs_moment(p);
  if (mp == 0.0) throw std::domain_error("j_functional: measure concentrated at 0");
  const double pair_mean =
      log_pair_sum(mu.atoms()) * 2.0 / (static_cast<double>(n) * (n - 1));
  return pair_mean - std::log(mp) / p;
}

}  // namespace mball
