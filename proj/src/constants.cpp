#include "mball/constants.hpp"

#include <cmath>

#include "mball/ullman.hpp"

namespace mball {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

PNorm PNorm::parse(const std::string& s) {
  if (s == "inf" || s == "infinity" || s == "oo") return PNorm::infinity();
  return PNorm(std::stod(s));
}

std::string PNorm::str() const {
  if (inf_) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", value_);
  return buf;
}

EnsembleSpec::EnsembleSpec(int n_, double beta_, PNorm p_)
    : n(n_), beta(beta_), p(p_) {
  if (n < 1) throw std::invalid_argument("EnsembleSpec: n must be >= 1");
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw std::invalid_argument("EnsembleSpec: beta must be positive");
}

double log_c_n_beta(int n, double beta) {
  if (n < 1) throw std::invalid_argument("log_c_n_beta: n must be >= 1");
  if (!(beta > 0.0)) throw std::invalid_argument("log_c_n_beta: beta <= 0");
  const double hb = 0.5 * beta;
  double s = 0.0;
  for (int k = 1; k <= n; ++k) {
    s += std::log(2.0) + hb * k * std::log(2.0 * kPi) - hb * std::log(2.0) -
         std::lgamma(hb * k);
  }
  s -= std::lgamma(n + 1.0);                            // 1/n!
  s -= n * (std::log(2.0) + hb * std::log(kPi) - std::lgamma(hb));
  return s;
}

double delta_p_closed_form(PNorm p) {
  if (p.is_inf()) return 0.5;
  const double pv = p.value();
  const double lg = std::log(pv) + 0.5 * std::log(kPi) +
                    std::lgamma(0.5 * pv) - 0.5 - std::lgamma(0.5 * (pv + 1.0));
  return 0.5 * std::exp(lg / pv);
}

double delta_p_entropy_form(double p) {
  return std::exp(free_entropy(p) - std::log(ullman_abs_moment(p, p)) / p);
}

double b_p(double p) {
  if (!(p > 0.0) || !std::isfinite(p))
    throw std::invalid_argument("b_p: p must be positive");
  const double lg = std::log(p) + 0.5 * std::log(kPi) + std::lgamma(0.5 * p) -
                    std::lgamma(0.5 * (p + 1.0));
  return std::exp(lg / p);
}

double C_pq(double p, double q) {
  return std::pow(ullman_abs_moment(p, q), 1.0 / q) /
         std::pow(ullman_abs_moment(p, p), 1.0 / p);
}

double a_p_beta(PNorm p, double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("a_p_beta: beta <= 0");
  return std::pow(delta_p_closed_form(p), beta) *
         std::pow(4.0 * kPi / beta, 0.5 * beta) * std::exp(0.75 * beta);
}

double a_pq(double p, double q) {
  return delta_p_closed_form(PNorm(q)) / delta_p_closed_form(PNorm(p));
}

ThresholdResult intersection_threshold(double p, double q) {
  if (!(p > 0.0) || !(q > 0.0) || !std::isfinite(p) || !std::isfinite(q))
    throw std::invalid_argument("intersection_threshold: p, q must be finite positive");
  if (p == q) return {1.0, true};
  ThresholdResult r;
  r.value = std::exp(0.5 / p - 0.5 / q) * std::pow(2.0 * p / (p + q), 1.0 / q);
  return r;
}

double A_pq_classical(PNorm p, double q) {
  if (!(q >= 1.0) || !std::isfinite(q))
    throw std::invalid_argument("A_pq_classical: q must be finite, >= 1");
  if (p.is_inf())
    return std::exp(-std::lgamma(1.0 + 1.0 / q)) *
           std::pow((q + 1.0) / (q * std::exp(1.0)), 1.0 / q);
  const double pv = p.value();
  if (pv == q) throw std::invalid_argument("A_pq_classical: p == q excluded");
  const double lg = (1.0 + 1.0 / q) * std::lgamma(1.0 + 1.0 / pv) -
                    std::lgamma(1.0 + 1.0 / q) -
                    std::lgamma((q + 1.0) / pv) / q + 1.0 / pv - 1.0 / q +
                    std::log(pv / q) / q;
  return std::exp(lg);
}

double asymptotic_volume_radius(const EnsembleSpec& spec) {
  const double expo = -spec.beta * (spec.p.inv() + 0.5);
  return std::pow(static_cast<double>(spec.n), expo) *
         a_p_beta(spec.p, spec.beta);
}

double log_vol_classical_ball(int n, PNorm p) {
  if (n < 1) throw std::invalid_argument("log_vol_classical_ball: n < 1");
  if (p.is_inf()) return n * std::log(2.0);
  const double ip = 1.0 / p.value();
  return n * (std::log(2.0) + std::lgamma(1.0 + ip)) -
         std::lgamma(1.0 + n * ip);
}

}  // namespace mball
