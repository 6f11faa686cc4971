#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace mball {

// Exponent p in (0, infinity]. Infinity is a distinguished state, not a large
// float, since several formulas branch structurally at p = infinity.
class PNorm {
 public:
  explicit PNorm(double p) : value_(p), inf_(false) {
    if (!(p > 0.0) || !std::isfinite(p))
      throw std::invalid_argument("PNorm: p must be a positive finite real");
  }
  static PNorm infinity() {
    PNorm p;
    return p;
  }
  static PNorm parse(const std::string& s);

  bool is_inf() const { return inf_; }
  double value() const {
    if (inf_) throw std::logic_error("PNorm: finite value of infinity requested");
    return value_;
  }
  // 1/p, with 1/infinity = 0.
  double inv() const { return inf_ ? 0.0 : 1.0 / value_; }
  std::string str() const;

 private:
  PNorm() : value_(0.0), inf_(true) {}
  double value_;
  bool inf_;
};

// Identifies the matrix ball: n x n self-adjoint matrices over the field with
// beta real dimensions, eigenvalue tuple constrained to the l_p ball.
struct EnsembleSpec {
  int n = 1;
  double beta = 2.0;
  PNorm p = PNorm(2.0);

  EnsembleSpec(int n_, double beta_, PNorm p_);

  // beta n(n-1)/2, the homogeneity degree of the Vandermonde factor.
  double m() const { return beta * n * (n - 1) / 2.0; }
  // Real dimension of the matrix space: beta n(n-1)/2 + n.
  double dim() const { return m() + n; }
};

// log c_{n,beta} of the Weyl integration formula, evaluated in the log domain.
double log_c_n_beta(int n, double beta);

// Delta(p) = (1/2) (p sqrt(pi) Gamma(p/2) / (sqrt(e) Gamma((p+1)/2)))^{1/p};
// Delta(infinity) = 1/2.
double delta_p_closed_form(PNorm p);

// Alternative route: exp(free_entropy(p) - (1/p) log E|U|^p).
double delta_p_entropy_form(double p);

// b_p = (p sqrt(pi) Gamma(p/2) / Gamma((p+1)/2))^{1/p}, the support radius of
// the limiting rescaled Ullman law.
double b_p(double p);

// C_{p,q} = (E|U|^q)^{1/q} / (E|U|^p)^{1/p} for U ~ Ullman(p).
double C_pq(double p, double q);

// a_p(beta) = Delta^beta(p) (4 pi / beta)^{beta/2} e^{3 beta / 4}.
double a_p_beta(PNorm p, double beta);

// a_{p,q} = Delta(q)/Delta(p); independent of beta.
double a_pq(double p, double q);

struct ThresholdResult {
  double value = 1.0;
  bool degenerate = false;  // p == q: theorem excludes this case
};

// The 0-1 law critical value e^{1/(2p) - 1/(2q)} (2p/(p+q))^{1/q}.
ThresholdResult intersection_threshold(double p, double q);

// Classical Schechtman-Schmuckenschlaeger constant for l_p^n balls
// (reference only; not used by the matrix-ball threshold).
double A_pq_classical(PNorm p, double q);

// Right-hand side of the volume asymptotics
//   vol^{2/n^2} ~ n^{-beta(1/p + 1/2)} Delta^beta(p) (4 pi/beta)^{beta/2} e^{3 beta/4}
// with the finite n of `spec` substituted. An asymptotic surrogate, not an
// exact volume.
double asymptotic_volume_radius(const EnsembleSpec& spec);

// log vol_n of the classical l_p^n ball: n log(2 Gamma(1+1/p)) - lgamma(1+n/p),
// and 2^n at p = infinity.
double log_vol_classical_ball(int n, PNorm p);

}  // namespace mball
