#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace mball::quad {

// Gauss-Kronrod 7-15 node pair on [-1,1].
namespace detail {

inline constexpr double kronrod_x[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kronrod_w[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double gauss_w[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <typename F>
struct GK15Result {
  double value;
  double error;
};

template <typename F>
GK15Result<F> gk15(const F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double resk = 0.0, resg = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double dx = h * kronrod_x[i];
    double fv;
    if (i == 7) {
      fv = f(c);
    } else {
      fv = f(c - dx) + f(c + dx);
    }
    resk += kronrod_w[i] * fv;
    if (i % 2 == 1) resg += gauss_w[i / 2] * fv;
  }
  resk *= h;
  resg *= h;
  return {resk, std::fabs(resk - resg)};
}

template <typename F>
double adaptive(const F& f, double a, double b, double tol, int depth) {
  const auto r = gk15(f, a, b);
  if (r.error <= tol || depth <= 0) return r.value;
  const double c = 0.5 * (a + b);
  return adaptive(f, a, c, 0.5 * tol, depth - 1) +
         adaptive(f, c, b, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive Gauss-Kronrod integration of f over [a,b].
template <typename F>
double integrate(const F& f, double a, double b, double abs_tol = 1e-11,
                 int max_depth = 40) {
  if (!(std::isfinite(a) && std::isfinite(b)))
    throw std::invalid_argument("quad::integrate: non-finite interval");
  if (a == b) return 0.0;
  return detail::adaptive(f, a, b, abs_tol, max_depth);
}

}  // namespace mball::quad
