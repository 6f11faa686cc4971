#include "mball/vandermonde.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mball {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double log_vandermonde(std::span<const double> points) {
  const std::size_t n = points.size();
  if (n < 2) throw std::invalid_argument("log_vandermonde: need >= 2 points");
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = std::fabs(points[j] - points[i]);
      if (d == 0.0)
        throw std::domain_error("log_vandermonde: duplicate points");
      s += std::log(d);
    }
  return s;
}

NodeSet gauss_lobatto_nodes(int n) {
  if (n < 2) throw std::invalid_argument("gauss_lobatto_nodes: n must be >= 2");
  NodeSet set;
  set.kind = NodeKind::gauss_lobatto;
  set.points.resize(n);
  for (int j = 0; j < n; ++j)
    set.points[j] = -std::cos(static_cast<double>(j) * kPi / (n - 1));
  set.points.front() = -1.0;
  set.points.back() = 1.0;
  if (n % 2 == 1) set.points[n / 2] = 0.0;
  return set;
}

double gl_vandermonde_identity_gap(int n) {
  const NodeSet gl = gauss_lobatto_nodes(n);
  const double lhs = log_vandermonde(gl.points);
  const double rhs = (n + 1.0 - 0.5 * n * n) * std::log(2.0) +
                     0.5 * n * std::log(static_cast<double>(n - 1));
  return std::fabs(lhs - rhs);
}

NodeSet fekete_points(int n) {
  if (n < 2) throw std::invalid_argument("fekete_points: n must be >= 2");
  NodeSet set;
  set.kind = NodeKind::fekete;
  const int m = n - 2;  // interior points = roots of P_m^{(1,1)}
  set.points.reserve(n);
  set.points.push_back(-1.0);
  if (m > 0) {
    // Symmetric Jacobi recurrence matrix for weight (1-x^2):
    // off-diagonal b_k = sqrt(k(k+2) / ((2k+1)(2k+3))).
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(m);
    Eigen::VectorXd sub(m > 1 ? m - 1 : 0);
    for (int k = 1; k < m; ++k)
      sub[k - 1] = std::sqrt(k * (k + 2.0) / ((2.0 * k + 1.0) * (2.0 * k + 3.0)));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
      throw std::runtime_error("fekete_points: tridiagonal eigensolver failed");
    for (int i = 0; i < m; ++i) set.points.push_back(solver.eigenvalues()[i]);
    std::sort(set.points.begin() + 1, set.points.end());
  }
  set.points.push_back(1.0);
  return set;
}

double k_diameter(int k) {
  if (k < 2) throw std::invalid_argument("k_diameter: k must be >= 2");
  const NodeSet f = fekete_points(k);
  return std::exp(2.0 / (static_cast<double>(k) * (k - 1)) *
                  log_vandermonde(f.points));
}

}  // namespace mball
