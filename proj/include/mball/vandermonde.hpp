#pragma once

#include <span>
#include <vector>

namespace mball {

enum class NodeKind { gauss_lobatto, fekete, generic };

struct NodeSet {
  std::vector<double> points;  // strictly increasing
  NodeKind kind = NodeKind::generic;
};

// sum_{i<j} log|t_j - t_i|. Throws on duplicate points.
double log_vandermonde(std::span<const double> points);

// t_j = -cos((j-1) pi / (n-1)), j = 1..n.
NodeSet gauss_lobatto_nodes(int n);

// |log_vandermonde(GL nodes) - [(n+1-n^2/2) log 2 + (n/2) log(n-1)]|.
double gl_vandermonde_identity_gap(int n);

// {-1, +1} plus the roots of the Jacobi polynomial P_{n-2}^{(1,1)}, computed
// as eigenvalues of the symmetric tridiagonal recurrence matrix.
NodeSet fekete_points(int n);

// delta_k = exp((2/(k(k-1))) log_vandermonde(fekete_points(k))).
double k_diameter(int k);

}  // namespace mball
