#pragma once

#include <vector>

namespace fracbvp::quadrature {

/// Nodes and weights on [-1, 1].
struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss rule for the weight (1 - s)^alpha (1 + s)^beta, alpha, beta > -1,
/// computed by the Golub-Welsch eigenvalue method.
Rule gauss_jacobi(int n, double alpha, double beta);

/// n-point Gauss-Legendre rule (alpha = beta = 0).
Rule gauss_legendre(int n);

}  // namespace fracbvp::quadrature
