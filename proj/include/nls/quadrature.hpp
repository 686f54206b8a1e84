#pragma once
// Gauss-Legendre rules on (0,1) and Lagrange interpolation weights: the two
// ingredients the Duhamel integral needs to evaluate node-sampled integrands
// at off-node quadrature abscissae.

#include <vector>

#include "nls/errors.hpp"

namespace nls::quadrature {

struct GaussRule {
    std::vector<double> nodes;    // strictly inside (0,1), ascending
    std::vector<double> weights;  // positive, summing to 1
};

// n-point Gauss-Legendre rule mapped to (0,1); exact for polynomials of
// degree <= 2n-1. Supported n: 1..8.
GaussRule gauss_legendre01(int n);

// Lagrange basis values l_i(x) for distinct interpolation nodes xs:
// interpolant(x) = sum_i l_i(x) f(xs[i]). Exact for polynomials of degree
// < xs.size(); the weights always sum to 1.
std::vector<double> lagrange_weights(const std::vector<double>& xs, double x);

}  // namespace nls::quadrature
