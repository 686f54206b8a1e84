#include "nls/quadrature.hpp"

#include <cmath>
#include <string>

namespace nls::quadrature {

namespace {

// Legendre P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    const double deriv = n * (x * p1 - p0) / (x * x - 1.0);
    return {p1, deriv};
}

}  // namespace

GaussRule gauss_legendre01(int n) {
    if (n < 1 || n > 8)
        throw ValidationError("gauss rule: order must lie in [1, 8], got " + std::to_string(n));
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    if (n == 1) {
        rule.nodes[0] = 0.5;
        rule.weights[0] = 1.0;
        return rule;
    }
    for (int i = 0; i < n; ++i) {
        // Newton from the Chebyshev-angle initial guess; roots on [-1, 1]
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 60; ++it) {
            const auto [p, dp] = legendre(n, x);
            const double step = p / dp;
            x -= step;
            if (std::abs(step) < 1e-15) break;
        }
        const auto [p, dp] = legendre(n, x);
        (void)p;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        // the Chebyshev-angle sweep walks roots from +1 down: store ascending
        rule.nodes[n - 1 - i] = 0.5 * (x + 1.0);
        rule.weights[n - 1 - i] = 0.5 * w;
    }
    return rule;
}

std::vector<double> lagrange_weights(const std::vector<double>& xs, double x) {
    const size_t m = xs.size();
    if (m == 0) throw ValidationError("lagrange: need at least one node");
    std::vector<double> w(m, 1.0);
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < m; ++j) {
            if (j == i) continue;
            const double denom = xs[i] - xs[j];
            if (denom == 0.0) throw ValidationError("lagrange: duplicate interpolation nodes");
            w[i] *= (x - xs[j]) / denom;
        }
    }
    return w;
}

}  // namespace nls::quadrature
