#pragma once

/** \file quadrature.hpp
 *  \brief Gauss-Legendre rules.
 */

#include <cmath>
#include <vector>

#include "errors.hpp"

namespace shiftlab {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [a, b]; nodes by Newton iteration on P_n.
inline QuadratureRule gauss_legendre(int n, double a = -1.0, double b = 1.0) {
    if (n < 1) throw InputError("quadrature needs at least one node");
    QuadratureRule rule;
    rule.nodes.resize(std::size_t(n));
    rule.weights.resize(std::size_t(n));
    const double pi = 3.14159265358979323846;
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[std::size_t(i)] = mid - half * x;
        rule.nodes[std::size_t(n - 1 - i)] = mid + half * x;
        rule.weights[std::size_t(i)] = half * w;
        rule.weights[std::size_t(n - 1 - i)] = half * w;
    }
    return rule;
}

/// Composite rule: \p panels equal panels on [a, b], each with an \p order-point Gauss-Legendre rule.
inline QuadratureRule composite_gauss_legendre(int panels, int order, double a, double b) {
    if (panels < 1) throw InputError("composite quadrature needs at least one panel");
    const QuadratureRule base = gauss_legendre(order, 0.0, 1.0);
    QuadratureRule rule;
    const double width = (b - a) / panels;
    for (int p = 0; p < panels; ++p)
        for (int j = 0; j < order; ++j) {
            rule.nodes.push_back(a + width * (p + base.nodes[std::size_t(j)]));
            rule.weights.push_back(width * base.weights[std::size_t(j)]);
        }
    return rule;
}

}  // namespace shiftlab
