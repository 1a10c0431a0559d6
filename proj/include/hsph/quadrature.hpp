#pragma once

#include <cmath>
#include <vector>

#include "hsph/common.hpp"

namespace hsph {

/// Nodes and weights of a quadrature rule on [a, b].
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre rule with `count` points on [a, b]. Nodes are strictly
/// increasing and interior. Newton iteration on P_count, seeded with the
/// Chebyshev estimate; converges to ~1e-15 in a handful of steps.
inline QuadratureRule gauss_legendre(int count, double a, double b) {
    if (count < 1) throw error("gauss_legendre: count must be >= 1");
    if (!(a < b)) throw error("gauss_legendre: need a < b");

    QuadratureRule rule;
    rule.nodes.resize(count);
    rule.weights.resize(count);

    const int half = (count + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(pi * (i + 0.75) / (count + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // Legendre recurrence up to degree `count` at x.
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= count; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = count * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        // mirror: node i from the right end, count-1-i from the left
        rule.nodes[i] = -x;
        rule.nodes[count - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[count - 1 - i] = w;
    }

    const double mid = 0.5 * (a + b);
    const double hl = 0.5 * (b - a);
    for (int i = 0; i < count; ++i) {
        rule.nodes[i] = mid + hl * rule.nodes[i];
        rule.weights[i] *= hl;
    }
    return rule;
}

/// Composite Simpson rule on `count` uniformly spaced nodes covering [a, b].
/// `count` must be odd and >= 3.
inline QuadratureRule simpson_uniform(int count, double a, double b) {
    if (count < 3 || count % 2 == 0)
        throw error("simpson_uniform: count must be odd and >= 3");
    if (!(a < b)) throw error("simpson_uniform: need a < b");
    QuadratureRule rule;
    rule.nodes.resize(count);
    rule.weights.resize(count);
    const double h = (b - a) / (count - 1);
    for (int i = 0; i < count; ++i) {
        rule.nodes[i] = a + h * i;
        double w = (i == 0 || i == count - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        rule.weights[i] = w * h / 3.0;
    }
    return rule;
}

} // namespace hsph
