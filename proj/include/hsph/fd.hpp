#pragma once

#include <span>
#include <vector>

#include "hsph/common.hpp"

namespace hsph {

/// Finite-difference weights at evaluation point x0 for derivatives of order
/// 0..max_order on an arbitrary stencil (Fornberg's recursion). Returns
/// weights[m][k] so that f^(m)(x0) ~ sum_k weights[m][k] * f(nodes[k]).
/// A stencil of s nodes is exact for polynomials of degree s-1, i.e. a
/// 5-point stencil gives 4th-order first and second derivatives.
inline std::vector<std::vector<double>> fd_weights(double x0,
                                                   std::span<const double> nodes,
                                                   int max_order) {
    const int s = static_cast<int>(nodes.size());
    if (s < max_order + 1) throw error("fd_weights: stencil too small for requested order");

    std::vector<std::vector<double>> w(max_order + 1, std::vector<double>(s, 0.0));
    double c1 = 1.0;
    double c4 = nodes[0] - x0;
    w[0][0] = 1.0;
    for (int i = 1; i < s; ++i) {
        const int mn = std::min(i, max_order);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = nodes[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int m = mn; m >= 1; --m)
                    w[m][i] = c1 * (m * w[m - 1][i - 1] - c5 * w[m][i - 1]) / c2;
                w[0][i] = -c1 * c5 * w[0][i - 1] / c2;
            }
            for (int m = mn; m >= 1; --m)
                w[m][j] = (c4 * w[m][j] - m * w[m - 1][j]) / c3;
            w[0][j] = c4 * w[0][j] / c3;
        }
        c1 = c2;
    }
    return w;
}

/// 4th-order centered first derivative on a uniform grid,
/// (-f[i+2] + 8 f[i+1] - 8 f[i-1] + f[i-2]) / (12 h).
template <class T>
T central_derivative4(const T* f, std::ptrdiff_t stride, double h) {
    return (-f[2 * stride] + 8.0 * f[stride] - 8.0 * f[-stride] + f[-2 * stride]) / (12.0 * h);
}

} // namespace hsph
