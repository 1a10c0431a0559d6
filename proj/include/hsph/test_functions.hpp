#pragma once

#include <cmath>

#include "hsph/common.hpp"

namespace hsph {

/// Fourth power of the Koranyi norm, rho^4 = r^4/16 + t^2. A polynomial in
/// (r, t), which keeps the bump profiles below piecewise polynomial.
inline double koranyi_rho4(double r, double t) {
    const double r2 = r * r;
    return r2 * r2 / 16.0 + t * t;
}

/// Bump supported exactly on the closed Koranyi ball of the given radius:
/// f = sqrt(max(0, 1 - (rho/R)^4)). |f|^2 vanishes linearly at the support
/// boundary, which is what makes the norm-ratio estimators converge at
/// O(1/j) with a small constant.
inline double ball_bump(double radius, double r, double t) {
    const double s = 1.0 - koranyi_rho4(r, t) / std::pow(radius, 4);
    return s > 0.0 ? std::sqrt(s) : 0.0;
}

/// Bump supported on the Koranyi annulus r1 <= rho <= r2, peak value 1.
inline double annulus_bump(double r1, double r2, double r, double t) {
    const double a = std::pow(r1, 4), b = std::pow(r2, 4);
    const double q = koranyi_rho4(r, t);
    const double s = (q - a) * (b - q);
    if (s <= 0.0) return 0.0;
    const double peak = (b - a) * (b - a) / 4.0;
    return std::sqrt(s / peak);
}

/// Gaussian e^{-a (r^2 + t^2)}; numerically compactly supported on any grid
/// whose extent makes the boundary values negligible.
inline double gaussian_bump(double a, double r, double t) {
    return std::exp(-a * (r * r + t * t));
}

/// Quintic smoothstep  u^3 (10 - 15 u + 6 u^2), clamped to [0, 1]; C^2 at
/// both junctions.
inline double smoothstep5(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    return u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}

/// Annular profile for the growth demo: nonpositive, supported in 1<|z|<4,
/// identically -1 on 2<|z|<3, smoothstep ramps of width 1 on both sides.
inline double growth_demo_g(double r) {
    return -smoothstep5(r - 1.0) * smoothstep5(4.0 - r);
}

/// Even C-infinity bump on [-1, 1] for the growth demo, h(0) = 1.
inline double growth_demo_h(double t) {
    const double u = t * t;
    if (u >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - u));
}

/// Gaussian lambda-profile e^{-((lambda - center)/width)^2} for fan-side
/// band-limited test functions.
inline double fan_gaussian_profile(double center, double width, double lambda) {
    const double u = (lambda - center) / width;
    return std::exp(-u * u);
}

/// sqrt-edge band profile on [a, b]: sqrt(max(0, (la-a)(b-la))) normalized to
/// peak 1. |psi|^2 vanishes linearly at both band edges.
inline double fan_band_profile(double a, double b, double lambda) {
    const double s = (lambda - a) * (b - lambda);
    if (s <= 0.0) return 0.0;
    return std::sqrt(s) * 2.0 / (b - a);
}

} // namespace hsph
