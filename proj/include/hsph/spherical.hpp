#pragma once

#include <cmath>
#include <optional>

#include "hsph/series.hpp"

namespace hsph {

namespace detail {

/// Ray index j >= 0 if real (xi, lambda), lambda != 0, lies on the fan
/// xi = |lambda| (2j + n), detected to 1e-12 relative.
inline std::optional<int> fan_ray_index(double xi, double lambda, int n) {
    if (lambda == 0.0) return std::nullopt;
    const double q = (xi / std::abs(lambda) - n) / 2.0;
    const double jr = std::round(q);
    if (jr < 0.0) return std::nullopt;
    const double xi_ray = std::abs(lambda) * (2.0 * jr + n);
    if (std::abs(xi - xi_ray) <= 1e-12 * std::max(1.0, std::abs(xi)))
        return static_cast<int>(jr);
    return std::nullopt;
}

/// e^{-x/2} l_j(x) for x >= 0. For j > 50 the polynomial is carried in
/// scaled form (mantissa, power of 2) alongside the log of the exponential,
/// so large intermediate l_k values cannot overflow.
inline double laguerre_times_exp(int j, int n, double x) {
    if (j <= 50) return std::exp(-x / 2.0) * normalized_laguerre(j, n, x);
    double lkm1 = 1.0;
    double lk = 1.0 - x / n;
    int scale2 = 0;
    for (int k = 1; k < j; ++k) {
        const double lkp1 = ((2.0 * k + n - x) * lk - k * lkm1) / (k + n);
        lkm1 = lk;
        lk = lkp1;
        if (std::abs(lk) > 1e200) {
            lk = std::ldexp(lk, -664);
            lkm1 = std::ldexp(lkm1, -664);
            scale2 += 664;
        }
    }
    const double sign = (lk >= 0.0) ? 1.0 : -1.0;
    const double lg = std::log(std::abs(lk)) + scale2 * std::log(2.0) - x / 2.0;
    return sign * std::exp(lg);
}

/// Radial factor of the spherical function (everything except e^{i lambda t})
/// by the entire series
///   e^{-lambda r^2/4} (1 + sum_k (r^2/4)^k/((n)_k k!) prod_{d<k}(lambda(2d+n)-xi)).
/// Optionally accumulates the xi-derivative of the same series. The factor is
/// even in lambda (Kummer transformation), so callers should reflect lambda
/// into Re >= 0 before calling; that keeps the outer exponential decaying.
inline void radial_series(cplx xi, cplx lambda, double r, int n, const SeriesControl& ctl,
                          cplx* value, cplx* dxi) {
    const double q = r * r / 4.0;
    cplx sum = 1.0;
    cplx dsum = 0.0;
    // term u_k = (r^2/4)^k/((n)_k k!) prod_{d<k}(lambda(2d+n)-xi) and its
    // xi-derivative v_k, both carried directly so neither the product of
    // factors nor the coefficient over/underflows on its own
    cplx u = 1.0;
    cplx v = 0.0;
    int small_run = 0;
    bool converged = false;
    for (long k = 1; k <= ctl.max_terms; ++k) {
        const cplx factor = lambda * (2.0 * (k - 1.0) + n) - xi;
        const double scale = q / (static_cast<double>(k) * (n + k - 1.0));
        v = (v * factor - u) * scale;
        u = u * factor * scale;
        sum += u;
        if (dxi) dsum += v;
        const double tol_scale = std::max(std::abs(sum), 1.0);
        if (std::abs(u) < ctl.rel_tol * tol_scale &&
            (!dxi || std::abs(v) < ctl.rel_tol * std::max(std::abs(dsum), 1.0))) {
            if (++small_run >= ctl.safeguard_terms) {
                converged = true;
                break;
            }
        } else {
            small_run = 0;
        }
    }
    if (!converged) throw error("spherical_function: series did not converge within max_terms");
    const cplx damp = std::exp(-lambda * (r * r) / 4.0);
    if (value) *value = damp * sum;
    if (dxi) *dxi = damp * dsum;
}

} // namespace detail

/// Spherical function Phi_{xi,lambda}(z, t) for |z| = r, evaluated for
/// complex eigenvalues and complex t (entire continuation). Dispatch:
///   (i)  lambda real nonzero with (xi, lambda) on the fan, ray j:
///        e^{i lambda t} e^{-|lambda| r^2/4} l_j(|lambda| r^2/2),
///        using Phi_{xi,lambda}(z,0) = Phi_{xi,|lambda|}(z,0);
///   (ii) lambda = 0: J_{n-1}(xi r^2/4);
///   (iii) otherwise the entire series, with lambda reflected into
///        Re lambda >= 0 (the radial factor is even in lambda).
/// In every path the value is exactly e^{i lambda t} times the value at t=0.
inline cplx spherical_function(const SphericalParams& params, double r, cplx t, int n,
                               const SeriesControl& ctl = {}) {
    if (r < 0.0) throw error("spherical_function: r must be >= 0");
    if (n < 1) throw error("spherical_function: n must be >= 1");
    const cplx xi = params.xi;
    const cplx lambda = params.lambda;
    const cplx phase = std::exp(cplx(0.0, 1.0) * lambda * t);

    if (lambda == cplx(0.0, 0.0))
        return phase * normalized_bessel(n - 1.0, xi * (r * r) / 4.0, ctl);

    if (lambda.imag() == 0.0 && xi.imag() == 0.0) {
        if (auto j = detail::fan_ray_index(xi.real(), lambda.real(), n)) {
            const double al = std::abs(lambda.real());
            return phase * detail::laguerre_times_exp(*j, n, al * r * r / 2.0);
        }
    }

    const cplx lam_ref = (lambda.real() < 0.0) ? -lambda : lambda;
    cplx value;
    detail::radial_series(xi, lam_ref, r, n, ctl, &value, nullptr);
    return phase * value;
}

/// dPhi/dxi by term-wise differentiation of the product factors in the
/// entire series (valid on and off the fan). Vanishes identically at r = 0.
inline cplx spherical_function_dxi(const SphericalParams& params, double r, double t, int n,
                                   const SeriesControl& ctl = {}) {
    if (r < 0.0) throw error("spherical_function_dxi: r must be >= 0");
    if (n < 1) throw error("spherical_function_dxi: n must be >= 1");
    const cplx lambda = params.lambda;
    const cplx phase = std::exp(cplx(0.0, 1.0) * lambda * t);
    const cplx lam_ref = (lambda.real() < 0.0) ? -lambda : lambda;
    cplx dxi;
    detail::radial_series(params.xi, lam_ref, r, n, ctl, nullptr, &dxi);
    return phase * dxi;
}

} // namespace hsph
