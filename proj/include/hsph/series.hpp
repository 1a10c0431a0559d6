#pragma once

#include <cmath>
#include <cstdint>

#include "hsph/common.hpp"

namespace hsph {

/// Stopping rule for power series. A series is accepted once
/// `safeguard_terms` consecutive terms satisfy |term| < rel_tol * |sum|;
/// a single small term is not proof of convergence because some term
/// sequences (notably the spherical-function product factors) are not
/// monotone.
struct SeriesControl {
    double rel_tol = 1e-15;
    long max_terms = 1000000;
    int safeguard_terms = 3;
};

inline void validate(const SeriesControl& ctl) {
    if (!(ctl.rel_tol > 0.0 && ctl.rel_tol <= 1e-6))
        throw error("SeriesControl: rel_tol must be in (0, 1e-6]");
    if (ctl.max_terms < 1) throw error("SeriesControl: max_terms must be >= 1");
    if (ctl.safeguard_terms < 1) throw error("SeriesControl: safeguard_terms must be >= 1");
}

/// Eigenvalue pair (xi, lambda) identifying a spherical function: xi for the
/// sublaplacian, i*lambda for the central derivative.
struct SphericalParams {
    cplx xi;
    cplx lambda;
};

/// Rising factorial (a)_k = a (a+1) ... (a+k-1), (a)_0 = 1.
template <class C>
C pochhammer(C a, int k) {
    if (k < 0) throw error("pochhammer: k must be >= 0");
    C prod(1);
    for (int d = 0; d < k; ++d) prod *= a + C(d);
    return prod;
}

/// Confluent hypergeometric 1F1(a, c; x) = sum_k (a)_k/(c)_k x^k/k! by direct
/// summation. When a is a nonpositive integer the series terminates exactly.
/// Generic in the complex scalar so callers can instantiate at higher
/// precision; C must be constructible from double and support abs().
template <class C, class R>
C kummer_1f1(C a, R c, C x, const SeriesControl& ctl = {}) {
    validate(ctl);
    {
        const double cd = static_cast<double>(c);
        if (cd <= 0.0 && cd == std::floor(cd))
            throw error("kummer_1f1: c must not be a nonpositive integer");
    }
    using std::abs;
    C sum(1);
    C term(1);
    int small_run = 0;
    for (long k = 0; k < ctl.max_terms; ++k) {
        term *= (a + C(static_cast<double>(k))) * x;
        term /= C(static_cast<double>(c) + static_cast<double>(k)) * C(static_cast<double>(k + 1));
        if (term == C(0)) return sum; // terminating polynomial case
        sum += term;
        if (abs(term) < ctl.rel_tol * abs(sum)) {
            if (++small_run >= ctl.safeguard_terms) return sum;
        } else {
            small_run = 0;
        }
    }
    throw error("kummer_1f1: series did not converge within max_terms");
}

/// Normalized Laguerre polynomial l_j(x) = 1F1(-j, n; x)
/// = L_j^{(n-1)}(x) / binom(j+n-1, j), computed with the classical
/// three-term recurrence on the unnormalized polynomials followed by
/// division by the binomial; forward-stable on x >= 0.
inline double normalized_laguerre(int j, int n, double x) {
    if (j < 0) throw error("normalized_laguerre: j must be >= 0");
    if (n < 1) throw error("normalized_laguerre: n must be >= 1");
    if (j == 0) return 1.0;
    const double alpha = n - 1;
    double lkm1 = 1.0;
    double lk = 1.0 + alpha - x;
    for (int k = 1; k < j; ++k) {
        const double lkp1 = ((2.0 * k + 1.0 + alpha - x) * lk - (k + alpha) * lkm1) / (k + 1.0);
        lkm1 = lk;
        lk = lkp1;
    }
    double binom = 1.0; // binom(j+n-1, j) = prod_{k=1..j} (k+n-1)/k
    for (int k = 1; k <= j; ++k) binom *= (k + alpha) / k;
    return lk / binom;
}

/// Column l_0(x) .. l_jmax(x) of normalized Laguerre values by the upward
/// recurrence (k+n) l_{k+1} = (2k+n-x) l_k - k l_{k-1}; this is the
/// recurrence above divided through by the binomials, so values stay on the
/// e^{x/2} scale. `out` must have room for jmax+1 entries.
inline void normalized_laguerre_column(int jmax, int n, double x, double* out) {
    out[0] = 1.0;
    if (jmax == 0) return;
    out[1] = 1.0 - x / n;
    for (int k = 1; k < jmax; ++k)
        out[k + 1] = ((2.0 * k + n - x) * out[k] - k * out[k - 1]) / (k + n);
}

/// Normalized Bessel-type series J_beta(s) = sum_k (-s)^k / (k! (beta+1)_k);
/// J_beta(0) = 1. The classical Bessel function of the first kind is
/// J_beta(u) = (u/2)^beta / beta! * J_beta(u^2/4) in this normalization.
inline cplx normalized_bessel(double beta, cplx s, const SeriesControl& ctl = {}) {
    validate(ctl);
    if (beta + 1.0 <= 0.0 && beta + 1.0 == std::floor(beta + 1.0))
        throw error("normalized_bessel: beta+1 must not be a nonpositive integer");
    cplx sum = 1.0;
    cplx term = 1.0;
    int small_run = 0;
    for (long k = 0; k < ctl.max_terms; ++k) {
        term *= -s / ((k + 1.0) * (beta + 1.0 + k));
        sum += term;
        if (std::abs(term) < ctl.rel_tol * std::abs(sum)) {
            if (++small_run >= ctl.safeguard_terms) return sum;
        } else {
            small_run = 0;
        }
    }
    throw error("normalized_bessel: series did not converge within max_terms");
}

} // namespace hsph
