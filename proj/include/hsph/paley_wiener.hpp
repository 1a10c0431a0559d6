#pragma once

#include <string>

#include "hsph/fan_ops.hpp"
#include "hsph/radial_ops.hpp"
#include "hsph/transform.hpp"

namespace hsph {

enum class DirectMethod { discrete_mplus, exact_aj };
enum class InverseMethod { fan_side, space_side };
enum class LimitMethod { root, ratio };

/// Norm sequence of an iterated-operator experiment together with its
/// extrapolated limit. `sequence[j]` is the weighted norm of the j-th
/// iterate (j = 0..j_max); `ratio_sequence[j]` = sequence[j+1]/sequence[j].
struct RadiusEstimate {
    std::vector<double> sequence;
    std::vector<double> ratio_sequence;
    double extrapolated_limit = 0.0;
    LimitMethod method = LimitMethod::ratio;
    double p = 2.0;
    double beta = 0.0;
};

/// Extrapolates the limit of ||u_j||^{1/j} from the raw norm sequence.
/// root:  last available j-th root;
/// ratio: mean of the last (up to) three consecutive ratios, which converges
///        at O(1/j) versus O(log j / j) for the roots.
/// All-zero tails short-circuit to 0.
inline double estimate_limit(std::span<const double> seq, LimitMethod method) {
    if (seq.size() < 3) throw error("estimate_limit: need at least 3 entries");
    for (double v : seq)
        if (!(v >= 0.0)) throw error("estimate_limit: entries must be nonnegative");
    if (seq.back() == 0.0) return 0.0;
    if (method == LimitMethod::root) {
        const auto j = seq.size() - 1;
        return std::pow(seq.back(), 1.0 / static_cast<double>(j));
    }
    const std::size_t nr = std::min<std::size_t>(3, seq.size() - 1);
    double acc = 0.0;
    for (std::size_t k = seq.size() - nr; k < seq.size(); ++k) {
        if (seq[k - 1] == 0.0) return 0.0;
        acc += seq[k] / seq[k - 1];
    }
    return acc / static_cast<double>(nr);
}

namespace detail {

inline RadiusEstimate finish_estimate(std::vector<double> norms, LimitMethod method, double p,
                                      double beta) {
    RadiusEstimate est;
    est.sequence = std::move(norms);
    est.ratio_sequence.reserve(est.sequence.size() - 1);
    for (std::size_t k = 1; k < est.sequence.size(); ++k)
        est.ratio_sequence.push_back(est.sequence[k - 1] == 0.0
                                         ? 0.0
                                         : est.sequence[k] / est.sequence[k - 1]);
    est.method = method;
    est.p = p;
    est.beta = beta;
    est.extrapolated_limit =
        estimate_limit(std::span<const double>(est.sequence.data(), est.sequence.size()), method);
    return est;
}

} // namespace detail

/// Direct-side sequence  R_j = || (1+xi)^{-beta} u_j ||_{L^p(mu)}  with
///   u_j = M+^j G f        (discrete_mplus: iterated fan operator), or
///   u_j = G(A^j f)        (exact_aj: transform of the multiplied function,
///                          exact up to quadrature since G(A f) = M+ G f).
/// The j-th roots and ratios converge to R(f)^2, the squared Koranyi radius
/// of the support. f identically zero yields the all-zero estimate.
inline RadiusEstimate direct_pw_sequence(const RadialFunction& f, double p, double beta,
                                         int j_max, DirectMethod method,
                                         const TransformPlan& plan,
                                         LimitMethod limit = LimitMethod::ratio) {
    if (j_max < 2) throw error("direct_pw_sequence: j_max must be >= 2");
    std::vector<double> norms;
    norms.reserve(j_max + 1);
    if (method == DirectMethod::exact_aj) {
        RadialFunction g = f;
        for (int j = 0; j <= j_max; ++j) {
            norms.push_back(lp_norm(spherical_transform(g, plan), p, beta));
            if (j < j_max) g = multiply_by_a(g, 1, false);
        }
    } else {
        FanFunction G = spherical_transform(f, plan);
        for (int j = 0; j <= j_max; ++j) {
            norms.push_back(lp_norm(G, p, beta));
            if (j < j_max) G = m_plus_apply(G); // throws when the window is exhausted
        }
    }
    return detail::finish_estimate(std::move(norms), limit, p, beta);
}

/// Inverse-side sequence  rho_j = || |1+A|^{-beta} L^j F-inv ||_{L^p(H_n)}.
/// fan_side multiplies by xi^j on the fan and inverts (exact up to
/// quadrature, since G(L^j f) = xi^j G f); space_side iterates the
/// finite-difference sublaplacian on the inverted function and is a
/// diagnostic for FD error accumulation. Ratios converge to rho(F), the
/// largest xi on the support of F.
inline RadiusEstimate inverse_pw_sequence(const FanFunction& F, double p, double beta, int j_max,
                                          InverseMethod method, const TransformPlan& plan,
                                          LimitMethod limit = LimitMethod::ratio) {
    if (j_max < 2) throw error("inverse_pw_sequence: j_max must be >= 2");
    double total = 0.0;
    for (const auto& v : F.values) total += std::norm(v);
    if (total == 0.0) throw error("inverse_pw_sequence: F is identically zero");

    std::vector<double> norms;
    norms.reserve(j_max + 1);
    if (method == InverseMethod::fan_side) {
        FanFunction G = F;
        for (int j = 0; j <= j_max; ++j) {
            norms.push_back(lp_norm_radial(inverse_spherical_transform(G, plan), p, beta));
            if (j < j_max) G = multiply_by_xi(G, 1);
        }
    } else {
        RadialFunction g = inverse_spherical_transform(F, plan);
        for (int j = 0; j <= j_max; ++j) {
            norms.push_back(lp_norm_radial(g, p, beta));
            if (j < j_max) g = sublaplacian_apply(g); // throws when the grid is exhausted
        }
    }
    return detail::finish_estimate(std::move(norms), limit, p, beta);
}

/// Closed form of the inverse transform of the xi-derivative of a Dirac mass
/// at the fan point (n, 1):
///   f_U(z, t) = (e^{it} e^{-r^2/4} / 2) sum_{k>=1} (r^2/2)^k / (k (n)_k),
/// which equals -dPhi/dxi at (n, 1) and grows like e^{r^2/4}/(2 (r^2/2)^n).
inline cplx dirac_derivative_field(int n, double r, double t, const SeriesControl& ctl = {}) {
    validate(ctl);
    if (n < 1) throw error("dirac_derivative_field: n must be >= 1");
    const double x = r * r / 2.0;
    double sum = 0.0;
    double pw = 1.0; // x^k / (n)_k
    int small_run = 0;
    bool done = (x == 0.0);
    for (long k = 1; !done && k <= ctl.max_terms; ++k) {
        pw *= x / (n + k - 1.0);
        const double term = pw / k;
        sum += term;
        if (term < ctl.rel_tol * std::max(sum, 1e-300)) {
            if (++small_run >= ctl.safeguard_terms) done = true;
        } else {
            small_run = 0;
        }
    }
    if (!done) throw error("dirac_derivative_field: series did not converge");
    return 0.5 * std::exp(cplx(0.0, t)) * std::exp(-r * r / 4.0) * sum;
}

/// One row of the growth-demo table.
struct GrowthProbeRow {
    double lambda = 0.0;
    double abs_f = 0.0;            // |F((n+1) lambda, lambda)|
    double abs_fh = 0.0;           // |Fourier h (lambda)|
    double normalized_ratio = 0.0; // |F| e^{-lambda/2} / |Fh|
    bool ok = true;
    std::string note;
};

/// Quadrature sizes and supports for the growth probe.
struct GrowthProbeOptions {
    double r_lo = 1.0, r_hi = 4.0; // support of g
    double t_hi = 1.0;             // support of h is [-t_hi, t_hi]
    int n_r = 800;
    int n_t = 400;
};

/// Growth demo for f = g (x) h: evaluates the entire extension
/// F(xi, lambda) = <g (x) h, Phi-check> along the off-fan line
/// xi = (n+1) lambda together with the Euclidean transform of h, and emits
/// per-lambda rows (lambda, |F|, |Fh|, |F| e^{-lambda/2}/|Fh|). Both factors
/// use the same t-rule, so the emitted ratio is insensitive to the
/// oscillation of Fh. Rows that overflow or hit a series failure are
/// reported, not dropped.
inline std::vector<GrowthProbeRow> holo_growth_probe(
    const std::function<double(double)>& g_profile, const std::function<double(double)>& h_profile,
    std::span<const double> lambda_samples, int n, const GrowthProbeOptions& opt = {},
    const SeriesControl& ctl = {}) {
    const auto r_rule = gauss_legendre(opt.n_r, opt.r_lo, opt.r_hi);
    const auto t_rule = gauss_legendre(opt.n_t, -opt.t_hi, opt.t_hi);
    double omega = 2.0 * std::pow(pi, n);
    for (int k = 2; k < n; ++k) omega /= k;

    std::vector<GrowthProbeRow> rows;
    rows.reserve(lambda_samples.size());
    for (double la : lambda_samples) {
        GrowthProbeRow row;
        row.lambda = la;
        try {
            std::vector<cplx> terms(t_rule.nodes.size());
            for (std::size_t it = 0; it < t_rule.nodes.size(); ++it)
                terms[it] = h_profile(t_rule.nodes[it]) *
                            std::exp(cplx(0.0, la * t_rule.nodes[it])) * t_rule.weights[it];
            const cplx fh = pairwise_sum(std::span<const cplx>(terms.data(), terms.size()));

            const SphericalParams params{cplx((n + 1.0) * la, 0.0), cplx(la, 0.0)};
            std::vector<cplx> rterms(r_rule.nodes.size());
            for (std::size_t ir = 0; ir < r_rule.nodes.size(); ++ir) {
                const double r = r_rule.nodes[ir];
                const cplx radial = spherical_function(params, r, cplx(0.0, 0.0), n, ctl);
                rterms[ir] = g_profile(r) * radial * omega * std::pow(r, 2 * n - 1) *
                             r_rule.weights[ir];
            }
            const cplx rz = pairwise_sum(std::span<const cplx>(rterms.data(), rterms.size()));

            row.abs_fh = std::abs(fh);
            row.abs_f = std::abs(fh * rz);
            if (!std::isfinite(row.abs_f)) {
                row.ok = false;
                row.note = "overflow";
            } else if (row.abs_fh == 0.0) {
                row.ok = false;
                row.note = "Fh vanished";
            } else {
                row.normalized_ratio = row.abs_f * std::exp(-la / 2.0) / row.abs_fh;
            }
        } catch (const error& e) {
            row.ok = false;
            row.note = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace hsph
