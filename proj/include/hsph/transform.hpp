#pragma once

#include "hsph/fan.hpp"
#include "hsph/radial.hpp"
#include "hsph/spherical.hpp"

namespace hsph {

/// Precomputed tables tying a RadialGrid to a FanGrid:
///   kernel  K[i_l][j][i_r] = e^{-la r^2/4} l_j(la r^2/2)   (la = lambda node)
///   phases  ph[i_l][i_t]   = e^{-i la t}
/// The kernel is the radial factor of the spherical function on the fan and
/// is even in the sign of lambda; |K| <= 1 there (bounded spherical
/// functions). Laguerre values are generated by upward recurrence in j once
/// per (lambda, r) pair. Immutable after construction.
class TransformPlan {
public:
    static std::shared_ptr<const TransformPlan> make(RadialGridPtr radial, FanGridPtr fan) {
        if (radial->n() != fan->n()) throw error("TransformPlan: radial/fan dimension mismatch");
        auto p = std::shared_ptr<TransformPlan>(new TransformPlan());
        p->radial_ = std::move(radial);
        p->fan_ = std::move(fan);
        const auto& rg = *p->radial_;
        const auto& fg = *p->fan_;
        const int nr = rg.n_r(), nt = rg.n_t(), nl = fg.n_lambda(), jm = fg.j_max();

        p->kernel_.resize(static_cast<std::size_t>(nl) * (jm + 1) * nr);
        parallel_for(static_cast<std::size_t>(nl), [&](std::size_t b, std::size_t e) {
            std::vector<double> col(jm + 1);
            for (std::size_t il = b; il < e; ++il) {
                const double la = fg.lambda_nodes()[il];
                for (int ir = 0; ir < nr; ++ir) {
                    const double r = rg.r_nodes()[ir];
                    const double x = la * r * r / 2.0;
                    normalized_laguerre_column(jm, fg.n(), x, col.data());
                    const double damp = std::exp(-x / 2.0);
                    for (int j = 0; j <= jm; ++j)
                        p->kernel_[(il * (jm + 1) + j) * nr + ir] = damp * col[j];
                }
            }
        });
        for (double k : p->kernel_)
            if (!std::isfinite(k) || std::abs(k) > 1.0 + 1e-9)
                throw error("TransformPlan: kernel out of range; fan kernel must satisfy |K| <= 1");

        p->phase_.resize(static_cast<std::size_t>(nl) * nt);
        for (int il = 0; il < nl; ++il)
            for (int it = 0; it < nt; ++it)
                p->phase_[static_cast<std::size_t>(il) * nt + it] =
                    std::exp(cplx(0.0, -fg.lambda_nodes()[il] * rg.t_nodes()[it]));

        p->radial_weight_.resize(nr);
        for (int ir = 0; ir < nr; ++ir)
            p->radial_weight_[ir] = rg.sphere_area() *
                                    std::pow(rg.r_nodes()[ir], 2 * rg.n() - 1) *
                                    rg.r_weights()[ir];
        return p;
    }

    const RadialGrid& radial() const { return *radial_; }
    const FanGrid& fan() const { return *fan_; }
    RadialGridPtr radial_ptr() const { return radial_; }
    FanGridPtr fan_ptr() const { return fan_; }

    double kernel(int il, int j, int ir) const {
        return kernel_[(static_cast<std::size_t>(il) * (fan_->j_max() + 1) + j) * radial_->n_r() +
                       ir];
    }
    /// e^{-i lambda t} at (lambda node il, t node it); conjugate for lambda < 0.
    cplx phase(int il, int it) const {
        return phase_[static_cast<std::size_t>(il) * radial_->n_t() + it];
    }
    double radial_weight(int ir) const { return radial_weight_[ir]; }

    bool matches(const RadialGrid& g) const {
        return g.n() == radial_->n() && g.n_r() == radial_->n_r() && g.n_t() == radial_->n_t() &&
               g.r_max() == radial_->r_max() && g.t_max() == radial_->t_max();
    }
    bool matches(const FanGrid& g) const {
        return g.n() == fan_->n() && g.j_max() == fan_->j_max() &&
               g.n_lambda() == fan_->n_lambda() && g.lambda_min() == fan_->lambda_min() &&
               g.lambda_max() == fan_->lambda_max();
    }

private:
    TransformPlan() = default;
    RadialGridPtr radial_;
    FanGridPtr fan_;
    std::vector<double> kernel_;
    std::vector<cplx> phase_;
    std::vector<double> radial_weight_;
};

using TransformPlanPtr = std::shared_ptr<const TransformPlan>;

/// Forward spherical transform sampled on the fan grid:
///   G f(j, lambda) = sum_{grid} f(r, t) e^{+i lambda t} K_j(lambda, r) haar.
/// The pairing integrates f against Phi itself (Phi is even in z, so only
/// the t-phase matters). With this orientation the fan operators satisfy
/// G(A f) = M+ G f and G(conj(A) f) = -M- G f; pairing against
/// Phi(z, -t) instead swaps the roles of A and conj(A) in those identities.
inline FanFunction spherical_transform(const RadialFunction& f, const TransformPlan& plan) {
    if (!plan.matches(*f.grid)) throw error("spherical_transform: grid does not match plan");
    const auto& rg = plan.radial();
    const auto& fg = plan.fan();
    const int nr = rg.n_r(), nt = rg.n_t(), nl = fg.n_lambda(), jm = fg.j_max();

    // stage 1: t-reduction  B[s][il][ir] = sum_t f e^{+i la_s t} w_t
    std::vector<cplx> B(2 * static_cast<std::size_t>(nl) * nr);
    parallel_for(static_cast<std::size_t>(nl), [&](std::size_t b, std::size_t e) {
        std::vector<cplx> terms(nt);
        for (std::size_t il = b; il < e; ++il)
            for (int s = 0; s < 2; ++s)
                for (int ir = 0; ir < nr; ++ir) {
                    for (int it = 0; it < nt; ++it) {
                        const cplx ph = s == 0 ? std::conj(plan.phase(static_cast<int>(il), it))
                                               : plan.phase(static_cast<int>(il), it);
                        terms[it] = f.at(ir, it) * ph * rg.t_weights()[it];
                    }
                    B[(static_cast<std::size_t>(s) * nl + il) * nr + ir] =
                        pairwise_sum(std::span<const cplx>(terms.data(), terms.size()));
                }
    });

    // stage 2: r-reduction against the Laguerre kernel
    FanFunction G(plan.fan_ptr());
    parallel_for(static_cast<std::size_t>(nl), [&](std::size_t b, std::size_t e) {
        std::vector<cplx> terms(nr);
        for (std::size_t il = b; il < e; ++il)
            for (int s = 0; s < 2; ++s)
                for (int j = 0; j <= jm; ++j) {
                    for (int ir = 0; ir < nr; ++ir)
                        terms[ir] = B[(static_cast<std::size_t>(s) * nl + il) * nr + ir] *
                                    plan.kernel(static_cast<int>(il), j, ir) *
                                    plan.radial_weight(ir);
                    G.at(s, j, static_cast<int>(il)) =
                        pairwise_sum(std::span<const cplx>(terms.data(), terms.size()));
                }
    });
    return G;
}

/// Plancherel inversion truncated at the fan grid:
///   f(r, t) = sum_{sign, j <= valid_j, lambda} F e^{-i lambda t} K mu,
/// the adjoint phase of the forward pairing, so that the inverse undoes the
/// forward transform on band-limited data.
inline RadialFunction inverse_spherical_transform(const FanFunction& F,
                                                  const TransformPlan& plan) {
    if (!plan.matches(*F.grid)) throw error("inverse_spherical_transform: grid mismatch");
    const auto& rg = plan.radial();
    const auto& fg = plan.fan();
    const int nr = rg.n_r(), nt = rg.n_t(), nl = fg.n_lambda();

    // stage 1: ray reduction  A[s][il][ir] = sum_j F mu K
    std::vector<cplx> A(2 * static_cast<std::size_t>(nl) * nr, cplx{});
    const int jv = F.valid_j;
    parallel_for(static_cast<std::size_t>(nl), [&](std::size_t b, std::size_t e) {
        std::vector<cplx> terms(jv + 1);
        for (std::size_t il = b; il < e; ++il) {
            if (static_cast<int>(il) < F.lambda_begin() || static_cast<int>(il) >= F.lambda_end())
                continue;
            for (int s = 0; s < 2; ++s)
                for (int ir = 0; ir < nr; ++ir) {
                    for (int j = 0; j <= jv; ++j)
                        terms[j] = F.at(s, j, static_cast<int>(il)) *
                                   fg.mu_weight(j, static_cast<int>(il)) *
                                   plan.kernel(static_cast<int>(il), j, ir);
                    A[(static_cast<std::size_t>(s) * nl + il) * nr + ir] =
                        pairwise_sum(std::span<const cplx>(terms.data(), terms.size()));
                }
        }
    });

    // stage 2: lambda reduction with the phase e^{-i la_s t}
    RadialFunction f(plan.radial_ptr());
    parallel_for(static_cast<std::size_t>(nr), [&](std::size_t b, std::size_t e) {
        std::vector<cplx> terms(2 * nl);
        for (std::size_t ir = b; ir < e; ++ir)
            for (int it = 0; it < nt; ++it) {
                for (int il = 0; il < nl; ++il) {
                    const cplx ph = plan.phase(il, it); // e^{-i la t} for la > 0
                    terms[2 * il] = A[(0 * static_cast<std::size_t>(nl) + il) * nr + ir] * ph;
                    terms[2 * il + 1] = A[(1 * static_cast<std::size_t>(nl) + il) * nr + ir] *
                                        std::conj(ph);
                }
                f.at(static_cast<int>(ir), it) =
                    pairwise_sum(std::span<const cplx>(terms.data(), terms.size()));
            }
    });
    return f;
}

/// Truncation diagnostic for the inverse transform: the fraction of the
/// L^1(mu) mass of F sitting on the outermost ray and on the outermost
/// lambda columns of the valid window. For data decaying toward the window
/// edges these bound the quality of the (j_max, lambda_max) truncation; for
/// broad data they flag that the window is too small.
struct InverseTailReport {
    double l1_mass = 0.0;
    double top_ray_fraction = 0.0;
    double lambda_edge_fraction = 0.0;
};

inline InverseTailReport inverse_tail_report(const FanFunction& F) {
    InverseTailReport rep;
    if (F.valid_j < 0 || F.lambda_begin() >= F.lambda_end())
        throw error("inverse_tail_report: valid window is empty");
    double top = 0.0, edge = 0.0;
    std::vector<double> terms;
    for (int s = 0; s < 2; ++s)
        for (int j = 0; j <= F.valid_j; ++j)
            for (int i = F.lambda_begin(); i < F.lambda_end(); ++i) {
                const double m = std::abs(F.at(s, j, i)) * F.grid->mu_weight(j, i);
                terms.push_back(m);
                if (j == F.valid_j) top += m;
                if (i == F.lambda_begin() || i == F.lambda_end() - 1) edge += m;
            }
    rep.l1_mass = pairwise_sum(std::span<const double>(terms.data(), terms.size()));
    if (rep.l1_mass > 0.0) {
        rep.top_ray_fraction = top / rep.l1_mass;
        rep.lambda_edge_fraction = edge / rep.l1_mass;
    }
    return rep;
}

/// Relative Plancherel defect  | ||f||_2^2 - ||G f||_{L^2(mu)}^2 | / ||f||_2^2.
inline double plancherel_defect(const RadialFunction& f, const TransformPlan& plan) {
    std::vector<double> terms(f.values.size());
    for (std::size_t i = 0; i < terms.size(); ++i)
        terms[i] = std::norm(f.values[i]) * f.grid->haar_weights()[i];
    const double space = pairwise_sum(std::span<const double>(terms.data(), terms.size()));
    if (space == 0.0) throw error("plancherel_defect: f is identically zero");
    FanFunction G = spherical_transform(f, plan);
    terms.clear();
    terms.reserve(G.values.size());
    for (int s = 0; s < 2; ++s)
        for (int j = 0; j <= G.grid->j_max(); ++j)
            for (int i = 0; i < G.grid->n_lambda(); ++i)
                terms.push_back(std::norm(G.at(s, j, i)) * G.grid->mu_weight(j, i));
    const double fan = pairwise_sum(std::span<const double>(terms.data(), terms.size()));
    return std::abs(space - fan) / space;
}

/// Entire extension F(xi, lambda) = <f, Phi_{xi,lambda}> of the transform of
/// a compactly supported f, evaluated at complex (xi, lambda); agrees with
/// spherical_transform on fan nodes.
inline cplx entire_extension(const RadialFunction& f, const SphericalParams& params,
                             const TransformPlan& plan, const SeriesControl& ctl = {}) {
    if (!plan.matches(*f.grid)) throw error("entire_extension: grid does not match plan");
    const auto& rg = plan.radial();
    const int nr = rg.n_r(), nt = rg.n_t();
    // Phi(r, t) = e^{+i lambda t} * radial(r): reduce over t first.
    std::vector<cplx> inner(nr);
    std::vector<cplx> terms(nt);
    for (int ir = 0; ir < nr; ++ir) {
        for (int it = 0; it < nt; ++it)
            terms[it] = f.at(ir, it) *
                        std::exp(cplx(0.0, 1.0) * params.lambda * rg.t_nodes()[it]) *
                        rg.t_weights()[it];
        inner[ir] = pairwise_sum(std::span<const cplx>(terms.data(), terms.size()));
    }
    std::vector<cplx> outer(nr);
    for (int ir = 0; ir < nr; ++ir) {
        const SphericalParams p{params.xi, params.lambda};
        // radial factor = Phi at t = 0
        const cplx radial = spherical_function(p, rg.r_nodes()[ir], cplx(0.0, 0.0), rg.n(), ctl);
        outer[ir] = inner[ir] * radial * plan.radial_weight(ir);
    }
    return pairwise_sum(std::span<const cplx>(outer.data(), outer.size()));
}

/// Inverse-side entire extension: the Plancherel sum of a fan-compact F with
/// the phase continued to complex t. Throws rather than clipping when
/// |Im t| lambda_max would overflow.
inline cplx inverse_entire_extension(const FanFunction& F, double r, cplx t,
                                     const TransformPlan& plan) {
    if (!plan.matches(*F.grid)) throw error("inverse_entire_extension: grid mismatch");
    const auto& fg = plan.fan();
    if (std::abs(t.imag()) * fg.lambda_max() > 700.0)
        throw error("inverse_entire_extension: |Im t| * lambda_max too large, e^{lambda Im t} overflows");
    std::vector<cplx> terms;
    std::vector<double> col(F.valid_j + 1);
    for (int il = F.lambda_begin(); il < F.lambda_end(); ++il) {
        const double la = fg.lambda_nodes()[il];
        const double x = la * r * r / 2.0;
        normalized_laguerre_column(F.valid_j, fg.n(), x, col.data());
        const double damp = std::exp(-x / 2.0);
        for (int s = 0; s < 2; ++s) {
            const double las = s == 0 ? la : -la;
            const cplx ph = std::exp(cplx(0.0, -1.0) * las * t);
            for (int j = 0; j <= F.valid_j; ++j)
                terms.push_back(F.at(s, j, il) * fg.mu_weight(j, il) * damp * col[j] * ph);
        }
    }
    return pairwise_sum(std::span<const cplx>(terms.data(), terms.size()));
}

} // namespace hsph
