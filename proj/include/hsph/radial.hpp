#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <vector>

#include "hsph/group.hpp"
#include "hsph/quadrature.hpp"

namespace hsph {

/// Quadrature grid for radial functions on H_n: Gauss-Legendre nodes in
/// r on [0, r_max] and in t on [-t_max, t_max], with precomputed Haar
/// weights  omega * r^{2n-1} * w_r * w_t,  omega = 2 pi^n / (n-1)! being
/// the surface area of the unit sphere in R^{2n}. Immutable after
/// construction.
class RadialGrid {
public:
    static std::shared_ptr<const RadialGrid> make(int n, double r_max, double t_max,
                                                  int n_r, int n_t) {
        if (n < 1) throw error("RadialGrid: n must be >= 1");
        if (!(r_max > 0.0) || !(t_max > 0.0))
            throw error("RadialGrid: r_max and t_max must be > 0");
        if (n_r < 1 || n_t < 1) throw error("RadialGrid: node counts must be >= 1");
        auto g = std::shared_ptr<RadialGrid>(new RadialGrid());
        g->n_ = n;
        g->r_max_ = r_max;
        g->t_max_ = t_max;
        auto r_rule = gauss_legendre(n_r, 0.0, r_max);
        auto t_rule = gauss_legendre(n_t, -t_max, t_max);
        g->r_nodes_ = std::move(r_rule.nodes);
        g->r_weights_ = std::move(r_rule.weights);
        g->t_nodes_ = std::move(t_rule.nodes);
        g->t_weights_ = std::move(t_rule.weights);
        double omega = 2.0 * std::pow(pi, n);
        for (int k = 2; k < n; ++k) omega /= k; // divide by (n-1)!
        g->sphere_area_ = omega;
        g->haar_.resize(static_cast<std::size_t>(n_r) * n_t);
        for (int i = 0; i < n_r; ++i) {
            const double rw = omega * std::pow(g->r_nodes_[i], 2 * n - 1) * g->r_weights_[i];
            for (int k = 0; k < n_t; ++k)
                g->haar_[static_cast<std::size_t>(i) * n_t + k] = rw * g->t_weights_[k];
        }
        return g;
    }

    int n() const { return n_; }
    double r_max() const { return r_max_; }
    double t_max() const { return t_max_; }
    int n_r() const { return static_cast<int>(r_nodes_.size()); }
    int n_t() const { return static_cast<int>(t_nodes_.size()); }
    const std::vector<double>& r_nodes() const { return r_nodes_; }
    const std::vector<double>& r_weights() const { return r_weights_; }
    const std::vector<double>& t_nodes() const { return t_nodes_; }
    const std::vector<double>& t_weights() const { return t_weights_; }
    double sphere_area() const { return sphere_area_; }

    double haar_weight(int i_r, int i_t) const {
        return haar_[static_cast<std::size_t>(i_r) * n_t() + i_t];
    }
    const std::vector<double>& haar_weights() const { return haar_; }

private:
    RadialGrid() = default;
    int n_ = 1;
    double r_max_ = 0.0, t_max_ = 0.0, sphere_area_ = 0.0;
    std::vector<double> r_nodes_, r_weights_, t_nodes_, t_weights_;
    std::vector<double> haar_;
};

using RadialGridPtr = std::shared_ptr<const RadialGrid>;

/// Complex samples of a radial function on a RadialGrid, values indexed
/// (i_r * n_t + i_t). The valid margins mark boundary layers consumed by
/// finite-difference operators; entries outside the valid window are zero.
struct RadialFunction {
    RadialGridPtr grid;
    std::vector<cplx> values;
    int valid_r_margin = 0;
    int valid_t_margin = 0;

    RadialFunction() = default;
    explicit RadialFunction(RadialGridPtr g)
        : grid(std::move(g)),
          values(static_cast<std::size_t>(grid->n_r()) * grid->n_t(), cplx{}) {}

    cplx& at(int i_r, int i_t) {
        return values[static_cast<std::size_t>(i_r) * grid->n_t() + i_t];
    }
    const cplx& at(int i_r, int i_t) const {
        return values[static_cast<std::size_t>(i_r) * grid->n_t() + i_t];
    }
    bool in_valid_window(int i_r, int i_t) const {
        return i_r >= valid_r_margin && i_r < grid->n_r() - valid_r_margin &&
               i_t >= valid_t_margin && i_t < grid->n_t() - valid_t_margin;
    }
};

/// Samples f(r, t) on every grid node.
inline RadialFunction sample_radial(const RadialGridPtr& grid,
                                    const std::function<cplx(double, double)>& f) {
    RadialFunction out(grid);
    const auto& rn = grid->r_nodes();
    const auto& tn = grid->t_nodes();
    parallel_for(rn.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i)
            for (int k = 0; k < grid->n_t(); ++k) out.at(static_cast<int>(i), k) = f(rn[i], tn[k]);
    });
    return out;
}

/// Quadrature approximation of the Haar integral of f over H_n.
inline cplx haar_integral(const RadialFunction& f) {
    std::vector<cplx> terms(f.values.size());
    const auto& hw = f.grid->haar_weights();
    for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = f.values[i] * hw[i];
    return pairwise_sum(terms);
}

/// Pointwise multiplication by A(z,t)^power or conj(A)^power.
inline RadialFunction multiply_by_a(const RadialFunction& f, int power, bool conjugate = false) {
    if (power < 0) throw error("multiply_by_a: power must be >= 0");
    RadialFunction out = f;
    if (power == 0) return out;
    const auto& rn = f.grid->r_nodes();
    const auto& tn = f.grid->t_nodes();
    for (int i = 0; i < f.grid->n_r(); ++i)
        for (int k = 0; k < f.grid->n_t(); ++k) {
            cplx a = a_weight(rn[i], tn[k]);
            if (conjugate) a = std::conj(a);
            cplx w = a;
            for (int p = 1; p < power; ++p) w *= a;
            out.at(i, k) *= w;
        }
    return out;
}

/// Estimated support radius and the detection threshold used.
struct SupportReport {
    double koranyi_radius = 0.0;
    double threshold = 0.0;
};

/// Largest Koranyi norm over grid nodes where |f| exceeds
/// threshold * max|f|; zero for f identically zero.
inline SupportReport support_radius(const RadialFunction& f, double threshold = 1e-12) {
    if (!(threshold > 0.0)) throw error("support_radius: threshold must be > 0");
    double fmax = 0.0;
    for (const auto& v : f.values) fmax = std::max(fmax, std::abs(v));
    SupportReport rep;
    rep.threshold = threshold;
    if (fmax == 0.0) return rep; // R(0) = 0 by convention
    const double cut = threshold * fmax;
    for (int i = 0; i < f.grid->n_r(); ++i)
        for (int k = 0; k < f.grid->n_t(); ++k)
            if (std::abs(f.at(i, k)) > cut)
                rep.koranyi_radius = std::max(
                    rep.koranyi_radius, koranyi_norm(f.grid->r_nodes()[i], f.grid->t_nodes()[k]));
    return rep;
}

/// Weighted L^p(H_n) norm  || |1+A|^{-beta} f ||_p  over the valid window;
/// p = infinity gives the weighted sup.
inline double lp_norm_radial(const RadialFunction& f, double p, double beta = 0.0) {
    if (!(p >= 1.0)) throw error("lp_norm_radial: p must be >= 1");
    const auto& rn = f.grid->r_nodes();
    const auto& tn = f.grid->t_nodes();
    const bool sup = std::isinf(p);
    std::vector<double> terms;
    if (!sup) terms.reserve(f.values.size());
    double mx = 0.0;
    for (int i = 0; i < f.grid->n_r(); ++i)
        for (int k = 0; k < f.grid->n_t(); ++k) {
            if (!f.in_valid_window(i, k)) continue;
            double w = 1.0;
            if (beta != 0.0) {
                const double m = std::abs(1.0 + a_weight(rn[i], tn[k]));
                w = std::pow(m, -beta);
            }
            const double v = w * std::abs(f.at(i, k));
            if (sup)
                mx = std::max(mx, v);
            else
                terms.push_back(std::pow(v, p) * f.grid->haar_weight(i, k));
        }
    if (sup) return mx;
    return std::pow(pairwise_sum(std::span<const double>(terms.data(), terms.size())), 1.0 / p);
}

} // namespace hsph
