#pragma once

#include <cmath>
#include <memory>
#include <vector>

#include "hsph/quadrature.hpp"

namespace hsph {

/// Ray relation of the Heisenberg fan: xi = |lambda| (2j + n).
inline double xi_of(int j, double lambda, int n) {
    if (j < 0) throw error("xi_of: j must be >= 0");
    return std::abs(lambda) * (2.0 * j + n);
}

/// Discretization of the Heisenberg fan: rays j = 0..j_max and uniformly
/// spaced positive lambda nodes on [lambda_min, lambda_max], mirrored to
/// negative sign internally. Uniform spacing is required so the M+-/M-
/// stencils are translation invariant; lambda weights are composite Simpson
/// (node count must be odd). The lambda = 0 half-line carries zero
/// Plancherel measure and is not represented.
class FanGrid {
public:
    static std::shared_ptr<const FanGrid> make(int n, int j_max, double lambda_min,
                                               double lambda_max, int n_lambda) {
        if (n < 1) throw error("FanGrid: n must be >= 1");
        if (j_max < 0) throw error("FanGrid: j_max must be >= 0");
        if (!(lambda_min > 0.0)) throw error("FanGrid: lambda_min must be > 0");
        if (!(lambda_max > lambda_min)) throw error("FanGrid: lambda_max must exceed lambda_min");
        if (n_lambda < 3 || n_lambda % 2 == 0)
            throw error("FanGrid: n_lambda must be odd and >= 3");
        auto g = std::shared_ptr<FanGrid>(new FanGrid());
        g->n_ = n;
        g->j_max_ = j_max;
        auto rule = simpson_uniform(n_lambda, lambda_min, lambda_max);
        g->lambda_nodes_ = std::move(rule.nodes);
        g->lambda_weights_ = std::move(rule.weights);
        g->spacing_ = (lambda_max - lambda_min) / (n_lambda - 1);

        // binomial multiplicities binom(j+n-1, j), exact in integer arithmetic
        g->binom_.resize(j_max + 1);
        for (int j = 0; j <= j_max; ++j) {
            unsigned long long b = 1;
            for (int k = 1; k <= j; ++k) b = b * (k + n - 1) / k;
            g->binom_[j] = static_cast<double>(b);
        }
        // Plancherel weight per (j, i): (2 pi)^{-(n+1)} binom * lambda^n * w_lambda
        const double c = std::pow(2.0 * pi, -(n + 1.0));
        g->mu_.resize(static_cast<std::size_t>(j_max + 1) * n_lambda);
        for (int j = 0; j <= j_max; ++j)
            for (int i = 0; i < n_lambda; ++i)
                g->mu_[static_cast<std::size_t>(j) * n_lambda + i] =
                    c * g->binom_[j] * std::pow(g->lambda_nodes_[i], n) * g->lambda_weights_[i];
        return g;
    }

    int n() const { return n_; }
    int j_max() const { return j_max_; }
    int n_lambda() const { return static_cast<int>(lambda_nodes_.size()); }
    double lambda_min() const { return lambda_nodes_.front(); }
    double lambda_max() const { return lambda_nodes_.back(); }
    double spacing() const { return spacing_; }
    bool uniform_spacing() const { return true; }
    const std::vector<double>& lambda_nodes() const { return lambda_nodes_; }
    const std::vector<double>& lambda_weights() const { return lambda_weights_; }
    double binom(int j) const { return binom_[j]; }

    /// Plancherel weight of node (j, i); identical for both lambda signs.
    double mu_weight(int j, int i) const {
        return mu_[static_cast<std::size_t>(j) * n_lambda() + i];
    }

private:
    FanGrid() = default;
    int n_ = 1, j_max_ = 0;
    double spacing_ = 0.0;
    std::vector<double> lambda_nodes_, lambda_weights_, binom_, mu_;
};

using FanGridPtr = std::shared_ptr<const FanGrid>;

/// Complex values on a FanGrid, indexed (sign, j, i_lambda) with sign 0 for
/// lambda > 0 and sign 1 for lambda < 0. Rays j <= valid_j and lambda nodes
/// at least valid_lambda_margin away from both ends form the valid window;
/// everything outside it is zero. Operator applications shrink the window.
struct FanFunction {
    FanGridPtr grid;
    std::vector<cplx> values;
    int valid_j = 0;
    int valid_lambda_margin = 0;

    FanFunction() = default;
    explicit FanFunction(FanGridPtr g)
        : grid(std::move(g)),
          values(2 * static_cast<std::size_t>(grid->j_max() + 1) * grid->n_lambda(), cplx{}),
          valid_j(grid->j_max()) {}

    std::size_t index(int sign, int j, int i) const {
        return (static_cast<std::size_t>(sign) * (grid->j_max() + 1) + j) * grid->n_lambda() + i;
    }
    cplx& at(int sign, int j, int i) { return values[index(sign, j, i)]; }
    const cplx& at(int sign, int j, int i) const { return values[index(sign, j, i)]; }

    /// Signed lambda of node (sign, i).
    double lambda_at(int sign, int i) const {
        return sign == 0 ? grid->lambda_nodes()[i] : -grid->lambda_nodes()[i];
    }
    bool in_valid_window(int j, int i) const {
        return j <= valid_j && i >= valid_lambda_margin &&
               i < grid->n_lambda() - valid_lambda_margin;
    }
    int lambda_begin() const { return valid_lambda_margin; }
    int lambda_end() const { return grid->n_lambda() - valid_lambda_margin; }
};

/// Samples F(sign, j, lambda) from a callable profile(j, lambda_signed).
inline FanFunction sample_fan(const FanGridPtr& grid,
                              const std::function<cplx(int, double)>& profile) {
    FanFunction out(grid);
    for (int s = 0; s < 2; ++s)
        for (int j = 0; j <= grid->j_max(); ++j)
            for (int i = 0; i < grid->n_lambda(); ++i)
                out.at(s, j, i) = profile(j, out.lambda_at(s, i));
    return out;
}

/// Quadrature approximation of the integral of F against the Plancherel
/// measure over the valid window (both lambda signs).
inline cplx plancherel_integral(const FanFunction& F) {
    if (F.valid_j < 0 || F.lambda_begin() >= F.lambda_end())
        throw error("plancherel_integral: valid window is empty");
    std::vector<cplx> terms;
    terms.reserve(2 * static_cast<std::size_t>(F.valid_j + 1) *
                  (F.lambda_end() - F.lambda_begin()));
    for (int s = 0; s < 2; ++s)
        for (int j = 0; j <= F.valid_j; ++j)
            for (int i = F.lambda_begin(); i < F.lambda_end(); ++i)
                terms.push_back(F.at(s, j, i) * F.grid->mu_weight(j, i));
    return pairwise_sum(terms);
}

/// Weighted L^p(mu) norm  || (1+xi)^{-beta} F ||_p  over the valid window;
/// p = infinity gives the weighted sup (no measure factor).
inline double lp_norm(const FanFunction& F, double p, double beta = 0.0) {
    if (!(p >= 1.0)) throw error("lp_norm: p must be >= 1");
    if (!(beta >= 0.0)) throw error("lp_norm: beta must be >= 0");
    if (F.valid_j < 0 || F.lambda_begin() >= F.lambda_end())
        throw error("lp_norm: valid window is empty");
    const bool sup = std::isinf(p);
    std::vector<double> terms;
    double mx = 0.0;
    for (int s = 0; s < 2; ++s)
        for (int j = 0; j <= F.valid_j; ++j)
            for (int i = F.lambda_begin(); i < F.lambda_end(); ++i) {
                const double xi = xi_of(j, F.grid->lambda_nodes()[i], F.grid->n());
                const double w = beta == 0.0 ? 1.0 : std::pow(1.0 + xi, -beta);
                const double v = w * std::abs(F.at(s, j, i));
                if (sup)
                    mx = std::max(mx, v);
                else
                    terms.push_back(std::pow(v, p) * F.grid->mu_weight(j, i));
            }
    if (sup) return mx;
    return std::pow(pairwise_sum(std::span<const double>(terms.data(), terms.size())), 1.0 / p);
}

/// Pointwise multiplication by xi(j, lambda)^power.
inline FanFunction multiply_by_xi(const FanFunction& F, int power) {
    if (power < 0) throw error("multiply_by_xi: power must be >= 0");
    FanFunction out = F;
    if (power == 0) return out;
    for (int s = 0; s < 2; ++s)
        for (int j = 0; j <= F.grid->j_max(); ++j)
            for (int i = 0; i < F.grid->n_lambda(); ++i) {
                const double xi = xi_of(j, F.grid->lambda_nodes()[i], F.grid->n());
                double w = xi;
                for (int q = 1; q < power; ++q) w *= xi;
                out.at(s, j, i) *= w;
            }
    return out;
}

} // namespace hsph
