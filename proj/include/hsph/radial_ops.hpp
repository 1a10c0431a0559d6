#pragma once

#include "hsph/fd.hpp"
#include "hsph/radial.hpp"

namespace hsph {

namespace detail {

/// Per-node 5-point stencil weights for first and second derivatives on a
/// (generally nonuniform) node set. weights[(i-2)*10 + ...] packs d1 then d2
/// for interior nodes i in [2, count-3].
struct StencilTable {
    std::vector<double> d1; // (count x 5), rows outside the interior unused
    std::vector<double> d2;
};

inline StencilTable make_stencils(const std::vector<double>& nodes, bool second) {
    const int count = static_cast<int>(nodes.size());
    StencilTable tab;
    tab.d1.assign(static_cast<std::size_t>(count) * 5, 0.0);
    if (second) tab.d2.assign(static_cast<std::size_t>(count) * 5, 0.0);
    for (int i = 2; i + 2 < count; ++i) {
        auto w = fd_weights(nodes[i], std::span<const double>(nodes.data() + i - 2, 5),
                            second ? 2 : 1);
        for (int k = 0; k < 5; ++k) {
            tab.d1[static_cast<std::size_t>(i) * 5 + k] = w[1][k];
            if (second) tab.d2[static_cast<std::size_t>(i) * 5 + k] = w[2][k];
        }
    }
    return tab;
}

} // namespace detail

/// Radial sublaplacian  L f = -(d_rr f + (2n-1)/r d_r f + (r^2/4) d_tt f)
/// by 5-point finite differences in r and t on the grid nodes. Two boundary
/// layers per side are consumed and flagged invalid (set to zero) rather
/// than treated with one-sided stencils. The grid excludes r = 0, so the
/// (2n-1)/r term needs no special handling.
inline RadialFunction sublaplacian_apply(const RadialFunction& f) {
    const auto& g = *f.grid;
    const int mr = f.valid_r_margin + 2;
    const int mt = f.valid_t_margin + 2;
    if (g.n_r() - 2 * mr < 1 || g.n_t() - 2 * mt < 1)
        throw error("sublaplacian_apply: grid too small for stencil");

    const auto rs = detail::make_stencils(g.r_nodes(), true);
    const auto ts = detail::make_stencils(g.t_nodes(), true);
    RadialFunction out(f.grid);
    out.valid_r_margin = mr;
    out.valid_t_margin = mt;
    const int nt = g.n_t();
    const double cn = 2.0 * g.n() - 1.0;
    parallel_for(static_cast<std::size_t>(g.n_r()), [&](std::size_t b, std::size_t e) {
        for (std::size_t iu = b; iu < e; ++iu) {
            const int i = static_cast<int>(iu);
            if (i < mr || i >= g.n_r() - mr) continue;
            const double r = g.r_nodes()[i];
            for (int k = mt; k < nt - mt; ++k) {
                cplx d1r{}, d2r{}, d2t{};
                for (int s = 0; s < 5; ++s) {
                    const cplx vr = f.at(i - 2 + s, k);
                    d1r += rs.d1[static_cast<std::size_t>(i) * 5 + s] * vr;
                    d2r += rs.d2[static_cast<std::size_t>(i) * 5 + s] * vr;
                    d2t += ts.d2[static_cast<std::size_t>(k) * 5 + s] * f.at(i, k - 2 + s);
                }
                out.at(i, k) = -(d2r + (cn / r) * d1r + (r * r / 4.0) * d2t);
            }
        }
    });
    return out;
}

/// T f = d_t f by the same stencil machinery, t-direction only.
inline RadialFunction time_derivative_apply(const RadialFunction& f) {
    const auto& g = *f.grid;
    const int mt = f.valid_t_margin + 2;
    if (g.n_t() - 2 * mt < 1) throw error("time_derivative_apply: grid too small for stencil");
    const auto ts = detail::make_stencils(g.t_nodes(), false);
    RadialFunction out(f.grid);
    out.valid_r_margin = f.valid_r_margin;
    out.valid_t_margin = mt;
    const int nt = g.n_t();
    parallel_for(static_cast<std::size_t>(g.n_r()), [&](std::size_t b, std::size_t e) {
        for (std::size_t iu = b; iu < e; ++iu) {
            const int i = static_cast<int>(iu);
            if (i < f.valid_r_margin || i >= g.n_r() - f.valid_r_margin) continue;
            for (int k = mt; k < nt - mt; ++k) {
                cplx d1{};
                for (int s = 0; s < 5; ++s)
                    d1 += ts.d1[static_cast<std::size_t>(k) * 5 + s] * f.at(i, k - 2 + s);
                out.at(i, k) = d1;
            }
        }
    });
    return out;
}

} // namespace hsph
