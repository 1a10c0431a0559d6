#pragma once

#include "hsph/fan.hpp"
#include "hsph/fd.hpp"

namespace hsph {

namespace detail {

/// Shared driver for M+ and M-. With g_j the restriction of F to ray j as a
/// function of signed lambda, the restrictions of the continuous operators
///   M+- psi = (1/la)(la d_la + xi d_xi) psi
///             - (n la +- xi)/(2 la^2) (psi(xi +- 2 la, la) - psi(xi, la))
/// to the fan xi = |la|(2j+n) reduce to
///   M+ : la > 0:  g_j' - (j+n)/la   * (g_{j+1} - g_j)
///        la < 0:  g_j' - j/|la|     * (g_{j-1} - g_j)
///   M- : la > 0:  g_j' + j/la       * (g_{j-1} - g_j)
///        la < 0:  g_j' + (j+n)/|la| * (g_{j+1} - g_j)
/// because xi +- 2 la lands on the adjacent ray and the radial derivative
/// along a ray is the derivative of the ray restriction. The coefficient of
/// the g_{j-1} term vanishes at j = 0, so no out-of-range ray is touched.
/// g_j' is the 4th-order centered difference in signed lambda; one operator
/// application consumes one ray and two lambda nodes per window edge.
inline FanFunction m_operator_apply(const FanFunction& F, bool plus) {
    const auto& g = *F.grid;
    if (!g.uniform_spacing()) throw error("m_operator_apply: uniform lambda grid required");
    const int margin = F.valid_lambda_margin + 2;
    if (F.valid_j < 1 || g.n_lambda() - 2 * margin < 1)
        throw error(plus ? "m_plus_apply: window exhausted" : "m_minus_apply: window exhausted");

    FanFunction out(F.grid);
    out.valid_j = F.valid_j - 1;
    out.valid_lambda_margin = margin;
    const double h = g.spacing();
    const int nl = g.n_lambda();

    for (int s = 0; s < 2; ++s) {
        const bool lam_pos = (s == 0);
        // d/d(signed lambda) flips sign on the mirrored branch where the
        // stored index runs over |lambda|.
        const double dsign = lam_pos ? 1.0 : -1.0;
        for (int j = 0; j <= out.valid_j; ++j) {
            // ray coupling: M+ reaches j+1 for lambda>0 and j-1 for lambda<0,
            // M- the mirror image.
            const int other = plus ? (lam_pos ? j + 1 : j - 1) : (lam_pos ? j - 1 : j + 1);
            for (int i = margin; i < nl - margin; ++i) {
                const double al = g.lambda_nodes()[i];
                const cplx* row = &F.at(s, j, i);
                cplx val = dsign * central_derivative4(row, 1, h);
                double coef;
                if (plus)
                    coef = lam_pos ? -(j + g.n()) / al : -static_cast<double>(j) / al;
                else
                    coef = lam_pos ? static_cast<double>(j) / al : (j + g.n()) / al;
                if (coef != 0.0) val += coef * (F.at(s, other, i) - F.at(s, j, i));
                out.at(s, j, i) = val;
            }
        }
    }
    return out;
}

} // namespace detail

/// M+ on the fan; intertwines multiplication by A through the spherical
/// transform. Output window: valid_j - 1, lambda margin + 2.
inline FanFunction m_plus_apply(const FanFunction& F) { return detail::m_operator_apply(F, true); }

/// M- on the fan; G(conj(A) f) = -M- G f.
inline FanFunction m_minus_apply(const FanFunction& F) {
    return detail::m_operator_apply(F, false);
}

/// Discretization-quality diagnostic for the transpose identity
/// int (M+ phi) psi dmu = - int phi (M- psi) dmu:
/// returns |<M+ phi, psi> + <phi, M- psi>|.
inline double transpose_defect(const FanFunction& phi, const FanFunction& psi) {
    if (phi.grid != psi.grid) throw error("transpose_defect: functions must share a grid");
    FanFunction mp = m_plus_apply(phi);
    FanFunction mm = m_minus_apply(psi);
    std::vector<cplx> terms;
    for (int s = 0; s < 2; ++s)
        for (int j = 0; j <= mp.valid_j; ++j)
            for (int i = mp.lambda_begin(); i < mp.lambda_end(); ++i)
                terms.push_back(mp.at(s, j, i) * psi.at(s, j, i) * phi.grid->mu_weight(j, i));
    const cplx lhs = pairwise_sum(terms);
    terms.clear();
    for (int s = 0; s < 2; ++s)
        for (int j = 0; j <= mm.valid_j; ++j)
            for (int i = mm.lambda_begin(); i < mm.lambda_end(); ++i)
                terms.push_back(phi.at(s, j, i) * mm.at(s, j, i) * phi.grid->mu_weight(j, i));
    const cplx rhs = pairwise_sum(terms);
    return std::abs(lhs + rhs);
}

} // namespace hsph
