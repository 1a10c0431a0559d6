#pragma once

#include <cmath>
#include <vector>

#include "hsph/common.hpp"

namespace hsph {

/// Point (z, t) of the Heisenberg group H_n, z in C^n, t real.
struct GroupPoint {
    std::vector<cplx> z;
    double t = 0.0;

    int n() const { return static_cast<int>(z.size()); }
};

/// Group law (z,t)(w,u) = (z+w, t+u+Im<w|z>/2) with <w|z> = sum w_k conj(z_k).
inline GroupPoint group_multiply(const GroupPoint& p, const GroupPoint& q) {
    if (p.n() != q.n()) throw error("group_multiply: dimension mismatch");
    GroupPoint out;
    out.z.resize(p.z.size());
    cplx herm{0.0, 0.0};
    for (std::size_t k = 0; k < p.z.size(); ++k) {
        out.z[k] = p.z[k] + q.z[k];
        herm += q.z[k] * std::conj(p.z[k]);
    }
    out.t = p.t + q.t + 0.5 * herm.imag();
    return out;
}

inline GroupPoint group_inverse(const GroupPoint& p) {
    GroupPoint out;
    out.z.resize(p.z.size());
    for (std::size_t k = 0; k < p.z.size(); ++k) out.z[k] = -p.z[k];
    out.t = -p.t;
    return out;
}

/// Koranyi norm |(z,t)| = (|z|^4/16 + t^2)^{1/4}, homogeneous of degree 1
/// under (z,t) -> (r z, r^2 t). Radial overload takes r = |z|.
inline double koranyi_norm(double r, double t) {
    const double r2 = r * r;
    return std::pow(r2 * r2 / 16.0 + t * t, 0.25);
}

inline double koranyi_norm(const GroupPoint& p) {
    double zsq = 0.0;
    for (const auto& zk : p.z) zsq += std::norm(zk);
    return koranyi_norm(std::sqrt(zsq), p.t);
}

/// A(z,t) = |z|^2/4 + i t; |A(z,t)| equals the Koranyi norm squared.
inline cplx a_weight(double r, double t) { return {r * r / 4.0, t}; }

inline cplx a_weight(const GroupPoint& p) {
    double zsq = 0.0;
    for (const auto& zk : p.z) zsq += std::norm(zk);
    return {zsq / 4.0, p.t};
}

} // namespace hsph
