#include <catch2/catch_amalgamated.hpp>

#include "hsph/paley_wiener.hpp"
#include "hsph/test_functions.hpp"

using namespace hsph;

TEST_CASE("estimate_limit on analytic sequences") {
    // geometric u_j = a^j: both estimators are exact
    const double a = 1.7;
    std::vector<double> geo;
    for (int j = 0; j <= 20; ++j) geo.push_back(std::pow(a, j));
    CHECK(estimate_limit(geo, LimitMethod::root) == Catch::Approx(a).epsilon(1e-13));
    CHECK(estimate_limit(geo, LimitMethod::ratio) == Catch::Approx(a).epsilon(1e-13));

    // u_j = j^2 a^j: ratio converges at O(1/j), root at O(log j / j)
    std::vector<double> poly;
    const int J = 40;
    for (int j = 0; j <= J; ++j) poly.push_back(j * j * std::pow(a, j));
    const double ratio_est = estimate_limit(poly, LimitMethod::ratio);
    double want = 0.0;
    for (int j = J - 3; j < J; ++j)
        want += (std::pow(j + 1.0, 2) * a) / std::pow(static_cast<double>(j), 2);
    want /= 3.0;
    CHECK(ratio_est == Catch::Approx(want).epsilon(1e-13));
    CHECK(std::abs(ratio_est - a) < 0.06 * a);
    const double root_est = estimate_limit(poly, LimitMethod::root);
    CHECK(root_est == Catch::Approx(a * std::pow(J * J, 1.0 / J)).epsilon(1e-13));

    // zeros
    std::vector<double> zeros(10, 0.0);
    CHECK(estimate_limit(zeros, LimitMethod::ratio) == 0.0);
    CHECK(estimate_limit(zeros, LimitMethod::root) == 0.0);
    std::vector<double> tooshort{1.0, 2.0};
    CHECK_THROWS_AS(estimate_limit(tooshort, LimitMethod::ratio), error);
}

TEST_CASE("dirac derivative field") {
    CHECK(dirac_derivative_field(1, 0.0, 0.7) == cplx(0.0, 0.0));
    // closed form equals -dPhi/dxi at (n, 1)
    for (int n : {1, 2})
        for (double r : {0.3, 1.0, 2.5, 4.0})
            for (double t : {0.0, 1.3}) {
                const cplx closed = dirac_derivative_field(n, r, t);
                const SphericalParams prm{cplx(static_cast<double>(n), 0.0), cplx(1.0, 0.0)};
                const cplx dxi = -spherical_function_dxi(prm, r, t, n);
                CHECK(std::abs(closed - dxi) <= 1e-8 * std::abs(dxi));
            }
    // growth: |f_U| * 2 (r^2/2)^n e^{-r^2/4} -> 1; within 20% at r^2 = 100
    const double g = std::abs(dirac_derivative_field(1, 10.0, 0.0)) * 2.0 * 50.0 * std::exp(-25.0);
    CHECK(g > 0.8);
    CHECK(g < 1.2);
}

namespace {

struct PwSetup {
    RadialGridPtr radial;
    FanGridPtr fan;
    TransformPlanPtr plan;
};

PwSetup gaussian_setup() {
    // Window tuned for the iterated discrete path: the spacing must resolve
    // the per-ray lambda scale 1/(2j+n) of the retained rays while each FD
    // application amplifies node-scale rounding noise by ~1.4/h, and
    // lambda_min stays away from 0 where the coupling coefficient
    // (j+n)/lambda blows noise up.
    PwSetup s;
    s.radial = RadialGrid::make(1, 6.5, 6.5, 160, 160);
    s.fan = FanGrid::make(1, 16, 0.4, 9.0, 247);
    s.plan = TransformPlan::make(s.radial, s.fan);
    return s;
}

} // namespace

TEST_CASE("discrete and exact direct sequences agree for small j") {
    // Each M+ application consumes one ray and two lambda nodes per edge, so
    // the fair comparison restricts the exact transform to the discrete
    // path's surviving window before taking norms.
    auto s = gaussian_setup();
    auto f = sample_radial(s.radial, [](double r, double t) {
        return cplx(gaussian_bump(1.0, r, t), 0.0);
    });
    // default weighted norm, beta = (n+2)/p + 1
    const double beta = 2.5;
    FanFunction discrete = spherical_transform(f, *s.plan);
    RadialFunction g = f;
    for (int j = 0; j <= 8; ++j) {
        FanFunction exact = spherical_transform(g, *s.plan);
        exact.valid_j = discrete.valid_j;
        exact.valid_lambda_margin = discrete.valid_lambda_margin;
        const double ne = lp_norm(exact, 2.0, beta);
        const double nd = lp_norm(discrete, 2.0, beta);
        CHECK(std::abs(nd - ne) <= 1e-3 * ne);
        if (j < 8) {
            discrete = m_plus_apply(discrete);
            g = multiply_by_a(g, 1, false);
        }
    }
}

TEST_CASE("zero input short-circuits the direct sequence") {
    auto s = gaussian_setup();
    RadialFunction zero(s.radial);
    auto est = direct_pw_sequence(zero, 2.0, 0.0, 5, DirectMethod::exact_aj, *s.plan);
    for (double v : est.sequence) CHECK(v == 0.0);
    CHECK(est.extrapolated_limit == 0.0);
}

TEST_CASE("space-side oracle sequences respect the support lower bound") {
    // ||A^j f||_2^{1/j} ratios target R(f)^2 from below-ish; the liminf never
    // extrapolates under R^2 by more than the tolerance.
    auto grid = RadialGrid::make(1, 2.1, 1.1, 220, 220);
    auto ball = sample_radial(grid, [](double r, double t) { return cplx(ball_bump(1.0, r, t), 0.0); });
    std::vector<double> norms;
    RadialFunction g = ball;
    for (int j = 0; j <= 30; ++j) {
        norms.push_back(lp_norm_radial(g, 2.0, 0.0));
        g = multiply_by_a(g, 1, false);
    }
    const double limit = estimate_limit(norms, LimitMethod::ratio);
    const double R2 = 1.0;
    CHECK(limit >= 0.95 * R2);
    CHECK(limit <= 1.01 * R2);
}

TEST_CASE("dilation covariance of the direct limit") {
    // f_c(z,t) = f(c z, c^2 t) has support radius R/c; the limit scales by c^{-2}.
    const double c = 1.3;
    auto grid1 = RadialGrid::make(1, 2.1, 1.1, 200, 200);
    auto grid2 = RadialGrid::make(1, 2.1 * c, 1.1 * c * c, 200, 200);
    auto f1 = sample_radial(grid1, [](double r, double t) { return cplx(ball_bump(1.0, r, t), 0.0); });
    auto f2 = sample_radial(grid2, [&](double r, double t) {
        return cplx(ball_bump(1.0, r / c, t / (c * c)), 0.0);
    });
    auto seq = [&](const RadialFunction& f) {
        std::vector<double> norms;
        RadialFunction g = f;
        for (int j = 0; j <= 24; ++j) {
            norms.push_back(lp_norm_radial(g, 2.0, 0.0));
            g = multiply_by_a(g, 1, false);
        }
        return estimate_limit(norms, LimitMethod::ratio);
    };
    const double l1 = seq(f1);
    const double l2 = seq(f2);
    CHECK(l2 / l1 == Catch::Approx(c * c).epsilon(0.05));
}

namespace {

PwSetup ray_band_setup() {
    PwSetup s;
    s.radial = RadialGrid::make(1, 10.0, 40.0, 150, 260);
    s.fan = FanGrid::make(1, 2, 0.9, 2.1, 241);
    s.plan = TransformPlan::make(s.radial, s.fan);
    return s;
}

} // namespace

TEST_CASE("inverse sequence: point mass gives the exact eigenvalue") {
    auto s = ray_band_setup();
    FanFunction F(s.fan);
    const int i0 = 120;
    F.at(0, 1, i0) = cplx(0.7, -0.2);
    const double xi0 = xi_of(1, s.fan->lambda_nodes()[i0], 1);
    auto est = inverse_pw_sequence(F, 2.0, 0.0, 10, InverseMethod::fan_side, *s.plan);
    for (double ratio : est.ratio_sequence)
        CHECK(ratio == Catch::Approx(xi0).epsilon(1e-12));
    CHECK(est.extrapolated_limit == Catch::Approx(xi0).epsilon(1e-12));
}

TEST_CASE("inverse sequence: constant rescaling leaves ratios unchanged") {
    auto s = ray_band_setup();
    FanFunction F(s.fan);
    for (int i = 0; i < s.fan->n_lambda(); ++i)
        F.at(0, 0, i) = fan_band_profile(1.0, 2.0, s.fan->lambda_nodes()[i]);
    auto est1 = inverse_pw_sequence(F, 2.0, 0.0, 8, InverseMethod::fan_side, *s.plan);
    FanFunction F4 = F;
    for (auto& v : F4.values) v *= 4.0; // power of two: exact scaling
    auto est4 = inverse_pw_sequence(F4, 2.0, 0.0, 8, InverseMethod::fan_side, *s.plan);
    CHECK(est1.ratio_sequence == est4.ratio_sequence);

    FanFunction zero(s.fan);
    CHECK_THROWS_AS(inverse_pw_sequence(zero, 2.0, 0.0, 5, InverseMethod::fan_side, *s.plan),
                    error);
}

TEST_CASE("space-side inverse sequence is a usable diagnostic") {
    auto s = ray_band_setup();
    FanFunction F(s.fan);
    for (int i = 0; i < s.fan->n_lambda(); ++i)
        F.at(0, 0, i) = fan_gaussian_profile(1.5, 0.15, s.fan->lambda_nodes()[i]);
    // compare window-matched norms: the space-side margins grow with each
    // FD application while the fan-side inverse keeps the full grid
    RadialFunction space = inverse_spherical_transform(F, *s.plan);
    FanFunction G = F;
    for (int j = 0; j <= 4; ++j) {
        RadialFunction fan_j = inverse_spherical_transform(G, *s.plan);
        fan_j.valid_r_margin = space.valid_r_margin;
        fan_j.valid_t_margin = space.valid_t_margin;
        const double nf = lp_norm_radial(fan_j, 2.0, 0.0);
        const double ns = lp_norm_radial(space, 2.0, 0.0);
        CHECK(std::abs(ns - nf) < 5e-3 * nf);
        if (j < 4) {
            space = sublaplacian_apply(space);
            G = multiply_by_xi(G, 1);
        }
    }
}

TEST_CASE("slow growth of L^j at a fixed point for fan-compact data") {
    // |L^j f(x)| <= rho^j * integral of |F| dmu since |Phi| <= 1 on the fan.
    auto s = ray_band_setup();
    FanFunction F(s.fan);
    for (int i = 0; i < s.fan->n_lambda(); ++i)
        F.at(0, 1, i) = fan_band_profile(1.0, 2.0, s.fan->lambda_nodes()[i]);
    double rho = 0.0;
    FanFunction absF = F;
    for (auto& v : absF.values) v = std::abs(v);
    for (int i = 0; i < s.fan->n_lambda(); ++i)
        if (std::abs(F.at(0, 1, i)) > 0.0) rho = std::max(rho, xi_of(1, s.fan->lambda_nodes()[i], 1));
    const double mass = plancherel_integral(absF).real();
    FanFunction G = F;
    const int ir = 20, it = 130;
    for (int j = 0; j <= 25; ++j) {
        auto f = inverse_spherical_transform(G, *s.plan);
        CHECK(std::abs(f.at(ir, it)) <= std::pow(rho, j) * mass * (1.0 + 1e-10));
        if (j < 25) G = multiply_by_xi(G, 1);
    }
}

TEST_CASE("growth probe handles the lambda = 0 row") {
    // at lambda = 0 the radial factor is the Bessel-type series and the row
    // reduces to finite integrals of g and h
    std::vector<double> lambdas{0.0};
    GrowthProbeOptions opt;
    opt.n_r = 300;
    opt.n_t = 150;
    auto rows = holo_growth_probe(growth_demo_g, growth_demo_h,
                                  std::span<const double>(lambdas.data(), lambdas.size()), 1, opt);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].ok);
    CHECK(std::isfinite(rows[0].abs_f));
    CHECK(rows[0].abs_f > 0.0);
    // F(0,0) = (integral of g dm-part) * (integral of h): J_0(0) = 1 kernel
    const auto rr = gauss_legendre(400, 1.0, 4.0);
    const auto tt = gauss_legendre(200, -1.0, 1.0);
    double gi = 0.0, hi = 0.0;
    for (int i = 0; i < 400; ++i)
        gi += growth_demo_g(rr.nodes[i]) * 2.0 * pi * rr.nodes[i] * rr.weights[i];
    for (int i = 0; i < 200; ++i) hi += growth_demo_h(tt.nodes[i]) * tt.weights[i];
    CHECK(rows[0].abs_f == Catch::Approx(std::abs(gi * hi)).epsilon(1e-6));
}

TEST_CASE("growth probe emits a positive, finite table") {
    std::vector<double> lambdas{5.0, 8.0, 12.0};
    GrowthProbeOptions opt;
    opt.n_r = 400;
    opt.n_t = 200;
    auto rows = holo_growth_probe(growth_demo_g, growth_demo_h,
                                  std::span<const double>(lambdas.data(), lambdas.size()), 1, opt);
    REQUIRE(rows.size() == 3);
    for (const auto& row : rows) {
        CHECK(row.ok);
        CHECK(row.normalized_ratio > 0.0);
        CHECK(std::isfinite(row.normalized_ratio));
    }
    // doubling lambda from 5 to 10-ish multiplies |F|/|Fh| by more than e^{lambda/2}
    std::vector<double> pair{6.0, 12.0};
    auto rows2 = holo_growth_probe(growth_demo_g, growth_demo_h,
                                   std::span<const double>(pair.data(), pair.size()), 1, opt);
    const double q1 = rows2[0].abs_f / rows2[0].abs_fh;
    const double q2 = rows2[1].abs_f / rows2[1].abs_fh;
    CHECK(q2 / q1 > std::exp(6.0 / 2.0));
}
