#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "hsph/fd.hpp"
#include "hsph/group.hpp"
#include "hsph/quadrature.hpp"
#include "hsph/radial.hpp"
#include "hsph/test_functions.hpp"

using namespace hsph;

TEST_CASE("gauss_legendre integrates polynomials exactly") {
    auto rule = gauss_legendre(3, 0.0, 1.0);
    double s = 0.0;
    for (int i = 0; i < 3; ++i) s += std::pow(rule.nodes[i], 5) * rule.weights[i];
    CHECK(s == Catch::Approx(1.0 / 6.0).epsilon(1e-14));

    auto rule2 = gauss_legendre(20, 0.0, 1.0);
    double e = 0.0, total_w = 0.0;
    for (int i = 0; i < 20; ++i) {
        e += std::exp(-rule2.nodes[i]) * rule2.weights[i];
        total_w += rule2.weights[i];
        CHECK(rule2.weights[i] > 0.0);
        if (i > 0) CHECK(rule2.nodes[i] > rule2.nodes[i - 1]);
    }
    CHECK(e == Catch::Approx(1.0 - std::exp(-1.0)).epsilon(1e-14));
    CHECK(total_w == Catch::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("fd_weights differentiate polynomials exactly on nonuniform nodes") {
    const std::vector<double> nodes{-1.3, -0.4, 0.1, 0.9, 2.0};
    const double x0 = 0.1;
    auto w = fd_weights(x0, std::span<const double>(nodes.data(), nodes.size()), 2);
    double d1 = 0.0, d2 = 0.0;
    for (int k = 0; k < 5; ++k) {
        const double f = std::pow(nodes[k], 4) - 2.0 * nodes[k];
        d1 += w[1][k] * f;
        d2 += w[2][k] * f;
    }
    CHECK(d1 == Catch::Approx(4.0 * std::pow(x0, 3) - 2.0).margin(1e-11));
    CHECK(d2 == Catch::Approx(12.0 * x0 * x0).margin(1e-11));
}

TEST_CASE("pairwise sum is deterministic and accurate") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> v(10001);
    for (auto& x : v) x = dist(rng);
    const double s1 = pairwise_sum(v);
    const double s2 = pairwise_sum(v);
    CHECK(s1 == s2);
    long double ref = 0.0L;
    for (double x : v) ref += x;
    CHECK(s1 == Catch::Approx(static_cast<double>(ref)).margin(1e-12));
}

TEST_CASE("group law") {
    GroupPoint id{{cplx(0, 0)}, 0.0};
    GroupPoint p{{cplx(0.7, -0.3)}, 0.4};
    auto q = group_multiply(id, p);
    CHECK(q.z[0] == p.z[0]);
    CHECK(q.t == p.t);

    auto pq = group_multiply(p, group_inverse(p));
    CHECK(std::abs(pq.z[0]) == 0.0);
    CHECK(pq.t == Catch::Approx(0.0).margin(1e-15));

    // (1,0) * (i,0) = (1+i, 1/2)
    GroupPoint a{{cplx(1, 0)}, 0.0}, b{{cplx(0, 1)}, 0.0};
    auto ab = group_multiply(a, b);
    CHECK(ab.z[0] == cplx(1, 1));
    CHECK(ab.t == Catch::Approx(0.5).epsilon(1e-15));

    GroupPoint bad{{cplx(0, 0), cplx(0, 0)}, 0.0};
    CHECK_THROWS_AS(group_multiply(a, bad), error);
}

TEST_CASE("group multiplication is associative on random triples") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        auto rnd = [&] {
            GroupPoint p;
            p.z = {cplx(dist(rng), dist(rng)), cplx(dist(rng), dist(rng))};
            p.t = dist(rng);
            return p;
        };
        auto a = rnd(), b = rnd(), c = rnd();
        auto lhs = group_multiply(group_multiply(a, b), c);
        auto rhs = group_multiply(a, group_multiply(b, c));
        for (int k = 0; k < 2; ++k) CHECK(std::abs(lhs.z[k] - rhs.z[k]) < 1e-13);
        CHECK(std::abs(lhs.t - rhs.t) < 1e-13);
    }
}

TEST_CASE("koranyi norm and A weight") {
    CHECK(koranyi_norm(0.0, 0.0) == 0.0);
    CHECK(koranyi_norm(0.0, -2.5) == Catch::Approx(std::sqrt(2.5)).epsilon(1e-15));
    CHECK(koranyi_norm(2.0, 1.0) == Catch::Approx(std::pow(2.0, 0.25)).epsilon(1e-15));

    CHECK(a_weight(0.0, 0.0) == cplx(0.0, 0.0));
    CHECK(a_weight(0.0, 1.0) == cplx(0.0, 1.0));

    std::mt19937 rng(99);
    std::uniform_real_distribution<double> dist(0.0, 3.0);
    std::uniform_real_distribution<double> tdist(-4.0, 4.0);
    for (int trial = 0; trial < 500; ++trial) {
        const double r = dist(rng), t = tdist(rng);
        const double nk = koranyi_norm(r, t);
        CHECK(std::abs(a_weight(r, t)) == Catch::Approx(nk * nk).epsilon(1e-13));
        // homogeneity under (z,t) -> (c z, c^2 t)
        const double c = 0.3 + dist(rng);
        CHECK(koranyi_norm(c * r, c * c * t) == Catch::Approx(c * nk).epsilon(1e-13));
    }
}

TEST_CASE("haar integral of gaussians matches closed forms") {
    // n=1: integral of e^{-r^2} e^{-t^2} = 2 pi * (1/2) * sqrt(pi) = pi^{3/2}
    auto g1 = RadialGrid::make(1, 7.0, 7.0, 80, 80);
    auto f1 = sample_radial(g1, [](double r, double t) {
        return cplx(std::exp(-r * r - t * t), 0.0);
    });
    CHECK(haar_integral(f1).real() == Catch::Approx(std::pow(pi, 1.5)).epsilon(1e-12));
    CHECK(haar_integral(f1).imag() == Catch::Approx(0.0).margin(1e-14));

    // n=2: omega = 2 pi^2, r-integral (1/2)Gamma(2) -> pi^2 sqrt(pi)
    auto g2 = RadialGrid::make(2, 7.0, 7.0, 80, 80);
    auto f2 = sample_radial(g2, [](double r, double t) {
        return cplx(std::exp(-r * r - t * t), 0.0);
    });
    CHECK(haar_integral(f2).real() == Catch::Approx(std::pow(pi, 2.5)).epsilon(1e-12));

    // zero function
    auto z = RadialFunction(g1);
    CHECK(haar_integral(z) == cplx(0.0, 0.0));
}

TEST_CASE("haar integral is linear and positive") {
    auto grid = RadialGrid::make(1, 5.0, 5.0, 40, 40);
    auto f = sample_radial(grid, [](double r, double t) { return cplx(std::exp(-r - t * t), 0.0); });
    auto g = sample_radial(grid, [](double r, double t) { return cplx(std::cos(r) + t, 0.1 * r); });
    RadialFunction combo(grid);
    for (std::size_t i = 0; i < combo.values.size(); ++i)
        combo.values[i] = 2.0 * f.values[i] + cplx(0, 1) * g.values[i];
    const cplx lhs = haar_integral(combo);
    const cplx rhs = 2.0 * haar_integral(f) + cplx(0, 1) * haar_integral(g);
    CHECK(std::abs(lhs - rhs) < 1e-12 * std::abs(rhs));
    CHECK(haar_integral(f).real() > 0.0);
}

TEST_CASE("multiply_by_a") {
    auto grid = RadialGrid::make(1, 4.0, 4.0, 30, 30);
    auto f = sample_radial(grid, [](double r, double t) { return cplx(1.0 / (1.0 + r + t * t), 0.0); });
    auto same = multiply_by_a(f, 0);
    CHECK(same.values == f.values);

    auto once = multiply_by_a(f, 1);
    auto twice = multiply_by_a(f, 2);
    auto conj2 = multiply_by_a(f, 2, true);
    for (int i : {0, 7, 29})
        for (int k : {0, 13, 29}) {
            const cplx a = a_weight(grid->r_nodes()[i], grid->t_nodes()[k]);
            CHECK(std::abs(once.at(i, k) - a * f.at(i, k)) < 1e-15 * std::abs(a * f.at(i, k)) + 1e-300);
            CHECK(std::abs(twice.at(i, k) - a * a * f.at(i, k)) < 1e-14 * std::abs(a * a * f.at(i, k)) + 1e-300);
            // |A^j f| = R^{2j} |f| with R the Koranyi norm
            const double R = koranyi_norm(grid->r_nodes()[i], grid->t_nodes()[k]);
            CHECK(std::abs(twice.at(i, k)) ==
                  Catch::Approx(std::pow(R, 4) * std::abs(f.at(i, k))).epsilon(1e-13));
            CHECK(std::abs(conj2.at(i, k)) == Catch::Approx(std::abs(twice.at(i, k))).epsilon(1e-14));
        }
}

TEST_CASE("support radius of constructed bumps") {
    auto grid = RadialGrid::make(1, 4.5, 4.5, 200, 200);
    auto zero = RadialFunction(grid);
    CHECK(support_radius(zero).koranyi_radius == 0.0);

    auto ball = sample_radial(grid, [](double r, double t) { return cplx(ball_bump(1.0, r, t), 0.0); });
    const double rb = support_radius(ball).koranyi_radius;
    CHECK(rb <= 1.0);
    CHECK(rb > 0.97);

    auto ann = sample_radial(grid, [](double r, double t) { return cplx(annulus_bump(1.0, 2.0, r, t), 0.0); });
    const double ra = support_radius(ann).koranyi_radius;
    CHECK(ra <= 2.0);
    CHECK(ra > 1.97);

    CHECK_THROWS_AS(support_radius(ball, 0.0), error);
}
