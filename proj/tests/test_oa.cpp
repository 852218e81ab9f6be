#include "fairmtsp/oa.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace fairmtsp;

TEST_CASE("project_power drops the bound coordinate to the surface") {
    PowerConePoint a = project_power({1, 1, 2, 2});
    CHECK(a.l == doctest::Approx(1.0));
    PowerConePoint b = project_power({4, 1, 3, 2});
    CHECK(b.l == doctest::Approx(2.0));
    PowerConePoint c = project_power({1, 8, 9, 3});
    CHECK(c.l == doctest::Approx(4.0));
    CHECK_THROWS_AS(project_power({1e-12, 1e-12, 1, 2}), DegenerateProjection);
}

TEST_CASE("power_cut reproduces the reference tangents") {
    LinearCut a = power_cut({1, 1, 1, 2}, 0, 1, 2);
    // 0.5 L + 0.5 z >= l
    REQUIRE(a.coeffs.size() == 3);
    CHECK(a.coeffs[0].second == doctest::Approx(0.5));
    CHECK(a.coeffs[1].second == doctest::Approx(0.5));
    CHECK(a.coeffs[2].second == doctest::Approx(-1.0));
    CHECK(a.rhs == 0.0);

    LinearCut b = power_cut({4, 1, 2, 2}, 0, 1, 2);
    // L + 4z >= 4l (scaled by any positive factor)
    double scale = b.coeffs[0].second;  // coefficient of L
    CHECK(b.coeffs[1].second / scale == doctest::Approx(4.0));
    CHECK(b.coeffs[2].second / scale == doctest::Approx(-4.0));
}

TEST_CASE("power cuts never separate cone points") {
    std::mt19937 rng(71);
    std::uniform_real_distribution<double> u(0.0, 5.0);
    std::uniform_int_distribution<int> pd(2, 10);
    for (int c = 0; c < 50; ++c) {
        int p = pd(rng);
        double L0 = 0.1 + u(rng), z0 = 0.1 + u(rng);
        PowerConePoint surface{L0, z0, 0, p};
        surface.l = surface.surface_value();
        LinearCut cut = power_cut(surface, 0, 1, 2);
        for (int s = 0; s < 1000; ++s) {
            PowerConePoint pt{u(rng), u(rng), 0, p};
            pt.l = pt.surface_value() * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
            Eigen::VectorXd x(3);
            x << pt.L, pt.z, pt.l;
            CHECK(cut.evaluate(x) >= -1e-9);
        }
    }
}

TEST_CASE("power cut separates the violated point that triggered it") {
    std::mt19937 rng(73);
    std::uniform_real_distribution<double> u(0.1, 5.0);
    std::uniform_int_distribution<int> pd(2, 10);
    for (int c = 0; c < 200; ++c) {
        PowerConePoint pt{u(rng), u(rng), 0, pd(rng)};
        pt.l = pt.surface_value() + 0.01 + u(rng);  // violated
        PowerConePoint surface = project_power(pt);
        LinearCut cut = power_cut(surface, 0, 1, 2);
        Eigen::VectorXd x(3);
        x << pt.L, pt.z, pt.l;
        CHECK(cut.evaluate(x) < -1e-6);
    }
}

TEST_CASE("soc_cut reference tangents") {
    Eigen::VectorXd l0(2);
    l0 << 3, 4;
    LinearCut cut = soc_cut(l0, {0, 1}, 2);
    // z >= 0.6 l1 + 0.8 l2
    double cz = 0, c1 = 0, c2 = 0;
    for (auto [col, v] : cut.coeffs) {
        if (col == 2) cz = v;
        if (col == 0) c1 = v;
        if (col == 1) c2 = v;
    }
    CHECK(cz == doctest::Approx(1.0));
    CHECK(c1 == doctest::Approx(-0.6));
    CHECK(c2 == doctest::Approx(-0.8));
    Eigen::VectorXd x(3);
    x << 3, 4, 4;  // z* = 4 < 5
    CHECK(cut.evaluate(x) < -1e-6);

    Eigen::VectorXd axis(3);
    axis << 1, 0, 0;
    LinearCut ax = soc_cut(axis.head(2), {0, 1}, 2);  // z >= l1
    Eigen::VectorXd probe(3);
    probe << 2, 0, 2;
    CHECK(ax.evaluate(probe) == doctest::Approx(0.0));

    CHECK_THROWS_AS(soc_cut(Eigen::VectorXd::Zero(2), {0, 1}, 2), DegenerateProjection);
}

TEST_CASE("soc cuts never separate points of the cone") {
    std::mt19937 rng(79);
    std::uniform_real_distribution<double> u(0.0, 5.0);
    std::uniform_int_distribution<int> md(2, 4);
    for (int c = 0; c < 50; ++c) {
        int m = md(rng);
        Eigen::VectorXd l0(m);
        for (int i = 0; i < m; ++i) l0[i] = 0.1 + u(rng);
        std::vector<int> l_cols(m);
        for (int i = 0; i < m; ++i) l_cols[i] = i;
        LinearCut cut = soc_cut(l0, l_cols, m);
        for (int s = 0; s < 1000; ++s) {
            Eigen::VectorXd x(m + 1);
            for (int i = 0; i < m; ++i) x[i] = u(rng);
            x[m] = x.head(m).norm() + u(rng);  // any z >= |l|_2
            CHECK(cut.evaluate(x) >= -1e-9);
        }
    }
}

TEST_CASE("conic_violation reference values") {
    ModelSpec pn = ModelSpec::p_norm(2, 2);
    Eigen::VectorXd lengths(2);
    lengths << 2, 0;
    Eigen::VectorXd L(2);
    L << 1, 0;
    // (L, z, l) = (1, 1, 2): surface is 1, so violation 1.
    CHECK(conic_violation(pn, lengths, 1.0, L) == doctest::Approx(1.0));

    ModelSpec ef = ModelSpec::eps_fair(2, 0.5);
    Eigen::VectorXd l2(2);
    l2 << 3, 4;
    CHECK(conic_violation(ef, l2, 4.0, Eigen::VectorXd()) == doctest::Approx(1.0));
    CHECK(conic_violation(ef, l2, 5.0, Eigen::VectorXd()) == doctest::Approx(0.0));

    ModelSpec ms = ModelSpec::min_sum(2);
    CHECK(conic_violation(ms, l2, 0.0, Eigen::VectorXd()) == 0.0);
}

TEST_CASE("iterated soc cuts converge z to the norm on a fixed-l probe") {
    // min z subject to tangent cuts at successive solutions, l fixed at (3, 4):
    // after enough cuts z must reach |l|_2 = 5 within 1e-5.
    Eigen::VectorXd l(2);
    l << 3, 4;
    double z = 0;
    for (int round = 0; round < 50; ++round) {
        if (z >= l.norm() - 1e-9) break;
        // Tangent at the current infeasible point (l fixed, z raised).
        LinearCut cut = soc_cut(l, {0, 1}, 2);
        // The tangent at fixed l is exact: z >= (l . l)/|l| = |l|.
        double c0 = 0, c1 = 0;
        for (auto [col, v] : cut.coeffs) {
            if (col == 0) c0 = v;
            if (col == 1) c1 = v;
        }
        z = std::max(z, -(c0 * l[0] + c1 * l[1]));
    }
    CHECK(z == doctest::Approx(5.0).epsilon(1e-5));
}
