#include "fairmtsp/oracle.hpp"

#include <doctest.h>

#include "fairmtsp/metrics.hpp"
#include "test_support.hpp"

#include <algorithm>
#include <random>

using namespace fairmtsp;

namespace {

Instance mirror_instance() {
    // depot (0,0), targets (1,0) and (-1,0)
    Eigen::MatrixXd cost(3, 3);
    cost << 0, 1, 1,
            1, 0, 2,
            1, 2, 0;
    return make_instance(cost, 0, "mirror");
}

}  // namespace

TEST_CASE("held_karp base cases") {
    Eigen::MatrixXd cost(2, 2);
    cost << 0, 7, 7, 0;
    Instance inst = make_instance(cost, 0);
    CHECK(held_karp(inst, {}) == doctest::Approx(0.0));
    CHECK(held_karp(inst, {1}) == doctest::Approx(14.0));
}

TEST_CASE("held_karp on the unit square") {
    // depot (0,0), targets (1,0),(1,1),(0,1): perimeter 4
    Eigen::MatrixXd cost(4, 4);
    std::vector<Eigen::Vector2d> pts = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) cost(i, j) = (pts[i] - pts[j]).norm();
    Instance inst = make_instance(cost, 0);
    std::vector<int> tour;
    CHECK(held_karp(inst, {1, 2, 3}, &tour) == doctest::Approx(4.0));
    REQUIRE(tour.size() == 5);
    CHECK(tour.front() == 0);
    CHECK(tour.back() == 0);
}

TEST_CASE("held_karp matches factorial enumeration") {
    std::mt19937 rng(83);
    for (int trial = 0; trial < 3; ++trial) {
        Instance inst = test_support::random_euclidean(rng, 8);
        std::vector<int> targets = inst.targets();

        std::vector<int> perm = targets;
        std::sort(perm.begin(), perm.end());
        double best = std::numeric_limits<double>::infinity();
        do {
            double len = inst.cost(inst.depot, perm.front());
            for (size_t i = 0; i + 1 < perm.size(); ++i) len += inst.cost(perm[i], perm[i + 1]);
            len += inst.cost(perm.back(), inst.depot);
            best = std::min(best, len);
        } while (std::next_permutation(perm.begin(), perm.end()));

        std::vector<int> tour;
        double hk = held_karp(inst, targets, &tour);
        CHECK(hk == doctest::Approx(best).epsilon(1e-9));
        // The reconstructed tour realizes the claimed length.
        double len = 0;
        for (size_t i = 0; i + 1 < tour.size(); ++i) len += inst.cost(tour[i], tour[i + 1]);
        CHECK(len == doctest::Approx(hk).epsilon(1e-9));
    }
}

TEST_CASE("brute_force min-sum equals single-tour Held-Karp under TI") {
    std::mt19937 rng(89);
    Instance inst = test_support::random_euclidean(rng, 6);
    REQUIRE(check_triangle_inequality(inst).empty());
    BruteForceResult res = brute_force(inst, ModelSpec::min_sum(2));
    REQUIRE(res.feasible);
    CHECK(res.objective == doctest::Approx(held_karp(inst, inst.targets())).epsilon(1e-9));
}

TEST_CASE("brute_force on the mirror instance") {
    Instance inst = mirror_instance();
    BruteForceResult mm = brute_force(inst, ModelSpec::min_max(2));
    REQUIRE(mm.feasible);
    CHECK(mm.objective == doctest::Approx(2.0));
    CHECK(mm.lengths.minCoeff() == doctest::Approx(2.0));

    BruteForceResult ef = brute_force(inst, ModelSpec::eps_fair(2, 1.0));
    REQUIRE(ef.feasible);
    CHECK(ef.lengths.sum() == doctest::Approx(4.0));
    CHECK(ef.lengths[0] == doctest::Approx(2.0));
    CHECK(ef.lengths[1] == doctest::Approx(2.0));
}

TEST_CASE("brute_force respects its size guard") {
    std::mt19937 rng(97);
    Instance big = test_support::random_euclidean(rng, 10);
    CHECK_THROWS(brute_force(big, ModelSpec::min_sum(2)));
}

TEST_CASE("fairness never cheapens the total") {
    std::mt19937 rng(101);
    for (int trial = 0; trial < 5; ++trial) {
        Instance inst = test_support::random_euclidean(rng, 6);
        double minsum = brute_force(inst, ModelSpec::min_sum(2)).objective;
        for (const ModelSpec& spec :
             {ModelSpec::eps_fair(2, 0.5), ModelSpec::delta_fair(2, 0.3), ModelSpec::min_max(2)}) {
            BruteForceResult res = brute_force(inst, spec);
            if (res.feasible) CHECK(res.lengths.sum() >= minsum - 1e-9);
        }
    }
}

TEST_CASE("delta-fair at the min-max gini never beats min-max total") {
    std::mt19937 rng(103);
    for (int trial = 0; trial < 5; ++trial) {
        Instance inst = test_support::random_euclidean(rng, 6);
        BruteForceResult mm = brute_force(inst, ModelSpec::min_max(2));
        REQUIRE(mm.feasible);
        double delta = gini(mm.lengths);
        BruteForceResult df = brute_force(inst, ModelSpec::delta_fair(2, delta));
        REQUIRE(df.feasible);
        CHECK(df.lengths.sum() <= mm.lengths.sum() + 1e-9);
    }
}

TEST_CASE("pareto front: symmetric instance collapses to one point") {
    Instance inst = mirror_instance();
    auto front = brute_force_pareto(inst, 2, FairnessKind::EpsFI);
    REQUIRE(front.size() == 1);
    CHECK(front[0].total == doctest::Approx(4.0));
    CHECK(front[0].fairness == doctest::Approx(1.0));
}

TEST_CASE("pareto front always contains the min-sum total") {
    std::mt19937 rng(107);
    for (int trial = 0; trial < 3; ++trial) {
        Instance inst = test_support::random_euclidean(rng, 6);
        double minsum = brute_force(inst, ModelSpec::min_sum(2)).objective;
        for (FairnessKind kind : {FairnessKind::EpsFI, FairnessKind::Gini}) {
            auto front = brute_force_pareto(inst, 2, kind);
            REQUIRE_FALSE(front.empty());
            CHECK(front.front().total == doctest::Approx(minsum).epsilon(1e-9));
        }
    }
}
