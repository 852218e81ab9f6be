#include "fairmtsp/bnc.hpp"

#include <doctest.h>

#include "fairmtsp/metrics.hpp"
#include "fairmtsp/oracle.hpp"
#include "test_support.hpp"

#include <cmath>
#include <random>

using namespace fairmtsp;

namespace {

SolveParams exact_params() {
    SolveParams p;
    p.rel_gap = 0;
    p.abs_gap = 1e-9;
    return p;
}

void check_feasible_mtsp(const Instance& inst, const Solution& sol, int m) {
    REQUIRE(static_cast<int>(sol.tours.size()) == m);
    std::vector<int> visits(inst.num_vertices(), 0);
    for (int v = 0; v < m; ++v) {
        const auto& tour = sol.tours[v];
        REQUIRE_FALSE(tour.empty());
        CHECK(tour.front() == inst.depot);
        CHECK(tour.back() == inst.depot);
        double len = 0;
        for (size_t i = 0; i + 1 < tour.size(); ++i) len += inst.cost(tour[i], tour[i + 1]);
        CHECK(len == doctest::Approx(sol.lengths[v]).epsilon(1e-6));
        for (int node : tour)
            if (node != inst.depot) ++visits[node];
    }
    for (int t : inst.targets()) CHECK(visits[t] == 1);
}

}  // namespace

TEST_CASE("min-sum equals Held-Karp on triangle-inequality instances") {
    std::mt19937 rng(113);
    for (int trial = 0; trial < 3; ++trial) {
        Instance inst = test_support::random_euclidean(rng, 6);
        REQUIRE(check_triangle_inequality(inst).empty());
        SolveResult res = solve(inst, ModelSpec::min_sum(2), exact_params());
        REQUIRE(res.solution.has_value());
        CHECK(res.solution->objective ==
              doctest::Approx(held_karp(inst, inst.targets())).epsilon(1e-7));
        check_feasible_mtsp(inst, *res.solution, 2);
    }
}

TEST_CASE("limit parameters collapse to min-sum") {
    std::mt19937 rng(127);
    Instance inst = test_support::random_euclidean(rng, 6);
    double minsum = solve(inst, ModelSpec::min_sum(2), exact_params()).solution->objective;
    CHECK(solve(inst, ModelSpec::eps_fair(2, 0.0), exact_params()).solution->objective ==
          doctest::Approx(minsum).epsilon(1e-6));
    CHECK(solve(inst, ModelSpec::delta_fair(2, 1.0), exact_params()).solution->objective ==
          doctest::Approx(minsum).epsilon(1e-6));
}

TEST_CASE("all variants match the brute-force oracle on random instances") {
    std::mt19937 rng(131);
    std::vector<ModelSpec> specs = {
        ModelSpec::min_sum(2),        ModelSpec::min_max(2),       ModelSpec::p_norm(2, 2),
        ModelSpec::p_norm(2, 3),      ModelSpec::eps_fair(2, 0.3), ModelSpec::eps_fair(2, 0.7),
        ModelSpec::delta_fair(2, 0.2), ModelSpec::delta_fair(2, 0.6)};
    for (int trial = 0; trial < 4; ++trial) {
        Instance inst = test_support::random_euclidean(rng, 5 + trial % 2);
        for (const ModelSpec& spec : specs) {
            CAPTURE(trial);
            CAPTURE(variant_name(spec.variant));
            BruteForceResult oracle = brute_force(inst, spec);
            SolveResult res = solve(inst, spec, exact_params());
            REQUIRE(res.solution.has_value() == oracle.feasible);
            if (oracle.feasible) {
                CHECK(res.solution->objective == doctest::Approx(oracle.objective).epsilon(1e-6));
                check_feasible_mtsp(inst, *res.solution, spec.m);
            }
        }
    }
}

TEST_CASE("min-max sandwich") {
    std::mt19937 rng(137);
    for (int trial = 0; trial < 3; ++trial) {
        Instance inst = test_support::random_euclidean(rng, 6);
        int m = 2 + trial % 2;
        double minsum = solve(inst, ModelSpec::min_sum(m), exact_params()).solution->objective;
        double minmax = solve(inst, ModelSpec::min_max(m), exact_params()).solution->objective;
        CHECK(minmax >= minsum / m - 1e-6);
        CHECK(minmax <= minsum + 1e-6);
    }
}

TEST_CASE("eps-fair and delta-fair solutions echo their constraints") {
    std::mt19937 rng(139);
    for (int trial = 0; trial < 3; ++trial) {
        Instance inst = test_support::random_euclidean(rng, 6);
        for (double eps : {0.2, 0.5, 0.8}) {
            SolveResult res = solve(inst, ModelSpec::eps_fair(2, eps), exact_params());
            if (res.solution) CHECK(eps_fair_index(res.solution->lengths) >= eps - 1e-6);
        }
        for (double delta : {0.2, 0.5, 0.8}) {
            SolveResult res = solve(inst, ModelSpec::delta_fair(2, delta), exact_params());
            if (res.solution) CHECK(gini(res.solution->lengths) <= delta + 1e-6);
        }
    }
}

TEST_CASE("degenerate equality demands are reported infeasible, not looped") {
    // Generic metric data admits no perfectly equal tour lengths.
    std::mt19937 rng(149);
    Instance inst = test_support::random_euclidean(rng, 5);
    SolveResult eps1 = solve(inst, ModelSpec::eps_fair(2, 1.0), exact_params());
    SolveResult delta0 = solve(inst, ModelSpec::delta_fair(2, 0.0), exact_params());
    BruteForceResult oracle_eps = brute_force(inst, ModelSpec::eps_fair(2, 1.0));
    BruteForceResult oracle_delta = brute_force(inst, ModelSpec::delta_fair(2, 0.0));
    CHECK(eps1.solution.has_value() == oracle_eps.feasible);
    CHECK(delta0.solution.has_value() == oracle_delta.feasible);
}

TEST_CASE("monotonicity of the total over the fairness grids") {
    std::mt19937 rng(151);
    Instance inst = test_support::random_euclidean(rng, 6);
    double prev = -1;
    bool was_feasible = true;
    for (int k = 0; k <= 10; ++k) {
        SolveResult res = solve(inst, ModelSpec::eps_fair(2, k * 0.1), exact_params());
        if (res.solution) {
            CHECK(was_feasible);  // feasibility is a prefix in eps
            CHECK(res.solution->lengths.sum() >= prev - 1e-6);
            prev = res.solution->lengths.sum();
        } else {
            was_feasible = false;
        }
    }
    prev = std::numeric_limits<double>::infinity();
    bool seen_feasible = false;
    for (int k = 0; k <= 10; ++k) {
        SolveResult res = solve(inst, ModelSpec::delta_fair(2, k * 0.1), exact_params());
        if (res.solution) {
            seen_feasible = true;
            CHECK(res.solution->lengths.sum() <= prev + 1e-6);
            prev = res.solution->lengths.sum();
        } else {
            CHECK_FALSE(seen_feasible);  // feasibility is a suffix in delta
        }
    }
}

TEST_CASE("p-norm objective decreases toward min-max as p grows") {
    std::mt19937 rng(157);
    Instance inst = test_support::random_euclidean(rng, 5);
    double minmax = solve(inst, ModelSpec::min_max(2), exact_params()).solution->objective;
    double prev = std::numeric_limits<double>::infinity();
    for (int p : {2, 3, 5, 10}) {
        SolveResult res = solve(inst, ModelSpec::p_norm(2, p), exact_params());
        REQUIRE(res.solution.has_value());
        double norm_p = res.solution->objective;
        // |l|_p decreases in p and dominates the max entry.
        CHECK(norm_p <= prev + 1e-6);
        CHECK(norm_p >= minmax - 1e-6);
        prev = norm_p;
    }
}

TEST_CASE("deterministic repeated solves") {
    std::mt19937 rng(163);
    Instance inst = test_support::random_euclidean(rng, 6);
    SolveResult a = solve(inst, ModelSpec::eps_fair(2, 0.5), exact_params());
    SolveResult b = solve(inst, ModelSpec::eps_fair(2, 0.5), exact_params());
    REQUIRE(a.solution.has_value());
    REQUIRE(b.solution.has_value());
    CHECK(a.solution->objective == b.solution->objective);
    CHECK(a.solution->tours == b.solution->tours);
    CHECK(a.stats.nodes == b.stats.nodes);
    CHECK(a.stats.sec_cuts == b.stats.sec_cuts);
    CHECK(a.stats.oa_cuts == b.stats.oa_cuts);
}

TEST_CASE("time limit returns cleanly") {
    std::mt19937 rng(167);
    Instance inst = test_support::random_euclidean(rng, 8);
    SolveParams p;
    p.time_limit_seconds = 0.0;
    SolveResult res = solve(inst, ModelSpec::min_max(3), p);
    CHECK(res.stats.termination == Termination::TimeLimit);
}

TEST_CASE("child bounds dominate the parent bound") {
    // Indirectly: best_bound never exceeds the optimum and the reported gap
    // closes at optimality.
    std::mt19937 rng(173);
    Instance inst = test_support::random_euclidean(rng, 6);
    SolveResult res = solve(inst, ModelSpec::min_sum(2), exact_params());
    REQUIRE(res.solution.has_value());
    CHECK(res.best_bound <= res.solution->objective + 1e-6);
    CHECK(res.solution->gap <= 1e-6);
}
