#include "fairmtsp/pareto.hpp"

#include "fairmtsp/metrics.hpp"

#include <cmath>
#include <future>
#include <stdexcept>

namespace fairmtsp {

namespace {

ModelSpec family_spec(SweepFamily family, int m, double param) {
    return family == SweepFamily::EpsFair ? ModelSpec::eps_fair(m, param)
                                          : ModelSpec::delta_fair(m, param);
}

ParetoPoint solve_point(const Instance& inst, int m, SweepFamily family, double param,
                        const SolveParams& params, double baseline_total) {
    ParetoPoint point;
    point.param = param;
    SolveResult res = solve(inst, family_spec(family, m, param), params);
    point.stats = res.stats;
    if (!res.solution) return point;
    point.feasible = true;
    point.total = res.solution->lengths.sum();
    point.fairness = family == SweepFamily::EpsFair ? eps_fair_index(res.solution->lengths)
                                                    : gini(res.solution->lengths);
    point.cof = cost_of_fairness(point.total, baseline_total);
    point.solution = std::move(res.solution);
    return point;
}

}  // namespace

std::vector<ParetoPoint> sweep(const Instance& inst, int m, SweepFamily family,
                               const std::vector<double>& grid, const SolveParams& params) {
    for (double g : grid)
        if (g < 0 || g > 1) throw std::invalid_argument("sweep: grid value outside [0, 1]");

    SolveResult baseline = solve(inst, ModelSpec::min_sum(m), params);
    if (!baseline.solution) throw std::runtime_error("sweep: min-sum baseline solve failed");
    const double baseline_total = baseline.solution->lengths.sum();

    std::vector<std::future<ParetoPoint>> futures;
    futures.reserve(grid.size());
    for (double g : grid)
        futures.push_back(std::async(std::launch::async, solve_point, std::cref(inst), m, family,
                                     g, std::cref(params), baseline_total));
    std::vector<ParetoPoint> points;
    points.reserve(grid.size());
    for (auto& f : futures) points.push_back(f.get());
    return points;
}

std::vector<double> default_grid() {
    std::vector<double> grid;
    for (int i = 0; i <= 20; ++i) grid.push_back(i * 0.05);
    return grid;
}

double feasibility_boundary(const Instance& inst, int m, SweepFamily family, double tol,
                            const SolveParams& params) {
    if (tol <= 0) throw std::invalid_argument("feasibility_boundary: tol must be positive");
    auto feasible = [&](double param) {
        return solve(inst, family_spec(family, m, param), params).solution.has_value();
    };
    // EpsFair is feasible on a prefix [0, eps_max], DeltaFair on a suffix
    // [delta_min, 1]; both reduce to one bisection after checking the
    // unconstrained end.
    const bool prefix = family == SweepFamily::EpsFair;
    if (!feasible(prefix ? 0.0 : 1.0))
        throw std::runtime_error("feasibility_boundary: unconstrained end infeasible");
    if (feasible(prefix ? 1.0 : 0.0)) return prefix ? 1.0 : 0.0;

    double lo = 0.0, hi = 1.0;  // prefix: lo feasible, hi not; suffix: reversed
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        bool ok = feasible(mid);
        if (prefix == ok)
            lo = mid;
        else
            hi = mid;
    }
    return prefix ? lo : hi;
}

std::vector<ParetoPoint> nondominated_filter(const std::vector<ParetoPoint>& points) {
    std::vector<ParetoPoint> kept;
    for (const auto& p : points) {
        if (!p.feasible) continue;
        bool dominated = false;
        for (const auto& q : points) {
            if (!q.feasible) continue;
            if (q.total <= p.total + 1e-12 && q.fairness >= p.fairness - 1e-12 &&
                (q.total < p.total - 1e-12 || q.fairness > p.fairness + 1e-12)) {
                dominated = true;
                break;
            }
        }
        if (dominated) continue;
        bool duplicate = false;
        for (const auto& q : kept)
            if (std::abs(q.total - p.total) <= 1e-12 && std::abs(q.fairness - p.fairness) <= 1e-12)
                duplicate = true;
        if (!duplicate) kept.push_back(p);
    }
    return kept;
}

}  // namespace fairmtsp
