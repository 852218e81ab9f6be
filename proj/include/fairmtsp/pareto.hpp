#ifndef FAIRMTSP_PARETO_HPP
#define FAIRMTSP_PARETO_HPP

#include "fairmtsp/bnc.hpp"

#include <vector>

namespace fairmtsp {

/// One swept scalarization: the parameter value, the solution's total length
/// and fairness index, and its cost of fairness against the min-sum baseline.
struct ParetoPoint {
    double param = 0;
    bool feasible = false;
    double total = 0;
    double fairness = 0;  ///< epsFI for the eps family, gini for the delta family
    double cof = 0;
    SolveStats stats;
    std::optional<Solution> solution;
};

enum class SweepFamily { EpsFair, DeltaFair };

/// Solve the scalarized problem at each grid value. The min-sum baseline is
/// solved once and reused for every COF. Grid points whose scalarization is
/// infeasible are recorded with feasible = false. Solves run concurrently;
/// the output is ordered by grid position.
std::vector<ParetoPoint> sweep(const Instance& inst, int m, SweepFamily family,
                               const std::vector<double>& grid, const SolveParams& params = {});

/// Default sweep grid: 0, 0.05, ..., 1.
std::vector<double> default_grid();

/// Largest feasible eps (EpsFair) or smallest feasible delta (DeltaFair),
/// located by bisection on [0, 1] to within tol. Throws std::runtime_error if
/// even the unconstrained end (eps = 0 resp. delta = 1) is infeasible.
double feasibility_boundary(const Instance& inst, int m, SweepFamily family, double tol,
                            const SolveParams& params = {});

/// Drop points dominated in (total down, fairness up); infeasible points are
/// dropped too. Stable order by grid position, exact duplicates collapsed.
std::vector<ParetoPoint> nondominated_filter(const std::vector<ParetoPoint>& points);

}  // namespace fairmtsp

#endif
