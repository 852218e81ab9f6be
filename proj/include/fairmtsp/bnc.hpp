#ifndef FAIRMTSP_BNC_HPP
#define FAIRMTSP_BNC_HPP

#include "fairmtsp/formulation.hpp"
#include "fairmtsp/oa.hpp"
#include "fairmtsp/separation.hpp"

#include <optional>

namespace fairmtsp {

struct SolveParams {
    double time_limit_seconds = 3600;
    double rel_gap = 1e-6;
    double abs_gap = 1e-6;
    double integrality_tol = 1e-6;
    int max_sec_cuts_per_round = 0;  ///< 0 means m
    int max_oa_cuts_per_round = 0;   ///< 0 means m
    int max_cut_rounds_per_node = 50;
    bool symmetry_breaking = true;
};

enum class Termination { Optimal, TimeLimit, Infeasible };

struct SolveStats {
    long nodes = 0;
    long sec_cuts = 0;
    long oa_cuts = 0;
    long lp_solves = 0;
    double seconds = 0;
    Termination termination = Termination::Infeasible;
};

/// Optional record of every cut emitted during a solve, for validity audits.
struct CutLog {
    struct PowerCutRecord {
        PowerConePoint surface;  ///< tangent point (with p)
        LinearCut cut;
        int salesman;
    };
    struct SocCutRecord {
        Eigen::VectorXd l0;
        LinearCut cut;
    };
    std::vector<PowerCutRecord> power_cuts;
    std::vector<SocCutRecord> soc_cuts;
    std::vector<SecCut> sec_cuts;
};

struct SolveResult {
    std::optional<Solution> solution;  ///< empty on Infeasible or bare TimeLimit
    SolveStats stats;
    double best_bound = 0;
};

/// Exact branch-and-cut over the continuous relaxation: best-bound search,
/// lazy SEC separation at fractional and integral points, outer-approximation
/// cuts for the conic variants, most-fractional branching. Deterministic.
SolveResult solve(const Instance& inst, const ModelSpec& spec, const SolveParams& params = {},
                  CutLog* cut_log = nullptr);

/// True objective of a decoded length vector under the given spec.
double variant_objective(const ModelSpec& spec, const Eigen::VectorXd& lengths);

}  // namespace fairmtsp

#endif
