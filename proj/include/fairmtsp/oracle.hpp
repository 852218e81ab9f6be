#ifndef FAIRMTSP_ORACLE_HPP
#define FAIRMTSP_ORACLE_HPP

#include "fairmtsp/formulation.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace fairmtsp {

/// Exact closed tour from the depot through the given targets by bitmask
/// dynamic programming. Empty subset has length 0; a singleton is an
/// out-and-back. Guard: |subset| <= 15.
double held_karp(const Instance& inst, const std::vector<int>& subset,
                 std::vector<int>* tour = nullptr);

struct BruteForceResult {
    bool feasible = false;
    double objective = 0;
    Eigen::VectorXd lengths;
    std::vector<int> assignment;          ///< target position -> salesman
    std::vector<std::vector<int>> tours;  ///< per-salesman optimal tours
};

/// Ground truth for small instances: enumerate all m^n target-to-salesman
/// assignments, solve each part by Held-Karp, filter by the variant's
/// constraints and minimize its objective. Guard: n <= 9, m <= 3.
/// `constraint_tol` mirrors the solver's conic acceptance tolerance.
BruteForceResult brute_force(const Instance& inst, const ModelSpec& spec,
                             double constraint_tol = 1e-6);

enum class FairnessKind { EpsFI, Gini };

struct OraclePoint {
    double total = 0;
    double fairness = 0;
    Eigen::VectorXd lengths;
};

/// Nondominated (total down, epsFI up) or (total down, gini down) set over
/// all enumerated assignments. Same size guard as brute_force.
std::vector<OraclePoint> brute_force_pareto(const Instance& inst, int m, FairnessKind kind);

}  // namespace fairmtsp

#endif
