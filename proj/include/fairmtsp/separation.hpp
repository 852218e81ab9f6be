#ifndef FAIRMTSP_SEPARATION_HPP
#define FAIRMTSP_SEPARATION_HPP

#include "fairmtsp/formulation.hpp"

#include <Eigen/Dense>

#include <vector>

namespace fairmtsp {

/// One violated subtour-elimination row: sum_{e in delta(S)} x_e^v >= 2 y_i^v
/// for the anchor target i in S (depot never in S).
struct SecCut {
    int salesman = -1;
    std::vector<int> subset;
    int anchor = -1;
    double violation = 0;
};

/// Per-salesman subgraph of positive-valued relaxation variables.
struct SupportGraph {
    int salesman = -1;
    std::vector<int> vertices;                          ///< ids with y > tol (depot included)
    std::vector<std::tuple<int, int, double>> edges;    ///< (i, j, capacity x_e)
};

SupportGraph build_support_graph(const Eigen::VectorXd& primal, const VarMap& vm,
                                 int salesman, double tol = 1e-7);

/// Component-based separation for integral points: every support component
/// without the depot yields one cut anchored at its maximum-y target.
/// Empty result iff the point is SEC-feasible.
std::vector<SecCut> separate_integer(const Eigen::VectorXd& primal, const VarMap& vm);

/// Fractional separation: components as above plus min-cut separation inside
/// the depot component (Stoer-Wagner first, per-sink max-flow as the
/// exactness backstop). At most one depot-component cut per salesman.
std::vector<SecCut> separate_fractional(const Eigen::VectorXd& primal, const VarMap& vm);

/// Translate a cut into its LP row (coefficients over the full edge set).
lp::Row sec_row(const SecCut& cut, const VarMap& vm);

/// Deterministic Stoer-Wagner global min cut of a symmetric nonnegative
/// capacity matrix (n >= 2). Returns the cut value; `side` receives one shore.
double stoer_wagner_min_cut(const Eigen::MatrixXd& capacity, std::vector<int>* side = nullptr);

/// Undirected max-flow min-cut between s and t (Edmonds-Karp on the doubled
/// arc matrix). `source_side` receives the vertices reachable from s in the
/// residual graph.
double max_flow_min_cut(const Eigen::MatrixXd& capacity, int s, int t,
                        std::vector<int>* source_side = nullptr);

}  // namespace fairmtsp

#endif
