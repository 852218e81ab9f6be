#ifndef FAIRMTSP_FORMULATION_HPP
#define FAIRMTSP_FORMULATION_HPP

#include "fairmtsp/instance.hpp"
#include "fairmtsp/lp.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace fairmtsp {

enum class Variant { MinSum, MinMax, PNorm, EpsFair, DeltaFair };

std::string variant_name(Variant v);

/// Which problem to solve: the variant, its parameter and the salesman count.
struct ModelSpec {
    Variant variant = Variant::MinSum;
    int m = 2;
    int p = 2;         ///< PNorm only, integer >= 2 (p=1 is MinSum, p=inf is MinMax)
    double eps = 0;    ///< EpsFair only, in [0, 1]
    double delta = 1;  ///< DeltaFair only, in [0, 1]

    void validate() const;

    static ModelSpec min_sum(int m) { return {Variant::MinSum, m}; }
    static ModelSpec min_max(int m) { return {Variant::MinMax, m}; }
    static ModelSpec p_norm(int m, int p) { return {Variant::PNorm, m, p}; }
    static ModelSpec eps_fair(int m, double eps) { return {Variant::EpsFair, m, 2, eps}; }
    static ModelSpec delta_fair(int m, double delta) { return {Variant::DeltaFair, m, 2, 0, delta}; }
};

/// Column layout of the relaxation: edge-use variables x[v][e] (bounds [0,2]
/// on depot edges, [0,1] otherwise), visit indicators y[v][i], tour lengths
/// l[v], plus the optional auxiliary z and disaggregation columns L[v].
struct VarMap {
    int m = 0;
    int depot = -1;
    std::vector<std::pair<int, int>> edges;  ///< unordered pairs (i < j) over V
    Eigen::MatrixXi edge_index;              ///< vertex pair -> index into edges
    std::vector<std::vector<int>> x;         ///< [salesman][edge] -> column
    std::vector<std::vector<int>> y;         ///< [salesman][vertex] -> column
    std::vector<int> l;                      ///< [salesman] -> column
    int z = -1;                              ///< MinMax / PNorm / EpsFair
    std::vector<int> L;                      ///< PNorm only

    int num_vertices() const { return static_cast<int>(edge_index.rows()); }
    bool is_depot_edge(int e) const {
        return edges[e].first == depot || edges[e].second == depot;
    }
};

/// A decoded feasible point: one depot-rooted closed tour per salesman
/// (possibly the bare depot for an idle salesman).
struct Solution {
    std::vector<std::vector<int>> tours;  ///< vertex sequences [d, ..., d] or [d]
    Eigen::VectorXd lengths;
    double objective = 0;
    double bound = 0;
    double gap = 0;
};

struct DecodeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BuiltModel {
    lp::LpModel model;
    VarMap vm;
};

/// Length-definition, degree, assignment and depot-visit rows plus variable
/// bounds; the min-sum objective. Subtour rows are added lazily by separation.
BuiltModel build_base(const Instance& inst, int m);

/// Add the variant-specific columns and rows and set the objective. The conic
/// parts (p-norm power cones, the eps-fair SOC) are enforced lazily by cuts.
void attach_variant(lp::LpModel& model, VarMap& vm, const ModelSpec& spec);

/// Lexicographic l_1 >= l_2 >= ... >= l_m rows. Mandatory for DeltaFair
/// (attach_variant adds them); optional symmetry breaking otherwise.
void add_ordering_rows(lp::LpModel& model, const VarMap& vm);

/// Reconstruct per-salesman tours from an integral, SEC-feasible point.
/// The caller fills objective/bound/gap.
Solution decode(const VarMap& vm, const Eigen::VectorXd& primal,
                const Instance& inst, double integrality_tol = 1e-6);

}  // namespace fairmtsp

#endif
