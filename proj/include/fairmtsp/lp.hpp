#ifndef FAIRMTSP_LP_HPP
#define FAIRMTSP_LP_HPP

#include <Eigen/Dense>

#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fairmtsp::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Tolerances shared by the solver and its callers.
inline constexpr double kFeasTol = 1e-7;
inline constexpr double kDualTol = 1e-9;

struct NumericalFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Sense { Le, Eq, Ge };

struct Row {
    std::vector<std::pair<int, double>> coeffs;
    Sense sense = Sense::Le;
    double rhs = 0;
};

/// Minimization LP over bounded continuous columns with sparse rows.
/// Rows and bound changes may be applied incrementally; re-solving after an
/// edit is always correct (no warm-start contract).
class LpModel {
public:
    int add_column(double lower, double upper, double objective);
    int add_row(Row row);
    void add_rows(const std::vector<Row>& rows);
    void set_bounds(int column, double lower, double upper);
    void set_objective(int column, double coeff);

    int num_cols() const { return static_cast<int>(lower_.size()); }
    int num_rows() const { return static_cast<int>(rows_.size()); }
    double lower(int c) const { return lower_[c]; }
    double upper(int c) const { return upper_[c]; }
    double objective(int c) const { return obj_[c]; }
    const Row& row(int r) const { return rows_[r]; }

private:
    std::vector<double> lower_, upper_, obj_;
    std::vector<Row> rows_;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    Eigen::VectorXd x;  ///< primal values per structural column (Optimal only)
    double objective = 0;
};

/// Two-phase primal simplex on bounded variables, dense basis inverse,
/// Dantzig pricing with a Bland fallback after a degenerate-pivot streak.
/// Deterministic: identical models yield identical solutions.
LpSolution solve(const LpModel& model);

/// Basis snapshot from a previous optimal solve of the same model lineage.
/// Valid to reuse after appending rows or changing bounds as long as columns
/// and objective coefficients are unchanged; the previous basis then stays
/// dual feasible and the re-solve runs dual simplex from it instead of the
/// full two-phase method. Purely an accelerator: on any doubt the solver
/// falls back to a cold solve, so results are identical either way.
struct WarmStart {
    bool valid = false;
    std::vector<int> basic;           ///< per row: structural column or slack id
    std::vector<unsigned char> state; ///< per structural+slack column: nonbasic position
    Eigen::MatrixXd binv;             ///< basis inverse of the snapshot (row-equilibrated)
    long stale_pivots = 0;            ///< eta updates since the last clean factorization
};

/// Like solve(model); additionally reads and updates the warm-start snapshot.
LpSolution solve(const LpModel& model, WarmStart* warm);

}  // namespace fairmtsp::lp

#endif
