#ifndef FAIRMTSP_INSTANCE_HPP
#define FAIRMTSP_INSTANCE_HPP

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace fairmtsp {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Metric { Euc2d, Geo, Explicit };

/// A symmetric routing instance over vertices {0, ..., n}. One vertex may be
/// designated as the depot; the rest are targets. Instances are immutable
/// after construction and safe to share across concurrent solves.
struct Instance {
    std::string name;
    /// Depot vertex id, or -1 while no depot has been designated
    /// (freshly parsed TSPLIB files treat every node as a target).
    int depot = -1;
    Metric metric = Metric::Explicit;
    /// Per-vertex 2D coordinates; absent for EXPLICIT matrices.
    std::optional<std::vector<Eigen::Vector2d>> coords;
    /// Symmetric nonnegative cost matrix with zero diagonal.
    Eigen::MatrixXd cost;

    int num_vertices() const { return static_cast<int>(cost.rows()); }
    int num_targets() const { return num_vertices() - (depot >= 0 ? 1 : 0); }
    bool has_depot() const { return depot >= 0; }

    /// All vertex ids except the depot.
    std::vector<int> targets() const;
};

/// Parse a TSPLIB-format file (EUC_2D, GEO or EXPLICIT). All parsed nodes are
/// targets; no depot is designated. Costs follow the TSPLIB canonical rules
/// (nearest-integer Euclidean, truncated great-circle with radius 6378.388,
/// or the explicit matrix symmetrized).
Instance parse_tsplib(const std::string& text);

/// Serialize back to TSPLIB text (coordinate sections for geometric metrics,
/// a full matrix for EXPLICIT).
std::string to_tsplib(const Instance& inst);

/// JSON instance format mirroring the Instance fields, for synthetic tests.
Instance parse_json_instance(const std::string& text);
std::string to_json_instance(const Instance& inst);

/// Append a depot at the arithmetic mean of the target coordinates and
/// recompute costs under the same metric. Requires coordinates.
Instance add_centroid_depot(const Instance& inst);

/// Wrap an explicit cost matrix; validates symmetry (1e-9), nonnegativity and
/// zero diagonal.
Instance make_instance(const Eigen::MatrixXd& cost, int depot,
                       const std::string& name = "explicit");

/// All triples (i, j, k) with cost(i,j) > cost(i,k) + cost(k,j) + 1e-9.
/// Empty result means the triangle inequality holds.
std::vector<std::tuple<int, int, int>> check_triangle_inequality(const Instance& inst);

}  // namespace fairmtsp

#endif
