#ifndef FAIRMTSP_OA_HPP
#define FAIRMTSP_OA_HPP

#include "fairmtsp/formulation.hpp"
#include "fairmtsp/lp.hpp"

#include <Eigen/Dense>

#include <vector>

namespace fairmtsp {

/// A candidate point for the three-dimensional power cone
/// {(L, z, l) >= 0 : L^(1/p) z^(1-1/p) >= l}.
struct PowerConePoint {
    double L = 0;
    double z = 0;
    double l = 0;
    int p = 2;

    double surface_value() const;  ///< L^(1/p) z^(1-1/p)
    bool in_cone(double tol = 0) const { return l <= surface_value() + tol; }
};

/// Tangent cut with sense >= : sum coeffs * columns >= rhs. Valid for every
/// point of the cone it approximates.
struct LinearCut {
    std::vector<std::pair<int, double>> coeffs;
    double rhs = 0;

    lp::Row row() const { return {coeffs, lp::Sense::Ge, rhs}; }
    double evaluate(const Eigen::VectorXd& primal) const;
};

struct DegenerateProjection : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Project a violated point onto the cone surface holding (L, z) fixed:
/// the bound coordinate drops to L^(1/p) z^(1-1/p).
PowerConePoint project_power(const PowerConePoint& point);

/// First-order cut at a surface point (L0, z0, l0), over the three columns:
/// (1/p) l0 z0 L + (1 - 1/p) l0 L0 z >= L0 z0 l.
LinearCut power_cut(const PowerConePoint& surface, int col_L, int col_z, int col_l);

/// Tangent to z >= |l|_2 at l0 (projection holds l fixed, raises z):
/// z >= sum (l0_v / |l0|_2) l_v. Throws on a near-zero l0.
LinearCut soc_cut(const Eigen::VectorXd& l0, const std::vector<int>& l_cols, int z_col);

/// Max violation of the lazily-modeled cones at the given coordinates;
/// <= 1e-6 means conic-feasible. Zero for variants with no cones.
double conic_violation(const ModelSpec& spec, const Eigen::VectorXd& lengths, double z,
                       const Eigen::VectorXd& L);

}  // namespace fairmtsp

#endif
