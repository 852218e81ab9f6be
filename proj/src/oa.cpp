#include "fairmtsp/oa.hpp"

#include <cmath>

namespace fairmtsp {

double PowerConePoint::surface_value() const {
    const double a = 1.0 / p;
    return std::pow(L, a) * std::pow(z, 1.0 - a);
}

double LinearCut::evaluate(const Eigen::VectorXd& primal) const {
    double lhs = 0;
    for (const auto& [c, v] : coeffs) lhs += v * primal[c];
    return lhs - rhs;
}

PowerConePoint project_power(const PowerConePoint& point) {
    if (point.p < 2) throw std::invalid_argument("project_power: p must be >= 2");
    if (point.L < 1e-9 && point.z < 1e-9)
        throw DegenerateProjection("project_power: point too close to the cone apex");
    PowerConePoint surface = point;
    surface.l = point.surface_value();
    return surface;
}

LinearCut power_cut(const PowerConePoint& s, int col_L, int col_z, int col_l) {
    if (s.L <= 0 || s.z <= 0)
        throw DegenerateProjection("power_cut: degenerate surface point");
    const double a = 1.0 / s.p;
    LinearCut cut;
    cut.coeffs.emplace_back(col_L, a * s.l * s.z);
    cut.coeffs.emplace_back(col_z, (1.0 - a) * s.l * s.L);
    cut.coeffs.emplace_back(col_l, -s.L * s.z);
    cut.rhs = 0;
    return cut;
}

LinearCut soc_cut(const Eigen::VectorXd& l0, const std::vector<int>& l_cols, int z_col) {
    const double norm = l0.norm();
    if (norm <= 1e-9) throw DegenerateProjection("soc_cut: near-zero length vector");
    LinearCut cut;
    cut.coeffs.emplace_back(z_col, 1.0);
    for (int v = 0; v < l0.size(); ++v) {
        double g = l0[v] / norm;
        if (g != 0.0) cut.coeffs.emplace_back(l_cols[v], -g);
    }
    cut.rhs = 0;
    return cut;
}

double conic_violation(const ModelSpec& spec, const Eigen::VectorXd& lengths, double z,
                       const Eigen::VectorXd& L) {
    switch (spec.variant) {
        case Variant::PNorm: {
            double worst = 0;
            for (int v = 0; v < lengths.size(); ++v) {
                PowerConePoint pt{L[v], z, lengths[v], spec.p};
                worst = std::max(worst, lengths[v] - pt.surface_value());
            }
            return worst;
        }
        case Variant::EpsFair:
            return std::max(0.0, lengths.norm() - z);
        default:
            return 0.0;
    }
}

}  // namespace fairmtsp
