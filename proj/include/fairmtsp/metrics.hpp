#ifndef FAIRMTSP_METRICS_HPP
#define FAIRMTSP_METRICS_HPP

#include <Eigen/Dense>

#include <stdexcept>

namespace fairmtsp {

/// Raised when a fairness index is evaluated on an all-zero length vector.
struct UndefinedMetric : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Gini coefficient of a nonnegative length vector, in [0, 1].
/// 0 when all components are equal, 1 when exactly one is nonzero.
double gini(const Eigen::VectorXd& l);

/// Jain index (sum l)^2 / (m sum l^2), in [1/m, 1].
double jain(const Eigen::VectorXd& l);

/// The largest eps for which l is eps-fair: (|l|_1/|l|_2 - 1)/(sqrt(m) - 1).
double eps_fair_index(const Eigen::VectorXd& l);

/// Jain-index level equivalent to enforcing eps-fairness:
/// w(eps) = (1 - eps + eps sqrt(m))^2 / m.
double jain_from_eps(double eps, int m);

/// Upper bound on the squared coefficient of variation implied by
/// eps-fairness: h(eps) = (m/(m-1)) (m / (1 - eps + eps sqrt(m))^2 - 1).
double cv_bound(double eps, int m);

/// Relative increase of a fair solution's total over the min-sum optimum,
/// clamped below at zero.
double cost_of_fairness(double fair_total, double minsum_total);

}  // namespace fairmtsp

#endif
