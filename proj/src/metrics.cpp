#include "fairmtsp/metrics.hpp"

#include <cmath>

namespace fairmtsp {

namespace {

void require_multi(const Eigen::VectorXd& l) {
    if (l.size() < 2) throw std::invalid_argument("fairness indices need m >= 2 components");
    if (l.minCoeff() < 0) throw std::invalid_argument("length vector has a negative component");
}

}  // namespace

double gini(const Eigen::VectorXd& l) {
    require_multi(l);
    const double total = l.sum();
    if (total <= 0) throw UndefinedMetric("gini: all-zero length vector");
    const int m = static_cast<int>(l.size());
    double diff = 0;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) diff += std::abs(l[i] - l[j]);
    return diff / ((m - 1) * total);
}

double jain(const Eigen::VectorXd& l) {
    require_multi(l);
    const double total = l.sum();
    if (total <= 0) throw UndefinedMetric("jain: all-zero length vector");
    return total * total / (static_cast<double>(l.size()) * l.squaredNorm());
}

double eps_fair_index(const Eigen::VectorXd& l) {
    require_multi(l);
    const double norm2 = l.norm();
    if (norm2 <= 0) throw UndefinedMetric("eps_fair_index: all-zero length vector");
    const double m = static_cast<double>(l.size());
    return (l.lpNorm<1>() / norm2 - 1.0) / (std::sqrt(m) - 1.0);
}

double jain_from_eps(double eps, int m) {
    if (m < 2) throw std::invalid_argument("jain_from_eps: m must be >= 2");
    if (eps < 0 || eps > 1) throw std::invalid_argument("jain_from_eps: eps outside [0, 1]");
    const double f = 1.0 - eps + eps * std::sqrt(static_cast<double>(m));
    return f * f / m;
}

double cv_bound(double eps, int m) {
    if (m < 2) throw std::invalid_argument("cv_bound: m must be >= 2");
    if (eps < 0 || eps > 1) throw std::invalid_argument("cv_bound: eps outside [0, 1]");
    const double f = 1.0 - eps + eps * std::sqrt(static_cast<double>(m));
    return (static_cast<double>(m) / (m - 1)) * (static_cast<double>(m) / (f * f) - 1.0);
}

double cost_of_fairness(double fair_total, double minsum_total) {
    if (minsum_total <= 0) throw std::invalid_argument("cost_of_fairness: nonpositive baseline");
    if (fair_total < minsum_total - 1e-6)
        throw std::invalid_argument("cost_of_fairness: fair total below min-sum baseline");
    return std::max(0.0, (fair_total - minsum_total) / minsum_total);
}

}  // namespace fairmtsp
