#ifndef FAIRMTSP_TEST_SUPPORT_HPP
#define FAIRMTSP_TEST_SUPPORT_HPP

#include "fairmtsp/instance.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace test_support {

/// Random planar instance: n targets plus a depot, coordinates uniform on
/// [0, 100]^2, exact (unrounded) Euclidean costs. Vertex n is the depot.
inline fairmtsp::Instance random_euclidean(std::mt19937& rng, int n_targets) {
    std::uniform_real_distribution<double> u(0.0, 100.0);
    const int n = n_targets + 1;
    std::vector<Eigen::Vector2d> pts;
    pts.reserve(n);
    for (int i = 0; i < n; ++i) pts.emplace_back(u(rng), u(rng));
    Eigen::MatrixXd cost(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) cost(i, j) = (pts[i] - pts[j]).norm();
    fairmtsp::Instance inst = fairmtsp::make_instance(cost, n - 1, "random");
    inst.coords = pts;
    return inst;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline std::string data_path(const std::string& file) {
    return std::string(FAIRMTSP_DATA_DIR) + "/" + file;
}

}  // namespace test_support

#endif
