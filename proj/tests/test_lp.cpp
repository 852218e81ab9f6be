#include "fairmtsp/lp.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace fairmtsp::lp;

namespace {

// Exhaustive vertex enumeration for tiny LPs: every basic point is the
// solution of n active constraints chosen among rows and bounds.
struct DenseLp {
    Eigen::MatrixXd a;  // rows x cols
    std::vector<Sense> sense;
    Eigen::VectorXd rhs;
    Eigen::VectorXd lo, up, c;
};

bool feasible(const DenseLp& lp, const Eigen::VectorXd& x, double tol = 1e-7) {
    for (int j = 0; j < x.size(); ++j)
        if (x[j] < lp.lo[j] - tol || x[j] > lp.up[j] + tol) return false;
    for (int i = 0; i < lp.a.rows(); ++i) {
        double v = lp.a.row(i).dot(x);
        if (lp.sense[i] == Sense::Le && v > lp.rhs[i] + tol) return false;
        if (lp.sense[i] == Sense::Ge && v < lp.rhs[i] - tol) return false;
        if (lp.sense[i] == Sense::Eq && std::abs(v - lp.rhs[i]) > tol) return false;
    }
    return true;
}

// Minimum over all vertices of the polytope (assumes bounded feasible region).
double enumerate_optimum(const DenseLp& lp, bool* found) {
    const int n = static_cast<int>(lp.c.size());
    const int rows = static_cast<int>(lp.a.rows());
    // Candidate hyperplanes: each row at equality, each bound.
    std::vector<Eigen::VectorXd> normals;
    std::vector<double> offsets;
    for (int i = 0; i < rows; ++i) {
        normals.push_back(lp.a.row(i).transpose());
        offsets.push_back(lp.rhs[i]);
    }
    for (int j = 0; j < n; ++j) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
        e[j] = 1;
        if (std::isfinite(lp.lo[j])) {
            normals.push_back(e);
            offsets.push_back(lp.lo[j]);
        }
        if (std::isfinite(lp.up[j])) {
            normals.push_back(e);
            offsets.push_back(lp.up[j]);
        }
    }
    const int total = static_cast<int>(normals.size());
    double best = std::numeric_limits<double>::infinity();
    *found = false;
    // Enumerate all n-subsets of hyperplanes.
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    while (true) {
        Eigen::MatrixXd m(n, n);
        Eigen::VectorXd b(n);
        for (int i = 0; i < n; ++i) {
            m.row(i) = normals[idx[i]].transpose();
            b[i] = offsets[idx[i]];
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
        if (lu.isInvertible()) {
            Eigen::VectorXd x = lu.solve(b);
            if (feasible(lp, x)) {
                *found = true;
                best = std::min(best, lp.c.dot(x));
            }
        }
        int pos = n - 1;
        while (pos >= 0 && idx[pos] == total - n + pos) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (int i = pos + 1; i < n; ++i) idx[i] = idx[i - 1] + 1;
    }
    return best;
}

LpModel to_model(const DenseLp& lp) {
    LpModel model;
    for (int j = 0; j < lp.c.size(); ++j) model.add_column(lp.lo[j], lp.up[j], lp.c[j]);
    for (int i = 0; i < lp.a.rows(); ++i) {
        Row row;
        for (int j = 0; j < lp.c.size(); ++j)
            if (lp.a(i, j) != 0.0) row.coeffs.emplace_back(j, lp.a(i, j));
        row.sense = lp.sense[i];
        row.rhs = lp.rhs[i];
        model.add_row(row);
    }
    return model;
}

}  // namespace

TEST_CASE("simple bounded minimum") {
    LpModel model;
    int x = model.add_column(0, 10, 1.0);
    model.add_row({{{x, 1.0}}, Sense::Ge, 3.0});
    LpSolution sol = solve(model);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.x[x] == doctest::Approx(3.0));
    CHECK(sol.objective == doctest::Approx(3.0));
}

TEST_CASE("contradictory row is infeasible") {
    LpModel model;
    int x = model.add_column(0, kInf, 0.0);
    model.add_row({{{x, 1.0}}, Sense::Le, -1.0});
    CHECK(solve(model).status == LpStatus::Infeasible);
}

TEST_CASE("unbounded ray is detected") {
    LpModel model;
    model.add_column(0, kInf, -1.0);
    CHECK(solve(model).status == LpStatus::Unbounded);
}

TEST_CASE("re-solve after adding a row respects it") {
    LpModel model;
    int x1 = model.add_column(0, kInf, 1.0);
    int x2 = model.add_column(0, kInf, 1.0);
    LpSolution first = solve(model);
    REQUIRE(first.status == LpStatus::Optimal);
    CHECK(first.objective == doctest::Approx(0.0));

    model.add_row({{{x1, 1.0}, {x2, 1.0}}, Sense::Ge, 2.0});
    LpSolution second = solve(model);
    REQUIRE(second.status == LpStatus::Optimal);
    CHECK(second.objective == doctest::Approx(2.0));
    CHECK(second.x[x1] + second.x[x2] == doctest::Approx(2.0));

    // A duplicate of an existing row changes nothing.
    model.add_row({{{x1, 1.0}, {x2, 1.0}}, Sense::Ge, 2.0});
    LpSolution third = solve(model);
    REQUIRE(third.status == LpStatus::Optimal);
    CHECK(third.objective == doctest::Approx(2.0));
}

TEST_CASE("set_bounds fixes a column") {
    LpModel model;
    int x = model.add_column(0, 5, -1.0);
    model.set_bounds(x, 1, 1);
    LpSolution sol = solve(model);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.x[x] == doctest::Approx(1.0));
}

TEST_CASE("unknown column is rejected") {
    LpModel model;
    model.add_column(0, 1, 0.0);
    CHECK_THROWS(model.add_row({{{5, 1.0}}, Sense::Le, 0.0}));
    CHECK_THROWS(model.set_bounds(3, 0, 1));
    CHECK_THROWS(model.add_column(2, 1, 0.0));
}

TEST_CASE("random small LPs match vertex enumeration") {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> nsize(2, 5);
    std::uniform_int_distribution<int> rsize(1, 5);
    std::uniform_real_distribution<double> coef(-3.0, 3.0);
    std::uniform_real_distribution<double> rhsd(-2.0, 6.0);
    std::uniform_int_distribution<int> sdist(0, 2);

    int solved = 0;
    for (int trial = 0; trial < 300; ++trial) {
        int n = nsize(rng);
        int r = rsize(rng);
        DenseLp lp;
        lp.a.resize(r, n);
        lp.rhs.resize(r);
        lp.sense.resize(r);
        lp.lo = Eigen::VectorXd::Zero(n);
        lp.up = Eigen::VectorXd::Constant(n, 4.0);
        lp.c.resize(n);
        for (int j = 0; j < n; ++j) lp.c[j] = coef(rng);
        for (int i = 0; i < r; ++i) {
            for (int j = 0; j < n; ++j) lp.a(i, j) = coef(rng);
            lp.rhs[i] = rhsd(rng);
            int s = sdist(rng);
            lp.sense[i] = s == 0 ? Sense::Le : (s == 1 ? Sense::Ge : Sense::Eq);
        }

        bool found = false;
        double expected = enumerate_optimum(lp, &found);

        LpSolution sol = solve(to_model(lp));
        if (!found) {
            CHECK(sol.status == LpStatus::Infeasible);
        } else {
            REQUIRE(sol.status == LpStatus::Optimal);
            CHECK(sol.objective == doctest::Approx(expected).epsilon(1e-6));
            CHECK(feasible(lp, sol.x, 1e-5));
            ++solved;
        }
    }
    CHECK(solved > 50);  // the generator must exercise the feasible path
}

TEST_CASE("adding rows never decreases the optimum") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        LpModel model;
        int n = 4;
        for (int j = 0; j < n; ++j) model.add_column(0, 3, coef(rng));
        Row base;
        for (int j = 0; j < n; ++j) base.coeffs.emplace_back(j, 1.0);
        base.sense = Sense::Ge;
        base.rhs = 1.0;
        model.add_row(base);

        LpSolution before = solve(model);
        REQUIRE(before.status == LpStatus::Optimal);

        Row extra;
        for (int j = 0; j < n; ++j) extra.coeffs.emplace_back(j, std::abs(coef(rng)));
        extra.sense = Sense::Ge;
        extra.rhs = 0.5;
        model.add_row(extra);
        LpSolution after = solve(model);
        if (after.status == LpStatus::Optimal) CHECK(after.objective >= before.objective - 1e-7);
    }
}
