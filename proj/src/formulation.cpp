#include "fairmtsp/formulation.hpp"

#include <cmath>
#include <map>
#include <set>

namespace fairmtsp {

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::MinSum: return "min-sum";
        case Variant::MinMax: return "min-max";
        case Variant::PNorm: return "p-norm";
        case Variant::EpsFair: return "eps-fair";
        case Variant::DeltaFair: return "delta-fair";
    }
    return "?";
}

void ModelSpec::validate() const {
    if (m < 2) throw std::invalid_argument("ModelSpec: m must be >= 2");
    if (variant == Variant::PNorm && p < 2)
        throw std::invalid_argument("ModelSpec: p-norm requires integer p >= 2");
    if (variant == Variant::EpsFair && (eps < 0 || eps > 1))
        throw std::invalid_argument("ModelSpec: eps outside [0, 1]");
    if (variant == Variant::DeltaFair && (delta < 0 || delta > 1))
        throw std::invalid_argument("ModelSpec: delta outside [0, 1]");
}

BuiltModel build_base(const Instance& inst, int m) {
    if (m < 2) throw std::invalid_argument("build_base: m must be >= 2");
    if (!inst.has_depot()) throw std::invalid_argument("build_base: instance has no depot");
    const int n = inst.num_vertices();

    BuiltModel out;
    VarMap& vm = out.vm;
    lp::LpModel& model = out.model;
    vm.m = m;
    vm.depot = inst.depot;
    vm.edge_index = Eigen::MatrixXi::Constant(n, n, -1);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            vm.edge_index(i, j) = vm.edge_index(j, i) = static_cast<int>(vm.edges.size());
            vm.edges.emplace_back(i, j);
        }
    const int ne = static_cast<int>(vm.edges.size());

    vm.x.assign(m, std::vector<int>(ne));
    vm.y.assign(m, std::vector<int>(n));
    vm.l.assign(m, -1);
    for (int v = 0; v < m; ++v) {
        for (int e = 0; e < ne; ++e)
            vm.x[v][e] = model.add_column(0.0, vm.is_depot_edge(e) ? 2.0 : 1.0, 0.0);
        for (int i = 0; i < n; ++i) {
            // Depot visit fixed to 1.
            double lo = i == inst.depot ? 1.0 : 0.0;
            vm.y[v][i] = model.add_column(lo, 1.0, 0.0);
        }
        vm.l[v] = model.add_column(0.0, lp::kInf, 1.0);  // min-sum objective by default
    }

    for (int v = 0; v < m; ++v) {
        // Tour-length definition: sum c_e x_e^v - l_v = 0.
        lp::Row len;
        for (int e = 0; e < ne; ++e) {
            auto [i, j] = vm.edges[e];
            if (inst.cost(i, j) != 0.0) len.coeffs.emplace_back(vm.x[v][e], inst.cost(i, j));
        }
        len.coeffs.emplace_back(vm.l[v], -1.0);
        len.sense = lp::Sense::Eq;
        len.rhs = 0;
        model.add_row(std::move(len));

        // Degree rows for targets only; the depot has no degree row, so idle
        // salesmen (all x = 0) stay feasible.
        for (int i = 0; i < n; ++i) {
            if (i == inst.depot) continue;
            lp::Row deg;
            for (int j = 0; j < n; ++j)
                if (j != i) deg.coeffs.emplace_back(vm.x[v][vm.edge_index(i, j)], 1.0);
            deg.coeffs.emplace_back(vm.y[v][i], -2.0);
            deg.sense = lp::Sense::Eq;
            deg.rhs = 0;
            model.add_row(std::move(deg));
        }
    }

    // Each target visited by exactly one salesman.
    for (int i = 0; i < n; ++i) {
        if (i == inst.depot) continue;
        lp::Row asg;
        for (int v = 0; v < m; ++v) asg.coeffs.emplace_back(vm.y[v][i], 1.0);
        asg.sense = lp::Sense::Eq;
        asg.rhs = 1;
        model.add_row(std::move(asg));
    }
    return out;
}

void add_ordering_rows(lp::LpModel& model, const VarMap& vm) {
    for (int v = 0; v + 1 < vm.m; ++v) {
        lp::Row r;
        r.coeffs.emplace_back(vm.l[v], 1.0);
        r.coeffs.emplace_back(vm.l[v + 1], -1.0);
        r.sense = lp::Sense::Ge;
        r.rhs = 0;
        model.add_row(std::move(r));
    }
}

void attach_variant(lp::LpModel& model, VarMap& vm, const ModelSpec& spec) {
    spec.validate();
    if (spec.m != vm.m) throw std::invalid_argument("attach_variant: salesman count mismatch");
    const int m = vm.m;

    switch (spec.variant) {
        case Variant::MinSum:
            break;
        case Variant::MinMax: {
            vm.z = model.add_column(0.0, lp::kInf, 0.0);
            for (int v = 0; v < m; ++v) {
                lp::Row r;
                r.coeffs.emplace_back(vm.z, 1.0);
                r.coeffs.emplace_back(vm.l[v], -1.0);
                r.sense = lp::Sense::Ge;
                r.rhs = 0;
                model.add_row(std::move(r));
            }
            for (int v = 0; v < m; ++v) model.set_objective(vm.l[v], 0.0);
            model.set_objective(vm.z, 1.0);
            {
                // max_v l_v >= mean(l): ties z to the total tour length, which
                // the relaxation otherwise only learns through branching.
                lp::Row mean;
                mean.coeffs.emplace_back(vm.z, static_cast<double>(m));
                for (int v = 0; v < m; ++v) mean.coeffs.emplace_back(vm.l[v], -1.0);
                mean.sense = lp::Sense::Ge;
                mean.rhs = 0;
                model.add_row(std::move(mean));
            }
            break;
        }
        case Variant::PNorm: {
            vm.z = model.add_column(0.0, lp::kInf, 0.0);
            vm.L.resize(m);
            lp::Row sum;
            sum.coeffs.emplace_back(vm.z, 1.0);
            for (int v = 0; v < m; ++v) {
                vm.L[v] = model.add_column(0.0, lp::kInf, 0.0);
                sum.coeffs.emplace_back(vm.L[v], -1.0);
            }
            sum.sense = lp::Sense::Eq;
            sum.rhs = 0;
            model.add_row(std::move(sum));
            // The m power-cone memberships (L_v, z, l_v) are enforced lazily.
            // Two families of valid rows seed the outer approximation: the
            // p-norm dominates every component (z >= l_v) and, by the power
            // mean inequality, the scaled total (z >= sum l / m^((p-1)/p)).
            for (int v = 0; v < m; ++v) {
                lp::Row dom;
                dom.coeffs.emplace_back(vm.z, 1.0);
                dom.coeffs.emplace_back(vm.l[v], -1.0);
                dom.sense = lp::Sense::Ge;
                dom.rhs = 0;
                model.add_row(std::move(dom));
            }
            {
                lp::Row mean;
                mean.coeffs.emplace_back(vm.z, std::pow(static_cast<double>(m),
                                                        (spec.p - 1.0) / spec.p));
                for (int v = 0; v < m; ++v) mean.coeffs.emplace_back(vm.l[v], -1.0);
                mean.sense = lp::Sense::Ge;
                mean.rhs = 0;
                model.add_row(std::move(mean));
            }
            for (int v = 0; v < m; ++v) model.set_objective(vm.l[v], 0.0);
            model.set_objective(vm.z, 1.0);
            break;
        }
        case Variant::EpsFair: {
            vm.z = model.add_column(0.0, lp::kInf, 0.0);
            const double f = 1.0 - spec.eps + spec.eps * std::sqrt(static_cast<double>(m));
            lp::Row r;
            r.coeffs.emplace_back(vm.z, f);
            for (int v = 0; v < m; ++v) r.coeffs.emplace_back(vm.l[v], -1.0);
            r.sense = lp::Sense::Eq;
            r.rhs = 0;
            model.add_row(std::move(r));
            // z >= |l|_2 is enforced lazily; objective stays sum of l. The
            // norm dominates each component and sum l / sqrt(m), so those
            // linear rows seed the outer approximation.
            for (int v = 0; v < m; ++v) {
                lp::Row dom;
                dom.coeffs.emplace_back(vm.z, 1.0);
                dom.coeffs.emplace_back(vm.l[v], -1.0);
                dom.sense = lp::Sense::Ge;
                dom.rhs = 0;
                model.add_row(std::move(dom));
            }
            {
                lp::Row mean;
                mean.coeffs.emplace_back(vm.z, std::sqrt(static_cast<double>(m)));
                for (int v = 0; v < m; ++v) mean.coeffs.emplace_back(vm.l[v], -1.0);
                mean.sense = lp::Sense::Ge;
                mean.rhs = 0;
                model.add_row(std::move(mean));
            }
            break;
        }
        case Variant::DeltaFair: {
            add_ordering_rows(model, vm);
            // With descending lengths, the Gini bound is a single linear row:
            // sum (m - 2i + 1) l_i <= delta (m-1) sum l_i.
            lp::Row r;
            for (int i = 1; i <= m; ++i) {
                double coeff = (m - 2 * i + 1) - spec.delta * (m - 1);
                if (coeff != 0.0) r.coeffs.emplace_back(vm.l[i - 1], coeff);
            }
            r.sense = lp::Sense::Le;
            r.rhs = 0;
            model.add_row(std::move(r));
            break;
        }
    }
}

Solution decode(const VarMap& vm, const Eigen::VectorXd& primal, const Instance& inst,
                double integrality_tol) {
    const int n = vm.num_vertices();
    Solution sol;
    sol.lengths.resize(vm.m);

    for (int v = 0; v < vm.m; ++v) {
        // Round the edge multiset and check integrality.
        std::map<std::pair<int, int>, int> mult;
        double length = 0;
        for (size_t e = 0; e < vm.edges.size(); ++e) {
            double val = primal[vm.x[v][e]];
            int r = static_cast<int>(std::lround(val));
            if (std::abs(val - r) > integrality_tol)
                throw DecodeError("decode: fractional edge variable");
            if (r > 0) {
                mult[vm.edges[e]] = r;
                auto [i, j] = vm.edges[e];
                length += r * inst.cost(i, j);
            }
        }
        for (int i = 0; i < n; ++i) {
            double val = primal[vm.y[v][i]];
            if (std::abs(val - std::lround(val)) > integrality_tol)
                throw DecodeError("decode: fractional visit variable");
        }

        if (mult.empty()) {
            sol.tours.push_back({vm.depot});
            sol.lengths[v] = 0;
            continue;
        }

        // Eulerian trace of a single closed walk through the depot.
        std::vector<std::multiset<int>> adj(n);
        int edge_uses = 0;
        for (const auto& [e, r] : mult)
            for (int k = 0; k < r; ++k) {
                adj[e.first].insert(e.second);
                adj[e.second].insert(e.first);
                ++edge_uses;
            }
        if (adj[vm.depot].empty())
            throw DecodeError("decode: salesman edges do not touch the depot");
        std::vector<int> tour{vm.depot};
        int cur = vm.depot;
        int used = 0;
        while (!adj[cur].empty()) {
            int nxt = *adj[cur].begin();
            adj[cur].erase(adj[cur].begin());
            adj[nxt].erase(adj[nxt].find(cur));
            tour.push_back(nxt);
            cur = nxt;
            ++used;
        }
        if (cur != vm.depot || used != edge_uses)
            throw DecodeError("decode: edge multiset is not a single depot-rooted cycle");
        sol.tours.push_back(std::move(tour));
        sol.lengths[v] = length;
    }
    return sol;
}

}  // namespace fairmtsp
