#include "fairmtsp/separation.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace fairmtsp {

namespace {

constexpr double kSupportTol = 1e-7;
constexpr double kViolationTol = 1e-6;

std::vector<std::vector<int>> connected_components(const SupportGraph& g, int n) {
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> adj(n);
    for (const auto& [i, j, c] : g.edges) {
        adj[i].push_back(j);
        adj[j].push_back(i);
    }
    std::vector<std::vector<int>> comps;
    for (int s : g.vertices) {
        if (comp[s] >= 0) continue;
        int id = static_cast<int>(comps.size());
        comps.emplace_back();
        std::deque<int> queue{s};
        comp[s] = id;
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            comps[id].push_back(u);
            for (int w : adj[u])
                if (comp[w] < 0) {
                    comp[w] = id;
                    queue.push_back(w);
                }
        }
    }
    return comps;
}

int argmax_y(const std::vector<int>& verts, const Eigen::VectorXd& primal, const VarMap& vm,
             int salesman) {
    int best = -1;
    double best_y = -1;
    for (int i : verts) {
        if (i == vm.depot) continue;
        double y = primal[vm.y[salesman][i]];
        if (y > best_y) {
            best_y = y;
            best = i;
        }
    }
    return best;
}

double cut_value_full(const std::vector<int>& subset, const Eigen::VectorXd& primal,
                      const VarMap& vm, int salesman) {
    std::vector<char> in(vm.num_vertices(), 0);
    for (int i : subset) in[i] = 1;
    double total = 0;
    for (size_t e = 0; e < vm.edges.size(); ++e) {
        auto [i, j] = vm.edges[e];
        if (in[i] != in[j]) total += primal[vm.x[salesman][e]];
    }
    return total;
}

void add_component_cuts(const Eigen::VectorXd& primal, const VarMap& vm, int salesman,
                        const std::vector<std::vector<int>>& comps, std::vector<SecCut>* out) {
    for (const auto& comp : comps) {
        if (std::find(comp.begin(), comp.end(), vm.depot) != comp.end()) continue;
        int anchor = argmax_y(comp, primal, vm, salesman);
        if (anchor < 0) continue;
        SecCut cut;
        cut.salesman = salesman;
        cut.subset = comp;
        std::sort(cut.subset.begin(), cut.subset.end());
        cut.anchor = anchor;
        cut.violation = 2.0 * primal[vm.y[salesman][anchor]] -
                        cut_value_full(cut.subset, primal, vm, salesman);
        if (cut.violation > kViolationTol) out->push_back(std::move(cut));
    }
}

// Min-cut separation inside the depot component: Stoer-Wagner for the most
// violated single cut, then per-sink max-flows so that no violated cut of the
// anchored family is missed.
void add_depot_component_cut(const Eigen::VectorXd& primal, const VarMap& vm, int salesman,
                             const std::vector<int>& comp, std::vector<SecCut>* out) {
    const int k = static_cast<int>(comp.size());
    if (k < 2) return;
    std::vector<int> local_of(vm.num_vertices(), -1);
    for (int i = 0; i < k; ++i) local_of[comp[i]] = i;
    Eigen::MatrixXd cap = Eigen::MatrixXd::Zero(k, k);
    for (size_t e = 0; e < vm.edges.size(); ++e) {
        auto [i, j] = vm.edges[e];
        if (local_of[i] < 0 || local_of[j] < 0) continue;
        double v = primal[vm.x[salesman][e]];
        if (v > kSupportTol) {
            cap(local_of[i], local_of[j]) += v;
            cap(local_of[j], local_of[i]) += v;
        }
    }
    int depot_local = local_of[vm.depot];

    SecCut best;
    auto consider = [&](double value, const std::vector<int>& shore_local) {
        std::vector<char> in_shore(k, 0);
        for (int i : shore_local) in_shore[i] = 1;
        // Use the side not containing the depot.
        std::vector<int> subset;
        bool depot_in_shore = in_shore[depot_local];
        for (int i = 0; i < k; ++i)
            if ((in_shore[i] != 0) != depot_in_shore) subset.push_back(comp[i]);
        if (subset.empty()) return;
        std::vector<int> global;
        for (int i : subset) global.push_back(i);
        int anchor = argmax_y(global, primal, vm, salesman);
        if (anchor < 0) return;
        double viol = 2.0 * primal[vm.y[salesman][anchor]] - value;
        if (viol > best.violation) {
            best.salesman = salesman;
            best.subset = global;
            std::sort(best.subset.begin(), best.subset.end());
            best.anchor = anchor;
            best.violation = viol;
        }
    };

    std::vector<int> side;
    double sw = stoer_wagner_min_cut(cap, &side);
    consider(sw, side);

    if (best.violation <= kViolationTol) {
        for (int i = 0; i < k; ++i) {
            if (i == depot_local) continue;
            int vertex = comp[i];
            if (vertex == vm.depot) continue;
            double y = primal[vm.y[salesman][vertex]];
            if (y <= kSupportTol) continue;
            std::vector<int> source_side;
            double flow = max_flow_min_cut(cap, depot_local, i, &source_side);
            if (flow < 2.0 * y - kViolationTol) consider(flow, source_side);
        }
    }

    if (best.violation > kViolationTol) out->push_back(std::move(best));
}

}  // namespace

SupportGraph build_support_graph(const Eigen::VectorXd& primal, const VarMap& vm, int salesman,
                                 double tol) {
    SupportGraph g;
    g.salesman = salesman;
    std::vector<char> keep(vm.num_vertices(), 0);
    for (int i = 0; i < vm.num_vertices(); ++i)
        if (i == vm.depot || primal[vm.y[salesman][i]] > tol) keep[i] = 1;
    for (size_t e = 0; e < vm.edges.size(); ++e) {
        double v = primal[vm.x[salesman][e]];
        if (v > tol) {
            auto [i, j] = vm.edges[e];
            keep[i] = keep[j] = 1;
            g.edges.emplace_back(i, j, v);
        }
    }
    for (int i = 0; i < vm.num_vertices(); ++i)
        if (keep[i]) g.vertices.push_back(i);
    return g;
}

std::vector<SecCut> separate_integer(const Eigen::VectorXd& primal, const VarMap& vm) {
    std::vector<SecCut> cuts;
    for (int v = 0; v < vm.m; ++v) {
        SupportGraph g = build_support_graph(primal, vm, v);
        add_component_cuts(primal, vm, v, connected_components(g, vm.num_vertices()), &cuts);
    }
    return cuts;
}

std::vector<SecCut> separate_fractional(const Eigen::VectorXd& primal, const VarMap& vm) {
    std::vector<SecCut> cuts;
    for (int v = 0; v < vm.m; ++v) {
        SupportGraph g = build_support_graph(primal, vm, v);
        auto comps = connected_components(g, vm.num_vertices());
        add_component_cuts(primal, vm, v, comps, &cuts);
        for (const auto& comp : comps)
            if (std::find(comp.begin(), comp.end(), vm.depot) != comp.end())
                add_depot_component_cut(primal, vm, v, comp, &cuts);
    }
    return cuts;
}

lp::Row sec_row(const SecCut& cut, const VarMap& vm) {
    std::vector<char> in(vm.num_vertices(), 0);
    for (int i : cut.subset) in[i] = 1;
    lp::Row row;
    for (size_t e = 0; e < vm.edges.size(); ++e) {
        auto [i, j] = vm.edges[e];
        if (in[i] != in[j]) row.coeffs.emplace_back(vm.x[cut.salesman][e], 1.0);
    }
    row.coeffs.emplace_back(vm.y[cut.salesman][cut.anchor], -2.0);
    row.sense = lp::Sense::Ge;
    row.rhs = 0;
    return row;
}

double stoer_wagner_min_cut(const Eigen::MatrixXd& capacity, std::vector<int>* side) {
    const int n = static_cast<int>(capacity.rows());
    if (n < 2) throw std::invalid_argument("stoer_wagner_min_cut: need at least two vertices");
    Eigen::MatrixXd w = capacity;
    std::vector<std::vector<int>> merged(n);
    for (int i = 0; i < n; ++i) merged[i] = {i};
    std::vector<int> active(n);
    std::iota(active.begin(), active.end(), 0);

    double best = std::numeric_limits<double>::infinity();
    std::vector<int> best_side;

    while (active.size() > 1) {
        // Maximum-adjacency ordering; the last two vertices give a cut-of-the-phase.
        std::vector<double> weight(n, 0.0);
        std::vector<char> added(n, 0);
        int prev = -1, last = -1;
        for (size_t step = 0; step < active.size(); ++step) {
            int pick = -1;
            for (int u : active)
                if (!added[u] && (pick < 0 || weight[u] > weight[pick])) pick = u;
            added[pick] = 1;
            prev = last;
            last = pick;
            for (int u : active)
                if (!added[u]) weight[u] += w(pick, u);
        }
        if (weight[last] < best) {
            best = weight[last];
            best_side = merged[last];
        }
        // Merge last into prev.
        for (int u : active) {
            if (u == last || u == prev) continue;
            w(prev, u) += w(last, u);
            w(u, prev) = w(prev, u);
        }
        merged[prev].insert(merged[prev].end(), merged[last].begin(), merged[last].end());
        active.erase(std::find(active.begin(), active.end(), last));
    }
    if (side) *side = best_side;
    return best;
}

double max_flow_min_cut(const Eigen::MatrixXd& capacity, int s, int t,
                        std::vector<int>* source_side) {
    const int n = static_cast<int>(capacity.rows());
    Eigen::MatrixXd residual = capacity;
    double flow = 0;
    while (true) {
        std::vector<int> parent(n, -1);
        parent[s] = s;
        std::deque<int> queue{s};
        while (!queue.empty() && parent[t] < 0) {
            int u = queue.front();
            queue.pop_front();
            for (int v = 0; v < n; ++v)
                if (parent[v] < 0 && residual(u, v) > 1e-12) {
                    parent[v] = u;
                    queue.push_back(v);
                }
        }
        if (parent[t] < 0) break;
        double push = std::numeric_limits<double>::infinity();
        for (int v = t; v != s; v = parent[v]) push = std::min(push, residual(parent[v], v));
        for (int v = t; v != s; v = parent[v]) {
            residual(parent[v], v) -= push;
            residual(v, parent[v]) += push;
        }
        flow += push;
    }
    if (source_side) {
        source_side->clear();
        std::vector<char> seen(n, 0);
        seen[s] = 1;
        std::deque<int> queue{s};
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            source_side->push_back(u);
            for (int v = 0; v < n; ++v)
                if (!seen[v] && residual(u, v) > 1e-12) {
                    seen[v] = 1;
                    queue.push_back(v);
                }
        }
    }
    return flow;
}

}  // namespace fairmtsp
