#include "fairmtsp/oracle.hpp"

#include "fairmtsp/bnc.hpp"
#include "fairmtsp/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

namespace fairmtsp {

namespace {

void check_guard(const Instance& inst, int m) {
    if (inst.num_targets() > 9 || m > 3)
        throw std::invalid_argument("brute_force: size guard n <= 9, m <= 3 violated");
}

// cycles[mask] = sorted lengths of every single depot-anchored loop covering
// exactly the targets in mask: an out-and-back for a singleton, otherwise a
// simple cycle through the depot in any cyclic order.
std::vector<std::vector<double>> all_cycle_lengths(const Instance& inst,
                                                   const std::vector<int>& targets) {
    const int k = static_cast<int>(targets.size());
    const int d = inst.depot;
    std::vector<std::vector<double>> cycles(size_t{1} << k);
    std::vector<int> elems;
    for (size_t mask = 1; mask < (size_t{1} << k); ++mask) {
        elems.clear();
        for (int t = 0; t < k; ++t)
            if (mask >> t & 1) elems.push_back(t);
        auto& out = cycles[mask];
        if (elems.size() == 1) {
            out.push_back(2 * inst.cost(d, targets[elems[0]]));
            continue;
        }
        std::sort(elems.begin(), elems.end());
        do {
            double len = inst.cost(d, targets[elems.front()]);
            for (size_t i = 0; i + 1 < elems.size(); ++i)
                len += inst.cost(targets[elems[i]], targets[elems[i + 1]]);
            len += inst.cost(targets[elems.back()], d);
            out.push_back(len);
        } while (std::next_permutation(elems.begin(), elems.end()));
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end(),
                              [](double a, double b) { return std::abs(a - b) <= 1e-9; }),
                  out.end());
    }
    return cycles;
}

// attain[mask] = sorted lengths achievable by one salesman whose subgraph
// covers exactly the targets in mask: any partition of the set into
// depot-anchored loops, each in any cyclic order. attain[0] = {0}.
std::vector<std::vector<double>> attainable_lengths(
    const std::vector<std::vector<double>>& cycles, int k) {
    std::vector<std::vector<double>> attain(size_t{1} << k);
    attain[0] = {0.0};
    for (size_t mask = 1; mask < (size_t{1} << k); ++mask) {
        const size_t low = mask & (~mask + 1);
        std::vector<double> vals;
        // The loop containing the lowest target determines the recursion.
        for (size_t sub = mask;; sub = (sub - 1) & mask) {
            if (sub & low) {
                const size_t rest = mask ^ sub;
                for (double c : cycles[sub])
                    for (double a : attain[rest]) vals.push_back(c + a);
            }
            if (sub == 0) break;
        }
        std::sort(vals.begin(), vals.end());
        vals.erase(std::unique(vals.begin(), vals.end(),
                               [](double a, double b) { return std::abs(a - b) <= 1e-9; }),
                   vals.end());
        attain[mask] = std::move(vals);
    }
    return attain;
}

bool satisfies_constraints(const ModelSpec& spec, const Eigen::VectorXd& lengths, double tol) {
    switch (spec.variant) {
        case Variant::EpsFair: {
            const double f = 1.0 - spec.eps + spec.eps * std::sqrt(static_cast<double>(spec.m));
            // Same relative acceptance rule as the solver.
            return lengths.norm() <= lengths.sum() / f + tol * (1.0 + lengths.norm());
        }
        case Variant::DeltaFair: {
            Eigen::VectorXd sorted = lengths;
            std::sort(sorted.data(), sorted.data() + sorted.size(), std::greater<>());
            const int m = spec.m;
            double lhs = 0;
            for (int i = 1; i <= m; ++i) lhs += (m - 2 * i + 1) * sorted[i - 1];
            return lhs <= spec.delta * (m - 1) * sorted.sum() + tol * (1.0 + sorted.sum());
        }
        default:
            return true;
    }
}

template <typename Visit>
void enumerate_assignments(int n, int m, Visit&& visit) {
    std::vector<int> assignment(n, 0);
    while (true) {
        visit(assignment);
        int pos = 0;
        while (pos < n && ++assignment[pos] == m) assignment[pos++] = 0;
        if (pos == n) break;
    }
}

// Append the loops of a configuration covering `mask` whose total length is
// `target_len`, as depot-separated segments of `walk`. Mirrors the summation
// order of attainable_lengths so the match tolerance stays loose.
bool reconstruct_walk(const Instance& inst, const std::vector<int>& targets,
                      const std::vector<std::vector<double>>& attain, size_t mask,
                      double target_len, std::vector<int>& walk) {
    if (mask == 0) return std::abs(target_len) <= 1e-6;
    const size_t low = mask & (~mask + 1);
    std::vector<int> elems;
    for (size_t sub = mask;; sub = (sub - 1) & mask) {
        if (sub & low) {
            const size_t rest = mask ^ sub;
            elems.clear();
            for (size_t t = 0; t < targets.size(); ++t)
                if (sub >> t & 1) elems.push_back(static_cast<int>(t));
            std::sort(elems.begin(), elems.end());
            do {
                double len = inst.cost(inst.depot, targets[elems.front()]);
                for (size_t i = 0; i + 1 < elems.size(); ++i)
                    len += inst.cost(targets[elems[i]], targets[elems[i + 1]]);
                len += inst.cost(targets[elems.back()], inst.depot);
                const double remaining = target_len - len;
                bool plausible = false;
                for (double a : attain[rest])
                    if (std::abs(a - remaining) <= 1e-6) {
                        plausible = true;
                        break;
                    }
                if (plausible) {
                    const size_t before = walk.size();
                    for (int e : elems) walk.push_back(targets[e]);
                    walk.push_back(inst.depot);
                    if (reconstruct_walk(inst, targets, attain, rest, remaining, walk)) return true;
                    walk.resize(before);
                }
            } while (std::next_permutation(elems.begin(), elems.end()));
        }
        if (sub == 0) break;
    }
    return false;
}

}  // namespace

double held_karp(const Instance& inst, const std::vector<int>& subset, std::vector<int>* tour) {
    if (subset.size() > 15) throw std::invalid_argument("held_karp: subset larger than 15");
    if (!inst.has_depot()) throw std::invalid_argument("held_karp: instance has no depot");
    const int d = inst.depot;
    const int k = static_cast<int>(subset.size());
    if (k == 0) {
        if (tour) *tour = {d};
        return 0;
    }
    constexpr double inf = std::numeric_limits<double>::infinity();
    const size_t full = size_t{1} << k;
    std::vector<std::vector<double>> dp(full, std::vector<double>(k, inf));
    std::vector<std::vector<int>> parent(full, std::vector<int>(k, -1));
    for (int t = 0; t < k; ++t) dp[size_t{1} << t][t] = inst.cost(d, subset[t]);
    for (size_t mask = 1; mask < full; ++mask)
        for (int last = 0; last < k; ++last) {
            if (!(mask >> last & 1) || dp[mask][last] == inf) continue;
            for (int next = 0; next < k; ++next) {
                if (mask >> next & 1) continue;
                size_t nm = mask | size_t{1} << next;
                double cand = dp[mask][last] + inst.cost(subset[last], subset[next]);
                if (cand < dp[nm][next]) {
                    dp[nm][next] = cand;
                    parent[nm][next] = last;
                }
            }
        }
    double best = inf;
    int best_last = -1;
    for (int last = 0; last < k; ++last) {
        double cand = dp[full - 1][last] + inst.cost(subset[last], d);
        if (cand < best) {
            best = cand;
            best_last = last;
        }
    }
    if (tour) {
        std::vector<int> rev;
        size_t mask = full - 1;
        int cur = best_last;
        while (cur >= 0) {
            rev.push_back(subset[cur]);
            int prev = parent[mask][cur];
            mask &= ~(size_t{1} << cur);
            cur = prev;
        }
        tour->clear();
        tour->push_back(d);
        for (auto it = rev.rbegin(); it != rev.rend(); ++it) tour->push_back(*it);
        tour->push_back(d);
    }
    return best;
}

BruteForceResult brute_force(const Instance& inst, const ModelSpec& spec, double constraint_tol) {
    spec.validate();
    check_guard(inst, spec.m);
    const std::vector<int> targets = inst.targets();
    const int n = static_cast<int>(targets.size());
    const int m = spec.m;
    const auto cycles = all_cycle_lengths(inst, targets);
    const auto attain = attainable_lengths(cycles, n);
    const bool constrained =
        spec.variant == Variant::EpsFair || spec.variant == Variant::DeltaFair;

    BruteForceResult best;
    std::vector<size_t> masks(m);
    Eigen::VectorXd lengths(m);

    enumerate_assignments(n, m, [&](const std::vector<int>& assignment) {
        for (int v = 0; v < m; ++v) {
            size_t mask = 0;
            for (int t = 0; t < n; ++t)
                if (assignment[t] == v) mask |= size_t{1} << t;
            masks[v] = mask;
        }
        if (!constrained) {
            // The objective is monotone in every length, so only the shortest
            // attainable configuration per salesman matters.
            for (int v = 0; v < m; ++v) lengths[v] = attain[masks[v]].front();
            double obj = variant_objective(spec, lengths);
            if (!best.feasible || obj < best.objective - 1e-12) {
                best.feasible = true;
                best.objective = obj;
                best.lengths = lengths;
                best.assignment = assignment;
            }
            return;
        }
        // Constrained variants minimize the total but may prefer longer
        // configurations that satisfy the fairness constraint, so search the
        // full attainable set of every salesman.
        std::vector<double> min_rest(m + 1, 0.0);
        for (int v = m - 1; v >= 0; --v)
            min_rest[v] = min_rest[v + 1] + attain[masks[v]].front();
        std::function<void(int, double)> rec = [&](int v, double partial) {
            if (best.feasible && partial + min_rest[v] >= best.objective - 1e-12) return;
            if (v == m) {
                if (!satisfies_constraints(spec, lengths, constraint_tol)) return;
                best.feasible = true;
                best.objective = partial;
                best.lengths = lengths;
                best.assignment = assignment;
                return;
            }
            for (double val : attain[masks[v]]) {
                if (best.feasible && partial + val + min_rest[v + 1] >= best.objective - 1e-12)
                    break;
                lengths[v] = val;
                rec(v + 1, partial + val);
            }
        };
        rec(0, 0.0);
    });

    if (best.feasible) {
        best.tours.resize(m);
        for (int v = 0; v < m; ++v) {
            size_t mask = 0;
            for (int t = 0; t < n; ++t)
                if (best.assignment[t] == v) mask |= size_t{1} << t;
            auto& walk = best.tours[v];
            walk = {inst.depot};
            if (mask != 0 &&
                !reconstruct_walk(inst, targets, attain, mask, best.lengths[v], walk))
                throw std::logic_error("brute_force: failed to reconstruct a tour");
        }
    }
    return best;
}

std::vector<OraclePoint> brute_force_pareto(const Instance& inst, int m, FairnessKind kind) {
    if (m < 2) throw std::invalid_argument("brute_force_pareto: m must be >= 2");
    check_guard(inst, m);
    const std::vector<int> targets = inst.targets();
    const int n = static_cast<int>(targets.size());
    const auto cycles = all_cycle_lengths(inst, targets);
    const auto attain = attainable_lengths(cycles, n);
    const bool higher_better = kind == FairnessKind::EpsFI;

    struct Compact {
        double total, fairness;
        std::array<double, 3> l;
    };
    std::vector<Compact> points;

    // Sweep filter: sort by (total up, adjusted fairness down) and keep points
    // whose fairness strictly improves on everything cheaper.
    auto compact_front = [&](std::vector<Compact>& pts) {
        std::sort(pts.begin(), pts.end(), [&](const Compact& a, const Compact& b) {
            if (a.total != b.total) return a.total < b.total;
            double fa = higher_better ? a.fairness : -a.fairness;
            double fb = higher_better ? b.fairness : -b.fairness;
            return fa > fb;
        });
        std::vector<Compact> kept;
        double best_adj = -std::numeric_limits<double>::infinity();
        for (const Compact& p : pts) {
            double adj = higher_better ? p.fairness : -p.fairness;
            if (adj > best_adj + 1e-12) {
                kept.push_back(p);
                best_adj = adj;
            }
        }
        pts = std::move(kept);
    };

    std::vector<size_t> masks(m);
    Eigen::VectorXd lengths(m);
    enumerate_assignments(n, m, [&](const std::vector<int>& assignment) {
        for (int v = 0; v < m; ++v) {
            size_t mask = 0;
            for (int t = 0; t < n; ++t)
                if (assignment[t] == v) mask |= size_t{1} << t;
            masks[v] = mask;
        }
        std::function<void(int)> rec = [&](int v) {
            if (v == m) {
                if (lengths.sum() <= 0) return;
                Compact c;
                c.total = lengths.sum();
                c.fairness = kind == FairnessKind::EpsFI ? eps_fair_index(lengths) : gini(lengths);
                c.l = {lengths[0], lengths[1], m > 2 ? lengths[2] : 0.0};
                points.push_back(c);
                return;
            }
            for (double val : attain[masks[v]]) {
                lengths[v] = val;
                rec(v + 1);
            }
        };
        rec(0);
        if (points.size() > 200000) compact_front(points);
    });
    compact_front(points);

    std::vector<OraclePoint> front;
    front.reserve(points.size());
    for (const Compact& c : points) {
        OraclePoint p;
        p.total = c.total;
        p.fairness = c.fairness;
        p.lengths = Eigen::VectorXd(m);
        for (int v = 0; v < m; ++v) p.lengths[v] = c.l[v];
        front.push_back(std::move(p));
    }
    return front;
}

}  // namespace fairmtsp
