#include "fairmtsp/bnc.hpp"

#include "fairmtsp/metrics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>

namespace fairmtsp {

namespace {

constexpr double kConicTol = 1e-6;

struct Node {
    // Final (lo, hi) per overridden column, tightening the root bounds.
    std::vector<std::tuple<int, double, double>> overrides;
    double bound = -lp::kInf;
    long seq = 0;
};

struct NodeOrder {
    bool operator()(const Node& a, const Node& b) const {
        if (a.bound != b.bound) return a.bound > b.bound;  // min-heap on bound
        return a.seq > b.seq;                              // FIFO tie-break
    }
};

bool is_integral(double v, double tol) { return std::abs(v - std::lround(v)) <= tol; }

// Most-fractional variable, ties broken by lowest column index. y first.
int pick_branch_column(const Eigen::VectorXd& primal, const VarMap& vm, double tol) {
    auto scan = [&](const std::vector<std::vector<int>>& group) {
        int best = -1;
        double best_score = tol;
        for (const auto& per_salesman : group)
            for (int col : per_salesman) {
                double v = primal[col];
                double score = std::min(v - std::floor(v), std::ceil(v) - v);
                if (score > best_score + 1e-12) {
                    best_score = score;
                    best = col;
                }
            }
        return best;
    };
    int col = scan(vm.y);
    if (col < 0) col = scan(vm.x);
    return col;
}

class Solver {
public:
    Solver(const Instance& inst, const ModelSpec& spec, const SolveParams& params, CutLog* log)
        : inst_(inst), spec_(spec), params_(params), log_(log) {
        spec_.validate();
        if (!inst.has_depot()) throw std::invalid_argument("solve: instance has no depot");
        sec_cap_ = params.max_sec_cuts_per_round > 0 ? params.max_sec_cuts_per_round : spec.m;
        oa_cap_ = params.max_oa_cuts_per_round > 0 ? params.max_oa_cuts_per_round : spec.m;

        auto built = build_base(inst, spec.m);
        model_ = std::move(built.model);
        vm_ = std::move(built.vm);
        attach_variant(model_, vm_, spec_);
        if (params.symmetry_breaking && spec.variant != Variant::DeltaFair)
            add_ordering_rows(model_, vm_);
        root_lo_.resize(model_.num_cols());
        root_hi_.resize(model_.num_cols());
        for (int c = 0; c < model_.num_cols(); ++c) {
            root_lo_[c] = model_.lower(c);
            root_hi_[c] = model_.upper(c);
        }
    }

    SolveResult run() {
        const auto start = std::chrono::steady_clock::now();
        auto elapsed = [&] {
            return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        };

        std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
        long seq = 0;
        open.push(Node{{}, -lp::kInf, seq++});

        std::optional<Solution> incumbent;
        double incumbent_obj = lp::kInf;
        double bound_at_stop = -lp::kInf;
        bool timed_out = false;

        while (!open.empty()) {
            Node node = open.top();
            open.pop();
            if (elapsed() > params_.time_limit_seconds) {
                timed_out = true;
                bound_at_stop = node.bound;
                break;
            }
            if (prunable(node.bound, incumbent_obj)) continue;
            if (incumbent && gap_closed(incumbent_obj, node.bound)) {
                bound_at_stop = node.bound;
                open = {};
                break;
            }

            ++stats_.nodes;
            apply_overrides(node);
            process_node(node, incumbent, incumbent_obj, open, seq, elapsed, timed_out);
            restore_overrides(node);
            if (timed_out) {
                bound_at_stop = node.bound;
                break;
            }
        }

        SolveResult result;
        stats_.seconds = elapsed();
        if (timed_out) {
            double bound = bound_at_stop;
            while (!open.empty()) {
                bound = std::min(bound, open.top().bound);
                open.pop();
            }
            stats_.termination = Termination::TimeLimit;
            result.best_bound = bound;
            if (incumbent) {
                incumbent->bound = bound;
                incumbent->gap = rel_gap(incumbent_obj, bound);
                result.solution = incumbent;
            }
        } else if (incumbent) {
            stats_.termination = Termination::Optimal;
            double bound = std::isfinite(bound_at_stop) ? std::max(bound_at_stop, -lp::kInf)
                                                        : incumbent_obj;
            if (!std::isfinite(bound)) bound = incumbent_obj;
            bound = std::min(bound, incumbent_obj);
            incumbent->bound = open.empty() && !std::isfinite(bound_at_stop) ? incumbent_obj : bound;
            incumbent->gap = rel_gap(incumbent_obj, incumbent->bound);
            result.best_bound = incumbent->bound;
            result.solution = incumbent;
        } else {
            stats_.termination = Termination::Infeasible;
        }
        result.stats = stats_;
        return result;
    }

private:
    bool prunable(double bound, double incumbent_obj) const {
        if (!std::isfinite(incumbent_obj)) return false;
        return gap_closed(incumbent_obj, bound);
    }

    bool gap_closed(double incumbent_obj, double bound) const {
        double diff = incumbent_obj - bound;
        return diff <= params_.abs_gap || diff <= params_.rel_gap * std::max(1.0, std::abs(incumbent_obj));
    }

    static double rel_gap(double incumbent_obj, double bound) {
        return std::max(0.0, (incumbent_obj - bound) / std::max(1e-12, std::abs(incumbent_obj)));
    }

    void apply_overrides(const Node& node) {
        for (const auto& [c, lo, hi] : node.overrides) model_.set_bounds(c, lo, hi);
    }

    void restore_overrides(const Node& node) {
        for (const auto& [c, lo, hi] : node.overrides) model_.set_bounds(c, root_lo_[c], root_hi_[c]);
    }

    Eigen::VectorXd lengths_of(const Eigen::VectorXd& primal) const {
        Eigen::VectorXd l(vm_.m);
        for (int v = 0; v < vm_.m; ++v) l[v] = primal[vm_.l[v]];
        return l;
    }

    bool point_integral(const Eigen::VectorXd& primal) const {
        for (int v = 0; v < vm_.m; ++v) {
            for (int col : vm_.x[v])
                if (!is_integral(primal[col], params_.integrality_tol)) return false;
            for (int col : vm_.y[v])
                if (!is_integral(primal[col], params_.integrality_tol)) return false;
        }
        return true;
    }

    int add_sec_cuts(std::vector<SecCut> cuts) {
        std::sort(cuts.begin(), cuts.end(),
                  [](const SecCut& a, const SecCut& b) { return a.violation > b.violation; });
        int added = 0;
        for (const auto& cut : cuts) {
            if (added >= sec_cap_) break;
            model_.add_row(sec_row(cut, vm_));
            if (log_) log_->sec_cuts.push_back(cut);
            ++stats_.sec_cuts;
            ++added;
        }
        return added;
    }

    // Returns the number of OA cuts added for the current point.
    int add_oa_cuts(const Eigen::VectorXd& primal) {
        int added = 0;
        if (spec_.variant == Variant::PNorm) {
            double z = primal[vm_.z];
            for (int v = 0; v < vm_.m && added < oa_cap_; ++v) {
                PowerConePoint pt{primal[vm_.L[v]], z, primal[vm_.l[v]], spec_.p};
                // Relative acceptance: cuts with violation below the LP's own
                // scaled feasibility tolerance are numerically invisible to the
                // simplex and would loop forever.
                if (pt.in_cone(kConicTol * (1.0 + std::abs(pt.l)))) continue;
                if (pt.l <= 1e-9) continue;
                // Tangent point selection. When L or z sits at zero the plain
                // projection lands on the apex ray where the tangent is
                // undefined; instead take the surface point that shares the
                // large coordinate and the violated l, which always separates.
                PowerConePoint surface;
                const double tiny = 1e-9 * (1.0 + pt.l);
                if (pt.L > tiny && pt.z > tiny) {
                    surface = project_power(pt);
                } else if (pt.z >= pt.l) {
                    surface = PowerConePoint{pt.l * std::pow(pt.l / pt.z, spec_.p - 1.0), pt.z,
                                             pt.l, spec_.p};
                } else if (pt.L >= pt.l) {
                    surface = PowerConePoint{pt.L, pt.l * std::pow(pt.l / pt.L, 1.0 / (spec_.p - 1.0)),
                                             pt.l, spec_.p};
                } else {
                    // Both legs below l: the tangent at (l, l, l) separates.
                    surface = PowerConePoint{pt.l, pt.l, pt.l, spec_.p};
                }
                if (surface.L <= 0 || surface.z <= 0) continue;
                LinearCut cut = power_cut(surface, vm_.L[v], vm_.z, vm_.l[v]);
                model_.add_row(cut.row());
                if (log_) log_->power_cuts.push_back({surface, cut, v});
                ++stats_.oa_cuts;
                ++added;
            }
        } else if (spec_.variant == Variant::EpsFair) {
            Eigen::VectorXd l = lengths_of(primal);
            double z = primal[vm_.z];
            if (l.norm() - z > kConicTol * (1.0 + l.norm()) && l.norm() > 1e-9) {
                std::vector<int> l_cols(vm_.l.begin(), vm_.l.end());
                LinearCut cut = soc_cut(l, l_cols, vm_.z);
                model_.add_row(cut.row());
                if (log_) log_->soc_cuts.push_back({l, cut});
                ++stats_.oa_cuts;
                ++added;
            }
        }
        return added;
    }

    double tour_length(const std::vector<int>& order) const {
        if (order.empty()) return 0;
        double len = inst_.cost(inst_.depot, order.front()) + inst_.cost(order.back(), inst_.depot);
        for (size_t k = 0; k + 1 < order.size(); ++k)
            len += inst_.cost(order[k], order[k + 1]);
        return len;
    }

    // Nearest-neighbour order over `targets` from the depot, polished with
    // first-improvement 2-opt. Deterministic: ties go to the lowest vertex.
    std::vector<int> build_tour(std::vector<int> targets) const {
        std::vector<int> order;
        order.reserve(targets.size());
        int cur = inst_.depot;
        while (!targets.empty()) {
            size_t best = 0;
            for (size_t k = 1; k < targets.size(); ++k)
                if (inst_.cost(cur, targets[k]) < inst_.cost(cur, targets[best]) - 1e-12) best = k;
            cur = targets[best];
            order.push_back(cur);
            targets.erase(targets.begin() + best);
        }
        const int k = static_cast<int>(order.size());
        bool improved = true;
        for (int pass = 0; improved && pass < 100; ++pass) {
            improved = false;
            for (int i = 0; i < k; ++i) {
                int prev = i == 0 ? inst_.depot : order[i - 1];
                for (int j = i; j < k; ++j) {
                    int next = j + 1 == k ? inst_.depot : order[j + 1];
                    double delta = inst_.cost(prev, order[j]) + inst_.cost(order[i], next) -
                                   inst_.cost(prev, order[i]) - inst_.cost(order[j], next);
                    if (delta < -1e-9) {
                        std::reverse(order.begin() + i, order.begin() + j + 1);
                        improved = true;
                    }
                }
            }
        }
        return order;
    }

    bool heuristic_feasible(const Eigen::VectorXd& lengths) const {
        if (spec_.variant != Variant::EpsFair && spec_.variant != Variant::DeltaFair) return true;
        if (lengths.sum() <= 0) return false;
        return spec_.variant == Variant::EpsFair ? eps_fair_index(lengths) >= spec_.eps
                                                 : gini(lengths) <= spec_.delta;
    }

    // Round the fractional point to a feasible solution: assign each target to
    // its strongest visit indicator, route each group, then relocate single
    // targets between salesmen while that improves the objective. An early
    // incumbent prunes siblings that the exact search would otherwise expand.
    void try_heuristic(const Eigen::VectorXd& x, std::optional<Solution>& incumbent,
                       double& incumbent_obj) {
        const int m = vm_.m;
        std::vector<std::vector<int>> groups(m);
        for (int i = 0; i < vm_.num_vertices(); ++i) {
            if (i == inst_.depot) continue;
            int best_v = 0;
            for (int v = 1; v < m; ++v)
                if (x[vm_.y[v][i]] > x[vm_.y[best_v][i]] + 1e-12) best_v = v;
            groups[best_v].push_back(i);
        }
        std::vector<std::vector<int>> orders(m);
        Eigen::VectorXd lengths(m);
        for (int v = 0; v < m; ++v) {
            orders[v] = build_tour(groups[v]);
            lengths[v] = tour_length(orders[v]);
        }
        double obj = variant_objective(spec_, lengths);

        bool improved = true;
        for (int pass = 0; improved && pass < 50; ++pass) {
            improved = false;
            for (int from = 0; from < m; ++from) {
                for (size_t k = 0; k < groups[from].size(); ++k) {
                    for (int to = 0; to < m; ++to) {
                        if (to == from) continue;
                        std::vector<int> gf = groups[from], gt = groups[to];
                        gt.push_back(gf[k]);
                        gf.erase(gf.begin() + k);
                        std::vector<int> of = build_tour(gf), ot = build_tour(gt);
                        Eigen::VectorXd trial = lengths;
                        trial[from] = tour_length(of);
                        trial[to] = tour_length(ot);
                        double trial_obj = variant_objective(spec_, trial);
                        if (trial_obj < obj - 1e-9) {
                            groups[from] = std::move(gf);
                            groups[to] = std::move(gt);
                            orders[from] = std::move(of);
                            orders[to] = std::move(ot);
                            lengths = trial;
                            obj = trial_obj;
                            improved = true;
                            if (k >= groups[from].size()) break;
                        }
                    }
                    if (k >= groups[from].size()) break;
                }
            }
        }

        if (obj >= incumbent_obj - 1e-12 || !heuristic_feasible(lengths)) return;
        Solution cand;
        cand.lengths = lengths;
        cand.objective = obj;
        cand.tours.resize(m);
        for (int v = 0; v < m; ++v) {
            cand.tours[v].push_back(inst_.depot);
            for (int t : orders[v]) cand.tours[v].push_back(t);
            if (!orders[v].empty()) cand.tours[v].push_back(inst_.depot);
        }
        incumbent = std::move(cand);
        incumbent_obj = obj;
    }

    template <typename ElapsedFn>
    void process_node(Node& node, std::optional<Solution>& incumbent, double& incumbent_obj,
                      std::priority_queue<Node, std::vector<Node>, NodeOrder>& open, long& seq,
                      ElapsedFn&& elapsed, bool& timed_out) {
        int round = 0;
        int total_rounds = 0;
        while (true) {
            if (++total_rounds > 100000)
                throw lp::NumericalFailure("bnc: cut loop failed to converge at a node");
            if (elapsed() > params_.time_limit_seconds) {
                timed_out = true;
                return;
            }
            lp::LpSolution sol = lp::solve(model_, &warm_);
            ++stats_.lp_solves;
            if (sol.status == lp::LpStatus::Infeasible) return;
            if (sol.status == lp::LpStatus::Unbounded)
                throw lp::NumericalFailure("bnc: relaxation unbounded (node " +
                                           std::to_string(stats_.nodes) + ")");
            node.bound = std::max(node.bound, sol.objective);
            if (prunable(node.bound, incumbent_obj)) return;

            const Eigen::VectorXd& x = sol.x;
            bool integral = point_integral(x);

            if (round < params_.max_cut_rounds_per_node || integral) {
                int added = add_sec_cuts(integral ? separate_integer(x, vm_)
                                                  : separate_fractional(x, vm_));
                if (added > 0) {
                    ++round;
                    continue;
                }
            }

            if (integral) {
                // Conic check is exempt from the round cap: an integral point
                // must be either certified feasible or cut off.
                if (add_oa_cuts(x) > 0) {
                    ++round;
                    continue;
                }
                Solution cand = decode(vm_, x, inst_, params_.integrality_tol);
                cand.objective = variant_objective(spec_, cand.lengths);
                if (cand.objective < incumbent_obj - 1e-12) {
                    incumbent = std::move(cand);
                    incumbent_obj = incumbent->objective;
                }
                return;
            }

            if (round < params_.max_cut_rounds_per_node && add_oa_cuts(x) > 0) {
                ++round;
                continue;
            }

            try_heuristic(x, incumbent, incumbent_obj);
            if (prunable(node.bound, incumbent_obj)) return;

            int col = pick_branch_column(x, vm_, params_.integrality_tol);
            if (col < 0)
                throw lp::NumericalFailure("bnc: fractional point with no branching candidate");
            double v = x[col];
            double cur_lo = model_.lower(col);
            double cur_hi = model_.upper(col);
            Node down{node.overrides, node.bound, seq++};
            down.overrides.emplace_back(col, cur_lo, std::floor(v));
            Node up{node.overrides, node.bound, seq++};
            up.overrides.emplace_back(col, std::ceil(v), cur_hi);
            open.push(std::move(down));
            open.push(std::move(up));
            return;
        }
    }

    const Instance& inst_;
    ModelSpec spec_;
    SolveParams params_;
    CutLog* log_;
    lp::LpModel model_;
    lp::WarmStart warm_;
    VarMap vm_;
    std::vector<double> root_lo_, root_hi_;
    SolveStats stats_;
    int sec_cap_ = 0, oa_cap_ = 0;
};

}  // namespace

double variant_objective(const ModelSpec& spec, const Eigen::VectorXd& lengths) {
    switch (spec.variant) {
        case Variant::MinMax: return lengths.maxCoeff();
        case Variant::PNorm: {
            double sum = 0;
            for (int v = 0; v < lengths.size(); ++v) sum += std::pow(lengths[v], spec.p);
            return std::pow(sum, 1.0 / spec.p);
        }
        default: return lengths.sum();
    }
}

SolveResult solve(const Instance& inst, const ModelSpec& spec, const SolveParams& params,
                  CutLog* cut_log) {
    Solver solver(inst, spec, params, cut_log);
    return solver.run();
}

}  // namespace fairmtsp
