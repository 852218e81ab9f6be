#include "fairmtsp/instance.hpp"
#include "fairmtsp/metrics.hpp"
#include "fairmtsp/oracle.hpp"
#include "fairmtsp/pareto.hpp"
#include "fairmtsp/report.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace fairmtsp;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitTimeLimit = 2;
constexpr int kExitInfeasible = 3;

struct CommonOpts {
    std::string instance_path;
    int salesmen = 2;
    double time_limit = 3600;
    bool centroid_depot = false;
    std::string output = "json";
    std::string out_path;
};

struct VariantOpts {
    std::string variant = "min-sum";
    int p = 2;
    double eps = -1;
    double delta = -1;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--instance", o.instance_path, "instance file (.tsp or .json)")->required();
    cmd->add_option("--salesmen", o.salesmen, "number of salesmen")->required();
    cmd->add_option("--time-limit", o.time_limit, "wall-clock limit in seconds");
    cmd->add_flag("--centroid-depot", o.centroid_depot,
                  "append a depot at the coordinate centroid");
    cmd->add_option("--output", o.output, "report format")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    cmd->add_option("--out", o.out_path, "write the report to this path instead of stdout");
}

void add_variant(CLI::App* cmd, VariantOpts& o) {
    cmd->add_option("--variant", o.variant, "objective variant")
        ->check(CLI::IsMember({"min-sum", "min-max", "p-norm", "eps-fair", "delta-fair"}));
    cmd->add_option("--p", o.p, "norm order for p-norm");
    cmd->add_option("--eps", o.eps, "fairness level for eps-fair, in [0, 1]");
    cmd->add_option("--delta", o.delta, "Gini bound for delta-fair, in [0, 1]");
}

ModelSpec spec_from(const VariantOpts& v, int m) {
    auto reject = [&](bool bad, const char* msg) {
        if (bad) throw CLI::ValidationError("--variant", msg);
    };
    if (v.variant == "min-sum" || v.variant == "min-max") {
        reject(v.eps >= 0, "--eps only applies to eps-fair");
        reject(v.delta >= 0, "--delta only applies to delta-fair");
        return v.variant == "min-sum" ? ModelSpec::min_sum(m) : ModelSpec::min_max(m);
    }
    if (v.variant == "p-norm") {
        reject(v.eps >= 0, "--eps only applies to eps-fair");
        reject(v.delta >= 0, "--delta only applies to delta-fair");
        return ModelSpec::p_norm(m, v.p);
    }
    if (v.variant == "eps-fair") {
        reject(v.eps < 0, "eps-fair requires --eps");
        reject(v.delta >= 0, "--delta only applies to delta-fair");
        return ModelSpec::eps_fair(m, v.eps);
    }
    reject(v.delta < 0, "delta-fair requires --delta");
    reject(v.eps >= 0, "--eps only applies to eps-fair");
    return ModelSpec::delta_fair(m, v.delta);
}

Instance load_instance(const CommonOpts& o) {
    std::ifstream in(o.instance_path);
    if (!in) throw std::runtime_error("cannot open instance file: " + o.instance_path);
    std::stringstream buf;
    buf << in.rdbuf();
    const bool is_json = o.instance_path.size() >= 5 &&
                         o.instance_path.compare(o.instance_path.size() - 5, 5, ".json") == 0;
    Instance inst = is_json ? parse_json_instance(buf.str()) : parse_tsplib(buf.str());
    if (o.centroid_depot) {
        inst = add_centroid_depot(inst);
    } else if (!inst.has_depot()) {
        inst.depot = 0;
    }
    return inst;
}

void emit(const CommonOpts& o, const std::string& payload) {
    if (o.out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(o.out_path);
    if (!out) throw std::runtime_error("cannot open output file: " + o.out_path);
    out << payload;
}

int status_exit(Termination t, bool has_solution) {
    switch (t) {
        case Termination::Optimal: return kExitOk;
        case Termination::TimeLimit: return has_solution ? kExitTimeLimit : kExitTimeLimit;
        case Termination::Infeasible: return kExitInfeasible;
    }
    return kExitUsage;
}

int run_solve(const CommonOpts& common, const VariantOpts& variant) {
    Instance inst = load_instance(common);
    ModelSpec spec = spec_from(variant, common.salesmen);
    spec.validate();
    SolveParams params;
    params.time_limit_seconds = common.time_limit;
    SolveResult result = solve(inst, spec, params);
    RunReport report = make_report(inst.name, spec, result);
    std::string payload = common.output == "json"  ? report_json(report)
                          : common.output == "csv" ? report_csv(report)
                                                   : report_text(report);
    emit(common, payload);
    return status_exit(result.stats.termination, result.solution.has_value());
}

int run_pareto(const CommonOpts& common, const std::string& family_name, double grid_lo,
               double grid_hi, double grid_step) {
    Instance inst = load_instance(common);
    SweepFamily family =
        family_name == "eps-fair" ? SweepFamily::EpsFair : SweepFamily::DeltaFair;
    if (grid_step <= 0) throw CLI::ValidationError("--grid-step", "must be positive");
    std::vector<double> grid;
    for (double g = grid_lo; g <= grid_hi + 1e-12; g += grid_step)
        grid.push_back(std::min(g, grid_hi));
    SolveParams params;
    params.time_limit_seconds = common.time_limit;
    std::vector<ParetoPoint> points = sweep(inst, common.salesmen, family, grid, params);
    std::string payload = common.output == "json" ? sweep_json(inst.name, family, points)
                                                  : sweep_csv(points);
    emit(common, payload);
    return kExitOk;
}

int run_compare_minmax(const CommonOpts& common) {
    Instance inst = load_instance(common);
    const int m = common.salesmen;
    SolveParams params;
    params.time_limit_seconds = common.time_limit;

    SolveResult minmax = solve(inst, ModelSpec::min_max(m), params);
    if (!minmax.solution) {
        std::cerr << "min-max solve produced no solution\n";
        return status_exit(minmax.stats.termination, false);
    }
    const double eps_level = eps_fair_index(minmax.solution->lengths);
    const double delta_level = gini(minmax.solution->lengths);
    SolveResult eps_run = solve(inst, ModelSpec::eps_fair(m, eps_level), params);
    SolveResult delta_run = solve(inst, ModelSpec::delta_fair(m, delta_level), params);

    std::ostringstream out;
    char buf[256];
    out << "variant,param,total,seconds\n";
    std::snprintf(buf, sizeof buf, "min-max,,%.6f,%.2f\n", minmax.solution->lengths.sum(),
                  minmax.stats.seconds);
    out << buf;
    if (eps_run.solution)
        std::snprintf(buf, sizeof buf, "eps-fair,%.6f,%.6f,%.2f\n", eps_level,
                      eps_run.solution->lengths.sum(), eps_run.stats.seconds);
    else
        std::snprintf(buf, sizeof buf, "eps-fair,%.6f,,%.2f\n", eps_level, eps_run.stats.seconds);
    out << buf;
    if (delta_run.solution)
        std::snprintf(buf, sizeof buf, "delta-fair,%.6f,%.6f,%.2f\n", delta_level,
                      delta_run.solution->lengths.sum(), delta_run.stats.seconds);
    else
        std::snprintf(buf, sizeof buf, "delta-fair,%.6f,,%.2f\n", delta_level,
                      delta_run.stats.seconds);
    out << buf;
    emit(common, out.str());
    return kExitOk;
}

int run_oracle(const CommonOpts& common, const VariantOpts& variant) {
    Instance inst = load_instance(common);
    if (inst.num_targets() > 9 || common.salesmen > 3) {
        std::cerr << "oracle size guard: at most 9 targets and 3 salesmen\n";
        return kExitUsage;
    }
    ModelSpec spec = spec_from(variant, common.salesmen);
    spec.validate();
    SolveParams params;
    params.time_limit_seconds = common.time_limit;
    params.rel_gap = 0;
    params.abs_gap = 1e-9;

    BruteForceResult oracle = brute_force(inst, spec);
    SolveResult result = solve(inst, spec, params);

    std::ostringstream out;
    char buf[128];
    if (oracle.feasible)
        std::snprintf(buf, sizeof buf, "oracle objective: %.6f\n", oracle.objective);
    else
        std::snprintf(buf, sizeof buf, "oracle: infeasible\n");
    out << buf;
    if (result.solution)
        std::snprintf(buf, sizeof buf, "solver objective: %.6f\n", result.solution->objective);
    else
        std::snprintf(buf, sizeof buf, "solver: infeasible\n");
    out << buf;

    bool match = oracle.feasible == result.solution.has_value() &&
                 (!oracle.feasible ||
                  std::abs(oracle.objective - result.solution->objective) <= 1e-6);
    out << (match ? "match\n" : "MISMATCH\n");
    emit(common, out.str());
    return match ? kExitOk : kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact solver for the fair multiple traveling salesman problem"};
    app.require_subcommand(1);

    CommonOpts solve_common, pareto_common, compare_common, oracle_common;
    VariantOpts solve_variant, oracle_variant;
    std::string family = "eps-fair";
    double grid_lo = 0, grid_hi = 1, grid_step = 0.05;

    CLI::App* cmd_solve = app.add_subcommand("solve", "solve one variant");
    add_common(cmd_solve, solve_common);
    add_variant(cmd_solve, solve_variant);

    CLI::App* cmd_pareto = app.add_subcommand("pareto", "sweep a fairness parameter grid");
    add_common(cmd_pareto, pareto_common);
    cmd_pareto->add_option("--family", family, "parameter family")
        ->check(CLI::IsMember({"eps-fair", "delta-fair"}));
    cmd_pareto->add_option("--grid-lo", grid_lo, "grid lower bound");
    cmd_pareto->add_option("--grid-hi", grid_hi, "grid upper bound");
    cmd_pareto->add_option("--grid-step", grid_step, "grid step");

    CLI::App* cmd_compare =
        app.add_subcommand("compare-minmax", "min-max vs fairness-matched fair variants");
    add_common(cmd_compare, compare_common);

    CLI::App* cmd_oracle = app.add_subcommand("oracle", "cross-check against brute force");
    add_common(cmd_oracle, oracle_common);
    add_variant(cmd_oracle, oracle_variant);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (cmd_solve->parsed()) return run_solve(solve_common, solve_variant);
        if (cmd_pareto->parsed())
            return run_pareto(pareto_common, family, grid_lo, grid_hi, grid_step);
        if (cmd_compare->parsed()) return run_compare_minmax(compare_common);
        if (cmd_oracle->parsed()) return run_oracle(oracle_common, oracle_variant);
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
