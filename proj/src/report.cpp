#include "fairmtsp/report.hpp"

#include "fairmtsp/metrics.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <sstream>

namespace fairmtsp {

namespace {

using nlohmann::json;

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string fmt2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

json params_json(const ModelSpec& spec) {
    json p = json::object();
    switch (spec.variant) {
        case Variant::PNorm: p["p"] = spec.p; break;
        case Variant::EpsFair: p["eps"] = fmt6(spec.eps); break;
        case Variant::DeltaFair: p["delta"] = fmt6(spec.delta); break;
        default: break;
    }
    return p;
}

}  // namespace

std::string termination_name(Termination t) {
    switch (t) {
        case Termination::Optimal: return "optimal";
        case Termination::TimeLimit: return "time_limit";
        case Termination::Infeasible: return "infeasible";
    }
    return "unknown";
}

RunReport make_report(const std::string& instance_name, const ModelSpec& spec,
                      const SolveResult& result, double minsum_total) {
    RunReport r;
    r.instance = instance_name;
    r.spec = spec;
    r.status = result.stats.termination;
    r.solution = result.solution;
    r.stats = result.stats;
    r.best_bound = result.best_bound;
    if (r.solution && r.solution->lengths.sum() > 0) {
        r.gini = gini(r.solution->lengths);
        r.jain = jain(r.solution->lengths);
        r.epsfi = eps_fair_index(r.solution->lengths);
        if (minsum_total > 0) r.cof = cost_of_fairness(r.solution->lengths.sum(), minsum_total);
    }
    return r;
}

std::string report_json(const RunReport& r) {
    json j;
    j["schema_version"] = 1;
    j["instance"] = r.instance;
    j["variant"] = variant_name(r.spec.variant);
    j["params"] = params_json(r.spec);
    j["status"] = termination_name(r.status);
    if (r.solution) {
        j["tours"] = r.solution->tours;
        json lengths = json::array();
        for (int v = 0; v < r.solution->lengths.size(); ++v)
            lengths.push_back(fmt6(r.solution->lengths[v]));
        j["lengths"] = lengths;
        j["objective"] = fmt6(r.solution->objective);
        j["gap"] = fmt6(r.solution->gap);
        j["metrics"] = {{"gini", fmt6(r.gini)},
                        {"jain", fmt6(r.jain)},
                        {"epsfi", fmt6(r.epsfi)},
                        {"cof", fmt6(r.cof)}};
    }
    j["bound"] = fmt6(r.best_bound);
    j["stats"] = {{"nodes", r.stats.nodes},
                  {"sec_cuts", r.stats.sec_cuts},
                  {"oa_cuts", r.stats.oa_cuts},
                  {"seconds", fmt2(r.stats.seconds)}};
    return j.dump(2) + "\n";
}

std::string report_csv(const RunReport& r) {
    std::ostringstream out;
    out << "instance,variant,status,objective,bound,gap,total,gini,jain,epsfi,cof,"
           "nodes,sec_cuts,oa_cuts,seconds\n";
    out << r.instance << ',' << variant_name(r.spec.variant) << ',' << termination_name(r.status);
    if (r.solution)
        out << ',' << fmt6(r.solution->objective) << ',' << fmt6(r.best_bound) << ','
            << fmt6(r.solution->gap) << ',' << fmt6(r.solution->lengths.sum()) << ','
            << fmt6(r.gini) << ',' << fmt6(r.jain) << ',' << fmt6(r.epsfi) << ',' << fmt6(r.cof);
    else
        out << ',' << ',' << fmt6(r.best_bound) << ",,,,,,";
    out << ',' << r.stats.nodes << ',' << r.stats.sec_cuts << ',' << r.stats.oa_cuts << ','
        << fmt2(r.stats.seconds) << '\n';
    return out.str();
}

std::string report_text(const RunReport& r) {
    std::ostringstream out;
    out << "instance:  " << r.instance << '\n';
    out << "variant:   " << variant_name(r.spec.variant);
    switch (r.spec.variant) {
        case Variant::PNorm: out << " (p=" << r.spec.p << ")"; break;
        case Variant::EpsFair: out << " (eps=" << fmt6(r.spec.eps) << ")"; break;
        case Variant::DeltaFair: out << " (delta=" << fmt6(r.spec.delta) << ")"; break;
        default: break;
    }
    out << '\n';
    out << "status:    " << termination_name(r.status) << '\n';
    if (r.solution) {
        out << "objective: " << fmt6(r.solution->objective) << '\n';
        out << "bound:     " << fmt6(r.best_bound) << '\n';
        out << "gap:       " << fmt6(r.solution->gap) << '\n';
        for (size_t v = 0; v < r.solution->tours.size(); ++v) {
            out << "tour " << v + 1 << " (" << fmt6(r.solution->lengths[static_cast<int>(v)])
                << "):";
            for (int node : r.solution->tours[v]) out << ' ' << node;
            out << '\n';
        }
        out << "gini " << fmt6(r.gini) << "  jain " << fmt6(r.jain) << "  epsfi " << fmt6(r.epsfi)
            << "  cof " << fmt6(r.cof) << '\n';
    } else {
        out << "bound:     " << fmt6(r.best_bound) << '\n';
    }
    out << "nodes " << r.stats.nodes << "  sec_cuts " << r.stats.sec_cuts << "  oa_cuts "
        << r.stats.oa_cuts << "  seconds " << fmt2(r.stats.seconds) << '\n';
    return out.str();
}

std::string sweep_json(const std::string& instance_name, SweepFamily family,
                       const std::vector<ParetoPoint>& points) {
    json j;
    j["schema_version"] = 1;
    j["instance"] = instance_name;
    j["family"] = family == SweepFamily::EpsFair ? "eps-fair" : "delta-fair";
    json rows = json::array();
    for (const auto& p : points) {
        json row;
        row["param"] = fmt6(p.param);
        row["status"] = p.feasible ? "optimal" : "infeasible";
        if (p.feasible) {
            row["total"] = fmt6(p.total);
            row["fairness"] = fmt6(p.fairness);
            row["cof"] = fmt6(p.cof);
        }
        row["seconds"] = fmt2(p.stats.seconds);
        rows.push_back(row);
    }
    j["points"] = rows;
    return j.dump(2) + "\n";
}

std::string sweep_csv(const std::vector<ParetoPoint>& points) {
    std::ostringstream out;
    out << "param,total,fairness,cof,status,seconds\n";
    for (const auto& p : points) {
        out << fmt6(p.param) << ',';
        if (p.feasible)
            out << fmt6(p.total) << ',' << fmt6(p.fairness) << ',' << fmt6(p.cof);
        else
            out << ",,";
        out << ',' << (p.feasible ? "optimal" : "infeasible") << ',' << fmt2(p.stats.seconds)
            << '\n';
    }
    return out.str();
}

}  // namespace fairmtsp
