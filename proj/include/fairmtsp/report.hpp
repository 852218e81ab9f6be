#ifndef FAIRMTSP_REPORT_HPP
#define FAIRMTSP_REPORT_HPP

#include "fairmtsp/bnc.hpp"
#include "fairmtsp/pareto.hpp"

#include <string>

namespace fairmtsp {

/// A solver run flattened for output. All fairness metrics are recomputed
/// from the length vector, never taken from solver internals.
struct RunReport {
    std::string instance;
    ModelSpec spec;
    Termination status = Termination::Infeasible;
    std::optional<Solution> solution;
    double gini = 0;
    double jain = 0;
    double epsfi = 0;
    double cof = 0;  ///< 0 unless a min-sum baseline total was supplied
    SolveStats stats;
    double best_bound = 0;
};

RunReport make_report(const std::string& instance_name, const ModelSpec& spec,
                      const SolveResult& result, double minsum_total = -1);

std::string termination_name(Termination t);

/// Values with 6 decimals, runtimes with 2. The JSON schema is versioned and
/// stable; wall time lives in stats so data rows stay byte-deterministic.
std::string report_json(const RunReport& report);
std::string report_csv(const RunReport& report);
std::string report_text(const RunReport& report);

std::string sweep_json(const std::string& instance_name, SweepFamily family,
                       const std::vector<ParetoPoint>& points);
std::string sweep_csv(const std::vector<ParetoPoint>& points);

}  // namespace fairmtsp

#endif
