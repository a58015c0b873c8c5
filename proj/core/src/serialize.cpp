#include "fwer/serialize.hpp"

#include <cstdio>
#include <cstdlib>

#include "json.hpp"

namespace fwer {

using nlohmann::json;

double round_sig(double value, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
    return std::strtod(buf, nullptr);
}

namespace {

std::string dump(const json& j, int indent) {
    return indent < 0 ? j.dump() : j.dump(indent);
}

json conditions_json(const BoundResult& result) {
    json arr = json::array();
    for (const auto& c : result.conditions) {
        arr.push_back({{"predicate", c.predicate}, {"pass", c.pass}});
    }
    return arr;
}

}  // namespace

std::string bound_result_to_json(const TestProblem& problem, std::optional<double> rho,
                                 const BoundResult& result, int indent) {
    json j;
    j["n"] = problem.n();
    j["alpha"] = round_sig(problem.alpha());
    j["x"] = round_sig(problem.cutoff());
    if (rho.has_value()) {
        j["rho"] = round_sig(*rho);
    } else {
        j["rho"] = nullptr;
    }
    j["method"] = std::string(method_id(result.method));
    j["value"] = round_sig(result.value);
    j["applicable"] = result.applicable;
    j["conditions"] = conditions_json(result);
    j["terms"] = {{"alpha_term", round_sig(result.terms.alpha_term)},
                  {"quadratic_term", round_sig(result.terms.quadratic_term)},
                  {"correlation_term", round_sig(result.terms.correlation_term)}};
    return dump(j, indent);
}

std::string certification_to_json(const CertificationReport& report, int indent) {
    json intervals = json::array();
    for (const auto& iv : report.intervals) {
        intervals.push_back({{"x_start", round_sig(iv.x_start)},
                             {"x_end", round_sig(iv.x_end)},
                             {"constant", round_sig(iv.constant)},
                             {"grid_min", round_sig(iv.grid_min)},
                             {"pass", iv.pass}});
    }
    json j;
    j["table_id"] = report.table_id;
    j["intervals"] = intervals;
    j["pass"] = report.pass;
    return dump(j, indent);
}

std::string sim_estimate_to_json(const TestProblem& problem, std::optional<double> rho,
                                 const SimEstimate& estimate, int indent) {
    json j;
    j["n"] = problem.n();
    j["alpha"] = round_sig(problem.alpha());
    j["x"] = round_sig(problem.cutoff());
    if (rho.has_value()) {
        j["rho"] = round_sig(*rho);
    } else {
        j["rho"] = nullptr;
    }
    j["fwer_hat"] = round_sig(estimate.fwer_hat);
    j["stderr"] = round_sig(estimate.std_error);
    j["reps"] = estimate.reps;
    j["seed"] = estimate.seed;
    j["rejections_at_least_one"] = estimate.rejections_at_least_one;
    return dump(j, indent);
}

}  // namespace fwer
