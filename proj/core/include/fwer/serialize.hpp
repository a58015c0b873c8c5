#pragma once

#include "fwer/bounds.hpp"
#include "fwer/certification.hpp"
#include "fwer/monte_carlo.hpp"

#include <optional>
#include <string>

namespace fwer {

/// Rounds to `digits` significant digits; serialized output uses 10 so that
/// files diff cleanly across platforms.
double round_sig(double value, int digits = 10);

/// {n, alpha, x, rho, method, value, applicable, conditions, terms}.
/// rho is null for general-matrix results.
std::string bound_result_to_json(const TestProblem& problem, std::optional<double> rho,
                                 const BoundResult& result, int indent = -1);

/// {table_id, intervals: [{x_start, x_end, constant, grid_min, pass}], pass}.
std::string certification_to_json(const CertificationReport& report, int indent = -1);

/// {n, alpha, x, rho, fwer_hat, stderr, reps, seed, rejections_at_least_one}.
std::string sim_estimate_to_json(const TestProblem& problem, std::optional<double> rho,
                                 const SimEstimate& estimate, int indent = -1);

}  // namespace fwer
