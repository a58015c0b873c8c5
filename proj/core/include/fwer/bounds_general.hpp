#pragma once

#include "fwer/bounds.hpp"
#include "fwer/correlation_matrix.hpp"

#include <vector>

namespace fwer {

/// Integral-form bound for an arbitrary nonnegative correlation matrix:
/// the correlation term sums monhor_integral(x, rho_{i*j}) over the maximal
/// row i*. Reduces to bound_thm31 on equicorrelated matrices.
BoundResult bound_thm41(const TestProblem& problem, const CorrelationMatrix& matrix);
/// Linear form in rho_{i*j*}, applicable when rho_{i*j*} <= alpha/n.
BoundResult bound_cor41(const TestProblem& problem, const CorrelationMatrix& matrix);
/// Arcsine closed form summed over row i*, applicable when x >= 2.
BoundResult bound_cor42(const TestProblem& problem, const CorrelationMatrix& matrix);
/// Row-mean closed form for x <= 2 and rho_{i*j*} >= 0.5.
BoundResult bound_thm42(const TestProblem& problem, const CorrelationMatrix& matrix);
/// Row-mean closed form for x <= 2.
BoundResult bound_thm43(const TestProblem& problem, const CorrelationMatrix& matrix);
/// C-table form in the row mean, applicable when 2 <= x <= 4.23 and
/// rho_{i*j*} >= 0.5.
BoundResult bound_thm44(const TestProblem& problem, const CorrelationMatrix& matrix);

/// Minimum over every applicable general-matrix bound plus the trivial
/// bound alpha.
BoundResult best_bound_general(const TestProblem& problem, const CorrelationMatrix& matrix);

std::vector<BoundResult> all_general_bounds(const TestProblem& problem,
                                            const CorrelationMatrix& matrix);

}  // namespace fwer
