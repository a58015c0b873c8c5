#pragma once

#include <cstdint>
#include <functional>

namespace fwer {

/// Result of a definite-integral evaluation.
struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;  // <= requested tolerance on success
    std::int64_t evaluations = 0;
};

/// Adaptive Gauss-Kronrod (G7/K15) integration of f over [a, b] to an
/// absolute-error target. Intervals are bisected until the local K15-G7
/// discrepancy fits within the interval's share of abs_tol. Throws
/// std::runtime_error if max_evaluations is exhausted first.
QuadratureResult integrate_gauss_kronrod(const std::function<double(double)>& f,
                                         double a, double b, double abs_tol,
                                         std::int64_t max_evaluations = 1000000);

/// Adaptive Simpson integration of f over [a, b]. A separate rule from the
/// Gauss-Kronrod path, used by verification oracles that must not share an
/// integration engine with the code they check.
double integrate_adaptive_simpson(const std::function<double(double)>& f,
                                  double a, double b, double abs_tol,
                                  int max_depth = 60);

}  // namespace fwer
