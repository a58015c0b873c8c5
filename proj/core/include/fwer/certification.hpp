#pragma once

#include <functional>
#include <string>
#include <vector>

namespace fwer {

/// One interval of a piecewise claim: threshold(x) >= required_constant for
/// every x in [x_start, x_end].
struct CertificationInterval {
    double x_start = 0.0;
    double x_end = 0.0;
    double required_constant = 0.0;
};

struct IntervalResult {
    double x_start = 0.0;
    double x_end = 0.0;
    double constant = 0.0;
    double grid_min = 0.0;
    double grid_argmin = 0.0;
    bool pass = false;
};

struct CertificationReport {
    std::string table_id;
    std::vector<IntervalResult> intervals;
    bool pass = false;
};

/// Evaluates threshold on a uniform grid over each closed interval (the right
/// endpoint is always sampled) and records whether the grid minimum clears
/// the interval's constant. Failures are reported, never thrown. Intervals
/// must be ordered and non-overlapping; grid_step must be positive and at
/// most 1e-3.
CertificationReport certify_table(std::string table_id,
                                  const std::vector<CertificationInterval>& levels,
                                  const std::function<double(double)>& threshold,
                                  double grid_step);

}  // namespace fwer
