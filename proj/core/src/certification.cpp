#include "fwer/certification.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace fwer {

CertificationReport certify_table(std::string table_id,
                                  const std::vector<CertificationInterval>& levels,
                                  const std::function<double(double)>& threshold,
                                  double grid_step) {
    if (!(grid_step > 0.0) || grid_step > 1e-3) {
        throw std::invalid_argument("certify_table: grid_step must lie in (0, 1e-3]");
    }
    if (levels.empty()) {
        throw std::invalid_argument("certify_table: no intervals given");
    }
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (!(levels[i].x_start < levels[i].x_end)) {
            throw std::invalid_argument("certify_table: empty or inverted interval");
        }
        if (i > 0 && levels[i].x_start < levels[i - 1].x_end - 1e-15) {
            throw std::invalid_argument("certify_table: intervals must be ordered and non-overlapping");
        }
    }

    CertificationReport report;
    report.table_id = std::move(table_id);
    report.pass = true;
    report.intervals.reserve(levels.size());

    for (const auto& level : levels) {
        IntervalResult res;
        res.x_start = level.x_start;
        res.x_end = level.x_end;
        res.constant = level.required_constant;
        res.grid_min = std::numeric_limits<double>::infinity();

        const auto steps =
            static_cast<long long>(std::ceil((level.x_end - level.x_start) / grid_step));
        for (long long k = 0; k <= steps; ++k) {
            const double x = std::min(level.x_start + static_cast<double>(k) * grid_step,
                                      level.x_end);
            const double v = threshold(x);
            if (v < res.grid_min) {
                res.grid_min = v;
                res.grid_argmin = x;
            }
        }
        res.pass = res.grid_min >= level.required_constant;
        report.pass = report.pass && res.pass;
        report.intervals.push_back(res);
    }
    return report;
}

}  // namespace fwer
