#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace fwer {

/// Validated correlation matrix: symmetric, unit diagonal, nonnegative
/// off-diagonal entries strictly below 1, positive semidefinite (checked by
/// Cholesky with diagonal tolerance 1e-10). Immutable after construction;
/// the lower-triangular factor is computed once and cached for sampling.
class CorrelationMatrix {
public:
    static CorrelationMatrix from_entries(std::vector<std::vector<double>> entries);
    static CorrelationMatrix equicorrelated(int dim, double rho);
    /// Parses `dim` rows of `dim` comma-separated values, no header,
    /// whitespace-tolerant. Parse errors report row and column (1-based).
    static CorrelationMatrix from_csv(std::string_view text);
    static CorrelationMatrix from_csv_file(const std::string& path);

    int dim() const { return dim_; }
    double at(int i, int j) const { return entries_[static_cast<std::size_t>(i) * dim_ + j]; }
    /// Row-major lower-triangular Cholesky factor (entries above the diagonal zero).
    const std::vector<double>& cholesky_factor() const { return factor_; }

private:
    CorrelationMatrix(int dim, std::vector<double> entries, std::vector<double> factor);

    int dim_;
    std::vector<double> entries_;  // row-major
    std::vector<double> factor_;   // row-major lower triangular
};

/// Row statistics driving the general-matrix bounds: the row with maximal
/// off-diagonal sum, the minimal entry within that row, and the row mean.
/// Ties break to the smallest index.
struct RowStats {
    int istar = 0;
    int jstar = 0;
    double rho_bar = 0.0;
    double rho_min = 0.0;
};

RowStats row_stats(const CorrelationMatrix& matrix);

}  // namespace fwer
