#pragma once

#include "fwer/bounds.hpp"
#include "fwer/correlation_matrix.hpp"
#include "fwer/rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace fwer {

/// Binomial estimate of the familywise error rate.
struct SimEstimate {
    double fwer_hat = 0.0;
    double std_error = 0.0;  // sqrt(p(1-p)/reps)
    long long reps = 0;
    std::uint64_t seed = 0;
    long long rejections_at_least_one = 0;
};

/// One draw of the equicorrelated Gaussian vector via the one-factor
/// construction X_i = sqrt(rho) Z0 + sqrt(1-rho) Z_i. Exact for any
/// rho in [0, 1], including rho = 1.
std::vector<double> sample_equicorrelated(int n, double rho, CounterRng& rng);

/// One draw X = L Z for the validated matrix's Cholesky factor L.
std::vector<double> sample_general(const CorrelationMatrix& matrix, CounterRng& rng);

/// Fraction of replications in which any component exceeds the cutoff.
/// Replication r draws from the (seed, r) stream, so results are identical
/// for any thread count. threads = 0 picks the hardware default.
SimEstimate estimate_fwer(const TestProblem& problem, Equicorrelation corr,
                          long long reps, std::uint64_t seed, int threads = 0);
SimEstimate estimate_fwer(const TestProblem& problem, const CorrelationMatrix& matrix,
                          long long reps, std::uint64_t seed, int threads = 0);

/// One grid point of a correlation sweep.
struct SweepRow {
    double rho = 0.0;
    double fwer_hat = 0.0;
    double std_error = 0.0;
    double bound_value = 0.0;
    Method bound_method = Method::trivial;
    double alpha_one_minus_rho = 0.0;
};

/// Estimate + best bound + the alpha(1-rho) comparison line at every grid
/// value, in ascending rho order.
std::vector<SweepRow> sweep(const TestProblem& problem, const std::vector<double>& rho_grid,
                            long long reps, std::uint64_t seed, int threads = 0);

/// The default 41-point grid {0, 0.025, ..., 1}.
std::vector<double> default_rho_grid();

/// Parses "start:end:step" into an ascending grid (values clamped to end).
std::vector<double> parse_grid_spec(const std::string& spec);

/// CSV with header rho,fwer_hat,stderr,bound_value,bound_method,
/// alpha_one_minus_rho; numbers at 10 significant digits.
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// Worker count actually used for a request (0 = hardware concurrency).
int resolve_threads(int requested);

}  // namespace fwer
