#include "fwer/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "fwer/special_functions.hpp"

namespace fwer {

namespace {

std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(seed ^ mix64(stream + kGamma))) {}

std::uint64_t CounterRng::next_u64() {
    counter_ += kGamma;
    return mix64(key_ + counter_);
}

double CounterRng::next_unit() {
    // 53 random bits centered in (0, 1); never returns an endpoint.
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::next_normal() {
    return std_normal_quantile(next_unit());
}

std::vector<double> sample_equicorrelated(int n, double rho, CounterRng& rng) {
    if (n < 1) {
        throw std::invalid_argument("sample_equicorrelated: n must be positive");
    }
    if (!(rho >= 0.0) || !(rho <= 1.0)) {
        throw std::domain_error("sample_equicorrelated: rho must lie in [0, 1]");
    }
    const double shared = std::sqrt(rho);
    const double own = std::sqrt(1.0 - rho);
    const double z0 = rng.next_normal();
    std::vector<double> x(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        x[static_cast<std::size_t>(i)] = shared * z0 + own * rng.next_normal();
    }
    return x;
}

std::vector<double> sample_general(const CorrelationMatrix& matrix, CounterRng& rng) {
    const int n = matrix.dim();
    const auto& l = matrix.cholesky_factor();
    std::vector<double> z(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) z[static_cast<std::size_t>(i)] = rng.next_normal();
    std::vector<double> x(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j <= i; ++j) {
            acc += l[static_cast<std::size_t>(i) * n + j] * z[static_cast<std::size_t>(j)];
        }
        x[static_cast<std::size_t>(i)] = acc;
    }
    return x;
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

// Counts replications with at least one exceedance. The per-replication
// kernel gets a fresh (seed, rep) stream, so partitioning cannot change the
// outcome; counts merge by addition.
template <typename RejectKernel>
long long count_rejections(long long reps, std::uint64_t seed, int threads,
                           const RejectKernel& rejects) {
    const int workers = static_cast<int>(
        std::min<long long>(resolve_threads(threads), std::max<long long>(reps, 1)));
    std::vector<long long> counts(static_cast<std::size_t>(workers), 0);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            long long local = 0;
            for (long long r = w; r < reps; r += workers) {
                CounterRng rng(seed, static_cast<std::uint64_t>(r));
                if (rejects(rng)) ++local;
            }
            counts[static_cast<std::size_t>(w)] = local;
        });
    }
    for (auto& t : pool) t.join();
    long long total = 0;
    for (long long c : counts) total += c;
    return total;
}

SimEstimate finish_estimate(long long rejections, long long reps, std::uint64_t seed) {
    SimEstimate est;
    est.reps = reps;
    est.seed = seed;
    est.rejections_at_least_one = rejections;
    est.fwer_hat = static_cast<double>(rejections) / static_cast<double>(reps);
    est.std_error = std::sqrt(est.fwer_hat * (1.0 - est.fwer_hat) / static_cast<double>(reps));
    return est;
}

void require_reps(long long reps) {
    if (reps < 100) {
        throw std::invalid_argument("estimate_fwer: reps must be at least 100");
    }
}

}  // namespace

SimEstimate estimate_fwer(const TestProblem& problem, Equicorrelation corr,
                          long long reps, std::uint64_t seed, int threads) {
    require_reps(reps);
    const int n = problem.n();
    const double cut = problem.cutoff();
    const double shared = std::sqrt(corr.rho);
    const double own = std::sqrt(1.0 - corr.rho);

    const auto kernel = [n, cut, shared, own](CounterRng& rng) {
        const double z0 = rng.next_normal();
        if (own == 0.0) {
            return shared * z0 > cut;
        }
        for (int i = 0; i < n; ++i) {
            if (shared * z0 + own * rng.next_normal() > cut) return true;
        }
        return false;
    };
    return finish_estimate(count_rejections(reps, seed, threads, kernel), reps, seed);
}

SimEstimate estimate_fwer(const TestProblem& problem, const CorrelationMatrix& matrix,
                          long long reps, std::uint64_t seed, int threads) {
    require_reps(reps);
    if (problem.n() != matrix.dim()) {
        throw std::invalid_argument("estimate_fwer: matrix dimension must equal n");
    }
    const int n = matrix.dim();
    const double cut = problem.cutoff();
    const auto& l = matrix.cholesky_factor();

    const auto kernel = [n, cut, &l](CounterRng& rng) {
        // Row i of L z needs only z_0..z_i, so draws can stop at the first
        // exceedance without changing any later replication.
        std::vector<double> z(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            z[static_cast<std::size_t>(i)] = rng.next_normal();
            double acc = 0.0;
            for (int j = 0; j <= i; ++j) {
                acc += l[static_cast<std::size_t>(i) * n + j] * z[static_cast<std::size_t>(j)];
            }
            if (acc > cut) return true;
        }
        return false;
    };
    return finish_estimate(count_rejections(reps, seed, threads, kernel), reps, seed);
}

std::vector<SweepRow> sweep(const TestProblem& problem, const std::vector<double>& rho_grid,
                            long long reps, std::uint64_t seed, int threads) {
    std::vector<double> grid = rho_grid;
    std::sort(grid.begin(), grid.end());
    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    for (double rho : grid) {
        const Equicorrelation corr(rho);
        const SimEstimate est = estimate_fwer(problem, corr, reps, seed, threads);
        const BoundResult bound = best_bound(problem, corr);
        SweepRow row;
        row.rho = rho;
        row.fwer_hat = est.fwer_hat;
        row.std_error = est.std_error;
        row.bound_value = bound.value;
        row.bound_method = bound.method;
        row.alpha_one_minus_rho = problem.alpha() * (1.0 - rho);
        rows.push_back(row);
    }
    return rows;
}

std::vector<double> default_rho_grid() {
    std::vector<double> grid;
    grid.reserve(41);
    for (int k = 0; k <= 40; ++k) {
        grid.push_back(std::min(1.0, k * 0.025));
    }
    return grid;
}

std::vector<double> parse_grid_spec(const std::string& spec) {
    double start = 0.0, end = 0.0, step = 0.0;
    char extra = '\0';
    if (std::sscanf(spec.c_str(), "%lf:%lf:%lf%c", &start, &end, &step, &extra) != 3) {
        throw std::invalid_argument("grid spec must be start:end:step");
    }
    if (!(step > 0.0)) {
        throw std::invalid_argument("grid step must be positive");
    }
    if (end < start) {
        throw std::invalid_argument("grid end must not precede start");
    }
    if (start < 0.0 || end > 1.0) {
        throw std::invalid_argument("grid values must lie in [0, 1]");
    }
    std::vector<double> grid;
    const auto count = static_cast<long long>(std::floor((end - start) / step + 1e-9));
    for (long long k = 0; k <= count; ++k) {
        grid.push_back(std::min(end, start + static_cast<double>(k) * step));
    }
    return grid;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "rho,fwer_hat,stderr,bound_value,bound_method,alpha_one_minus_rho\n";
    char buf[160];
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof(buf), "%.10g,%.10g,%.10g,%.10g,%s,%.10g\n",
                      row.rho, row.fwer_hat, row.std_error, row.bound_value,
                      std::string(method_id(row.bound_method)).c_str(),
                      row.alpha_one_minus_rho);
        out << buf;
    }
    return out.str();
}

}  // namespace fwer
