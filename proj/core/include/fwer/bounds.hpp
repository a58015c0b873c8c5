#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fwer {

/// Identifier of the bound that produced a result.
enum class Method {
    trivial,  // the plain union bound, value alpha
    thm31,
    cor31,
    cor32,
    thm33,
    thm34,
    thm35,
    thm36,
    thm41,
    cor41,
    cor42,
    thm42,
    thm43,
    thm44,
};

/// Canonical identifier, e.g. "Thm3.1", "Cor4.2", "Bonferroni-trivial".
std::string_view method_id(Method method);

/// Parses identifiers case-insensitively ("thm3.1", "Cor3.2", ...).
std::optional<Method> method_from_id(std::string_view id);

/// A simultaneous-testing instance: n one-sided tests at family level alpha,
/// each tested at alpha/n against the cutoff x = Phi^-1(1 - alpha/n).
class TestProblem {
public:
    TestProblem(int n, double alpha);

    int n() const { return n_; }
    double alpha() const { return alpha_; }
    /// The per-test cutoff x.
    double cutoff() const { return cutoff_; }

private:
    int n_;
    double alpha_;
    double cutoff_;
};

/// Common nonnegative correlation of the equicorrelated Gaussian model.
struct Equicorrelation {
    double rho = 0.0;

    explicit Equicorrelation(double r);
};

struct Condition {
    std::string predicate;
    bool pass = false;
};

/// Additive decomposition: value = alpha_term - quadratic_term - correlation_term.
struct BoundTerms {
    double alpha_term = 0.0;
    double quadratic_term = 0.0;
    double correlation_term = 0.0;
};

struct BoundResult {
    double value = 0.0;
    Method method = Method::trivial;
    bool applicable = false;
    std::vector<Condition> conditions;
    BoundTerms terms;
};

/// Piecewise-constant lookup table over x-intervals.
struct PiecewiseTable {
    std::string table_id;               // "C" | "D1" | "D2" | "D3"
    std::vector<double> breakpoints;    // strictly ascending
    std::vector<double> constants;      // one per interval, size = breakpoints - 1
};

/// C table used on x in [2, 4.23] (constants 1, 1/2, 1/pi, 1/2pi, 1/pi^2, 1/6pi).
const PiecewiseTable& c_table();
/// D tables for the three correlation families, family in {1, 2, 3}.
const PiecewiseTable& d_table(int family);
/// Family index for rho: 1 on [1/3, .5), 2 on [1/2pi, 1/3), 3 on [0.01, 1/2pi);
/// 0 when rho belongs to none.
int d_family_for_rho(double rho);
/// Interval lookup, half-open [b_k, b_{k+1}) with the terminal breakpoint
/// mapping onto the last interval. Empty when x is outside the table range.
std::optional<double> lookup_constant(const PiecewiseTable& table, double x);

/// Integral-form bound, valid for any (n, alpha) and rho in [0, 1).
/// Throws std::domain_error at rho = 1 (integrand endpoint).
BoundResult bound_thm31(const TestProblem& problem, Equicorrelation corr);
/// Linear-in-rho form, applicable when rho <= alpha/n.
BoundResult bound_cor31(const TestProblem& problem, Equicorrelation corr);
/// Closed form from the arcsine lower bound, applicable when x >= 2.
BoundResult bound_cor32(const TestProblem& problem, Equicorrelation corr);
/// C-table form, applicable when 2 <= x <= 4.23 and rho >= 0.5.
BoundResult bound_thm33(const TestProblem& problem, Equicorrelation corr);
/// D-table form, applicable when 2 <= x <= 4.42 and rho in [0.01, 0.5).
BoundResult bound_thm34(const TestProblem& problem, Equicorrelation corr);
/// Closed form for x <= 2, rho >= 0.5.
BoundResult bound_thm35(const TestProblem& problem, Equicorrelation corr);
/// Closed form for x <= 2, any nonnegative rho.
BoundResult bound_thm36(const TestProblem& problem, Equicorrelation corr);

/// Minimum over every applicable bound above plus the trivial bound alpha.
/// At rho = 1 only the closed forms compete.
BoundResult best_bound(const TestProblem& problem, Equicorrelation corr);

/// All equicorrelated bounds in a fixed order, for diagnostics and sweeps.
std::vector<BoundResult> all_equicorrelated_bounds(const TestProblem& problem,
                                                   Equicorrelation corr);

}  // namespace fwer
