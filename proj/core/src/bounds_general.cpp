#include "fwer/bounds_general.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>

#include "fwer/special_functions.hpp"

namespace fwer {
namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

BoundResult make_result(Method method, const TestProblem& p, double correlation_term,
                        std::vector<Condition> conditions) {
    const double n = p.n();
    const double quad = (n - 1.0) / n * p.alpha() * p.alpha() / n;
    BoundResult r;
    r.method = method;
    r.applicable = true;
    r.conditions = std::move(conditions);
    r.terms = {p.alpha(), quad, correlation_term};
    r.value = p.alpha() - quad - correlation_term;
    return r;
}

BoundResult make_inapplicable(Method method, const TestProblem& p,
                              std::vector<Condition> conditions) {
    BoundResult r;
    r.method = method;
    r.applicable = false;
    r.conditions = std::move(conditions);
    r.terms = {p.alpha(), 0.0, 0.0};
    r.value = p.alpha();
    return r;
}

void require_matching_dim(const TestProblem& p, const CorrelationMatrix& m,
                          const char* what) {
    if (p.n() != m.dim()) {
        throw std::invalid_argument(std::string(what) +
                                    ": matrix dimension must equal the test count n");
    }
}

}  // namespace

BoundResult bound_thm41(const TestProblem& p, const CorrelationMatrix& m) {
    require_matching_dim(p, m, "bound_thm41");
    const RowStats stats = row_stats(m);
    const double x = p.cutoff();
    double sum = 0.0;
    for (int j = 0; j < m.dim(); ++j) {
        if (j == stats.istar) continue;
        sum += monhor_integral(x, m.at(stats.istar, j)).value;
    }
    const double term = sum / (2.0 * kPi);
    return make_result(Method::thm41, p, term, {{"entries of row i* below 1", true}});
}

BoundResult bound_cor41(const TestProblem& p, const CorrelationMatrix& m) {
    require_matching_dim(p, m, "bound_cor41");
    const RowStats stats = row_stats(m);
    const double n = p.n();
    std::vector<Condition> conds{{"rho_{i*j*} <= alpha/n (" + fmt(p.alpha() / n) + ")",
                                  stats.rho_min <= p.alpha() / n}};
    if (!conds[0].pass) return make_inapplicable(Method::cor41, p, std::move(conds));

    BoundResult r;
    r.method = Method::cor41;
    r.applicable = true;
    r.conditions = std::move(conds);
    r.terms = {p.alpha(), 0.0, (n - 1.0) / n * p.alpha() * stats.rho_min};
    r.value = p.alpha() - r.terms.correlation_term;
    return r;
}

BoundResult bound_cor42(const TestProblem& p, const CorrelationMatrix& m) {
    require_matching_dim(p, m, "bound_cor42");
    const double x = p.cutoff();
    std::vector<Condition> conds{{"x >= 2", x >= 2.0}};
    if (!conds[0].pass) return make_inapplicable(Method::cor42, p, std::move(conds));

    const RowStats stats = row_stats(m);
    double sum = 0.0;
    for (int j = 0; j < m.dim(); ++j) {
        if (j == stats.istar) continue;
        const double rho = m.at(stats.istar, j);
        sum += std::asin(rho) * std::exp(-x * x / (1.0 + 0.5 * rho));
    }
    return make_result(Method::cor42, p, sum / (2.0 * kPi), std::move(conds));
}

BoundResult bound_thm42(const TestProblem& p, const CorrelationMatrix& m) {
    require_matching_dim(p, m, "bound_thm42");
    const RowStats stats = row_stats(m);
    std::vector<Condition> conds{{"x <= 2", p.cutoff() <= 2.0},
                                 {"rho_{i*j*} >= 0.5", stats.rho_min >= 0.5}};
    if (!(conds[0].pass && conds[1].pass)) {
        return make_inapplicable(Method::thm42, p, std::move(conds));
    }
    const double n = p.n();
    const double term = (n - 1.0) / n * p.alpha() * stats.rho_bar / 6.0;
    return make_result(Method::thm42, p, term, std::move(conds));
}

BoundResult bound_thm43(const TestProblem& p, const CorrelationMatrix& m) {
    require_matching_dim(p, m, "bound_thm43");
    std::vector<Condition> conds{{"x <= 2", p.cutoff() <= 2.0}};
    if (!conds[0].pass) return make_inapplicable(Method::thm43, p, std::move(conds));

    const RowStats stats = row_stats(m);
    const double n = p.n();
    const double term = (n - 1.0) / n * 2.0 * p.alpha() * stats.rho_bar / (5.0 * kPi);
    return make_result(Method::thm43, p, term, std::move(conds));
}

BoundResult bound_thm44(const TestProblem& p, const CorrelationMatrix& m) {
    require_matching_dim(p, m, "bound_thm44");
    const double x = p.cutoff();
    const RowStats stats = row_stats(m);
    std::vector<Condition> conds{{"2 <= x <= 4.23", x >= 2.0 && x <= 4.23},
                                 {"rho_{i*j*} >= 0.5", stats.rho_min >= 0.5}};
    if (!(conds[0].pass && conds[1].pass)) {
        return make_inapplicable(Method::thm44, p, std::move(conds));
    }
    const auto c = lookup_constant(c_table(), x);
    const double n = p.n();
    const double term = (n - 1.0) / n * p.alpha() * stats.rho_bar / 6.0 * *c;
    return make_result(Method::thm44, p, term, std::move(conds));
}

std::vector<BoundResult> all_general_bounds(const TestProblem& p,
                                            const CorrelationMatrix& m) {
    std::vector<BoundResult> results;
    try {
        results.push_back(bound_thm41(p, m));
    } catch (const std::runtime_error&) {
        results.push_back(make_inapplicable(
            Method::thm41, p, {{"integral evaluation within budget", false}}));
    }
    results.push_back(bound_cor41(p, m));
    results.push_back(bound_cor42(p, m));
    results.push_back(bound_thm42(p, m));
    results.push_back(bound_thm43(p, m));
    results.push_back(bound_thm44(p, m));
    return results;
}

BoundResult best_bound_general(const TestProblem& p, const CorrelationMatrix& m) {
    BoundResult best;
    best.method = Method::trivial;
    best.applicable = true;
    best.conditions = {{"union bound", true}};
    best.terms = {p.alpha(), 0.0, 0.0};
    best.value = p.alpha();

    for (auto& candidate : all_general_bounds(p, m)) {
        if (candidate.applicable && candidate.value < best.value) {
            best = std::move(candidate);
        }
    }
    return best;
}

}  // namespace fwer
