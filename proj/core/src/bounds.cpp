#include "fwer/bounds.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>
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

/// value = alpha - quadratic_term - correlation_term with the standard
/// quadratic term ((n-1)/n)(alpha^2/n).
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

/// Inapplicable results fall back to the always-valid trivial bound alpha so
/// that every BoundResult carries a finite value no larger than alpha.
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

bool all_pass(const std::vector<Condition>& conditions) {
    return std::all_of(conditions.begin(), conditions.end(),
                       [](const Condition& c) { return c.pass; });
}

}  // namespace

std::string_view method_id(Method method) {
    switch (method) {
        case Method::trivial: return "Bonferroni-trivial";
        case Method::thm31: return "Thm3.1";
        case Method::cor31: return "Cor3.1";
        case Method::cor32: return "Cor3.2";
        case Method::thm33: return "Thm3.3";
        case Method::thm34: return "Thm3.4";
        case Method::thm35: return "Thm3.5";
        case Method::thm36: return "Thm3.6";
        case Method::thm41: return "Thm4.1";
        case Method::cor41: return "Cor4.1";
        case Method::cor42: return "Cor4.2";
        case Method::thm42: return "Thm4.2";
        case Method::thm43: return "Thm4.3";
        case Method::thm44: return "Thm4.4";
    }
    return "unknown";
}

std::optional<Method> method_from_id(std::string_view id) {
    std::string low;
    low.reserve(id.size());
    for (char c : id) low.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (low == "auto") return std::nullopt;  // callers treat missing as auto
    if (low == "bonferroni-trivial" || low == "trivial") return Method::trivial;
    if (low == "thm3.1") return Method::thm31;
    if (low == "cor3.1") return Method::cor31;
    if (low == "cor3.2") return Method::cor32;
    if (low == "thm3.3") return Method::thm33;
    if (low == "thm3.4") return Method::thm34;
    if (low == "thm3.5") return Method::thm35;
    if (low == "thm3.6") return Method::thm36;
    if (low == "thm4.1") return Method::thm41;
    if (low == "cor4.1") return Method::cor41;
    if (low == "cor4.2") return Method::cor42;
    if (low == "thm4.2") return Method::thm42;
    if (low == "thm4.3") return Method::thm43;
    if (low == "thm4.4") return Method::thm44;
    return std::nullopt;
}

TestProblem::TestProblem(int n, double alpha) : n_(n), alpha_(alpha) {
    if (n < 2) {
        throw std::invalid_argument("TestProblem: n must be at least 2");
    }
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
        throw std::invalid_argument("TestProblem: alpha must lie in (0, 1)");
    }
    if (alpha / n >= 0.5) {
        throw std::invalid_argument("TestProblem: alpha/n >= 0.5 gives a nonpositive cutoff");
    }
    cutoff_ = std_normal_quantile(1.0 - alpha / n);
}

Equicorrelation::Equicorrelation(double r) : rho(r) {
    if (!(r >= 0.0) || !(r <= 1.0)) {
        throw std::invalid_argument("Equicorrelation: rho must lie in [0, 1]");
    }
}

const PiecewiseTable& c_table() {
    static const PiecewiseTable table{
        "C",
        {2.0, 2.56, 3.06, 3.33, 3.71, 3.93, 4.23},
        {1.0, 0.5, 1.0 / kPi, 1.0 / (2.0 * kPi), 1.0 / (kPi * kPi), 1.0 / (6.0 * kPi)}};
    return table;
}

const PiecewiseTable& d_table(int family) {
    static const double d2 = 1.0 / (2.0 * kPi);
    static const double p2 = 1.0 / (kPi * kPi);
    static const double p3 = 1.0 / (kPi * kPi * kPi);
    static const double p4 = 1.0 / (kPi * kPi * kPi * kPi);
    static const PiecewiseTable tables[3] = {
        {"D1",
         {2.0, 2.3, 2.76, 3.0, 3.36, 3.56, 4.0, 4.42},
         {1.0, 0.5, 1.0 / kPi, d2, p2, p3, p4}},
        {"D2",
         {2.0, 2.49, 2.72, 3.04, 3.23, 3.66, 4.03, 4.42},
         {0.5, 1.0 / kPi, d2, p2, p3, p4, p4 / 4.0}},
        {"D3",
         {2.0, 2.28, 2.5, 2.8, 2.97, 3.37, 3.72, 4.1, 4.42},
         {0.5, 1.0 / kPi, d2, p2, p3, p4, p4 / 4.0, p4 / 16.0}}};
    if (family < 1 || family > 3) {
        throw std::invalid_argument("d_table: family must be 1, 2 or 3");
    }
    return tables[family - 1];
}

int d_family_for_rho(double rho) {
    const double third = 1.0 / 3.0;
    const double inv2pi = 1.0 / (2.0 * kPi);
    if (rho >= third && rho < 0.5) return 1;
    if (rho >= inv2pi && rho < third) return 2;
    if (rho >= 0.01 && rho < inv2pi) return 3;
    return 0;
}

std::optional<double> lookup_constant(const PiecewiseTable& table, double x) {
    const auto& bp = table.breakpoints;
    if (x < bp.front() || x > bp.back()) return std::nullopt;
    if (x == bp.back()) return table.constants.back();
    for (std::size_t k = 0; k + 1 < bp.size(); ++k) {
        if (x >= bp[k] && x < bp[k + 1]) return table.constants[k];
    }
    return std::nullopt;
}

BoundResult bound_thm31(const TestProblem& p, Equicorrelation corr) {
    if (corr.rho == 1.0) {
        throw std::domain_error("bound_thm31: rho = 1 is outside the integral form");
    }
    const double n = p.n();
    const double integral = monhor_integral(p.cutoff(), corr.rho).value;
    const double term = (n - 1.0) / (2.0 * kPi) * integral;
    return make_result(Method::thm31, p, term, {{"rho in [0, 1)", true}});
}

BoundResult bound_cor31(const TestProblem& p, Equicorrelation corr) {
    const double n = p.n();
    std::vector<Condition> conds{
        {"rho <= alpha/n (" + fmt(p.alpha() / n) + ")", corr.rho <= p.alpha() / n}};
    if (!all_pass(conds)) return make_inapplicable(Method::cor31, p, std::move(conds));

    BoundResult r;
    r.method = Method::cor31;
    r.applicable = true;
    r.conditions = std::move(conds);
    r.terms = {p.alpha(), 0.0, (n - 1.0) / n * p.alpha() * corr.rho};
    r.value = p.alpha() - r.terms.correlation_term;
    return r;
}

BoundResult bound_cor32(const TestProblem& p, Equicorrelation corr) {
    const double x = p.cutoff();
    std::vector<Condition> conds{{"x >= 2", x >= 2.0}};
    if (!all_pass(conds)) return make_inapplicable(Method::cor32, p, std::move(conds));

    const double n = p.n();
    const double term = (n - 1.0) / (2.0 * kPi) * std::asin(corr.rho) *
                        std::exp(-x * x / (1.0 + 0.5 * corr.rho));
    return make_result(Method::cor32, p, term, std::move(conds));
}

BoundResult bound_thm33(const TestProblem& p, Equicorrelation corr) {
    const double x = p.cutoff();
    std::vector<Condition> conds{{"2 <= x <= 4.23", x >= 2.0 && x <= 4.23},
                                 {"rho >= 0.5", corr.rho >= 0.5}};
    if (!all_pass(conds)) return make_inapplicable(Method::thm33, p, std::move(conds));

    const auto c = lookup_constant(c_table(), x);
    const double n = p.n();
    const double term = (n - 1.0) / n * p.alpha() * corr.rho / 6.0 * *c;
    return make_result(Method::thm33, p, term, std::move(conds));
}

BoundResult bound_thm34(const TestProblem& p, Equicorrelation corr) {
    const double x = p.cutoff();
    const int family = d_family_for_rho(corr.rho);
    std::vector<Condition> conds{{"2 <= x <= 4.42", x >= 2.0 && x <= 4.42},
                                 {"rho in [0.01, 0.5)", family != 0}};
    std::optional<double> d;
    if (family != 0 && conds[0].pass) {
        d = lookup_constant(d_table(family), x);
        conds.push_back({"x within the rho-family grid", d.has_value()});
    }
    if (!all_pass(conds) || !d) return make_inapplicable(Method::thm34, p, std::move(conds));

    const double n = p.n();
    const double term = (n - 1.0) / n * p.alpha() * corr.rho / (2.0 * kPi) * *d;
    return make_result(Method::thm34, p, term, std::move(conds));
}

BoundResult bound_thm35(const TestProblem& p, Equicorrelation corr) {
    std::vector<Condition> conds{{"x <= 2", p.cutoff() <= 2.0},
                                 {"rho >= 0.5", corr.rho >= 0.5}};
    if (!all_pass(conds)) return make_inapplicable(Method::thm35, p, std::move(conds));

    const double n = p.n();
    const double term = (n - 1.0) / n * p.alpha() * corr.rho / 6.0;
    return make_result(Method::thm35, p, term, std::move(conds));
}

BoundResult bound_thm36(const TestProblem& p, Equicorrelation corr) {
    std::vector<Condition> conds{{"x <= 2", p.cutoff() <= 2.0}};
    if (!all_pass(conds)) return make_inapplicable(Method::thm36, p, std::move(conds));

    const double n = p.n();
    const double term = (n - 1.0) / n * 2.0 * p.alpha() * corr.rho / (5.0 * kPi);
    return make_result(Method::thm36, p, term, std::move(conds));
}

std::vector<BoundResult> all_equicorrelated_bounds(const TestProblem& p,
                                                   Equicorrelation corr) {
    std::vector<BoundResult> results;
    if (corr.rho < 1.0) {
        // rho within a few ulp of 1 can exhaust the quadrature budget on the
        // endpoint singularity; the closed forms then compete on their own
        try {
            results.push_back(bound_thm31(p, corr));
        } catch (const std::runtime_error&) {
            results.push_back(make_inapplicable(
                Method::thm31, p, {{"integral evaluation within budget", false}}));
        }
    }
    results.push_back(bound_cor31(p, corr));
    results.push_back(bound_cor32(p, corr));
    results.push_back(bound_thm33(p, corr));
    results.push_back(bound_thm34(p, corr));
    results.push_back(bound_thm35(p, corr));
    results.push_back(bound_thm36(p, corr));
    return results;
}

BoundResult best_bound(const TestProblem& p, Equicorrelation corr) {
    BoundResult best;
    best.method = Method::trivial;
    best.applicable = true;
    best.conditions = {{"union bound", true}};
    best.terms = {p.alpha(), 0.0, 0.0};
    best.value = p.alpha();

    for (auto& candidate : all_equicorrelated_bounds(p, corr)) {
        if (candidate.applicable && candidate.value < best.value) {
            best = std::move(candidate);
        }
    }
    return best;
}

}  // namespace fwer
