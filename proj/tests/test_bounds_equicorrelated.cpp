#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "fwer/bounds.hpp"
#include "fwer/special_functions.hpp"
#include "support/reference_oracle.hpp"

using namespace fwer;

namespace {
constexpr double kPi = 3.14159265358979323846;

double terms_value(const BoundResult& r) {
    return r.terms.alpha_term - r.terms.quadratic_term - r.terms.correlation_term;
}
}  // namespace

TEST_CASE("problem construction derives the cutoff and validates input") {
    const TestProblem p(100, 0.05);
    CHECK(p.cutoff() == doctest::Approx(3.2905267314918945).epsilon(1e-12));
    CHECK(std::fabs(std_normal_cdf(p.cutoff()) - (1.0 - 0.05 / 100)) <= 1e-12);

    CHECK_THROWS_AS(TestProblem(1, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(TestProblem(10, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(TestProblem(10, 1.0), std::invalid_argument);
    CHECK(TestProblem(2, 0.999).cutoff() > 0.0);  // alpha/n just below the 0.5 wall
    CHECK_THROWS_AS(Equicorrelation(-0.01), std::invalid_argument);
    CHECK_THROWS_AS(Equicorrelation(1.01), std::invalid_argument);
}

TEST_CASE("integral bound") {
    const TestProblem p(10, 0.3);
    const auto at0 = bound_thm31(p, Equicorrelation(0.0));
    CHECK(at0.value == doctest::Approx(0.2919).epsilon(1e-12));
    CHECK(at0.applicable);

    const auto at01 = bound_thm31(p, Equicorrelation(0.1));
    CHECK(at01.value == doctest::Approx(0.28695128144111354).epsilon(1e-9));
    CHECK(at01.value >= 0.2132);  // dominates the reported estimate at this cell
    CHECK(at01.value >= refo::true_fwer_equicorrelated(10, 0.3, 0.1));

    const auto big = bound_thm31(TestProblem(100, 0.05), Equicorrelation(0.3));
    CHECK(big.value == doctest::Approx(0.04950168288332508).epsilon(1e-9));
    CHECK(big.value >= 0.0355);
    CHECK(big.value >= refo::true_fwer_equicorrelated(100, 0.05, 0.3));

    CHECK_THROWS_AS(bound_thm31(p, Equicorrelation(1.0)), std::domain_error);
}

TEST_CASE("linear corollary applies only below alpha/n") {
    const TestProblem p(10, 0.3);
    const auto r = bound_cor31(p, Equicorrelation(0.03));
    CHECK(r.applicable);
    CHECK(r.value == doctest::Approx(0.2919).epsilon(1e-12));
    CHECK(r.terms.quadratic_term == 0.0);

    CHECK(bound_cor31(p, Equicorrelation(0.0)).value == doctest::Approx(0.3).epsilon(1e-15));

    const auto off = bound_cor31(TestProblem(100, 0.05), Equicorrelation(0.1));
    CHECK_FALSE(off.applicable);
    CHECK(off.value == doctest::Approx(0.05).epsilon(1e-15));
}

TEST_CASE("arcsine closed form") {
    const TestProblem p(100, 0.05);
    const auto r = bound_cor32(p, Equicorrelation(0.3));
    CHECK(r.applicable);
    CHECK(r.value == doctest::Approx(0.049584125193020454).epsilon(1e-12));
    CHECK(std::fabs(r.value - 0.0496) < 1e-4);

    const auto at0 = bound_cor32(p, Equicorrelation(0.0));
    CHECK(at0.value == doctest::Approx(bound_thm31(p, Equicorrelation(0.0)).value).epsilon(1e-15));

    const auto narrow = bound_cor32(TestProblem(10, 0.3), Equicorrelation(0.6));
    CHECK_FALSE(narrow.applicable);  // x = 1.8808 < 2
}

TEST_CASE("C-table bound lookups") {
    // x = 2.6 -> the [2.56, 3.06) interval
    {
        const TestProblem p(200, 200 * refo::sf_ref(2.6));  // places the cutoff at 2.6
        CHECK(p.cutoff() == doctest::Approx(2.6).epsilon(1e-9));
        const auto r = bound_thm33(p, Equicorrelation(0.6));
        CHECK(r.applicable);
        const double n = 200;
        const double expected_term = (n - 1) / n * p.alpha() * 0.6 / 6.0 * 0.5;
        CHECK(r.terms.correlation_term == doctest::Approx(expected_term).epsilon(1e-12));
    }
    // x = 3.2905 (n=100, alpha=0.05) -> [3.06, 3.33) -> C = 1/pi
    {
        const TestProblem p(100, 0.05);
        const auto r = bound_thm33(p, Equicorrelation(0.5));
        CHECK(r.applicable);
        const double expected_term = 0.99 * 0.05 * 0.5 / 6.0 * (1.0 / kPi);
        CHECK(r.terms.correlation_term == doctest::Approx(expected_term).epsilon(1e-12));
    }
    // outside the table or below the correlation floor
    CHECK_FALSE(bound_thm33(TestProblem(10, 0.3), Equicorrelation(0.6)).applicable);
    CHECK_FALSE(bound_thm33(TestProblem(100, 0.05), Equicorrelation(0.4)).applicable);
    CHECK_FALSE(
        bound_thm33(TestProblem(3000000, 0.05), Equicorrelation(0.6)).applicable);  // x > 4.23
}

TEST_CASE("piecewise table plumbing") {
    CHECK(lookup_constant(c_table(), 2.0) == 1.0);
    CHECK(lookup_constant(c_table(), 2.56) == 0.5);              // left-closed at breakpoints
    CHECK(lookup_constant(c_table(), 4.23) == 1.0 / (6 * kPi));  // terminal point
    CHECK_FALSE(lookup_constant(c_table(), 4.24).has_value());
    CHECK_FALSE(lookup_constant(c_table(), 1.99).has_value());

    CHECK(d_family_for_rho(0.4) == 1);
    CHECK(d_family_for_rho(1.0 / 3.0) == 1);
    CHECK(d_family_for_rho(0.2) == 2);
    CHECK(d_family_for_rho(0.05) == 3);
    CHECK(d_family_for_rho(0.01) == 3);
    CHECK(d_family_for_rho(0.009) == 0);
    CHECK(d_family_for_rho(0.5) == 0);

    CHECK(lookup_constant(d_table(2), 3.0) == 1.0 / (2 * kPi));   // [2.72, 3.04)
    CHECK(lookup_constant(d_table(1), 2.1) == 1.0);               // [2, 2.3)
    CHECK(lookup_constant(d_table(3), 4.2) == 1.0 / (16 * kPi * kPi * kPi * kPi));
    CHECK(lookup_constant(d_table(1), 4.42) == 1.0 / (kPi * kPi * kPi * kPi));
}

TEST_CASE("D-table bound") {
    const TestProblem p(100, 0.05);  // x = 3.2905
    {
        const auto r = bound_thm34(p, Equicorrelation(0.2));  // family 2, x in [3.23, 3.66)
        CHECK(r.applicable);
        const double expected_term =
            0.99 * 0.05 * 0.2 / (2 * kPi) * (1.0 / (kPi * kPi * kPi));
        CHECK(r.terms.correlation_term == doctest::Approx(expected_term).epsilon(1e-12));
    }
    CHECK_FALSE(bound_thm34(p, Equicorrelation(0.5)).applicable);
    CHECK_FALSE(bound_thm34(p, Equicorrelation(0.009)).applicable);
    CHECK_FALSE(bound_thm34(TestProblem(10, 0.3), Equicorrelation(0.2)).applicable);
}

TEST_CASE("closed forms below x = 2") {
    const TestProblem p(10, 0.3);
    CHECK(bound_thm35(p, Equicorrelation(0.5)).value == doctest::Approx(0.2694).epsilon(1e-12));
    CHECK(bound_thm35(p, Equicorrelation(0.9)).value == doctest::Approx(0.2514).epsilon(1e-12));
    CHECK(bound_thm35(p, Equicorrelation(0.5)).value >=
          refo::true_fwer_equicorrelated(10, 0.3, 0.5));
    CHECK(bound_thm35(p, Equicorrelation(0.9)).value >=
          refo::true_fwer_equicorrelated(10, 0.3, 0.9));
    CHECK_FALSE(bound_thm35(p, Equicorrelation(0.4)).applicable);

    CHECK(bound_thm36(p, Equicorrelation(0.1)).value ==
          doctest::Approx(0.28846225322921504).epsilon(1e-12));
    CHECK(std::fabs(bound_thm36(p, Equicorrelation(0.1)).value - 0.2885) < 1e-4);
    CHECK(bound_thm36(p, Equicorrelation(0.0)).value == doctest::Approx(0.2919).epsilon(1e-12));
    CHECK_FALSE(bound_thm36(TestProblem(100, 0.05), Equicorrelation(0.3)).applicable);
}

TEST_CASE("terms always reproduce the value and respect alpha") {
    for (const auto& [n, alpha] : std::vector<std::pair<int, double>>{
             {10, 0.3}, {100, 0.05}, {500, 0.05}, {100, 0.01}}) {
        const TestProblem p(n, alpha);
        for (double rho : {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0}) {
            for (const auto& r : all_equicorrelated_bounds(p, Equicorrelation(rho))) {
                CHECK(std::fabs(r.value - terms_value(r)) <= 1e-14);
                CHECK(r.value <= alpha + 1e-15);
                CHECK(std::isfinite(r.value));
            }
        }
    }
}

TEST_CASE("weakening chain: integral <= arcsine <= C-table") {
    // x ranges over the certified region (stopping short of the defective
    // last stretch of the C table, where the third link can invert)
    for (double x : {2.05, 2.6, 3.2, 3.9, 4.15}) {
        const double alpha = 0.4;
        const int n = static_cast<int>(std::round(alpha / refo::sf_ref(x)));
        const TestProblem p(n, alpha);
        REQUIRE(p.cutoff() >= 2.0);
        for (double rho : {0.5, 0.7, 0.9}) {
            const Equicorrelation corr(rho);
            const double v31 = bound_thm31(p, corr).value;
            const double v32 = bound_cor32(p, corr).value;
            const auto r33 = bound_thm33(p, corr);
            CHECK(v31 <= v32 + 1e-12);
            if (r33.applicable) {
                CHECK(v32 <= r33.value + 1e-12);
            }
        }
    }
}

TEST_CASE("monotone behaviour in rho") {
    const TestProblem p(10, 0.3);
    double prev35 = 1.0, prev36 = 1.0, prev31 = 1.0;
    for (double rho = 0.5; rho <= 1.0; rho += 0.05) {
        const double v = bound_thm35(p, Equicorrelation(rho)).value;
        CHECK(v < prev35);
        prev35 = v;
    }
    for (double rho = 0.05; rho <= 1.0; rho += 0.05) {
        const double v = bound_thm36(p, Equicorrelation(rho)).value;
        CHECK(v < prev36);
        prev36 = v;
    }
    for (double rho = 0.0; rho <= 0.95; rho += 0.05) {
        const double v = bound_thm31(p, Equicorrelation(rho)).value;
        CHECK(v <= prev31 + 1e-15);
        prev31 = v;
    }
}

TEST_CASE("dispatcher returns the smallest applicable bound") {
    {
        const TestProblem p(10, 0.3);
        const auto best = best_bound(p, Equicorrelation(0.5));
        CHECK(best.value <= bound_thm35(p, Equicorrelation(0.5)).value);
        CHECK(best.value <= bound_thm36(p, Equicorrelation(0.5)).value);
        CHECK(best.value <= bound_thm31(p, Equicorrelation(0.5)).value);
        CHECK(best.applicable);
    }
    {
        // rho below alpha/n: the winner can be no worse than the corollary
        const TestProblem p(10, 0.3);
        const auto best = best_bound(p, Equicorrelation(0.02));
        CHECK(best.value <= bound_cor31(p, Equicorrelation(0.02)).value);
    }
    {
        const TestProblem p(500, 0.05);
        const auto best = best_bound(p, Equicorrelation(0.7));
        CHECK(best.value >= 0.0081);
        CHECK(best.value <= 0.05);
    }
    {
        // at rho = 1 only the closed forms compete; result stays finite
        const TestProblem p(10, 0.3);
        const auto best = best_bound(p, Equicorrelation(1.0));
        CHECK(best.applicable);
        CHECK(best.value == doctest::Approx(0.2469).epsilon(1e-12));
        CHECK(method_id(best.method) == "Thm3.5");

        const auto big = best_bound(TestProblem(100, 0.05), Equicorrelation(1.0));
        CHECK(std::isfinite(big.value));
        CHECK(big.value < 0.05);
    }
}
