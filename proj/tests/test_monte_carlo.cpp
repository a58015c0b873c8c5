#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fwer/monte_carlo.hpp"
#include "support/reference_oracle.hpp"

using namespace fwer;

TEST_CASE("counter rng: reproducible, stream-separated, unit-interval") {
    CounterRng a(42, 7), b(42, 7), c(42, 8), d(43, 7);
    for (int i = 0; i < 64; ++i) {
        const std::uint64_t va = a.next_u64();
        CHECK(va == b.next_u64());
        CHECK(va != c.next_u64());
        CHECK(va != d.next_u64());
    }
    CounterRng u(1, 1);
    double mean = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double v = u.next_unit();
        CHECK(v > 0.0);
        CHECK(v < 1.0);
        mean += v;
    }
    mean /= 100000;
    CHECK(std::fabs(mean - 0.5) < 0.01);
}

TEST_CASE("one-factor sampler: marginals and correlation") {
    const int draws = 100000;
    for (double rho : {0.0, 0.5}) {
        CounterRng rng(11, 0);
        double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
        for (int i = 0; i < draws; ++i) {
            const auto v = sample_equicorrelated(2, rho, rng);
            sx += v[0]; sy += v[1];
            sxx += v[0] * v[0]; syy += v[1] * v[1]; sxy += v[0] * v[1];
        }
        const double mx = sx / draws, my = sy / draws;
        const double vx = sxx / draws - mx * mx, vy = syy / draws - my * my;
        const double corr = (sxy / draws - mx * my) / std::sqrt(vx * vy);
        CHECK(std::fabs(mx) < 0.02);
        CHECK(std::fabs(vx - 1.0) < 0.03);
        CHECK(std::fabs(corr - rho) < 0.01);
    }
    CounterRng rng(3, 5);
    const auto all_equal = sample_equicorrelated(6, 1.0, rng);
    for (double v : all_equal) CHECK(v == all_equal[0]);

    CHECK_THROWS_AS(sample_equicorrelated(4, -0.2, rng), std::domain_error);
    CHECK_THROWS_AS(sample_equicorrelated(4, 1.2, rng), std::domain_error);
}

TEST_CASE("cholesky sampler matches the target correlation") {
    const auto m = CorrelationMatrix::from_csv("1,0.5,0.3\n0.5,1,0.2\n0.3,0.2,1\n");
    CounterRng rng(17, 0);
    const int draws = 100000;
    double s0 = 0, s1 = 0, s00 = 0, s11 = 0, s01 = 0;
    for (int i = 0; i < draws; ++i) {
        const auto v = sample_general(m, rng);
        s0 += v[0]; s1 += v[1];
        s00 += v[0] * v[0]; s11 += v[1] * v[1]; s01 += v[0] * v[1];
    }
    const double m0 = s0 / draws, m1 = s1 / draws;
    const double v0 = s00 / draws - m0 * m0, v1 = s11 / draws - m1 * m1;
    CHECK(std::fabs(m0) < 0.02);
    CHECK(std::fabs(v0 - 1.0) < 0.03);
    CHECK(std::fabs((s01 / draws - m0 * m1) / std::sqrt(v0 * v1) - 0.5) < 0.01);

    // identity factor gives independent components
    const auto identity = CorrelationMatrix::equicorrelated(2, 0.0);
    CounterRng rng2(23, 0);
    double t01 = 0;
    for (int i = 0; i < draws; ++i) {
        const auto v = sample_general(identity, rng2);
        t01 += v[0] * v[1];
    }
    CHECK(std::fabs(t01 / draws) < 0.01);
}

TEST_CASE("cholesky route and one-factor route agree in distribution") {
    // two-sample KS distance on the max statistic, 1e5 draws each
    const int draws = 100000;
    const int n = 4;
    const double rho = 0.6;
    std::vector<double> max_a(draws), max_b(draws);
    const auto m = CorrelationMatrix::equicorrelated(n, rho);
    for (int i = 0; i < draws; ++i) {
        CounterRng ra(5, static_cast<std::uint64_t>(i));
        const auto va = sample_equicorrelated(n, rho, ra);
        max_a[i] = *std::max_element(va.begin(), va.end());
        CounterRng rb(6, static_cast<std::uint64_t>(i));
        const auto vb = sample_general(m, rb);
        max_b[i] = *std::max_element(vb.begin(), vb.end());
    }
    std::sort(max_a.begin(), max_a.end());
    std::sort(max_b.begin(), max_b.end());
    double ks = 0.0;
    std::size_t ja = 0, jb = 0;
    while (ja < max_a.size() && jb < max_b.size()) {
        if (max_a[ja] <= max_b[jb]) ++ja; else ++jb;
        ks = std::max(ks, std::fabs(static_cast<double>(ja) / draws -
                                    static_cast<double>(jb) / draws));
    }
    CHECK(ks < 0.01);
}

TEST_CASE("estimates recover closed-form anchors") {
    const TestProblem p(10, 0.3);
    {
        const auto est = estimate_fwer(p, Equicorrelation(0.0), 100000, 42);
        const double exact = 0.2625758731050719;  // 1 - (1 - 0.03)^10
        CHECK(std::fabs(est.fwer_hat - exact) <= 3.0 * est.std_error);
        CHECK(est.reps == 100000);
        CHECK(est.fwer_hat ==
              doctest::Approx(static_cast<double>(est.rejections_at_least_one) / 100000)
                  .epsilon(1e-15));
    }
    {
        const auto est = estimate_fwer(p, Equicorrelation(1.0), 100000, 42);
        CHECK(std::fabs(est.fwer_hat - 0.03) <= 3.0 * est.std_error);
    }
    {
        const auto est = estimate_fwer(p, Equicorrelation(0.5), 10000, 42);
        CHECK(std::fabs(est.fwer_hat - 0.1688) <= 0.02);
    }
    CHECK_THROWS_AS(estimate_fwer(p, Equicorrelation(0.5), 99, 42), std::invalid_argument);
}

TEST_CASE("estimate is deterministic and thread-count independent") {
    const TestProblem p(10, 0.3);
    const auto one = estimate_fwer(p, Equicorrelation(0.4), 20000, 2024, 1);
    const auto two = estimate_fwer(p, Equicorrelation(0.4), 20000, 2024, 2);
    const auto four = estimate_fwer(p, Equicorrelation(0.4), 20000, 2024, 4);
    CHECK(one.rejections_at_least_one == two.rejections_at_least_one);
    CHECK(one.rejections_at_least_one == four.rejections_at_least_one);
    CHECK(one.fwer_hat == two.fwer_hat);

    const auto m = CorrelationMatrix::equicorrelated(5, 0.3);
    const TestProblem pm(5, 0.2);
    const auto g1 = estimate_fwer(pm, m, 20000, 7, 1);
    const auto g3 = estimate_fwer(pm, m, 20000, 7, 3);
    CHECK(g1.rejections_at_least_one == g3.rejections_at_least_one);
}

TEST_CASE("estimator agrees with replaying the sampler replication by replication") {
    const TestProblem p(6, 0.25);
    const double rho = 0.35;
    const long long reps = 5000;
    long long manual = 0;
    for (long long r = 0; r < reps; ++r) {
        CounterRng rng(99, static_cast<std::uint64_t>(r));
        const auto v = sample_equicorrelated(6, rho, rng);
        if (*std::max_element(v.begin(), v.end()) > p.cutoff()) ++manual;
    }
    const auto est = estimate_fwer(p, Equicorrelation(rho), reps, 99);
    CHECK(est.rejections_at_least_one == manual);
}

TEST_CASE("sweep output") {
    const TestProblem p(10, 0.3);
    const auto rows = sweep(p, default_rho_grid(), 2000, 42, 2);
    REQUIRE(rows.size() == 41);
    CHECK(rows.front().rho == 0.0);
    CHECK(rows.back().rho == 1.0);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].rho > rows[i - 1].rho);
    }
    CHECK(rows.front().alpha_one_minus_rho == doctest::Approx(0.3).epsilon(1e-15));
    const double exact0 = 0.2625758731050719;
    CHECK(std::fabs(rows.front().fwer_hat - exact0) <= 3.0 * rows.front().std_error);

    const std::string csv = sweep_csv(rows);
    CHECK(csv.rfind("rho,fwer_hat,stderr,bound_value,bound_method,alpha_one_minus_rho\n", 0) ==
          0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 42);

    // byte-identical on re-run at a different worker count
    const auto rows2 = sweep(p, default_rho_grid(), 2000, 42, 3);
    CHECK(sweep_csv(rows2) == csv);
}

TEST_CASE("grid specs") {
    CHECK(parse_grid_spec("0:1:0.025").size() == 41);
    const auto single = parse_grid_spec("0.5:0.5:1");
    REQUIRE(single.size() == 1);
    CHECK(single[0] == 0.5);
    CHECK_THROWS_AS(parse_grid_spec("0:1:0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid_spec("1:0:0.1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid_spec("0:1.5:0.1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid_spec("nope"), std::invalid_argument);
}

TEST_CASE("monotone trend at n = 500") {
    const TestProblem p(500, 0.05);
    const auto low = estimate_fwer(p, Equicorrelation(0.1), 10000, 42, 2);
    const auto high = estimate_fwer(p, Equicorrelation(0.9), 10000, 42, 2);
    CHECK(high.fwer_hat < low.fwer_hat - 5.0 * low.std_error);
}
