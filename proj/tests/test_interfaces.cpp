#include "doctest.h"

#include <cmath>
#include <string>

#include "fwer/bounds_general.hpp"
#include "fwer/certification.hpp"
#include "fwer/monte_carlo.hpp"
#include "fwer/serialize.hpp"
#include "fwer/special_functions.hpp"
#include "fwer/svg_chart.hpp"

#include "json.hpp"

using namespace fwer;
using nlohmann::json;

TEST_CASE("bound result serialization follows the schema") {
    const TestProblem p(100, 0.05);
    const auto result = best_bound(p, Equicorrelation(0.3));
    const auto j = json::parse(bound_result_to_json(p, 0.3, result));

    for (const char* key :
         {"n", "alpha", "x", "rho", "method", "value", "applicable", "conditions", "terms"}) {
        CHECK(j.contains(key));
    }
    CHECK(j["n"] == 100);
    CHECK(j["alpha"] == 0.05);
    CHECK(j["rho"] == 0.3);
    CHECK(j["value"].get<double>() <= 0.05);
    CHECK(j["applicable"].get<bool>());
    CHECK(j["conditions"].is_array());
    for (const auto& c : j["conditions"]) {
        CHECK(c.contains("predicate"));
        CHECK(c.contains("pass"));
    }
    const auto& terms = j["terms"];
    CHECK(terms.contains("alpha_term"));
    CHECK(terms.contains("quadratic_term"));
    CHECK(terms.contains("correlation_term"));
    const double recomposed = terms["alpha_term"].get<double>() -
                              terms["quadratic_term"].get<double>() -
                              terms["correlation_term"].get<double>();
    CHECK(std::fabs(recomposed - j["value"].get<double>()) < 1e-9);

    // matrix-driven results serialize rho as null
    const auto m = CorrelationMatrix::equicorrelated(100, 0.3);
    const auto jm = json::parse(bound_result_to_json(p, std::nullopt, best_bound_general(p, m)));
    CHECK(jm["rho"].is_null());
}

TEST_CASE("certification serialization follows the schema") {
    const auto report = certify_table(
        "G", {{1e-4, 2.2, 0.0}},
        [](double x) { return threshold_G(x) - std_normal_sf(x); }, 1e-3);
    const auto j = json::parse(certification_to_json(report));
    CHECK(j["table_id"] == "G");
    CHECK(j["pass"].get<bool>());
    REQUIRE(j["intervals"].is_array());
    REQUIRE(j["intervals"].size() == 1);
    for (const char* key : {"x_start", "x_end", "constant", "grid_min", "pass"}) {
        CHECK(j["intervals"][0].contains(key));
    }
}

TEST_CASE("estimate serialization") {
    const TestProblem p(10, 0.3);
    const auto est = estimate_fwer(p, Equicorrelation(0.5), 1000, 42);
    const auto j = json::parse(sim_estimate_to_json(p, 0.5, est));
    CHECK(j["reps"] == 1000);
    CHECK(j["seed"] == 42);
    CHECK(j["fwer_hat"].get<double>() ==
          doctest::Approx(round_sig(est.fwer_hat)).epsilon(1e-12));
    CHECK(j["rejections_at_least_one"] == est.rejections_at_least_one);
    CHECK(j.contains("stderr"));
}

TEST_CASE("round_sig keeps ten significant digits") {
    CHECK(round_sig(0.123456789012345) == 0.1234567890);
    CHECK(round_sig(1.0) == 1.0);
    CHECK(round_sig(0.0) == 0.0);
    CHECK(round_sig(3.141592653589793, 4) == 3.142);
}

TEST_CASE("svg chart renders axes, series and legend") {
    SvgLineChart chart("fwer sweep", "rho", "probability");
    chart.add_series("estimate", "#d62728", {{0.0, 0.26}, {0.5, 0.17}, {1.0, 0.03}});
    chart.add_series("bound", "#1f77b4", {{0.0, 0.29}, {0.5, 0.27}, {1.0, 0.25}});
    const std::string svg = chart.render();

    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("fwer sweep") != std::string::npos);
    CHECK(svg.find("estimate") != std::string::npos);
    CHECK(svg.find("bound") != std::string::npos);
    std::size_t polylines = 0;
    for (std::size_t pos = svg.find("<polyline"); pos != std::string::npos;
         pos = svg.find("<polyline", pos + 1)) {
        ++polylines;
    }
    CHECK(polylines == 2);
}
