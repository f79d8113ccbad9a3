#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "snapbm/proofcheck.hpp"
#include "snapbm/scenarios.hpp"

using namespace snapbm;

TEST_CASE("pill event constraint checks") {
    CHECK_THROWS_AS(pill_event_probability(1.0, {2.0, 0.0}, 0.1, 0.5, 100, 1),
                    ConstraintViolation);  // |y| > R
    CHECK_THROWS_AS(pill_event_probability(1.0, {0.0, 0.0}, 0.4, 0.5, 100, 1),
                    ConstraintViolation);  // eps > gamma R / 2
    CHECK_THROWS_AS(pill_event_probability(1.0, {0.0, 0.0}, 0.1, 1.5, 100, 1),
                    ConstraintViolation);  // gamma outside (0,1)
}

TEST_CASE("pill event against the finer-dt oracle") {
    // same estimator at dt = R^2/16384 serves as the refined-scheme oracle;
    // N is sized so 3*CI dominates the small time-discretization bias
    long N = 30000;
    EstimateCI coarse = pill_event_probability(1.0, {0.0, 0.0}, 0.4, 0.9, N, 1234, 2048);
    EstimateCI fine = pill_event_probability(1.0, {0.0, 0.0}, 0.4, 0.9, N, 4321, 16384);
    double spread = 3.0 * std::hypot(coarse.ci_high - coarse.estimate,
                                     fine.ci_high - fine.estimate) / 1.96;
    CHECK(std::abs(coarse.estimate - fine.estimate) <= spread);
}

TEST_CASE("pill event quadratic scaling in eps") {
    // gamma = 0.8: tube survival ~ exp(-j0^2/(2 gamma^2)) is large enough to
    // resolve the ratio; shared seed nests the eps/2 hits inside the eps hits
    long N = 300000;
    EstimateCI p1 = pill_event_probability(1.0, {0.0, 0.0}, 0.30, 0.8, N, 99, 2048);
    EstimateCI p2 = pill_event_probability(1.0, {0.0, 0.0}, 0.15, 0.8, N, 99, 2048);
    REQUIRE(p2.estimate > 0.0);
    double ratio = p1.estimate / p2.estimate;
    CHECK(ratio >= 3.2);
    CHECK(ratio <= 4.8);
}

TEST_CASE("pill event scale invariance in R") {
    long N = 100000;
    EstimateCI a = pill_event_probability(1.0, {0.3, 0.2}, 0.25, 0.8, N, 7, 2048);
    EstimateCI b = pill_event_probability(2.0, {0.6, 0.4}, 0.50, 0.8, N, 8, 2048);
    double spread = 3.0 * std::hypot(a.ci_high - a.estimate, b.ci_high - b.estimate) / 1.96;
    CHECK(std::abs(a.estimate - b.estimate) <= spread);
    CHECK(a.estimate > 0.0);  // the event must actually be resolvable
}

TEST_CASE("pill event monotonicity in gamma and eps") {
    long N = 50000;
    EstimateCI wide = pill_event_probability(1.0, {0.0, 0.0}, 0.10, 0.8, N, 17, 1024);
    EstimateCI narrow = pill_event_probability(1.0, {0.0, 0.0}, 0.10, 0.4, N, 18, 1024);
    double slack = 3.0 * (wide.ci_high - wide.estimate + narrow.ci_high - narrow.estimate) / 1.96;
    CHECK(narrow.estimate <= wide.estimate + slack);

    EstimateCI small_eps = pill_event_probability(1.0, {0.0, 0.0}, 0.05, 0.8, N, 19, 1024);
    CHECK(small_eps.estimate <= wide.estimate + slack);
}

TEST_CASE("confidence intervals shrink like 1/sqrt(N)") {
    double prev_width = -1.0;
    for (long N : {10000L, 100000L, 1000000L}) {
        EstimateCI e = pill_event_probability(1.0, {0.0, 0.0}, 0.45, 0.9, N, 23, 1024);
        CHECK(e.estimate >= 0.0);
        CHECK(e.estimate <= 1.0);
        CHECK(e.ci_low >= 0.0);
        CHECK(e.ci_high <= 1.0);
        double width = e.ci_high - e.ci_low;
        if (prev_width > 0.0) {
            double shrink = prev_width / width;
            CHECK(shrink >= std::sqrt(10.0) * 0.8);
            CHECK(shrink <= std::sqrt(10.0) * 1.2);
        }
        prev_width = width;
    }
}

TEST_CASE("crossing probability vanishes in the impermeable limit") {
    CrossingProtocol proto;
    CrossingScalingResult r = crossing_probability_scaling({1e-6}, 20000, 5, proto);
    CHECK(r.probabilities[0].estimate <= 1e-4);
}

TEST_CASE("crossing probability halves with the rate") {
    CrossingProtocol proto;
    std::vector<double> lambdas{0.4, 0.2, 0.1, 0.05};
    CrossingScalingResult r = crossing_probability_scaling(lambdas, 150000, 6, proto);
    REQUIRE(r.probabilities[0].estimate < 0.1);  // small-lambda regime
    for (double ratio : r.ratios) {
        CHECK(ratio >= 1.6);
        CHECK(ratio <= 2.4);
    }
    CHECK(r.slope > 0.0);
}

TEST_CASE("same-side target probability is rate independent") {
    CrossingProtocol proto;
    proto.target_center = {0.25, 0.0};  // same side of the barrier as the start
    proto.target_radius = 0.12;
    std::vector<double> lambdas{0.4, 0.2, 0.1, 0.05};
    CrossingScalingResult r = crossing_probability_scaling(lambdas, 100000, 7, proto);
    for (double ratio : r.ratios) {
        CHECK(ratio >= 0.8);
        CHECK(ratio <= 1.25);
    }
}

TEST_CASE("time reversal uniformity") {
    SUBCASE("started uniform, T=0 stays uniform up to sampling noise") {
        UniformityResult r =
            time_reversal_uniformity(disk_plain(), 0.0, 30000, 11, 2.0 / 14.0);
        CHECK(r.tv <= 0.05);
        CHECK(r.pass);
    }
    SUBCASE("unit disk at T=8") {
        UniformityResult r =
            time_reversal_uniformity(disk_plain(), 8.0, 30000, 12, 2.0 / 16.0, std::nullopt,
                                     2e-3);
        CHECK(r.tv <= 0.05);
        CHECK(r.pass);
    }
    SUBCASE("annulus component of the nested domain") {
        DomainSpec dom = nested_circles(1, 1.0, 4.0, NestedMode::Metastable);
        UniformityResult r = time_reversal_uniformity(dom, 8.0, 50000, 13, 0.15,
                                                      Vec2{1.5, 0.0}, 2e-3);
        CHECK(r.tv <= 0.05);
        CHECK(r.pass);
    }
}
