#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "snapbm/bounds.hpp"
#include "snapbm/rng.hpp"

using namespace snapbm;

namespace {

constexpr double kPi = 3.14159265358979323846;

GeometryReport synthetic(double delta, double R, double lambda_min, double area) {
    GeometryReport rep;
    rep.delta = delta;
    rep.R = R;
    rep.c = 1.0;
    rep.area = area;
    rep.lambda_min = lambda_min;
    rep.lambda_max = lambda_min;
    rep.kappa = 1.0 / R;  // consistent filler values
    rep.rho = R;
    return rep;
}

}  // namespace

TEST_CASE("theorem bound formulas, hand-computed values") {
    SUBCASE("Delta=2, R=0.5, lambda_min=1, Area=pi") {
        BoundReport b = theorem_bounds(synthetic(2.0, 0.5, 1.0, kPi));
        CHECK(b.tmix_upper == doctest::Approx(64.0).epsilon(1e-9));          // 4 * 2^4
        CHECK(b.pimin_lower == doctest::Approx(0.0625 / kPi).epsilon(1e-9));  // 2^-4 / pi
    }
    SUBCASE("Delta=10, R=0.5, lambda_min=1: exponential growth in Delta/R") {
        BoundReport b = theorem_bounds(synthetic(10.0, 0.5, 1.0, kPi));
        CHECK(b.tmix_upper == doctest::Approx(100.0 * 1048576.0).epsilon(1e-9));  // 100*2^20
    }
    SUBCASE("unit base R*lambda_min = 1") {
        BoundReport b = theorem_bounds(synthetic(3.0, 2.0, 0.5, 7.0));
        CHECK(b.tmix_upper == doctest::Approx(9.0).epsilon(1e-9));       // Delta^2
        CHECK(b.pimin_lower == doctest::Approx(1.0 / 7.0).epsilon(1e-9));  // 1/Area
    }
    SUBCASE("no barriers: vacuous") {
        GeometryReport rep = synthetic(2.0, 0.5, 1.0, kPi);
        rep.lambda_min.reset();
        rep.lambda_max.reset();
        CHECK_THROWS_AS(theorem_bounds(rep), NoBarriers);
    }
}

TEST_CASE("log-space evaluation matches direct evaluation") {
    CounterRng rng(64, 0);
    for (int it = 0; it < 200; ++it) {
        double delta = 0.5 + 5.0 * rng.uniform01();
        double R = 0.05 + 0.5 * rng.uniform01();
        double lmin = 0.05 + 2.0 * rng.uniform01();
        double area = 0.5 + 20.0 * rng.uniform01();
        BoundReport b = theorem_bounds(synthetic(delta, R, lmin, area));
        double direct_tmix = delta * delta * std::pow(R * lmin, -delta / R);
        double direct_pimin = std::pow(R * lmin, delta / R) / area;
        if (std::isfinite(direct_tmix) && direct_tmix > 0.0)
            CHECK(b.tmix_upper == doctest::Approx(direct_tmix).epsilon(1e-9));
        if (std::isfinite(direct_pimin) && direct_pimin > 0.0)
            CHECK(b.pimin_lower == doctest::Approx(direct_pimin).epsilon(1e-9));
        if (R * lmin <= 1.0) {
            CHECK(b.pimin_lower > 0.0);
            CHECK(b.pimin_lower <= 1.0 / area + 1e-15);
        }
    }
}

TEST_CASE("monotonicity in R at fixed Delta, lambda_min") {
    CounterRng rng(65, 0);
    int done = 0;
    while (done < 100) {
        double delta = 0.5 + 5.0 * rng.uniform01();
        double lmin = 0.05 + 1.0 * rng.uniform01();
        double r1 = 0.02 + 0.5 * rng.uniform01();
        double r2 = r1 * (1.0 + rng.uniform01());
        if (r2 * lmin >= 1.0) continue;
        BoundReport b1 = theorem_bounds(synthetic(delta, r1, lmin, kPi));
        BoundReport b2 = theorem_bounds(synthetic(delta, r2, lmin, kPi));
        CHECK(b2.log10_tmix_upper <= b1.log10_tmix_upper + 1e-12);
        CHECK(b2.log10_pimin_lower >= b1.log10_pimin_lower - 1e-12);
        ++done;
    }
}

TEST_CASE("doeblin_to_tmix formula") {
    CHECK(doeblin_to_tmix(0.75 / 1.0, 1.0, 1.0) == doctest::Approx(1.0));
    CHECK(doeblin_to_tmix(0.5, 2.0, 1.0) == doctest::Approx(4.0));  // 2*ceil(ln4/ln2)

    SUBCASE("diverges monotonically as C -> 0") {
        double prev = 0.0;
        for (double c : {0.5, 0.25, 0.1, 0.01, 1e-4, 1e-8}) {
            double t = doeblin_to_tmix(c, 1.0, 1.0);
            CHECK(t >= prev);
            prev = t;
        }
        CHECK(prev >= 1e7);
    }
    SUBCASE("output is a positive integer multiple of T") {
        CounterRng rng(66, 0);
        for (int it = 0; it < 100; ++it) {
            double T = 0.1 + 3.0 * rng.uniform01();
            double c_area = 0.01 + 0.98 * rng.uniform01();
            double t = doeblin_to_tmix(c_area / kPi, T, kPi);
            double ratio = t / T;
            CHECK(ratio == doctest::Approx(std::round(ratio)).epsilon(1e-12));
            CHECK(ratio >= 1.0);
        }
    }
    SUBCASE("invalid minorization") {
        CHECK_THROWS_AS(doeblin_to_tmix(0.0, 1.0, 1.0), InvalidMinorization);
        CHECK_THROWS_AS(doeblin_to_tmix(1.5, 1.0, 1.0), InvalidMinorization);
        CHECK_THROWS_AS(doeblin_to_tmix(0.5, -1.0, 1.0), InvalidMinorization);
    }
}

TEST_CASE("consistency_check flags") {
    SUBCASE("empirical values inside the bounds at c=1") {
        BoundReport b = theorem_bounds(synthetic(2.0, 0.25, 1.0, kPi));
        b.empirical_tmix = 1.5;       // far below 4*4^4
        b.empirical_pimin = 0.25;     // far above 4^-8/pi
        consistency_check(b);
        CHECK(b.evaluated);
        CHECK(b.tmix_ok);
        CHECK(b.pimin_ok);
        REQUIRE(b.minimal_passing_c.has_value());
        CHECK(*b.minimal_passing_c <= 64.0);
    }
    SUBCASE("violating empirical mixing time is flagged with a passing c") {
        BoundReport b = theorem_bounds(synthetic(2.0, 0.5, 1.0, kPi));
        b.empirical_tmix = 1e9;  // above 64
        b.empirical_pimin = 0.25;
        consistency_check(b);
        CHECK(b.evaluated);
        CHECK(!b.tmix_ok);
        if (b.minimal_passing_c) {
            double c = *b.minimal_passing_c;
            BoundReport probe = theorem_bounds(synthetic(2.0, c * 0.5, 1.0, kPi));
            CHECK(std::log10(1e9) <= probe.log10_tmix_upper);
        }
    }
    SUBCASE("missing empirical values: not evaluated") {
        BoundReport b = theorem_bounds(synthetic(2.0, 0.5, 1.0, kPi));
        consistency_check(b);
        CHECK(!b.evaluated);
    }
}
