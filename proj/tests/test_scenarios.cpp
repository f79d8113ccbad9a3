#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "snapbm/estimators.hpp"
#include "snapbm/scenarios.hpp"

using namespace snapbm;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("nested_circles layout") {
    DomainSpec d1 = nested_circles(1, 1.0, 4.0, NestedMode::Metastable);
    CHECK(*d1.boundary().circle_radius() == doctest::Approx(3.0));
    REQUIRE(d1.num_barriers() == 2);
    CHECK(*d1.barriers()[0].curve.circle_radius() == doctest::Approx(2.0));
    CHECK(*d1.barriers()[1].curve.circle_radius() == doctest::Approx(1.0));

    DomainSpec d2 = nested_circles(2, 1.0, 4.0, NestedMode::Metastable);
    CHECK(*d2.boundary().circle_radius() == doctest::Approx(5.0));
    REQUIRE(d2.num_barriers() == 4);
    // outer half (i <= n): outward drift, lambda_plus reduced
    CHECK(d2.barriers()[0].lambda_plus == doctest::Approx(0.25));
    CHECK(d2.barriers()[0].lambda_minus == doctest::Approx(1.0));
    CHECK(d2.barriers()[1].lambda_plus == doctest::Approx(0.25));
    // inner half (i > n): inward drift, lambda_minus reduced
    CHECK(d2.barriers()[2].lambda_plus == doctest::Approx(1.0));
    CHECK(d2.barriers()[2].lambda_minus == doctest::Approx(0.25));
    CHECK(d2.barriers()[3].lambda_minus == doctest::Approx(0.25));

    DomainSpec out = nested_circles(2, 1.0, 4.0, NestedMode::Outward);
    for (const Barrier& b : out.barriers()) {
        CHECK(b.lambda_plus == doctest::Approx(0.25));
        CHECK(b.lambda_minus == doctest::Approx(1.0));
    }
}

TEST_CASE("nested_circles geometry report") {
    for (int n : {1, 2}) {
        DomainSpec dom = nested_circles(n, 1.0, 4.0, NestedMode::Metastable);
        GeometryReport rep = geometry_report(dom);
        CHECK(rep.kappa == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(rep.rho == doctest::Approx(0.5).epsilon(0.02));
        CHECK(rep.delta == doctest::Approx(2.0 * (2 * n + 1)).epsilon(0.02));
    }
}

TEST_CASE("metastable swap symmetry") {
    // exchanging the halves and inverting radially (barrier i <-> 2n+1-i)
    // swaps lambda_plus with lambda_minus
    for (int n : {1, 2, 3}) {
        DomainSpec dom = nested_circles(n, 1.0, 4.0, NestedMode::Metastable);
        int m = dom.num_barriers();
        for (int i = 1; i <= m; ++i) {
            const Barrier& a = dom.barriers()[i - 1];
            const Barrier& b = dom.barriers()[m - i];
            CHECK(a.lambda_plus == doctest::Approx(b.lambda_minus));
            CHECK(a.lambda_minus == doctest::Approx(b.lambda_plus));
        }
    }
}

TEST_CASE("disk_one_barrier") {
    DomainSpec dom = disk_one_barrier(0.5, 1.0, 1.0);
    CHECK(*dom.boundary().circle_radius() == doctest::Approx(1.0));
    CHECK(*dom.barriers()[0].curve.circle_radius() == doctest::Approx(0.5));
    // inner area fraction (0.5)^2
    double frac = dom.barriers()[0].curve.enclosed_area() / area(dom);
    CHECK(frac == doctest::Approx(0.25).epsilon(1e-12));

    CHECK_THROWS_AS(disk_one_barrier(1.5, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(disk_one_barrier(0.5, 0.0, 1.0), InvalidDomain);
}

TEST_CASE("inward-trapping rates skew the occupancy inward") {
    DomainSpec dom = disk_one_barrier(0.5, 10.0, 0.1);
    SimConfig cfg;
    cfg.dt = 2e-3;
    cfg.seed = 19;
    cfg.particles = 2000;
    cfg.t_final = 20.0;
    Ensemble ens = simulate_paths_from(
        dom, cfg, [&](long, CounterRng& rng) { return uniform_point_in_domain(dom, rng); });
    double inner = 0.0;
    for (const ParticleState& st : ens.finals)
        if (st.position.norm() < 0.5) inner += 1.0;
    inner /= cfg.particles;
    double se = std::sqrt(inner * (1.0 - inner) / cfg.particles);
    CHECK(inner - 3.0 * se > 0.25);  // one-sided: well above the area fraction
}

TEST_CASE("fixtures pass their expected parameter ranges") {
    for (const Fixture& f : fixtures()) {
        CAPTURE(f.name);
        // construction itself enforces the domain invariants; spot-check the
        // advertised kappa/rho windows
        double kappa = max_curvature(f.domain);
        if (f.kappa_max > 0.0) {
            CHECK(kappa >= f.kappa_min);
            CHECK(kappa <= f.kappa_max);
        }
        if (f.rho_max > 0.0) {
            double rho = separation_rho(f.domain);
            CHECK(rho >= f.rho_min);
            CHECK(rho <= f.rho_max);
        }
    }
}

TEST_CASE("squiggle fixture has at least 10x the smooth curvature") {
    double smooth = max_curvature(disk_plain());
    double squiggle = 0.0;
    for (const Fixture& f : fixtures())
        if (f.name == "squiggle_spline") squiggle = max_curvature(f.domain);
    CHECK(squiggle >= 10.0 * smooth);
}

TEST_CASE("near-parallel fixture detects the small gap") {
    for (const Fixture& f : fixtures()) {
        if (f.name != "near_parallel_barriers") continue;
        double rho = separation_rho(f.domain);
        CHECK(rho == doctest::Approx(0.025).epsilon(0.05));
    }
}

TEST_CASE("disk_plain fixture values") {
    DomainSpec dom = disk_plain();
    CHECK(max_curvature(dom) == doctest::Approx(1.0));
    CHECK(geodesic_diameter(dom) == doctest::Approx(2.0).epsilon(0.02));
    CHECK(area(dom) == doctest::Approx(kPi).epsilon(1e-9));
}
