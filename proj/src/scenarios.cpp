#include "snapbm/scenarios.hpp"

#include <cmath>
#include <stdexcept>

namespace snapbm {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<Vec2> radial_curve(int n_points, double (*radius_at)(double)) {
    std::vector<Vec2> pts;
    pts.reserve(n_points);
    for (int i = 0; i < n_points; ++i) {
        double th = 2.0 * kPi * i / n_points;
        double r = radius_at(th);
        pts.push_back({r * std::cos(th), r * std::sin(th)});
    }
    return pts;
}

// boundary trace of a rounded rectangle, CCW, sampled uniformly in arc length
std::vector<Vec2> rounded_rect_points(double w, double h, double r, int n_points) {
    double ew = w - 2.0 * r, eh = h - 2.0 * r;
    double perim = 2.0 * (ew + eh) + 2.0 * kPi * r;
    std::vector<Vec2> pts;
    pts.reserve(n_points);
    for (int i = 0; i < n_points; ++i) {
        double s = perim * i / n_points;
        Vec2 p;
        if (s < ew) {  // bottom edge, left to right
            p = {-ew / 2.0 + s, -h / 2.0};
        } else if ((s -= ew) < kPi * r / 2.0) {  // bottom-right corner
            double a = -kPi / 2.0 + s / r;
            p = {ew / 2.0 + r * std::cos(a), -eh / 2.0 + r * std::sin(a)};
        } else if ((s -= kPi * r / 2.0) < eh) {  // right edge
            p = {w / 2.0, -eh / 2.0 + s};
        } else if ((s -= eh) < kPi * r / 2.0) {  // top-right corner
            double a = s / r;
            p = {ew / 2.0 + r * std::cos(a), eh / 2.0 + r * std::sin(a)};
        } else if ((s -= kPi * r / 2.0) < ew) {  // top edge, right to left
            p = {ew / 2.0 - s, h / 2.0};
        } else if ((s -= ew) < kPi * r / 2.0) {  // top-left corner
            double a = kPi / 2.0 + s / r;
            p = {-ew / 2.0 + r * std::cos(a), eh / 2.0 + r * std::sin(a)};
        } else if ((s -= kPi * r / 2.0) < eh) {  // left edge
            p = {-w / 2.0, eh / 2.0 - s};
        } else {  // bottom-left corner
            s -= eh;
            double a = kPi + s / r;
            p = {-ew / 2.0 + r * std::cos(a), -eh / 2.0 + r * std::sin(a)};
        }
        pts.push_back(p);
    }
    return pts;
}

}  // namespace

DomainSpec nested_circles(int n, double lambda_base, double bias, NestedMode mode) {
    if (n < 1) throw std::invalid_argument("nested_circles: n >= 1");
    if (!(lambda_base > 0.0) || !(bias > 1.0))
        throw std::invalid_argument("nested_circles: lambda_base > 0 and bias > 1");
    Curve boundary = Curve::circle({0.0, 0.0}, 2.0 * n + 1.0);
    std::vector<Barrier> bs;
    for (int i = 1; i <= 2 * n; ++i) {
        double radius = 2.0 * n + 1.0 - i;
        double lp, lm;
        if (mode == NestedMode::Outward) {
            lp = lambda_base / bias;
            lm = lambda_base;
        } else if (i <= n) {  // outer half: outward drift
            lp = lambda_base / bias;
            lm = lambda_base;
        } else {  // inner half: inward drift
            lp = lambda_base;
            lm = lambda_base / bias;
        }
        bs.push_back({Curve::circle({0.0, 0.0}, radius), lp, lm});
    }
    return DomainSpec(std::move(boundary), std::move(bs));
}

DomainSpec disk_one_barrier(double Rb, double lambda_plus, double lambda_minus) {
    if (!(Rb > 0.0) || !(Rb < 1.0))
        throw std::invalid_argument("disk_one_barrier: Rb in (0,1)");
    std::vector<Barrier> bs{{Curve::circle({0.0, 0.0}, Rb), lambda_plus, lambda_minus}};
    return DomainSpec(Curve::circle({0.0, 0.0}, 1.0), std::move(bs));
}

DomainSpec disk_plain() { return DomainSpec(Curve::circle({0.0, 0.0}, 1.0), {}); }

DomainSpec nonconvex_spline() {
    // dimpled limacon r = 1 - 0.9 cos(theta): smooth, simple, strongly
    // nonconvex near theta = 0
    auto pts = radial_curve(96, [](double th) { return 1.0 - 0.9 * std::cos(th); });
    return DomainSpec(Curve::closed_spline(std::move(pts)), {});
}

DomainSpec cluttered_rectangleish() {
    Curve boundary = Curve::closed_spline(rounded_rect_points(4.0, 2.0, 0.2, 96));
    std::vector<Barrier> bs;
    for (double cx : {-1.2, 0.0, 1.2})
        bs.push_back({Curve::circle({cx, 0.0}, 0.35), 1.0, 1.0});
    return DomainSpec(std::move(boundary), std::move(bs));
}

std::vector<Fixture> fixtures() {
    std::vector<Fixture> out;

    out.push_back({"disk_plain", disk_plain(), 0.999, 1.001, 1.5, 2.05});
    out.push_back({"disk_one_barrier", disk_one_barrier(0.5, 1.0, 1.0), 1.999, 2.001,
                   0.235, 0.265});
    out.push_back({"nested_circles_1", nested_circles(1, 1.0, 4.0, NestedMode::Metastable),
                   0.999, 1.001, 0.47, 0.53});
    // limacon r = 1 - 0.9 cos: curvature 0.08/0.001 = 80 at the dimple tip
    out.push_back({"nonconvex_spline", nonconvex_spline(), 60.0, 100.0, 0.0, 0.0});

    {
        // squiggle: wavy circle with strong curvature oscillation
        auto pts = radial_curve(192, [](double th) { return 1.0 + 0.08 * std::sin(12.0 * th); });
        out.push_back({"squiggle_spline",
                       DomainSpec(Curve::closed_spline(std::move(pts)), {}), 10.0, 30.0,
                       0.0, 0.0});
    }
    {
        // two nearly-touching concentric barriers, gap 0.05
        std::vector<Barrier> bs{{Curve::circle({0.0, 0.0}, 1.0), 1.0, 1.0},
                                {Curve::circle({0.0, 0.0}, 1.05), 1.0, 1.0}};
        out.push_back({"near_parallel_barriers",
                       DomainSpec(Curve::circle({0.0, 0.0}, 2.0), std::move(bs)), 0.95,
                       1.05, 0.02, 0.03});
    }
    // rho is set by the curvature pocket of the rounded corners (~1/kappa),
    // not by the inter-circle gaps
    out.push_back({"cluttered_rectangleish", cluttered_rectangleish(), 3.0, 12.0, 0.15, 0.25});
    return out;
}

}  // namespace snapbm
