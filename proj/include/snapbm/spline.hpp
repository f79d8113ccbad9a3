#pragma once

#include <vector>

#include "snapbm/vec2.hpp"

namespace snapbm {

/// C2 periodic cubic spline through control points with uniform knots.
/// Parameter t lives on [0, n) where n is the number of control points.
class PeriodicCubicSpline {
public:
    explicit PeriodicCubicSpline(std::vector<Vec2> points);

    int size() const { return static_cast<int>(pts_.size()); }
    Vec2 position(double t) const;
    Vec2 derivative(double t) const;
    Vec2 second_derivative(double t) const;
    double curvature(double t) const;

private:
    std::vector<Vec2> pts_;
    std::vector<Vec2> m_;  // knot second derivatives
    void locate(double t, int& i, int& j, double& s) const;
};

}  // namespace snapbm
