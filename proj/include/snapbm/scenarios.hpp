#pragma once

#include <string>
#include <vector>

#include "snapbm/geometry.hpp"

namespace snapbm {

enum class NestedMode { Metastable, Outward };

/// Boundary circle of radius 2n+1 with barriers at radii 2n, 2n-1, ..., 1
/// (barrier i sits at radius 2n+1-i). Metastable mode biases the outer half
/// outward and the inner half inward (lambda_i^+ = lambda_base/bias,
/// lambda_i^- = lambda_base for i <= n, swapped for i > n); outward mode
/// biases every barrier outward.
DomainSpec nested_circles(int n, double lambda_base, double bias, NestedMode mode);

/// Unit-disk boundary with one circular barrier of radius Rb in (0,1).
DomainSpec disk_one_barrier(double Rb, double lambda_plus, double lambda_minus);

/// Unit disk, no barriers.
DomainSpec disk_plain();

/// Dimpled (nonconvex) spline boundary, no barriers.
DomainSpec nonconvex_spline();

/// Rounded-rectangle spline boundary with a few circular barriers inside.
DomainSpec cluttered_rectangleish();

struct Fixture {
    std::string name;
    DomainSpec domain;
    double kappa_min = 0.0, kappa_max = 0.0;  // expected ranges (0,0 = unspecified)
    double rho_min = 0.0, rho_max = 0.0;
};

/// Named fixtures with expected kappa/rho ranges, including the pathological
/// squiggle and near-parallel-barrier cases.
std::vector<Fixture> fixtures();

}  // namespace snapbm
