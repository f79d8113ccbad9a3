#pragma once

#include <optional>
#include <vector>

#include "snapbm/estimators.hpp"

namespace snapbm {

struct EstimateCI {
    double estimate = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    long n = 0;
};

/// Monte Carlo probability that a free planar Brownian path reaches B(y,eps)
/// at time R^2 while staying inside the moving tube of radius gamma*R around
/// the straight line towards y. Euler grid of R^2/steps_per_horizon; 95% CI.
/// Throws ConstraintViolation unless |y| <= R, 0 < gamma < 1 and
/// eps <= gamma*R/2.
EstimateCI pill_event_probability(double R, Vec2 y, double eps, double gamma, long N,
                                  uint64_t seed, int steps_per_horizon = 2048,
                                  int threads = 1);

struct CrossingProtocol {
    double barrier_radius = 0.5;
    Vec2 start{0.0, 0.0};
    Vec2 target_center{0.75, 0.0};
    double target_radius = 0.12;
    double horizon = 0.5;
    double dt = 1e-3;
};

struct CrossingScalingResult {
    std::vector<double> lambdas;
    std::vector<EstimateCI> probabilities;
    std::vector<double> ratios;  // p(lambda_k) / p(lambda_{k+1})
    double slope = 0.0;          // least-squares slope of p against lambda, through 0
};

/// Probability of ending in a fixed target ball across (or beside) the
/// single circular barrier of a unit disk, for a list of symmetric rates.
/// Common random numbers across the rate arms tighten the ratio estimates.
CrossingScalingResult crossing_probability_scaling(const std::vector<double>& lambdas, long N,
                                                   uint64_t seed, const CrossingProtocol& proto,
                                                   int threads = 1);

struct UniformityResult {
    double tv = 0.0;
    double T = 0.0;
    long N = 0;
    bool pass = false;  // tv <= 0.05
};

/// With every permeability forced to 1e-9 the process is classical reflected
/// Brownian motion per component; started uniform, the law at T is compared
/// against the uniform reference. With `component_of` set, starts and the TV
/// computation are restricted to the component containing that point.
UniformityResult time_reversal_uniformity(const DomainSpec& domain, double T, long N,
                                          uint64_t seed, double grid_pitch,
                                          std::optional<Vec2> component_of = std::nullopt,
                                          double dt = 1e-3, int threads = 1);

}  // namespace snapbm
