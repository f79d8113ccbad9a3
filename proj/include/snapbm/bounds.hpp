#pragma once

#include <optional>

#include "snapbm/geometry.hpp"

namespace snapbm {

struct BoundReport {
    double R = 0.0;
    double c_used = 1.0;
    double delta = 0.0;
    double area = 0.0;
    double lambda_min = 0.0;
    double base = 0.0;  // min{1/kappa, 1/lambda_max, rho} (R without c)

    // log-space values are always finite; the direct values may overflow to
    // inf / underflow to 0
    double log10_tmix_upper = 0.0;
    double log10_pimin_lower = 0.0;
    double tmix_upper = 0.0;   // Delta^2 (R lambda_min)^(-Delta/R)
    double pimin_lower = 0.0;  // (R lambda_min)^(Delta/R) / Area(D)

    std::optional<double> empirical_tmix;
    std::optional<double> empirical_pimin;

    // consistency flags (set by consistency_check)
    bool evaluated = false;
    bool tmix_ok = false;
    bool pimin_ok = false;
    std::optional<double> minimal_passing_c;
};

/// Worst-case bound formulas evaluated from the geometric parameters.
/// Computed in log space; throws NoBarriers when lambda_min is absent.
BoundReport theorem_bounds(const GeometryReport& report);

/// mixing-time bound from a minorization constant:
/// T * ceil(ln(1/4) / ln(1 - C*area)); throws InvalidMinorization unless
/// C*area lies in (0,1)
double doeblin_to_tmix(double C, double T, double area);

/// Compares the empirical estimates against the formula values at the
/// configured c, and reports the smallest dyadic c in [2^-10, 2^10] at which
/// both comparisons hold (a diagnostic for the unspecified absolute
/// constant). No-op if the empirical fields are absent.
void consistency_check(BoundReport& report);

}  // namespace snapbm
