#include "snapbm/bounds.hpp"

#include <cmath>

namespace snapbm {

namespace {

constexpr double kLn10 = 2.302585092994045684;

struct LogBounds {
    double log10_tmix;
    double log10_pimin;
};

LogBounds eval_log(double delta, double R, double lambda_min, double area) {
    double exponent = delta / R;
    double log_base = std::log(R * lambda_min);
    double log_tmix = 2.0 * std::log(delta) - exponent * log_base;
    double log_pimin = exponent * log_base - std::log(area);
    return {log_tmix / kLn10, log_pimin / kLn10};
}

}  // namespace

BoundReport theorem_bounds(const GeometryReport& report) {
    if (!report.lambda_min.has_value() || !report.lambda_max.has_value())
        throw NoBarriers(
            "theorem_bounds: no barriers; the process is classical reflected "
            "Brownian motion and the bounds are vacuous");

    BoundReport out;
    out.R = report.R;
    out.c_used = report.c;
    out.delta = report.delta;
    out.area = report.area;
    out.lambda_min = *report.lambda_min;
    out.base = report.R / report.c;

    LogBounds lb = eval_log(out.delta, out.R, out.lambda_min, out.area);
    out.log10_tmix_upper = lb.log10_tmix;
    out.log10_pimin_lower = lb.log10_pimin;
    out.tmix_upper = std::pow(10.0, lb.log10_tmix);
    out.pimin_lower = std::pow(10.0, lb.log10_pimin);
    return out;
}

double doeblin_to_tmix(double C, double T, double area) {
    double p = C * area;
    if (!(p > 0.0) || !(p < 1.0))
        throw InvalidMinorization("doeblin_to_tmix: C*area must lie in (0,1)");
    if (!(T > 0.0)) throw InvalidMinorization("doeblin_to_tmix: T must be positive");
    double n = std::ceil(std::log(0.25) / std::log(1.0 - p));
    return T * n;
}

void consistency_check(BoundReport& report) {
    if (!report.empirical_tmix.has_value() || !report.empirical_pimin.has_value()) {
        report.evaluated = false;
        return;
    }
    report.evaluated = true;

    auto holds_at = [&](double c) {
        double R = c * report.base;
        LogBounds lb = eval_log(report.delta, R, report.lambda_min, report.area);
        bool tmix_ok = std::log10(*report.empirical_tmix) <= lb.log10_tmix;
        bool pimin_ok = *report.empirical_pimin > 0.0 &&
                        std::log10(*report.empirical_pimin) >= lb.log10_pimin;
        return std::pair<bool, bool>{tmix_ok, pimin_ok};
    };

    auto [t_ok, p_ok] = holds_at(report.c_used);
    report.tmix_ok = t_ok;
    report.pimin_ok = p_ok;

    report.minimal_passing_c.reset();
    for (int k = -10; k <= 10; ++k) {
        double c = std::ldexp(1.0, k);
        auto [a, b] = holds_at(c);
        if (a && b) {
            report.minimal_passing_c = c;
            break;
        }
    }
}

}  // namespace snapbm
