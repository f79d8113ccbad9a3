#include "snapbm/estimators.hpp"

#include <algorithm>
#include <cmath>

namespace snapbm {

StationaryResult stationary_estimate(const DomainSpec& domain, const SimConfig& cfg,
                                     double burn_in, const GridPtr& grid, int n_snapshots,
                                     int threads) {
    if (!(burn_in < cfg.t_final))
        throw std::invalid_argument("stationary_estimate: burn_in must be below t_final");

    std::vector<double> times(n_snapshots);
    for (int j = 0; j < n_snapshots; ++j)
        times[j] = burn_in + (j + 1) * (cfg.t_final - burn_in) / n_snapshots;

    Ensemble ens = simulate_paths_from(
        domain, cfg,
        [&domain](long, CounterRng& rng) { return uniform_point_in_domain(domain, rng); },
        times, threads);

    std::vector<Vec2> pooled, first_half, second_half;
    pooled.reserve(times.size() * cfg.particles);
    for (size_t j = 0; j < ens.snapshots.size(); ++j) {
        auto& dst = (j < ens.snapshots.size() / 2) ? first_half : second_half;
        for (const Vec2& p : ens.snapshots[j]) {
            pooled.push_back(p);
            dst.push_back(p);
        }
    }

    StationaryResult out;
    out.pi_hat = histogram_from_points(grid, pooled);
    out.pooled_samples = static_cast<long>(pooled.size());
    out.snapshot_times = times;
    if (!first_half.empty() && !second_half.empty()) {
        out.split_half_tv = tv_distance(histogram_from_points(grid, first_half),
                                        histogram_from_points(grid, second_half));
        out.converged = out.split_half_tv <= 0.05;
    }
    return out;
}

PiMinResult pi_min_estimate(const GridHistogram& pi_hat, long pooled_samples) {
    PiMinResult out;
    const GridSpec& g = *pi_hat.grid;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < g.num_cells(); ++i) {
        double density = pi_hat.mass[i] / g.cell_areas()[i];
        if (density < best) {
            best = density;
            out.cell_index = i;
        }
    }
    out.value = best;
    out.cell_center = g.cell_centers()[out.cell_index];
    out.min_cell_count = pi_hat.mass[out.cell_index] * static_cast<double>(pooled_samples);
    out.small_sample_warning = out.min_cell_count < 5.0;
    return out;
}

std::vector<Vec2> make_start_mesh(const DomainSpec& domain, double pitch) {
    std::vector<Vec2> mesh;
    const Vec2 lo = domain.bbox_min();
    const Vec2 hi = domain.bbox_max();
    int nx = static_cast<int>((hi.x - lo.x) / pitch) + 1;
    int ny = static_cast<int>((hi.y - lo.y) / pitch) + 1;
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i) {
            Vec2 p{lo.x + i * pitch, lo.y + j * pitch};
            if (domain.contains(p) && domain.boundary().distance(p) > 1e-3 * pitch)
                mesh.push_back(p);
        }

    // deepest interior point behind (inside) each barrier, scanned on a
    // finer grid; the worst starts typically hide there
    double fine = pitch / 4.0;
    int fnx = static_cast<int>((hi.x - lo.x) / fine) + 1;
    int fny = static_cast<int>((hi.y - lo.y) / fine) + 1;
    for (int b = 0; b < domain.num_barriers(); ++b) {
        const Curve& c = domain.barriers()[b].curve;
        Vec2 best_p;
        double best_d = -1.0;
        for (int j = 0; j <= fny; ++j)
            for (int i = 0; i <= fnx; ++i) {
                Vec2 p{lo.x + i * fine, lo.y + j * fine};
                if (c.side(p, domain.tau_geo()) < 0) continue;
                if (!domain.contains(p)) continue;
                double d = domain.boundary().distance(p);
                for (int k = 0; k < domain.num_barriers(); ++k)
                    d = std::min(d, domain.barriers()[k].curve.distance(p));
                if (d > best_d) {
                    best_d = d;
                    best_p = p;
                }
            }
        if (best_d > 0.0) mesh.push_back(best_p);
    }
    return mesh;
}

MixingEstimate mixing_time_estimate(const DomainSpec& domain, const SimConfig& cfg,
                                    const std::vector<Vec2>& start_mesh,
                                    const std::vector<double>& snapshot_times,
                                    const GridHistogram& pi_hat, double threshold,
                                    int threads) {
    MixingEstimate out;
    out.threshold = threshold;
    out.starts = start_mesh;

    std::vector<double> times = snapshot_times;
    std::sort(times.begin(), times.end());
    std::vector<double> worst_tv(times.size(), 0.0);

    for (size_t s = 0; s < start_mesh.size(); ++s) {
        SimConfig sub = cfg;
        sub.seed = derive_seed(cfg.seed, s);  // independent noise per start
        Ensemble ens = simulate_paths(domain, sub, start_mesh[s], nullptr, times, threads);
        for (size_t j = 0; j < times.size(); ++j) {
            double tv = tv_distance(histogram_from_points(pi_hat.grid, ens.snapshots[j]),
                                    pi_hat);
            out.tv_curve.push_back({start_mesh[s], times[j], tv});
            worst_tv[j] = std::max(worst_tv[j], tv);
        }
    }

    for (size_t j = 0; j < times.size(); ++j) {
        if (worst_tv[j] <= threshold) {
            out.t_mix_hat = times[j];
            out.bounded = true;
            break;
        }
    }
    out.horizon_too_short = !out.bounded;
    return out;
}

DoeblinEstimate doeblin_constant(const DomainSpec& domain, const SimConfig& cfg, double T,
                                 const std::vector<Vec2>& start_mesh, const GridPtr& grid,
                                 int threads) {
    if (!(T > 0.0)) throw std::invalid_argument("doeblin_constant: T must be positive");
    const double z = 1.6448536269514722;  // one-sided 95%

    DoeblinEstimate out;
    out.T = T;
    out.C_hat = std::numeric_limits<double>::infinity();

    SimConfig sub = cfg;
    sub.t_final = T;
    for (size_t s = 0; s < start_mesh.size(); ++s) {
        sub.seed = derive_seed(cfg.seed, s);
        Ensemble ens = simulate_paths(domain, sub, start_mesh[s], nullptr, {T}, threads);
        GridHistogram h = histogram_from_points(grid, ens.snapshots[0]);
        double n = static_cast<double>(cfg.particles);
        for (int c = 0; c < grid->num_cells(); ++c) {
            double p = h.mass[c];
            double denom = 1.0 + z * z / n;
            double center = p + z * z / (2.0 * n);
            double rad = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n));
            double lcb = std::max(0.0, (center - rad) / denom);
            double density = lcb / grid->cell_areas()[c];
            if (density < out.C_hat) {
                out.C_hat = density;
                out.worst_start = start_mesh[s];
                out.worst_cell = c;
            }
        }
    }
    if (!std::isfinite(out.C_hat)) out.C_hat = 0.0;
    return out;
}

}  // namespace snapbm
