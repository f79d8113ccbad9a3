#include "snapbm/proofcheck.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "snapbm/parallel.hpp"
#include "snapbm/scenarios.hpp"

namespace snapbm {

namespace {

EstimateCI wald_ci(long hits, long n) {
    double p = static_cast<double>(hits) / static_cast<double>(n);
    double se = std::sqrt(std::max(0.0, p * (1.0 - p) / static_cast<double>(n)));
    return {p, std::max(0.0, p - 1.96 * se), std::min(1.0, p + 1.96 * se), n};
}

}  // namespace

EstimateCI pill_event_probability(double R, Vec2 y, double eps, double gamma, long N,
                                  uint64_t seed, int steps_per_horizon, int threads) {
    if (!(R > 0.0) || !(gamma > 0.0) || !(gamma < 1.0))
        throw ConstraintViolation("pill event: need R > 0 and gamma in (0,1)");
    if (y.norm() > R) throw ConstraintViolation("pill event: need |y| <= R");
    if (!(eps > 0.0) || eps > gamma * R / 2.0)
        throw ConstraintViolation("pill event: need 0 < eps <= gamma*R/2");

    const double horizon = R * R;
    const double dt = horizon / steps_per_horizon;
    const double sqrt_dt = std::sqrt(dt);
    const double tube = gamma * R;

    std::vector<long> hits_per_chunk(resolve_threads(threads), 0);
    std::atomic<int> chunk_counter{0};
    parallel_chunks(N, threads, [&](long b, long e) {
        int slot = chunk_counter.fetch_add(1);
        long hits = 0;
        for (long k = b; k < e; ++k) {
            CounterRng rng(seed, static_cast<uint64_t>(k));
            Vec2 w{0.0, 0.0};
            bool ok = true;
            for (int s = 1; s <= steps_per_horizon; ++s) {
                w += rng.normal_pair() * sqrt_dt;
                double t = s * dt;
                Vec2 drift = y * (t / horizon);
                if (dist(w, drift) > tube) {
                    ok = false;
                    break;
                }
            }
            if (ok && dist(w, y) <= eps) ++hits;
        }
        hits_per_chunk[slot] += hits;
    });
    long total = 0;
    for (long h : hits_per_chunk) total += h;
    return wald_ci(total, N);
}

CrossingScalingResult crossing_probability_scaling(const std::vector<double>& lambdas, long N,
                                                   uint64_t seed, const CrossingProtocol& proto,
                                                   int threads) {
    CrossingScalingResult out;
    out.lambdas = lambdas;

    for (double lambda : lambdas) {
        DomainSpec domain = disk_one_barrier(proto.barrier_radius, lambda, lambda);
        SimConfig cfg;
        cfg.dt = proto.dt;
        cfg.seed = seed;  // common random numbers across the rate arms
        cfg.particles = N;
        cfg.t_final = proto.horizon;

        std::vector<long> hits_per_chunk(resolve_threads(threads), 0);
        std::atomic<int> chunk_counter{0};
        parallel_chunks(N, threads, [&](long b, long e) {
            int slot = chunk_counter.fetch_add(1);
            long hits = 0;
            const long nsteps = static_cast<long>(std::ceil(cfg.t_final / cfg.dt - 1e-9));
            for (long k = b; k < e; ++k) {
                CounterRng rng(cfg.seed, static_cast<uint64_t>(k));
                ParticleState st = init_state(domain, proto.start, nullptr, rng);
                for (long s = 0; s < nsteps; ++s) step(st, domain, cfg, rng);
                if (dist(st.position, proto.target_center) <= proto.target_radius) ++hits;
            }
            hits_per_chunk[slot] += hits;
        });
        long total = 0;
        for (long h : hits_per_chunk) total += h;
        out.probabilities.push_back(wald_ci(total, N));
    }

    for (size_t i = 0; i + 1 < lambdas.size(); ++i) {
        double denom = out.probabilities[i + 1].estimate;
        out.ratios.push_back(denom > 0.0 ? out.probabilities[i].estimate / denom : 0.0);
    }
    double sxy = 0.0, sxx = 0.0;
    for (size_t i = 0; i < lambdas.size(); ++i) {
        sxy += lambdas[i] * out.probabilities[i].estimate;
        sxx += lambdas[i] * lambdas[i];
    }
    out.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    return out;
}

UniformityResult time_reversal_uniformity(const DomainSpec& domain, double T, long N,
                                          uint64_t seed, double grid_pitch,
                                          std::optional<Vec2> component_of, double dt,
                                          int threads) {
    // impermeable limit: classical reflected Brownian motion per component
    std::vector<Barrier> bs;
    for (const Barrier& b : domain.barriers()) bs.push_back({b.curve, 1e-9, 1e-9});
    DomainSpec frozen(domain.boundary(), std::move(bs));

    SimConfig cfg;
    cfg.dt = dt;
    cfg.seed = seed;
    cfg.particles = N;
    cfg.t_final = std::max(T, dt);

    std::vector<int> want_signs;
    if (component_of) want_signs = frozen.signs_at(*component_of);

    auto start_at = [&](long, CounterRng& rng) {
        for (int tries = 0; tries < 100000; ++tries) {
            Vec2 p = uniform_point_in_domain(frozen, rng);
            if (!component_of || frozen.signs_at(p) == want_signs) return p;
        }
        throw PointOutsideDomain("component sampler failed");
    };

    Ensemble ens = simulate_paths_from(frozen, cfg, start_at, {T}, threads);

    GridPtr grid = make_grid(frozen, grid_pitch);
    UniformityResult out;
    out.T = T;
    out.N = N;
    if (!component_of) {
        GridHistogram law = histogram_from_points(grid, ens.snapshots[0]);
        out.tv = tv_distance(law, uniform_reference(grid));
    } else {
        // restrict to cells lying inside the component: matching sign vector
        // and clear of the barriers (straddling cells have clipped areas that
        // mix both sides and would bias the uniform reference)
        std::vector<int> keep;
        for (int c = 0; c < grid->num_cells(); ++c) {
            const Vec2& center = grid->cell_centers()[c];
            if (frozen.signs_at(center) != want_signs) continue;
            bool clear = true;
            for (const Barrier& b : frozen.barriers())
                if (b.curve.distance(center) < 0.75 * grid_pitch) clear = false;
            if (clear) keep.push_back(c);
        }
        std::vector<int64_t> counts(grid->num_cells(), 0);
        for (const Vec2& p : ens.snapshots[0]) counts[grid->locate(p)]++;
        double total_mass = 0.0, total_area = 0.0;
        for (int c : keep) {
            total_mass += static_cast<double>(counts[c]);
            total_area += grid->cell_areas()[c];
        }
        double tv = 0.0;
        for (int c : keep) {
            double emp = total_mass > 0.0 ? counts[c] / total_mass : 0.0;
            double ref = grid->cell_areas()[c] / total_area;
            tv += std::abs(emp - ref);
        }
        out.tv = 0.5 * tv;
    }
    out.pass = out.tv <= 0.05;
    return out;
}

}  // namespace snapbm
