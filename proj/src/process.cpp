#include "snapbm/process.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "snapbm/parallel.hpp"

namespace snapbm {

namespace {

constexpr int kMaxReflections = 16;

double flip_rate(const Barrier& b, int8_t sign) {
    // a +1 chain leaves through lambda_minus, a -1 chain through lambda_plus
    return sign > 0 ? b.lambda_minus : b.lambda_plus;
}

}  // namespace

bool dt_warning(const GeometryReport& report, const SimConfig& cfg) {
    double r_geom = std::min(1.0 / report.kappa, report.rho);
    return cfg.dt > r_geom * r_geom / 25.0;
}

ParticleState init_state(const DomainSpec& domain, Vec2 x0, const std::vector<int>* s0,
                         CounterRng& rng) {
    if (!domain.contains(x0)) throw PointOutsideDomain("init_state: x0 outside domain");
    const int m = domain.num_barriers();
    const double tau = domain.tau_geo();

    ParticleState st;
    st.position = x0;
    st.signs.resize(m);
    st.local_times.assign(m, 0.0);
    st.budgets.resize(m);
    st.flip_counts.assign(m, 0);

    std::vector<int> auto_signs = domain.signs_at(x0);
    for (int i = 0; i < m; ++i) {
        const Barrier& b = domain.barriers()[i];
        int sign = auto_signs[i];
        if (s0) {
            int want = (*s0)[i];
            if (want != 1 && want != -1)
                throw InconsistentSigns("init_state: signs must be +1 or -1");
            if (b.curve.distance(x0) > tau && want != sign) {
                std::ostringstream os;
                os << "init_state: sign " << want << " for barrier " << i + 1
                   << " contradicts side_of at x0";
                throw InconsistentSigns(os.str());
            }
            sign = want;
        }
        st.signs[i] = static_cast<int8_t>(sign);
    }

    // a start on a curve is nudged to its assigned side so that crossing
    // detection starts from a strictly off-curve position
    for (int i = 0; i < m; ++i) {
        const Curve& c = domain.barriers()[i].curve;
        if (c.distance(st.position) <= tau) {
            Vec2 n = c.inward_normal(c.closest_point(st.position));
            st.position += n * (2.0 * tau * st.signs[i]);
        }
    }
    if (domain.boundary().distance(st.position) <= tau) {
        Vec2 cp = domain.boundary().closest_point(st.position);
        st.position = cp + domain.boundary().inward_normal(cp) * (2.0 * tau);
    }

    for (int i = 0; i < m; ++i)
        st.budgets[i] = rng.exponential(flip_rate(domain.barriers()[i], st.signs[i]));
    return st;
}

void step(ParticleState& st, const DomainSpec& domain, const SimConfig& cfg, CounterRng& rng,
          std::vector<FlipEvent>* flip_log) {
    const int m = domain.num_barriers();
    const double sqrt_dt = std::sqrt(cfg.dt);
    const Vec2 start_pos = st.position;

    Vec2 g = rng.normal_pair();
    Vec2 cur = st.position;
    Vec2 prop = cur + g * sqrt_dt;

    // contact bookkeeping for the bridge correction
    std::vector<uint8_t> touched;
    if (cfg.bridge_correction) touched.assign(m, 0);

    bool geometry_touched = false;
    int reflections = 0;
    while (true) {
        double seg_len = dist(cur, prop);
        if (seg_len <= 0.0) break;

        // skip re-detection of the contact just processed: anything within
        // tau_geo/8 along the segment is the same touch point, anything at
        // the 2*tau_geo nudge scale or beyond must be seen again
        const double t_guard = domain.tau_geo() / (8.0 * seg_len);

        int hit_curve = -1;
        Curve::Hit best{};
        best.t = std::numeric_limits<double>::infinity();
        for (int i = 0; i < domain.num_curves(); ++i) {
            const Curve& c = domain.curve(i);
            if (c.distance_lower_bound(cur) > seg_len) continue;
            auto h = c.first_crossing(cur, prop, t_guard);
            if (h && h->t < best.t) {
                best = *h;
                hit_curve = i;
            }
        }
        if (hit_curve < 0) break;

        if (++reflections > kMaxReflections) {
            // cut the step short at the last contact; frequent truncation
            // signals a dt too large for the geometry
            Vec2 n_allowed = best.inward_normal;
            if (hit_curve > 0 && st.signs[hit_curve - 1] < 0) n_allowed = n_allowed * -1.0;
            prop = best.point + n_allowed * (2.0 * domain.tau_geo());
            geometry_touched = true;
            st.truncated_steps++;
            if (st.truncated_steps > 10 && st.truncated_steps * 1000 > st.steps_taken)
                throw StuckParticle(
                    "step: repeated reflection-cap truncations; dt too large for geometry");
            break;
        }
        geometry_touched = true;

        const Vec2 q = best.point;
        const Vec2 overshoot = prop - q;

        // unit normal pointing into the currently forbidden side
        Vec2 n_forbidden;
        if (hit_curve == 0) {
            n_forbidden = best.inward_normal * -1.0;  // outside of D is forbidden
        } else {
            int8_t s = st.signs[hit_curve - 1];
            n_forbidden = best.inward_normal * (s > 0 ? -1.0 : 1.0);
        }

        double depth = dot(overshoot, n_forbidden);
        if (depth <= 0.0) {
            // grazing contact without penetration; continue past it
            cur = q;
            continue;
        }

        if (hit_curve == 0) {
            prop = prop - n_forbidden * (2.0 * depth);
            cur = q;
            if (dist(cur, prop) <= domain.tau_geo())
                prop = q + best.inward_normal * (2.0 * domain.tau_geo());
            continue;
        }

        const int bi = hit_curve - 1;
        const Barrier& barrier = domain.barriers()[bi];
        if (cfg.bridge_correction) touched[bi] = 1;

        if (st.budgets[bi] > depth) {
            // reflect: mirror the overshoot across the local tangent line,
            // penetration depth feeds the local time
            st.budgets[bi] -= depth;
            st.local_times[bi] += depth;
            prop = prop - n_forbidden * (2.0 * depth);
            cur = q;
            if (dist(cur, prop) <= domain.tau_geo())
                prop = q + n_forbidden * (-2.0 * domain.tau_geo());
        } else {
            // budget exhausted during this contact: flip and cross
            st.local_times[bi] += st.budgets[bi];
            st.signs[bi] = static_cast<int8_t>(-st.signs[bi]);
            st.flip_counts[bi]++;
            st.budgets[bi] = rng.exponential(flip_rate(barrier, st.signs[bi]));
            if (flip_log)
                flip_log->push_back(
                    {bi + 1, st.local_times[bi], st.signs[bi], st.clock + cfg.dt});
            // the remainder of the displacement continues on the new side
            cur = q;
            if (dist(cur, prop) <= domain.tau_geo())
                prop = q + n_forbidden * (2.0 * domain.tau_geo());
        }
    }

    // Brownian-bridge near-miss correction for barriers the segment did not
    // touch: contact probability exp(-2 d1 d2 / dt), local-time increment
    // sqrt(dt*pi/2)/2 * |N(0,1)|
    if (cfg.bridge_correction) {
        const double band = 3.0 * sqrt_dt;
        for (int bi = 0; bi < m; ++bi) {
            if (touched[bi]) continue;
            const Curve& c = domain.barriers()[bi].curve;
            if (c.distance_lower_bound(start_pos) > band) continue;
            double d1 = c.distance(start_pos);
            if (d1 >= band) continue;
            double d2 = c.distance(prop);
            if (d2 >= band) continue;
            double p_hit = std::exp(-2.0 * d1 * d2 / cfg.dt);
            if (rng.uniform01() >= p_hit) continue;
            double inc = std::sqrt(cfg.dt * 3.14159265358979323846 / 2.0) / 2.0 *
                         std::abs(rng.normal());
            if (st.budgets[bi] > inc) {
                st.budgets[bi] -= inc;
                st.local_times[bi] += inc;
            } else {
                // flip during the glued contact: transport the endpoint to
                // the mirror position on the new side
                Vec2 cp = c.closest_point(prop);
                Vec2 n = c.inward_normal(cp);
                Vec2 mirrored = prop - n * (2.0 * dot(prop - cp, n));
                if (dist(mirrored, cp) <= domain.tau_geo())
                    mirrored = cp + n * (2.0 * domain.tau_geo() *
                                         static_cast<double>(-st.signs[bi]));
                // sanity: the mirrored point must stay in D and respect the
                // other barriers; otherwise skip this bridge event
                bool ok = domain.contains(mirrored);
                for (int j = 0; ok && j < m; ++j) {
                    if (j == bi) continue;
                    if (domain.barriers()[j].curve.distance_lower_bound(mirrored) >
                        domain.tau_geo())
                        ok = domain.barriers()[j].curve.side(mirrored, domain.tau_geo()) ==
                             st.signs[j];
                }
                if (!ok) continue;
                st.local_times[bi] += st.budgets[bi];
                st.signs[bi] = static_cast<int8_t>(-st.signs[bi]);
                st.flip_counts[bi]++;
                st.budgets[bi] =
                    rng.exponential(flip_rate(domain.barriers()[bi], st.signs[bi]));
                if (flip_log)
                    flip_log->push_back(
                        {bi + 1, st.local_times[bi], st.signs[bi], st.clock + cfg.dt});
                prop = mirrored;
                geometry_touched = true;
            }
        }
    }

    // numeric containment safety net: positions stay in D by construction,
    // but a mirrored endpoint can graze the boundary at round-off scale
    if (geometry_touched && !domain.contains(prop)) {
        Vec2 cp = domain.boundary().closest_point(prop);
        prop = cp + domain.boundary().inward_normal(cp) * (2.0 * domain.tau_geo());
    }

    st.position = prop;
    st.clock += cfg.dt;
    st.steps_taken++;
}

Vec2 uniform_point_in_domain(const DomainSpec& domain, CounterRng& rng) {
    const Vec2 lo = domain.bbox_min();
    const Vec2 hi = domain.bbox_max();
    for (int tries = 0; tries < 100000; ++tries) {
        Vec2 p{lo.x + rng.uniform01() * (hi.x - lo.x), lo.y + rng.uniform01() * (hi.y - lo.y)};
        if (domain.contains(p)) return p;
    }
    throw PointOutsideDomain("uniform sampler failed; degenerate domain?");
}

namespace {

Ensemble run_ensemble(const DomainSpec& domain, const SimConfig& cfg,
                      const std::function<Vec2(long, CounterRng&)>& start_at,
                      const std::vector<int>* s0, const std::vector<double>& snapshot_times,
                      int threads) {
    if (cfg.particles < 1) throw std::invalid_argument("simulate_paths: particles >= 1");
    std::vector<double> times = snapshot_times;
    std::sort(times.begin(), times.end());

    Ensemble out;
    out.snapshot_times = times;
    out.finals.resize(cfg.particles);
    out.snapshots.assign(times.size(), std::vector<Vec2>(cfg.particles));

    const long nsteps = static_cast<long>(std::ceil(cfg.t_final / cfg.dt - 1e-9));
    // snapshot j fires after this many steps (0 = at the initial state)
    std::vector<long> snap_step(times.size());
    for (size_t j = 0; j < times.size(); ++j)
        snap_step[j] = std::min(
            nsteps, static_cast<long>(std::ceil(times[j] / cfg.dt - 1e-9)));

    parallel_chunks(cfg.particles, threads, [&](long b, long e) {
        for (long k = b; k < e; ++k) {
            CounterRng rng(cfg.seed, static_cast<uint64_t>(k));
            Vec2 x0 = start_at(k, rng);
            ParticleState st;
            try {
                st = init_state(domain, x0, s0, rng);
                size_t next_snap = 0;
                while (next_snap < times.size() && snap_step[next_snap] <= 0) {
                    out.snapshots[next_snap][k] = st.position;
                    ++next_snap;
                }
                for (long s = 0; s < nsteps; ++s) {
                    step(st, domain, cfg, rng);
                    while (next_snap < times.size() && snap_step[next_snap] == s + 1) {
                        out.snapshots[next_snap][k] = st.position;
                        ++next_snap;
                    }
                }
                for (; next_snap < times.size(); ++next_snap)
                    out.snapshots[next_snap][k] = st.position;
            } catch (const StuckParticle& ex) {
                throw StuckParticle(std::string(ex.what()) + " (particle " +
                                        std::to_string(k) + ")",
                                    k);
            }
            out.finals[k] = std::move(st);
        }
    });
    return out;
}

}  // namespace

Ensemble simulate_paths(const DomainSpec& domain, const SimConfig& cfg, Vec2 x0,
                        const std::vector<int>* s0, const std::vector<double>& snapshot_times,
                        int threads) {
    return run_ensemble(
        domain, cfg, [x0](long, CounterRng&) { return x0; }, s0, snapshot_times, threads);
}

Ensemble simulate_paths_from(const DomainSpec& domain, const SimConfig& cfg,
                             const std::function<Vec2(long, CounterRng&)>& start_at,
                             const std::vector<double>& snapshot_times, int threads) {
    return run_ensemble(domain, cfg, start_at, nullptr, snapshot_times, threads);
}

Trajectory simulate_trajectory(const DomainSpec& domain, const SimConfig& cfg, Vec2 x0,
                               const std::vector<int>* s0, double record_dt) {
    CounterRng rng(cfg.seed, 0);
    Trajectory traj;
    ParticleState st = init_state(domain, x0, s0, rng);
    const long nsteps = static_cast<long>(std::ceil(cfg.t_final / cfg.dt - 1e-9));
    const long record_every =
        std::max<long>(1, static_cast<long>(std::llround(record_dt / cfg.dt)));
    auto record = [&]() {
        traj.rows.push_back({st.clock, st.position, st.signs, st.local_times});
    };
    record();
    for (long s = 0; s < nsteps; ++s) {
        step(st, domain, cfg, rng, &traj.flips);
        if ((s + 1) % record_every == 0 || s + 1 == nsteps) record();
    }
    traj.final_state = std::move(st);
    return traj;
}

long crossing_count(const Trajectory& traj, int barrier_index) {
    long flips = 0;
    for (size_t r = 1; r < traj.rows.size(); ++r)
        if (traj.rows[r].signs[barrier_index] != traj.rows[r - 1].signs[barrier_index])
            ++flips;
    return flips;
}

long crossing_count(const ParticleState& state, int barrier_index) {
    return state.flip_counts[barrier_index];
}

}  // namespace snapbm
