#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "snapbm/geometry.hpp"
#include "snapbm/rng.hpp"

namespace snapbm {

struct SimConfig {
    double dt = 1e-3;
    bool bridge_correction = true;
    double tau_band = 0.0;  // contact is detected by crossing (plus bridge events)
    uint64_t seed = 0;
    long particles = 1;
    double t_final = 1.0;
};

/// dt above (min{1/kappa, rho})^2 / 25 risks multi-barrier hops per step
bool dt_warning(const GeometryReport& report, const SimConfig& cfg);

struct ParticleState {
    Vec2 position;
    std::vector<int8_t> signs;        // per barrier, +1/-1 (s_0 is fixed +1)
    std::vector<double> local_times;  // per barrier, nondecreasing
    std::vector<double> budgets;      // local time left until the next sign flip
    std::vector<int64_t> flip_counts;
    double clock = 0.0;
    long steps_taken = 0;
    long truncated_steps = 0;  // steps cut short at the 16-reflection cap
};

struct FlipEvent {
    int barrier;          // 1-based barrier index
    double local_time;    // L^i at the flip
    int8_t new_sign;
    double clock;
};

/// Initial state at x0. With s0 == nullptr the signs are derived from
/// side_of; an explicit s0 must agree with side_of wherever x0 is off the
/// barrier (InconsistentSigns otherwise) and decides the side when x0 lies
/// on a barrier. Budgets are drawn Exp(lambda_minus) in state +1 and
/// Exp(lambda_plus) in state -1.
ParticleState init_state(const DomainSpec& domain, Vec2 x0, const std::vector<int>* s0,
                         CounterRng& rng);

/// One Euler step: Gaussian proposal, then sequential nearest-first
/// collision resolution. Reflections accumulate penetration depth as local
/// time and consume the flip budget; a budget crossing zero flips the sign
/// and lets the remaining displacement continue across the barrier. With
/// bridge_correction, near-miss contacts are registered with the Brownian
/// bridge hit probability exp(-2 d1 d2 / dt).
///
/// Work per step is capped at 16 reflections. A rare long increment grazing
/// a curved barrier can bounce more often than that; such a step is cut
/// short at the last contact point (the remainder of the displacement is
/// dropped) and counted in truncated_steps. StuckParticle is thrown only
/// when truncation is frequent, which signals a dt too large for the
/// geometry rather than a tail event.
void step(ParticleState& state, const DomainSpec& domain, const SimConfig& cfg,
          CounterRng& rng, std::vector<FlipEvent>* flip_log = nullptr);

struct Ensemble {
    std::vector<ParticleState> finals;
    std::vector<double> snapshot_times;
    std::vector<std::vector<Vec2>> snapshots;  // [snapshot][particle]
};

/// Runs cfg.particles independent particles to cfg.t_final. Particle k draws
/// from the counter-based stream (cfg.seed, k); results are identical for
/// any thread count.
Ensemble simulate_paths(const DomainSpec& domain, const SimConfig& cfg, Vec2 x0,
                        const std::vector<int>* s0 = nullptr,
                        const std::vector<double>& snapshot_times = {}, int threads = 1);

/// Same, with a per-particle start position (drawn from the particle's own
/// stream, so determinism is preserved).
Ensemble simulate_paths_from(const DomainSpec& domain, const SimConfig& cfg,
                             const std::function<Vec2(long, CounterRng&)>& start_at,
                             const std::vector<double>& snapshot_times = {}, int threads = 1);

Vec2 uniform_point_in_domain(const DomainSpec& domain, CounterRng& rng);

struct TrajectoryRow {
    double t;
    Vec2 pos;
    std::vector<int8_t> signs;
    std::vector<double> local_times;
};

struct Trajectory {
    std::vector<TrajectoryRow> rows;
    std::vector<FlipEvent> flips;
    ParticleState final_state;
};

/// Single-particle run recording a row every record_dt (every step if 0).
Trajectory simulate_trajectory(const DomainSpec& domain, const SimConfig& cfg, Vec2 x0,
                               const std::vector<int>* s0 = nullptr, double record_dt = 0.0);

/// number of sign flips of s_i along a recorded trajectory
long crossing_count(const Trajectory& traj, int barrier_index);
long crossing_count(const ParticleState& state, int barrier_index);

}  // namespace snapbm
