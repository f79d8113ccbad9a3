#pragma once

#include <limits>
#include <vector>

#include "snapbm/grid.hpp"
#include "snapbm/process.hpp"

namespace snapbm {

/// deterministic sub-seed so that separate experiment arms do not share
/// particle noise
inline uint64_t derive_seed(uint64_t seed, uint64_t salt) {
    uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

struct StationaryResult {
    GridHistogram pi_hat;
    bool converged = false;    // split-half TV <= 0.05
    double split_half_tv = 0.0;
    long pooled_samples = 0;
    std::vector<double> snapshot_times;
};

/// Time-averaged law pooled over snapshots after burn_in, particles started
/// uniform on D. Convergence is diagnosed (not assumed): first-half vs
/// second-half TV must stay within 0.05, otherwise the result is returned
/// flagged.
StationaryResult stationary_estimate(const DomainSpec& domain, const SimConfig& cfg,
                                     double burn_in, const GridPtr& grid,
                                     int n_snapshots = 50, int threads = 1);

struct PiMinResult {
    double value = 0.0;  // min over cells of mass / cell_area
    int cell_index = -1;
    Vec2 cell_center;
    double min_cell_count = 0.0;
    bool small_sample_warning = false;  // expected count below 5 at the argmin
};

PiMinResult pi_min_estimate(const GridHistogram& pi_hat, long pooled_samples);

struct TvCurveRow {
    Vec2 start;
    double t;
    double tv;
};

struct MixingEstimate {
    double t_mix_hat = std::numeric_limits<double>::infinity();
    bool bounded = false;            // false = UNBOUNDED within the horizon
    bool horizon_too_short = false;
    double threshold = 0.25;
    std::vector<Vec2> starts;
    std::vector<TvCurveRow> tv_curve;
};

/// Start mesh for the worst-start scan: uniform grid of the given pitch plus
/// the deepest interior point behind each barrier.
std::vector<Vec2> make_start_mesh(const DomainSpec& domain, double pitch);

/// TV(law at t, pi_hat) per (start, snapshot); t_mix_hat is the first
/// snapshot time where the max over starts drops to the threshold.
MixingEstimate mixing_time_estimate(const DomainSpec& domain, const SimConfig& cfg,
                                    const std::vector<Vec2>& start_mesh,
                                    const std::vector<double>& snapshot_times,
                                    const GridHistogram& pi_hat, double threshold = 0.25,
                                    int threads = 1);

struct DoeblinEstimate {
    double C_hat = 0.0;  // min over starts and cells of LCB(mass)/cell_area
    double T = 0.0;
    Vec2 worst_start;
    int worst_cell = -1;
};

/// Empirical minorization constant at time T with a per-cell 95% binomial
/// lower confidence bound (Wilson).
DoeblinEstimate doeblin_constant(const DomainSpec& domain, const SimConfig& cfg, double T,
                                 const std::vector<Vec2>& start_mesh, const GridPtr& grid,
                                 int threads = 1);

}  // namespace snapbm
