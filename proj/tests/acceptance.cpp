// End-to-end acceptance suite. Each criterion prints exactly one PASS/FAIL
// line; the process exits nonzero if any criterion fails. argv[1] is the
// path to the CLI binary (used by the determinism criterion); further
// arguments select individual criteria by number.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "snapbm/bounds.hpp"
#include "snapbm/estimators.hpp"
#include "snapbm/parallel.hpp"
#include "snapbm/proofcheck.hpp"
#include "snapbm/scenarios.hpp"

using namespace snapbm;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr uint64_t kSeed = 20240817;
int g_threads = 1;

struct Outcome {
    bool pass;
    std::string detail;
};

// ---------------------------------------------------------------------------
// 1. geometry oracle suite

double rho_oracle_concentric(const DomainSpec& dom, const std::vector<double>& radii,
                             double pitch) {
    double best = 1e300;
    Vec2 lo = dom.bbox_min(), hi = dom.bbox_max();
    for (double y = lo.y; y <= hi.y; y += pitch)
        for (double x = lo.x; x <= hi.x; x += pitch) {
            Vec2 p{x, y};
            if (!dom.contains(p)) continue;
            std::vector<double> d;
            for (double r : radii) d.push_back(std::abs(p.norm() - r));
            std::sort(d.begin(), d.end());
            best = std::min(best, d[1]);  // circles: second-nearest curve
        }
    return best;
}

Outcome criterion1() {
    std::ostringstream os;
    bool ok = true;

    for (double r : {0.5, 1.0, 3.0})
        ok = ok && std::abs(Curve::circle({0, 0}, r).max_curvature() * r - 1.0) <= 1e-9;
    ok = ok && std::abs(Curve::ellipse({0, 0}, 2, 1, 0.3).max_curvature() - 2.0) <= 2e-9;

    DomainSpec conc(Curve::circle({0, 0}, 3),
                    {{Curve::circle({0, 0}, 1), 1.0, 1.0}, {Curve::circle({0, 0}, 2), 1.0, 1.0}});
    double rho = separation_rho(conc);
    double oracle = rho_oracle_concentric(conc, {1.0, 2.0, 3.0}, 0.02);
    ok = ok && std::abs(rho - oracle) <= 0.02 * oracle;
    os << "rho=" << rho << " oracle=" << oracle;

    double delta = geodesic_diameter(disk_plain());
    ok = ok && std::abs(delta - 2.0) <= 0.04;
    os << " delta=" << delta;

    double a = area(disk_plain());
    ok = ok && std::abs(a - kPi) <= 1e-6;
    os << " area=" << a;

    return {ok, os.str()};
}

// ---------------------------------------------------------------------------
// 2. classical-RBM sanity: uniform law on the disk

Outcome criterion2() {
    UniformityResult r = time_reversal_uniformity(disk_plain(), 8.0, 100000, kSeed,
                                                  2.0 / 24.0, std::nullopt, 1e-3, g_threads);
    std::ostringstream os;
    os << "TV(law@8, uniform)=" << r.tv << " (N=1e5, dt=1e-3)";
    return {r.tv <= 0.05, os.str()};
}

// ---------------------------------------------------------------------------
// 3. side consistency over 1e6 recorded steps across fixtures

Outcome criterion3() {
    struct Case {
        DomainSpec dom;
        Vec2 start;
        long particles;
        long steps;
    };
    std::vector<Case> cases;
    cases.push_back({disk_one_barrier(0.5, 1.0, 1.0), {0.7, 0.0}, 120, 4000});
    cases.push_back({disk_one_barrier(0.3, 5.0, 0.2), {0.0, 0.0}, 120, 4000});
    cases.push_back({nested_circles(1, 1.0, 4.0, NestedMode::Metastable), {0.0, 0.0}, 25, 4000});

    SimConfig cfg;
    cfg.dt = 1e-3;
    cfg.seed = kSeed + 3;
    const double band = 3.0 * std::sqrt(cfg.dt);
    long recorded = 0, violations = 0;
    for (const Case& c : cases) {
        for (long k = 0; k < c.particles; ++k) {
            CounterRng rng(cfg.seed, k);
            ParticleState st = init_state(c.dom, c.start, nullptr, rng);
            for (long s = 0; s < c.steps; ++s) {
                step(st, c.dom, cfg, rng);
                ++recorded;
                for (int b = 0; b < c.dom.num_barriers(); ++b) {
                    const Curve& bc = c.dom.barriers()[b].curve;
                    if (bc.distance_lower_bound(st.position) > band) continue;
                    if (bc.distance(st.position) > band &&
                        bc.side(st.position, c.dom.tau_geo()) != st.signs[b])
                        ++violations;
                }
            }
        }
    }
    std::ostringstream os;
    os << violations << " violations in " << recorded << " steps";
    return {recorded >= 1000000 && violations == 0, os.str()};
}

// ---------------------------------------------------------------------------
// 4. permeability scaling: halving lambda halves the crossing probability

Outcome criterion4() {
    CrossingProtocol proto;  // start (0,0), target B((0.75,0), 0.12), T=0.5
    std::vector<double> lambdas{0.4, 0.2, 0.1, 0.05};
    CrossingScalingResult r =
        crossing_probability_scaling(lambdas, 1000000, kSeed + 4, proto, g_threads);
    bool ok = r.probabilities[0].estimate < 0.1;  // small-lambda regime
    std::ostringstream os;
    os << "p(0.4)=" << r.probabilities[0].estimate << " ratios=";
    for (double ratio : r.ratios) {
        os << ratio << " ";
        ok = ok && ratio >= 1.6 && ratio <= 2.4;
    }
    return {ok, os.str()};
}

// ---------------------------------------------------------------------------
// 5. pill-event quadratic scaling in eps

Outcome criterion5() {
    long N = 1000000;
    // shared seed nests the eps/2 hits inside the eps hits
    EstimateCI p1 = pill_event_probability(1.0, {0.0, 0.0}, 0.20, 0.8, N, kSeed + 5, 2048,
                                           g_threads);
    EstimateCI p2 = pill_event_probability(1.0, {0.0, 0.0}, 0.10, 0.8, N, kSeed + 5, 2048,
                                           g_threads);
    double ratio = p2.estimate > 0.0 ? p1.estimate / p2.estimate : 0.0;
    std::ostringstream os;
    os << "p(0.2R)=" << p1.estimate << " p(0.1R)=" << p2.estimate << " ratio=" << ratio;
    return {ratio >= 3.2 && ratio <= 4.8, os.str()};
}

// ---------------------------------------------------------------------------
// 6. metastability: median escape time doubles with each n

double median_escape_time(int n, long paths, double cap, uint64_t seed) {
    DomainSpec dom = nested_circles(n, 1.0, 4.0, NestedMode::Metastable);
    SimConfig cfg;
    cfg.dt = 4e-3;
    cfg.seed = seed;
    const double threshold = n + 1.0;
    std::vector<double> esc(paths, cap);
    parallel_chunks(paths, g_threads, [&](long b, long e) {
        for (long k = b; k < e; ++k) {
            CounterRng rng(seed, static_cast<uint64_t>(k));
            ParticleState st = init_state(dom, {0.0, 0.0}, nullptr, rng);
            long nsteps = static_cast<long>(cap / cfg.dt);
            for (long s = 0; s < nsteps; ++s) {
                step(st, dom, cfg, rng);
                if (st.position.norm() > threshold) {
                    esc[k] = st.clock;
                    break;
                }
            }
        }
    });
    std::sort(esc.begin(), esc.end());
    return esc[paths / 2];
}

Outcome criterion6() {
    const long paths = 2000;
    double m1 = median_escape_time(1, paths, 400.0, kSeed + 61);
    double m2 = median_escape_time(2, paths, 1600.0, kSeed + 62);
    double m3 = median_escape_time(3, paths, 6000.0, kSeed + 63);
    std::ostringstream os;
    os << "medians " << m1 << " -> " << m2 << " -> " << m3;
    bool ok = m2 >= 2.0 * m1 && m3 >= 2.0 * m2 && m3 < 6000.0;
    return {ok, os.str()};
}

// ---------------------------------------------------------------------------
// 7. pi_min decay: inner-disk mass drops by >= 2x from n=1 to n=2

struct InnerMass {
    double mean;
    double se;
};

InnerMass inner_disk_mass(int n, uint64_t seed) {
    DomainSpec dom = nested_circles(n, 1.0, 4.0, NestedMode::Outward);
    SimConfig cfg;
    cfg.dt = 2e-3;
    cfg.seed = seed;
    cfg.particles = 1500;
    cfg.t_final = 60.0;
    std::vector<double> times;
    for (int j = 0; j < 50; ++j) times.push_back(10.0 + j * 1.0);
    Ensemble ens = simulate_paths_from(
        dom, cfg, [&](long, CounterRng& rng) { return uniform_point_in_domain(dom, rng); },
        times, g_threads);
    // per-particle time-averaged occupancy: particles are the independent
    // units (snapshots of one particle are correlated)
    std::vector<double> frac(cfg.particles, 0.0);
    for (const auto& snap : ens.snapshots)
        for (long k = 0; k < cfg.particles; ++k)
            if (snap[k].norm() < 1.0) frac[k] += 1.0 / times.size();
    double mean = 0.0;
    for (double f : frac) mean += f;
    mean /= cfg.particles;
    double var = 0.0;
    for (double f : frac) var += (f - mean) * (f - mean);
    var /= (cfg.particles - 1);
    return {mean, std::sqrt(var / cfg.particles)};
}

Outcome criterion7() {
    InnerMass m1 = inner_disk_mass(1, kSeed + 71);
    InnerMass m2 = inner_disk_mass(2, kSeed + 72);
    // one-sided 3-sigma test of mass(n=2) <= mass(n=1)/2
    double stat = m1.mean / 2.0 - m2.mean;
    double se = std::sqrt(m1.se * m1.se / 4.0 + m2.se * m2.se);
    std::ostringstream os;
    os << "mass(1)=" << m1.mean << " mass(2)=" << m2.mean << " z=" << stat / se;
    return {stat >= 3.0 * se, os.str()};
}

// ---------------------------------------------------------------------------
// 8. bound formulas and the empirical consistency check

Outcome criterion8() {
    bool ok = true;
    std::ostringstream os;

    auto synth = [](double delta, double R, double lmin, double a) {
        GeometryReport rep;
        rep.delta = delta;
        rep.R = R;
        rep.c = 1.0;
        rep.area = a;
        rep.lambda_min = lmin;
        rep.lambda_max = lmin;
        rep.kappa = 1.0 / R;
        rep.rho = R;
        return rep;
    };
    {
        BoundReport b = theorem_bounds(synth(2.0, 0.5, 1.0, kPi));
        ok = ok && std::abs(b.tmix_upper - 64.0) <= 64.0 * 1e-9;
        ok = ok && std::abs(b.pimin_lower - 0.0625 / kPi) <= 0.0625 / kPi * 1e-9;
    }
    {
        BoundReport b = theorem_bounds(synth(10.0, 0.5, 1.0, kPi));
        ok = ok && std::abs(b.tmix_upper - 104857600.0) <= 104857600.0 * 1e-9;
    }
    {
        BoundReport b = theorem_bounds(synth(3.0, 2.0, 0.5, 7.0));
        ok = ok && std::abs(b.tmix_upper - 9.0) <= 9.0 * 1e-9;
        ok = ok && std::abs(b.pimin_lower - 1.0 / 7.0) <= 1e-9 / 7.0;
    }
    ok = ok && std::abs(doeblin_to_tmix(0.75, 1.0, 1.0) - 1.0) <= 1e-12;
    ok = ok && std::abs(doeblin_to_tmix(0.5, 2.0, 1.0) - 4.0) <= 1e-12;
    os << "formulas " << (ok ? "exact" : "WRONG") << "; ";

    // empirical side on disk_one_barrier(0.5, 1, 1)
    DomainSpec dom = disk_one_barrier(0.5, 1.0, 1.0);
    GeometryReport rep = geometry_report(dom, 1.0);

    SimConfig pi_cfg;
    pi_cfg.dt = 1e-3;
    pi_cfg.seed = kSeed + 81;
    pi_cfg.particles = 3000;
    pi_cfg.t_final = 40.0;
    GridPtr grid = make_grid(dom, rep.delta / 24.0);
    StationaryResult st = stationary_estimate(dom, pi_cfg, 8.0, grid, 50, g_threads);
    PiMinResult pm = pi_min_estimate(st.pi_hat, st.pooled_samples);

    // per-start TV curves need the sampling floor 0.5*sqrt(2K/(pi N)) to sit
    // well under the 1/4 threshold, hence the coarser mixing grid
    GridPtr grid_mix = make_grid(dom, rep.delta / 12.0);
    StationaryResult st_mix = stationary_estimate(dom, pi_cfg, 8.0, grid_mix, 50, g_threads);

    SimConfig mix_cfg = pi_cfg;
    mix_cfg.particles = 2000;
    mix_cfg.t_final = 6.0;
    mix_cfg.seed = kSeed + 82;
    std::vector<Vec2> mesh = make_start_mesh(dom, rep.delta / 8.0);
    std::vector<double> times{0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0, 6.0};
    MixingEstimate mix =
        mixing_time_estimate(dom, mix_cfg, mesh, times, st_mix.pi_hat, 0.25, g_threads);

    BoundReport br = theorem_bounds(rep);
    br.empirical_tmix = mix.bounded ? mix.t_mix_hat : times.back();
    br.empirical_pimin = pm.value;
    consistency_check(br);

    os << "t_mix_hat=" << (mix.bounded ? mix.t_mix_hat : -1.0) << " pi_min_hat=" << pm.value
       << " tmix_ok=" << br.tmix_ok << " pimin_ok=" << br.pimin_ok;
    bool consistent = br.tmix_ok && br.pimin_ok;
    if (!consistent && br.minimal_passing_c.has_value()) {
        os << " minimal_c=" << *br.minimal_passing_c;
        consistent = *br.minimal_passing_c <= 64.0;
    }
    ok = ok && mix.bounded && consistent;
    return {ok, os.str()};
}

// ---------------------------------------------------------------------------
// 9. byte-identical summaries across thread counts (via the CLI)

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Outcome criterion9(const std::string& cli) {
    namespace fs = std::filesystem;
    fs::path work = fs::temp_directory_path() / "snapbm_acceptance";
    fs::remove_all(work);
    fs::create_directories(work);

    auto run = [&](const std::string& args) {
        std::string cmd = cli + " " + args + " > /dev/null 2>&1";
        int status = std::system(cmd.c_str());
        int rc = WEXITSTATUS(status);
        return rc == 0 || rc == 2;  // diagnostics (exit 2) still produce outputs
    };

    bool ok = true;
    std::ostringstream os;
    // fixture 1: disk with one barrier, stationary pipeline
    // fixture 2: nested circles, ensemble statistics
    ok = ok && run("scenario disk_one_barrier --rb 0.5 --lp 1 --lm 1 --emit " +
                   (work / "f1.json").string());
    ok = ok && run("scenario nested_circles --n 1 --mode outward --emit " +
                   (work / "f2.json").string());
    struct Job {
        const char* name;
        std::string args;
    };
    std::vector<Job> jobs{
        {"stationary", "stationary --config " + (work / "f1.json").string() +
                           " --seed 7 --particles 500 --dt 0.002 --t-final 8 "
                           "--grid-pitch 0.125"},
        {"simulate", "simulate --config " + (work / "f2.json").string() +
                         " --seed 9 --particles 2000 --dt 0.004 --t-final 2 --x0 0.1,0.2"},
    };
    for (const Job& j : jobs) {
        std::string out1 = (work / (std::string(j.name) + "_t1")).string();
        std::string out4 = (work / (std::string(j.name) + "_t4")).string();
        bool r1 = run(j.args + " --threads 1 --out " + out1);
        bool r4 = run(j.args + " --threads 4 --out " + out4);
        std::string s1 = slurp(out1 + "/summary.json");
        std::string s4 = slurp(out4 + "/summary.json");
        bool same = r1 && r4 && !s1.empty() && s1 == s4;
        os << j.name << (same ? " identical; " : " DIFFERS; ");
        ok = ok && same;
    }
    return {ok, os.str()};
}

// ---------------------------------------------------------------------------
// 10. dt-refinement stability of the stationary estimate

Outcome criterion10() {
    DomainSpec dom = disk_one_barrier(0.5, 1.0, 1.0);
    GridPtr grid = make_grid(dom, 2.0 / 16.0);
    auto pi_at = [&](double dt, uint64_t seed) {
        SimConfig cfg;
        cfg.dt = dt;
        cfg.seed = seed;
        cfg.particles = 3000;
        cfg.t_final = 60.0;
        return stationary_estimate(dom, cfg, 10.0, grid, 100, g_threads);
    };
    StationaryResult a = pi_at(1e-3, kSeed + 101);
    StationaryResult b = pi_at(5e-4, kSeed + 102);
    double tv = tv_distance(a.pi_hat, b.pi_hat);
    std::ostringstream os;
    os << "TV(pi@dt, pi@dt/2)=" << tv;
    return {tv <= 0.03, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli = argc > 1 ? argv[1] : "";
    std::set<int> selected;
    for (int i = 2; i < argc; ++i) selected.insert(std::atoi(argv[i]));
    g_threads = resolve_threads(0);

    struct Entry {
        int id;
        const char* title;
        Outcome (*fn)();
    };

    std::vector<std::pair<int, std::string>> results;
    bool all_pass = true;
    auto report = [&](int id, const char* title, const Outcome& o, double secs) {
        std::printf("[%s] criterion %2d: %s — %s (%.0fs)\n", o.pass ? "PASS" : "FAIL", id,
                    title, o.detail.c_str(), secs);
        std::fflush(stdout);
        all_pass = all_pass && o.pass;
    };
    auto timed = [&](int id, const char* title, auto&& fn) {
        if (!selected.empty() && !selected.count(id)) return;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o = fn();
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                          .count();
        report(id, title, o, secs);
    };

    timed(1, "geometry oracle suite", criterion1);
    timed(2, "classical-RBM uniform law", criterion2);
    timed(3, "side consistency, 1e6 steps", criterion3);
    timed(4, "permeability scaling linear in lambda", criterion4);
    timed(5, "pill-event quadratic scaling in eps", criterion5);
    timed(6, "metastable escape-time growth", criterion6);
    timed(7, "pi_min decay with nesting depth", criterion7);
    timed(8, "bound formulas and consistency", criterion8);
    timed(9, "byte-identical summaries across threads",
          [&] { return cli.empty() ? Outcome{false, "no CLI path given"} : criterion9(cli); });
    timed(10, "dt-refinement stability", criterion10);

    std::printf("%s\n", all_pass ? "ACCEPTANCE: ALL PASS" : "ACCEPTANCE: FAILURES PRESENT");
    return all_pass ? 0 : 1;
}
