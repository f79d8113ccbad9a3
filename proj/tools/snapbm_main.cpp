#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "snapbm/bounds.hpp"
#include "snapbm/estimators.hpp"
#include "snapbm/json_io.hpp"
#include "snapbm/parallel.hpp"
#include "snapbm/proofcheck.hpp"
#include "snapbm/scenarios.hpp"
#include "snapbm/svg.hpp"

using nlohmann::json;
using namespace snapbm;

namespace {

constexpr const char* kVersion = "0.1.0";

struct GlobalOpts {
    std::string config_path;
    uint64_t seed = 0;
    bool seed_given = false;
    long particles = 10000;
    double dt = 1e-3;
    double t_final = 10.0;
    double grid_pitch = 0.0;  // 0 = auto
    std::string out_dir = ".";
    std::string threads = "auto";
    bool svg = false;
};

int thread_count(const GlobalOpts& g) {
    if (g.threads == "auto") return resolve_threads(0);
    return std::max(1, std::atoi(g.threads.c_str()));
}

uint64_t effective_seed(const GlobalOpts& g) {
    if (g.seed_given) return g.seed;
    if (const char* env = std::getenv("SNAPBM_SEED")) return std::strtoull(env, nullptr, 10);
    return g.seed;
}

std::string hex64(uint64_t v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

json meta_block(const GlobalOpts& g, const std::string& config_bytes) {
    json m;
    m["artifact_version"] = kVersion;
    m["seed"] = effective_seed(g);
    m["dt"] = g.dt;
    m["particles"] = g.particles;
    m["config_hash"] = hex64(fnv1a64(config_bytes));
    return m;
}

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_summary(const GlobalOpts& g, const json& summary) {
    std::filesystem::create_directories(g.out_dir);
    write_file(g.out_dir + "/summary.json", summary.dump(2) + "\n");
}

struct LoadedConfig {
    DomainSpec domain;
    std::string bytes;
};

LoadedConfig load_config(const GlobalOpts& g) {
    if (g.config_path.empty()) throw ConfigError("--config is required for this command");
    std::string bytes = read_file(g.config_path);
    json j;
    try {
        j = json::parse(bytes);
    } catch (const json::parse_error& ex) {
        throw ConfigError(std::string("config parse error: ") + ex.what());
    }
    return {domain_from_json(j), bytes};
}

double auto_pitch(const GlobalOpts& g, const DomainSpec& domain, double divisor) {
    if (g.grid_pitch > 0.0) return g.grid_pitch;
    return geodesic_diameter(domain) / divisor;
}

void warn_if_dt_large(const DomainSpec& domain, const SimConfig& sim) {
    GeometryReport rep;
    rep.kappa = max_curvature(domain);
    rep.rho = separation_rho(domain);
    if (dt_warning(rep, sim)) {
        double r_geom = std::min(1.0 / rep.kappa, rep.rho);
        std::cerr << "warning: dt=" << sim.dt << " exceeds (min{1/kappa, rho})^2/25 = "
                  << r_geom * r_geom / 25.0 << "; steps may hop across barriers\n";
    }
}

json report_to_json(const GeometryReport& rep) {
    json j;
    j["kappa"] = rep.kappa;
    j["rho"] = rep.rho;
    j["delta"] = rep.delta;
    j["area"] = rep.area;
    if (rep.lambda_min) j["lambda_min"] = *rep.lambda_min;
    if (rep.lambda_max) j["lambda_max"] = *rep.lambda_max;
    j["R"] = rep.R;
    j["c"] = rep.c;
    return j;
}

// ---------------------------------------------------------------- scenario

int cmd_scenario(const GlobalOpts& g, const std::string& name, int n, double lambda_base,
                 double bias, const std::string& mode, double rb, double lp, double lm,
                 const std::string& emit) {
    std::optional<DomainSpec> domain;
    if (name == "disk_plain") {
        domain = disk_plain();
    } else if (name == "disk_one_barrier") {
        domain = disk_one_barrier(rb, lp, lm);
    } else if (name == "nested_circles") {
        NestedMode m = mode == "outward" ? NestedMode::Outward : NestedMode::Metastable;
        domain = nested_circles(n, lambda_base, bias, m);
    } else if (name == "nonconvex_spline") {
        domain = nonconvex_spline();
    } else if (name == "cluttered_rectangleish") {
        domain = cluttered_rectangleish();
    } else {
        std::cerr << "unknown scenario: " << name << "\n";
        return 1;
    }
    std::string path = emit.empty() ? (g.out_dir + "/config.json") : emit;
    std::filesystem::create_directories(std::filesystem::path(path).parent_path().empty()
                                            ? "."
                                            : std::filesystem::path(path).parent_path()
                                                  .string());
    write_file(path, domain_to_json(*domain).dump(2) + "\n");
    std::cout << "wrote " << path << "\n";
    return 0;
}

// ---------------------------------------------------------------- geometry

int cmd_geometry(const GlobalOpts& g, double c) {
    LoadedConfig cfg = load_config(g);
    GeometryReport rep = geometry_report(cfg.domain, c);
    json out;
    out["meta"] = meta_block(g, cfg.bytes);
    out["geometry"] = report_to_json(rep);
    write_summary(g, out);
    std::filesystem::create_directories(g.out_dir);
    write_file(g.out_dir + "/geometry.json", out.dump(2) + "\n");
    std::cout << "kappa=" << rep.kappa << " rho=" << rep.rho << " delta=" << rep.delta
              << " area=" << rep.area << " R=" << rep.R << "\n";
    return 0;
}

// ---------------------------------------------------------------- simulate

int cmd_simulate(const GlobalOpts& g, const std::string& x0_str,
                 const std::string& trajectory_path, double record_dt,
                 const std::string& snapshot_list) {
    LoadedConfig cfg = load_config(g);
    SimConfig sim;
    sim.dt = g.dt;
    sim.seed = effective_seed(g);
    sim.particles = g.particles;
    sim.t_final = g.t_final;
    warn_if_dt_large(cfg.domain, sim);

    std::optional<Vec2> x0;
    if (!x0_str.empty()) {
        double x, y;
        if (std::sscanf(x0_str.c_str(), "%lf,%lf", &x, &y) != 2)
            throw ConfigError("--x0 expects \"x,y\"");
        x0 = Vec2{x, y};
    }

    std::filesystem::create_directories(g.out_dir);

    if (!trajectory_path.empty()) {
        Vec2 start = x0 ? *x0 : Vec2{0.0, 0.0};
        Trajectory traj = simulate_trajectory(cfg.domain, sim, start, nullptr, record_dt);
        std::ostringstream csv;
        int m = cfg.domain.num_barriers();
        csv << "t,x,y";
        for (int i = 1; i <= m; ++i) csv << ",s_" << i;
        for (int i = 1; i <= m; ++i) csv << ",L_" << i;
        csv << "\n";
        for (const TrajectoryRow& r : traj.rows) {
            csv << num(r.t) << "," << num(r.pos.x) << "," << num(r.pos.y);
            for (int i = 0; i < m; ++i) csv << "," << int(r.signs[i]);
            for (int i = 0; i < m; ++i) csv << "," << num(r.local_times[i]);
            csv << "\n";
        }
        write_file(trajectory_path, csv.str());
        std::cout << "wrote " << trajectory_path << " (" << traj.rows.size() << " rows)\n";
    }

    Ensemble ens;
    std::vector<double> snaps;
    if (!snapshot_list.empty()) {
        std::stringstream ss(snapshot_list);
        std::string tok;
        while (std::getline(ss, tok, ',')) snaps.push_back(std::stod(tok));
    }
    if (x0) {
        ens = simulate_paths(cfg.domain, sim, *x0, nullptr, snaps, thread_count(g));
    } else {
        ens = simulate_paths_from(
            cfg.domain, sim,
            [&](long, CounterRng& rng) { return uniform_point_in_domain(cfg.domain, rng); },
            snaps, thread_count(g));
    }

    // ordered reductions keep the summary byte-stable across thread counts
    int m = cfg.domain.num_barriers();
    Vec2 mean{0.0, 0.0};
    std::vector<double> mean_lt(m, 0.0), mean_flips(m, 0.0);
    for (const ParticleState& st : ens.finals) {
        mean += st.position;
        for (int i = 0; i < m; ++i) {
            mean_lt[i] += st.local_times[i];
            mean_flips[i] += static_cast<double>(st.flip_counts[i]);
        }
    }
    double inv = 1.0 / static_cast<double>(sim.particles);
    json out;
    out["meta"] = meta_block(g, cfg.bytes);
    out["simulate"]["final_mean"] = {mean.x * inv, mean.y * inv};
    json lt = json::array(), fl = json::array();
    for (int i = 0; i < m; ++i) {
        lt.push_back(mean_lt[i] * inv);
        fl.push_back(mean_flips[i] * inv);
    }
    out["simulate"]["mean_local_time"] = std::move(lt);
    out["simulate"]["mean_flips"] = std::move(fl);
    out["simulate"]["t_final"] = sim.t_final;
    write_summary(g, out);
    return 0;
}

// ---------------------------------------------------------------- stationary

int cmd_stationary(const GlobalOpts& g, double burn_in, int n_snapshots) {
    LoadedConfig cfg = load_config(g);
    SimConfig sim;
    sim.dt = g.dt;
    sim.seed = effective_seed(g);
    sim.particles = g.particles;
    sim.t_final = g.t_final;
    warn_if_dt_large(cfg.domain, sim);
    if (burn_in <= 0.0) burn_in = g.t_final / 5.0;

    GridPtr grid = make_grid(cfg.domain, auto_pitch(g, cfg.domain, 64.0));
    StationaryResult st =
        stationary_estimate(cfg.domain, sim, burn_in, grid, n_snapshots, thread_count(g));
    PiMinResult pm = pi_min_estimate(st.pi_hat, st.pooled_samples);

    std::filesystem::create_directories(g.out_dir);
    std::ostringstream csv;
    csv << "cell_x,cell_y,mass,cell_area\n";
    for (int c = 0; c < grid->num_cells(); ++c)
        csv << num(grid->cell_centers()[c].x) << "," << num(grid->cell_centers()[c].y) << ","
            << num(st.pi_hat.mass[c]) << "," << num(grid->cell_areas()[c]) << "\n";
    write_file(g.out_dir + "/pi_hat.csv", csv.str());
    if (g.svg) write_heatmap_svg(g.out_dir + "/pi_hat.svg", st.pi_hat);

    json out;
    out["meta"] = meta_block(g, cfg.bytes);
    out["stationary"]["pi_min_hat"] = pm.value;
    out["stationary"]["pi_min_cell"] = {pm.cell_center.x, pm.cell_center.y};
    out["stationary"]["small_sample_warning"] = pm.small_sample_warning;
    out["stationary"]["converged"] = st.converged;
    out["stationary"]["split_half_tv"] = st.split_half_tv;
    out["stationary"]["pooled_samples"] = st.pooled_samples;
    out["stationary"]["burn_in"] = burn_in;
    write_summary(g, out);
    if (!st.converged) {
        std::cerr << "NotConverged: split-half TV " << st.split_half_tv << " > 0.05\n";
        return 2;
    }
    return 0;
}

// ---------------------------------------------------------------- mixing

int cmd_mixing(const GlobalOpts& g, int n_snapshots, double start_pitch) {
    LoadedConfig cfg = load_config(g);
    SimConfig sim;
    sim.dt = g.dt;
    sim.seed = effective_seed(g);
    sim.particles = g.particles;
    sim.t_final = g.t_final;
    warn_if_dt_large(cfg.domain, sim);

    double delta = geodesic_diameter(cfg.domain);
    double pitch = g.grid_pitch > 0.0 ? g.grid_pitch : delta / 64.0;
    GridPtr grid = make_grid(cfg.domain, pitch);

    SimConfig pi_cfg = sim;
    pi_cfg.seed = derive_seed(sim.seed, 0xA11CE);
    StationaryResult st = stationary_estimate(cfg.domain, pi_cfg, 0.3 * g.t_final, grid, 40,
                                              thread_count(g));

    if (start_pitch <= 0.0) start_pitch = delta / 8.0;
    std::vector<Vec2> starts = make_start_mesh(cfg.domain, start_pitch);
    std::vector<double> times(n_snapshots);
    for (int j = 0; j < n_snapshots; ++j) times[j] = (j + 1) * g.t_final / n_snapshots;

    MixingEstimate mix = mixing_time_estimate(cfg.domain, sim, starts, times, st.pi_hat,
                                              0.25, thread_count(g));

    // grid-resolution probe: the same first-start, first-time TV on a 2x
    // coarser grid
    double resolution_diag = 0.0;
    if (!starts.empty()) {
        GridPtr coarse = make_grid(cfg.domain, 2.0 * pitch);
        SimConfig sub = sim;
        sub.seed = derive_seed(sim.seed, 0);
        Ensemble e1 = simulate_paths(cfg.domain, sub, starts[0], nullptr, {times[0]},
                                     thread_count(g));
        StationaryResult st2 = stationary_estimate(cfg.domain, pi_cfg, 0.3 * g.t_final,
                                                   coarse, 40, thread_count(g));
        double tv_coarse = tv_distance(histogram_from_points(coarse, e1.snapshots[0]),
                                       st2.pi_hat);
        resolution_diag = std::abs(mix.tv_curve.front().tv - tv_coarse);
    }

    std::filesystem::create_directories(g.out_dir);
    std::ostringstream csv;
    csv << "start_x,start_y,t,tv\n";
    for (const TvCurveRow& r : mix.tv_curve)
        csv << num(r.start.x) << "," << num(r.start.y) << "," << num(r.t) << ","
            << num(r.tv) << "\n";
    write_file(g.out_dir + "/tv_curve.csv", csv.str());

    json out;
    out["meta"] = meta_block(g, cfg.bytes);
    json& jm = out["mixing"];
    jm["bounded"] = mix.bounded;
    if (mix.bounded)
        jm["t_mix_hat"] = mix.t_mix_hat;
    else
        jm["t_mix_hat"] = "unbounded_within_horizon";
    jm["threshold"] = mix.threshold;
    jm["horizon"] = g.t_final;
    jm["n_starts"] = starts.size();
    jm["pi_converged"] = st.converged;
    jm["grid_pitch"] = pitch;
    jm["tv_resolution_diag"] = resolution_diag;
    write_summary(g, out);

    if (mix.horizon_too_short) {
        std::cerr << "HorizonTooShort: worst-start TV stayed above 1/4\n";
        return 2;
    }
    return 0;
}

// ---------------------------------------------------------------- doeblin

int cmd_doeblin(const GlobalOpts& g, double T, double start_pitch) {
    LoadedConfig cfg = load_config(g);
    SimConfig sim;
    sim.dt = g.dt;
    sim.seed = effective_seed(g);
    sim.particles = g.particles;
    sim.t_final = T;
    warn_if_dt_large(cfg.domain, sim);

    double delta = geodesic_diameter(cfg.domain);
    GridPtr grid = make_grid(cfg.domain, g.grid_pitch > 0.0 ? g.grid_pitch : delta / 8.0);
    if (start_pitch <= 0.0) start_pitch = delta / 8.0;
    std::vector<Vec2> starts = make_start_mesh(cfg.domain, start_pitch);

    DoeblinEstimate doeblin =
        doeblin_constant(cfg.domain, sim, T, starts, grid, thread_count(g));
    double domain_area = area(cfg.domain);

    json out;
    out["meta"] = meta_block(g, cfg.bytes);
    json& jd = out["doeblin"];
    jd["doeblin_C"] = doeblin.C_hat;
    jd["C_area"] = doeblin.C_hat * domain_area;
    jd["T"] = T;
    jd["worst_start"] = {doeblin.worst_start.x, doeblin.worst_start.y};
    if (doeblin.C_hat * domain_area > 0.0 && doeblin.C_hat * domain_area < 1.0)
        jd["tmix_upper_from_doeblin"] = doeblin_to_tmix(doeblin.C_hat, T, domain_area);
    else
        jd["tmix_upper_from_doeblin"] = nullptr;
    write_summary(g, out);
    std::cout << "C_hat=" << doeblin.C_hat << " C*Area=" << doeblin.C_hat * domain_area
              << "\n";
    return 0;
}

// ---------------------------------------------------------------- bounds

int cmd_bounds(const GlobalOpts& g, double c, double empirical_tmix, double empirical_pimin) {
    LoadedConfig cfg = load_config(g);
    GeometryReport rep = geometry_report(cfg.domain, c);
    json out;
    out["meta"] = meta_block(g, cfg.bytes);
    out["geometry"] = report_to_json(rep);
    try {
        BoundReport br = theorem_bounds(rep);
        if (empirical_tmix > 0.0) br.empirical_tmix = empirical_tmix;
        if (empirical_pimin > 0.0) br.empirical_pimin = empirical_pimin;
        consistency_check(br);
        json& jb = out["bounds"];
        jb["R"] = br.R;
        jb["c"] = br.c_used;
        jb["tmix_upper_log10"] = br.log10_tmix_upper;
        jb["pimin_lower_log10"] = br.log10_pimin_lower;
        jb["tmix_upper"] = br.tmix_upper;
        jb["pimin_lower"] = br.pimin_lower;
        if (br.empirical_tmix) jb["empirical_tmix"] = *br.empirical_tmix;
        if (br.empirical_pimin) jb["empirical_pimin"] = *br.empirical_pimin;
        jb["flags"]["evaluated"] = br.evaluated;
        if (br.evaluated) {
            jb["flags"]["tmix_ok"] = br.tmix_ok;
            jb["flags"]["pimin_ok"] = br.pimin_ok;
            if (br.minimal_passing_c)
                jb["flags"]["minimal_passing_c"] = *br.minimal_passing_c;
        }
    } catch (const NoBarriers& ex) {
        out["bounds"]["note"] = std::string(ex.what());
    }
    write_summary(g, out);
    return 0;
}

// ---------------------------------------------------------------- proofcheck

int cmd_proofcheck(const GlobalOpts& g, bool particles_given) {
    uint64_t seed = effective_seed(g);
    // the ratio checks need ~1e5+ samples to resolve their bands
    long N = particles_given ? g.particles : std::max<long>(g.particles, 200000);
    int threads = thread_count(g);

    std::vector<json> rows;
    bool all_pass = true;
    auto add_row = [&](const std::string& name, const std::string& params,
                       const EstimateCI& e, bool pass) {
        json r;
        r["check_name"] = name;
        r["params"] = params;
        r["estimate"] = e.estimate;
        r["ci_low"] = e.ci_low;
        r["ci_high"] = e.ci_high;
        r["pass"] = pass;
        rows.push_back(r);
        all_pass = all_pass && pass;
    };

    // pill-tube event: eps -> eps/2 should divide the probability by ~4
    // (gamma = 0.8 keeps the tube-survival factor resolvable)
    double R = 1.0, gamma = 0.8;
    EstimateCI p1 = pill_event_probability(R, {0.0, 0.0}, 0.20 * R, gamma, N, seed, 2048,
                                           threads);
    EstimateCI p2 = pill_event_probability(R, {0.0, 0.0}, 0.10 * R, gamma, N, seed, 2048,
                                           threads);
    double ratio = p2.estimate > 0.0 ? p1.estimate / p2.estimate : 0.0;
    add_row("pill_eps_ratio", "R=1,gamma=0.8,eps=0.2R vs 0.1R",
            {ratio, ratio, ratio, N}, ratio >= 3.2 && ratio <= 4.8);

    // crossing probability, linear in the rate
    CrossingProtocol proto;
    std::vector<double> lambdas{0.4, 0.2, 0.1, 0.05};
    CrossingScalingResult cs = crossing_probability_scaling(lambdas, N, seed, proto, threads);
    bool slope_ok = true;
    for (double r : cs.ratios) slope_ok = slope_ok && r >= 1.6 && r <= 2.4;
    for (size_t i = 0; i < lambdas.size(); ++i) {
        std::ostringstream ps;
        ps << "lambda=" << lambdas[i];
        add_row("crossing_probability", ps.str(), cs.probabilities[i], true);
    }
    add_row("crossing_halving_ratio", "lambda halved",
            {cs.ratios.empty() ? 0.0 : cs.ratios[0], 0.0, 0.0, N}, slope_ok);

    // classical-limit uniformity on the unit disk
    UniformityResult ur = time_reversal_uniformity(disk_plain(), 8.0, std::min<long>(N, 100000),
                                                   derive_seed(seed, 2),
                                                   2.0 / 24.0, std::nullopt, g.dt, threads);
    add_row("time_reversal_uniformity", "unit disk, T=8", {ur.tv, ur.tv, ur.tv, ur.N},
            ur.pass);

    std::filesystem::create_directories(g.out_dir);
    std::ostringstream csv;
    csv << "check_name,params,estimate,ci_low,ci_high,pass\n";
    for (const json& r : rows)
        csv << r["check_name"].get<std::string>() << ",\"" << r["params"].get<std::string>()
            << "\"," << num(r["estimate"].get<double>()) << ","
            << num(r["ci_low"].get<double>()) << "," << num(r["ci_high"].get<double>()) << ","
            << (r["pass"].get<bool>() ? "1" : "0") << "\n";
    write_file(g.out_dir + "/proofcheck.csv", csv.str());

    json out;
    GlobalOpts gm = g;
    out["meta"] = meta_block(gm, "");
    out["proofcheck"]["rows"] = rows;
    out["proofcheck"]["all_pass"] = all_pass;
    write_summary(g, out);
    return all_pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"snapping-out Brownian motion simulator and analysis toolkit"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--config", g.config_path, "domain config JSON");
    auto* seed_opt = app.add_option("--seed", g.seed, "RNG seed (overrides SNAPBM_SEED)");
    auto* particles_opt = app.add_option("--particles", g.particles, "ensemble size");
    app.add_option("--dt", g.dt, "Euler step");
    app.add_option("--t-final", g.t_final, "time horizon");
    app.add_option("--grid-pitch", g.grid_pitch, "histogram cell size (default: auto)");
    app.add_option("--out", g.out_dir, "output directory");
    app.add_option("--threads", g.threads, "worker threads (N or auto)");
    app.add_flag("--svg", g.svg, "emit SVG heat maps");

    // scenario
    auto* sc = app.add_subcommand("scenario", "emit a canned domain config");
    std::string sc_name, sc_mode = "metastable", sc_emit;
    int sc_n = 1;
    double sc_lambda = 1.0, sc_bias = 4.0, sc_rb = 0.5, sc_lp = 1.0, sc_lm = 1.0;
    sc->add_option("name", sc_name,
                   "disk_plain|disk_one_barrier|nested_circles|nonconvex_spline|"
                   "cluttered_rectangleish")
        ->required();
    sc->add_option("--n", sc_n, "nested_circles: n");
    sc->add_option("--lambda-base", sc_lambda, "nested_circles: base rate");
    sc->add_option("--bias", sc_bias, "nested_circles: bias factor b > 1");
    sc->add_option("--mode", sc_mode, "nested_circles: metastable|outward");
    sc->add_option("--rb", sc_rb, "disk_one_barrier: barrier radius");
    sc->add_option("--lp", sc_lp, "disk_one_barrier: lambda_plus");
    sc->add_option("--lm", sc_lm, "disk_one_barrier: lambda_minus");
    sc->add_option("--emit", sc_emit, "output config path");

    // geometry
    auto* ge = app.add_subcommand("geometry", "geometric parameter report");
    double ge_c = 1.0;
    ge->add_option("--c", ge_c, "constant c in R = c*min{1/kappa, 1/lambda_max, rho}");

    // simulate
    auto* si = app.add_subcommand("simulate", "run an ensemble (or one trajectory)");
    std::string si_x0, si_traj, si_snaps;
    double si_record_dt = 0.0;
    si->add_option("--x0", si_x0, "start point \"x,y\" (default: uniform starts)");
    si->add_option("--trajectory", si_traj, "also dump a single-particle trajectory CSV");
    si->add_option("--record-dt", si_record_dt, "trajectory recording interval");
    si->add_option("--snapshots", si_snaps, "comma-separated snapshot times");

    // stationary
    auto* st = app.add_subcommand("stationary", "stationary law estimate");
    double st_burn = 0.0;
    int st_snaps = 50;
    st->add_option("--burn-in", st_burn, "burn-in time (default t_final/5)");
    st->add_option("--n-snapshots", st_snaps, "pooled snapshots");

    // mixing
    auto* mx = app.add_subcommand("mixing", "mixing time estimate");
    int mx_snaps = 20;
    double mx_start_pitch = 0.0;
    mx->add_option("--n-snapshots", mx_snaps, "snapshot count over the horizon");
    mx->add_option("--start-pitch", mx_start_pitch, "start mesh pitch (default delta/8)");

    // doeblin
    auto* db = app.add_subcommand("doeblin", "empirical minorization constant");
    double db_T = 4.0, db_start_pitch = 0.0;
    db->add_option("--T", db_T, "minorization time");
    db->add_option("--start-pitch", db_start_pitch, "start mesh pitch (default delta/8)");

    // bounds
    auto* bd = app.add_subcommand("bounds", "worst-case bound formulas");
    double bd_c = 1.0, bd_et = 0.0, bd_ep = 0.0;
    bd->add_option("--c", bd_c, "constant c");
    bd->add_option("--empirical-tmix", bd_et, "empirical mixing time to compare");
    bd->add_option("--empirical-pimin", bd_ep, "empirical pi_min to compare");

    // proofcheck
    auto* pc = app.add_subcommand("proofcheck", "statistical checks of the proof ingredients");

    for (CLI::App* s : {sc, ge, si, st, mx, db, bd, pc}) s->fallthrough();

    CLI11_PARSE(app, argc, argv);
    g.seed_given = seed_opt->count() > 0;

    try {
        if (sc->parsed())
            return cmd_scenario(g, sc_name, sc_n, sc_lambda, sc_bias, sc_mode, sc_rb, sc_lp,
                                sc_lm, sc_emit);
        if (ge->parsed()) return cmd_geometry(g, ge_c);
        if (si->parsed()) return cmd_simulate(g, si_x0, si_traj, si_record_dt, si_snaps);
        if (st->parsed()) return cmd_stationary(g, st_burn, st_snaps);
        if (mx->parsed()) return cmd_mixing(g, mx_snaps, mx_start_pitch);
        if (db->parsed()) return cmd_doeblin(g, db_T, db_start_pitch);
        if (bd->parsed()) return cmd_bounds(g, bd_c, bd_et, bd_ep);
        return cmd_proofcheck(g, particles_opt->count() > 0);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
}
