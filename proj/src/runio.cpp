#include "sdflow/runio.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace sdflow {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_series_csv(const std::string& path, const std::vector<DiagnosticsRow>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "t,volume,area,dA_dt_formula,min_clearance,sup_norm,residual\n";
    for (const DiagnosticsRow& r : rows)
        out << format_double(r.t) << ',' << format_double(r.volume) << ','
            << format_double(r.area) << ',' << format_double(r.dA_dt_formula) << ','
            << format_double(r.min_clearance) << ',' << format_double(r.sup_norm) << ','
            << format_double(r.residual) << '\n';
}

void write_snapshot_csv(const std::string& path, const HeightField& rho) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "x,theta,rho\n";
    for (int i = 0; i < rho.grid.nx; ++i)
        for (int j = 0; j < rho.grid.ntheta; ++j)
            out << format_double(rho.grid.x(i)) << ',' << format_double(rho.grid.theta(j)) << ','
                << format_double(rho.at(i, j)) << '\n';
}

void write_snapshot_csv(const std::string& path, const NeumannField& rho) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "x,theta,rho\n";
    for (int i = 0; i <= rho.nh; ++i)
        for (int j = 0; j < rho.ntheta; ++j)
            out << format_double(rho.a * i / rho.nh) << ','
                << format_double(2.0 * M_PI * j / rho.ntheta) << ','
                << format_double(rho.at(i, j)) << '\n';
}

std::string iso_timestamp_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&tt, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

namespace {

nlohmann::json config_json(const RunConfig& c) {
    nlohmann::json j;
    j["r"] = c.r;
    j["a"] = c.a;
    j["nx"] = c.nx;
    j["ntheta"] = c.ntheta;
    j["dt0"] = c.dt0;
    j["dt_min"] = c.dt_min;
    j["dt_max"] = c.dt_max;
    j["tol_step"] = c.tol_step;
    j["tol_residual"] = c.tol_residual;
    j["tol_fit"] = c.tol_fit;
    j["t_end"] = c.t_end;
    j["scheme"] = c.scheme;
    j["kappa"] = c.kappa;
    j["dealias"] = c.dealias;
    j["adaptive"] = c.adaptive;
    j["clearance_factor"] = c.clearance_factor;
    j["bc"] = c.bc;
    j["symmetrize_every"] = c.symmetrize_every;
    j["ic"]["kind"] = c.ic.kind;
    j["ic"]["amplitude"] = c.ic.amplitude;
    if (!c.ic.modes.empty()) {
        nlohmann::json arr = nlohmann::json::array();
        for (const ModeSpec& m : c.ic.modes) arr.push_back({m.m, m.n, m.coef});
        j["ic"]["modes"] = arr;
    }
    if (c.ic.kind == "offset_cylinder") {
        j["ic"]["ybar"] = c.ic.ybar;
        j["ic"]["zbar"] = c.ic.zbar;
        j["ic"]["rbar"] = c.ic.rbar;
    }
    if (c.ic.kind == "random") {
        j["ic"]["rng"] = "splitmix64";
        j["ic"]["seed"] = c.ic.seed;
        j["ic"]["band"] = c.ic.band;
    }
    j["output"]["dir"] = c.output.dir;
    j["output"]["stride"] = c.output.stride;
    j["output"]["snapshot_stride"] = c.output.snapshot_stride;
    return j;
}

nlohmann::json row_json(const DiagnosticsRow& r) {
    nlohmann::json j;
    j["t"] = r.t;
    j["volume"] = r.volume;
    j["area"] = r.area;
    j["dA_dt_formula"] = r.dA_dt_formula;
    j["min_clearance"] = r.min_clearance;
    j["sup_norm"] = r.sup_norm;
    j["residual"] = r.residual;
    return j;
}

}  // namespace

void write_manifest(const std::string& path, const RunConfig& cfg, const RunOutcome& outcome,
                    double initial_volume, double solver_period, const std::string& started,
                    const std::string& finished) {
    nlohmann::json j;
    j["version"] = kVersion;
    j["config"] = config_json(cfg);
    j["started"] = started;
    j["finished"] = finished;
    j["event"] = event_name(outcome.event);
    j["final"] = row_json(outcome.final_state.stats);
    j["initial_volume"] = initial_volume;
    j["predicted_rbar"] = predicted_radius(initial_volume, solver_period);
    if (outcome.fit) {
        j["fit"]["ybar"] = outcome.fit->ybar;
        j["fit"]["zbar"] = outcome.fit->zbar;
        j["fit"]["rbar"] = outcome.fit->rbar;
        j["fit"]["residual"] = outcome.fit->residual;
        j["fit"]["converged"] = outcome.fit->converged;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << '\n';
}

RunOutcome execute_run(const RunConfig& cfg) {
    namespace fs = std::filesystem;
    cfg.validate();
    fs::create_directories(cfg.output.dir);
    const std::string started = iso_timestamp_now();

    const bool neumann = cfg.bc == "neumann";
    const double solver_period = neumann ? 2.0 * cfg.a : cfg.a;

    int sample_idx = 0;
    int snap_idx = 0;
    int last_written_sample = -1;
    double vol0 = 0.0;
    bool have_vol0 = false;

    auto snap_path = [&](int k) {
        return cfg.output.dir + "/snap_" + std::to_string(k) + ".csv";
    };
    auto want_snapshot = [&](int sample) {
        if (sample == 0) return true;
        return cfg.output.snapshot_stride > 0 && sample % cfg.output.snapshot_stride == 0;
    };

    RunOutcome outcome;
    if (neumann) {
        NeumannField last;
        outcome = run_neumann(cfg, [&](const FlowState& s, const NeumannField& half) {
            if (!have_vol0) {
                vol0 = volume(s.rho);
                have_vol0 = true;
            }
            if (want_snapshot(sample_idx)) {
                write_snapshot_csv(snap_path(snap_idx++), half);
                last_written_sample = sample_idx;
            }
            last = half;
            ++sample_idx;
        });
        if (last.nh > 0 && last_written_sample != sample_idx - 1)
            write_snapshot_csv(snap_path(snap_idx++), last);
    } else {
        HeightField last;
        outcome = run(cfg, [&](const FlowState& s) {
            if (!have_vol0) {
                vol0 = volume(s.rho);
                have_vol0 = true;
            }
            if (want_snapshot(sample_idx)) {
                write_snapshot_csv(snap_path(snap_idx++), s.rho);
                last_written_sample = sample_idx;
            }
            last = s.rho;
            ++sample_idx;
        });
        if (!last.v.empty() && last_written_sample != sample_idx - 1)
            write_snapshot_csv(snap_path(snap_idx++), last);
    }

    write_series_csv(cfg.output.dir + "/series.csv", outcome.series);
    write_manifest(cfg.output.dir + "/manifest.json", cfg, outcome, vol0, solver_period, started,
                   iso_timestamp_now());
    return outcome;
}

}  // namespace sdflow
