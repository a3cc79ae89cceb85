#include "sdflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sdflow/linearization.hpp"
#include "sdflow/rng.hpp"

namespace sdflow {

std::string event_name(Event e) {
    switch (e) {
        case Event::Converged: return "Converged";
        case Event::MaxTime: return "MaxTime";
        case Event::Blowup: return "Blowup";
        case Event::MinRadiusViolation: return "MinRadiusViolation";
        case Event::StepCollapse: return "StepCollapse";
    }
    return "?";
}

HeightField build_initial_condition(const RunConfig& cfg, const Grid& grid) {
    const InitialCondition& ic = cfg.ic;
    if (ic.kind == "zero") return HeightField(grid);

    if (ic.kind == "modes") {
        HeightField out(grid);
        for (const ModeSpec& ms : ic.modes) {
            for (int i = 0; i < grid.nx; ++i) {
                const double ax = 2.0 * M_PI * std::abs(ms.m) * grid.x(i) / grid.a;
                const double fx = ms.m >= 0 ? std::cos(ax) : std::sin(ax);
                for (int j = 0; j < grid.ntheta; ++j) {
                    const double at = std::abs(ms.n) * grid.theta(j);
                    const double ft = ms.n >= 0 ? std::cos(at) : std::sin(at);
                    out.at(i, j) += ic.amplitude * ms.coef * fx * ft;
                }
            }
        }
        return out;
    }

    if (ic.kind == "offset_cylinder")
        return cylinder_height(ic.ybar, ic.zbar, ic.rbar, grid);

    if (ic.kind == "random") {
        SplitMix64 rng(ic.seed);
        SpectralField c(grid);
        const int band = std::min({ic.band, grid.nx / 2 - 1, grid.ntheta / 2 - 1});
        for (int m = 0; m <= band; ++m)
            for (int n = (m == 0 ? 1 : -band); n <= band; ++n) {
                const Complex z(rng.next_signed(), rng.next_signed());
                c.mode(m, n) = z;
                c.mode(-m, -n) = std::conj(z);
            }
        HeightField f = to_physical(c);
        const double s = sup_norm(f);
        if (s > 0.0 && ic.amplitude > 0.0)
            for (double& v : f.v) v *= ic.amplitude / s;
        return f;
    }

    throw std::invalid_argument("build_initial_condition: unknown ic.kind '" + ic.kind + "'");
}

namespace {

struct Multipliers {
    std::vector<double> lam;  // flat-state multipliers, FFT order
    double lam_max_pos = 0.0;
};

Multipliers make_multipliers(const Grid& g) {
    Multipliers m;
    m.lam.resize(g.size());
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ntheta; ++j) {
            const double l = eigenvalue(g.m_of(i), g.n_of(j), g.r, g.a);
            m.lam[static_cast<size_t>(i) * g.ntheta + j] = l;
            m.lam_max_pos = std::max(m.lam_max_pos, l);
        }
    return m;
}

GeometryOptions geom_opts(const RunConfig& cfg) {
    return GeometryOptions{cfg.dealias, cfg.clearance_factor};
}

HeightField imex_advance(const SpectralField& crho, const SpectralField& cG, double dt,
                         double kappa, const Multipliers& mult) {
    SpectralField out(crho.grid);
    for (size_t k = 0; k < out.c.size(); ++k) {
        const double l = mult.lam[k];
        out.c[k] = (crho.c[k] + dt * (cG.c[k] - kappa * l * crho.c[k])) / (1.0 - dt * kappa * l);
    }
    return to_physical(out);
}

// G(rho) in spectral form (dealiased per options) plus its physical sup norm
SpectralField spectral_G(const HeightField& rho, const RunConfig& cfg, double* res) {
    HeightField G = evolution_operator(rho, geom_opts(cfg));
    if (res) *res = sup_norm(G);
    SpectralField cG = to_spectral(G);
    if (cfg.dealias) dealias_inplace(cG);
    return cG;
}

// full diagnostics where the state allows it, cheap fields otherwise
DiagnosticsRow safe_stats(double t, const HeightField& rho, double residual,
                          const RunConfig& cfg) {
    DiagnosticsRow row;
    row.t = t;
    row.residual = residual;
    bool finite = true;
    for (double v : rho.v)
        if (!std::isfinite(v)) {
            finite = false;
            break;
        }
    row.sup_norm = finite ? sup_norm(rho) : INFINITY;
    row.min_clearance = finite ? min_clearance(rho) : -INFINITY;
    if (finite) {
        row.volume = volume(rho);
        if (row.min_clearance > 0.0) {
            row.area = area(rho, geom_opts(cfg));
            row.dA_dt_formula = dA_dt(rho, geom_opts(cfg));
        } else {
            row.area = row.dA_dt_formula = NAN;
        }
    } else {
        row.volume = row.area = row.dA_dt_formula = NAN;
    }
    return row;
}

}  // namespace

HeightField imex_step(const FlowState& state, double dt, const RunConfig& cfg) {
    const Multipliers mult = make_multipliers(state.rho.grid);
    SpectralField crho = to_spectral(state.rho);
    SpectralField cG = spectral_G(state.rho, cfg, nullptr);
    return imex_advance(crho, cG, dt, cfg.kappa, mult);
}

double adapt_dt(const FlowState& state, double err_est, const RunConfig& cfg) {
    if (err_est < 0.0) throw std::invalid_argument("adapt_dt: err_est must be >= 0");
    if (err_est == 0.0) return cfg.dt_max;
    const double prev = state.prev_err > 0.0 ? state.prev_err : err_est;
    double fac = std::pow(cfg.tol_step / err_est, 0.175) * std::pow(cfg.tol_step / prev, 0.075);
    fac = std::clamp(fac, 0.1, 5.0);
    return std::clamp(state.dt * fac, cfg.dt_min, cfg.dt_max);
}

RunOutcome run(const RunConfig& cfg, const HeightField& rho0, const Observer& observer) {
    cfg.validate();
    const Grid& grid = rho0.grid;
    if (grid.nx != cfg.nx || grid.ntheta != cfg.ntheta || grid.r != cfg.r ||
        std::abs(grid.a - cfg.a) > 1e-12 * cfg.a)
        throw std::invalid_argument("run: initial field grid does not match the config");
    const Multipliers mult = make_multipliers(grid);

    if (min_clearance(rho0) <= cfg.clearance_factor * grid.r)
        throw std::domain_error("run: initial condition violates the clearance bound");

    RunOutcome out;
    FlowState st;
    st.rho = rho0;
    st.t = 0.0;

    double dt_cap = cfg.dt_max;
    if (mult.lam_max_pos > 0.0)
        dt_cap = std::min(dt_cap, 0.9 / (cfg.kappa * mult.lam_max_pos));
    st.dt = std::min(cfg.dt0, dt_cap);

    const bool bdf2 = cfg.scheme == "bdf2";
    const bool adaptive = cfg.adaptive && !bdf2;

    SpectralField prev_rho, prev_N;
    bool have_history = false;

    long accepted = 0;
    double last_sample_t = -1.0;

    auto emit = [&](FlowState& s, double residual) {
        s.stats = safe_stats(s.t, s.rho, residual, cfg);
        out.series.push_back(s.stats);
        last_sample_t = s.t;
        if (observer) observer(s);
    };

    auto finish = [&](Event e, FlowState&& s, double residual) {
        out.event = e;
        if (s.t != last_sample_t) emit(s, residual);
        else s.stats = out.series.back();
        out.final_state = std::move(s);
        return std::move(out);
    };

    while (true) {
        double residual = 0.0;
        SpectralField crho = to_spectral(st.rho);
        SpectralField cG = spectral_G(st.rho, cfg, &residual);

        if (accepted % cfg.output.stride == 0 && st.t != last_sample_t) emit(st, residual);

        if (residual <= cfg.tol_residual) {
            CylinderFit fit = fit_cylinder(st.rho);
            if (fit.residual <= cfg.tol_fit) {
                RunOutcome o = finish(Event::Converged, std::move(st), residual);
                o.fit = fit;
                return o;
            }
        }
        if (st.t >= cfg.t_end * (1.0 - 1e-14))
            return finish(Event::MaxTime, std::move(st), residual);

        double dt = std::min(st.dt, cfg.t_end - st.t);
        HeightField next;

        if (bdf2) {
            SpectralField N(grid);
            for (size_t k = 0; k < N.c.size(); ++k)
                N.c[k] = cG.c[k] - cfg.kappa * mult.lam[k] * crho.c[k];
            const bool clipped = dt < st.dt * (1.0 - 1e-12);
            if (!have_history || clipped) {
                next = imex_advance(crho, cG, dt, cfg.kappa, mult);
                have_history = !clipped;
            } else {
                SpectralField cnext(grid);
                for (size_t k = 0; k < cnext.c.size(); ++k) {
                    const double l = mult.lam[k];
                    cnext.c[k] = (4.0 * crho.c[k] - prev_rho.c[k] +
                                  2.0 * dt * (2.0 * N.c[k] - prev_N.c[k])) /
                                 (3.0 - 2.0 * dt * cfg.kappa * l);
                }
                next = to_physical(cnext);
            }
            prev_rho = std::move(crho);
            prev_N = std::move(N);
        } else if (!adaptive) {
            next = imex_advance(crho, cG, dt, cfg.kappa, mult);
        } else {
            // step doubling: one dt step against two dt/2 steps
            while (true) {
                double err = INFINITY;
                HeightField half2;
                try {
                    HeightField full = imex_advance(crho, cG, dt, cfg.kappa, mult);
                    HeightField mid = imex_advance(crho, cG, 0.5 * dt, cfg.kappa, mult);
                    SpectralField cmid = to_spectral(mid);
                    SpectralField cGmid = spectral_G(mid, cfg, nullptr);
                    half2 = imex_advance(cmid, cGmid, 0.5 * dt, cfg.kappa, mult);
                    err = 0.0;
                    for (int k = 0; k < grid.size(); ++k)
                        err = std::max(err, std::abs(full.v[k] - half2.v[k]));
                } catch (const std::domain_error&) {
                    // midpoint left the admissible set; reject and shrink
                }
                if (err <= cfg.tol_step) {
                    next = std::move(half2);
                    const double ndt = adapt_dt(st, err, cfg);
                    if (err > 0.0) st.prev_err = err;
                    st.dt = std::min(ndt, dt_cap);
                    break;
                }
                if (dt <= cfg.dt_min * (1.0 + 1e-9))
                    return finish(Event::StepCollapse, std::move(st), residual);
                const double ndt = std::min(adapt_dt(st, err, cfg), 0.5 * dt);
                st.prev_err = err;
                dt = std::max(ndt, cfg.dt_min);
                st.dt = dt;
            }
        }

        st.rho = std::move(next);
        st.t += dt;
        ++accepted;

        if (cfg.symmetrize_every > 0 && cfg.bc == "neumann" &&
            accepted % cfg.symmetrize_every == 0) {
            HeightField refl = reflect_x(st.rho);
            for (int k = 0; k < grid.size(); ++k)
                st.rho.v[k] = 0.5 * (st.rho.v[k] + refl.v[k]);
        }

        bool finite = true;
        for (double v : st.rho.v)
            if (!std::isfinite(v)) {
                finite = false;
                break;
            }
        if (!finite || sup_norm(st.rho) > 10.0 * grid.r)
            return finish(Event::Blowup, std::move(st), NAN);
        if (min_clearance(st.rho) <= cfg.clearance_factor * grid.r)
            return finish(Event::MinRadiusViolation, std::move(st), NAN);
    }
}

RunOutcome run(const RunConfig& cfg, const Observer& observer) {
    cfg.validate();
    const Grid grid = make_grid(cfg.a, cfg.r, cfg.nx, cfg.ntheta);
    return run(cfg, build_initial_condition(cfg, grid), observer);
}

}  // namespace sdflow
