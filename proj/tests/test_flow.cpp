#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sdflow/flow.hpp"
#include "sdflow/linearization.hpp"

using namespace sdflow;

namespace {

RunConfig base_config(double r, int n = 32) {
    RunConfig cfg;
    cfg.r = r;
    cfg.nx = cfg.ntheta = n;
    return cfg;
}

}  // namespace

TEST_CASE("imex_step") {
    SUBCASE("the flat state is a fixed point for any dt") {
        RunConfig cfg = base_config(1.5);
        FlowState st;
        st.rho = HeightField(make_grid(cfg.a, cfg.r, cfg.nx, cfg.ntheta));
        for (double dt : {1e-4, 1e-2, 0.5}) {
            HeightField next = imex_step(st, dt, cfg);
            CHECK(sup_norm(next) < 1e-12);
        }
    }

    SUBCASE("one-step amplitude ratio approaches exp(lambda dt)") {
        RunConfig cfg = base_config(2.0);
        Grid g = make_grid(cfg.a, cfg.r, cfg.nx, cfg.ntheta);
        const double delta = 1e-6;
        FlowState st;
        st.rho = oracles::sample(g, [&](double x, double) { return delta * std::cos(x); });
        double prev_defect = 0.0;
        for (double dt : {1e-2, 1e-3}) {
            HeightField next = imex_step(st, dt, cfg);
            const double ratio = mode_amplitude(next, 1, 0) / delta;
            const double defect = std::abs(ratio - std::exp(-0.75 * dt));
            if (prev_defect > 0.0) CHECK(defect < prev_defect / 50.0);  // O(dt^2)
            prev_defect = defect;
        }
    }

    SUBCASE("equilibria stay put") {
        RunConfig cfg = base_config(1.5, 64);
        Grid g = make_grid(cfg.a, cfg.r, cfg.nx, cfg.ntheta);
        FlowState st;
        st.rho = cylinder_height(0.05, 0.0, 1.2, g);
        HeightField next = imex_step(st, 0.05, cfg);
        CHECK(oracles::max_abs_diff(next, st.rho) < 1e-10);
    }
}

TEST_CASE("adapt_dt controller") {
    RunConfig cfg = base_config(1.5);
    FlowState st;
    st.dt = 0.01;

    SUBCASE("zero error jumps to dt_max") {
        CHECK(adapt_dt(st, 0.0, cfg) == cfg.dt_max);
    }

    SUBCASE("on-target error keeps dt") {
        CHECK(adapt_dt(st, cfg.tol_step, cfg) == doctest::Approx(st.dt).epsilon(0.1));
    }

    SUBCASE("error 16x over tolerance roughly halves dt") {
        CHECK(adapt_dt(st, 16.0 * cfg.tol_step, cfg) == doctest::Approx(0.5 * st.dt).epsilon(0.02));
    }

    SUBCASE("clamped to [dt_min, dt_max]") {
        CHECK(adapt_dt(st, 1e30, cfg) >= cfg.dt_min);
        CHECK(adapt_dt(st, 1e-30, cfg) <= cfg.dt_max);
    }
}

TEST_CASE("run: stability at r = 1.5 converges to the volume-predicted cylinder") {
    RunConfig cfg = base_config(1.5);
    cfg.ic.kind = "modes";
    cfg.ic.amplitude = 0.01;
    cfg.ic.modes = {{1, 1, 1.0}, {-2, 0, 0.5}};
    cfg.t_end = 50.0;

    RunOutcome out = run(cfg);
    CHECK(out.event == Event::Converged);
    REQUIRE(out.fit.has_value());

    const double v0 = out.series.front().volume;
    const double vT = out.series.back().volume;
    CHECK(std::abs(vT - v0) <= 1e-6 * v0);

    for (size_t k = 1; k < out.series.size(); ++k)
        CHECK(out.series[k].area <= out.series[k - 1].area + 1e-9 * out.series.front().area);

    const double rbar_pred = predicted_radius(v0, cfg.a);
    CHECK(std::abs(out.fit->rbar - rbar_pred) <= 1e-4 * rbar_pred);
}

TEST_CASE("run: equilibrium initial data converges immediately") {
    RunConfig cfg = base_config(1.5, 64);
    cfg.ic.kind = "offset_cylinder";
    cfg.ic.ybar = 0.1;
    cfg.ic.zbar = 0.0;
    cfg.ic.rbar = 1.3;
    RunOutcome out = run(cfg);
    CHECK(out.event == Event::Converged);
    CHECK(out.final_state.t == 0.0);
    REQUIRE(out.fit.has_value());
    CHECK(out.fit->ybar == doctest::Approx(0.1).epsilon(1e-6));
    CHECK(out.fit->zbar == doctest::Approx(0.0));
    CHECK(out.fit->rbar == doctest::Approx(1.3).epsilon(1e-6));
}

TEST_CASE("run: single-mode decay rates match the eigenvalues within 5%") {
    struct Case {
        double r;
        int m, n;
    };
    for (const Case& c : {Case{2.0, 1, 0}, Case{1.5, 1, 1}}) {
        RunConfig cfg = base_config(c.r);
        cfg.ic.kind = "modes";
        cfg.ic.amplitude = 1e-3;
        cfg.ic.modes = {{c.m, c.n, 1.0}};
        cfg.t_end = 2.0;
        cfg.tol_residual = 1e-16;  // run the full horizon
        cfg.output.stride = 1;

        std::vector<std::pair<double, double>> amps;
        run(cfg, [&](const FlowState& s) {
            amps.emplace_back(s.t, mode_amplitude(s.rho, c.m, c.n));
        });
        REQUIRE(amps.size() >= 10);
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (auto& [t, a] : amps) {
            sx += t;
            sy += std::log(a);
            sxx += t * t;
            sxy += t * std::log(a);
        }
        const double n = static_cast<double>(amps.size());
        const double rate = -(n * sxy - sx * sy) / (n * sxx - sx * sx);
        const double expect = -eigenvalue(c.m, c.n, c.r, cfg.a);
        CHECK(std::abs(rate - expect) < 0.05 * expect);
    }
}

TEST_CASE("run: instability at r = 0.8 grows at 0.5625 and fails") {
    RunConfig cfg = preset_config("instability");
    cfg.nx = cfg.ntheta = 32;

    std::vector<std::pair<double, double>> amps;
    RunOutcome out = run(cfg, [&](const FlowState& s) {
        if (s.t <= 5.0) amps.emplace_back(s.t, mode_amplitude(s.rho, 1, 0));
    });
    CHECK((out.event == Event::MinRadiusViolation || out.event == Event::Blowup));

    REQUIRE(amps.size() >= 5);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto& [t, a] : amps) {
        sx += t;
        sy += std::log(a);
        sxx += t * t;
        sxy += t * std::log(a);
    }
    const double n = static_cast<double>(amps.size());
    const double rate = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(std::abs(rate - 0.5625) < 0.05 * 0.5625);
}

TEST_CASE("run: symmetries persist along the flow") {
    SUBCASE("axisymmetric data stays axisymmetric") {
        RunConfig cfg = base_config(1.5);
        cfg.ic.kind = "modes";
        cfg.ic.amplitude = 0.05;
        cfg.ic.modes = {{1, 0, 1.0}, {-2, 0, 0.4}};
        cfg.t_end = 1.0;
        cfg.tol_residual = 1e-16;
        RunOutcome out = run(cfg);
        const HeightField& rho = out.final_state.rho;
        double worst = 0.0;
        for (int i = 0; i < rho.grid.nx; ++i)
            for (int j = 1; j < rho.grid.ntheta; ++j)
                worst = std::max(worst, std::abs(rho.at(i, j) - rho.at(i, 0)));
        CHECK(worst < 1e-10);
    }

    SUBCASE("reflection-symmetric data stays reflection-symmetric") {
        RunConfig cfg = base_config(1.5);
        cfg.ic.kind = "modes";
        cfg.ic.amplitude = 0.05;
        cfg.ic.modes = {{1, 1, 1.0}, {2, 0, 0.5}};  // cosines only: even in x
        cfg.t_end = 1.0;
        cfg.tol_residual = 1e-16;
        RunOutcome out = run(cfg);
        CHECK(oracles::max_abs_diff(reflect_x(out.final_state.rho), out.final_state.rho) <
              1e-10);
    }
}

TEST_CASE("run: fixed-step error decays at first order in dt") {
    RunConfig cfg = base_config(1.5);
    cfg.adaptive = false;
    cfg.ic.kind = "modes";
    cfg.ic.amplitude = 0.05;
    cfg.ic.modes = {{1, 1, 1.0}};
    cfg.t_end = 0.5;
    cfg.tol_residual = 1e-16;

    HeightField sol[3];
    const double dts[3] = {1e-2, 5e-3, 2.5e-3};
    for (int c = 0; c < 3; ++c) {
        cfg.dt0 = dts[c];
        sol[c] = run(cfg).final_state.rho;
    }
    // successive differences scale like dt for a first-order scheme
    const double e0 = oracles::max_abs_diff(sol[0], sol[1]);
    const double e1 = oracles::max_abs_diff(sol[1], sol[2]);
    CHECK(std::log2(e0 / e1) > 0.9);
}

TEST_CASE("run: bdf2 is second order and shares the equilibrium fixed points") {
    RunConfig cfg = base_config(1.5);
    cfg.scheme = "bdf2";
    cfg.ic.kind = "modes";
    cfg.ic.amplitude = 0.05;
    cfg.ic.modes = {{1, 1, 1.0}};
    cfg.t_end = 0.5;
    cfg.tol_residual = 1e-16;

    HeightField sol[3];
    const double dts[3] = {1e-2, 5e-3, 2.5e-3};
    for (int c = 0; c < 3; ++c) {
        cfg.dt0 = dts[c];
        sol[c] = run(cfg).final_state.rho;
    }
    const double e0 = oracles::max_abs_diff(sol[0], sol[1]);
    const double e1 = oracles::max_abs_diff(sol[1], sol[2]);
    CHECK(std::log2(e0 / e1) > 1.6);

    RunConfig eq = base_config(1.5, 64);
    eq.scheme = "bdf2";
    eq.ic.kind = "offset_cylinder";
    eq.ic.ybar = 0.05;
    eq.ic.rbar = 1.2;
    RunOutcome out = run(eq);
    CHECK(out.event == Event::Converged);
}

TEST_CASE("run: inadmissible initial data is rejected") {
    RunConfig cfg = base_config(1.5);
    cfg.ic.kind = "modes";
    cfg.ic.amplitude = 2.0;  // dips below the axis clearance
    cfg.ic.modes = {{0, 1, 1.0}};
    CHECK_THROWS_AS(run(cfg), std::domain_error);
}
