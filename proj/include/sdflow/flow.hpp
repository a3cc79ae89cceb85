// Time integration of rho_t = G(rho): stabilized IMEX-Euler with step-doubling
// adaptivity (optional fixed-step semi-implicit BDF2), event detection and
// diagnostics recording.
#ifndef SDFLOW_FLOW_HPP
#define SDFLOW_FLOW_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sdflow/config.hpp"
#include "sdflow/diagnostics.hpp"
#include "sdflow/equilibria.hpp"
#include "sdflow/grid.hpp"

namespace sdflow {

enum class Event { Converged, MaxTime, Blowup, MinRadiusViolation, StepCollapse };
std::string event_name(Event e);

struct FlowState {
    double t = 0.0;
    HeightField rho;
    double dt = 0.0;
    double prev_err = -1.0;  // previous error estimate (< 0: none yet)
    DiagnosticsRow stats;
};

struct RunOutcome {
    Event event = Event::MaxTime;
    FlowState final_state;
    std::optional<CylinderFit> fit;  // attached on Converged
    std::vector<DiagnosticsRow> series;
};

using Observer = std::function<void(const FlowState&)>;

// initial condition on the periodic grid per cfg.ic
HeightField build_initial_condition(const RunConfig& cfg, const Grid& grid);

// One step of the stabilized scheme: solve
//   (I - dt kappa L) rho_new = rho + dt (G(rho) - kappa L rho)
// in Fourier space, L = diag of the flat-state multipliers. Fixed points are
// exactly the discrete equilibria G(rho) = 0.
HeightField imex_step(const FlowState& state, double dt, const RunConfig& cfg);

// PI step controller targeting tol_step; err_est = 0 returns dt_max
double adapt_dt(const FlowState& state, double err_est, const RunConfig& cfg);

// integrate from the config's initial condition
RunOutcome run(const RunConfig& cfg, const Observer& observer = {});
// integrate from an explicit initial field on the matching grid
RunOutcome run(const RunConfig& cfg, const HeightField& rho0, const Observer& observer = {});

}  // namespace sdflow

#endif
