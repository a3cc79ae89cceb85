// Run configuration: flat key = value files with '#' comments and dotted keys,
// mirrored one-to-one by --key=value command line overrides.
#ifndef SDFLOW_CONFIG_HPP
#define SDFLOW_CONFIG_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace sdflow {

struct ModeSpec {
    int m = 0;       // axial index: cos(2 pi m x / a) for m >= 0, sin for m < 0
    int n = 0;       // angular index: cos(n theta) for n >= 0, sin for n < 0
    double coef = 1.0;
};

struct InitialCondition {
    std::string kind = "zero";  // zero | modes | offset_cylinder | random
    double amplitude = 0.0;
    std::vector<ModeSpec> modes;
    double ybar = 0.0, zbar = 0.0, rbar = 0.0;  // offset_cylinder
    uint64_t seed = 1;
    int band = 4;  // random: highest |m|, |n| populated
};

struct OutputSpec {
    std::string dir = "out";
    int stride = 10;           // accepted steps between series samples
    int snapshot_stride = 0;   // samples between snapshots; 0 = first and last only
};

struct RunConfig {
    double r = 1.5;
    double a = 2.0 * M_PI;
    int nx = 64;
    int ntheta = 64;

    double dt0 = 1e-3;
    double dt_min = 1e-12;
    double dt_max = 0.1;
    double tol_step = 1e-8;
    double tol_residual = 1e-9;
    double tol_fit = 1e-6;
    double t_end = 50.0;

    std::string scheme = "imex1";  // imex1 | bdf2
    double kappa = 1.0;
    bool dealias = true;
    bool adaptive = true;          // bdf2 always runs at fixed dt0
    double clearance_factor = 1e-3;
    std::string bc = "periodic";   // periodic | neumann
    int symmetrize_every = 100;    // reflection re-projection cadence (neumann)

    InitialCondition ic;
    OutputSpec output;

    void validate() const;  // throws std::invalid_argument with the offending key
};

// named presets for the stock experiments: stability, instability, decay, neumann
RunConfig preset_config(const std::string& name);

// parse a config file; throws std::invalid_argument with file:line diagnostics
RunConfig parse_config_file(const std::string& path);
// apply one --key=value override (leading dashes already stripped)
void apply_override(RunConfig& cfg, const std::string& key, const std::string& value);

}  // namespace sdflow

#endif
