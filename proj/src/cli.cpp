#include "sdflow/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <stdexcept>

#include "sdflow/config.hpp"
#include "sdflow/linearization.hpp"
#include "sdflow/runio.hpp"
#include "sdflow/verify.hpp"

namespace sdflow::cli {

namespace {

constexpr const char* kUsage = R"(sdflow - surface diffusion flow of height functions over a cylinder

usage:
  sdflow run [config_file] [--preset=NAME] [--key=value ...]
  sdflow spectrum [--r=R] [--a=A] [--mmax=M] [--nmax=N]
  sdflow verify [--nx=N] [--ntheta=N] [--r=R] [--negate-dg0]

run      integrate the flow; writes series.csv, manifest.json and snapshots
         into the output directory (config key output.dir, env SDFLOW_OUT
         overrides). Presets: stability, instability, decay, neumann.
         Any config key can be overridden with --key=value.
spectrum print the eigenvalue table of the linearization at the flat state
         as CSV (m,n,lambda,multiplicity,flag), sorted by descending lambda.
verify   run the built-in verification groups and print PASS/FAIL per group.
         --negate-dg0 is a negative-control hook that must make the
         linearization group fail.

exit codes: 0 success, 2 config error, 3 flow failure event, 4 verification failure
)";

// split "--key=value" into key/value; returns false if not an option
bool parse_opt(const std::string& arg, std::string& key, std::string& value) {
    if (arg.rfind("--", 0) != 0) return false;
    const size_t eq = arg.find('=');
    if (eq == std::string::npos) {
        key = arg.substr(2);
        value = "true";
    } else {
        key = arg.substr(2, eq - 2);
        value = arg.substr(eq + 1);
    }
    return true;
}

}  // namespace

int cmd_run(const std::vector<std::string>& args) {
    RunConfig cfg;
    bool have_cfg = false;
    try {
        // first pass: positional config file and preset
        for (const std::string& a : args) {
            std::string k, v;
            if (!parse_opt(a, k, v)) {
                cfg = parse_config_file(a);
                have_cfg = true;
            } else if (k == "preset") {
                cfg = preset_config(v);
                have_cfg = true;
            }
        }
        if (!have_cfg) {
            std::cerr << "run: need a config file or --preset=NAME\n";
            return 2;
        }
        for (const std::string& a : args) {
            std::string k, v;
            if (parse_opt(a, k, v) && k != "preset") apply_override(cfg, k, v);
        }
        if (const char* env = std::getenv("SDFLOW_OUT")) cfg.output.dir = env;
        cfg.validate();
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    try {
        RunOutcome out = execute_run(cfg);
        std::cout << "event=" << event_name(out.event)
                  << " t=" << format_double(out.final_state.stats.t) << "\n";
        if (out.fit)
            std::cout << "fit: ybar=" << format_double(out.fit->ybar)
                      << " zbar=" << format_double(out.fit->zbar)
                      << " rbar=" << format_double(out.fit->rbar)
                      << " residual=" << format_double(out.fit->residual) << "\n";
        const bool ok = out.event == Event::Converged || out.event == Event::MaxTime;
        return ok ? 0 : 3;
    } catch (const std::exception& e) {
        std::cerr << "run failed: " << e.what() << "\n";
        return 3;
    }
}

int cmd_spectrum(const std::vector<std::string>& args) {
    double r = 2.0, a = 2.0 * M_PI;
    int mmax = 8, nmax = 8;
    try {
        for (const std::string& arg : args) {
            std::string k, v;
            if (!parse_opt(arg, k, v))
                throw std::invalid_argument("unexpected argument '" + arg + "'");
            if (k == "r") r = std::stod(v);
            else if (k == "a") a = std::stod(v);
            else if (k == "mmax") mmax = std::stoi(v);
            else if (k == "nmax") nmax = std::stoi(v);
            else throw std::invalid_argument("unknown option --" + k);
        }
        if (!(r > 0.0) || !(a > 0.0) || mmax < 1 || nmax < 1)
            throw std::invalid_argument("spectrum: need r > 0, a > 0, mmax/nmax >= 1");
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    std::cout << "m,n,lambda,multiplicity,flag\n";
    for (const SpectrumEntry& e : spectrum_table(r, a, mmax, nmax)) {
        const bool kernel = (e.m == 0 && std::abs(e.n) <= 1);
        const char* flag = kernel              ? "kernel"
                           : e.lambda > 0.0    ? "unstable"
                           : e.lambda == 0.0   ? "neutral"
                                               : "stable";
        std::cout << e.m << ',' << e.n << ',' << format_double(e.lambda) << ','
                  << e.multiplicity << ',' << flag << "\n";
    }
    return 0;
}

int cmd_verify(const std::vector<std::string>& args) {
    VerifyOptions opt;
    try {
        for (const std::string& arg : args) {
            std::string k, v;
            if (!parse_opt(arg, k, v))
                throw std::invalid_argument("unexpected argument '" + arg + "'");
            if (k == "nx") opt.nx = std::stoi(v);
            else if (k == "ntheta") opt.ntheta = std::stoi(v);
            else if (k == "r") opt.r = std::stod(v);
            else if (k == "negate-dg0") opt.negate_dg0 = true;
            else throw std::invalid_argument("unknown option --" + k);
        }
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    bool all_pass = true;
    for (const VerifyResult& r : run_verification(opt)) {
        std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.group << ": " << r.detail << "\n";
        all_pass = all_pass && r.pass;
    }
    return all_pass ? 0 : 4;
}

int dispatch(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty() || args[0] == "--help" || args[0] == "-h") {
        std::cout << kUsage;
        return args.empty() ? 2 : 0;
    }
    const std::string cmd = args[0];
    args.erase(args.begin());
    if (cmd == "run") return cmd_run(args);
    if (cmd == "spectrum") return cmd_spectrum(args);
    if (cmd == "verify") return cmd_verify(args);
    std::cerr << "unknown command '" << cmd << "'\n" << kUsage;
    return 2;
}

}  // namespace sdflow::cli
