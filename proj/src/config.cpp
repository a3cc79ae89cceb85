#include "sdflow/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sdflow {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': expected a number, got '" + v + "'");
    }
}

int to_int(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        long d = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return static_cast<int>(d);
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': expected an integer, got '" + v +
                                    "'");
    }
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "on") return true;
    if (v == "false" || v == "0" || v == "off") return false;
    throw std::invalid_argument("config key '" + key + "': expected a boolean, got '" + v + "'");
}

std::vector<ModeSpec> parse_modes(const std::string& key, const std::string& v) {
    // "m,n,coef; m,n,coef; ..."
    std::vector<ModeSpec> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ';')) {
        item = trim(item);
        if (item.empty()) continue;
        std::stringstream fs(item);
        std::string f;
        std::vector<std::string> parts;
        while (std::getline(fs, f, ',')) parts.push_back(trim(f));
        if (parts.size() != 3)
            throw std::invalid_argument("config key '" + key + "': mode entry '" + item +
                                        "' is not m,n,coef");
        out.push_back({to_int(key, parts[0]), to_int(key, parts[1]), to_double(key, parts[2])});
    }
    return out;
}

}  // namespace

void RunConfig::validate() const {
    auto bad = [](const std::string& what) { throw std::invalid_argument("config: " + what); };
    if (!(r > 0.0)) bad("r must be positive");
    if (!(a > 0.0)) bad("a must be positive");
    if (nx < 8 || nx % 2) bad("nx must be even and >= 8");
    if (ntheta < 8 || ntheta % 2) bad("ntheta must be even and >= 8");
    if (!(t_end > 0.0)) bad("t_end must be positive");
    if (!(dt0 > 0.0) || !(dt_min > 0.0) || !(dt_max > 0.0)) bad("dt values must be positive");
    if (dt_min > dt_max) bad("dt_min must not exceed dt_max");
    if (!(tol_step > 0.0) || !(tol_residual > 0.0) || !(tol_fit > 0.0))
        bad("tolerances must be positive");
    if (!(kappa >= 1.0)) bad("kappa must be >= 1");
    if (!(clearance_factor > 0.0) || clearance_factor >= 1.0)
        bad("clearance_factor must lie in (0,1)");
    if (scheme != "imex1" && scheme != "bdf2") bad("scheme must be imex1 or bdf2");
    if (bc != "periodic" && bc != "neumann") bad("bc must be periodic or neumann");
    if (ic.kind != "zero" && ic.kind != "modes" && ic.kind != "offset_cylinder" &&
        ic.kind != "random")
        bad("ic.kind must be zero, modes, offset_cylinder or random");
    if (ic.amplitude < 0.0) bad("ic.amplitude must be >= 0");
    if (output.stride < 1) bad("output.stride must be >= 1");
    if (output.snapshot_stride < 0) bad("output.snapshot_stride must be >= 0");
}

void apply_override(RunConfig& cfg, const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    if (key == "r") cfg.r = to_double(key, v);
    else if (key == "a") cfg.a = to_double(key, v);
    else if (key == "nx") cfg.nx = to_int(key, v);
    else if (key == "ntheta") cfg.ntheta = to_int(key, v);
    else if (key == "dt0") cfg.dt0 = to_double(key, v);
    else if (key == "dt_min") cfg.dt_min = to_double(key, v);
    else if (key == "dt_max") cfg.dt_max = to_double(key, v);
    else if (key == "tol_step") cfg.tol_step = to_double(key, v);
    else if (key == "tol_residual") cfg.tol_residual = to_double(key, v);
    else if (key == "tol_fit") cfg.tol_fit = to_double(key, v);
    else if (key == "t_end") cfg.t_end = to_double(key, v);
    else if (key == "scheme") cfg.scheme = v;
    else if (key == "kappa") cfg.kappa = to_double(key, v);
    else if (key == "dealias") cfg.dealias = to_bool(key, v);
    else if (key == "adaptive") cfg.adaptive = to_bool(key, v);
    else if (key == "clearance_factor") cfg.clearance_factor = to_double(key, v);
    else if (key == "bc") cfg.bc = v;
    else if (key == "symmetrize_every") cfg.symmetrize_every = to_int(key, v);
    else if (key == "ic.kind") cfg.ic.kind = v;
    else if (key == "ic.amplitude") cfg.ic.amplitude = to_double(key, v);
    else if (key == "ic.modes") cfg.ic.modes = parse_modes(key, v);
    else if (key == "ic.ybar") cfg.ic.ybar = to_double(key, v);
    else if (key == "ic.zbar") cfg.ic.zbar = to_double(key, v);
    else if (key == "ic.rbar") cfg.ic.rbar = to_double(key, v);
    else if (key == "ic.seed") cfg.ic.seed = static_cast<uint64_t>(std::stoull(v));
    else if (key == "ic.band") cfg.ic.band = to_int(key, v);
    else if (key == "output.dir") cfg.output.dir = v;
    else if (key == "output.stride") cfg.output.stride = to_int(key, v);
    else if (key == "output.snapshot_stride") cfg.output.snapshot_stride = to_int(key, v);
    else throw std::invalid_argument("unknown config key '" + key + "'");
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    RunConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            apply_override(cfg, key, value);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return cfg;
}

RunConfig preset_config(const std::string& name) {
    RunConfig cfg;
    if (name == "stability") {
        // small mixed-mode perturbation of a stable cylinder; converges to a
        // nearby offset cylinder with the volume-predicted radius
        cfg.r = 1.5;
        cfg.t_end = 50.0;
        cfg.ic.kind = "modes";
        cfg.ic.amplitude = 0.01;
        cfg.ic.modes = {{1, 1, 1.0}, {-2, 0, 0.5}};
    } else if (name == "instability") {
        // sub-critical radius; the axial mode grows at rate 0.5625 and the
        // neck collapses towards the axis
        cfg.r = 0.8;
        cfg.t_end = 60.0;
        cfg.ic.kind = "modes";
        cfg.ic.amplitude = 1e-4;
        cfg.ic.modes = {{1, 0, 1.0}};
        cfg.tol_step = 1e-6;
        cfg.dt_max = 0.05;
        cfg.clearance_factor = 0.25;
        cfg.output.stride = 5;
    } else if (name == "decay") {
        // linear-regime decay of the (1,0) mode at r = 2: rate 0.75
        cfg.r = 2.0;
        cfg.t_end = 2.0;
        cfg.ic.kind = "modes";
        cfg.ic.amplitude = 1e-3;
        cfg.ic.modes = {{1, 0, 1.0}};
        cfg.output.stride = 1;
        cfg.tol_residual = 1e-14;  // run the full horizon
    } else if (name == "neumann") {
        cfg.bc = "neumann";
        cfg.r = 1.5;
        cfg.a = M_PI;
        cfg.t_end = 25.0;
        cfg.ic.kind = "modes";
        cfg.ic.amplitude = 0.01;
        cfg.ic.modes = {{1, 1, 1.0}};
    } else {
        throw std::invalid_argument("unknown preset '" + name + "'");
    }
    return cfg;
}

}  // namespace sdflow
