#include "sdflow/neumann.hpp"

#include <cmath>
#include <stdexcept>

#include "sdflow/fft.hpp"

namespace sdflow {

HeightField even_extend(const NeumannField& f) {
    if (f.nh < 4 || f.nh % 2 != 0)
        throw std::invalid_argument("even_extend: nh must be even and >= 4");
    const Grid g = make_grid(2.0 * f.a, f.r, 2 * f.nh, f.ntheta);
    HeightField out(g);
    for (int i = 0; i <= f.nh; ++i)
        for (int j = 0; j < f.ntheta; ++j) out.at(i, j) = f.at(i, j);
    for (int i = f.nh + 1; i < 2 * f.nh; ++i)
        for (int j = 0; j < f.ntheta; ++j) out.at(i, j) = f.at(2 * f.nh - i, j);
    return out;
}

NeumannField neumann_restrict(const HeightField& rho, double sym_tol) {
    const Grid& g = rho.grid;
    if (g.nx % 2 != 0) throw std::invalid_argument("neumann_restrict: nx must be even");
    HeightField refl = reflect_x(rho);
    double dev = 0.0;
    for (int k = 0; k < g.size(); ++k)
        dev = std::max(dev, std::abs(rho.v[k] - refl.v[k]));
    if (dev > sym_tol * std::max(1.0, sup_norm(rho)))
        throw std::domain_error("neumann_restrict: field has an odd part of size " +
                                std::to_string(dev));
    NeumannField out(0.5 * g.a, g.r, g.nx / 2, g.ntheta);
    for (int i = 0; i <= out.nh; ++i)
        for (int j = 0; j < g.ntheta; ++j) out.at(i, j) = rho.at(i, j);
    return out;
}

BoundaryDerivatives check_neumann(const NeumannField& f) {
    const int nx = 2 * f.nh;
    const double L = 2.0 * f.a;
    const double dx = L / nx;

    // tail window above the 2/3 band (falls back to a slope-only fit when the
    // grid is too small to resolve the third-derivative terms)
    int klo = std::min(nx / 3 + 1, nx / 2 - 4);
    klo = std::max(klo, 2);
    const int khi = nx / 2 - 1;
    const int npts = khi - klo + 1;
    if (npts < 2) throw std::invalid_argument("check_neumann: grid too small");
    const bool full_fit = npts >= 4;

    std::vector<Complex> line(nx), hat(nx);
    BoundaryDerivatives out;

    for (int j = 0; j < f.ntheta; ++j) {
        for (int i = 0; i <= f.nh; ++i) line[i] = Complex(f.at(i, j), 0.0);
        for (int i = f.nh + 1; i < nx; ++i) line[i] = Complex(f.at(nx - i, j), 0.0);
        fft::forward(nx, 1, line.data(), hat.data());

        // y_k = -L kd^2 Re F_hat(k) = J1_0 + (-1)^k J1_a - (J3_0 + (-1)^k J3_a)/kd^2
        // with J1 = [F'] jumps at x = 0, a and J3 = [F'''] jumps. Stage 1 reads
        // the J1 pair from even/odd means (exact when no higher jumps); stage 2
        // reads J3 from the kd^2-scaled residual.
        double se = 0.0, so = 0.0;
        int ne = 0, no = 0;
        std::vector<double> ys(khi - klo + 1), kd2(khi - klo + 1);
        for (int k = klo; k <= khi; ++k) {
            const double kap = M_PI * k / f.a;
            const double kd = (2.0 / dx) * std::sin(0.5 * kap * dx);
            const double y = -L * kd * kd * hat[k].real();
            ys[k - klo] = y;
            kd2[k - klo] = kd * kd;
            if (k % 2 == 0) {
                se += y;
                ++ne;
            } else {
                so += y;
                ++no;
            }
        }
        const double Ee = se / std::max(1, ne), Eo = so / std::max(1, no);
        const double J1_0 = 0.5 * (Ee + Eo);
        const double J1_a = 0.5 * (Ee - Eo);
        out.d1_0 = std::max(out.d1_0, std::abs(0.5 * J1_0));
        out.d1_a = std::max(out.d1_a, std::abs(0.5 * J1_a));

        if (full_fit) {
            double ze = 0.0, zo = 0.0;
            for (int k = klo; k <= khi; ++k) {
                const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
                const double z = -(ys[k - klo] - J1_0 - sgn * J1_a) * kd2[k - klo];
                if (k % 2 == 0)
                    ze += z;
                else
                    zo += z;
            }
            ze /= std::max(1, ne);
            zo /= std::max(1, no);
            out.d3_0 = std::max(out.d3_0, std::abs(0.25 * (ze + zo)));
            out.d3_a = std::max(out.d3_a, std::abs(0.25 * (ze - zo)));
        }
    }
    return out;
}

NeumannField build_neumann_initial_condition(const RunConfig& cfg) {
    if (cfg.nx % 4 != 0)
        throw std::invalid_argument("neumann: nx (doubled-grid samples) must be divisible by 4");
    const int nh = cfg.nx / 2;
    NeumannField f(cfg.a, cfg.r, nh, cfg.ntheta);

    if (cfg.ic.kind == "zero") return f;

    if (cfg.ic.kind == "modes") {
        for (const ModeSpec& ms : cfg.ic.modes) {
            if (ms.m < 0)
                throw std::invalid_argument(
                    "neumann: axial sine modes are not Neumann-compatible");
            for (int i = 0; i <= nh; ++i) {
                const double fx = std::cos(M_PI * ms.m * (cfg.a * i / nh) / cfg.a);
                for (int j = 0; j < cfg.ntheta; ++j) {
                    const double at = std::abs(ms.n) * (2.0 * M_PI * j / cfg.ntheta);
                    const double ft = ms.n >= 0 ? std::cos(at) : std::sin(at);
                    f.at(i, j) += cfg.ic.amplitude * ms.coef * fx * ft;
                }
            }
        }
        return f;
    }

    if (cfg.ic.kind == "offset_cylinder") {
        const Grid g = make_grid(cfg.a, cfg.r, std::max(8, nh), cfg.ntheta);
        HeightField c = cylinder_height(cfg.ic.ybar, cfg.ic.zbar, cfg.ic.rbar, g);
        for (int i = 0; i <= nh; ++i)
            for (int j = 0; j < cfg.ntheta; ++j) f.at(i, j) = c.at(0, j);
        return f;
    }

    if (cfg.ic.kind == "random") {
        // random even field: build a periodic random field on the doubled cell
        // and symmetrize it
        RunConfig ext = cfg;
        ext.a = 2.0 * cfg.a;
        ext.bc = "periodic";
        const Grid g = make_grid(ext.a, ext.r, ext.nx, ext.ntheta);
        HeightField rho = build_initial_condition(ext, g);
        HeightField refl = reflect_x(rho);
        for (int k = 0; k < g.size(); ++k) rho.v[k] = 0.5 * (rho.v[k] + refl.v[k]);
        const double s = sup_norm(rho);
        if (s > 0.0 && cfg.ic.amplitude > 0.0)
            for (double& v : rho.v) v *= cfg.ic.amplitude / s;
        return neumann_restrict(rho, 1e-12);
    }

    throw std::invalid_argument("neumann: unknown ic.kind '" + cfg.ic.kind + "'");
}

RunOutcome run_neumann(const RunConfig& cfg, const NeumannObserver& observer) {
    cfg.validate();
    if (cfg.bc != "neumann") throw std::invalid_argument("run_neumann: cfg.bc must be neumann");

    NeumannField f0 = build_neumann_initial_condition(cfg);
    HeightField rho0 = even_extend(f0);

    RunConfig ext = cfg;
    ext.a = 2.0 * cfg.a;  // the periodic solver works on the doubled cell

    Observer wrap = [&](const FlowState& s) {
        // reflection symmetry must persist along the flow
        NeumannField half = neumann_restrict(s.rho, 1e-8);
        if (observer) observer(s, half);
    };
    return run(ext, rho0, wrap);
}

}  // namespace sdflow
