#include "sdflow/equilibria.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "sdflow/diagnostics.hpp"
#include "sdflow/linearization.hpp"

namespace sdflow {

HeightField cylinder_height(double ybar, double zbar, double rbar, const Grid& grid) {
    if (!(rbar > 0.0)) throw std::invalid_argument("cylinder_height: rbar must be positive");
    if (ybar * ybar + zbar * zbar >= rbar * rbar)
        throw std::domain_error("cylinder_height: require ybar^2 + zbar^2 < rbar^2");
    HeightField out(grid);
    for (int j = 0; j < grid.ntheta; ++j) {
        const double ct = std::cos(grid.theta(j)), st = std::sin(grid.theta(j));
        const double w = st * ybar - ct * zbar;
        const double arg = rbar * rbar - w * w;
        if (arg <= 0.0)
            throw std::domain_error("cylinder_height: square-root argument not positive");
        const double val = ct * ybar + st * zbar + std::sqrt(arg) - grid.r;
        for (int i = 0; i < grid.nx; ++i) out.at(i, j) = val;
    }
    return out;
}

double predicted_radius(double vol, double a) {
    if (!(vol > 0.0)) throw std::invalid_argument("predicted_radius: volume must be positive");
    return std::sqrt(vol / (M_PI * a));
}

namespace {

// 3x3 symmetric solve by Cholesky; returns false if not positive definite
bool solve3(const std::array<double, 9>& A, const std::array<double, 3>& b,
            std::array<double, 3>& x) {
    std::array<double, 9> L{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = A[i * 3 + j];
            for (int k = 0; k < j; ++k) s -= L[i * 3 + k] * L[j * 3 + k];
            if (i == j) {
                if (s <= 0.0) return false;
                L[i * 3 + i] = std::sqrt(s);
            } else {
                L[i * 3 + j] = s / L[j * 3 + j];
            }
        }
    }
    std::array<double, 3> y{};
    for (int i = 0; i < 3; ++i) {
        double s = b[i];
        for (int k = 0; k < i; ++k) s -= L[i * 3 + k] * y[k];
        y[i] = s / L[i * 3 + i];
    }
    for (int i = 2; i >= 0; --i) {
        double s = y[i];
        for (int k = i + 1; k < 3; ++k) s -= L[k * 3 + i] * x[k];
        x[i] = s / L[i * 3 + i];
    }
    return true;
}

}  // namespace

CylinderFit fit_cylinder(const HeightField& rho, int max_iter, double step_tol) {
    const Grid& g = rho.grid;
    CylinderFit fit;

    KernelProjection proj = kernel_projection(rho);
    double yb = proj.c_cos, zb = proj.c_sin;
    double rb = predicted_radius(volume(rho), g.a);
    // keep the start inside the admissible cone
    const double off0 = std::hypot(yb, zb);
    if (off0 >= 0.9 * rb) {
        yb *= 0.5 * rb / off0;
        zb *= 0.5 * rb / off0;
    }

    double best_y = yb, best_z = zb, best_r = rb;
    for (int it = 0; it < max_iter; ++it) {
        std::array<double, 9> JtJ{};
        std::array<double, 3> Jte{};
        bool domain_ok = true;
        for (int j = 0; j < g.ntheta && domain_ok; ++j) {
            const double ct = std::cos(g.theta(j)), st = std::sin(g.theta(j));
            const double w = st * yb - ct * zb;
            const double arg = rb * rb - w * w;
            if (arg <= 0.0) {
                domain_ok = false;
                break;
            }
            const double sq = std::sqrt(arg);
            const double model = ct * yb + st * zb + sq - g.r;
            const double dy = ct - w * st / sq;
            const double dz = st + w * ct / sq;
            const double dr = rb / sq;
            // residuals are constant in x for the model; accumulate column means
            double colsum = 0.0;
            for (int i = 0; i < g.nx; ++i) colsum += rho.at(i, j);
            const double e = colsum / g.nx - model;
            const double wgt = static_cast<double>(g.nx);
            const double J[3] = {dy, dz, dr};
            for (int p = 0; p < 3; ++p) {
                Jte[p] += wgt * J[p] * e;
                for (int q = 0; q < 3; ++q) JtJ[p * 3 + q] += wgt * J[p] * J[q];
            }
        }
        if (!domain_ok) break;
        std::array<double, 3> step{};
        if (!solve3(JtJ, Jte, step)) break;
        yb += step[0];
        zb += step[1];
        rb += step[2];
        fit.iterations = it + 1;
        best_y = yb;
        best_z = zb;
        best_r = rb;
        if (std::abs(step[0]) + std::abs(step[1]) + std::abs(step[2]) < step_tol) {
            fit.converged = true;
            break;
        }
    }

    fit.ybar = best_y;
    fit.zbar = best_z;
    fit.rbar = best_r;

    // sup-norm residual against the fitted cylinder
    double res = 0.0;
    bool valid = best_r > 0.0 && best_y * best_y + best_z * best_z < best_r * best_r;
    if (valid) {
        HeightField model = cylinder_height(best_y, best_z, best_r, g);
        for (int k = 0; k < g.size(); ++k)
            res = std::max(res, std::abs(rho.v[k] - model.v[k]));
    } else {
        fit.converged = false;
        res = sup_norm(rho);
    }
    fit.residual = res;
    return fit;
}

}  // namespace sdflow
