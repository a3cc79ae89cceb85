#include "sdflow/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sdflow {

namespace {

void require_clearance(const HeightField& rho, const GeometryOptions& opt, const char* who) {
    const double mc = min_clearance(rho);
    if (mc <= opt.clearance_factor * rho.grid.r)
        throw std::domain_error(std::string(who) + ": clearance violation, min(r + rho) = " +
                                std::to_string(mc));
}

// physical-space derivative of a (band-limited) spectral field
HeightField deriv_phys(const SpectralField& c, int bx, int bt) {
    return to_physical(spectral_derivative(c, bx, bt));
}

// transform, optionally truncate to the 2/3 band, differentiate, invert
HeightField respectral_deriv(const HeightField& f, int bx, int bt, bool deal) {
    SpectralField c = to_spectral(f);
    if (deal) dealias_inplace(c);
    return deriv_phys(c, bx, bt);
}

}  // namespace

GeometryBundle geometry_bundle(const HeightField& rho, const GeometryOptions& opt) {
    const Grid& g = rho.grid;
    GeometryBundle b;
    b.grid = g;

    SpectralField c = to_spectral(rho);
    if (opt.dealias) dealias_inplace(c);
    b.rho = to_physical(c);
    b.rho_x = deriv_phys(c, 1, 0);
    b.rho_t = deriv_phys(c, 0, 1);
    b.rho_xx = deriv_phys(c, 2, 0);
    b.rho_xt = deriv_phys(c, 1, 1);
    b.rho_tt = deriv_phys(c, 0, 2);

    b.g11 = HeightField(g);
    b.g12 = HeightField(g);
    b.g22 = HeightField(g);
    b.gdet = HeightField(g);
    b.II11 = HeightField(g);
    b.II12 = HeightField(g);
    b.II22 = HeightField(g);
    b.H = HeightField(g);

    for (int k = 0; k < g.size(); ++k) {
        const double u = g.r + b.rho.v[k];
        const double px = b.rho_x.v[k], pt = b.rho_t.v[k];
        const double pxx = b.rho_xx.v[k], pxt = b.rho_xt.v[k], ptt = b.rho_tt.v[k];
        const double G11 = 1.0 + px * px;
        const double G22 = u * u + pt * pt;
        const double det = u * u * G11 + pt * pt;
        const double s = std::sqrt(det);
        b.g11.v[k] = G11;
        b.g12.v[k] = px * pt;
        b.g22.v[k] = G22;
        b.gdet.v[k] = det;
        b.II11.v[k] = u * pxx / s;
        b.II12.v[k] = (u * pxt - px * pt) / s;
        b.II22.v[k] = (u * (ptt - u) - 2.0 * pt * pt) / s;
        b.H.v[k] = (pt * pt - u * (G22 * pxx + G11 * ptt - 2.0 * px * pt * pxt)) / (det * s) + 1.0 / s;
    }
    return b;
}

HeightField metric_det(const HeightField& rho, const GeometryOptions& opt) {
    if (min_clearance(rho) <= 0.0)
        throw std::domain_error("metric_det: min(r + rho) = " +
                                std::to_string(min_clearance(rho)) + " is not positive");
    return geometry_bundle(rho, opt).gdet;
}

HeightField mean_curvature(const HeightField& rho, const GeometryOptions& opt) {
    if (min_clearance(rho) <= 0.0)
        throw std::domain_error("mean_curvature: min(r + rho) = " +
                                std::to_string(min_clearance(rho)) + " is not positive");
    return geometry_bundle(rho, opt).H;
}

namespace {

// d_x[(g22/s) f_x - (g12/s) f_t] + d_theta[(g11/s) f_t - (g12/s) f_x]
HeightField divergence_form(const GeometryBundle& b, const HeightField& f,
                            const GeometryOptions& opt) {
    const Grid& g = b.grid;
    SpectralField cf = to_spectral(f);
    if (opt.dealias) dealias_inplace(cf);
    HeightField fx = deriv_phys(cf, 1, 0);
    HeightField ft = deriv_phys(cf, 0, 1);

    HeightField F1(g), F2(g);
    for (int k = 0; k < g.size(); ++k) {
        const double s = std::sqrt(b.gdet.v[k]);
        F1.v[k] = (b.g22.v[k] * fx.v[k] - b.g12.v[k] * ft.v[k]) / s;
        F2.v[k] = (b.g11.v[k] * ft.v[k] - b.g12.v[k] * fx.v[k]) / s;
    }
    HeightField d1 = respectral_deriv(F1, 1, 0, opt.dealias);
    HeightField d2 = respectral_deriv(F2, 0, 1, opt.dealias);
    for (int k = 0; k < g.size(); ++k) d1.v[k] += d2.v[k];
    return d1;
}

}  // namespace

HeightField surface_laplacian(const HeightField& rho, const HeightField& f,
                              const GeometryOptions& opt) {
    if (rho.grid != f.grid) throw std::invalid_argument("surface_laplacian: grid mismatch");
    if (min_clearance(rho) <= 0.0)
        throw std::domain_error("surface_laplacian: r + rho must be positive");
    GeometryBundle b = geometry_bundle(rho, opt);
    HeightField out = divergence_form(b, f, opt);
    for (int k = 0; k < rho.grid.size(); ++k) out.v[k] /= std::sqrt(b.gdet.v[k]);
    return out;
}

HeightField evolution_operator(const HeightField& rho, const GeometryOptions& opt) {
    require_clearance(rho, opt, "evolution_operator");
    GeometryBundle b = geometry_bundle(rho, opt);
    HeightField out = divergence_form(b, b.H, opt);
    for (int k = 0; k < rho.grid.size(); ++k) out.v[k] /= (rho.grid.r + b.rho.v[k]);
    return out;
}

HeightField normal_velocity(const HeightField& rho, const HeightField& rhodot,
                            const GeometryOptions& opt) {
    if (rho.grid != rhodot.grid) throw std::invalid_argument("normal_velocity: grid mismatch");
    require_clearance(rho, opt, "normal_velocity");
    GeometryBundle b = geometry_bundle(rho, opt);
    HeightField out(rho.grid);
    for (int k = 0; k < rho.grid.size(); ++k)
        out.v[k] = (rho.grid.r + b.rho.v[k]) * rhodot.v[k] / std::sqrt(b.gdet.v[k]);
    return out;
}

PrincipalCoefficients principal_coefficients(const HeightField& rho, const GeometryOptions& opt) {
    require_clearance(rho, opt, "principal_coefficients");
    GeometryBundle b = geometry_bundle(rho, opt);
    const Grid& g = rho.grid;
    PrincipalCoefficients p{HeightField(g), HeightField(g), HeightField(g), HeightField(g),
                            HeightField(g)};
    for (int k = 0; k < g.size(); ++k) {
        const double px = b.rho_x.v[k], pt = b.rho_t.v[k];
        const double A = b.g22.v[k];  // (r+rho)^2 + rho_theta^2
        const double B = b.g11.v[k];  // 1 + rho_x^2
        const double d2 = b.gdet.v[k] * b.gdet.v[k];
        p.b40.v[k] = A * A / d2;
        p.b31.v[k] = -4.0 * px * pt * A / d2;
        p.b22.v[k] = (2.0 * A * B + 4.0 * px * px * pt * pt) / d2;
        p.b13.v[k] = -4.0 * px * pt * B / d2;
        p.b04.v[k] = B * B / d2;
    }
    return p;
}

ThirdOrderCoefficients third_order_coefficients(const HeightField& rho,
                                                const GeometryOptions& opt) {
    require_clearance(rho, opt, "third_order_coefficients");
    GeometryBundle b = geometry_bundle(rho, opt);
    const Grid& g = rho.grid;
    ThirdOrderCoefficients t{HeightField(g), HeightField(g), HeightField(g), HeightField(g)};
    for (int k = 0; k < g.size(); ++k) {
        const double u = g.r + b.rho.v[k];
        const double px = b.rho_x.v[k], pt = b.rho_t.v[k];
        const double pxx = b.rho_xx.v[k], pxt = b.rho_xt.v[k], ptt = b.rho_tt.v[k];
        const double u2 = u * u, u4 = u2 * u2;
        const double px2 = px * px, pt2 = pt * pt, pt4 = pt2 * pt2;
        const double A = pt2 + u2;
        const double B = 1.0 + px2;
        const double det = u2 * B + pt2;
        const double det3 = det * det * det;
        // shared combinations from the expansion of G
        const double W1 = A * (4.0 * px2 * u2 - A);
        const double W2 = -2.0 * pt4 + 3.0 * pt2 * px2 * u2 - pt2 * u2 + px2 * u4 + u4;
        const double W3 = -3.0 * pt2 * px2 - pt2 + 2.0 * px2 * px2 * u2 + px2 * u2 - u2;
        const double W4 = B * (px2 * u2 + u2 - 4.0 * pt2);

        t.b30.v[k] = (-10.0 * px * u2 * A * A * pxx + 4.0 * pt * W1 * pxt - 2.0 * px * W2 * ptt +
                      2.0 * px * u * (4.0 * pt4 - pt2 * px2 * u2 + 5.0 * pt2 * u2 + px2 * u4 + u4)) /
                     det3;
        t.b21.v[k] = (6.0 * pt * u * W1 * pxx - 12.0 * px * u * W2 * pxt + 6.0 * pt * u * W3 * ptt +
                      2.0 * pt * (2.0 * pt4 - 11.0 * pt2 * px2 * u2 + pt2 * u2 +
                                  2.0 * px2 * px2 * u4 + px2 * u4 - u4)) /
                     (u * det3);
        t.b12.v[k] = (-6.0 * px * u * W2 * pxx + 12.0 * pt * u * W3 * pxt - 6.0 * px * u * W4 * ptt -
                      2.0 * px * (4.0 * pt4 - 10.0 * pt2 * px2 * u2 - 10.0 * pt2 * u2 +
                                  px2 * px2 * u4 + 2.0 * px2 * u4 + u4)) /
                     (u * det3);
        t.b03.v[k] = (2.0 * pt * u * W3 * pxx - 4.0 * px * u * W4 * pxt -
                      10.0 * pt * u * B * B * ptt -
                      2.0 * pt * B * (-2.0 * pt2 + 3.0 * px2 * u2 + 3.0 * u2)) /
                     (u * det3);
    }
    return t;
}

HeightField apply_quasilinear(const HeightField& rho, const HeightField& h,
                              const GeometryOptions& opt) {
    if (rho.grid != h.grid) throw std::invalid_argument("apply_quasilinear: grid mismatch");
    PrincipalCoefficients p = principal_coefficients(rho, opt);
    ThirdOrderCoefficients t = third_order_coefficients(rho, opt);
    SpectralField ch = to_spectral(h);
    if (opt.dealias) dealias_inplace(ch);
    struct Term {
        const HeightField* coef;
        int bx, bt;
    };
    const Term terms[] = {{&p.b40, 4, 0}, {&p.b31, 3, 1}, {&p.b22, 2, 2}, {&p.b13, 1, 3},
                          {&p.b04, 0, 4}, {&t.b30, 3, 0}, {&t.b21, 2, 1}, {&t.b12, 1, 2},
                          {&t.b03, 0, 3}};
    HeightField out(rho.grid);
    for (const Term& tm : terms) {
        HeightField d = to_physical(spectral_derivative(ch, tm.bx, tm.bt));
        for (int k = 0; k < rho.grid.size(); ++k) out.v[k] += tm.coef->v[k] * d.v[k];
    }
    return out;
}

HeightField quasilinear_remainder(const HeightField& rho, const GeometryOptions& opt) {
    HeightField F = evolution_operator(rho, opt);
    HeightField Ar = apply_quasilinear(rho, rho, opt);
    for (int k = 0; k < rho.grid.size(); ++k) F.v[k] += Ar.v[k];
    return F;
}

HeightField principal_symbol(const HeightField& rho, double xi1, double xi2,
                             const GeometryOptions& opt) {
    PrincipalCoefficients p = principal_coefficients(rho, opt);
    HeightField out(rho.grid);
    const double x1 = xi1, x2 = xi2;
    for (int k = 0; k < rho.grid.size(); ++k)
        out.v[k] = p.b40.v[k] * x1 * x1 * x1 * x1 + p.b31.v[k] * x1 * x1 * x1 * x2 +
                   p.b22.v[k] * x1 * x1 * x2 * x2 + p.b13.v[k] * x1 * x2 * x2 * x2 +
                   p.b04.v[k] * x2 * x2 * x2 * x2;
    return out;
}

std::pair<double, double> ellipticity_bounds(const HeightField& rho, int ndirs,
                                             const GeometryOptions& opt) {
    if (ndirs < 4) throw std::invalid_argument("ellipticity_bounds: need at least 4 directions");
    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (int d = 0; d < ndirs; ++d) {
        const double phi = 2.0 * M_PI * d / ndirs;
        HeightField s = principal_symbol(rho, std::cos(phi), std::sin(phi), opt);
        for (double v : s.v) {
            if (first) {
                lo = hi = v;
                first = false;
            } else {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
    }
    return {lo, hi};
}

}  // namespace sdflow
