#include "sdflow/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

namespace sdflow {

namespace {
double cell_area(const Grid& g) { return 2.0 * M_PI * g.a; }
}  // namespace

double volume(const HeightField& rho) {
    const Grid& g = rho.grid;
    double s = 0.0;
    for (double x : rho.v) {
        const double u = g.r + x;
        s += u * u;
    }
    return 0.5 * (s / g.size()) * cell_area(g);
}

double area(const HeightField& rho, const GeometryOptions& opt) {
    if (min_clearance(rho) <= 0.0)
        throw std::domain_error("area: r + rho must be positive");
    GeometryBundle b = geometry_bundle(rho, opt);
    double s = 0.0;
    for (double d : b.gdet.v) s += std::sqrt(d);
    return (s / rho.grid.size()) * cell_area(rho.grid);
}

double dVol_dt(const HeightField& rho, const HeightField& rhodot) {
    if (rho.grid != rhodot.grid) throw std::invalid_argument("dVol_dt: grid mismatch");
    const Grid& g = rho.grid;
    double s = 0.0;
    for (int k = 0; k < g.size(); ++k) s += (g.r + rho.v[k]) * rhodot.v[k];
    return (s / g.size()) * cell_area(g);
}

double dA_dt(const HeightField& rho, const GeometryOptions& opt) {
    GeometryBundle b = geometry_bundle(rho, opt);
    const Grid& g = rho.grid;

    SpectralField ch = to_spectral(b.H);
    if (opt.dealias) dealias_inplace(ch);
    HeightField Hx = to_physical(spectral_derivative(ch, 1, 0));
    HeightField Ht = to_physical(spectral_derivative(ch, 0, 1));

    // Q(Hx,Ht) = g22 Hx^2 - 2 g12 Hx Ht + g11 Ht^2 is a nonnegative quadratic
    // form (its discriminant is -4 gdet <= 0)
    double s = 0.0;
    for (int k = 0; k < g.size(); ++k) {
        const double q = b.g22.v[k] * Hx.v[k] * Hx.v[k] -
                         2.0 * b.g12.v[k] * Hx.v[k] * Ht.v[k] +
                         b.g11.v[k] * Ht.v[k] * Ht.v[k];
        s += q / std::sqrt(b.gdet.v[k]);
    }
    return -(s / g.size()) * cell_area(g);
}

}  // namespace sdflow
