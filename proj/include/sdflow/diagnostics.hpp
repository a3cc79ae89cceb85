// Conserved and dissipated quantities of the periodic flow. All integrals use
// the periodic trapezoid rule (= cell area times grid mean), which is
// spectrally accurate for smooth periodic integrands.
#ifndef SDFLOW_DIAGNOSTICS_HPP
#define SDFLOW_DIAGNOSTICS_HPP

#include "sdflow/geometry.hpp"
#include "sdflow/grid.hpp"

namespace sdflow {

struct DiagnosticsRow {
    double t = 0.0;
    double volume = 0.0;
    double area = 0.0;
    double dA_dt_formula = 0.0;
    double min_clearance = 0.0;
    double sup_norm = 0.0;
    double residual = 0.0;  // sup-norm of G(rho)
};

// (1/2) integral of (r+rho)^2 over one periodic cell
double volume(const HeightField& rho);
// integral of sqrt(det g)
double area(const HeightField& rho, const GeometryOptions& opt = {});
// integral of (r+rho) rhodot; vanishes to quadrature precision when rhodot = G(rho)
double dVol_dt(const HeightField& rho, const HeightField& rhodot);
// dissipation integral -int Q(H_x, H_theta)/sqrt(det g); always <= 0
double dA_dt(const HeightField& rho, const GeometryOptions& opt = {});

}  // namespace sdflow

#endif
