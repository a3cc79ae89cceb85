// The three-parameter family of offset cylinders expressed as height
// functions over the reference cylinder, and least-squares fitting to it.
#ifndef SDFLOW_EQUILIBRIA_HPP
#define SDFLOW_EQUILIBRIA_HPP

#include "sdflow/grid.hpp"

namespace sdflow {

struct CylinderFit {
    double ybar = 0.0;
    double zbar = 0.0;
    double rbar = 0.0;
    double residual = 0.0;  // sup-norm misfit
    bool converged = false;
    int iterations = 0;
};

// rho(x,theta) = cos(theta) ybar + sin(theta) zbar
//              + sqrt(rbar^2 - (sin(theta) ybar - cos(theta) zbar)^2) - r
// Requires ybar^2 + zbar^2 < rbar^2 (axis of the reference cylinder inside
// the offset cylinder); the field is x-independent.
HeightField cylinder_height(double ybar, double zbar, double rbar, const Grid& grid);

// Gauss-Newton least-squares fit of (ybar, zbar, rbar); initial offsets from
// the (0,+-1) Fourier modes, initial radius from the enclosed volume.
CylinderFit fit_cylinder(const HeightField& rho, int max_iter = 50, double step_tol = 1e-12);

// rbar = sqrt(vol / (pi a)): radius of the cylinder enclosing the given
// periodic-cell volume (independent of the axis offset)
double predicted_radius(double vol, double a);

}  // namespace sdflow

#endif
