// Pointwise geometry of the graph surface over the reference cylinder and the
// fourth-order surface diffusion operator G, together with its quasilinear
// principal part, coefficients and symbol.
#ifndef SDFLOW_GEOMETRY_HPP
#define SDFLOW_GEOMETRY_HPP

#include <utility>

#include "sdflow/grid.hpp"

namespace sdflow {

struct GeometryOptions {
    bool dealias = true;              // 2/3-rule on inputs to pointwise products
    double clearance_factor = 1e-3;   // admissibility: min(r + rho) > clearance_factor * r
};

// Pointwise geometric fields derived from one height field. All members share
// the grid of the source field.
struct GeometryBundle {
    Grid grid;
    HeightField rho;                       // band-limited copy actually used
    HeightField rho_x, rho_t, rho_xx, rho_xt, rho_tt;
    HeightField g11, g12, g22;             // first fundamental form
    HeightField II11, II12, II22;          // second fundamental form
    HeightField gdet;                      // det(g) = (r+rho)^2(1+rho_x^2)+rho_theta^2
    HeightField H;                         // mean curvature, H(0) = +1/r
};

GeometryBundle geometry_bundle(const HeightField& rho, const GeometryOptions& opt = {});

HeightField metric_det(const HeightField& rho, const GeometryOptions& opt = {});
HeightField mean_curvature(const HeightField& rho, const GeometryOptions& opt = {});

// divergence-form Laplace-Beltrami of f on the surface defined by rho
HeightField surface_laplacian(const HeightField& rho, const HeightField& f,
                              const GeometryOptions& opt = {});

// G(rho): normal-velocity right-hand side of the flow, rho_t = G(rho).
// Equals sqrt(det g)/(r+rho) * surface_laplacian(rho, mean_curvature(rho)).
HeightField evolution_operator(const HeightField& rho, const GeometryOptions& opt = {});

// V = (r+rho) rho_t / sqrt(det g)
HeightField normal_velocity(const HeightField& rho, const HeightField& rhodot,
                            const GeometryOptions& opt = {});

// The five highest-order coefficients of the quasilinear operator A(rho),
// G = -A(rho) rho + F(rho), A(rho) = sum_{|b|=3,4} b_coef * d^b.
struct PrincipalCoefficients {
    HeightField b40, b31, b22, b13, b04;
};
PrincipalCoefficients principal_coefficients(const HeightField& rho,
                                             const GeometryOptions& opt = {});

// |b| = 3 coefficients of A(rho). These are not printed in closed form
// anywhere standard; they were obtained by symbolic expansion of G and are
// pinned down by the remainder-locality test (F depends only on derivatives
// of order <= 2).
struct ThirdOrderCoefficients {
    HeightField b30, b21, b12, b03;
};
ThirdOrderCoefficients third_order_coefficients(const HeightField& rho,
                                                const GeometryOptions& opt = {});

// sum_{|b|=3,4} b_coef(rho) d^b h
HeightField apply_quasilinear(const HeightField& rho, const HeightField& h,
                              const GeometryOptions& opt = {});
// F(rho) = G(rho) + A(rho) rho
HeightField quasilinear_remainder(const HeightField& rho, const GeometryOptions& opt = {});

// sum_{j+k=4} b_{(j,k)} xi1^j xi2^k, evaluated pointwise for one direction
HeightField principal_symbol(const HeightField& rho, double xi1, double xi2,
                             const GeometryOptions& opt = {});

// (min, max) of the symbol over all grid points and ndirs unit directions
std::pair<double, double> ellipticity_bounds(const HeightField& rho, int ndirs = 32,
                                             const GeometryOptions& opt = {});

}  // namespace sdflow

#endif
