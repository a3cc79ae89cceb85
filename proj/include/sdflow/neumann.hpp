// Neumann boundary setting on the restricted cylinder [0,a]: even extension,
// restriction, boundary-condition verification, and the flow wrapper that
// reduces Neumann runs to the periodic solver.
#ifndef SDFLOW_NEUMANN_HPP
#define SDFLOW_NEUMANN_HPP

#include "sdflow/flow.hpp"
#include "sdflow/grid.hpp"

namespace sdflow {

// Samples on the closed half cell [0,a] x [0,2pi): (nh+1) x ntheta values,
// both axial endpoints included.
struct NeumannField {
    double a = 0.0;
    double r = 0.0;
    int nh = 0;
    int ntheta = 0;
    std::vector<double> v;

    NeumannField() = default;
    NeumannField(double a_, double r_, int nh_, int ntheta_)
        : a(a_), r(r_), nh(nh_), ntheta(ntheta_),
          v(static_cast<size_t>(nh_ + 1) * ntheta_, 0.0) {}

    double& at(int i, int j) { return v[static_cast<size_t>(i) * ntheta + j]; }
    double at(int i, int j) const { return v[static_cast<size_t>(i) * ntheta + j]; }
};

// 2a-periodic even extension: rho(-x, theta) = rho(x, theta); the result grid
// has axial period 2a and nx = 2 nh samples
HeightField even_extend(const NeumannField& f);

// restriction to [0,a]; throws std::domain_error if the field is not
// reflection-symmetric within sym_tol (relative to its sup norm)
NeumannField neumann_restrict(const HeightField& rho, double sym_tol = 1e-8);

struct BoundaryDerivatives {
    double d1_0 = 0.0;  // |d_x rho(0+)|  max over theta
    double d3_0 = 0.0;  // |d_x^3 rho(0+)|
    double d1_a = 0.0;  // |d_x rho(a-)|
    double d3_a = 0.0;  // |d_x^3 rho(a-)|
};

// One-sided boundary derivatives estimated from the spectral tail of the even
// extension: a derivative jump J at x0 in a periodic function F contributes
// -J e^{-i kappa x0} / (L kappa_d^2) to F_hat(kappa), with kappa_d the
// discrete Laplacian symbol; fitting the tail over even/odd wavenumbers
// separates the two boundaries. Band-limited (resolved) fields report ~0.
BoundaryDerivatives check_neumann(const NeumannField& f);

// Neumann run: even-extends the initial data, runs the periodic solver on the
// doubled cell with periodic symmetry re-projection, verifies the reflection
// symmetry at every sample, and restricts observer states back to [0,a].
// config semantics: cfg.a is the half-cell length, cfg.nx the sample count of
// the doubled periodic grid (nh = nx / 2).
using NeumannObserver = std::function<void(const FlowState&, const NeumannField&)>;
RunOutcome run_neumann(const RunConfig& cfg, const NeumannObserver& observer = {});

// initial condition on the half cell per cfg.ic (modes use cos(pi m x / a))
NeumannField build_neumann_initial_condition(const RunConfig& cfg);

}  // namespace sdflow

#endif
