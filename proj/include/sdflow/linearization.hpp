// The linearization of the flow at the flat state rho = 0: exact Fourier
// multiplier, spectrum, kernel projection, and linear propagator.
#ifndef SDFLOW_LINEARIZATION_HPP
#define SDFLOW_LINEARIZATION_HPP

#include <vector>

#include "sdflow/grid.hpp"

namespace sdflow {

// lambda(m,n) = -q (q - 1/r^2), q = (2 pi m / a)^2 + n^2 / r^2.
// Zero exactly on the kernel modes (0,0), (0,+-1); at r = 1, a = 2pi the
// axial modes (+-1,0) are neutral as well (bifurcation radius).
double eigenvalue(int m, int n, double r, double a);

struct SpectrumEntry {
    int m = 0;
    int n = 0;
    double lambda = 0.0;
    int multiplicity = 1;  // number of (m,n) pairs in the table sharing lambda
};

// all |m| <= mmax, |n| <= nmax, sorted by descending lambda
std::vector<SpectrumEntry> spectrum_table(double r, double a, int mmax, int nmax);

// -(d_x^2 + r^-2 d_theta^2)(d_x^2 + r^-2 d_theta^2 + r^-2) h via multipliers
HeightField apply_DG0(const HeightField& h);

// multiplies each mode by exp(lambda(m,n) t)
HeightField linear_propagator(const HeightField& h, double t);

struct KernelProjection {
    double c0 = 0.0;
    double c_cos = 0.0;
    double c_sin = 0.0;
    HeightField remainder;
};

// orthogonal projection onto span{1, cos theta, sin theta} in the periodic L2
// inner product; h = c0 + c_cos cos(theta) + c_sin sin(theta) + remainder
KernelProjection kernel_projection(const HeightField& h);

// 2 |rho_hat(m,n)|: physical amplitude of one mode pair (m,n)/(-m,-n)
double mode_amplitude(const HeightField& h, int m, int n);

}  // namespace sdflow

#endif
