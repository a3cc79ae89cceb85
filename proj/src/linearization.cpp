#include "sdflow/linearization.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace sdflow {

double eigenvalue(int m, int n, double r, double a) {
    const double kx = 2.0 * M_PI * m / a;
    const double q = kx * kx + static_cast<double>(n) * n / (r * r);
    return -q * (q - 1.0 / (r * r)) + 0.0;  // normalizes -0 to 0
}

std::vector<SpectrumEntry> spectrum_table(double r, double a, int mmax, int nmax) {
    if (mmax < 1 || nmax < 1) throw std::invalid_argument("spectrum_table: bounds must be >= 1");
    std::vector<SpectrumEntry> rows;
    rows.reserve((2 * mmax + 1) * (2 * nmax + 1));
    std::map<double, int> mult;
    for (int m = -mmax; m <= mmax; ++m)
        for (int n = -nmax; n <= nmax; ++n) {
            const double lam = eigenvalue(std::abs(m), std::abs(n), r, a);
            rows.push_back({m, n, lam, 1});
            ++mult[lam];
        }
    for (SpectrumEntry& e : rows) e.multiplicity = mult[e.lambda];
    std::stable_sort(rows.begin(), rows.end(), [](const SpectrumEntry& x, const SpectrumEntry& y) {
        return x.lambda > y.lambda;
    });
    return rows;
}

HeightField apply_DG0(const HeightField& h) {
    const Grid& g = h.grid;
    SpectralField c = to_spectral(h);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ntheta; ++j)
            c.at(i, j) *= eigenvalue(g.m_of(i), g.n_of(j), g.r, g.a);
    return to_physical(c);
}

HeightField linear_propagator(const HeightField& h, double t) {
    if (t < 0.0) throw std::invalid_argument("linear_propagator: t must be >= 0");
    const Grid& g = h.grid;
    SpectralField c = to_spectral(h);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ntheta; ++j)
            c.at(i, j) *= std::exp(eigenvalue(g.m_of(i), g.n_of(j), g.r, g.a) * t);
    return to_physical(c);
}

KernelProjection kernel_projection(const HeightField& h) {
    SpectralField c = to_spectral(h);
    KernelProjection p;
    // <1,1> = 2 pi a, <cos,cos> = <sin,sin> = pi a under the periodic-cell inner product
    p.c0 = c.mode(0, 0).real();
    p.c_cos = 2.0 * c.mode(0, 1).real();
    p.c_sin = -2.0 * c.mode(0, 1).imag();
    c.mode(0, 0) = 0.0;
    c.mode(0, 1) = 0.0;
    c.mode(0, -1) = 0.0;
    p.remainder = to_physical(c);
    return p;
}

double mode_amplitude(const HeightField& h, int m, int n) {
    SpectralField c = to_spectral(h);
    const double mag = std::abs(c.mode(m, n));
    return (m == 0 && n == 0) ? mag : 2.0 * mag;
}

}  // namespace sdflow
