#include "sdflow/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sdflow/fft.hpp"

namespace sdflow {

Grid make_grid(double a, double r, int nx, int ntheta) {
    if (!(a > 0.0)) throw std::invalid_argument("make_grid: axial period a must be positive");
    if (!(r > 0.0)) throw std::invalid_argument("make_grid: radius r must be positive");
    if (nx < 8 || nx % 2 != 0)
        throw std::invalid_argument("make_grid: Nx must be even and >= 8");
    if (ntheta < 8 || ntheta % 2 != 0)
        throw std::invalid_argument("make_grid: Ntheta must be even and >= 8");
    return Grid{a, r, nx, ntheta};
}

SpectralField to_spectral(const HeightField& f) {
    SpectralField out(f.grid);
    std::vector<Complex> tmp(f.v.size());
    for (size_t k = 0; k < f.v.size(); ++k) tmp[k] = Complex(f.v[k], 0.0);
    fft::forward(f.grid.nx, f.grid.ntheta, tmp.data(), out.c.data());
    return out;
}

HeightField to_physical(const SpectralField& c, double imag_tol) {
    std::vector<Complex> tmp(c.c.size());
    fft::inverse(c.grid.nx, c.grid.ntheta, c.c.data(), tmp.data());
    HeightField out(c.grid);
    double max_im = 0.0, max_re = 0.0;
    for (size_t k = 0; k < tmp.size(); ++k) {
        out.v[k] = tmp[k].real();
        max_im = std::max(max_im, std::abs(tmp[k].imag()));
        max_re = std::max(max_re, std::abs(tmp[k].real()));
    }
    if (max_im > imag_tol * std::max(1.0, max_re))
        throw std::domain_error("to_physical: coefficients are not conjugate-symmetric");
    return out;
}

SpectralField spectral_derivative(const SpectralField& c, int bx, int btheta) {
    if (bx < 0 || btheta < 0 || bx + btheta > 4)
        throw std::invalid_argument("spectral_derivative: order must satisfy 0 <= bx+btheta <= 4");
    const Grid& g = c.grid;
    SpectralField out(g);
    const Complex iu(0.0, 1.0);
    for (int i = 0; i < g.nx; ++i) {
        const int m = g.m_of(i);
        const bool nyq_x = (i == g.nx / 2) && (bx % 2 == 1);
        const Complex fx = bx == 0 ? Complex(1.0) : std::pow(iu * g.kx(m), bx);
        for (int j = 0; j < g.ntheta; ++j) {
            const int n = g.n_of(j);
            const bool nyq_t = (j == g.ntheta / 2) && (btheta % 2 == 1);
            if (nyq_x || nyq_t) {
                out.at(i, j) = 0.0;
                continue;
            }
            const Complex ft = btheta == 0 ? Complex(1.0) : std::pow(iu * static_cast<double>(n), btheta);
            out.at(i, j) = fx * ft * c.at(i, j);
        }
    }
    return out;
}

HeightField shift_x(const HeightField& f, double s) {
    const Grid& g = f.grid;
    const double cells = s / (g.a / g.nx);
    const double nearest = std::round(cells);
    if (std::abs(cells - nearest) < 1e-12) {
        // exact grid shift: index permutation
        int k = static_cast<int>(nearest) % g.nx;
        if (k < 0) k += g.nx;
        HeightField out(g);
        for (int i = 0; i < g.nx; ++i)
            for (int j = 0; j < g.ntheta; ++j) out.at(i, j) = f.at((i + k) % g.nx, j);
        return out;
    }
    SpectralField c = to_spectral(f);
    for (int i = 0; i < g.nx; ++i) {
        const int m = g.m_of(i);
        const double phase = g.kx(m) * s;
        // Nyquist handled as a cosine mode to keep the field real
        const Complex mult = (i == g.nx / 2) ? Complex(std::cos(phase), 0.0)
                                             : std::exp(Complex(0.0, phase));
        for (int j = 0; j < g.ntheta; ++j) c.at(i, j) *= mult;
    }
    return to_physical(c);
}

HeightField shift_theta(const HeightField& f, double s) {
    const Grid& g = f.grid;
    const double cells = s / (2.0 * M_PI / g.ntheta);
    const double nearest = std::round(cells);
    if (std::abs(cells - nearest) < 1e-12) {
        int k = static_cast<int>(nearest) % g.ntheta;
        if (k < 0) k += g.ntheta;
        HeightField out(g);
        for (int i = 0; i < g.nx; ++i)
            for (int j = 0; j < g.ntheta; ++j) out.at(i, j) = f.at(i, (j + k) % g.ntheta);
        return out;
    }
    SpectralField c = to_spectral(f);
    for (int j = 0; j < g.ntheta; ++j) {
        const int n = g.n_of(j);
        const double phase = n * s;
        const Complex mult = (j == g.ntheta / 2) ? Complex(std::cos(phase), 0.0)
                                                 : std::exp(Complex(0.0, phase));
        for (int i = 0; i < g.nx; ++i) c.at(i, j) *= mult;
    }
    return to_physical(c);
}

HeightField reflect_x(const HeightField& f) {
    const Grid& g = f.grid;
    HeightField out(g);
    for (int i = 0; i < g.nx; ++i) {
        const int ir = (g.nx - i) % g.nx;
        for (int j = 0; j < g.ntheta; ++j) out.at(i, j) = f.at(ir, j);
    }
    return out;
}

void dealias_inplace(SpectralField& c) {
    const Grid& g = c.grid;
    const double mx = g.nx / 3.0, mt = g.ntheta / 3.0;
    for (int i = 0; i < g.nx; ++i) {
        const bool kill_x = std::abs(g.m_of(i)) > mx;
        for (int j = 0; j < g.ntheta; ++j)
            if (kill_x || std::abs(g.n_of(j)) > mt) c.at(i, j) = 0.0;
    }
}

SpectralField dealias(const SpectralField& c) {
    SpectralField out = c;
    dealias_inplace(out);
    return out;
}

double min_clearance(const HeightField& rho) {
    double m = rho.grid.r + rho.v[0];
    for (double x : rho.v) m = std::min(m, rho.grid.r + x);
    return m;
}

double sup_norm(const HeightField& f) {
    double m = 0.0;
    for (double x : f.v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace sdflow
