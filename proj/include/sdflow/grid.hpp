// Discrete representation of a-periodic x theta-periodic height functions on a
// reference cylinder of radius r, with exact spectral differentiation, shifts,
// reflection and 2/3-rule dealiasing.
#ifndef SDFLOW_GRID_HPP
#define SDFLOW_GRID_HPP

#include <cmath>
#include <complex>
#include <vector>

namespace sdflow {

using Complex = std::complex<double>;

// Uniform tensor grid on one periodic cell [0,a) x [0,2pi). Node sets exclude
// the right endpoints (periodic identification).
struct Grid {
    double a = 0.0;   // axial period
    double r = 0.0;   // reference cylinder radius
    int nx = 0;       // axial samples (even, >= 8)
    int ntheta = 0;   // angular samples (even, >= 8)

    double x(int i) const { return a * i / nx; }
    double theta(int j) const { return 2.0 * M_PI * j / ntheta; }
    int size() const { return nx * ntheta; }

    // integer wavenumber of spectral index (Nyquist maps to -n/2)
    int m_of(int i) const { return i <= nx / 2 - 1 ? i : i - nx; }
    int n_of(int j) const { return j <= ntheta / 2 - 1 ? j : j - ntheta; }
    // physical axial frequency of mode m
    double kx(int m) const { return 2.0 * M_PI * m / a; }

    bool operator==(const Grid&) const = default;
};

Grid make_grid(double a, double r, int nx, int ntheta);

// Real samples rho(x_i, theta_j), row-major with theta fastest.
struct HeightField {
    Grid grid;
    std::vector<double> v;

    HeightField() = default;
    explicit HeightField(const Grid& g, double fill = 0.0) : grid(g), v(g.size(), fill) {}

    double& at(int i, int j) { return v[static_cast<size_t>(i) * grid.ntheta + j]; }
    double at(int i, int j) const { return v[static_cast<size_t>(i) * grid.ntheta + j]; }
};

// Complex Fourier coefficients rho_hat(m,n) in FFT index order, normalized so
// that rho(x,theta) = sum rho_hat(m,n) e^{2 pi i m x / a} e^{i n theta}.
struct SpectralField {
    Grid grid;
    std::vector<Complex> c;

    SpectralField() = default;
    explicit SpectralField(const Grid& g) : grid(g), c(g.size()) {}

    Complex& at(int i, int j) { return c[static_cast<size_t>(i) * grid.ntheta + j]; }
    Complex at(int i, int j) const { return c[static_cast<size_t>(i) * grid.ntheta + j]; }

    // access by integer wavenumbers (m,n), negative values wrap
    Complex& mode(int m, int n) {
        return at((m % grid.nx + grid.nx) % grid.nx, (n % grid.ntheta + grid.ntheta) % grid.ntheta);
    }
    Complex mode(int m, int n) const {
        return at((m % grid.nx + grid.nx) % grid.nx, (n % grid.ntheta + grid.ntheta) % grid.ntheta);
    }
};

SpectralField to_spectral(const HeightField& f);
// Inverse transform. Throws std::domain_error if the coefficients are not
// conjugate-symmetric (imaginary residue above tolerance relative to scale).
HeightField to_physical(const SpectralField& c, double imag_tol = 1e-10);

// d^{bx}_x d^{btheta}_theta by Fourier multipliers; Nyquist rows/columns are
// zeroed for odd derivative orders so real fields stay real.
SpectralField spectral_derivative(const SpectralField& c, int bx, int btheta);

// samples of rho(x+s, theta); exact permutation when s is a whole number of cells
HeightField shift_x(const HeightField& f, double s);
HeightField shift_theta(const HeightField& f, double s);
// samples of rho(-x, theta); grid-exact index permutation
HeightField reflect_x(const HeightField& f);

// 2/3-rule: zero all modes with |m| > nx/3 or |n| > ntheta/3
SpectralField dealias(const SpectralField& c);
void dealias_inplace(SpectralField& c);

double min_clearance(const HeightField& rho);  // min over grid of r + rho
double sup_norm(const HeightField& f);

}  // namespace sdflow

#endif
