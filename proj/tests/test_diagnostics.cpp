#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sdflow/diagnostics.hpp"
#include "sdflow/equilibria.hpp"
#include "sdflow/geometry.hpp"

using namespace sdflow;

TEST_CASE("volume") {
    SUBCASE("reference cylinder r=2: 8 pi^2") {
        Grid g = make_grid(2.0 * M_PI, 2.0, 32, 32);
        CHECK(volume(HeightField(g)) == doctest::Approx(8.0 * M_PI * M_PI).epsilon(1e-14));
    }

    SUBCASE("concentric cylinder") {
        Grid g = make_grid(3.0, 1.5, 16, 16);
        HeightField rho(g, 0.25);
        CHECK(volume(rho) == doctest::Approx(M_PI * 1.75 * 1.75 * 3.0).epsilon(1e-14));
    }

    SUBCASE("offset cylinder matches pi rbar^2 a") {
        Grid g = make_grid(2.0 * M_PI, 1.5, 64, 64);
        HeightField rho = cylinder_height(0.1, -0.05, 1.3, g);
        CHECK(std::abs(volume(rho) - 1.69 * M_PI * 2.0 * M_PI) < 1e-10 * volume(rho));
    }
}

TEST_CASE("area") {
    SUBCASE("lateral area of cylinders") {
        Grid g = make_grid(2.0 * M_PI, 2.0, 32, 32);
        CHECK(area(HeightField(g)) == doctest::Approx(2.0 * M_PI * 2.0 * g.a).epsilon(1e-13));
        HeightField rho(g, 0.5);
        CHECK(area(rho) == doctest::Approx(2.0 * M_PI * 2.5 * g.a).epsilon(1e-13));
    }

    SUBCASE("x-independent profile against 1-D adaptive quadrature") {
        Grid g = make_grid(2.0 * M_PI, 1.0, 64, 64);
        const double e = 0.1;
        HeightField rho = oracles::sample(g, [&](double, double t) { return e * std::cos(t); });
        const double oracle =
            g.a * oracles::adaptive_simpson(
                      [&](double t) {
                          const double u = 1.0 + e * std::cos(t);
                          return std::sqrt(u * u + e * e * std::sin(t) * std::sin(t));
                      },
                      0.0, 2.0 * M_PI);
        CHECK(std::abs(area(rho) - oracle) < 1e-10 * oracle);
    }

    SUBCASE("volume of an x-independent field is a times the 1-D value") {
        Grid g = make_grid(5.0, 1.0, 32, 32);
        const double e = 0.2;
        HeightField rho = oracles::sample(g, [&](double, double t) { return e * std::sin(t); });
        const double oracle = g.a * 0.5 *
                              oracles::adaptive_simpson(
                                  [&](double t) {
                                      const double u = 1.0 + e * std::sin(t);
                                      return u * u;
                                  },
                                  0.0, 2.0 * M_PI);
        CHECK(std::abs(volume(rho) - oracle) < 1e-12 * oracle);
    }
}

TEST_CASE("dVol_dt") {
    Grid g = make_grid(2.0 * M_PI, 2.0, 32, 32);

    SUBCASE("unit speed on the flat cylinder") {
        HeightField rho(g);
        HeightField rhodot(g, 1.0);
        CHECK(dVol_dt(rho, rhodot) == doctest::Approx(2.0 * M_PI * g.r * g.a).epsilon(1e-14));
    }

    SUBCASE("zero speed") {
        HeightField rho = oracles::random_field(g, 0.2, 3);
        CHECK(dVol_dt(rho, HeightField(g)) == 0.0);
    }

    SUBCASE("the flow conserves volume identically") {
        for (uint64_t seed : {5u, 6u, 7u}) {
            HeightField rho = oracles::random_field(g, 0.1, seed);
            HeightField G = evolution_operator(rho);
            CHECK(std::abs(dVol_dt(rho, G)) <= 1e-8 * volume(rho));
        }
    }
}

TEST_CASE("dA_dt") {
    Grid g = make_grid(2.0 * M_PI, 1.5, 64, 64);

    SUBCASE("constants dissipate nothing") {
        CHECK(dA_dt(HeightField(g)) == doctest::Approx(0.0));
        CHECK(std::abs(dA_dt(HeightField(g, 0.3))) < 1e-13);
    }

    SUBCASE("offset cylinders dissipate nothing") {
        HeightField rho = cylinder_height(0.1, -0.05, 1.3, g);
        CHECK(std::abs(dA_dt(rho)) < 1e-10);
    }

    SUBCASE("matches the chain-rule oracle and is non-positive") {
        for (uint64_t seed : {11u, 12u, 13u, 14u, 15u}) {
            HeightField rho = oracles::random_field(g, 0.07, seed);
            HeightField G = evolution_operator(rho);
            const double an = dA_dt(rho);
            CHECK(an <= 0.0);
            const double delta = 1e-5;
            HeightField p = rho, m = rho;
            for (int k = 0; k < g.size(); ++k) {
                p.v[k] += delta * G.v[k];
                m.v[k] -= delta * G.v[k];
            }
            const double fd = (area(p) - area(m)) / (2.0 * delta);
            CHECK(std::abs(an - fd) < 1e-6 * std::abs(fd));
        }
    }

    SUBCASE("bounded by the diagonal part of the dissipation form") {
        HeightField rho = oracles::random_field(g, 0.07, 21);
        GeometryBundle b = geometry_bundle(rho);
        SpectralField ch = to_spectral(b.H);
        dealias_inplace(ch);
        HeightField Hx = to_physical(spectral_derivative(ch, 1, 0));
        HeightField Ht = to_physical(spectral_derivative(ch, 0, 1));
        double diag = 0.0;
        for (int k = 0; k < g.size(); ++k) {
            const double u = g.r + b.rho.v[k];
            diag += (u * u * Hx.v[k] * Hx.v[k] + Ht.v[k] * Ht.v[k]) / std::sqrt(b.gdet.v[k]);
        }
        diag = -(diag / g.size()) * 2.0 * M_PI * g.a;
        CHECK(dA_dt(rho) <= diag + 1e-10);
    }
}
