// SPDX-License-Identifier: MIT
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "catch_amalgamated.hpp"
#include "monfermi/lattice.hpp"

using namespace monfermi;
using std::numbers::pi;
using std::numbers::sqrt2;

TEST_CASE("hamiltonian matrix elements", "[lattice]") {
    SECTION("open two-site chain") {
        const auto h = build_hamiltonian({.L = 2, .J = 1.0, .bc = Bc::open});
        REQUIRE(h(0, 0) == 0.0);
        REQUIRE(h(1, 1) == 0.0);
        REQUIRE(h(0, 1) == -1.0);
        REQUIRE(h(1, 0) == -1.0);
    }
    SECTION("periodic ring wraps around") {
        const auto h = build_hamiltonian({.L = 4, .J = 1.0, .bc = Bc::periodic});
        REQUIRE(h(0, 3) == -1.0);
        REQUIRE(h(3, 0) == -1.0);
        REQUIRE(h(0, 1) == -1.0);
        REQUIRE(h(0, 2) == 0.0);
    }
    SECTION("two-site ring carries both bonds") {
        const auto h = build_hamiltonian({.L = 2, .J = 1.0, .bc = Bc::periodic});
        REQUIRE(h(0, 1) == -2.0);
        REQUIRE(h(1, 0) == -2.0);
    }
    SECTION("hopping scale") {
        const auto h = build_hamiltonian({.L = 8, .J = 2.5, .bc = Bc::open});
        REQUIRE(h(3, 4) == -2.5);
    }
}

TEST_CASE("analytic eigenbasis diagonalizes the hamiltonian", "[lattice]") {
    const std::vector<LatticeConfig> configs = {
        {.L = 2, .J = 1.0, .bc = Bc::periodic},  {.L = 2, .J = 1.0, .bc = Bc::open},
        {.L = 7, .J = 0.7, .bc = Bc::periodic},  {.L = 5, .J = 1.3, .bc = Bc::open},
        {.L = 64, .J = 1.0, .bc = Bc::periodic}, {.L = 64, .J = 1.0, .bc = Bc::open},
    };
    for (const auto& cfg : configs) {
        INFO("L=" << cfg.L << " bc=" << (cfg.bc == Bc::periodic ? "periodic" : "open"));
        const auto h = build_hamiltonian(cfg);
        const auto basis = diagonalize(cfg);
        const Eigen::MatrixXcd& v = basis.eigenvectors;

        const double residual =
            (h.cast<std::complex<double>>() * v - v * basis.eigenvalues.asDiagonal().toDenseMatrix().cast<std::complex<double>>())
                .cwiseAbs()
                .maxCoeff();
        REQUIRE(residual < 1e-10);

        const Eigen::MatrixXcd gram = v.adjoint() * v;
        const double unitarity =
            (gram - Eigen::MatrixXcd::Identity(cfg.L, cfg.L)).cwiseAbs().maxCoeff();
        REQUIRE(unitarity < 1e-12);
    }
}

TEST_CASE("eigenvalues follow the tight-binding dispersion", "[lattice]") {
    SECTION("periodic dispersion, mode order is momentum index") {
        const LatticeConfig cfg{.L = 64, .J = 1.0, .bc = Bc::periodic};
        const auto basis = diagonalize(cfg);
        for (int m = 0; m < cfg.L; ++m) {
            const double expected = -2.0 * cfg.J * std::cos(2.0 * pi * m / cfg.L);
            REQUIRE(std::abs(basis.eigenvalues(m) - expected) < 1e-12);
        }
    }
    SECTION("spectrum matches a numerical solver") {
        for (const Bc bc : {Bc::periodic, Bc::open}) {
            const LatticeConfig cfg{.L = 33, .J = 1.1, .bc = bc};
            const auto h = build_hamiltonian(cfg);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
            auto analytic = diagonalize(cfg).eigenvalues;
            std::sort(analytic.begin(), analytic.end());
            for (int m = 0; m < cfg.L; ++m)
                REQUIRE(std::abs(analytic(m) - solver.eigenvalues()(m)) < 1e-10);
        }
    }
    SECTION("small spectra") {
        auto ring4 = diagonalize({.L = 4, .J = 1.0, .bc = Bc::periodic}).eigenvalues;
        std::sort(ring4.begin(), ring4.end());
        REQUIRE(ring4(0) == Catch::Approx(-2.0).margin(1e-14));
        REQUIRE(ring4(1) == Catch::Approx(0.0).margin(1e-14));
        REQUIRE(ring4(2) == Catch::Approx(0.0).margin(1e-14));
        REQUIRE(ring4(3) == Catch::Approx(2.0).margin(1e-14));

        auto open2 = diagonalize({.L = 2, .J = 1.0, .bc = Bc::open}).eigenvalues;
        std::sort(open2.begin(), open2.end());
        REQUIRE(open2(0) == Catch::Approx(-1.0).margin(1e-14));
        REQUIRE(open2(1) == Catch::Approx(1.0).margin(1e-14));
    }
}

TEST_CASE("propagator phases", "[lattice]") {
    const LatticeConfig cfg{.L = 16, .J = 0.9, .bc = Bc::periodic};
    const auto basis = diagonalize(cfg);

    SECTION("dt = 0 is the identity") {
        const auto p = propagator_phases(basis, 0.0);
        for (int m = 0; m < cfg.L; ++m) REQUIRE(p(m) == std::complex<double>(1.0, 0.0));
    }
    SECTION("group law") {
        const auto p1 = propagator_phases(basis, 0.37);
        const auto p2 = propagator_phases(basis, 1.11);
        const auto p12 = propagator_phases(basis, 0.37 + 1.11);
        for (int m = 0; m < cfg.L; ++m) REQUIRE(std::abs(p1(m) * p2(m) - p12(m)) < 1e-12);
    }
    SECTION("unit modulus") {
        const auto p = propagator_phases(basis, 17.3);
        for (int m = 0; m < cfg.L; ++m) REQUIRE(std::abs(std::abs(p(m)) - 1.0) < 1e-14);
    }
    SECTION("half Rabi period on the open dimer") {
        // eigenvalues -J, +J: at dt = pi both phases equal e^{\mp i pi} = -1
        const auto dimer = diagonalize({.L = 2, .J = 1.0, .bc = Bc::open});
        const auto p = propagator_phases(dimer, pi);
        REQUIRE(std::abs(p(0) - std::complex<double>(-1.0, 0.0)) < 1e-12);
        REQUIRE(std::abs(p(1) - std::complex<double>(-1.0, 0.0)) < 1e-12);
    }
    SECTION("negative dt rejected") {
        REQUIRE_THROWS_AS(propagator_phases(basis, -0.1), std::invalid_argument);
    }
}

TEST_CASE("derived scales", "[lattice]") {
    SECTION("reference point gamma = 0.1") {
        const LatticeConfig cfg{.L = 128, .J = 1.0, .bc = Bc::periodic, .n = 0.5};
        const auto s = derived_scales(0.1, cfg);
        REQUIRE(s.tau0 == Catch::Approx(5.0).epsilon(1e-15));
        REQUIRE(s.v0 == Catch::Approx(sqrt2).epsilon(1e-15));
        REQUIRE(s.l0 == Catch::Approx(5.0 * sqrt2).epsilon(1e-15));
        REQUIRE(s.Ddiff == Catch::Approx(10.0).epsilon(1e-15));
        REQUIRE(s.g0 == Catch::Approx(2.0 * 5.0 * sqrt2 * 0.25).epsilon(1e-15));
        REQUIRE(s.vmax == Catch::Approx(2.0).epsilon(1e-15));
        REQUIRE(s.ln_lcorr ==
                Catch::Approx(std::log(s.l0) + 4.0 * pi * s.g0).epsilon(1e-14));
    }
    SECTION("strong monitoring point gamma = 2") {
        const auto s = derived_scales(2.0, {.L = 64, .J = 1.0, .bc = Bc::periodic, .n = 0.5});
        REQUIRE(s.l0 == Catch::Approx(sqrt2 / 4.0).epsilon(1e-15));
    }
    SECTION("scale identities hold across parameter space") {
        std::uint64_t state = 12345;
        auto unit = [&state] {
            state = state * 6364136223846793005ULL + 1442695040888963407ULL;
            return static_cast<double>(state >> 11) * 0x1.0p-53;
        };
        for (int trial = 0; trial < 1000; ++trial) {
            const double gamma = 0.01 + 5.0 * unit();
            const double J = 0.1 + 3.0 * unit();
            const double n = unit();
            const LatticeConfig cfg{.L = 32, .J = J, .bc = Bc::periodic, .n = n};
            const auto s = derived_scales(gamma, cfg);
            REQUIRE(s.tau0 * 2.0 * gamma == Catch::Approx(1.0).epsilon(1e-14));
            REQUIRE(s.l0 == Catch::Approx(s.v0 * s.tau0).epsilon(1e-14));
            REQUIRE(s.v0 * s.v0 == Catch::Approx(2.0 * J * J).epsilon(1e-14));
            REQUIRE(s.Ddiff * gamma == Catch::Approx(J * J).epsilon(1e-14));
            REQUIRE(s.g0 == Catch::Approx(2.0 * s.l0 * n * (1.0 - n)).margin(1e-14));
            REQUIRE(s.vmax == Catch::Approx(2.0 * J).epsilon(1e-14));
            REQUIRE(s.ln_lcorr - std::log(s.l0) ==
                    Catch::Approx(4.0 * pi * s.g0).margin(1e-10));
        }
    }
    SECTION("empty and full bands carry no interaction scale") {
        REQUIRE(derived_scales(0.5, {.L = 16, .J = 1.0, .bc = Bc::periodic, .n = 0.0}).g0 == 0.0);
        REQUIRE(derived_scales(0.5, {.L = 16, .J = 1.0, .bc = Bc::periodic, .n = 1.0}).g0 == 0.0);
    }
    SECTION("invalid arguments rejected") {
        const LatticeConfig ok{.L = 8, .J = 1.0, .bc = Bc::periodic, .n = 0.5};
        REQUIRE_THROWS_AS(derived_scales(0.0, ok), std::invalid_argument);
        REQUIRE_THROWS_AS(derived_scales(-1.0, ok), std::invalid_argument);
    }
}

TEST_CASE("configuration validation", "[lattice]") {
    REQUIRE_THROWS_AS((LatticeConfig{.L = 1}.validate()), std::invalid_argument);
    REQUIRE_THROWS_AS((LatticeConfig{.L = 8, .n = -0.1}.validate()), std::invalid_argument);
    REQUIRE_THROWS_AS((LatticeConfig{.L = 8, .n = 1.1}.validate()), std::invalid_argument);
    REQUIRE_THROWS_AS((LatticeConfig{.L = 8, .J = 0.0}.validate()), std::invalid_argument);
    REQUIRE_THROWS_AS((LatticeConfig{.L = 8, .J = -1.0}.validate()), std::invalid_argument);
    REQUIRE_NOTHROW((LatticeConfig{.L = 2, .J = 0.5, .bc = Bc::open, .n = 1.0}.validate()));

    // half filling on an odd chain rounds half away from zero
    REQUIRE(LatticeConfig{.L = 7, .n = 0.5}.particle_count() == 4);
    REQUIRE(LatticeConfig{.L = 6, .n = 0.5}.particle_count() == 3);
}
