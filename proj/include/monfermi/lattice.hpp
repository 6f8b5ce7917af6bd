// SPDX-License-Identifier: MIT
// Tight-binding chain: configuration, single-particle eigenbasis, propagator
// phases, and the derived physical scales of the measurement problem.
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace monfermi {

enum class Bc { periodic, open };

struct LatticeConfig {
    int L = 0;            // site count, >= 2
    double J = 1.0;       // hopping amplitude
    Bc bc = Bc::periodic;
    double n = 0.5;       // target filling fraction in [0, 1]

    int particle_count() const { return static_cast<int>(std::lround(n * L)); }

    void validate() const {
        if (L < 2) throw std::invalid_argument("LatticeConfig: L must be >= 2");
        if (!(n >= 0.0 && n <= 1.0))
            throw std::invalid_argument("LatticeConfig: n must lie in [0, 1]");
        if (!(J > 0.0)) throw std::invalid_argument("LatticeConfig: J must be > 0");
        const int N = particle_count();
        if (N < 0 || N > L)
            throw std::invalid_argument("LatticeConfig: round(n*L) outside [0, L]");
    }
};

// Columns of `eigenvectors` are single-particle eigenmodes; mode order is the
// momentum index m = 0..L-1 for periodic bc (eigenvalues unsorted, degenerate
// +-k pairs at m and L-m) and ascending energy for open bc.
struct SingleParticleBasis {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXcd eigenvectors;
    Bc bc = Bc::periodic;

    int size() const { return static_cast<int>(eigenvalues.size()); }
};

// tau0 = 1/(2 gamma), v0 = sqrt(2) J, l0 = v0 tau0, D = J^2/gamma,
// g0 = 2 l0 n (1-n), vmax = 2J. l_corr = l0 exp(4 pi g0) overflows double
// for small gamma, so only its log is stored.
struct DerivedScales {
    double tau0 = 0.0;
    double l0 = 0.0;
    double v0 = 0.0;
    double Ddiff = 0.0;
    double g0 = 0.0;
    double ln_lcorr = 0.0;
    double vmax = 0.0;
};

inline Eigen::MatrixXd build_hamiltonian(const LatticeConfig& config) {
    config.validate();
    const int L = config.L;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(L, L);
    const int nbonds = (config.bc == Bc::periodic) ? L : L - 1;
    // bonds accumulate: the L=2 ring has two bonds joining the same pair,
    // giving -2J entries, consistent with the plane-wave dispersion
    for (int b = 0; b < nbonds; ++b) {
        const int x = b, y = (b + 1) % L;
        h(x, y) += -config.J;
        h(y, x) += -config.J;
    }
    return h;
}

// Analytic eigenbasis. Periodic: plane waves V(x,m) = e^{i 2 pi m x / L}/sqrt(L)
// with xi_m = -2J cos(2 pi m / L). Open: sine modes
// V(x,m) = sqrt(2/(L+1)) sin(pi (m+1)(x+1)/(L+1)), xi_m = -2J cos(pi (m+1)/(L+1)).
// Both satisfy H V = V diag(xi) exactly; tests verify against a numerical solver.
inline SingleParticleBasis diagonalize(const LatticeConfig& config) {
    config.validate();
    const int L = config.L;
    SingleParticleBasis basis;
    basis.bc = config.bc;
    basis.eigenvalues.resize(L);
    basis.eigenvectors.resize(L, L);
    using std::numbers::pi;
    if (config.bc == Bc::periodic) {
        const double norm = 1.0 / std::sqrt(static_cast<double>(L));
        for (int m = 0; m < L; ++m) {
            const double k = 2.0 * pi * m / L;
            basis.eigenvalues(m) = -2.0 * config.J * std::cos(k);
            for (int x = 0; x < L; ++x) {
                // reduce the phase index mod L before trig: exact periodicity
                const long long p = (static_cast<long long>(m) * x) % L;
                const double phi = 2.0 * pi * static_cast<double>(p) / L;
                basis.eigenvectors(x, m) =
                    std::complex<double>(std::cos(phi), std::sin(phi)) * norm;
            }
        }
    } else {
        // open chain
        const double denom = L + 1.0;
        const double norm = std::sqrt(2.0 / denom);
        for (int m = 0; m < L; ++m) {
            const double k = pi * (m + 1) / denom;
            basis.eigenvalues(m) = -2.0 * config.J * std::cos(k);
            for (int x = 0; x < L; ++x)
                basis.eigenvectors(x, m) = norm * std::sin(k * (x + 1));
        }
    }
    return basis;
}

inline Eigen::VectorXcd propagator_phases(const SingleParticleBasis& basis, double dt) {
    if (!(dt >= 0.0)) throw std::invalid_argument("propagator_phases: dt must be >= 0");
    Eigen::VectorXcd phases(basis.size());
    for (int m = 0; m < basis.size(); ++m)
        phases(m) = std::polar(1.0, -basis.eigenvalues(m) * dt);
    return phases;
}

inline DerivedScales derived_scales(double gamma, const LatticeConfig& config) {
    config.validate();
    if (!(gamma > 0.0)) throw std::invalid_argument("derived_scales: gamma must be > 0");
    DerivedScales s;
    s.tau0 = 1.0 / (2.0 * gamma);
    s.v0 = std::numbers::sqrt2 * config.J;
    s.l0 = s.v0 * s.tau0;
    s.Ddiff = config.J * config.J / gamma;
    s.g0 = 2.0 * s.l0 * config.n * (1.0 - config.n);
    s.ln_lcorr = std::log(s.l0) + 4.0 * std::numbers::pi * s.g0;
    s.vmax = 2.0 * config.J;
    return s;
}

}  // namespace monfermi
