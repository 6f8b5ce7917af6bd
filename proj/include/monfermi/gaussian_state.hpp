// SPDX-License-Identifier: MIT
// Pure Gaussian (Slater determinant) many-body states tracked through the
// correlation matrix g[x][y] = <psi+(x) psi(y)>. Between measurements the
// state lives in the eigenmode basis where unitary evolution is an O(L^2)
// elementwise phase scaling; a projective occupation measurement is a rank-1
// update in either basis. Basis changes cost two 1D DFT passes (periodic) or
// two gemms (open).
#pragma once

#include <fftw3.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "monfermi/lattice.hpp"

namespace monfermi {

enum class BasisTag { site, eigenmode };

struct CorrelationMatrix {
    Eigen::MatrixXcd g;
    BasisTag basis_tag = BasisTag::site;

    int size() const { return static_cast<int>(g.rows()); }
};

struct MeasurementOutcome {
    int site = -1;
    int outcome = 0;     // occupation found: 0 or 1
    double born_p1 = 0.0;
    double time = 0.0;   // filled by the trajectory engine
};

namespace detail {

// fftw plan creation mutates global planner state; execution is thread-safe
inline std::mutex& fftw_plan_mutex() {
    static std::mutex m;
    return m;
}

enum class DftAxis { columns, rows };

// In-place unnormalized DFT of every column (or row) of a column-major
// complex matrix. sign = FFTW_FORWARD applies kernel e^{-i 2 pi m x / L}.
inline void dft_axis(Eigen::MatrixXcd& mat, DftAxis axis, int sign) {
    const int L = static_cast<int>(mat.rows());
    auto* data = reinterpret_cast<fftw_complex*>(mat.data());
    const int stride = (axis == DftAxis::columns) ? 1 : L;
    const int dist = (axis == DftAxis::columns) ? L : 1;
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        int n = L;
        plan = fftw_plan_many_dft(1, &n, L, data, nullptr, stride, dist, data,
                                  nullptr, stride, dist, sign,
                                  FFTW_ESTIMATE | FFTW_UNALIGNED);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        fftw_destroy_plan(plan);
    }
}

}  // namespace detail

// Site <-> eigenmode transforms. With plane waves V(x,m) = e^{i 2 pi m x/L}/sqrt(L)
// the maps g = conj(V) a V^T and a = V^T g conj(V) reduce to DFT passes:
// g = (1/L) F a F* and a = (1/L) F* g F, F(x,m) = e^{-i 2 pi m x / L}.
inline CorrelationMatrix to_site_basis(const CorrelationMatrix& state,
                                       const SingleParticleBasis& basis) {
    if (state.basis_tag == BasisTag::site) return state;
    CorrelationMatrix out;
    out.basis_tag = BasisTag::site;
    if (basis.bc == Bc::periodic) {
        out.g = state.g;
        detail::dft_axis(out.g, detail::DftAxis::columns, FFTW_FORWARD);
        detail::dft_axis(out.g, detail::DftAxis::rows, FFTW_BACKWARD);
        out.g *= 1.0 / state.size();
    } else {
        out.g = basis.eigenvectors.conjugate() * state.g * basis.eigenvectors.transpose();
    }
    return out;
}

inline CorrelationMatrix to_eigenmode_basis(const CorrelationMatrix& state,
                                            const SingleParticleBasis& basis) {
    if (state.basis_tag == BasisTag::eigenmode) return state;
    CorrelationMatrix out;
    out.basis_tag = BasisTag::eigenmode;
    if (basis.bc == Bc::periodic) {
        out.g = state.g;
        detail::dft_axis(out.g, detail::DftAxis::columns, FFTW_BACKWARD);
        detail::dft_axis(out.g, detail::DftAxis::rows, FFTW_FORWARD);
        out.g *= 1.0 / state.size();
    } else {
        out.g = basis.eigenvectors.transpose() * state.g * basis.eigenvectors.conjugate();
    }
    return out;
}

// Mode occupation order for the ground state: ascending energy, ties broken
// by the lower mode index (for periodic bc that is the lower momentum index).
inline std::vector<int> fermi_sea_modes(const LatticeConfig& config,
                                        const SingleParticleBasis& basis) {
    std::vector<int> order(basis.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return basis.eigenvalues(a) < basis.eigenvalues(b);
    });
    order.resize(config.particle_count());
    return order;
}

inline CorrelationMatrix init_fermi_sea(const LatticeConfig& config,
                                        const SingleParticleBasis& basis) {
    config.validate();
    const int L = config.L;
    const auto occupied = fermi_sea_modes(config, basis);
    // g = sum_occ conj(V(:,k)) V(:,k)^T, assembled in the eigenmode basis
    // where it is diagonal, then rotated once
    CorrelationMatrix mode;
    mode.basis_tag = BasisTag::eigenmode;
    mode.g = Eigen::MatrixXcd::Zero(L, L);
    for (const int k : occupied) mode.g(k, k) = 1.0;
    return to_site_basis(mode, basis);
}

inline CorrelationMatrix init_product_state(const std::vector<int>& occupations) {
    const int L = static_cast<int>(occupations.size());
    if (L < 2) throw std::invalid_argument("init_product_state: need at least 2 sites");
    CorrelationMatrix state;
    state.basis_tag = BasisTag::site;
    state.g = Eigen::MatrixXcd::Zero(L, L);
    for (int x = 0; x < L; ++x) {
        if (occupations[x] != 0 && occupations[x] != 1)
            throw std::invalid_argument("init_product_state: occupations must be 0/1");
        state.g(x, x) = occupations[x];
    }
    return state;
}

// Unitary evolution by time dt >= 0. In the eigenmode basis the update is the
// elementwise phase a[a][b] *= e^{+i (xi_a - xi_b) dt}; a site-basis state is
// rotated, scaled, and rotated back.
inline CorrelationMatrix evolve(const CorrelationMatrix& state,
                                const SingleParticleBasis& basis, double dt) {
    const auto phases = propagator_phases(basis, dt);  // e^{-i xi dt}
    CorrelationMatrix mode = to_eigenmode_basis(state, basis);
    const int L = state.size();
    for (int b = 0; b < L; ++b) {
        const std::complex<double> pb = phases(b);
        for (int a = 0; a < L; ++a) mode.g(a, b) *= std::conj(phases(a)) * pb;
    }
    if (state.basis_tag == BasisTag::site) return to_site_basis(mode, basis);
    return mode;
}

namespace detail {
// clamp band: values within 1e-8 of [0,1] are rounded in; anything farther
// out signals state corruption
inline double clamp_probability(double p, const char* what) {
    if (p < -1e-8 || p > 1.0 + 1e-8)
        throw std::runtime_error(std::string(what) +
                                 ": occupation expectation outside [0,1] beyond 1e-8, "
                                 "state is corrupted (value " + std::to_string(p) + ")");
    return std::min(1.0, std::max(0.0, p));
}
}  // namespace detail

inline double born_probability(const CorrelationMatrix& state,
                               const SingleParticleBasis& basis, int site) {
    if (site < 0 || site >= state.size())
        throw std::invalid_argument("born_probability: site out of range");
    double p;
    if (state.basis_tag == BasisTag::site) {
        p = std::real(state.g(site, site));
    } else {
        const Eigen::VectorXcd u = basis.eigenvectors.row(site).transpose();
        p = std::real(u.dot(state.g * u));  // u.dot(y) = u† y
    }
    return detail::clamp_probability(p, "born_probability");
}

// Projective update after measuring n(site) with the given outcome.
// Site basis, outcome 1:  g' = g - g(:,m) g(m,:)/g_mm, then g'_mm = 1 (the
// rank-1 subtraction already zeroes row and column m).
// Site basis, outcome 0:  g' = g + g(:,m) g(m,:)/(1-g_mm), then row/column m
// are zeroed explicitly.
// Eigenmode basis: same updates with the site vector u_a = V(m,a): outcome 1
// adds +u u+ after subtracting (a u)(a u)+/p1; outcome 0 is assembled in the
// manifestly Hermitian form  a += t t+/(1-p1) - u s+ - s u+  with
// w = a u, t = w - p1 u, s = w - (p1/2) u.
inline CorrelationMatrix apply_measurement(const CorrelationMatrix& state,
                                           const SingleParticleBasis& basis, int site,
                                           int outcome) {
    if (outcome != 0 && outcome != 1)
        throw std::invalid_argument("apply_measurement: outcome must be 0 or 1");
    const double p1 = born_probability(state, basis, site);
    const double denom = (outcome == 1) ? p1 : 1.0 - p1;
    if (denom < 1e-12)
        throw std::runtime_error("apply_measurement: forbidden outcome, probability below 1e-12");

    CorrelationMatrix out = state;
    const int L = state.size();
    if (state.basis_tag == BasisTag::site) {
        const Eigen::VectorXcd col = state.g.col(site);
        const Eigen::RowVectorXcd row = state.g.row(site);
        if (outcome == 1) {
            out.g.noalias() -= col * row / p1;
            out.g(site, site) = 1.0;
        } else {
            out.g.noalias() += col * row / denom;
            out.g.row(site).setZero();
            out.g.col(site).setZero();
        }
    } else {
        const Eigen::VectorXcd u = basis.eigenvectors.row(site).transpose();
        const Eigen::VectorXcd w = state.g * u;
        if (outcome == 1) {
            out.g.noalias() -= w * w.adjoint() / p1;
            out.g.noalias() += u * u.adjoint();
        } else {
            const Eigen::VectorXcd t = w - p1 * u;
            const Eigen::VectorXcd s = w - 0.5 * p1 * u;
            out.g.noalias() += t * t.adjoint() / denom;
            out.g.noalias() -= u * s.adjoint();
            out.g.noalias() -= s * u.adjoint();
        }
    }
    return out;
}

// Born draw with the fixed threshold convention (outcome 1 iff u < p1) so an
// independent implementation fed the same uniform stream reproduces the
// trajectory event-by-event.
inline std::pair<MeasurementOutcome, CorrelationMatrix> sample_measurement(
    const CorrelationMatrix& state, const SingleParticleBasis& basis, int site,
    double u) {
    MeasurementOutcome event;
    event.site = site;
    event.born_p1 = born_probability(state, basis, site);
    event.outcome = (u < event.born_p1) ? 1 : 0;
    return {event, apply_measurement(state, basis, site, event.outcome)};
}

// Invariant magnitudes for tests and trajectory health checks.
struct InvariantReport {
    double hermiticity = 0.0;      // ||g - g+||max
    double purity = 0.0;           // ||g^2 - g||max
    double trace_deviation = 0.0;  // |tr g - expected|
    double diag_min = 0.0;
    double diag_max = 1.0;
};

inline InvariantReport state_invariants(const CorrelationMatrix& state,
                                        double expected_trace) {
    InvariantReport r;
    const auto& g = state.g;
    r.hermiticity = (g - g.adjoint()).cwiseAbs().maxCoeff();
    r.purity = (g * g - g).cwiseAbs().maxCoeff();
    r.trace_deviation = std::abs(g.trace() - std::complex<double>(expected_trace, 0.0));
    Eigen::VectorXd diag = g.diagonal().real();
    r.diag_min = diag.minCoeff();
    r.diag_max = diag.maxCoeff();
    return r;
}

}  // namespace monfermi
