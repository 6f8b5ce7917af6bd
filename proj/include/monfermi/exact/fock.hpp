// SPDX-License-Identifier: MIT
// Brute-force many-body simulator in the fixed-N Fock sector. Used only by
// tests to certify the Gaussian engine event-by-event; performance is a
// non-goal. Basis states are bitmasks (bit x set = site x occupied) listed in
// increasing integer order; |mask> = c+_{x1} c+_{x2} ... |0> with x1 < x2 < ...
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "monfermi/gaussian_state.hpp"
#include "monfermi/lattice.hpp"

namespace monfermi {

struct FockBasis {
    int L = 0;
    int N = 0;
    std::vector<std::uint32_t> masks;  // sorted ascending

    int dim() const { return static_cast<int>(masks.size()); }

    int index_of(std::uint32_t mask) const {
        const auto it = std::lower_bound(masks.begin(), masks.end(), mask);
        if (it == masks.end() || *it != mask)
            throw std::invalid_argument("FockBasis: mask outside the N-particle sector");
        return static_cast<int>(it - masks.begin());
    }
};

struct FockState {
    FockBasis basis;
    Eigen::VectorXcd amplitudes;
};

inline std::int64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::int64_t c = 1;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

inline FockBasis make_fock_basis(int L, int N) {
    if (L < 1 || L > 20) throw std::invalid_argument("make_fock_basis: L out of range");
    if (N < 0 || N > L) throw std::invalid_argument("make_fock_basis: N out of range");
    if (binomial(L, N) > 10000)
        throw std::invalid_argument("make_fock_basis: sector dimension exceeds 10^4");
    FockBasis basis;
    basis.L = L;
    basis.N = N;
    basis.masks.reserve(static_cast<std::size_t>(binomial(L, N)));
    for (std::uint32_t mask = 0; mask < (1u << L); ++mask)
        if (std::popcount(mask) == N) basis.masks.push_back(mask);
    return basis;
}

inline FockState fock_from_occupations(const std::vector<int>& bits) {
    const int L = static_cast<int>(bits.size());
    std::uint32_t mask = 0;
    int N = 0;
    for (int x = 0; x < L; ++x) {
        if (bits[x] != 0 && bits[x] != 1)
            throw std::invalid_argument("fock_from_occupations: bits must be 0/1");
        if (bits[x]) {
            mask |= (1u << x);
            ++N;
        }
    }
    FockState state;
    state.basis = make_fock_basis(L, N);
    state.amplitudes = Eigen::VectorXcd::Zero(state.basis.dim());
    state.amplitudes(state.basis.index_of(mask)) = 1.0;
    return state;
}

// Slater determinant over the given orthonormal orbitals (columns):
// amplitude on |x1<...<xN> is det M with M_ij = orbitals(x_i, j).
inline FockState fock_from_orbitals(const Eigen::MatrixXcd& orbitals) {
    const int L = static_cast<int>(orbitals.rows());
    const int N = static_cast<int>(orbitals.cols());
    FockState state;
    state.basis = make_fock_basis(L, N);
    state.amplitudes.resize(state.basis.dim());
    Eigen::MatrixXcd sub(N, N);
    for (int i = 0; i < state.basis.dim(); ++i) {
        const std::uint32_t mask = state.basis.masks[i];
        int r = 0;
        for (int x = 0; x < L; ++x)
            if (mask & (1u << x)) sub.row(r++) = orbitals.row(x);
        state.amplitudes(i) = sub.determinant();
    }
    return state;
}

// Fixed-N sector of the hopping Hamiltonian plus its eigendecomposition.
struct ExactSector {
    FockBasis basis;
    Eigen::MatrixXd h;
    Eigen::MatrixXd modes;        // orthogonal columns
    Eigen::VectorXd energies;
};

inline ExactSector make_exact_sector(const LatticeConfig& config) {
    config.validate();
    ExactSector sector;
    sector.basis = make_fock_basis(config.L, config.particle_count());
    const Eigen::MatrixXd h1 = build_hamiltonian(config);
    const int dim = sector.basis.dim();
    const int L = config.L;
    sector.h = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        const std::uint32_t mask = sector.basis.masks[i];
        for (int y = 0; y < L; ++y) {
            if (!(mask & (1u << y))) continue;
            for (int x = 0; x < L; ++x) {
                if (h1(x, y) == 0.0 || x == y || (mask & (1u << x))) continue;
                // c+_x c_y picks up the parity of occupied sites strictly
                // between x and y (Jordan-Wigner string)
                const int lo = std::min(x, y), hi = std::max(x, y);
                const std::uint32_t between =
                    ((1u << hi) - 1u) & ~((1u << (lo + 1)) - 1u);
                const int sign = (std::popcount(mask & between) % 2 == 0) ? 1 : -1;
                const std::uint32_t moved = (mask ^ (1u << y)) | (1u << x);
                sector.h(sector.basis.index_of(moved), i) += sign * h1(x, y);
            }
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sector.h);
    sector.modes = solver.eigenvectors();
    sector.energies = solver.eigenvalues();
    return sector;
}

inline FockState exact_evolve(const FockState& state, const ExactSector& sector,
                              double dt) {
    if (!(dt >= 0.0)) throw std::invalid_argument("exact_evolve: dt must be >= 0");
    FockState out = state;
    const Eigen::VectorXcd coeffs =
        sector.modes.transpose().cast<std::complex<double>>() * state.amplitudes;
    Eigen::VectorXcd rotated(coeffs.size());
    for (int i = 0; i < coeffs.size(); ++i)
        rotated(i) = coeffs(i) * std::polar(1.0, -sector.energies(i) * dt);
    out.amplitudes = sector.modes.cast<std::complex<double>>() * rotated;
    return out;
}

inline double exact_occupation(const FockState& state, int site) {
    if (site < 0 || site >= state.basis.L)
        throw std::invalid_argument("exact_occupation: site out of range");
    double p1 = 0.0;
    for (int i = 0; i < state.basis.dim(); ++i)
        if (state.basis.masks[i] & (1u << site)) p1 += std::norm(state.amplitudes(i));
    return p1;
}

// Same threshold convention as the Gaussian engine: outcome 1 iff u < p1.
inline std::pair<MeasurementOutcome, FockState> exact_measure(const FockState& state,
                                                              int site, double u) {
    MeasurementOutcome event;
    event.site = site;
    event.born_p1 = exact_occupation(state, site);
    event.outcome = (u < event.born_p1) ? 1 : 0;
    const double p_kept = (event.outcome == 1) ? event.born_p1 : 1.0 - event.born_p1;
    if (p_kept < 1e-12)
        throw std::runtime_error("exact_measure: forbidden outcome, probability below 1e-12");
    FockState out = state;
    for (int i = 0; i < state.basis.dim(); ++i) {
        const bool occupied = state.basis.masks[i] & (1u << site);
        if (occupied != (event.outcome == 1)) out.amplitudes(i) = 0.0;
    }
    out.amplitudes /= std::sqrt(p_kept);
    return {event, out};
}

// G_xy = <c+_x c_y> by direct operator application on the amplitude vector.
inline CorrelationMatrix exact_correlation_matrix(const FockState& state) {
    const int L = state.basis.L;
    CorrelationMatrix out;
    out.basis_tag = BasisTag::site;
    out.g = Eigen::MatrixXcd::Zero(L, L);
    for (int i = 0; i < state.basis.dim(); ++i) {
        const std::uint32_t mask = state.basis.masks[i];
        const std::complex<double> amp = state.amplitudes(i);
        if (amp == std::complex<double>(0.0, 0.0)) continue;
        for (int y = 0; y < L; ++y) {
            if (!(mask & (1u << y))) continue;
            out.g(y, y) += std::norm(amp);
            for (int x = 0; x < L; ++x) {
                if (x == y || (mask & (1u << x))) continue;
                const int lo = std::min(x, y), hi = std::max(x, y);
                const std::uint32_t between =
                    ((1u << hi) - 1u) & ~((1u << (lo + 1)) - 1u);
                const int sign = (std::popcount(mask & between) % 2 == 0) ? 1 : -1;
                const std::uint32_t moved = (mask ^ (1u << y)) | (1u << x);
                const int j = state.basis.index_of(moved);
                // <j| c+_x c_y |i> = sign: adds conj(amp_j) sign amp_i to G_xy
                out.g(x, y) += std::conj(state.amplitudes(j)) *
                               std::complex<double>(sign, 0.0) * amp;
            }
        }
    }
    return out;
}

// Von Neumann entropy of the reduced state on sites [0, l). Creation
// operators of the left block precede those of the right block in every
// basis mask, so the amplitude regrouping needs no fermionic sign.
inline double exact_entanglement_entropy(const FockState& state, int l) {
    const int L = state.basis.L;
    if (l < 0 || l > L)
        throw std::invalid_argument("exact_entanglement_entropy: l out of range");
    if (l == 0 || l == L) return 0.0;

    const std::uint32_t low_mask = (1u << l) - 1u;
    std::vector<std::uint32_t> left, right;
    for (const std::uint32_t mask : state.basis.masks) {
        left.push_back(mask & low_mask);
        right.push_back(mask >> l);
    }
    auto unique_sorted = [](std::vector<std::uint32_t> v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return v;
    };
    const auto rows = unique_sorted(left);
    const auto cols = unique_sorted(right);
    auto find_in = [](const std::vector<std::uint32_t>& v, std::uint32_t x) {
        return static_cast<int>(std::lower_bound(v.begin(), v.end(), x) - v.begin());
    };

    Eigen::MatrixXcd psi =
        Eigen::MatrixXcd::Zero(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (int i = 0; i < state.basis.dim(); ++i)
        psi(find_in(rows, left[i]), find_in(cols, right[i])) += state.amplitudes(i);

    const Eigen::MatrixXcd rho = psi * psi.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho);
    double s = 0.0;
    for (int i = 0; i < solver.eigenvalues().size(); ++i) {
        const double lambda = solver.eigenvalues()(i);
        if (lambda > 1e-14) s -= lambda * std::log(lambda);
    }
    return s;
}

}  // namespace monfermi
