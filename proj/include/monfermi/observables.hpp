// SPDX-License-Identifier: MIT
// Everything measured on a correlation-matrix snapshot: pair density
// correlator in real and momentum space, block second cumulant, von Neumann
// entanglement entropy, full counting statistics cumulants, and the
// Klich-Levitov series reconstruction of the entropy.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "monfermi/gaussian_state.hpp"

namespace monfermi {

namespace detail {
inline void require_site_basis(const CorrelationMatrix& state, const char* what) {
    if (state.basis_tag != BasisTag::site)
        throw std::invalid_argument(std::string(what) + ": state must be in the site basis");
}
}  // namespace detail

struct PairCorrelation {
    Eigen::VectorXd c_real;      // C(r), translation averaged, r = 0..L-1
    Eigen::VectorXd c_momentum;  // C(q) at q = 2 pi m / L, m = 0..L-1
    Eigen::VectorXd q_tilde;     // 2 sin(q/2), the lattice-corrected momentum
};

// C_xy = G_xy delta_xy - G_xy G_yx = n_x delta_xy - |G_xy|^2, averaged over
// the ring at fixed separation r, then Fourier transformed. C(r) = C(L-r)
// by Hermiticity, so C(q) is real; the sine residue is checked and dropped.
inline PairCorrelation pair_correlator(const CorrelationMatrix& state) {
    detail::require_site_basis(state, "pair_correlator");
    const int L = state.size();
    PairCorrelation out;
    out.c_real = Eigen::VectorXd::Zero(L);
    for (int x = 0; x < L; ++x) {
        const double nx = std::real(state.g(x, x));
        out.c_real(0) += nx - std::norm(state.g(x, x));
        for (int r = 1; r < L; ++r) {
            const int y = (x + r) % L;
            out.c_real(r) -= std::norm(state.g(x, y));
        }
    }
    out.c_real /= static_cast<double>(L);

    out.c_momentum.resize(L);
    out.q_tilde.resize(L);
    using std::numbers::pi;
    for (int m = 0; m < L; ++m) {
        const double q = 2.0 * pi * m / L;
        double re = 0.0, im = 0.0;
        for (int r = 0; r < L; ++r) {
            re += out.c_real(r) * std::cos(q * r);
            im -= out.c_real(r) * std::sin(q * r);
        }
        if (std::abs(im) > 1e-10)
            throw std::runtime_error(
                "pair_correlator: imaginary residue in C(q), hermiticity is broken");
        out.c_momentum(m) = re;
        out.q_tilde(m) = 2.0 * std::sin(0.5 * q);
    }
    return out;
}

// Tr[G_A (1 - G_A)] over the leading l x l block, evaluated directly from
// matrix entries (no spectrum needed).
inline double second_cumulant(const CorrelationMatrix& state, int l) {
    detail::require_site_basis(state, "second_cumulant");
    if (l < 1 || l > state.size())
        throw std::invalid_argument("second_cumulant: l out of range");
    double value = 0.0;
    for (int x = 0; x < l; ++x) {
        value += std::real(state.g(x, x));
        for (int y = 0; y < l; ++y) value -= std::norm(state.g(x, y));
    }
    return value;
}

// Second cumulant for every prefix length l = 1..L in one O(L^2) pass.
inline Eigen::VectorXd second_cumulant_profile(const CorrelationMatrix& state) {
    detail::require_site_basis(state, "second_cumulant_profile");
    const int L = state.size();
    Eigen::VectorXd out(L);
    double value = 0.0;
    for (int l = 0; l < L; ++l) {
        // extend the block by row/column l
        value += std::real(state.g(l, l)) - std::norm(state.g(l, l));
        for (int x = 0; x < l; ++x)
            value -= std::norm(state.g(x, l)) + std::norm(state.g(l, x));
        out(l) = value;
    }
    return out;
}

inline Eigen::VectorXd block_eigenvalues(const CorrelationMatrix& state, int l) {
    detail::require_site_basis(state, "block_eigenvalues");
    if (l < 1 || l > state.size())
        throw std::invalid_argument("block_eigenvalues: l out of range");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(state.g.topLeftCorner(l, l));
    return solver.eigenvalues();
}

struct EntropyDiagnostics {
    int clamped_modes = 0;
    double clamped_bound = 0.0;  // upper bound on the entropy the clamp discarded
};

// S = -sum_i [lam ln lam + (1-lam) ln(1-lam)] over the block spectrum.
inline double entanglement_entropy(const CorrelationMatrix& state, int l,
                                   EntropyDiagnostics* diagnostics = nullptr) {
    const Eigen::VectorXd lambda = block_eigenvalues(state, l);
    constexpr double eps = 1e-14;
    double s = 0.0;
    EntropyDiagnostics diag;
    for (int i = 0; i < lambda.size(); ++i) {
        const double raw = lambda(i);
        if (raw < -1e-8 || raw > 1.0 + 1e-8)
            throw std::runtime_error(
                "entanglement_entropy: block eigenvalue outside [0,1] beyond 1e-8");
        if (raw < eps || raw > 1.0 - eps) {
            ++diag.clamped_modes;
            diag.clamped_bound += -2.0 * eps * std::log(eps);
            continue;
        }
        s -= raw * std::log(raw) + (1.0 - raw) * std::log1p(-raw);
    }
    if (diagnostics) *diagnostics = diag;
    return s;
}

// Even cumulants kappa_2, kappa_4, ..., kappa_max of a Bernoulli(lambda)
// variable via the moment recursion kappa_n = m_n - sum C(n-1,k-1) kappa_k m_{n-k}
// with every raw moment equal to lambda.
inline std::vector<double> bernoulli_even_cumulants(double lambda, int max_order) {
    std::vector<double> kappa(max_order + 1, 0.0);
    std::vector<std::vector<double>> choose(max_order + 1,
                                            std::vector<double>(max_order + 1, 0.0));
    for (int a = 0; a <= max_order; ++a) {
        choose[a][0] = 1.0;
        for (int b = 1; b <= a; ++b)
            choose[a][b] = choose[a - 1][b - 1] + (b <= a - 1 ? choose[a - 1][b] : 0.0);
    }
    for (int order = 1; order <= max_order; ++order) {
        double value = lambda;
        for (int k = 1; k < order; ++k)
            value -= choose[order - 1][k - 1] * kappa[k] * lambda;
        kappa[order] = value;
    }
    std::vector<double> even;
    for (int order = 2; order <= max_order; order += 2) even.push_back(kappa[order]);
    return even;
}

// Full counting statistics of the block particle number: each eigenvalue of
// G_A contributes an independent Bernoulli count, so cumulants add.
inline std::vector<double> fcs_cumulants(const CorrelationMatrix& state, int l,
                                         int max_order) {
    if (max_order < 2 || max_order % 2 != 0)
        throw std::invalid_argument("fcs_cumulants: max_order must be even and >= 2");
    if (max_order > 12)
        throw std::invalid_argument(
            "fcs_cumulants: orders beyond 12 are numerically meaningless at double "
            "precision");
    const Eigen::VectorXd lambda = block_eigenvalues(state, l);
    std::vector<double> total(max_order / 2, 0.0);
    for (int i = 0; i < lambda.size(); ++i) {
        const auto one = bernoulli_even_cumulants(lambda(i), max_order);
        for (std::size_t j = 0; j < one.size(); ++j) total[j] += one[j];
    }
    return total;
}

// zeta(2q) for q = 1..6
inline constexpr double kZetaEven[6] = {
    1.6449340668482264365, 1.0823232337111381916, 1.0173430619844491397,
    1.0040773561979443394, 1.0009945751278180853, 1.0002460865533080483,
};

// Partial sums of S = sum_q 2 zeta(2q) C^(2q); entry j truncates after the
// (j+1)-th even cumulant. First term is (pi^2/3) C^(2).
inline std::vector<double> klich_levitov_entropy(const std::vector<double>& cumulants) {
    if (cumulants.size() > 6)
        throw std::invalid_argument("klich_levitov_entropy: at most 6 even cumulants");
    std::vector<double> partial;
    double sum = 0.0;
    for (std::size_t q = 0; q < cumulants.size(); ++q) {
        sum += 2.0 * kZetaEven[q] * cumulants[q];
        partial.push_back(sum);
    }
    return partial;
}

inline Eigen::VectorXd density_profile(const CorrelationMatrix& state) {
    detail::require_site_basis(state, "density_profile");
    return state.g.diagonal().real();
}

// Default block-length grid: every l up to L/2 for moderate sizes, a
// logarithmic grid above that to bound the O(l^3) eigensolves.
inline std::vector<int> default_length_grid(int L) {
    std::vector<int> grid;
    if (L <= 512) {
        for (int l = 1; l <= L / 2; ++l) grid.push_back(l);
        return grid;
    }
    grid.push_back(1);
    const double step = std::pow(static_cast<double>(L) / 2.0, 1.0 / 96.0);
    double x = 1.0;
    while (grid.back() < L / 2) {
        x *= step;
        const int l = std::min(L / 2, static_cast<int>(std::lround(x)));
        if (l > grid.back()) grid.push_back(l);
    }
    return grid;
}

struct CumulantProfile {
    std::vector<int> lengths;
    std::vector<double> l_tilde;  // (L/pi) sin(pi l / L), the chord length
    std::vector<double> c2;
    std::vector<double> entropy;
    std::vector<std::vector<double>> higher;       // even cumulants per length
    std::vector<std::vector<double>> eigenvalues;  // block spectrum per length
};

inline CumulantProfile cumulant_profile(const CorrelationMatrix& state,
                                        const std::vector<int>& lengths,
                                        int max_order = 2,
                                        bool keep_eigenvalues = false) {
    detail::require_site_basis(state, "cumulant_profile");
    if (max_order < 2 || max_order % 2 != 0 || max_order > 12)
        throw std::invalid_argument("cumulant_profile: bad max_order");
    const int L = state.size();
    using std::numbers::pi;
    CumulantProfile profile;
    const Eigen::VectorXd c2_all = second_cumulant_profile(state);
    for (const int l : lengths) {
        if (l < 1 || l > L) throw std::invalid_argument("cumulant_profile: l out of range");
        profile.lengths.push_back(l);
        profile.l_tilde.push_back(L / pi * std::sin(pi * l / L));
        profile.c2.push_back(c2_all(l - 1));

        const Eigen::VectorXd lambda = block_eigenvalues(state, l);
        double s = 0.0;
        std::vector<double> higher(max_order / 2, 0.0);
        for (int i = 0; i < lambda.size(); ++i) {
            const double raw = lambda(i);
            if (raw < -1e-8 || raw > 1.0 + 1e-8)
                throw std::runtime_error(
                    "cumulant_profile: block eigenvalue outside [0,1] beyond 1e-8");
            constexpr double eps = 1e-14;
            if (raw > eps && raw < 1.0 - eps)
                s -= raw * std::log(raw) + (1.0 - raw) * std::log1p(-raw);
            const auto one = bernoulli_even_cumulants(std::min(1.0, std::max(0.0, raw)),
                                                      max_order);
            for (std::size_t j = 0; j < one.size(); ++j) higher[j] += one[j];
        }
        profile.entropy.push_back(s);
        profile.higher.push_back(std::move(higher));
        if (keep_eigenvalues)
            profile.eigenvalues.emplace_back(lambda.data(), lambda.data() + lambda.size());
    }
    return profile;
}

}  // namespace monfermi
