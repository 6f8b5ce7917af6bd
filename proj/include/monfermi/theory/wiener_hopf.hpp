#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "monfermi/theory/bessel.hpp"

namespace monfermi::theory {

namespace detail {

// Levinson recursion for T x = b with T symmetric positive definite
// Toeplitz, first column `col`. O(n^2) time, O(n) workspace.
inline std::vector<double> solve_toeplitz_symmetric(const std::vector<double>& col,
                                                    const std::vector<double>& rhs) {
    const std::size_t n = col.size();
    if (n == 0 || rhs.size() != n)
        throw std::invalid_argument("solve_toeplitz_symmetric: bad dimensions");
    if (col[0] == 0.0)
        throw std::runtime_error("solve_toeplitz_symmetric: zero diagonal");
    std::vector<double> t(n);
    std::vector<double> b(n);
    for (std::size_t i = 0; i < n; ++i) {
        t[i] = col[i] / col[0];
        b[i] = rhs[i] / col[0];
    }
    std::vector<double> x(n, 0.0);
    x[0] = b[0];
    if (n == 1) return x;
    std::vector<double> y(n, 0.0);
    y[0] = -t[1];
    double alpha = -t[1];
    double beta = 1.0;
    for (std::size_t k = 1; k < n; ++k) {
        beta *= 1.0 - alpha * alpha;
        if (!(beta > 0.0))
            throw std::runtime_error("solve_toeplitz_symmetric: matrix not positive definite");
        double dot = 0.0;
        for (std::size_t i = 1; i <= k; ++i) dot += t[i] * x[k - i];
        const double mu = (b[k] - dot) / beta;
        for (std::size_t i = 0; i < k; ++i) x[i] += mu * y[k - 1 - i];
        x[k] = mu;
        if (k < n - 1) {
            double ydot = 0.0;
            for (std::size_t i = 1; i <= k; ++i) ydot += t[i] * y[k - i];
            alpha = -(t[k + 1] + ydot) / beta;
            for (std::size_t i = 0, j = k - 1; i < j; ++i, --j) {
                const double yi = y[i] + alpha * y[j];
                y[j] += alpha * y[i];
                y[i] = yi;
            }
            if ((k & 1u) == 1u) y[k / 2] *= 1.0 + alpha;
            y[k] = alpha;
        }
    }
    return x;
}

}  // namespace detail

// One boundary solve on a fixed grid, everything in units of tau0.
struct WienerHopfResult {
    double C = 0.0;   // dimensionless 2(1 - F(0)); C(q) = n(1-n) * C
    double F0 = 0.0;  // auxiliary function at the boundary
    double h = 0.0;   // grid step
    double T = 0.0;   // truncation time
    int n = 0;        // grid points
};

// Discretizes F(s) - (1/2) int_0^T K(|s-s'|) F(s') ds' = K(s)/2 on the
// midpoint grid s_j = (j+1/2) h with kernel K(s) = e^{-s} J0(sqrt2 u s)
// and solves by Levinson factorization of the symmetric Toeplitz
// system. Returns C = 2(1 - F(0)) through the exact boundary relation
// F(0) = 1/2 + (h/2) sum_j K(s_j) F_j.
inline WienerHopfResult wiener_hopf_fixed(double u, double h_factor, double T) {
    if (!(u > 0.0)) throw std::invalid_argument("wiener_hopf_fixed: u must be positive");
    if (!(h_factor >= 1.0) || !(T > 0.0))
        throw std::invalid_argument("wiener_hopf_fixed: bad grid parameters");
    const double su = std::sqrt(2.0) * u;
    const double h = std::min(1.0, 1.0 / su) / 40.0 / h_factor;
    const int n = static_cast<int>(std::lround(T / h));
    if (n < 2) throw std::invalid_argument("wiener_hopf_fixed: grid too coarse");
    auto kernel = [su](double s) { return std::exp(-s) * bessel_j0(su * s); };
    std::vector<double> col(n);
    std::vector<double> rhs(n);
    for (int i = 0; i < n; ++i) {
        col[i] = -(0.5 * h) * kernel(i * h);
        rhs[i] = 0.5 * kernel((i + 0.5) * h);
    }
    col[0] += 1.0;
    const std::vector<double> f = detail::solve_toeplitz_symmetric(col, rhs);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += rhs[i] * f[i];  // rhs holds K(s_j)/2
    const double f0 = 0.5 + h * acc;
    return {2.0 * (1.0 - f0), f0, h, T, n};
}

struct WienerHopfOptions {
    double h_factor = 1.0;
    double T = 40.0;
    bool auto_refine = true;
    double contract = 0.002;  // relative change under h/2 and 2T
    int max_refinements = 6;
};

// Refines the grid until halving h and doubling T each move C by less
// than the convergence contract, then returns the converged solve.
inline WienerHopfResult wiener_hopf_universal(double u, WienerHopfOptions opt = {}) {
    WienerHopfResult base = wiener_hopf_fixed(u, opt.h_factor, opt.T);
    if (!opt.auto_refine) return base;
    double h_factor = opt.h_factor;
    double T = opt.T;
    for (int round = 0; round < opt.max_refinements; ++round) {
        const WienerHopfResult fine_h = wiener_hopf_fixed(u, 2.0 * h_factor, T);
        const WienerHopfResult long_t = wiener_hopf_fixed(u, h_factor, 2.0 * T);
        const double dh = std::fabs(fine_h.C / base.C - 1.0);
        const double dt = std::fabs(long_t.C / base.C - 1.0);
        if (dh < opt.contract && dt < opt.contract) return base;
        if (dt >= dh) {
            T *= 2.0;
            base = long_t;
        } else {
            h_factor *= 2.0;
            base = fine_h;
        }
    }
    throw std::runtime_error("wiener_hopf_universal: no convergence within refinement budget");
}

// Boundary-method prediction for the equal-time correlator at momentum
// q: C(q) = n(1-n) * 2(1 - F(0)) with u = 2 l0 sin(q/2).
inline double wiener_hopf_solve(double q, double gamma, double J, double density,
                                WienerHopfOptions opt = {}) {
    if (!(q > 0.0)) throw std::invalid_argument("wiener_hopf_solve: q must be positive");
    if (!(gamma > 0.0)) throw std::invalid_argument("wiener_hopf_solve: gamma must be positive");
    const double weight = density * (1.0 - density);
    if (weight == 0.0) return 0.0;
    const double l0 = std::sqrt(2.0) * J / (2.0 * gamma);
    const double u = 2.0 * l0 * std::sin(0.5 * q);
    return weight * wiener_hopf_universal(u, opt).C;
}

}  // namespace monfermi::theory
