#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "monfermi/theory/scaling.hpp"

namespace monfermi::theory {

// One-loop renormalization data on caller-supplied grids. Entries are
// flagged invalid outside the diffusive window (scale between l0 and
// l_corr) or where the running coupling drops below 1.
struct RGPrediction {
    std::vector<double> q;
    std::vector<double> g_of_q;
    std::vector<double> z_of_q;  // identically 1 at one loop
    std::vector<double> c_of_q;
    std::vector<char> q_valid;
    std::vector<double> l;
    std::vector<double> cumulant_of_l;
    std::vector<char> l_valid;
};

namespace detail {

struct RGScales {
    double l0 = 0.0;
    double g0 = 0.0;
    double ln_lcorr = 0.0;  // ln l0 + 4 pi g0, kept in log form
};

inline RGScales rg_scales(double gamma, double J, double density) {
    if (!(gamma > 0.0)) throw std::invalid_argument("rg_scales: gamma must be positive");
    if (!(J > 0.0)) throw std::invalid_argument("rg_scales: J must be positive");
    if (!(density >= 0.0 && density <= 1.0))
        throw std::invalid_argument("rg_scales: density must lie in [0, 1]");
    RGScales s;
    s.l0 = std::sqrt(2.0) * J / (2.0 * gamma);
    s.g0 = 2.0 * s.l0 * density * (1.0 - density);
    s.ln_lcorr = std::log(s.l0) + 4.0 * kPi * s.g0;
    return s;
}

}  // namespace detail

// g(q) = g0 - (1/4pi) ln(1/(q l0)); Z = 1; C(q) = Z^2 g(q) q;
// cumulant(l) = (2 g0/pi) ln(l/l0) - (1/4pi) ln^2(l/l0).
inline RGPrediction rg_corrected(const std::vector<double>& q_grid,
                                 const std::vector<double>& l_grid,
                                 double gamma, double J, double density) {
    const detail::RGScales s = detail::rg_scales(gamma, J, density);
    RGPrediction out;
    out.q = q_grid;
    out.l = l_grid;
    out.g_of_q.reserve(q_grid.size());
    out.z_of_q.assign(q_grid.size(), 1.0);
    out.c_of_q.reserve(q_grid.size());
    out.q_valid.reserve(q_grid.size());
    for (double q : q_grid) {
        if (!(q > 0.0)) throw std::invalid_argument("rg_corrected: q must be positive");
        const double g = s.g0 - std::log(1.0 / (q * s.l0)) / (4.0 * kPi);
        out.g_of_q.push_back(g);
        out.c_of_q.push_back(g * q);
        const bool window = q * s.l0 < 1.0 && std::log(q) + s.ln_lcorr > 0.0;
        out.q_valid.push_back(static_cast<char>(window && g >= 1.0));
    }
    out.cumulant_of_l.reserve(l_grid.size());
    out.l_valid.reserve(l_grid.size());
    for (double l : l_grid) {
        if (!(l > 0.0)) throw std::invalid_argument("rg_corrected: l must be positive");
        const double ln_ratio = std::log(l / s.l0);
        out.cumulant_of_l.push_back(2.0 * s.g0 / kPi * ln_ratio -
                                    ln_ratio * ln_ratio / (4.0 * kPi));
        // coupling at the block scale q ~ 1/l
        const double g_scale = s.g0 - ln_ratio / (4.0 * kPi);
        const bool window = l > s.l0 && std::log(l) < s.ln_lcorr;
        out.l_valid.push_back(static_cast<char>(window && g_scale >= 1.0));
    }
    return out;
}

// Averaged equal-time correlator of diffusive spreading,
// C0(x,t) = n(1-n) exp(-x^2 / 4D|t|) / sqrt(4 pi D |t|).
inline double diffusive_C0(double x, double t, double D, double density) {
    if (t == 0.0) throw std::invalid_argument("diffusive_C0: t must be nonzero");
    if (!(D > 0.0)) throw std::invalid_argument("diffusive_C0: D must be positive");
    const double var = 4.0 * D * std::fabs(t);
    return density * (1.0 - density) * std::exp(-x * x / var) / std::sqrt(kPi * var);
}

enum class EntropyRegime { ballistic, diffusive, saturated };

// Piecewise entanglement prediction. Outside the saturated regime the
// band collapses onto the point value; in the saturated regime only an
// order-of-magnitude band [g0^2, diffusive value at l_corr] is known.
struct EntropyPrediction {
    EntropyRegime regime = EntropyRegime::ballistic;
    double value = 0.0;
    double band_low = 0.0;
    double band_high = 0.0;
};

inline EntropyPrediction entropy_prediction(double l, double gamma, double J, double density) {
    if (!(l >= 0.0)) throw std::invalid_argument("entropy_prediction: l must be nonnegative");
    const detail::RGScales s = detail::rg_scales(gamma, J, density);
    const double weight = density * (1.0 - density);
    EntropyPrediction out;
    if (l < s.l0) {
        out.regime = EntropyRegime::ballistic;
        double sdens = 0.0;
        if (weight > 0.0)
            sdens = -(density * std::log(density) +
                      (1.0 - density) * std::log(1.0 - density));
        out.value = sdens * l;
        out.band_low = out.band_high = out.value;
        return out;
    }
    const double ln_ratio = std::log(l / s.l0);
    if (ln_ratio < 4.0 * kPi * s.g0) {
        out.regime = EntropyRegime::diffusive;
        out.value = (4.0 * kPi / 3.0) * weight * s.l0 * ln_ratio;
        out.band_low = out.band_high = out.value;
        return out;
    }
    out.regime = EntropyRegime::saturated;
    out.band_low = s.g0 * s.g0;
    out.band_high = (8.0 * kPi * kPi / 3.0) * s.g0 * s.g0;
    out.value = out.band_high;
    return out;
}

}  // namespace monfermi::theory
