#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace monfermi::theory {

inline constexpr double kPi = 3.14159265358979323846;

// Value plus an estimated absolute quadrature error.
struct QuadResult {
    double value = 0.0;
    double error = 0.0;
};

// Scaling function sampled on a sorted grid of dimensionless abscissae.
struct TheoryCurve {
    std::vector<double> abscissae;
    std::vector<double> values;
    std::vector<double> quad_error;
};

// Per-point contract: finite value, error below 1e-6 of the value or
// 1e-8 absolute near zeros.
inline void validate_curve(const TheoryCurve& curve) {
    if (curve.values.size() != curve.abscissae.size() ||
        curve.quad_error.size() != curve.abscissae.size())
        throw std::logic_error("TheoryCurve: column lengths differ");
    for (std::size_t i = 0; i < curve.abscissae.size(); ++i) {
        if (i + 1 < curve.abscissae.size() &&
            !(curve.abscissae[i] < curve.abscissae[i + 1]))
            throw std::invalid_argument("TheoryCurve: abscissae not strictly increasing");
        if (!std::isfinite(curve.values[i]))
            throw std::runtime_error("TheoryCurve: non-finite value at index " + std::to_string(i));
        const double bound = std::max(1e-6 * std::fabs(curve.values[i]), 1e-8);
        if (!(curve.quad_error[i] < bound))
            throw std::runtime_error("TheoryCurve: quadrature error above contract at index " +
                                     std::to_string(i));
    }
}

inline std::vector<double> log_grid(double lo, double hi, int npts) {
    if (!(lo > 0.0) || !(hi > lo) || npts < 2)
        throw std::invalid_argument("log_grid: need 0 < lo < hi and npts >= 2");
    std::vector<double> out(npts);
    const double step = std::log(hi / lo) / (npts - 1);
    for (int i = 0; i < npts; ++i) out[i] = lo * std::exp(step * i);
    out.back() = hi;
    return out;
}

// Accelerated sum of an alternating series from its leading terms
// (iterated averaging of partial sums). The reported error is twice
// the change contributed by the final averaging stage.
inline QuadResult euler_sum_alternating(const std::vector<double>& terms) {
    if (terms.empty()) return {0.0, 0.0};
    std::vector<double> row(terms.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        acc += terms[i];
        row[i] = acc;
    }
    double best = row.back();
    double change = std::fabs(terms.back());
    while (row.size() > 1) {
        for (std::size_t i = 0; i + 1 < row.size(); ++i)
            row[i] = 0.5 * (row[i] + row[i + 1]);
        row.pop_back();
        change = std::fabs(row.back() - best);
        best = row.back();
    }
    return {best, 2.0 * change};
}

namespace detail {

// Sum over half-period lobes of f(u) cos(uy), u from the k0-th zero of
// the cosine upward. The lobe integrals alternate in sign, so the
// infinite tail is recovered by series acceleration.
template <class F>
QuadResult cosine_segments(F&& f, double y, int k0, int nseg) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
    std::vector<double> terms(nseg);
    double err_sum = 0.0;
    double abs_sum = 0.0;
    for (int k = 0; k < nseg; ++k) {
        const double a = (0.5 * kPi + (k0 + k) * kPi) / y;
        const double b = (0.5 * kPi + (k0 + k + 1) * kPi) / y;
        double e = 0.0;
        // tolerance sits above the noise floor of a tabulated envelope,
        // whose own quadrature carries ~1e-10 relative jitter
        terms[k] = GK::integrate([&](double u) { return f(u) * std::cos(u * y); },
                                 a, b, 6, 1e-9, &e);
        err_sum += e;
        abs_sum += std::fabs(terms[k]);
    }
    const QuadResult acc = euler_sum_alternating(terms);
    return {acc.value, acc.error + err_sum + 1e-16 * abs_sum};
}

}  // namespace detail

// Elementary block of the density ladder, B^-1 = sqrt((1/tau0 - iw)^2
// + (4 J sin(q/2))^2) with the square root on the Re > 0 branch.
inline std::complex<double> diffuson_block(double q, double omega, double tau0, double J) {
    if (!(tau0 > 0.0)) throw std::invalid_argument("diffuson_block: tau0 must be positive");
    const std::complex<double> a(1.0 / tau0, -omega);
    const double band = 4.0 * J * std::sin(0.5 * q);
    return 1.0 / std::sqrt(a * a + band * band);
}

// Dimensionless block b(v,u) = 1/sqrt((1-iv)^2 + 2u^2), Re b > 0.
inline std::complex<double> ladder_block_dimensionless(double v, double u) {
    const std::complex<double> z(1.0, -v);
    return 1.0 / std::sqrt(z * z + 2.0 * u * u);
}

// Universal bulk scaling function
//   c~(u) = (2/pi) int_0^inf dv [Re b(v,2u) - |b(v,2u)|^2] / [1 - Re b(v,2u)].
// The integrand has its support edge near v_c = sqrt(1+8u^2); beyond
// the finite window it falls off as 4u^2/v^4, which is added in closed
// form. Relative accuracy 1e-6 or better across u in [1e-3, 1e3].
inline QuadResult bulk_scaling_ctilde_quad(double u) {
    if (!(u >= 0.0))
        throw std::invalid_argument("bulk_scaling_ctilde: u must be nonnegative");
    if (u == 0.0) return {0.0, 0.0};
    const double w2 = 8.0 * u * u;
    // With s = sqrt((1-iv)^2 + w2) the integrand (Re b - |b|^2)/(1 - Re b),
    // b = 1/s, reduces to (Re s - 1)/(|s|^2 - Re s). For w2 >= 8 the direct
    // evaluation is well conditioned. For small w2 both differences are
    // O(w2) against O(1) terms, so they are built from exact difference
    // identities instead of subtracting near-equal evaluations. (The
    // identity route in turn loses digits at large w2, where its partial
    // sums grow like w2^2 before cancelling.)
    auto f = [w2](double v) {
        if (w2 >= 8.0) {
            const std::complex<double> z(1.0, -v);
            const std::complex<double> s = std::sqrt(z * z + w2);
            return (s.real() - 1.0) / (std::norm(s) - s.real());
        }
        const double v2 = v * v;
        const double a = 1.0 + v2;
        const double t = 2.0 * (1.0 - v2) + w2;
        const double mod2 = std::sqrt((1.0 - v2 + w2) * (1.0 - v2 + w2) + 4.0 * v2);
        const double mod2_m1 = (v2 * (2.0 + v2) + w2 * t) / (mod2 + 1.0);
        const double res2_m1 = 0.5 * w2 * (t / (mod2 + a) + 1.0);
        const double re_s = std::sqrt(1.0 + res2_m1);
        const double res_m1 = res2_m1 / (re_s + 1.0);
        return res_m1 / (mod2_m1 - res_m1);
    };
    using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
    const double vc = std::sqrt(1.0 + w2);
    const double vbig = std::max(300.0, 30.0 * vc);
    // The branch-point remnant at v = vc has width O(1) in v; once vc
    // dwarfs that width, bisection from [0, vc] cannot reach it, so the
    // neighborhood gets its own brackets.
    double head = 0.0;
    double mid = 0.0;
    double e1 = 0.0;
    double e2 = 0.0;
    if (vc > 40.0) {
        double ea = 0.0, eb = 0.0, ec = 0.0, ed = 0.0;
        head = GK::integrate(f, 0.0, vc - 20.0, 14, 1e-10, &ea) +
               GK::integrate(f, vc - 20.0, vc, 14, 1e-10, &eb);
        mid = GK::integrate(f, vc, vc + 20.0, 14, 1e-10, &ec) +
              GK::integrate(f, vc + 20.0, vbig, 14, 1e-10, &ed);
        e1 = ea + eb;
        e2 = ec + ed;
    } else if (50.0 * u < 0.5 * vc) {
        // Small u: a Lorentzian peak of width 2u at v = 0 rides on a
        // w2/v^2 shoulder. Bracket the peak, then walk the shoulder in
        // decades so bisection never has to span disparate scales.
        double ep = 0.0;
        head = GK::integrate(f, 0.0, 50.0 * u, 14, 1e-10, &ep);
        e1 = ep;
        double lo = 50.0 * u;
        while (lo < vc) {
            const double hi = std::min(10.0 * lo, vc);
            double es = 0.0;
            head += GK::integrate(f, lo, hi, 14, 1e-10, &es);
            e1 += es;
            lo = hi;
        }
        mid = GK::integrate(f, vc, vbig, 14, 1e-10, &e2);
    } else {
        head = GK::integrate(f, 0.0, vc, 14, 1e-10, &e1);
        mid = GK::integrate(f, vc, vbig, 14, 1e-10, &e2);
    }
    const double tail = 0.5 * w2 / (3.0 * vbig * vbig * vbig);
    const double tail_err = tail * 10.0 * (1.0 + w2) / (vbig * vbig);
    const double scale = 2.0 / kPi;
    const QuadResult out{scale * (head + mid + tail), scale * (e1 + e2 + tail_err)};
    if (!(out.error <= 1e-6 * std::max(std::fabs(out.value), 1e-3)))
        throw std::runtime_error("bulk_scaling_ctilde: quadrature failed to converge at u=" +
                                 std::to_string(u));
    return out;
}

inline double bulk_scaling_ctilde(double u) { return bulk_scaling_ctilde_quad(u).value; }

// Equal-time density correlator C(q) = n(1-n) c~(u) with the
// lattice-aware argument u = 2 l0 sin(q/2), l0 = sqrt(2) J / (2 gamma).
inline double gaussian_Cq(double q, double gamma, double J, double density) {
    if (!(q > 0.0) || q > kPi * (1.0 + 1e-12))
        throw std::invalid_argument("gaussian_Cq: q must lie in (0, pi]");
    if (!(gamma > 0.0)) throw std::invalid_argument("gaussian_Cq: gamma must be positive");
    const double weight = density * (1.0 - density);
    if (weight == 0.0) return 0.0;
    const double l0 = std::sqrt(2.0) * J / (2.0 * gamma);
    const double u = 2.0 * l0 * std::sin(0.5 * q);
    return weight * bulk_scaling_ctilde(u);
}

// Real-space scaling function c(y) = (1/pi) int_0^inf du [1-c~(u)] cos(uy).
// The 1-c~ envelope decays only as ln u / u, so the cosine tail is
// summed lobe by lobe with acceleration instead of truncated.
inline QuadResult realspace_c_quad(double y) {
    if (!(y > 0.0)) throw std::invalid_argument("realspace_c: y must be positive");
    auto envelope = [](double u) { return u <= 0.0 ? 1.0 : 1.0 - bulk_scaling_ctilde(u); };
    using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
    const double first_zero = 0.5 * kPi / y;
    double e_lead = 0.0;
    const double lead = GK::integrate([&](double u) { return envelope(u) * std::cos(u * y); },
                                      0.0, first_zero, 14, 1e-11, &e_lead);
    const QuadResult lobes = detail::cosine_segments(envelope, y, 0, 48);
    const double scale = 1.0 / kPi;
    const QuadResult out{scale * (lead + lobes.value), scale * (e_lead + lobes.error)};
    if (!(out.error <= 1e-4 * std::fabs(out.value)))
        throw std::runtime_error("realspace_c: estimated error above 1e-4 of value");
    return out;
}

inline double realspace_c(double y) { return realspace_c_quad(y).value; }

// Second-cumulant scaling function
//   c2(y) = (2/pi) int_0^inf du/u^2 c~(u) (1 - cos uy).
// Split at u = 1: the head uses the half-angle form to avoid the u->0
// cancellation; the tail separates into a smooth 1/u^2 integral with a
// closed-form remainder and an oscillatory part summed over lobes.
inline QuadResult cumulant_scaling_c2_quad(double y) {
    if (!(y > 0.0)) throw std::invalid_argument("cumulant_scaling_c2: y must be positive");
    using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
    auto head_f = [y](double u) {
        if (u <= 0.0) return 0.0;
        const double s = std::sin(0.5 * u * y);
        return 2.0 * bulk_scaling_ctilde(u) * s * s / (u * u);
    };
    double e_head = 0.0;
    const double head = GK::integrate(head_f, 0.0, 1.0, 14, 1e-11, &e_head);

    auto env = [](double u) { return bulk_scaling_ctilde(u) / (u * u); };
    const double ubig = 3000.0;
    double e_smooth = 0.0;
    const double smooth = GK::integrate(env, 1.0, ubig, 14, 1e-11, &e_smooth);
    // int_V^inf c~/u^2 = 1/V - int_V^inf (1-c~)/u^2 with the ln u / u tail
    const double lnv = std::log(ubig);
    const double corr = (0.5 * lnv + 0.25) / (2.0 * std::sqrt(2.0) * kPi * ubig * ubig);
    const double smooth_tail = 1.0 / ubig - corr;
    const double smooth_tail_err = 0.5 * corr;

    int k0 = static_cast<int>(std::ceil(y / kPi - 0.5));
    if (k0 < 0) k0 = 0;
    while ((0.5 * kPi + k0 * kPi) / y <= 1.0) ++k0;
    const double first_node = (0.5 * kPi + k0 * kPi) / y;
    double e_lead = 0.0;
    const double osc_lead = GK::integrate([&](double u) { return env(u) * std::cos(u * y); },
                                          1.0, first_node, 10, 1e-12, &e_lead);
    const QuadResult osc_tail = detail::cosine_segments(env, y, k0, 48);

    const double scale = 2.0 / kPi;
    const QuadResult out{
        scale * (head + smooth + smooth_tail - osc_lead - osc_tail.value),
        scale * (e_head + e_smooth + smooth_tail_err + e_lead + osc_tail.error)};
    if (!(out.error <= 1e-5 * std::fabs(out.value)))
        throw std::runtime_error("cumulant_scaling_c2: estimated error above 1e-5 of value");
    return out;
}

inline double cumulant_scaling_c2(double y) { return cumulant_scaling_c2_quad(y).value; }

namespace detail {

template <class PointFn>
TheoryCurve tabulate(const std::vector<double>& grid, PointFn&& point) {
    TheoryCurve curve;
    curve.abscissae = grid;
    curve.values.reserve(grid.size());
    curve.quad_error.reserve(grid.size());
    for (double a : grid) {
        const QuadResult r = point(a);
        curve.values.push_back(r.value);
        curve.quad_error.push_back(r.error);
    }
    validate_curve(curve);
    return curve;
}

}  // namespace detail

inline TheoryCurve tabulate_ctilde(const std::vector<double>& u_grid) {
    return detail::tabulate(u_grid, [](double u) { return bulk_scaling_ctilde_quad(u); });
}

inline TheoryCurve tabulate_realspace_c(const std::vector<double>& y_grid) {
    return detail::tabulate(y_grid, [](double y) { return realspace_c_quad(y); });
}

inline TheoryCurve tabulate_cumulant_c2(const std::vector<double>& y_grid) {
    return detail::tabulate(y_grid, [](double y) { return cumulant_scaling_c2_quad(y); });
}

}  // namespace monfermi::theory
