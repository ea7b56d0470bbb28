// The quantum Hoeffding bound H(r) = sup_{0 <= s < 1} P(r,s) with
// P(r,s) = (-r s - ln C_s)/(1 - s), divergence detection at s -> 1, the
// companion lower bounds H_M / H_Y (same sup over the Minkowski / Young
// overlap bounds), the pure-null fidelity bound H_F, and multi-copy
// asymptotics.
#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>

#include "gqhb/overlap.hpp"
#include "gqhb/symplectic.hpp"

namespace gqhb {

struct optimizer_options {
    int grid_points = 201;      // uniform grid over [eps_s, 1 - eps_s]
    double eps_s = 1e-9;        // boundary inset; boundary probe error ~ r * eps_s
    double p_cap = 1e4;         // divergence declared above this after monotone growth
    double refine_tol = 1e-10;  // golden-section bracket width target in s
};

enum class method {
    gaussian_numeric,   // grid + golden-section over the Gaussian ln C_s
    pure_fidelity,      // both states pure: closed form from the fidelity
    analytic_catalog,   // closed form for a named state family
};

inline const char* method_name(method m) {
    switch (m) {
        case method::gaussian_numeric: return "gaussian-numeric";
        case method::pure_fidelity: return "pure-fidelity";
        default: return "analytic-catalog";
    }
}

struct companion_report {
    double h_m = 0.0;
    bool h_m_infinite = false;
    double h_y = 0.0;
    bool h_y_infinite = false;
    std::optional<double> h_f;  // engaged only when rho0 is pure
    bool h_f_infinite = false;
};

struct hoeffding_result {
    double r = 0.0;
    double value = 0.0;            // meaningful only when !infinite
    bool infinite = false;
    std::optional<double> s_star;  // absent when infinite or closed-form
    bool boundary = false;         // sup attained at (or reported as) a domain edge
    method used = method::gaussian_numeric;
    std::optional<companion_report> companion;
};

// P(r,s) = (-r s - ln C_s) / (1 - s)
inline double objective(double r, double s, double log_c_s) {
    if (!(s > 0.0) || !(s < 1.0))
        throw domain_error("objective: s must lie strictly inside (0,1)");
    return (-r * s - log_c_s) / (1.0 - s);
}

namespace detail {

struct maximize_outcome {
    double value = 0.0;
    bool infinite = false;
    double s_star = 0.0;
    bool boundary = false;
};

// Maximize P(r, s) over (0, 1) for an arbitrary ln-overlap function.
//   1. divergence probes at s = 1 - delta, delta = 1e-2 .. 1e-8: +inf is
//      declared iff the values strictly increase and the last exceeds p_cap
//      (matches the 1/(s-1) pole structure of divergent cases);
//   2. uniform grid over [eps_s, 1 - eps_s], ties toward smaller s;
//   3. golden-section refinement around the best grid point;
//   4. boundary probes at both insets (suprema are often attained at s -> 0
//      or s -> 1 and are reported with the boundary flag).
// Deterministic for fixed options regardless of evaluation order.
inline maximize_outcome maximize(double r, const std::function<double(double)>& log_c_fn,
                                 const optimizer_options& opts) {
    const auto p = [&](double s) { return (-r * s - log_c_fn(s)) / (1.0 - s); };

    {   // divergence test first: a pole at s -> 1 dominates everything else
        double prev = -std::numeric_limits<double>::infinity();
        bool increasing = true;
        double last = 0.0;
        for (double delta = 1e-2; delta >= 0.5e-8; delta *= 0.1) {
            last = p(1.0 - delta);
            if (!(last > prev)) {
                increasing = false;
                break;
            }
            prev = last;
        }
        if (increasing && last > opts.p_cap) return {0.0, true, 0.0, false};
    }

    const double lo = opts.eps_s, hi = 1.0 - opts.eps_s;
    const int g = opts.grid_points;
    double best_s = lo, best_v = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < g; ++j) {
        const double s = lo + (hi - lo) * static_cast<double>(j) / (g - 1);
        const double v = p(s);
        if (v > best_v) {  // strict: ties keep the smaller s
            best_v = v;
            best_s = s;
        }
    }

    // golden-section around the best grid point
    const double step = (hi - lo) / (g - 1);
    double a = std::max(lo, best_s - step), b = std::min(hi, best_s + step);
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
    double f1 = p(x1), f2 = p(x2);
    while (b - a > opts.refine_tol) {
        if (f1 >= f2) {  // keep the left interval on ties: smaller s wins
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = p(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = p(x2);
        }
    }
    const double s_ref = 0.5 * (a + b);
    const double v_ref = p(s_ref);
    if (v_ref > best_v) {
        best_v = v_ref;
        best_s = s_ref;
    }

    maximize_outcome out{best_v, false, best_s, false};
    for (double s_edge : {lo, hi}) {
        const double v_edge = p(s_edge);
        if (v_edge > out.value) {
            out.value = v_edge;
            out.s_star = s_edge;
        }
    }
    if (out.s_star <= lo + step || out.s_star >= hi - step) out.boundary = true;
    return out;
}

} // namespace detail

// Closed form for a pure null state with fidelity F to the alternative:
// H_F = ln(1/F) when r >= ln(1/F), otherwise +inf. P(r,s) is monotone in s,
// so the finite supremum sits at the s = 0 edge and no s_star is reported.
inline hoeffding_result fidelity_hoeffding(double f, double r) {
    if (!(f > 0.0) || !(f <= 1.0))
        throw domain_error("fidelity_hoeffding: F must lie in (0,1]");
    if (!(r > 0.0)) throw domain_error("fidelity_hoeffding: r must be positive");
    hoeffding_result res;
    res.r = r;
    res.used = method::pure_fidelity;
    res.boundary = true;
    const double sigma = -std::log(f);
    if (r >= sigma) {
        res.value = sigma;
    } else {
        res.infinite = true;
    }
    return res;
}

// H(r) for two Gaussian states. Both pure: dispatches to the fidelity closed
// form. Otherwise: numeric sup of P(r,s) over the Gaussian ln C_s, floored at
// 0 (the s = 0 endpoint of the sup domain always contributes
// P(r,0) = -ln Tr(P_0 rho1) >= 0, which the open-interval grid can only
// undershoot).
inline hoeffding_result hoeffding_bound(const gaussian_state& rho0,
                                        const gaussian_state& rho1, double r,
                                        const optimizer_options& opts = {}) {
    if (!(r > 0.0)) throw domain_error("hoeffding_bound: r must be positive");
    if (rho0.n != rho1.n)
        throw dimension_mismatch("hoeffding_bound: states have different mode counts");
    const detail::overlap_side a = detail::prepare_side(rho0, "hoeffding_bound");
    const detail::overlap_side b = detail::prepare_side(rho1, "hoeffding_bound");

    const auto is_pure = [](const detail::overlap_side& side) {
        for (double nu : side.spectrum)
            if (nu != 1.0) return false;
        return true;
    };
    if (is_pure(a) && is_pure(b))
        return fidelity_hoeffding(gaussian_fidelity_pure(rho0, rho1), r);

    const Eigen::VectorXd d = rho0.mean - rho1.mean;
    const auto log_c = [&](double s) { return detail::log_overlap_prepared(a, b, d, s); };
    const detail::maximize_outcome m = detail::maximize(r, log_c, opts);

    hoeffding_result res;
    res.r = r;
    res.used = method::gaussian_numeric;
    if (m.infinite) {
        res.infinite = true;
        return res;
    }
    if (m.value < 0.0) {  // floor: the true sup includes s = 0 with P >= 0
        res.value = 0.0;
        res.s_star = opts.eps_s;
        res.boundary = true;
    } else {
        res.value = m.value;
        res.s_star = m.s_star;
        res.boundary = m.boundary;
    }
    return res;
}

// The spectra-only companions H_M and H_Y (same sup with ln M_s / ln Y_s in
// place of ln C_s, not floored: they are lower bounds on H and genuinely go
// negative, e.g. the Young sup for identical mixed states), plus H_F when the
// null state is pure.
inline companion_report companion_bounds(const gaussian_state& rho0,
                                         const gaussian_state& rho1, double r,
                                         const optimizer_options& opts = {}) {
    if (!(r > 0.0)) throw domain_error("companion_bounds: r must be positive");
    if (rho0.n != rho1.n)
        throw dimension_mismatch("companion_bounds: states have different mode counts");
    const detail::overlap_side a = detail::prepare_side(rho0, "companion_bounds");
    const detail::overlap_side b = detail::prepare_side(rho1, "companion_bounds");

    companion_report rep;
    const auto run = [&](const std::function<double(double)>& fn, double& value,
                         bool& infinite) {
        const detail::maximize_outcome m = detail::maximize(r, fn, opts);
        infinite = m.infinite;
        value = m.infinite ? 0.0 : m.value;
    };
    run([&](double s) { return log_minkowski_bound(a.spectrum, b.spectrum, s); },
        rep.h_m, rep.h_m_infinite);
    run([&](double s) { return log_young_bound(a.spectrum, b.spectrum, s); },
        rep.h_y, rep.h_y_infinite);

    bool pure0 = true;
    for (double nu : a.spectrum)
        if (nu != 1.0) pure0 = false;
    if (pure0) {
        const hoeffding_result hf = fidelity_hoeffding(gaussian_fidelity_pure(rho0, rho1), r);
        rep.h_f = hf.infinite ? 0.0 : hf.value;
        rep.h_f_infinite = hf.infinite;
    }
    return rep;
}

struct asymptotics {
    double beta_m = 0.0;       // false-negative envelope 0.5 e^{-H M} (0 when H infinite)
    double alpha_bound = 0.0;  // false-positive envelope 0.5 e^{-r M}
};

inline asymptotics asymptotic_rates(const hoeffding_result& h, long m) {
    if (m < 1) throw domain_error("asymptotic_rates: M must be >= 1");
    asymptotics out;
    out.beta_m = h.infinite ? 0.0 : 0.5 * std::exp(-h.value * static_cast<double>(m));
    out.alpha_bound = 0.5 * std::exp(-h.r * static_cast<double>(m));
    return out;
}

} // namespace gqhb
