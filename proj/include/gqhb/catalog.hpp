// Named Gaussian state families - coherent, thermal, EPR, symmetric
// squeezed-thermal (ST) - with checked constructors, their analytic
// Williamson data, and closed-form Hoeffding results where they exist.
//
// Coherent amplitude convention: mean = (2 Re alpha, 2 Im alpha), chosen so
// that |alpha0 - alpha1|^2 = |d|^2 / 4 under the vacuum-CM = identity scaling.
// This file is the single source of that convention.
#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <variant>

#include <Eigen/Dense>

#include "gqhb/errors.hpp"
#include "gqhb/hoeffding.hpp"
#include "gqhb/overlap.hpp"
#include "gqhb/symplectic.hpp"

namespace gqhb {

struct coherent_spec {
    double re = 0.0;
    double im = 0.0;
};

struct thermal_spec {
    double nu = 1.0;  // quadrature variance, nu = 2 nbar + 1 >= 1
};

struct epr_spec {
    double mu = 1.0;  // diagonal variance; off-diagonal sqrt(mu^2 - 1) Z
};

struct squeezed_thermal_spec {
    double mu = 1.0;  // diagonal variance
    double c = 0.0;   // correlation, 0 <= c <= sqrt(mu^2 - 1) for physical states
};

struct raw_spec {
    Eigen::VectorXd mean;
    Eigen::MatrixXd cov;
};

using state_spec =
    std::variant<coherent_spec, thermal_spec, epr_spec, squeezed_thermal_spec, raw_spec>;

namespace detail {

inline Eigen::MatrixXd st_cov(double mu, double c) {
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(4, 4);
    v(0, 0) = v(1, 1) = v(2, 2) = v(3, 3) = mu;
    v(0, 2) = v(2, 0) = c;    // q-q correlation
    v(1, 3) = v(3, 1) = -c;   // p-p anticorrelation (c Z blocks)
    return v;
}

} // namespace detail

// Moments without physicality checking (used by the CLI validator, which must
// be able to inspect unphysical inputs). Negative ST correlations map to |c|.
inline gaussian_state moments(const state_spec& spec) {
    return std::visit(
        [](const auto& sp) -> gaussian_state {
            using t = std::decay_t<decltype(sp)>;
            if constexpr (std::is_same_v<t, coherent_spec>) {
                gaussian_state st{1, Eigen::VectorXd(2), Eigen::MatrixXd::Identity(2, 2)};
                st.mean << 2.0 * sp.re, 2.0 * sp.im;
                return st;
            } else if constexpr (std::is_same_v<t, thermal_spec>) {
                return {1, Eigen::VectorXd::Zero(2), sp.nu * Eigen::MatrixXd::Identity(2, 2)};
            } else if constexpr (std::is_same_v<t, epr_spec>) {
                const double c = std::sqrt(std::max(sp.mu * sp.mu - 1.0, 0.0));
                return {2, Eigen::VectorXd::Zero(4), detail::st_cov(sp.mu, c)};
            } else if constexpr (std::is_same_v<t, squeezed_thermal_spec>) {
                return {2, Eigen::VectorXd::Zero(4), detail::st_cov(sp.mu, std::abs(sp.c))};
            } else {
                gaussian_state st;
                st.mean = sp.mean;
                st.cov = sp.cov;
                st.n = sp.mean.size() / 2;
                if (st.n < 1 || sp.mean.size() % 2 != 0)
                    throw invalid_spec("raw state: mean length must be a positive even number");
                detail::require_state_shape(st, "raw state");
                return st;
            }
        },
        spec);
}

// Checked constructor: enforces the family parameter bounds (and full
// physicality for raw moments) before handing out a state.
inline gaussian_state build(const state_spec& spec) {
    if (const auto* th = std::get_if<thermal_spec>(&spec)) {
        if (!(th->nu >= 1.0))
            throw invalid_spec("thermal state: nu must be >= 1, got " + std::to_string(th->nu));
    } else if (const auto* ep = std::get_if<epr_spec>(&spec)) {
        if (!(ep->mu >= 1.0))
            throw invalid_spec("epr state: mu must be >= 1, got " + std::to_string(ep->mu));
    } else if (const auto* st = std::get_if<squeezed_thermal_spec>(&spec)) {
        const double c = std::abs(st->c);
        if (!(st->mu >= 1.0))
            throw invalid_spec("st state: mu must be >= 1, got " + std::to_string(st->mu));
        if (c > st->mu)
            throw invalid_spec("st state: correlation |c| must not exceed mu");
        if (st->mu * st->mu - c * c < 1.0 - tol_phys)
            throw invalid_spec(
                "st state: unphysical correlations, symplectic eigenvalue sqrt(mu^2 - c^2) < 1");
    } else if (std::holds_alternative<raw_spec>(spec)) {
        gaussian_state state = moments(spec);
        const validity_report rep = validate_state(state);
        if (!rep.symmetric) throw non_symmetric("raw state: cov is not symmetric");
        if (!rep.physical)
            throw non_physical("raw state: some symplectic eigenvalue is below 1");
        return state;
    }
    return moments(spec);
}

struct st_symplectic {
    double nu = 1.0;    // doubly degenerate symplectic eigenvalue sqrt(mu^2 - c^2)
    Eigen::MatrixXd s;  // 4x4 symplectic factor with V_ST = S (nu I4) S^T
};

// Analytic Williamson data of a symmetric ST state: nu = sqrt(mu^2 - c^2) and
// S built from omega_pm = sqrt((mu +- nu) / (2 nu)) in 2x2 blocks
// [[w+ I, w- Z], [w- Z, w+ I]].
inline st_symplectic st_symplectic_data(double mu, double c) {
    c = std::abs(c);
    if (!(mu >= 1.0)) throw invalid_spec("st_symplectic_data: mu must be >= 1");
    const double nu_sq = mu * mu - c * c;
    if (nu_sq < 1.0 - tol_phys)
        throw invalid_spec("st_symplectic_data: unphysical (mu, c), sqrt(mu^2 - c^2) < 1");
    st_symplectic out;
    out.nu = std::sqrt(std::max(nu_sq, 1.0));
    const double wp = std::sqrt((mu + out.nu) / (2.0 * out.nu));
    const double wm = std::sqrt(std::max(mu - out.nu, 0.0) / (2.0 * out.nu));
    out.s = Eigen::MatrixXd::Zero(4, 4);
    out.s(0, 0) = out.s(1, 1) = out.s(2, 2) = out.s(3, 3) = wp;
    out.s(0, 2) = out.s(2, 0) = wm;
    out.s(1, 3) = out.s(3, 1) = -wm;
    return out;
}

struct st_ingredients {
    double pi_s = 0.0;
    Eigen::MatrixXd sigma_s;
};

// Simplified overlap ingredients for two symmetric ST states (doubly
// degenerate spectra): Pi_s = 4 G_s^2(nu0) G_{1-s}^2(nu1) and
// Sigma_s = Lambda_s(nu0) S0 S0^T + Lambda_{1-s}(nu1) S1 S1^T. Matches the
// generic moment pipeline; kept as an independent cross-check path.
inline st_ingredients st_overlap_ingredients(double mu0, double c0, double mu1, double c1,
                                             double s) {
    detail::require_s_open(s, "st_overlap_ingredients");
    const st_symplectic a = st_symplectic_data(mu0, c0);
    const st_symplectic b = st_symplectic_data(mu1, c1);
    st_ingredients out;
    const double lg0 = (a.nu == 1.0) ? 0.0 : detail::log_g(s, a.nu);
    const double lg1 = (b.nu == 1.0) ? 0.0 : detail::log_g(1.0 - s, b.nu);
    out.pi_s = std::exp(2.0 * std::numbers::ln2 + 2.0 * lg0 + 2.0 * lg1);
    out.sigma_s = detail::lambda_impl(s, a.nu) * (a.s * a.s.transpose()) +
                  detail::lambda_impl(1.0 - s, b.nu) * (b.s * b.s.transpose());
    return out;
}

// Closed-form Hoeffding results for the supported catalog pairs:
//   - coherent vs coherent: sigma = |a0 - a1|^2, H = sigma iff r >= sigma else inf
//   - vacuum null vs thermal: H = ln((nu+1)/2) for every r > 0
//   - thermal null vs vacuum: H = 0 iff r >= ln((nu+1)/2) else inf
//   - EPR vs EPR: fidelity 2 / (1 + mu0 mu1 - sqrt((mu0^2-1)(mu1^2-1)))
// Anything else has no closed form here.
inline hoeffding_result analytic_qhb(const state_spec& null_spec, const state_spec& alt_spec,
                                     double r) {
    if (!(r > 0.0)) throw domain_error("analytic_qhb: r must be positive");

    if (const auto* a0 = std::get_if<coherent_spec>(&null_spec)) {
        if (const auto* a1 = std::get_if<coherent_spec>(&alt_spec)) {
            const double dre = a0->re - a1->re, dim = a0->im - a1->im;
            const double sigma = dre * dre + dim * dim;
            hoeffding_result res = fidelity_hoeffding(std::exp(-sigma), r);
            res.used = method::analytic_catalog;
            return res;
        }
    }
    if (const auto* t0 = std::get_if<thermal_spec>(&null_spec)) {
        if (const auto* t1 = std::get_if<thermal_spec>(&alt_spec)) {
            build(null_spec);  // parameter validation
            build(alt_spec);
            hoeffding_result res;
            res.r = r;
            res.used = method::analytic_catalog;
            res.boundary = true;
            if (t0->nu <= 1.0 + tol_pure) {
                res.value = std::log((t1->nu + 1.0) / 2.0);  // vacuum null: always finite
                return res;
            }
            if (t1->nu <= 1.0 + tol_pure) {
                const double threshold = std::log((t0->nu + 1.0) / 2.0);
                if (r >= threshold) {
                    res.value = 0.0;
                } else {
                    res.infinite = true;
                }
                return res;
            }
            throw unsupported_pair("analytic_qhb: thermal pair with both nu > 1 has no closed form");
        }
    }
    if (const auto* e0 = std::get_if<epr_spec>(&null_spec)) {
        if (const auto* e1 = std::get_if<epr_spec>(&alt_spec)) {
            build(null_spec);
            build(alt_spec);
            const double m0 = e0->mu, m1 = e1->mu;
            const double f =
                2.0 / (1.0 + m0 * m1 - std::sqrt((m0 * m0 - 1.0) * (m1 * m1 - 1.0)));
            hoeffding_result res = fidelity_hoeffding(f, r);
            res.used = method::analytic_catalog;
            return res;
        }
    }
    throw unsupported_pair("analytic_qhb: no closed form for this state pair");
}

} // namespace gqhb
