// The s-overlap C_s = Tr(rho0^s rho1^{1-s}) of two Gaussian states from their
// statistical moments, the Minkowski and Young upper bounds, and the fidelity
// between a pure Gaussian state and an arbitrary one.
//
// Everything is evaluated in the log domain. The building block is
//   log((x+1)^a - (x-1)^a) = a log(x+1) + log(-expm1(a (log(x-1) - log(x+1))))
// which stays accurate for x -> 1 (where (x-1)^a underflows gracefully to 0)
// and for a -> 0 (where the difference vanishes linearly in a).
#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "gqhb/errors.hpp"
#include "gqhb/symplectic.hpp"

namespace gqhb {

struct overlap_report {
    double s = 0.0;
    double log_c_s = 0.0;
    double c_s = 0.0;
    double log_m_s = 0.0;
    double log_y_s = 0.0;
    double pi_s = 0.0;
    Eigen::MatrixXd sigma_s;
};

namespace detail {

// log((x+1)^a - (x-1)^a) for a > 0, x >= 1. At x = 1 the second term is 0 and
// the expression reduces to a log 2 (expm1(-inf) = -1 handles it exactly).
inline double log_diff_pow(double a, double x) {
    const double t = a * (std::log(x - 1.0) - std::log(x + 1.0));
    return a * std::log(x + 1.0) + std::log(-std::expm1(t));
}

// log((x+1)^a + (x-1)^a), same regime.
inline double log_sum_pow(double a, double x) {
    const double t = a * (std::log(x - 1.0) - std::log(x + 1.0));
    return a * std::log(x + 1.0) + std::log1p(std::exp(t));
}

// log G_s(x) with G_s(x) = 2^s / ((x+1)^s - (x-1)^s).
inline double log_g(double s, double x) {
    return s * std::numbers::ln2 - log_diff_pow(s, x);
}

// Lambda_s(x) = ((x+1)^s + (x-1)^s) / ((x+1)^s - (x-1)^s).
inline double lambda_impl(double s, double x) {
    if (x == 1.0) return 1.0;
    const double t = s * (std::log(x - 1.0) - std::log(x + 1.0));
    return (1.0 + std::exp(t)) / (-std::expm1(t));
}

inline void require_s_open(double s, const char* who) {
    if (!(s > 0.0) || !(s < 1.0))
        throw domain_error(std::string(who) + ": s must lie strictly inside (0,1)");
}

inline void require_spectra(const std::vector<double>& a, const std::vector<double>& b,
                            const char* who) {
    if (a.size() != b.size() || a.empty())
        throw domain_error(std::string(who) + ": spectra must be non-empty and equal length");
    for (const auto& v : {a, b})
        for (double nu : v)
            if (!(nu >= 1.0))
                throw domain_error(std::string(who) + ": spectrum entries must be >= 1");
}

} // namespace detail

// G_s(x) = 2^s / ((x+1)^s - (x-1)^s), for 0 < s <= 1, x >= 1.
// Diverges as s -> 0+ for x > 1 (the denominator vanishes); tiny s is allowed
// and returns the correspondingly large value.
inline double g_func(double s, double x) {
    if (!(s > 0.0) || !(s <= 1.0)) throw domain_error("g_func: s must lie in (0,1]");
    if (!(x >= 1.0)) throw domain_error("g_func: x must be >= 1");
    if (x == 1.0) return 1.0;
    return std::exp(detail::log_g(s, x));
}

// Lambda_s(x) = ((x+1)^s + (x-1)^s) / ((x+1)^s - (x-1)^s), same domain; >= 1.
inline double lambda_func(double s, double x) {
    if (!(s > 0.0) || !(s <= 1.0)) throw domain_error("lambda_func: s must lie in (0,1]");
    if (!(x >= 1.0)) throw domain_error("lambda_func: x must be >= 1");
    return detail::lambda_impl(s, x);
}

// ln M_s from the two symplectic spectra:
//   M_s = 4^n [prod_k Psi_s(nu0_k, nu1_k) + prod_k Psi_{1-s}(nu1_k, nu0_k)]^{-n}
//   Psi_s(x, y) = {[(x+1)^s + (x-1)^s] [(y+1)^{1-s} - (y-1)^{1-s}]}^{1/n}
// The 1/n exponent inside Psi cancels against the outer -n; both are kept as
// written (log-domain), with a regression test pinning the cancellation.
inline double log_minkowski_bound(const std::vector<double>& spectrum0,
                                  const std::vector<double>& spectrum1, double s) {
    detail::require_s_open(s, "log_minkowski_bound");
    detail::require_spectra(spectrum0, spectrum1, "log_minkowski_bound");
    const double n = static_cast<double>(spectrum0.size());
    double log_a = 0.0, log_b = 0.0;  // log prod Psi, accumulated without the 1/n
    for (std::size_t k = 0; k < spectrum0.size(); ++k) {
        const double x = spectrum0[k], y = spectrum1[k];
        log_a += detail::log_sum_pow(s, x) + detail::log_diff_pow(1.0 - s, y);
        log_b += detail::log_sum_pow(1.0 - s, y) + detail::log_diff_pow(s, x);
    }
    log_a /= n;
    log_b /= n;
    const double hi = std::max(log_a, log_b);
    const double lse = hi + std::log(std::exp(log_a - hi) + std::exp(log_b - hi));
    return n * (2.0 * std::numbers::ln2 - lse);
}

// ln Y_s with Y_s = 2^n prod_k Gamma_s(nu0_k) Gamma_{1-s}(nu1_k),
// Gamma_s(x) = [(x+1)^{2s} - (x-1)^{2s}]^{-1/2}.
inline double log_young_bound(const std::vector<double>& spectrum0,
                              const std::vector<double>& spectrum1, double s) {
    detail::require_s_open(s, "log_young_bound");
    detail::require_spectra(spectrum0, spectrum1, "log_young_bound");
    double acc = static_cast<double>(spectrum0.size()) * std::numbers::ln2;
    for (std::size_t k = 0; k < spectrum0.size(); ++k) {
        acc -= 0.5 * detail::log_diff_pow(2.0 * s, spectrum0[k]);
        acc -= 0.5 * detail::log_diff_pow(2.0 * (1.0 - s), spectrum1[k]);
    }
    return acc;
}

namespace detail {

// Williamson data of one state prepared for repeated s evaluation.
struct overlap_side {
    std::vector<double> spectrum;  // sanitized (near-1 snapped to 1)
    Eigen::MatrixXd s_factor;
};

inline overlap_side prepare_side(const gaussian_state& st, const char* who) {
    require_physical(st, who);
    williamson_decomposition wd = williamson(st.cov);
    sanitize_spectrum(wd.spectrum, who);
    return {std::move(wd.spectrum), std::move(wd.s)};
}

// Sigma_s = S0 diag(Lambda_s(nu0_k) I2) S0^T + S1 diag(Lambda_{1-s}(nu1_k) I2) S1^T
inline Eigen::MatrixXd assemble_sigma(const overlap_side& a, const overlap_side& b,
                                      double s) {
    const Eigen::Index n = static_cast<Eigen::Index>(a.spectrum.size());
    Eigen::VectorXd da(2 * n), db(2 * n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double la = lambda_impl(s, a.spectrum[k]);
        const double lb = lambda_impl(1.0 - s, b.spectrum[k]);
        da(2 * k) = da(2 * k + 1) = la;
        db(2 * k) = db(2 * k + 1) = lb;
    }
    return a.s_factor * da.asDiagonal() * a.s_factor.transpose() +
           b.s_factor * db.asDiagonal() * b.s_factor.transpose();
}

// ln Pi_s = n ln 2 + sum_k [ln G_s(nu0_k) + ln G_{1-s}(nu1_k)]
inline double log_pi(const overlap_side& a, const overlap_side& b, double s) {
    double acc = static_cast<double>(a.spectrum.size()) * std::numbers::ln2;
    for (std::size_t k = 0; k < a.spectrum.size(); ++k) {
        acc += (a.spectrum[k] == 1.0 ? 0.0 : log_g(s, a.spectrum[k]));
        acc += (b.spectrum[k] == 1.0 ? 0.0 : log_g(1.0 - s, b.spectrum[k]));
    }
    return acc;
}

// ln C_s given prepared sides and the mean difference d = mean0 - mean1.
inline double log_overlap_prepared(const overlap_side& a, const overlap_side& b,
                                   const Eigen::VectorXd& d, double s,
                                   Eigen::MatrixXd* sigma_out = nullptr,
                                   double* log_pi_out = nullptr) {
    const double lpi = log_pi(a, b, s);
    Eigen::MatrixXd sigma = assemble_sigma(a, b, s);
    Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    if (llt.info() != Eigen::Success)
        throw factorization_failure("log_overlap: Sigma_s is not positive definite");
    double log_det = 0.0;
    for (Eigen::Index i = 0; i < sigma.rows(); ++i)
        log_det += 2.0 * std::log(llt.matrixL()(i, i));
    double quad = 0.0;
    if (!d.isZero(0.0))  // exactly zero mean difference: quadratic term skipped
        quad = d.dot(llt.solve(d));
    if (log_pi_out) *log_pi_out = lpi;
    if (sigma_out) *sigma_out = std::move(sigma);
    return lpi - 0.5 * (log_det + quad);
}

} // namespace detail

// Full report at one s: ln C_s, C_s, the two spectra-only upper bounds, and
// the Pi_s / Sigma_s ingredients.
inline overlap_report log_overlap(const gaussian_state& rho0, const gaussian_state& rho1,
                                  double s) {
    detail::require_s_open(s, "log_overlap");
    if (rho0.n != rho1.n)
        throw dimension_mismatch("log_overlap: states have different mode counts");
    const detail::overlap_side a = detail::prepare_side(rho0, "log_overlap");
    const detail::overlap_side b = detail::prepare_side(rho1, "log_overlap");
    const Eigen::VectorXd d = rho0.mean - rho1.mean;

    overlap_report rep;
    rep.s = s;
    double lpi = 0.0;
    rep.log_c_s = detail::log_overlap_prepared(a, b, d, s, &rep.sigma_s, &lpi);
    rep.c_s = std::exp(rep.log_c_s);
    rep.pi_s = std::exp(lpi);
    rep.log_m_s = log_minkowski_bound(a.spectrum, b.spectrum, s);
    rep.log_y_s = log_young_bound(a.spectrum, b.spectrum, s);
    return rep;
}

// Fidelity between a pure Gaussian state and an arbitrary Gaussian state:
//   F = 2^n / sqrt(det L) * exp(-d^T L^{-1} d / 2),  L = V0 + V1.
inline double gaussian_fidelity_pure(const gaussian_state& rho0, const gaussian_state& rho1) {
    detail::require_physical(rho0, "gaussian_fidelity_pure");
    detail::require_physical(rho1, "gaussian_fidelity_pure");
    if (rho0.n != rho1.n)
        throw dimension_mismatch("gaussian_fidelity_pure: states have different mode counts");
    {
        std::vector<double> spec = symplectic_spectrum(rho0.cov);
        detail::sanitize_spectrum(spec, "gaussian_fidelity_pure");
        for (double nu : spec)
            if (std::abs(nu - 1.0) > tol_pure)
                throw not_pure("gaussian_fidelity_pure: rho0 is not pure");
    }
    const Eigen::MatrixXd l = rho0.cov + rho1.cov;
    Eigen::LLT<Eigen::MatrixXd> llt(l);
    if (llt.info() != Eigen::Success)
        throw factorization_failure("gaussian_fidelity_pure: V0 + V1 not positive definite");
    double log_det = 0.0;
    for (Eigen::Index i = 0; i < l.rows(); ++i)
        log_det += 2.0 * std::log(llt.matrixL()(i, i));
    const Eigen::VectorXd d = rho0.mean - rho1.mean;
    double quad = 0.0;
    if (!d.isZero(0.0)) quad = d.dot(llt.solve(d));
    const double log_f =
        static_cast<double>(rho0.n) * std::numbers::ln2 - 0.5 * log_det - 0.5 * quad;
    return std::min(std::exp(log_f), 1.0);  // roundoff guard: F = 1 iff identical
}

} // namespace gqhb
