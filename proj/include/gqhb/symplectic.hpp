// Gaussian-state data model and symplectic linear algebra: validity checks,
// symplectic spectra, Williamson decomposition.
//
// Conventions (used consistently across the library):
//   - quadrature ordering q1, p1, ..., qn, pn
//   - vacuum covariance matrix = identity (so physical means nu_k >= 1)
//   - all arithmetic in 64-bit floating point
#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gqhb/errors.hpp"

namespace gqhb {

// symmetry tolerance, relative to the largest |entry|
inline constexpr double tol_sym = 1e-12;
// physicality tolerance on symplectic eigenvalues (nu >= 1 - tol_phys)
inline constexpr double tol_phys = 1e-9;
// purity tolerance: pure when max_k |nu_k - 1| <= tol_pure
inline constexpr double tol_pure = 1e-9;
// relative Frobenius residual allowed for the Williamson factors
inline constexpr double tol_williamson = 1e-8;

struct gaussian_state {
    Eigen::Index n = 0;    // mode count
    Eigen::VectorXd mean;  // length 2n
    Eigen::MatrixXd cov;   // 2n x 2n
};

struct validity_report {
    bool symmetric = false;
    bool physical = false;
    bool pure = false;
    std::vector<double> spectrum;  // empty when undefined (cov not positive definite)
};

struct williamson_decomposition {
    std::vector<double> spectrum;  // nu_k sorted descending
    Eigen::MatrixXd s;             // symplectic factor, V = S W S^T
    Eigen::MatrixXd w;             // diag(nu_1, nu_1, ..., nu_n, nu_n)
};

// Omega: block-diagonal direct sum of n copies of [[0,1],[-1,0]].
inline Eigen::MatrixXd symplectic_form(Eigen::Index n) {
    if (n < 1) throw dimension_mismatch("symplectic_form: mode count must be positive");
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (Eigen::Index k = 0; k < n; ++k) {
        omega(2 * k, 2 * k + 1) = 1.0;
        omega(2 * k + 1, 2 * k) = -1.0;
    }
    return omega;
}

namespace detail {

inline bool is_symmetric(const Eigen::MatrixXd& m) {
    const double scale = std::max(m.cwiseAbs().maxCoeff(), 1.0);
    return (m - m.transpose()).cwiseAbs().maxCoeff() <= tol_sym * scale;
}

inline void require_state_shape(const gaussian_state& st, const char* who) {
    if (st.n < 1)
        throw dimension_mismatch(std::string(who) + ": mode count must be positive");
    const Eigen::Index d = 2 * st.n;
    if (st.mean.size() != d)
        throw dimension_mismatch(std::string(who) + ": mean length " +
                                 std::to_string(st.mean.size()) + " does not match 2n = " +
                                 std::to_string(d));
    if (st.cov.rows() != d || st.cov.cols() != d)
        throw dimension_mismatch(std::string(who) + ": cov is " +
                                 std::to_string(st.cov.rows()) + "x" +
                                 std::to_string(st.cov.cols()) + ", expected " +
                                 std::to_string(d) + "x" + std::to_string(d));
    if (!st.mean.allFinite() || !st.cov.allFinite())
        throw domain_error(std::string(who) + ": non-finite entries in moments");
}

// Symmetric positive-definite square root and inverse square root.
struct spd_roots {
    Eigen::MatrixXd half;
    Eigen::MatrixXd inv_half;
};

inline spd_roots spd_sqrt(const Eigen::MatrixXd& v, const char* who) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(v);
    if (es.info() != Eigen::Success)
        throw convergence_failure(std::string(who) + ": symmetric eigensolver failed");
    const Eigen::VectorXd& lam = es.eigenvalues();
    if (lam.minCoeff() <= 0.0)
        throw non_positive_definite(std::string(who) + ": matrix is not positive definite");
    const Eigen::VectorXd root = lam.cwiseSqrt();
    spd_roots out;
    out.half = es.eigenvectors() * root.asDiagonal() * es.eigenvectors().transpose();
    out.inv_half = es.eigenvectors() * root.cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
    return out;
}

} // namespace detail

// Symplectic spectrum {nu_k}: moduli of the (purely imaginary, +/- paired)
// eigenvalues of Omega V, sorted descending. Computed with a general
// eigensolver, independently of williamson() below.
inline std::vector<double> symplectic_spectrum(const Eigen::MatrixXd& cov) {
    if (cov.rows() != cov.cols() || cov.rows() < 2 || cov.rows() % 2 != 0)
        throw dimension_mismatch("symplectic_spectrum: cov must be 2n x 2n");
    if (!cov.allFinite())
        throw domain_error("symplectic_spectrum: non-finite entries");
    if (!detail::is_symmetric(cov))
        throw non_symmetric("symplectic_spectrum: cov is not symmetric");
    const Eigen::Index n = cov.rows() / 2;

    {   // positive definiteness is a precondition, checked explicitly
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success)
            throw convergence_failure("symplectic_spectrum: eigensolver failed");
        if (es.eigenvalues().minCoeff() <= 0.0)
            throw non_positive_definite("symplectic_spectrum: cov is not positive definite");
    }

    Eigen::EigenSolver<Eigen::MatrixXd> es(symplectic_form(n) * cov);
    if (es.info() != Eigen::Success)
        throw convergence_failure("symplectic_spectrum: eigensolver failed");

    // eigenvalues of Omega V are +/- i nu_k; a real residue means failure
    std::vector<double> moduli;
    moduli.reserve(2 * n);
    for (Eigen::Index j = 0; j < 2 * n; ++j) {
        const std::complex<double> lam = es.eigenvalues()(j);
        const double mag = std::abs(lam);
        if (std::abs(lam.real()) > 1e-9 * std::max(1.0, mag))
            throw convergence_failure("symplectic_spectrum: eigenvalue off the imaginary axis");
        moduli.push_back(mag);
    }
    std::sort(moduli.begin(), moduli.end(), std::greater<>());

    std::vector<double> spectrum;
    spectrum.reserve(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double a = moduli[2 * k], b = moduli[2 * k + 1];
        if (std::abs(a - b) > 1e-9 * std::max(1.0, a))
            throw convergence_failure("symplectic_spectrum: eigenvalues do not pair");
        spectrum.push_back(0.5 * (a + b));
    }
    return spectrum;
}

// Williamson decomposition V = S W S^T with symplectic S and W = diag(nu_k I2).
// Construction: A = V^{-1/2} Omega V^{-1/2} is antisymmetric; its real Schur
// form is block-diagonal with 2x2 blocks [[0, 1/nu_k], [-1/nu_k, 0]] after
// sign normalization; S = V^{1/2} O W^{-1/2}. Correctness is asserted post-hoc
// by the two residual checks rather than trusted.
inline williamson_decomposition williamson(const Eigen::MatrixXd& cov) {
    if (cov.rows() != cov.cols() || cov.rows() < 2 || cov.rows() % 2 != 0)
        throw dimension_mismatch("williamson: cov must be 2n x 2n");
    if (!cov.allFinite())
        throw domain_error("williamson: non-finite entries");
    if (!detail::is_symmetric(cov))
        throw non_symmetric("williamson: cov is not symmetric");
    const Eigen::Index n = cov.rows() / 2;
    const Eigen::Index d = 2 * n;

    const detail::spd_roots roots = detail::spd_sqrt(cov, "williamson");
    const Eigen::MatrixXd omega = symplectic_form(n);
    Eigen::MatrixXd a = roots.inv_half * omega * roots.inv_half;
    a = 0.5 * (a - a.transpose().eval());  // exact antisymmetry against roundoff

    Eigen::RealSchur<Eigen::MatrixXd> schur(a);
    if (schur.info() != Eigen::Success)
        throw convergence_failure("williamson: Schur decomposition failed");
    Eigen::MatrixXd t = schur.matrixT();
    Eigen::MatrixXd o = schur.matrixU();

    // locate the n 2x2 blocks; a 1x1 block would mean a zero eigenvalue,
    // impossible for an invertible antisymmetric matrix
    struct block {
        Eigen::Index pos;
        double nu;
    };
    std::vector<block> blocks;
    blocks.reserve(n);
    for (Eigen::Index p = 0; p < d;) {
        if (p + 1 >= d)
            throw convergence_failure("williamson: dangling 1x1 Schur block");
        double b = 0.5 * (t(p, p + 1) - t(p + 1, p));
        if (std::abs(b) < 1e-300)
            throw convergence_failure("williamson: singular Schur block");
        if (b < 0.0) {
            o.col(p).swap(o.col(p + 1));  // swap flips the block's sign
            b = -b;
        }
        blocks.push_back({p, 1.0 / b});
        p += 2;
    }

    // descending spectrum; ties keep ascending block position
    std::stable_sort(blocks.begin(), blocks.end(),
                     [](const block& x, const block& y) { return x.nu > y.nu; });

    williamson_decomposition out;
    out.spectrum.reserve(n);
    Eigen::MatrixXd o_sorted(d, d);
    Eigen::VectorXd w_diag(d);
    for (Eigen::Index k = 0; k < n; ++k) {
        out.spectrum.push_back(blocks[k].nu);
        o_sorted.col(2 * k) = o.col(blocks[k].pos);
        o_sorted.col(2 * k + 1) = o.col(blocks[k].pos + 1);
        w_diag(2 * k) = blocks[k].nu;
        w_diag(2 * k + 1) = blocks[k].nu;
    }
    out.w = w_diag.asDiagonal();
    out.s = roots.half * o_sorted * w_diag.cwiseSqrt().cwiseInverse().asDiagonal();

    const double res_omega =
        (out.s * omega * out.s.transpose() - omega).norm() / omega.norm();
    const double res_cov =
        (out.s * out.w * out.s.transpose() - cov).norm() / cov.norm();
    if (res_omega > tol_williamson || res_cov > tol_williamson)
        throw convergence_failure("williamson: residual check failed");
    return out;
}

// Structural and physical validity flags plus the symplectic spectrum.
// Shape breakage throws; everything else is reported through the flags so
// that callers can render diagnostics for bad states.
inline validity_report validate_state(const gaussian_state& st) {
    detail::require_state_shape(st, "validate_state");
    validity_report rep;
    rep.symmetric = detail::is_symmetric(st.cov);
    if (!rep.symmetric) return rep;
    try {
        rep.spectrum = symplectic_spectrum(st.cov);
    } catch (const non_positive_definite&) {
        return rep;  // not even positive definite: certainly unphysical
    }
    rep.physical = std::all_of(rep.spectrum.begin(), rep.spectrum.end(),
                               [](double nu) { return nu >= 1.0 - tol_phys; });
    rep.pure = rep.physical &&
               std::all_of(rep.spectrum.begin(), rep.spectrum.end(),
                           [](double nu) { return std::abs(nu - 1.0) <= tol_pure; });
    return rep;
}

namespace detail {

// Shared entry check for the moment-based pipelines: shapes, symmetry,
// physicality. Throws the specific error a caller should surface.
inline void require_physical(const gaussian_state& st, const char* who) {
    require_state_shape(st, who);
    if (!is_symmetric(st.cov))
        throw non_symmetric(std::string(who) + ": cov is not symmetric");
}

// Snap near-unit symplectic eigenvalues to exactly 1. Eigensolver noise of
// order 1e-15 below or above 1 otherwise leaks into G_s/Lambda_s, where a
// fractional power of (nu - 1) ~ 1e-15 is catastrophically wrong for pure
// modes. The snap width equals the purity tolerance, so genuinely mixed
// modes are never reclassified.
inline void sanitize_spectrum(std::vector<double>& spectrum, const char* who) {
    for (double& nu : spectrum) {
        if (nu < 1.0 - tol_phys)
            throw non_physical(std::string(who) + ": symplectic eigenvalue " +
                               std::to_string(nu) + " < 1");
        if (nu <= 1.0 + tol_pure) nu = 1.0;
    }
}

} // namespace detail

} // namespace gqhb
