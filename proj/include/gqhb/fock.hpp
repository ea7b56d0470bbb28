// Brute-force computation of C_s = Tr(rho0^s rho1^{1-s}) in a truncated Fock
// basis. Test support only: an independent cross-check for the moment-based
// Gaussian formulas, excluded from the library's stability guarantees.
//
// Two-mode states are built by applying the two-mode squeezer
// exp(xi (a'b' - ab)) to a thermal-pair diagonal. The squeezer conserves the
// photon-number difference, so it is assembled sector-by-sector from small
// antisymmetric generators; each sector exponential is exactly orthogonal.
// Because that construction already is a spectral decomposition
// rho = U diag(w) U^T with analytically exact weights, a separate spectral
// overlap path is provided that needs no dense eigensolve and no eigenvalue
// clamp; the generic dense path below keeps the documented 1e-14 clamp.
#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "gqhb/errors.hpp"
#include "gqhb/symplectic.hpp"

namespace gqhb {

struct fock_operator {
    Eigen::Index dim = 0;  // truncation dimension per mode
    int modes = 1;
    Eigen::MatrixXcd matrix;  // dim^modes square, Hermitian
};

// Two-mode density operator in factored spectral form rho = U diag(w) U^T
// with real orthogonal U and exact thermal weights w.
struct st_spectral {
    Eigen::Index dim = 0;  // per mode; matrices are dim^2 square
    Eigen::VectorXd weights;
    Eigen::MatrixXd u;
};

namespace detail {

inline void check_trace_tail(double deficit, const char* who) {
    if (deficit > 1e-8)
        throw truncation_too_small(std::string(who) + ": trace deficit " +
                                   std::to_string(deficit) + " exceeds 1e-8");
}

} // namespace detail

// One-mode thermal state: diagonal Gibbs weights (1-lambda) lambda^k with
// lambda = (nu-1)/(nu+1); trace deficit lambda^D must stay within 1e-8.
inline fock_operator fock_thermal(double nu, Eigen::Index d) {
    if (!(nu >= 1.0)) throw domain_error("fock_thermal: nu must be >= 1");
    if (d < 2) throw domain_error("fock_thermal: dimension must be >= 2");
    const double lambda = std::max((nu - 1.0) / (nu + 1.0), 0.0);
    detail::check_trace_tail(std::pow(lambda, static_cast<double>(d)), "fock_thermal");
    fock_operator op{d, 1, Eigen::MatrixXcd::Zero(d, d)};
    double w = 1.0 - lambda;
    for (Eigen::Index k = 0; k < d; ++k) {
        op.matrix(k, k) = w;
        w *= lambda;
    }
    return op;
}

// One-mode coherent state |alpha><alpha| with amplitudes
// e^{-|a|^2/2} a^k / sqrt(k!); the Poisson tail must stay within 1e-10.
inline fock_operator fock_coherent(std::complex<double> alpha, Eigen::Index d) {
    if (d < 2) throw domain_error("fock_coherent: dimension must be >= 2");
    Eigen::VectorXcd amp(d);
    amp(0) = std::exp(-0.5 * std::norm(alpha));
    for (Eigen::Index k = 1; k < d; ++k)
        amp(k) = amp(k - 1) * alpha / std::sqrt(static_cast<double>(k));
    const double tail = 1.0 - amp.squaredNorm();
    if (tail > 1e-10)
        throw truncation_too_small("fock_coherent: probability tail " +
                                   std::to_string(tail) + " exceeds 1e-10");
    fock_operator op{d, 1, amp * amp.adjoint()};
    return op;
}

// Two-mode symmetric squeezed-thermal state in factored spectral form.
// Moment map: with nu = sqrt(mu^2 - c^2) and xi = artanh(c/mu)/2, squeezing a
// nu-thermal pair gives diagonal variance nu cosh 2xi = mu and correlation
// nu sinh 2xi = c (verified against numerically extracted moments in tests).
inline st_spectral fock_st_spectral(double mu, double c, Eigen::Index d) {
    c = std::abs(c);
    if (!(mu >= 1.0)) throw invalid_spec("fock_st_spectral: mu must be >= 1");
    const double nu_sq = mu * mu - c * c;
    if (nu_sq < 1.0 - tol_phys)
        throw invalid_spec("fock_st_spectral: unphysical (mu, c)");
    if (d < 2) throw domain_error("fock_st_spectral: dimension must be >= 2");
    // snap near-pure nu to exactly 1: a 1-ulp excess would otherwise seed
    // phantom Gibbs weights ~1e-16 whose fractional powers are O(1e-2)
    double nu = std::sqrt(std::max(nu_sq, 1.0));
    if (nu <= 1.0 + tol_pure) nu = 1.0;

    // the reduced per-mode state is mu-thermal: that ratio bounds the tail
    const double lambda_red = (mu - 1.0) / (mu + 1.0);
    detail::check_trace_tail(2.0 * std::pow(lambda_red, static_cast<double>(d)),
                             "fock_st_spectral");

    st_spectral sd;
    sd.dim = d;
    const double lambda = std::max((nu - 1.0) / (nu + 1.0), 0.0);
    sd.weights.resize(d * d);
    {
        Eigen::VectorXd w1(d);
        double w = 1.0 - lambda;
        for (Eigen::Index k = 0; k < d; ++k) {
            w1(k) = w;
            w *= lambda;
        }
        for (Eigen::Index m = 0; m < d; ++m)
            for (Eigen::Index n = 0; n < d; ++n)
                sd.weights(m * d + n) = w1(m) * w1(n);  // |m n> at index m*d + n
    }

    const double xi = 0.5 * std::atanh(c / mu);
    sd.u = Eigen::MatrixXd::Zero(d * d, d * d);
    for (Eigen::Index delta = -(d - 1); delta <= d - 1; ++delta) {
        // sector basis |m n> with m - n = delta
        const Eigen::Index off = std::max(delta, Eigen::Index{0});
        const Eigen::Index len = d - std::abs(delta);
        Eigen::MatrixXd k = Eigen::MatrixXd::Zero(len, len);
        for (Eigen::Index j = 0; j + 1 < len; ++j) {
            const Eigen::Index m = off + j, n = j - std::min(delta, Eigen::Index{0});
            const double amp = std::sqrt(static_cast<double>((m + 1) * (n + 1)));
            k(j + 1, j) = amp;   // a'b' raises both occupations
            k(j, j + 1) = -amp;  // ab lowers them
        }
        const Eigen::MatrixXd u_sector = (xi * k).exp();
        for (Eigen::Index j = 0; j < len; ++j) {
            const Eigen::Index mj = off + j, nj = j - std::min(delta, Eigen::Index{0});
            for (Eigen::Index i = 0; i < len; ++i) {
                const Eigen::Index mi = off + i, ni = i - std::min(delta, Eigen::Index{0});
                sd.u(mi * d + ni, mj * d + nj) = u_sector(i, j);
            }
        }
    }
    return sd;
}

// Dense two-mode squeezed-thermal density matrix (D^2 x D^2).
inline fock_operator fock_st(double mu, double c, Eigen::Index d) {
    const st_spectral sd = fock_st_spectral(mu, c, d);
    fock_operator op{d, 2, Eigen::MatrixXcd()};
    const Eigen::MatrixXd dense =
        sd.u * sd.weights.asDiagonal() * sd.u.transpose();
    op.matrix = dense.cast<std::complex<double>>();
    return op;
}

// First and second moments of a Fock-basis density operator under the
// vacuum-CM = identity convention: q = a + a', p = -i(a - a'),
// mean_j = <R_j>, cov_jk = <R_j R_k + R_k R_j>/2 - <R_j><R_k>
// (vacuum then has <q^2> = 1; a coherent state has mean 2(Re a, Im a)).
inline gaussian_state extract_moments(const fock_operator& op) {
    const Eigen::Index d = op.dim;
    const int modes = op.modes;

    Eigen::MatrixXcd a_one = Eigen::MatrixXcd::Zero(d, d);
    for (Eigen::Index k = 0; k + 1 < d; ++k)
        a_one(k, k + 1) = std::sqrt(static_cast<double>(k + 1));

    const auto kron = [](const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y) {
        Eigen::MatrixXcd z(x.rows() * y.rows(), x.cols() * y.cols());
        for (Eigen::Index i = 0; i < x.rows(); ++i)
            for (Eigen::Index j = 0; j < x.cols(); ++j)
                z.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
        return z;
    };

    std::vector<Eigen::MatrixXcd> quad;  // q1, p1, (q2, p2)
    const std::complex<double> im(0.0, 1.0);
    const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(d, d);
    for (int mode = 0; mode < modes; ++mode) {
        Eigen::MatrixXcd a_k;
        if (modes == 1) {
            a_k = a_one;
        } else {
            a_k = (mode == 0) ? kron(a_one, eye) : kron(eye, a_one);
        }
        quad.push_back(a_k + a_k.adjoint());
        quad.push_back(-im * (a_k - a_k.adjoint()));
    }

    gaussian_state st;
    st.n = modes;
    st.mean.resize(2 * modes);
    st.cov.resize(2 * modes, 2 * modes);
    for (std::size_t j = 0; j < quad.size(); ++j)
        st.mean(static_cast<Eigen::Index>(j)) = (op.matrix * quad[j]).trace().real();
    for (std::size_t j = 0; j < quad.size(); ++j) {
        for (std::size_t k = j; k < quad.size(); ++k) {
            const Eigen::MatrixXcd anti = quad[j] * quad[k] + quad[k] * quad[j];
            const double centered = 0.5 * (op.matrix * anti).trace().real() -
                                    st.mean(static_cast<Eigen::Index>(j)) *
                                        st.mean(static_cast<Eigen::Index>(k));
            st.cov(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = centered;
            st.cov(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = centered;
        }
    }
    return st;
}

// Generic dense path: fractional powers via Hermitian eigendecomposition with
// eigenvalues below 1e-14 clamped to 0 (0^s = 0), then
// C_s = sum_ij w0_i^s w1_j^{1-s} |<u0_i|u1_j>|^2, which is real by
// construction (no imaginary residue survives the bilinear form).
inline double overlap_trace(const fock_operator& rho0, const fock_operator& rho1, double s) {
    if (!(s > 0.0) || !(s < 1.0))
        throw domain_error("overlap_trace: s must lie strictly inside (0,1)");
    if (rho0.matrix.rows() != rho1.matrix.rows() || rho0.modes != rho1.modes)
        throw dimension_mismatch("overlap_trace: operators have different dimensions");
    for (const fock_operator* op : {&rho0, &rho1}) {
        const double scale = std::max(op->matrix.cwiseAbs().maxCoeff(), 1.0);
        if ((op->matrix - op->matrix.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
            throw non_hermitian("overlap_trace: operator is not Hermitian");
    }

    const auto decompose = [](const fock_operator& op) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(op.matrix);
        if (es.info() != Eigen::Success)
            throw convergence_failure("overlap_trace: eigensolver failed");
        Eigen::VectorXd w = es.eigenvalues();
        for (Eigen::Index i = 0; i < w.size(); ++i)
            if (w(i) < 1e-14) w(i) = 0.0;
        return std::make_pair(std::move(w), es.eigenvectors());
    };
    const auto [w0, u0] = decompose(rho0);
    const auto [w1, u1] = decompose(rho1);

    const Eigen::MatrixXd overlap_sq = (u0.adjoint() * u1).cwiseAbs2();
    Eigen::VectorXd p(w0.size()), q(w1.size());
    for (Eigen::Index i = 0; i < w0.size(); ++i)
        p(i) = (w0(i) > 0.0) ? std::pow(w0(i), s) : 0.0;
    for (Eigen::Index j = 0; j < w1.size(); ++j)
        q(j) = (w1(j) > 0.0) ? std::pow(w1(j), 1.0 - s) : 0.0;
    return p.dot(overlap_sq * q);
}

// Spectral path for factored two-mode states: exact weights, no clamp.
inline double overlap_trace_spectral(const st_spectral& rho0, const st_spectral& rho1,
                                     double s) {
    if (!(s > 0.0) || !(s < 1.0))
        throw domain_error("overlap_trace_spectral: s must lie strictly inside (0,1)");
    if (rho0.dim != rho1.dim)
        throw dimension_mismatch("overlap_trace_spectral: dimensions differ");
    const Eigen::MatrixXd overlap_sq = (rho0.u.transpose() * rho1.u).cwiseAbs2();
    Eigen::VectorXd p(rho0.weights.size()), q(rho1.weights.size());
    for (Eigen::Index i = 0; i < p.size(); ++i)
        p(i) = (rho0.weights(i) > 0.0) ? std::pow(rho0.weights(i), s) : 0.0;
    for (Eigen::Index j = 0; j < q.size(); ++j)
        q(j) = (rho1.weights(j) > 0.0) ? std::pow(rho1.weights(j), 1.0 - s) : 0.0;
    return p.dot(overlap_sq * q);
}

} // namespace gqhb
