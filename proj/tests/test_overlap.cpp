// Tests for the s-overlap, the Minkowski/Young bounds, and the pure fidelity.
#include "catch_amalgamated.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "gqhb/catalog.hpp"
#include "gqhb/overlap.hpp"
#include "test_support.hpp"

using namespace gqhb;
using Catch::Approx;

TEST_CASE("g_func") {
    CHECK(g_func(0.5, 1.0) == 1.0);
    CHECK(g_func(0.5, 3.0) == Approx(1.0 + std::sqrt(2.0)).epsilon(1e-12));
    CHECK(g_func(1e-12, 3.0) > 1e10);  // singular s -> 0 edge
    CHECK(g_func(1.0, 3.0) == Approx(1.0).epsilon(1e-12));  // 2/((x+1)-(x-1))
    CHECK_THROWS_AS(g_func(0.5, 0.99), domain_error);
    CHECK_THROWS_AS(g_func(0.0, 3.0), domain_error);
    CHECK_THROWS_AS(g_func(1.5, 3.0), domain_error);
}

TEST_CASE("lambda_func") {
    CHECK(lambda_func(0.5, 1.0) == 1.0);
    CHECK(lambda_func(0.5, 3.0) == Approx(3.0 + 2.0 * std::sqrt(2.0)).epsilon(1e-12));
    for (double x : {1.0, 1.7, 3.0, 9.0})
        CHECK(lambda_func(1.0, x) == Approx(x).epsilon(1e-12));
    CHECK_THROWS_AS(lambda_func(0.5, 0.5), domain_error);
    CHECK_THROWS_AS(lambda_func(-0.1, 2.0), domain_error);
}

TEST_CASE("log_overlap on closed-form pairs") {
    SECTION("identical thermal states: C_s = 1") {
        const gaussian_state th = build(thermal_spec{3.0});
        const overlap_report rep = log_overlap(th, th, 0.5);
        CHECK(rep.log_c_s == Approx(0.0).margin(1e-12));
        CHECK(rep.c_s == Approx(1.0).epsilon(1e-12));
    }
    SECTION("vacuum vs thermal: ln C_s = (1-s) ln(2/(1+nu))") {
        const gaussian_state vac = build(thermal_spec{1.0});
        const gaussian_state th = build(thermal_spec{3.0});
        const overlap_report rep = log_overlap(vac, th, 0.5);
        CHECK(rep.c_s == Approx(std::pow(2.0, -0.5)).epsilon(1e-12));
        for (double s : {0.1, 0.3, 0.7, 0.9})
            CHECK(log_overlap(vac, th, s).log_c_s ==
                  Approx((1.0 - s) * std::log(0.5)).margin(1e-12));
    }
    SECTION("coherent pair: C_s = e^{-|a0-a1|^2} for every s") {
        const gaussian_state c0 = build(coherent_spec{0.0, 0.0});
        const gaussian_state c1 = build(coherent_spec{1.0, 0.0});
        for (double s : {0.1, 0.25, 0.5, 0.75, 0.9})
            CHECK(log_overlap(c0, c1, s).c_s == Approx(std::exp(-1.0)).epsilon(1e-10));
    }
    SECTION("thermal closed form for general nu pairs") {
        for (double nu0 : {1.5, 2.0, 3.0}) {
            for (double nu1 : {1.2, 2.5}) {
                for (double s : {0.2, 0.5, 0.8}) {
                    const double expect =
                        2.0 / (std::pow(nu0 + 1.0, s) * std::pow(nu1 + 1.0, 1.0 - s) -
                               std::pow(nu0 - 1.0, s) * std::pow(nu1 - 1.0, 1.0 - s));
                    const overlap_report rep = log_overlap(build(thermal_spec{nu0}),
                                                           build(thermal_spec{nu1}), s);
                    CHECK(rep.c_s == Approx(expect).epsilon(1e-12));
                }
            }
        }
    }
    SECTION("domain and shape errors") {
        const gaussian_state vac = build(thermal_spec{1.0});
        const gaussian_state epr = build(epr_spec{2.0});
        CHECK_THROWS_AS(log_overlap(vac, epr, 0.5), dimension_mismatch);
        CHECK_THROWS_AS(log_overlap(vac, vac, 0.0), domain_error);
        CHECK_THROWS_AS(log_overlap(vac, vac, 1.0), domain_error);
        gaussian_state bad = vac;
        bad.cov *= 0.25;
        CHECK_THROWS_AS(log_overlap(bad, vac, 0.5), non_physical);
    }
}

TEST_CASE("minkowski bound") {
    SECTION("two vacua: M_s = 1") {
        CHECK(log_minkowski_bound({1.0}, {1.0}, 0.5) == Approx(0.0).margin(1e-12));
    }
    SECTION("vacuum vs nu=3: direct evaluation") {
        // Psi_{1/2}(1,3) = sqrt2 (2 - sqrt2), Psi_{1/2}(3,1) = (2 + sqrt2) sqrt2
        const double psi_a = std::sqrt(2.0) * (2.0 - std::sqrt(2.0));
        const double psi_b = (2.0 + std::sqrt(2.0)) * std::sqrt(2.0);
        const double expect = std::log(4.0 / (psi_a + psi_b));
        CHECK(log_minkowski_bound({1.0}, {3.0}, 0.5) == Approx(expect).epsilon(1e-12));
        CHECK(expect >= -0.5 * std::numbers::ln2 - 1e-12);  // >= ln C_s = -ln sqrt2
    }
    SECTION("1/n exponent inside Psi cancels against the outer -n power") {
        const std::vector<double> s0{1.8, 3.0}, s1{2.2, 1.4};
        const double s = 0.3;
        const double n = 2.0;
        const auto psi = [&](double a, double x, double y) {
            return std::pow((std::pow(x + 1.0, a) + std::pow(x - 1.0, a)) *
                                (std::pow(y + 1.0, 1.0 - a) - std::pow(y - 1.0, 1.0 - a)),
                            1.0 / n);
        };
        const double direct = std::log(
            std::pow(4.0, n) /
            std::pow(psi(s, s0[0], s1[0]) * psi(s, s0[1], s1[1]) +
                          psi(1.0 - s, s1[0], s0[0]) * psi(1.0 - s, s1[1], s0[1]),
                      n));
        CHECK(log_minkowski_bound(s0, s1, s) == Approx(direct).epsilon(1e-12));
    }
    SECTION("domain errors") {
        CHECK_THROWS_AS(log_minkowski_bound({1.0}, {1.0, 2.0}, 0.5), domain_error);
        CHECK_THROWS_AS(log_minkowski_bound({0.9}, {1.0}, 0.5), domain_error);
        CHECK_THROWS_AS(log_minkowski_bound({1.5}, {1.5}, 1.0), domain_error);
    }
}

TEST_CASE("young bound") {
    CHECK(log_young_bound({1.0}, {1.0}, 0.5) == Approx(0.0).margin(1e-12));
    // 2 * Gamma_{1/2}(1) * Gamma_{1/2}(3) = 2 * (1/sqrt2) * (1/sqrt2) = 1
    CHECK(log_young_bound({1.0}, {3.0}, 0.5) == Approx(0.0).margin(1e-12));
    CHECK_THROWS_AS(log_young_bound({1.0}, {0.5}, 0.5), domain_error);
}

TEST_CASE("ordering chain C <= M <= Y on random pairs") {
    std::mt19937_64 rng(77001);
    for (int i = 0; i < 200; ++i) {
        const Eigen::Index n = 1 + (i % 2);
        const gaussian_state rho0 = gqhb_test::random_physical_state(n, rng, 3.5, 0.5);
        const gaussian_state rho1 = gqhb_test::random_physical_state(n, rng, 3.5, 0.5);
        for (int k = 1; k <= 9; ++k) {
            const double s = 0.1 * k;
            const overlap_report rep = log_overlap(rho0, rho1, s);
            CHECK(rep.log_c_s <= rep.log_m_s + 1e-9);
            CHECK(rep.log_m_s <= rep.log_y_s + 1e-9);
        }
    }
}

TEST_CASE("swap symmetry: C_s(rho0, rho1) = C_{1-s}(rho1, rho0)") {
    std::mt19937_64 rng(77002);
    for (int i = 0; i < 25; ++i) {
        const Eigen::Index n = 1 + (i % 2);
        const gaussian_state rho0 = gqhb_test::random_physical_state(n, rng);
        const gaussian_state rho1 = gqhb_test::random_physical_state(n, rng);
        for (double s : {0.2, 0.5, 0.8}) {
            const double fwd = log_overlap(rho0, rho1, s).log_c_s;
            const double rev = log_overlap(rho1, rho0, 1.0 - s).log_c_s;
            CHECK(fwd == Approx(rev).margin(1e-10));
        }
    }
}

TEST_CASE("pure-pure constancy equals fidelity") {
    SECTION("EPR pairs") {
        const gaussian_state e0 = build(epr_spec{1.5});
        const gaussian_state e1 = build(epr_spec{3.0});
        const double f = gaussian_fidelity_pure(e0, e1);
        for (double s : {0.1, 0.3, 0.5, 0.7, 0.9})
            CHECK(log_overlap(e0, e1, s).c_s == Approx(f).margin(1e-9));
    }
    SECTION("coherent pairs") {
        const gaussian_state c0 = build(coherent_spec{0.2, -0.4});
        const gaussian_state c1 = build(coherent_spec{-0.3, 0.5});
        const double f = gaussian_fidelity_pure(c0, c1);
        for (double s : {0.1, 0.5, 0.9})
            CHECK(log_overlap(c0, c1, s).c_s == Approx(f).margin(1e-9));
    }
}

TEST_CASE("displacing both states together leaves the overlap unchanged") {
    std::mt19937_64 rng(77003);
    gaussian_state rho0 = gqhb_test::random_physical_state(2, rng);
    gaussian_state rho1 = gqhb_test::random_physical_state(2, rng);
    const double base = log_overlap(rho0, rho1, 0.37).log_c_s;
    Eigen::VectorXd shift(4);
    shift << 1.3, -0.2, 0.8, 2.1;
    rho0.mean += shift;
    rho1.mean += shift;
    CHECK(log_overlap(rho0, rho1, 0.37).log_c_s == Approx(base).margin(1e-10));
}

TEST_CASE("gaussian_fidelity_pure") {
    const gaussian_state vac = build(thermal_spec{1.0});
    CHECK(gaussian_fidelity_pure(vac, vac) == Approx(1.0).epsilon(1e-14));
    // EPR closed form: F = 2 / (1 + mu0 mu1 - sqrt((mu0^2-1)(mu1^2-1)))
    CHECK(gaussian_fidelity_pure(build(epr_spec{1.0}), build(epr_spec{3.0})) ==
          Approx(0.5).epsilon(1e-12));
    CHECK(gaussian_fidelity_pure(build(coherent_spec{0.0, 0.0}),
                                 build(coherent_spec{1.0, 0.0})) ==
          Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK_THROWS_AS(gaussian_fidelity_pure(build(thermal_spec{3.0}), vac), not_pure);
}

TEST_CASE("overlap report carries consistent Pi and Sigma") {
    const gaussian_state vac = build(thermal_spec{1.0});
    const gaussian_state th = build(thermal_spec{3.0});
    const overlap_report rep = log_overlap(vac, th, 0.5);
    // ln C = ln Pi - 0.5 ln det Sigma for zero-mean pairs
    const double log_det = std::log(rep.sigma_s.determinant());
    CHECK(rep.log_c_s == Approx(std::log(rep.pi_s) - 0.5 * log_det).margin(1e-10));
    Eigen::LLT<Eigen::MatrixXd> llt(rep.sigma_s);
    CHECK(llt.info() == Eigen::Success);
}
