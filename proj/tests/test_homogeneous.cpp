#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "latconv/examples.hpp"
#include "latconv/expansion.hpp"
#include "latconv/homogeneous.hpp"

using namespace latconv;

namespace {

HomogeneousPolynomial euclidean2() {
    Polynomial p(2);
    p.add({2, 0}, 1.0);
    p.add({0, 2}, 1.0);
    return HomogeneousPolynomial::from_normal_form(p, Eigen::Matrix2d::Identity(), {1, 1});
}

HomogeneousPolynomial classified(const std::string& name, std::size_t q = 0) {
    const SpectralAnalysis a = analyze(builtin_example(name));
    REQUIRE(a.succeeded());
    return a.points.at(q).cls.P;
}

}  // namespace

TEST_SUITE("homogeneous") {
    TEST_CASE("antisymmetric perturbations are exponents of |xi|^2") {
        const HomogeneousPolynomial P = euclidean2();
        Eigen::Matrix2d E = Eigen::Matrix2d::Identity() / 2;
        E(0, 1) = 0.3;
        E(1, 0) = -0.3;
        CHECK(is_exponent(P, E).ok);
        CHECK(is_exponent(P, Eigen::Matrix2d::Identity() / 2).ok);
        CHECK(trace_invariance_check(P, E, Eigen::Matrix2d::Identity() / 2));
        CHECK(E.trace() == doctest::Approx(1.0));
        CHECK_FALSE(is_exponent(P, Eigen::Matrix2d::Identity() / 3).ok);
    }

    TEST_CASE("rotated example: diagonal and conjugated exponents share the trace") {
        const HomogeneousPolynomial P = classified("ex73");
        Eigen::Matrix2d R;
        R << 1, 1, 1, -1;
        R /= std::sqrt(2.0);
        const Eigen::Matrix2d E2 = R * Eigen::Vector2d(0.5, 0.25).asDiagonal() * R.inverse();
        CHECK(is_exponent(P, E2).ok);
        CHECK(trace_invariance_check(P, P.exponent(), E2));
        CHECK(P.exponent().trace() == doctest::Approx(0.75));
    }

    TEST_CASE("contraction check") {
        CHECK(contraction_check(Eigen::Vector2d(0.25, 0.5).asDiagonal().toDenseMatrix()));
        CHECK(contraction_check(classified("ex73").exponent()));
        CHECK_FALSE(contraction_check(Eigen::Matrix2d::Zero()));
    }

    TEST_CASE("semi-elliptic form of the rotated example") {
        const SemiEllipticForm f = semi_elliptic_form(classified("ex73"));
        // Columns are the diagonals up to sign.
        CHECK(std::abs(std::abs(f.A(0, 0)) - std::sqrt(0.5)) < 1e-12);
        CHECK(std::abs(std::abs(f.A(1, 1)) - std::sqrt(0.5)) < 1e-12);
        CHECK(f.m == std::vector<int>{1, 2});
        CHECK(std::abs(f.coefficients.coeff({2, 0}) - 0.25) < 1e-8);
        CHECK(std::abs(f.coefficients.coeff({0, 4}) - 0.25) < 1e-8);
        CHECK(std::abs(f.coefficients.coeff({1, 2})) < 1e-8);
        CHECK(f.roundtrip_error < 1e-12);
    }

    TEST_CASE("semi-elliptic form of an already diagonal polynomial") {
        const SemiEllipticForm f = semi_elliptic_form(classified("ex71"));
        CHECK((f.A - Eigen::Matrix2d::Identity()).norm() < 1e-12);
        CHECK(f.m == std::vector<int>{3, 2});
    }

    TEST_CASE("P-fitted collections") {
        const std::vector<std::vector<double>> e{{1, 0}, {0, 1}};
        const FittedResult r = p_fitted(classified("ex75:3,2"), e);
        CHECK(r.fitted);
        CHECK(r.weights == std::vector<int>{3, 2});
        CHECK_FALSE(p_fitted(classified("ex73"), e).fitted);
        CHECK(p_fitted(classified("ex73"), {{0, 0}, {0, 0}}).fitted);
        CHECK(p_fitted(classified("ex73"), {{1, 1}, {1, -1}}).fitted);
    }

    TEST_CASE("Re P is positive along each rotated axis") {
        for (const char* name : {"intro", "ex71", "ex72", "ex73", "ex74", "ex75:3,2", "srw:3"}) {
            const SpectralAnalysis a = analyze(builtin_example(name));
            REQUIRE(a.succeeded());
            for (const auto& p : a.points) {
                const HomogeneousPolynomial& P = p.cls.P;
                const int d = P.dim();
                for (int j = 0; j < d; ++j) {
                    for (double s : {1.0, -1.0}) {
                        const Eigen::VectorXd xi = s * P.basis().col(j);
                        CHECK(P.real_part(std::span<const double>(xi.data(), d)) > 0);
                    }
                    CHECK(P.weights()[j] >= 1);
                }
                CHECK(min_real_on_sphere(P) > 0);
            }
        }
    }

    TEST_CASE("norm bounds for t^E") {
        for (const char* name : {"intro", "ex71", "ex73"}) {
            const HomogeneousPolynomial P = classified(name);
            double C_hi = 0, C_lo = 0;
            for (double t = 1; t <= 1e6; t *= 3)
                C_hi = std::max(C_hi, matrix_power_t(P.exponent(), t).norm() / std::pow(t, P.lambda_max()));
            for (double t = 1; t >= 1e-6; t /= 3)
                C_lo = std::max(C_lo, matrix_power_t(P.exponent(), t).norm() / std::pow(t, P.lambda_min()));
            CHECK(C_hi < 3);
            CHECK(C_lo < 3);
            CHECK((matrix_power_t(P.exponent(), 7.0) - P.group_matrix(7.0)).norm() < 1e-10);
        }
    }

    TEST_CASE("every nonzero point lies on a unique orbit through the sphere") {
        const HomogeneousPolynomial P = classified("ex73");
        std::mt19937_64 rng(31);
        std::normal_distribution<double> g;
        std::uniform_real_distribution<double> ls(-4, 4);
        for (int k = 0; k < 100; ++k) {
            const Eigen::Vector2d xi = Eigen::Vector2d(g(rng), g(rng)) * std::exp(ls(rng));
            // |s^{-E} xi| is decreasing in s; bisect on log s for the unit sphere.
            double lo = -200, hi = 200;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                ((P.group_matrix(std::exp(-mid)) * xi).norm() > 1 ? lo : hi) = mid;
            }
            const double t = std::exp(0.5 * (lo + hi));
            const Eigen::Vector2d eta = P.group_matrix(1 / t) * xi;
            CHECK(std::abs(eta.norm() - 1) < 1e-9);
            CHECK((P.group_matrix(t) * eta - xi).norm() < 1e-9 * (1 + xi.norm()));
        }
    }

    TEST_CASE("polynomial CSV round trip") {
        const HomogeneousPolynomial P = classified("ex71");
        std::stringstream ss;
        write_polynomial_csv(ss, P);
        const HomogeneousPolynomial Q = read_polynomial_csv(ss);
        CHECK((P.coefficients() - Q.coefficients()).max_abs_coeff() < 1e-15);
        CHECK(Q.weights() == P.weights());
        CHECK(Q.mu() == Rational(5, 12));
    }
}
