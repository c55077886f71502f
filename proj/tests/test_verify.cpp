#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "latconv/errors.hpp"
#include "latconv/examples.hpp"
#include "latconv/verify.hpp"
#include "support.hpp"

using namespace latconv;
using namespace testsupport;

namespace {

std::vector<long> dyadic(long a, long b) {
    std::vector<long> v;
    for (long n = a; n <= b; n *= 2) v.push_back(n);
    return v;
}

// Probability with the support of the rotated example.
LatticeFunction rotated_support_walk() {
    return LatticeFunction::from_entries(2, {{{0, 0}, 0.2},
                                             {{1, 1}, 0.1},
                                             {{-1, -1}, 0.1},
                                             {{1, -1}, 0.2},
                                             {{-1, 1}, 0.2},
                                             {{2, -2}, 0.1},
                                             {{-2, 2}, 0.1}});
}

}  // namespace

TEST_SUITE("verify") {
    TEST_CASE("sup decay band for the intro and semi-elliptic examples") {
        const BoundReport r = sup_decay_report(builtin_example("intro"), dyadic(16, 512));
        CHECK(r.verdict == "bounded-band");
        CHECK(*r.constant("mu") == doctest::Approx(0.75));
        CHECK(r.rows.size() == 6);
        const BoundReport s = sup_decay_report(builtin_example("ex71"), dyadic(16, 512), 16);
        CHECK(s.verdict == "bounded-band");
        CHECK(*s.constant("band_ratio") <= 2.0);
    }

    TEST_CASE("point mass: not applicable, sup norm stays 1") {
        const LatticeFunction d = LatticeFunction::from_entries(2, {{{1, 0}, 1.0}});
        const BoundReport r = sup_decay_report(d, {1, 4, 16});
        CHECK(r.verdict == "not-applicable");
        CHECK_FALSE(is_violation(r.verdict));
        for (const auto& row : r.rows) CHECK(row.linf == doctest::Approx(1.0));
        CHECK(subexp_bound_fit(d, {1, 2, 4}, 3).verdict == "not-applicable");
    }

    TEST_CASE("local limit error decreases") {
        const SpectralAnalysis a = analyze(builtin_example("intro"));
        CHECK(llt_error(a, 100).scaled_error < llt_error(a, 10).scaled_error);
        const BoundReport lazy = llt_report(builtin_example("lazy1d"), dyadic(16, 1024));
        CHECK(lazy.verdict == "decreasing");
        CHECK(lazy.rows.back().scaled < 0.01);
    }

    TEST_CASE("tensor example: residual from the second point dies out") {
        const SpectralAnalysis a = analyze(builtin_example("ex74"));
        const LltError e250 = llt_error(a, 250), e1000 = llt_error(a, 1000);
        CHECK(e1000.scaled_error < e250.scaled_error);
        CHECK(e1000.scaled_error <= 0.5);
    }

    TEST_CASE("Gaussian bound for the simple random walk") {
        const BoundReport r = gaussian_bound_fit(builtin_example("srw:2"), {8, 16, 24, 32, 40, 48, 56, 64});
        CHECK(r.verdict == "fitted");
        CHECK(*r.constant("M") >= 0.05);
        CHECK(*r.constant("stability_ratio") <= 1.5);
    }

    TEST_CASE("Gaussian bound rejects distinct drifts") {
        const BoundReport r = gaussian_bound_fit(builtin_example("ex72"), {4, 8});
        CHECK(r.verdict == "hypothesis-violation");
        CHECK_FALSE(is_violation(r.verdict));
    }

    TEST_CASE("sub-exponential bounds") {
        const BoundReport a = subexp_bound_fit(builtin_example("ex72"), {8, 12, 16, 24, 32, 40, 48, 56, 64}, 4);
        CHECK(a.verdict == "fitted");
        CHECK(std::isfinite(*a.constant("C")));
        const BoundReport b = subexp_bound_fit(builtin_example("ex74"), {8, 12, 16, 24, 32, 40, 48, 56, 64}, 6);
        CHECK(std::isfinite(*b.constant("C")));
        CHECK(b.verdict == "fitted");
    }

    TEST_CASE("stability verdicts") {
        CHECK(stability_report(builtin_example("ex73"), 512).verdict == "stable");
        const BoundReport u = stability_report(builtin_example("unstable1d"), 512);
        CHECK(u.verdict == "unstable");
        CHECK(is_violation(u.verdict));
        const BoundReport p = stability_report(builtin_example("srw:2"), 64, PowerMethod::Direct);
        for (const auto& row : p.rows) CHECK(std::abs(row.l1 - 1.0) < 1e-12);
    }

    TEST_CASE("space differences") {
        const LatticeFunction d0 = delta({0, 0});
        const LatticeFunction D = space_diff(d0, {1, 2});
        CHECK(D.size() == 2);
        CHECK(std::abs(D.at(LatticePoint{-1, -2}) - 1.0) < 1e-15);
        CHECK(std::abs(D.at(LatticePoint{0, 0}) + 1.0) < 1e-15);
        const LatticeFunction f = builtin_example("intro");
        const LatticeFunction ab = space_diff(space_diff(f, {1, 0}), {0, 1});
        const LatticeFunction ba = space_diff(space_diff(f, {0, 1}), {1, 0});
        CHECK(max_diff(to_table(ab), ba) < 1e-15);
        CHECK(max_diff(to_table(ab), space_diff_multi(f, {{1, 0}, {0, 1}}, {1, 1})) < 1e-15);
    }

    TEST_CASE("rotated example: D_(0,1) phi^(n)(0,0) is of order n^-3/4") {
        const LatticeFunction f = builtin_example("ex73");
        double lo = 1e300, hi = 0;
        for_each_direct_power(f, 128, [&](long n, const LatticeFunction& p) {
            if (n < 16 || n % 2) return;
            const double v = std::abs(space_diff(p, {0, 1}).at(LatticePoint{0, 0})) * std::pow(n, 0.75);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        });
        CHECK(lo > 0.05);
        CHECK(hi / lo < 2);
    }

    TEST_CASE("time differences") {
        const LatticeFunction f = builtin_example("ex71");
        const SpectralAnalysis a = analyze(f);
        const LatticeFunction p5 = power(f, 5);
        const LatticeFunction t1 = time_diff(f, a, 0, 1, p5);
        CHECK(max_diff(to_table(subtract(p5, power(f, 6))), t1) < 1e-14);
        const LatticeFunction x = time_diff(f, a, 0, 2, time_diff(f, a, 0, 3, p5));
        const LatticeFunction y = time_diff(f, a, 0, 3, time_diff(f, a, 0, 2, p5));
        CHECK(max_diff(to_table(x), y) < 1e-12);
        // (1 - phi)^2 applied twice equals delta - 2 phi + phi^(2) convolved.
        const LatticeFunction twice = time_diff(f, a, 0, 1, time_diff(f, a, 0, 1, p5));
        const LatticeFunction expand =
            convolve(add(subtract(delta({0, 0}), f.scaled(2.0)), power(f, 2)), p5);
        CHECK(max_diff(to_table(expand), twice) < 1e-14);
        CHECK_THROWS_AS(time_diff(builtin_example("ex72"), analyze(builtin_example("ex72")), 0, 1, p5), PreconditionError);
    }

    TEST_CASE("combined time and space differences, k <= 3") {
        const LatticeFunction f = builtin_example("ex75:3,2");
        const SpectralAnalysis a = analyze(f);
        const double mu = a.mu_phi->to_double() + weighted_degree({1, 0}, {3, 2}).to_double();
        for (int k = 1; k <= 3; ++k) {
            std::vector<double> s;
            for (long n : {32L, 64L, 128L, 256L}) {
                LatticeFunction psi = space_diff_multi(power(f, n), {{1, 0}, {0, 1}}, {1, 0});
                for (int j = 0; j < k; ++j) psi = time_diff(f, a, 0, 1, psi);
                s.push_back(norm_linf(psi) * std::pow(static_cast<double>(n), mu + k));
            }
            const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
            CHECK(*lo > 0.1);
            CHECK(*hi / *lo < 1.5);
        }
    }

    TEST_CASE("derivative bounds") {
        const BoundReport a = derivative_bound_fit(builtin_example("ex75:3,2"), {{1, 0}, {0, 1}}, {1, 0}, {16, 24, 32, 40, 48, 56, 64});
        CHECK(a.verdict == "fitted");
        CHECK(*a.constant("exponent") == doctest::Approx(5.0 / 12 + 1.0 / 6));
        const BoundReport b = derivative_bound_fit(builtin_example("ex71"), {{1, 0}, {0, 1}}, {0, 1}, {16, 24, 32, 40, 48, 56, 64});
        CHECK(b.verdict == "fitted");
        CHECK(std::isfinite(*b.constant("C")));
        CHECK(derivative_bound_fit(builtin_example("ex73"), {{1, 0}, {0, 1}}, {0, 1}, {8, 16}).verdict ==
              "hypothesis-violation");
    }

    TEST_CASE("walk profiles") {
        const WalkProfile s = walk_profile(builtin_example("srw:2"));
        CHECK(std::abs(s.mean[0]) < 1e-15);
        CHECK((s.covariance - Eigen::Matrix2d::Identity() / 2).norm() < 1e-15);
        CHECK(s.genuinely_d_dimensional);
        const WalkProfile m = walk_profile(builtin_example("phim:2,1"));
        CHECK((m.covariance - Eigen::Vector2d(2.0, 0.5).asDiagonal().toDenseMatrix()).norm() < 1e-15);
        CHECK(support_rank(LatticeFunction::from_entries(2, {{{1, 1}, 1.0}})) == 0);
        CHECK_FALSE(walk_profile(LatticeFunction::from_entries(2, {{{1, 1}, 1.0}})).genuinely_d_dimensional);
        CHECK(support_rank(LatticeFunction::from_entries(3, {{{0, 0, 0}, 0.5}, {{1, 2, 3}, 0.25}, {{2, 4, 6}, 0.25}})) == 1);
        CHECK_THROWS_AS(walk_profile(builtin_example("intro")), PreconditionError);
    }

    TEST_CASE("theta values") {
        const WalkProfile s = walk_profile(builtin_example("srw:2"));
        CHECK(theta(s, 2, {1, 1}) == 2.0);
        CHECK(theta(s, 1, {0, 0}) == 0.0);
        const WalkProfile m = walk_profile(builtin_example("phim:2,1"));
        for (long n = 1; n <= 6; ++n)
            for (std::int64_t x1 = -4; x1 <= 4; ++x1)
                for (std::int64_t x2 = -3; x2 <= 3; ++x2) {
                    const bool on = x1 % 2 == 0 && (n - (x1 / 2 + x2)) % 2 == 0;
                    CHECK(theta(m, n, {x1, x2}) == (on ? 4.0 : 0.0));
                    CHECK(std::abs(theta(m, n, {x1, x2}) - theta_cosine(m, n, {x1, x2})) < 1e-10);
                }
    }

    TEST_CASE("support inclusion") {
        CHECK(support_periodicity_check(builtin_example("srw:2"), 32));
        CHECK(support_periodicity_check(rotated_support_walk(), 24));
        const WalkProfile l = walk_profile(builtin_example("lazy1d"));
        CHECK(l.omega.size() == 1);
        for (long n = 1; n < 10; ++n) CHECK(theta(l, n, {3}) == 1.0);
    }

    TEST_CASE("report CSV") {
        const BoundReport r = stability_report(builtin_example("ex73"), 16);
        std::ostringstream a, b;
        write_report_csv(a, r);
        write_report_csv(b, stability_report(builtin_example("ex73"), 16));
        CHECK(a.str().rfind("# verdict: stable\n", 0) == 0);
        CHECK(a.str() == b.str());
        CHECK(a.str().find("n,linf,l1,scaled\n") != std::string::npos);
    }
}
