#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ghcov/errors.hpp"
#include "ghcov/oracles.hpp"
#include "ghcov/specfun.hpp"
#include "ghcov/univariate.hpp"
#include "oracle_helpers.hpp"

#include <cmath>

using namespace ghcov;

namespace {

KernelParams random_pd(std::uint64_t& st, int d) {
    for (;;) {
        KernelParams p;
        p.a = 1.0;
        p.alpha = 0.5 * d + testoracle::uniform01(st) * 6.0;
        p.beta = testoracle::uniform01(st) * 12.0;
        p.gamma_ = testoracle::uniform01(st) * 12.0;
        if (check_param_space(p, d).in_space) return p;
    }
}

} // namespace

TEST_CASE("integral form reproduces closed forms") {
    KernelParams sph{1.0, 2.0, 2.5, 4.0, 1.0};
    CHECK(cov_eval_integral(sph, 3, 0.5) == doctest::Approx(0.3125).epsilon(1e-9));
    CHECK(cov_eval_integral(sph, 3, 0.999) == doctest::Approx(cov_eval(sph, 3, 0.999)).epsilon(1e-6));
    CHECK(cov_eval_integral(sph, 3, 1.3) == 0.0);
    KernelParams ask = make_askey(2, 2.0, 1.0);
    CHECK(cov_eval_integral(ask, 2, 0.25) == doctest::Approx(0.5625).epsilon(1e-9));
}

TEST_CASE("three-path agreement on random instances") {
    std::uint64_t st = 2024;
    for (int d = 1; d <= 3; ++d) {
        for (int i = 0; i < 12; ++i) {
            KernelParams p = random_pd(st, d);
            double r = 0.02 + 0.96 * testoracle::uniform01(st);
            double c0 = cov_eval(p, d, r);
            double c1 = cov_eval_integral(p, d, r);
            double c2 = cov_eval_mixture(p, d, r);
            CHECK(std::abs(c0 - c1) <= 1e-7);
            CHECK(std::abs(c0 - c2) <= 1e-7);
            CHECK(std::abs(c1 - c2) <= 1e-7);
        }
    }
}

TEST_CASE("mixture identity max deviation") {
    std::vector<double> grid;
    for (int i = 0; i <= 40; ++i) grid.push_back(20.0 * i / 40.0);
    CHECK(mixture_identity_check(2.0, 2.5, 4.0, grid) <= 1e-8);
    // gamma = 1 reduces the 0F1 kernel to J_0
    CHECK(mixture_identity_check(0.4, 1.2, 1.0, grid) <= 1e-8);
}

TEST_CASE("term-by-term integration identity") {
    // x = 0 reduces both sides to beta-function products
    CHECK(term_integration_identity_check(1.5, 2.0, 2.5, 3.5, 4.0, 1.0, 0.0) <= 1e-9);
    CHECK(term_integration_identity_check(1.5, 2.0, 2.5, 3.5, 4.0, 1.0, 2.7) <= 1e-7);
    CHECK(term_integration_identity_check(0.8, 1.1, 1.7, 2.6, 3.9, 0.7, 4.0) <= 1e-7);
    // pole at beta_ij = beta
    CHECK_THROWS_AS(term_integration_identity_check(1.5, 2.0, 2.5, 2.0, 4.0, 1.0, 1.0),
                    validation_error);
}

TEST_CASE("hankel roundtrip on closed-form families") {
    KernelParams tent = make_spherical(1, 0.0, 1.0);
    CHECK(std::abs(hankel_roundtrip(tent, 1, 0.3) - 0.7) <= 1e-6);
    CHECK(std::abs(hankel_roundtrip(tent, 1, 0.95) - 0.05) <= 1e-6);
    CHECK(std::abs(hankel_roundtrip(tent, 1, 1.2)) <= 1e-6);
    CHECK(std::abs(hankel_roundtrip(tent, 1, 0.0) - 1.0) <= 1e-6);
    KernelParams sph = make_spherical(3, 0.0, 1.0);
    for (double r : {0.0, 0.3, 0.77, 1.1}) {
        double want = cov_eval(sph, 3, r);
        CHECK(std::abs(hankel_roundtrip(sph, 3, r) - want) <= 1e-6);
    }
    KernelParams circ = make_spherical(2, 0.0, 1.0);
    for (double r : {0.25, 0.9}) {
        double want = cov_eval(circ, 2, r);
        CHECK(std::abs(hankel_roundtrip(circ, 2, r) - want) <= 1e-6);
    }
}

TEST_CASE("hankel roundtrip on random instances") {
    std::uint64_t st = 555;
    for (int d = 1; d <= 3; ++d) {
        for (int i = 0; i < 3; ++i) {
            KernelParams p = random_pd(st, d);
            p.a = 0.5 + testoracle::uniform01(st) * 2.0;
            double r = (0.05 + 0.9 * testoracle::uniform01(st)) * p.a;
            double want = cov_eval(p, d, r);
            CHECK(std::abs(hankel_roundtrip(p, d, r) - want) <= 1e-6);
        }
    }
}

TEST_CASE("finite-difference derivative consistency") {
    // centered differences at two step sizes agree to 1e-6 relative
    std::uint64_t st = 808;
    for (int i = 0; i < 10; ++i) {
        int d = 1 + static_cast<int>(testoracle::uniform01(st) * 3.0);
        KernelParams p = random_pd(st, d);
        double r = 0.2 + 0.6 * testoracle::uniform01(st);
        double h = 1e-5;
        double d1 = (cov_eval(p, d, r + h) - cov_eval(p, d, r - h)) / (2.0 * h);
        double h2 = 2e-5;
        double d2 = (cov_eval(p, d, r + h2) - cov_eval(p, d, r - h2)) / (2.0 * h2);
        CHECK(std::abs(d1 - d2) <= 1e-6 * std::max(1.0, std::abs(d1)));
    }
}

TEST_CASE("convergence harness traces decrease") {
    LimitKernelSpec matern{LimitFamily::Matern, 1.0, 0.5, 0.0};
    auto tr = convergence_harness(matern, 4, 1);
    CHECK(tr.sup_errors.size() == 4);
    CHECK(tr.nonincreasing(0.10));
    CHECK(tr.sup_errors.back() < 5e-3); // terminal beta = gamma = 1e4
    LimitKernelSpec gauss{LimitFamily::Gaussian, 1.0, 0.0, 0.0};
    CHECK(convergence_harness(gauss, 4, 1).nonincreasing(0.10));
    LimitKernelSpec erfc_t{LimitFamily::Erfc, 1.0, 0.0, 0.0};
    auto te = convergence_harness(erfc_t, 3, 1);
    CHECK(te.nonincreasing(0.10));
    CHECK(te.sup_errors.back() < 5e-3);
}

TEST_CASE("gram on points") {
    KernelParams ask = make_askey(2, 2.0, 1.0);
    // single point
    Eigen::MatrixXd one(1, 2);
    one << 0.3, 0.4;
    auto g1 = gram(one, ask, 2);
    CHECK(g1.matrix(0, 0) == 1.0);
    CHECK(g1.min_eig == doctest::Approx(1.0));
    // coincident points: rank deficiency
    Eigen::MatrixXd two(2, 2);
    two << 0.1, 0.2, 0.1, 0.2;
    auto g2 = gram(two, ask, 2);
    CHECK(std::abs(g2.min_eig) <= 1e-12);
    // random cloud: strictly positive min eigenvalue and sparse structure
    std::uint64_t st = 99;
    Eigen::MatrixXd pts(120, 2);
    for (int i = 0; i < 120; ++i)
        for (int j = 0; j < 2; ++j) pts(i, j) = 5.0 * testoracle::uniform01(st);
    auto g = gram(pts, ask, 2);
    CHECK(g.min_eig > 0.0);
    CHECK(g.psd);
    CHECK(g.nnz_fraction < 0.25);
    // points farther apart than the range: diagonal matrix
    Eigen::MatrixXd far(3, 2);
    far << 0.0, 0.0, 10.0, 0.0, 0.0, 10.0;
    auto gf = gram(far, ask, 2);
    CHECK(gf.nnz_fraction == doctest::Approx(3.0 / 9.0));
    CHECK(gf.min_eig == doctest::Approx(1.0));
}

TEST_CASE("simulate_field statistics and determinism") {
    KernelParams ask = make_askey(2, 2.0, 1.0);
    std::uint64_t st = 17;
    Eigen::MatrixXd pts(25, 2);
    for (int i = 0; i < 25; ++i)
        for (int j = 0; j < 2; ++j) pts(i, j) = 5.0 * testoracle::uniform01(st);
    const int nreal = 10000;
    auto sim = simulate_field(pts, ask, 2, nreal, 424242);
    CHECK_FALSE(sim.clipped_warning);
    // empirical variances within 3 sqrt(2/n) of sigma2 = 1
    double band = 3.0 * std::sqrt(2.0 / nreal);
    for (int i = 0; i < 25; ++i)
        CHECK(std::abs(sim.empirical_cov(i, i) - 1.0) <= band);
    // distant pairs decorrelate: |cov| within 3 standard errors of 0
    int checked = 0;
    for (int i = 0; i < 25 && checked < 40; ++i)
        for (int j = i + 1; j < 25 && checked < 40; ++j) {
            if ((pts.row(i) - pts.row(j)).norm() >= 1.0) {
                CHECK(std::abs(sim.empirical_cov(i, j)) <= 3.0 / std::sqrt(double(nreal)));
                ++checked;
            }
        }
    // determinism
    auto sim2 = simulate_field(pts, ask, 2, 50, 424242);
    auto sim3 = simulate_field(pts, ask, 2, 50, 424242);
    CHECK((sim2.samples - sim3.samples).cwiseAbs().maxCoeff() == 0.0);
    // counter-based generator is a pure function of (seed, index)
    CHECK(detail::gaussian_at(7, 123) == detail::gaussian_at(7, 123));
    CHECK(detail::gaussian_at(7, 123) != detail::gaussian_at(8, 123));
}

TEST_CASE("montee proportionality constant flat in r") {
    std::uint64_t st = 4242;
    int done = 0;
    while (done < 5) {
        KernelParams p = random_pd(st, 3);
        KernelParams ps = p;
        ps.alpha += 1.0;
        ps.beta += 1.0;
        ps.gamma_ += 1.0;
        if (!check_param_space(ps, 3).in_space) continue;
        ++done;
        auto up = montee(p, 3, 2);
        // montee'd radial part: scale * g_{d-k}(r; p); the ratio against
        // g_d(r; p + k/2) must be flat in r and equal the returned scale
        double ref = -1.0;
        for (double r : {0.05, 0.2, 0.45, 0.7, 0.9}) {
            double num = up.scale * cov_eval(p, 1, r);
            double den = cov_eval(up.params, 3, r);
            double ratio = num / den;
            if (ref < 0.0)
                ref = ratio;
            else
                CHECK(std::abs(ratio - ref) <= 1e-9 * std::abs(ref));
            CHECK(ratio == doctest::Approx(up.scale).epsilon(1e-9));
        }
    }
}
