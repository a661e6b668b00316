#include "iree/errors.hpp"
#include "iree/field.hpp"
#include "iree/gmm.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace iree;

namespace {

Mat3 diag(double a, double b, double c) {
    Vec3 d(a, b, c);
    return d.asDiagonal();
}

// Three hotspots spread over a 1 km cube.
SpatialGMM demo_mixture() {
    return SpatialGMM({
        {1.0 / 3.0, Gaussian3(Vec3(200, 200, 10), diag(40000, 40000, 25600))},
        {1.0 / 3.0, Gaussian3(Vec3(800, 200, 400), diag(40000, 10000, 25600))},
        {1.0 / 3.0, Gaussian3(Vec3(600, 800, 800), diag(10000, 40000, 22500))},
    });
}

// KL for Gaussians straight from determinants and inverses, no caching.
double kl_reference(const Gaussian3& g, const Gaussian3& h) {
    const Mat3 hinv = h.cov().inverse();
    const Vec3 d = h.mean() - g.mean();
    return 0.5 * (std::log(h.cov().determinant() / g.cov().determinant()) +
                  (hinv * g.cov()).trace() + d.dot(hinv * d) - 3.0);
}

Mat3 random_spd(std::mt19937_64& rng, double scale) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Mat3 a;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            a(i, j) = u(rng);
        }
    }
    return scale * (a * a.transpose() + 0.5 * Mat3::Identity());
}

} // namespace

TEST_CASE("standard normal pdf at the mean") {
    const Gaussian3 g(Vec3::Zero(), Mat3::Identity());
    const double peak = std::pow(2.0 * M_PI, -1.5);
    CHECK(g.pdf(Vec3::Zero()) == doctest::Approx(peak).epsilon(1e-12));
    CHECK(g.log_pdf(Vec3::Zero()) == doctest::Approx(std::log(peak)).epsilon(1e-12));
    CHECK(g.pdf(Vec3(1, 0, 0)) == doctest::Approx(peak * std::exp(-0.5)).epsilon(1e-12));
}

TEST_CASE("three-hotspot mixture density value") {
    CHECK(demo_mixture().pdf(Vec3(200, 200, 10)) ==
          doctest::Approx(3.3107270158578837e-09).epsilon(1e-9));
}

TEST_CASE("mixture pdf is the weighted component sum") {
    const SpatialGMM m = demo_mixture();
    for (const Vec3& loc : {Vec3(200, 200, 10), Vec3(500, 500, 500), Vec3(0, 0, 0)}) {
        double expected = 0.0;
        for (const WeightedGaussian& c : m.components()) {
            expected += c.weight * c.gaussian.pdf(loc);
        }
        CHECK(m.pdf(loc) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("pdf underflows far out while log_pdf stays finite") {
    const Gaussian3 g(Vec3::Zero(), Mat3::Identity());
    const Vec3 far(100.0, 0.0, 0.0);
    CHECK(g.pdf(far) == 0.0);
    CHECK(std::isfinite(g.log_pdf(far)));
    CHECK(g.log_pdf(far) < -4000.0);
}

TEST_CASE("covariance validation") {
    Mat3 asym = Mat3::Identity();
    asym(0, 1) = 0.5;
    CHECK_THROWS_AS(Gaussian3(Vec3::Zero(), asym), InvalidCovarianceError);
    CHECK_THROWS_AS(Gaussian3(Vec3::Zero(), diag(1.0, -1.0, 1.0)), InvalidCovarianceError);
    CHECK_THROWS_AS(Gaussian3(Vec3::Zero(), diag(1.0, 0.0, 1.0)), InvalidCovarianceError);
    CHECK_NOTHROW(Gaussian3(Vec3::Zero(), diag(1e-8, 1e4, 1e8)));
}

TEST_CASE("mixture weight validation") {
    const Gaussian3 g(Vec3::Zero(), Mat3::Identity());
    CHECK_THROWS_AS(SpatialGMM(std::vector<WeightedGaussian>{}), std::invalid_argument);
    CHECK_THROWS_AS(SpatialGMM({{0.9, g}}), std::invalid_argument);
    CHECK_THROWS_AS(SpatialGMM({{1.5, g}, {-0.5, g}}), std::invalid_argument);
    CHECK_NOTHROW(SpatialGMM({{0.25, g}, {0.75, g}}));
    CHECK_NOTHROW(SpatialGMM({{1.0, g}, {0.0, g}}));
}

TEST_CASE("exp_mutual_divergence is exactly 1 for identical parameters") {
    const Gaussian3 g(Vec3(3, -2, 7), diag(4.0, 9.0, 16.0));
    const Gaussian3 h(Vec3(3, -2, 7), diag(4.0, 9.0, 16.0));
    CHECK(exp_mutual_divergence(g, h) == 1.0);
}

TEST_CASE("exp_mutual_divergence closes for isotropic equal-covariance pairs") {
    const double sigma2 = 200.0 * 200.0;
    const Gaussian3 g(Vec3::Zero(), sigma2 * Mat3::Identity());
    for (double d : {50.0, 200.0, 400.0, 1000.0}) {
        const Gaussian3 h(Vec3(d, 0, 0), sigma2 * Mat3::Identity());
        CHECK(exp_mutual_divergence(g, h) ==
              doctest::Approx(std::exp(-d * d / (2.0 * sigma2))).epsilon(1e-12));
    }
}

TEST_CASE("exp_mutual_divergence matches a from-scratch KL computation") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-500.0, 500.0);
    for (int trial = 0; trial < 30; ++trial) {
        const Gaussian3 g(Vec3(u(rng), u(rng), u(rng)), random_spd(rng, 1e4));
        const Gaussian3 h(Vec3(u(rng), u(rng), u(rng)), random_spd(rng, 1e4));
        const double expected = std::exp(-kl_reference(g, h));
        CHECK(exp_mutual_divergence(g, h) == doctest::Approx(expected).epsilon(1e-9));
        CHECK(exp_mutual_divergence(g, h) > 0.0);
        CHECK(exp_mutual_divergence(g, h) <= 1.0);
    }
}

TEST_CASE("exp_mutual_divergence is translation invariant") {
    const Gaussian3 g(Vec3(10, 20, 30), diag(100.0, 200.0, 300.0));
    const Gaussian3 h(Vec3(40, 20, 10), diag(250.0, 150.0, 350.0));
    const Vec3 shift(123.0, -456.0, 789.0);
    const Gaussian3 gs(g.mean() + shift, g.cov());
    const Gaussian3 hs(h.mean() + shift, h.cov());
    CHECK(exp_mutual_divergence(gs, hs) ==
          doctest::Approx(exp_mutual_divergence(g, h)).epsilon(1e-12));
}

TEST_CASE("moment matching recovers a sampled Gaussian") {
    const Box region{Vec3(0, 0, 0), Vec3(1000, 1000, 1000)};
    const GridDims dims{32, 32, 32};
    const Gaussian3 truth(Vec3(480, 520, 500), diag(120.0 * 120.0, 90.0 * 90.0, 150.0 * 150.0));
    const GridField f = sample_gmm_on_grid(SpatialGMM({{1.0, truth}}), region, dims);
    const SpatialGMM fit = fit_gmm_moment_match(f, std::span<const GridField>(&f, 1));
    REQUIRE(fit.size() == 1);
    CHECK(fit.components()[0].weight == doctest::Approx(1.0).epsilon(1e-12));
    // cell edge 31.25 m: the mean lands within half a cell
    CHECK((fit.components()[0].gaussian.mean() - truth.mean()).cwiseAbs().maxCoeff() < 15.7);
    for (int i = 0; i < 3; ++i) {
        CHECK(fit.components()[0].gaussian.cov()(i, i) ==
              doctest::Approx(truth.cov()(i, i)).epsilon(0.05));
    }
}

TEST_CASE("moment matching weights parts by mass share") {
    const Box region{Vec3(0, 0, 0), Vec3(1000, 1000, 1000)};
    const GridDims dims{16, 16, 16};
    const Gaussian3 a(Vec3(300, 300, 300), diag(1e4, 1e4, 1e4));
    const Gaussian3 b(Vec3(700, 700, 700), diag(1e4, 1e4, 1e4));
    GridField fa = sample_gmm_on_grid(SpatialGMM({{1.0, a}}), region, dims);
    GridField fb = sample_gmm_on_grid(SpatialGMM({{1.0, b}}), region, dims);
    for (double& v : fb.values) {
        v *= 3.0; // part b carries three times the mass
    }
    GridField total = fa;
    for (std::size_t i = 0; i < total.size(); ++i) {
        total.values[i] += fb.values[i];
    }
    const std::vector<GridField> parts{fa, fb};
    const SpatialGMM fit = fit_gmm_moment_match(total, parts);
    REQUIRE(fit.size() == 2);
    CHECK(fit.components()[0].weight == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(fit.components()[1].weight == doctest::Approx(0.75).epsilon(1e-9));
    double wsum = 0.0;
    for (const WeightedGaussian& c : fit.components()) {
        wsum += c.weight;
    }
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("moment matching drops zero-mass parts and renormalizes") {
    const Box region{Vec3(0, 0, 0), Vec3(1000, 1000, 1000)};
    const GridDims dims{16, 16, 16};
    const Gaussian3 a(Vec3(500, 500, 500), diag(4e4, 4e4, 4e4));
    const GridField fa = sample_gmm_on_grid(SpatialGMM({{1.0, a}}), region, dims);
    const std::vector<GridField> parts{fa, GridField::zeros(region, dims)};
    const SpatialGMM fit = fit_gmm_moment_match(fa, parts);
    REQUIRE(fit.size() == 1);
    CHECK(fit.components()[0].weight == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("moment matching failure modes") {
    const Box region{Vec3(0, 0, 0), Vec3(1000, 1000, 1000)};
    const GridDims dims{8, 8, 8};
    const GridField zero = GridField::zeros(region, dims);
    const std::vector<GridField> parts{zero};
    CHECK_THROWS_AS(fit_gmm_moment_match(zero, parts), EmptyFieldError);

    GridField total = zero;
    total.values[0] = 1.0;
    const std::vector<GridField> off{GridField::zeros(region, GridDims{16, 16, 16})};
    CHECK_THROWS_AS(fit_gmm_moment_match(total, off), GridMismatchError);
}

TEST_CASE("moment matching of a uniform field centers on the region") {
    const Box region{Vec3(0, 0, 0), Vec3(1000, 1000, 1000)};
    const GridDims dims{16, 16, 16};
    GridField f = GridField::zeros(region, dims);
    for (double& v : f.values) {
        v = 1.0;
    }
    const SpatialGMM fit = fit_gmm_moment_match(f, std::span<const GridField>(&f, 1));
    REQUIRE(fit.size() == 1);
    CHECK((fit.components()[0].gaussian.mean() - Vec3(500, 500, 500)).norm() < 1e-9);
}

TEST_CASE("point-mass parts get the covariance floor") {
    const Box region{Vec3(0, 0, 0), Vec3(1000, 1000, 1000)};
    const GridDims dims{8, 8, 8};
    GridField f = GridField::zeros(region, dims);
    f.values[100] = 5.0;
    const SpatialGMM fit = fit_gmm_moment_match(f, std::span<const GridField>(&f, 1));
    REQUIRE(fit.size() == 1);
    // floor is 1e-6 * (max edge)^2 = 1 m^2 on a 1 km cube
    CHECK(fit.components()[0].gaussian.cov()(0, 0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK((fit.components()[0].gaussian.mean() - f.cell_center(100)).norm() < 1e-9);
}
