#include <doctest.h>

#include <cmath>
#include <random>

#include "kdnls/catalog.hpp"
#include "kdnls/verify.hpp"

using namespace kdnls;

TEST_CASE("closed-form anchors") {
    CHECK(std::norm(rogue1()(0, 0)) == doctest::Approx(9.0).epsilon(1e-12));
    CHECK(std::norm(rogue2()(0, 0)) == doctest::Approx(25.0).epsilon(1e-12));
    CHECK(std::norm(rogue1()(50, 0)) == doctest::Approx(1.0).epsilon(1e-2));
    CHECK(std::norm(rogue1()(-50, 0)) == doctest::Approx(1.0).epsilon(1e-2));
    const cd p = positon(0.8, 0.8)(0, 0);
    CHECK(is_finite(p));
}

TEST_CASE("invalid eigenvalues") {
    CHECK_THROWS_AS(one_soliton(1, 0), Error);
    CHECK_THROWS_AS(two_soliton(0.7, 0.3, 0.7, 0.3), Error);
    CHECK_THROWS_AS(two_soliton(0.7, 0.0, 0.5, 0.5), Error);
    CHECK_THROWS_AS(positon(0.0, 0.8), Error);
}

TEST_CASE("two-soliton is symmetric in its eigenvalue pairs") {
    const CatalogEntry a = two_soliton(0.7, 0.3, 0.5, 0.5), b = two_soliton(0.5, 0.5, 0.7, 0.3);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int k = 0; k < 100; ++k) {
        const double x = u(rng), t = u(rng);
        const double ia = std::norm(a(x, t)), ib = std::norm(b(x, t));
        CHECK(std::abs(ia - ib) <= 1e-10 * std::max(1.0, ia));
    }
}

TEST_CASE("evaluation is deterministic") {
    const Grid2D g = Grid2D::make(-4, 4, 41, -4, 4, 41);
    const ComplexField2D a = sample(rogue2().eval, g), b = sample(rogue2().eval, g);
    CHECK(a.values() == b.values());
}

TEST_CASE("one-soliton is a travelling wave") {
    // intensity depends on x + 3t only, so the ridge height is constant
    const CatalogEntry s = one_soliton(1, 2);
    for (double xi : {-1.0, -0.2, 0.0, 0.3, 2.0}) {
        const double ref = std::norm(s(xi, 0));
        for (double t = -5; t <= 5; t += 0.5) CHECK(std::abs(std::norm(s(xi - 3 * t, t)) - ref) <= 1e-10);
    }
}

TEST_CASE("breather stays bounded") {
    const CatalogEntry b = breather();
    for (double t : {-30.0, 30.0}) {
        const double v = std::norm(b(0, t));
        CHECK(std::isfinite(v));
        CHECK(v <= 10.0);
    }
}

TEST_CASE("rogue1 returns to the background") {
    const CatalogEntry r = rogue1();
    for (double x = -50; x <= 50; x += 1)
        for (double t = -50; t <= 50; t += 1) {
            if (std::abs(x) < 30 && std::abs(t) < 30) continue;
            const double v = std::norm(r(x, t));
            CHECK(v >= 0.97);
            CHECK(v <= 1.03);
        }
}

TEST_CASE("corrected forms satisfy the equation") {
    const ConventionVariant v{+1, VConjugation::GIndependent};
    const ResidualReport rep = pde_residual(rogue1().eval, rogue1().seed, v, Grid2D::make(-4, 4, 201, -4, 4, 201), 3);
    CHECK(rep.estimated_order >= 1.7);
    CHECK(rep.estimated_order <= 2.3);
}
