#include <doctest.h>

#include <cmath>
#include <random>

#include "kdnls/lax.hpp"

using namespace kdnls;

namespace {
const cd I(0.0, 1.0);

cd radicand(cd l, double a, double c) {
    const cd l2 = l * l;
    return cd(4.0 * a * a + 8.0 * a + 4.0) - (4.0 * a) * l2 + l2 * l2 - 4.0 * l2 - (4.0 * c * c) * l2;
}
}  // namespace

TEST_CASE("plane-wave seed constraint") {
    CHECK(make_plane_wave_seed(-2, 1).b == -1.0);
    CHECK(make_plane_wave_seed(0, 0).b == -2.0);
    CHECK(make_plane_wave_seed(-2, 1).Q(0, 0) == cd(1.0));
    CHECK_THROWS_AS(make_plane_wave_seed(-2, 1, 0.0), Error);
    CHECK_THROWS_AS(make_zero_seed(0.0), Error);
    for (double a : {-2.0, 0.3, 1.7})
        for (double c : {0.5, 1.0})
            for (double al : {0.5, 1.0, 2.0}) {
                const Seed s = make_plane_wave_seed(a, c, al);
                CHECK(s.b == -al * c * c * a - 2 - a * a - 2 * a - al * c * c);
            }
}

TEST_CASE("zero-seed eigenfunction") {
    const SpectralDatum d = zero_seed_eigenfunction(cd(1, 2));
    auto [phi0, vphi0] = d(0, 0);
    CHECK(phi0 == cd(1.0));
    CHECK(vphi0 == cd(1.0));
    auto [phi1, vphi1] = d(1, 0);
    CHECK(std::abs(phi1 - std::exp(cd(1.0, 0.75))) < 1e-14 * std::abs(phi1));
    CHECK_THROWS_AS(zero_seed_eigenfunction(cd(0.0)), Error);

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 100; ++k) {
        const SpectralDatum e = zero_seed_eigenfunction(cd(u(rng), u(rng)) * 1.5 + cd(1e-3, 0));
        const double x = u(rng), t = u(rng);
        auto [p, v] = e(x, t);
        CHECK(std::abs(p * v - 1.0) < 1e-14);
    }
}

TEST_CASE("s(lambda) re-squares to the radicand") {
    const Seed s = make_plane_wave_seed(-2, 1);
    CHECK(std::abs(branch_s(cd(1, 1), s)) < 1e-12);
    const cd l(0.5, 1.0);
    CHECK(std::abs(branch_s(l, s) - std::sqrt(l * l * l * l + 4.0)) < 1e-14);

    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (const auto& [a, c] : {std::pair{-2.0, 1.0}, std::pair{0.4, 0.7}}) {
        const Seed seed = make_plane_wave_seed(a, c);
        for (int k = 0; k < 100; ++k) {
            const cd lam(u(rng), u(rng));
            const cd s2 = branch_s(lam, seed) * branch_s(lam, seed), r = radicand(lam, a, c);
            CHECK(std::abs(s2 - r) <= 1e-12 * std::max(1.0, std::abs(r)));
        }
    }
}

TEST_CASE("plane-wave eigenfunction is linear in the weights") {
    const Seed s = make_plane_wave_seed(-2, 1);
    const cd l(0.5, 1.0), D1(0.3, -1.1), D2(-0.7, 0.4);
    const SpectralDatum w = plane_wave_eigenfunction(l, s, D1, D2), e1 = plane_wave_eigenfunction(l, s, 1.0, 0.0),
                        e2 = plane_wave_eigenfunction(l, s, 0.0, 1.0), z = plane_wave_eigenfunction(l, s, 0.0, 0.0);
    for (double x : {-1.5, 0.0, 2.0})
        for (double t : {-0.5, 0.0, 1.0}) {
            auto [p, v] = w(x, t);
            auto [p1, v1] = e1(x, t);
            auto [p2, v2] = e2(x, t);
            CHECK(std::abs(p - (D1 * p1 + D2 * p2)) < 1e-12 * std::max(1.0, std::abs(p)));
            CHECK(std::abs(v - (D1 * v1 + D2 * v2)) < 1e-12 * std::max(1.0, std::abs(v)));
            auto [pz, vz] = z(x, t);
            CHECK(std::abs(pz) == 0.0);
            CHECK(std::abs(vz) == 0.0);
        }
    auto [p0, v0] = plane_wave_eigenfunction(l, s)(0, 0);
    CHECK(is_finite(p0));
    CHECK(is_finite(v0));
    CHECK_THROWS_AS(plane_wave_eigenfunction(l, make_plane_wave_seed(-2, 0)), Error);
}

TEST_CASE("Lax matrices") {
    const cd l(1, 2);
    const Seed z = make_zero_seed();
    const LaxPair p = lax_matrices(z, QJet{}, l, 0.3, -0.2);
    CHECK(std::abs(p.U(0, 0) + I * l * l / 4.0) < 1e-15);
    CHECK(std::abs(p.U(1, 1) - I * l * l / 4.0) < 1e-15);
    CHECK(p.U(0, 1) == cd(0.0));
    CHECK(std::abs(p.V(0, 0) - I * l * l * l * l / 8.0) < 1e-14);
    CHECK(std::abs(p.V(1, 1) + I * l * l * l * l / 8.0) < 1e-14);

    const Seed pw = make_plane_wave_seed(-2, 1);
    const LaxPair q = lax_matrices(pw, pw.jet(0, 0), cd(1, 1), 0, 0);
    CHECK(std::abs(q.U(0, 1)) == doctest::Approx(std::sqrt(2.0) / 2));
    CHECK(std::abs(q.U(1, 0)) == doctest::Approx(std::sqrt(2.0) / 2));
}

TEST_CASE("exact Lax residuals") {
    const Seed z = make_zero_seed();
    const SpectralDatum d = zero_seed_eigenfunction(cd(1, 2));
    auto [rx, rt] = exact_lax_residual(d, z, 0.4, -0.3);
    CHECK(rx < 1e-13);
    CHECK(rt < 1e-13);

    for (double alpha : {1.0, 2.0, 0.5}) {
        const Seed s = make_plane_wave_seed(-2, 1, alpha);
        const SpectralDatum e = plane_wave_eigenfunction(cd(0.5, 1.0), s);
        for (double x : {-1.0, 0.5})
            for (double t : {-0.7, 0.2}) {
                auto [ex, et] = exact_lax_residual(e, s, x, t);
                CHECK(ex < 1e-12);
                CHECK(et < 1e-12);
            }
    }
}

TEST_CASE("finite-difference Lax residual converges at order two") {
    const Grid2D g = Grid2D::make(-2, 2, 201, -1, 1, 101);
    const LaxResidualReport z = check_lax_residual(zero_seed_eigenfunction(cd(1, 2)), make_zero_seed(), g);
    CHECK(z.x_equation.estimated_order == doctest::Approx(2.0).epsilon(0.1));
    CHECK(z.t_equation.estimated_order == doctest::Approx(2.0).epsilon(0.1));

    const Seed s = make_plane_wave_seed(-2, 1);
    const LaxResidualReport p = check_lax_residual(plane_wave_eigenfunction(cd(0.5, 1.0), s), s, g);
    CHECK(p.x_equation.estimated_order == doctest::Approx(2.0).epsilon(0.1));
    CHECK(p.t_equation.estimated_order == doctest::Approx(2.0).epsilon(0.1));
}
