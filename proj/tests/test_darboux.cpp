#include <doctest.h>

#include <cmath>

#include "kdnls/catalog.hpp"
#include "kdnls/darboux.hpp"
#include "kdnls/verify.hpp"

using namespace kdnls;

TEST_CASE("reduced set construction") {
    const Seed z = make_zero_seed();
    const SpectralSet s = build_reduced_set({cd(1, 2)}, z);
    REQUIRE(s.data.size() == 2);
    CHECK(s.reduction);
    CHECK(s.data[1].lambda == cd(1, -2));
    for (double x : {-1.0, 0.0, 0.7}) {
        CHECK(std::abs(s.data[1](x, 0.3).first - std::conj(s.data[0](x, 0.3).second)) < 1e-15);
        CHECK(std::abs(s.data[1](x, 0.3).second - std::conj(s.data[0](x, 0.3).first)) < 1e-15);
    }
    CHECK(build_reduced_set({cd(0.7, 0.3), cd(0.5, 0.5)}, z).order() == 2);

    CHECK_THROWS_AS(build_reduced_set({cd(1, 0)}, z), Error);
    CHECK_THROWS_AS(build_reduced_set({cd(0, 1)}, z), Error);
    CHECK_THROWS_AS(build_reduced_set({cd(1, 1), cd(1, -1)}, z), Error);
    CHECK_THROWS_AS(build_reduced_set({cd(1, 1)}, make_plane_wave_seed(-2, 1)), Error);
    CHECK_THROWS_AS(build_reduced_set({cd(1, 2)}, z, {{1.0, 1.0}, {1.0, 1.0}}), Error);
}

TEST_CASE("one-fold and n-fold agree for n = 1") {
    for (const Seed& seed : {make_zero_seed(), make_plane_wave_seed(-2, 1)}) {
        const cd l = seed.kind == SeedKind::Zero ? cd(1, 2) : cd(0.5, 0.5);
        const SpectralSet set = build_reduced_set({l}, seed);
        const DTOutput a = one_fold(set, seed), b = n_fold(set, seed);
        for (double x = -3; x <= 3; x += 0.75)
            for (double t = -2; t <= 2; t += 0.5) {
                const cd qa = a.Q_new(x, t), qb = b.Q_new(x, t);
                CHECK(std::abs(qa - qb) <= 1e-10 * std::max(1.0, std::abs(qa)));
            }
    }
}

TEST_CASE("one-soliton from the engine") {
    const Seed z = make_zero_seed();
    const DTOutput out = n_fold(build_reduced_set({cd(1, 2)}, z), z);
    const Grid2D g = Grid2D::make(-3, 3, 101, -2, 2, 101);
    const FieldError e = compare_fields(sample(out.as_function(), g), sample(one_soliton(1, 2).eval, g),
                                        CompareMode::Intensity);
    CHECK(e.max_err <= 1e-9);
    CHECK(e.compared == g.size());
}

TEST_CASE("breather from the engine matches the closed form") {
    const Seed pw = make_plane_wave_seed(-2, 1);
    const DTOutput out = n_fold(build_reduced_set({cd(0.5, 0.5)}, pw), pw);
    const CatalogEntry b = breather();
    double worst = 0.0;
    for (double x = -5; x <= 5; x += 0.25)
        for (double t = -5; t <= 5; t += 0.25) {
            const double ib = std::norm(b(x, t));
            worst = std::max(worst, std::abs(std::norm(out.Q_new(x, t)) - ib) / ib);
        }
    CHECK(worst <= 1e-5);
}

TEST_CASE("companion field obeys the reduction") {
    const Seed z = make_zero_seed();
    const DTOutput out = n_fold(build_reduced_set({cd(0.7, 0.3), cd(0.5, 0.5)}, z), z);
    for (double x : {-4.0, 0.0, 3.5})
        for (double t : {-2.0, 1.0}) {
            const cd q = out.Q_new(x, t);
            CHECK(std::abs(out.R_new(x, t) + std::conj(q)) <= 1e-8 * std::max(1.0, std::abs(q)));
        }
}

TEST_CASE("degenerate set validation") {
    const Seed pw = make_plane_wave_seed(-2, 1);
    DegenerationSpec spec{cd(1, 1), 1e-2, 2, {}, {}};
    const SpectralSet s = degenerate_set(spec, pw);
    CHECK(s.data.size() == 4);
    CHECK(std::abs(s.data[0].lambda - cd(1, 1) * 1.01) < 1e-15);
    CHECK(std::abs(s.data[2].lambda - cd(1, 1) * 0.99) < 1e-15);

    spec.n = 4;
    CHECK_THROWS_AS(degenerate_set(spec, pw), Error);
    spec.n = 2;
    spec.epsilon = 0.5;
    CHECK_THROWS_AS(degenerate_set(spec, pw), Error);
    spec.epsilon = 1e-2;
    spec.offsets = {cd(1, 0), cd(0.5, 0)};
    CHECK_THROWS_AS(degenerate_set(spec, pw), Error);
    spec.offsets = {cd(1, 0)};
    CHECK_THROWS_AS(degenerate_set(spec, pw), Error);
}

TEST_CASE("critical eigenvalue of the a = -2, c = 1 background") {
    const cd l = critical_eigenvalue(make_plane_wave_seed(-2, 1));
    CHECK(std::abs(l - cd(1, 1)) < 1e-12);
}

TEST_CASE("first-order rogue wave from the degenerate limit") {
    const Seed pw = make_plane_wave_seed(-2, 1);
    DTOptions opt;
    opt.precision = Precision::Extended;
    const DTOutput out = degenerate_limit({cd(1, 1), 1e-4, 1, {}, {}}, pw, opt);
    const CatalogEntry r = rogue1();
    double worst = 0.0;
    for (double x = -2; x <= 2; x += 1)
        for (double t = -2; t <= 2; t += 1) worst = std::max(worst, std::abs(std::norm(out.Q_new(x, t)) - std::norm(r(x, t))));
    // the error is linear in epsilon with slope about 12
    CHECK(worst < 2e-3);
    CHECK(std::norm(out.Q_new(0, 0)) == doctest::Approx(9.0).epsilon(1e-3));
}

TEST_CASE("positon from the degenerate limit") {
    const Seed z = make_zero_seed();
    const CatalogEntry p = positon(0.8, 0.8);
    auto err = [&](double eps) {
        const DTOutput out = degenerate_limit({cd(0.8, 0.8), eps, 2, {}, {}}, z);
        double w = 0.0;
        for (double x = -10; x <= 10; x += 0.5)
            for (double t = -10; t <= 10; t += 0.5) w = std::max(w, std::abs(std::norm(out.Q_new(x, t)) - std::norm(p(x, t))));
        return w;
    };
    CHECK(err(1e-2) / err(1e-3) >= 5.0);
}

TEST_CASE("one-fold companion obeys the reduction") {
    const Seed pw = make_plane_wave_seed(-2, 1);
    const DTOutput out = one_fold(build_reduced_set({cd(0.5, 0.5)}, pw), pw);
    for (double x : {-2.0, 0.5})
        for (double t : {-1.0, 0.7}) {
            const cd q = out.Q_new(x, t);
            CHECK(std::abs(out.R_new(x, t) + std::conj(q)) <= 1e-10 * std::max(1.0, std::abs(q)));
        }
}
