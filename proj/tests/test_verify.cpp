#include <doctest.h>

#include <cmath>

#include "kdnls/catalog.hpp"
#include "kdnls/verify.hpp"

using namespace kdnls;

namespace {

PointFunction bumps(std::vector<std::pair<double, double>> centres, double height = 9.0, double width = 0.5) {
    return [=](double x, double t) {
        double v = 1.0;
        for (const auto& [cx, ct] : centres)
            v += (height - 1.0) * std::exp(-((x - cx) * (x - cx) + (t - ct) * (t - ct)) / (width * width));
        return cd(std::sqrt(v), 0.0);
    };
}

}  // namespace

TEST_CASE("convention pin-down is decisive") {
    const PinDownResult r = pin_down_convention(make_plane_wave_seed(-2, 1));
    CHECK(r.passing == 1);
    REQUIRE(r.selected.has_value());
    CHECK(r.selected->nonlinear_sign == +1);
    CHECK(r.selected->v_conjugation == VConjugation::GIndependent);
    CHECK(r.scores.size() == 4);
}

TEST_CASE("residual of exact solutions") {
    const Grid2D g = Grid2D::make(-2, 2, 41, -2, 2, 41);
    const ConventionVariant v{+1, VConjugation::GIndependent};
    const ResidualReport s = seed_pde_residual(make_plane_wave_seed(-2, 1), v, g);
    for (const ResidualNorm& n : s.norms) CHECK(n.max_residual <= 1e-10);
    for (const ConventionVariant& w : ConventionVariant::all()) {
        const ResidualReport z = pde_residual([](double, double) { return cd(0.0); }, make_zero_seed(), w, g);
        for (const ResidualNorm& n : z.norms) CHECK(n.max_residual == 0.0);
    }
}

TEST_CASE("residual excludes poles and reports all-excluded grids") {
    const ConventionVariant v{+1, VConjugation::GIndependent};
    const Grid2D g = Grid2D::make(-1, 1, 11, -1, 1, 11);
    CHECK_THROWS_AS(pde_residual([](double, double) { return cd(NAN); }, make_zero_seed(), v, g), Error);
    const Seed pw = make_plane_wave_seed(-2, 1);
    const ResidualReport r = pde_residual(
        [&](double x, double t) { return std::abs(x) < 1e-12 && std::abs(t) < 1e-12 ? cd(NAN) : pw.Q(x, t); }, pw, v,
        g);
    CHECK(r.excluded_nodes > 0);
    for (const ResidualNorm& n : r.norms) CHECK(std::isfinite(n.max_residual));
}

TEST_CASE("field comparison modes") {
    const Grid2D g = Grid2D::make(-3, 3, 31, -2, 2, 21);
    const ComplexField2D b = sample(one_soliton(1, 2).eval, g);
    ComplexField2D a = b;
    for (cd& v : a.values()) v *= std::polar(1.0, M_PI / 3);
    for (CompareMode m : {CompareMode::Intensity, CompareMode::ModulusOfDifference, CompareMode::UpToGlobalPhase}) {
        const FieldError e = compare_fields(b, b, m);
        CHECK(e.max_err == 0.0);
        CHECK(e.mean_err == 0.0);
    }
    CHECK(compare_fields(a, b, CompareMode::UpToGlobalPhase).max_err < 1e-12);
    CHECK(compare_fields(a, b, CompareMode::Intensity).max_err < 1e-12);
    CHECK(compare_fields(a, b, CompareMode::ModulusOfDifference).max_err > 0.1);
    CHECK_THROWS_AS(compare_fields(a, sample(one_soliton(1, 2).eval, Grid2D::make(-3, 3, 31, -2, 2, 11)),
                                   CompareMode::Intensity),
                    Error);
}

TEST_CASE("convergence study of a constant family") {
    const Grid2D g = Grid2D::make(-1, 1, 11, -1, 1, 11);
    const ComplexField2D ref = sample([](double, double) { return cd(1.0, 0.5); }, g);
    const ConvergenceStudy s = convergence_study([&](double) { return ref; }, ref, {1e-1, 1e-2});
    for (const ConvergencePoint& p : s.points) CHECK(p.max_intensity_err == 0.0);
    CHECK_THROWS_AS(convergence_study([&](double) { return ref; }, ref, {1e-2, 1e-1}), Error);
}

TEST_CASE("peaks of the first-order rogue wave") {
    const ComplexField2D f = sample(rogue1().eval, Grid2D::make(-4, 4, 401, -4, 4, 401));
    const PeakSet p = peak_analysis(f);
    REQUIRE(p.peaks.size() == 1);
    CHECK(p.peaks[0].height == doctest::Approx(9.0).epsilon(0.05 / 9));
    CHECK(std::abs(p.peaks[0].x) <= 0.02);
    CHECK(std::abs(p.peaks[0].t) <= 0.02);
    CHECK(p.classification == PatternClass::Fundamental);
    CHECK(p.background == doctest::Approx(1.0).epsilon(0.2));
}

TEST_CASE("pattern classes on synthetic humps") {
    const Grid2D g = Grid2D::make(-10, 10, 201, -10, 10, 201);
    SUBCASE("triangle") {
        PeakOptions o;
        o.order = 2;
        const PeakSet p = peak_analysis(sample(bumps({{0, 5}, {-4, -3}, {4, -3}}), g), o);
        CHECK(p.peaks.size() == 3);
        CHECK(p.classification == PatternClass::Triangular);
    }
    SUBCASE("three collinear humps are not a triangle") {
        PeakOptions o;
        o.order = 2;
        const PeakSet p = peak_analysis(sample(bumps({{-5, 0}, {0, 0}, {5, 0}}), g), o);
        CHECK(p.classification == PatternClass::Unclassified);
    }
    SUBCASE("pentagon with a centre") {
        std::vector<std::pair<double, double>> c = {{0, 0}};
        for (int k = 0; k < 5; ++k) c.push_back({6 * std::cos(0.3 + 2 * M_PI * k / 5), 6 * std::sin(0.3 + 2 * M_PI * k / 5)});
        const PeakSet p = peak_analysis(sample(bumps(c), g));
        CHECK(p.classification == PatternClass::Ring);
        CHECK(p.ring_count == 5);
        CHECK(p.has_center);
    }
    SUBCASE("irregular five") {
        const PeakSet p = peak_analysis(sample(bumps({{6, 0}, {5, 3}, {-6, 1}, {0, -6}, {1, 6}}), g));
        CHECK(p.classification == PatternClass::Unclassified);
    }
    SUBCASE("coarse grid") {
        const Grid2D c = Grid2D::make(-10, 10, 41, -10, 10, 41);
        CHECK_THROWS_AS(peak_analysis(sample(bumps({{0, 0}}, 9.0, 0.3), c)), Error);
    }
}

TEST_CASE("peak positions move with translations") {
    const Grid2D g = Grid2D::make(-10, 10, 201, -10, 10, 201);
    const PeakSet a = peak_analysis(sample(bumps({{0, 5}, {-4, -3}, {4, -3}}), g));
    const PeakSet b = peak_analysis(sample(bumps({{1.5, 3}, {-2.5, -5}, {5.5, -5}}), g));
    REQUIRE(a.peaks.size() == b.peaks.size());
    auto key = [](const Peak& p) { return std::pair{p.x, p.t}; };
    std::vector<std::pair<double, double>> pa, pb;
    for (const Peak& p : a.peaks) pa.push_back(key(p));
    for (const Peak& p : b.peaks) pb.push_back({p.x - 1.5, p.t + 2});
    std::sort(pa.begin(), pa.end());
    std::sort(pb.begin(), pb.end());
    for (std::size_t k = 0; k < pa.size(); ++k) {
        CHECK(pa[k].first == doctest::Approx(pb[k].first));
        CHECK(pa[k].second == doctest::Approx(pb[k].second));
    }
}
