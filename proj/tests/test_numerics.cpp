#include <doctest.h>

#include <cmath>
#include <random>

#include "kdnls/numerics.hpp"

using namespace kdnls;

namespace {

// reference values split into double pairs with 200-bit mpmath
struct Ref {
    double hi, lo;
};

double dd_err(dd_real got, Ref r) {
    const dd_real d = got - dd_real{r.hi, r.lo};
    return std::fabs(d.hi) / std::fabs(r.hi);
}

cd cofactor_det(const ComplexMatrix& m) {
    const std::size_t n = m.order();
    if (n == 1) return m(0, 0);
    cd s = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
        ComplexMatrix minor(n - 1);
        for (std::size_t r = 1; r < n; ++r)
            for (std::size_t k = 0, kk = 0; k < n; ++k)
                if (k != c) minor(r - 1, kk++) = m(r, k);
        s += (c % 2 ? -1.0 : 1.0) * m(0, c) * cofactor_det(minor);
    }
    return s;
}

ComplexMatrix random_matrix(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> r(0.0, 1.0), a(0.0, 2 * M_PI);
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = std::polar(r(rng), a(rng));
    return m;
}

}  // namespace

TEST_CASE("double-double constants against high precision references") {
    CHECK(dd_err(sqrt(dd_real{2.0, 0.0}), {1.41421356237309515e+00, -9.66729331345291345e-17}) < 1e-30);
    CHECK(dd_err(exp(dd_real{1.0, 0.0}), {2.71828182845904509e+00, 1.44564689172925016e-16}) < 1e-30);
    // argument is the double nearest -3.7
    CHECK(dd_err(exp(dd_real{-3.7, 0.0}), {2.47235264703393881e-02, -1.29485779472313797e-18}) < 1e-30);
    dd_real s, c;
    sincos(dd_real{1.0, 0.0}, s, c);
    CHECK(dd_err(s, {8.41470984807896505e-01, 1.77684509293553611e-18}) < 1e-30);
    CHECK(dd_err(c, {5.40302305868139765e-01, -4.76095461260441722e-17}) < 1e-30);
    CHECK(dd_err(dd_real{1.0, 0.0} / dd_real{3.0, 0.0}, {3.33333333333333315e-01, 1.85037170770859413e-17}) < 1e-31);
    CHECK(dd_err(dd_const::pi, {3.14159265358979312e+00, 1.22464679914735321e-16}) == 0.0);
}

TEST_CASE("complex double-double round trip") {
    const dd_complex z{{0.3, 0.0}, {-1.2, 0.0}};
    const dd_complex w = z * z / z;
    CHECK(std::abs(to_cd(w) - to_cd(z)) < 1e-30);
    const dd_complex r = sqrt(z);
    CHECK(std::abs(to_cd(r * r) - cd(0.3, -1.2)) < 1e-15);
}

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(Grid2D::make(1, -1, 10, 0, 1, 10), Error);
    CHECK_THROWS_AS(Grid2D::make(0, 1, 1, 0, 1, 10), Error);
    const Grid2D g = Grid2D::make(-1, 1, 5, 0, 2, 3);
    CHECK(g.hx() == doctest::Approx(0.5));
    CHECK(g.x(4) == 1.0);
    const Grid2D r = g.refined();
    CHECK(r.nx == 9);
    CHECK(r.nt == 5);
}

TEST_CASE("sample flags non-finite values") {
    const Grid2D g = Grid2D::make(-1, 1, 5, -1, 1, 5);
    const ComplexField2D z = sample([](double, double) { return cd(0.0); }, g);
    for (const cd& v : z.values()) CHECK(v == cd(0.0));
    const ComplexField2D w = sample([](double x, double t) { return std::exp(cd(0, 2 * x + t)); }, g);
    CHECK(std::abs(w(2, 2) - cd(1.0)) == 0.0);
    const ComplexField2D n = sample([](double x, double) { return x == 0.0 ? cd(NAN) : cd(1.0); }, g);
    CHECK(n.count_flagged(kNonFinite) == 5);
}

TEST_CASE("central differences") {
    SUBCASE("first derivative of exp(ix)") {
        const Grid2D g = Grid2D::make(-1, 1, 401, 0, 1, 5);
        const ComplexField2D f = sample([](double x, double) { return std::exp(cd(0, x)); }, g);
        const ComplexField2D d = central_diff(f, Axis::X, 1);
        double err = 0.0;
        for (std::size_t j = 0; j < g.nt; ++j)
            for (std::size_t i = 1; i + 1 < g.nx; ++i)
                err = std::max(err, std::abs(d(i, j) - cd(0, 1) * std::exp(cd(0, g.x(i)))));
        CHECK(err <= 1e-4);
    }
    SUBCASE("constant field") {
        const Grid2D g = Grid2D::make(0, 1, 11, 0, 1, 11);
        const ComplexField2D d = central_diff(sample([](double, double) { return cd(2, 3); }, g), Axis::T, 1);
        for (const cd& v : d.values()) CHECK(std::abs(v) < 1e-12);
    }
    SUBCASE("second derivative of x^2") {
        const Grid2D g = Grid2D::make(-2, 2, 41, 0, 1, 5);
        const ComplexField2D d = central_diff(sample([](double x, double) { return cd(x * x); }, g), Axis::X, 2);
        for (std::size_t j = 0; j < g.nt; ++j)
            for (std::size_t i = 0; i < g.nx; ++i) CHECK(std::abs(d(i, j) - 2.0) < 1e-8);
    }
    SUBCASE("order two on exp(kx)") {
        auto err = [](std::size_t n) {
            const Grid2D g = Grid2D::make(0, 1, n, 0, 1, 5);
            const ComplexField2D d = central_diff(sample([](double x, double) { return cd(std::exp(1.5 * x)); }, g),
                                                  Axis::X, 1);
            double e = 0.0;
            for (std::size_t i = 1; i + 1 < n; ++i) e = std::max(e, std::abs(d(i, 2) - 1.5 * std::exp(1.5 * g.x(i))));
            return e;
        };
        const double ratio = err(41) / err(81);
        CHECK(ratio >= 3.5);
        CHECK(ratio <= 4.5);
    }
    SUBCASE("too few samples") {
        const Grid2D g = Grid2D::make(0, 1, 4, 0, 1, 10);
        CHECK_THROWS_AS(central_diff(ComplexField2D(g), Axis::X, 1), Error);
    }
}

TEST_CASE("determinant") {
    CHECK(det_pivoted(ComplexMatrix(1, {cd(1)})).value == cd(1));
    CHECK(det_pivoted(ComplexMatrix(2, {cd(0), cd(1), cd(1), cd(0)})).value == cd(-1));
    CHECK_THROWS_AS(det_pivoted(ComplexMatrix(1, {cd(NAN)})), Error);

    std::mt19937_64 rng(7);
    for (std::size_t n = 1; n <= 4; ++n)
        for (int trial = 0; trial < 50; ++trial) {
            const ComplexMatrix m = random_matrix(n, rng);
            const cd ref = cofactor_det(m);
            CHECK(std::abs(det_pivoted(m).value - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
        }
}

TEST_CASE("determinant is multiplicative") {
    std::mt19937_64 rng(11);
    for (std::size_t n = 2; n <= 3; ++n)
        for (int trial = 0; trial < 100; ++trial) {
            const ComplexMatrix a = random_matrix(n, rng), b = random_matrix(n, rng);
            ComplexMatrix ab(n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    for (std::size_t k = 0; k < n; ++k) ab(i, j) += a(i, k) * b(k, j);
            const cd lhs = det_pivoted(ab).value, rhs = det_pivoted(a).value * det_pivoted(b).value;
            CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(std::abs(rhs), 1e-3));
        }
}

TEST_CASE("extended determinant agrees with double") {
    std::mt19937_64 rng(3);
    const ComplexMatrix m = random_matrix(4, rng);
    ExtComplexMatrix e(4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) e(i, j) = dd_complex{{m(i, j).real(), 0.0}, {m(i, j).imag(), 0.0}};
    CHECK(std::abs(to_cd(det_pivoted(e).value) - det_pivoted(m).value) < 1e-13);
}
