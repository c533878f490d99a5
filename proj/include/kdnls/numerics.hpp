#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "kdnls/ddouble.hpp"
#include "kdnls/errors.hpp"

namespace kdnls {

using cd = std::complex<double>;

struct Grid2D {
    double x_min = -1.0, x_max = 1.0;
    double t_min = -1.0, t_max = 1.0;
    std::size_t nx = 2, nt = 2;

    // Throws InvalidGrid when the invariants do not hold.
    static Grid2D make(double x_min, double x_max, std::size_t nx, double t_min, double t_max, std::size_t nt);
    void validate() const;

    double hx() const { return (x_max - x_min) / double(nx - 1); }
    double ht() const { return (t_max - t_min) / double(nt - 1); }
    double x(std::size_t i) const { return i + 1 == nx ? x_max : x_min + double(i) * hx(); }
    double t(std::size_t j) const { return j + 1 == nt ? t_max : t_min + double(j) * ht(); }
    std::size_t size() const { return nx * nt; }

    // Same window, step sizes halved.
    Grid2D refined() const;

    bool operator==(const Grid2D& o) const = default;
};

enum NodeFlag : std::uint8_t {
    kNonFinite = 1,
    kBoundary = 2,
};

enum class Axis { X, T };

// Values are stored row-major with x varying fastest: index = j * nx + i.
class ComplexField2D {
public:
    ComplexField2D() = default;
    explicit ComplexField2D(const Grid2D& g);

    const Grid2D& grid() const { return grid_; }
    std::size_t index(std::size_t i, std::size_t j) const { return j * grid_.nx + i; }

    cd& operator()(std::size_t i, std::size_t j) { return values_[index(i, j)]; }
    const cd& operator()(std::size_t i, std::size_t j) const { return values_[index(i, j)]; }

    std::uint8_t flags(std::size_t i, std::size_t j) const { return flags_[index(i, j)]; }
    void set_flag(std::size_t i, std::size_t j, std::uint8_t f) { flags_[index(i, j)] |= f; }
    bool usable(std::size_t i, std::size_t j) const { return flags(i, j) == 0; }

    const std::vector<cd>& values() const { return values_; }
    std::vector<cd>& values() { return values_; }
    const std::vector<std::uint8_t>& flag_data() const { return flags_; }

    std::size_t count_flagged(std::uint8_t mask) const;
    std::vector<double> intensity() const;

private:
    Grid2D grid_;
    std::vector<cd> values_;
    std::vector<std::uint8_t> flags_;
};

using PointFunction = std::function<cd(double, double)>;

// Pointwise evaluation; non-finite results are flagged, not thrown.
ComplexField2D sample(const PointFunction& f, const Grid2D& grid);

// Second-order central stencils inside, second-order one-sided stencils on the
// two boundary layers (flagged kBoundary). Non-finite inputs poison every output
// whose stencil touches them.
ComplexField2D central_diff(const ComplexField2D& field, Axis axis, int order);

template <class C>
class BasicMatrix {
public:
    BasicMatrix() = default;
    explicit BasicMatrix(std::size_t n) : n_(n), a_(n * n, C(0.0)) {}
    BasicMatrix(std::size_t n, std::vector<C> entries) : n_(n), a_(std::move(entries)) {
        if (a_.size() != n * n) throw Error(ErrorCode::InvalidConfig, "matrix entry count does not match order");
    }

    std::size_t order() const { return n_; }
    C& operator()(std::size_t r, std::size_t c) { return a_[r * n_ + c]; }
    const C& operator()(std::size_t r, std::size_t c) const { return a_[r * n_ + c]; }

private:
    std::size_t n_ = 0;
    std::vector<C> a_;
};

using ComplexMatrix = BasicMatrix<cd>;
using ExtComplexMatrix = BasicMatrix<dd_complex>;

template <class C>
struct LuDeterminant {
    C value{0.0};
    // largest over smallest pivot magnitude; infinity for an exactly singular matrix
    double pivot_ratio = 0.0;
};

// Row elimination with partial pivoting on complex magnitude.
template <class C>
LuDeterminant<C> det_pivoted(BasicMatrix<C> m) {
    const std::size_t n = m.order();
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            if (!is_finite(m(r, c))) throw Error(ErrorCode::NonFinite, "non-finite matrix entry");

    LuDeterminant<C> out;
    if (n == 0) {
        out.value = C(1.0);
        out.pivot_ratio = 1.0;
        return out;
    }
    C d(1.0);
    double pmax = 0.0, pmin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = mag(m(k, k));
        for (std::size_t r = k + 1; r < n; ++r) {
            double v = mag(m(r, k));
            if (v > best) {
                best = v;
                p = r;
            }
        }
        if (best == 0.0) {
            out.value = C(0.0);
            out.pivot_ratio = std::numeric_limits<double>::infinity();
            return out;
        }
        if (p != k) {
            for (std::size_t c = k; c < n; ++c) std::swap(m(k, c), m(p, c));
            d = -d;
        }
        pmax = std::max(pmax, best);
        pmin = std::min(pmin, best);
        const C piv = m(k, k);
        d = d * piv;
        for (std::size_t r = k + 1; r < n; ++r) {
            const C f = m(r, k) / piv;
            for (std::size_t c = k + 1; c < n; ++c) m(r, c) = m(r, c) - f * m(k, c);
        }
    }
    out.value = d;
    out.pivot_ratio = pmax / pmin;
    return out;
}

template <class C>
C det(const BasicMatrix<C>& m) {
    return det_pivoted(m).value;
}

// Laplace expansion along the first row; reference implementation for tests.
template <class C>
C det_cofactor(const BasicMatrix<C>& m) {
    const std::size_t n = m.order();
    if (n == 0) return C(1.0);
    if (n == 1) return m(0, 0);
    C sum(0.0);
    for (std::size_t c = 0; c < n; ++c) {
        BasicMatrix<C> minor(n - 1);
        for (std::size_t r = 1; r < n; ++r) {
            std::size_t cc = 0;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) minor(r - 1, cc++) = m(r, k);
        }
        C term = m(0, c) * det_cofactor(minor);
        sum = (c % 2 == 0) ? sum + term : sum - term;
    }
    return sum;
}

}  // namespace kdnls
