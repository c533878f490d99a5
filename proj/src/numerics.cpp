#include "kdnls/numerics.hpp"

#include <cmath>
#include <string>

namespace kdnls {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonFinite: return "NonFinite";
        case ErrorCode::GridTooSmall: return "GridTooSmall";
        case ErrorCode::InvalidGrid: return "InvalidGrid";
        case ErrorCode::ZeroCoupling: return "ZeroCoupling";
        case ErrorCode::ZeroEigenvalue: return "ZeroEigenvalue";
        case ErrorCode::ZeroAmplitude: return "ZeroAmplitude";
        case ErrorCode::DenominatorVanishes: return "DenominatorVanishes";
        case ErrorCode::SingularOmega: return "SingularOmega";
        case ErrorCode::ConditionBlowup: return "ConditionBlowup";
        case ErrorCode::DegeneratePair: return "DegeneratePair";
        case ErrorCode::DegenerateEigenvalue: return "DegenerateEigenvalue";
        case ErrorCode::InvalidDegeneration: return "InvalidDegeneration";
        case ErrorCode::AllNodesExcluded: return "AllNodesExcluded";
        case ErrorCode::GridMismatch: return "GridMismatch";
        case ErrorCode::ResolutionTooCoarse: return "ResolutionTooCoarse";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
        case ErrorCode::IOFailure: return "IOFailure";
        case ErrorCode::VerificationFailed: return "VerificationFailed";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

Grid2D Grid2D::make(double x_min, double x_max, std::size_t nx, double t_min, double t_max, std::size_t nt) {
    Grid2D g{x_min, x_max, t_min, t_max, nx, nt};
    g.validate();
    return g;
}

void Grid2D::validate() const {
    if (nx < 2 || nt < 2) throw Error(ErrorCode::InvalidGrid, "need at least 2 samples per axis");
    if (!(x_max > x_min) || !(t_max > t_min)) throw Error(ErrorCode::InvalidGrid, "empty window");
    if (!std::isfinite(x_min) || !std::isfinite(x_max) || !std::isfinite(t_min) || !std::isfinite(t_max))
        throw Error(ErrorCode::InvalidGrid, "non-finite window");
    if (!(hx() > 0.0) || !(ht() > 0.0)) throw Error(ErrorCode::InvalidGrid, "degenerate spacing");
}

Grid2D Grid2D::refined() const {
    return Grid2D{x_min, x_max, t_min, t_max, 2 * nx - 1, 2 * nt - 1};
}

ComplexField2D::ComplexField2D(const Grid2D& g) : grid_(g) {
    g.validate();
    values_.assign(g.size(), cd(0.0, 0.0));
    flags_.assign(g.size(), 0);
}

std::size_t ComplexField2D::count_flagged(std::uint8_t mask) const {
    std::size_t n = 0;
    for (auto f : flags_)
        if (f & mask) ++n;
    return n;
}

std::vector<double> ComplexField2D::intensity() const {
    std::vector<double> out(values_.size());
    for (std::size_t k = 0; k < values_.size(); ++k) out[k] = std::norm(values_[k]);
    return out;
}

ComplexField2D sample(const PointFunction& f, const Grid2D& grid) {
    ComplexField2D field(grid);
    for (std::size_t j = 0; j < grid.nt; ++j) {
        const double t = grid.t(j);
        for (std::size_t i = 0; i < grid.nx; ++i) {
            cd v = f(grid.x(i), t);
            if (!is_finite(v)) {
                field.set_flag(i, j, kNonFinite);
                v = cd(std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN());
            }
            field(i, j) = v;
        }
    }
    return field;
}

ComplexField2D central_diff(const ComplexField2D& field, Axis axis, int order) {
    if (order != 1 && order != 2) throw Error(ErrorCode::InvalidConfig, "derivative order must be 1 or 2");
    const Grid2D& g = field.grid();
    const std::size_t n = axis == Axis::X ? g.nx : g.nt;
    if (n < 5) throw Error(ErrorCode::GridTooSmall, "central_diff needs at least 5 samples along the axis");
    const double h = axis == Axis::X ? g.hx() : g.ht();
    const std::size_t m = axis == Axis::X ? g.nt : g.nx;

    ComplexField2D out(g);
    auto at = [&](std::size_t k, std::size_t l) -> std::pair<cd, bool> {
        std::size_t i = axis == Axis::X ? k : l;
        std::size_t j = axis == Axis::X ? l : k;
        return {field(i, j), (field.flags(i, j) & kNonFinite) == 0};
    };

    for (std::size_t l = 0; l < m; ++l) {
        for (std::size_t k = 0; k < n; ++k) {
            // stencil offsets and weights, pre-scaled by h^order
            int base;
            const double* w;
            int len;
            static const double c1[3] = {-0.5, 0.0, 0.5};
            static const double f1[3] = {-1.5, 2.0, -0.5};
            static const double b1[3] = {0.5, -2.0, 1.5};
            static const double c2[3] = {1.0, -2.0, 1.0};
            static const double f2[4] = {2.0, -5.0, 4.0, -1.0};
            static const double b2[4] = {-1.0, 4.0, -5.0, 2.0};
            bool boundary = false;
            if (order == 1) {
                len = 3;
                if (k == 0) {
                    base = 0;
                    w = f1;
                    boundary = true;
                } else if (k + 1 == n) {
                    base = int(n) - 3;
                    w = b1;
                    boundary = true;
                } else {
                    base = int(k) - 1;
                    w = c1;
                }
            } else {
                if (k == 0) {
                    len = 4;
                    base = 0;
                    w = f2;
                    boundary = true;
                } else if (k + 1 == n) {
                    len = 4;
                    base = int(n) - 4;
                    w = b2;
                    boundary = true;
                } else {
                    len = 3;
                    base = int(k) - 1;
                    w = c2;
                }
            }
            cd acc(0.0, 0.0);
            bool ok = true;
            for (int s = 0; s < len; ++s) {
                if (w[s] == 0.0) continue;
                auto [v, good] = at(std::size_t(base + s), l);
                if (!good) {
                    ok = false;
                    break;
                }
                acc += w[s] * v;
            }
            const std::size_t i = axis == Axis::X ? k : l;
            const std::size_t j = axis == Axis::X ? l : k;
            if (!ok) {
                out(i, j) = cd(std::numeric_limits<double>::quiet_NaN(), 0.0);
                out.set_flag(i, j, kNonFinite);
                continue;
            }
            out(i, j) = order == 1 ? acc / h : acc / (h * h);
            if (boundary) out.set_flag(i, j, kBoundary);
        }
    }
    // inherit boundary marks from the input so chained derivatives stay honest
    for (std::size_t j = 0; j < g.nt; ++j)
        for (std::size_t i = 0; i < g.nx; ++i)
            if (field.flags(i, j) & kBoundary) out.set_flag(i, j, kBoundary);
    return out;
}

}  // namespace kdnls
