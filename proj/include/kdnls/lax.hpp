#pragma once

#include <array>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "kdnls/ddouble.hpp"
#include "kdnls/numerics.hpp"

namespace kdnls {

// theta(x,t) = p x + q t
struct Gauge {
    double p = 1.0;
    double q = 1.0;
    double at(double x, double t) const { return p * x + q * t; }
};

enum class SeedKind { Zero, PlaneWave };

struct QJet {
    cd Q, Qx, Qxx, Qt;
};

struct Seed {
    SeedKind kind = SeedKind::Zero;
    double a = 0.0;  // wavenumber of rho = a x + b t
    double b = 0.0;  // derived from the dispersion constraint
    double c = 0.0;  // amplitude
    double alpha = 1.0;
    Gauge theta;

    cd Q(double x, double t) const;
    QJet jet(double x, double t) const;
    // wavenumber and frequency of q = Q e^{i theta}
    double k() const { return a + theta.p; }
    double omega() const { return b + theta.q; }
};

Seed make_zero_seed(double alpha = 1.0, double theta_p = 1.0, double theta_q = 1.0);
// b = -alpha c^2 a - 2 - a^2 - 2a - alpha c^2 for theta = x + t; the general
// affine gauge replaces (1, 1) by (p, q).
Seed make_plane_wave_seed(double a, double c, double alpha = 1.0, double theta_p = 1.0, double theta_q = 1.0);

struct PhasePolynomial {
    double S0 = 0.0, S1 = 0.0, S2 = 0.0;
    template <class C>
    C at(const C& eps) const {
        return C(S0) + C(S1) * eps + C(S2) * eps * eps;
    }
};

// sum_k coef_k exp(kx_k x + kt_k t); closed under d/dx, d/dt and conjugation
template <class C>
struct ExpSum {
    struct Term {
        C coef, kx, kt;
    };
    std::vector<Term> terms;

    C value(double x, double t) const {
        C s(0.0);
        for (const auto& e : terms) s += e.coef * exp(e.kx * C(x) + e.kt * C(t));
        return s;
    }
    C dx(double x, double t) const {
        C s(0.0);
        for (const auto& e : terms) s += e.coef * e.kx * exp(e.kx * C(x) + e.kt * C(t));
        return s;
    }
    C dt(double x, double t) const {
        C s(0.0);
        for (const auto& e : terms) s += e.coef * e.kt * exp(e.kx * C(x) + e.kt * C(t));
        return s;
    }
    ExpSum conjugated() const {
        ExpSum out;
        for (const auto& e : terms) out.terms.push_back({conj(e.coef), conj(e.kx), conj(e.kt)});
        return out;
    }
    ExpSum scaled(const C& f) const {
        ExpSum out = *this;
        for (auto& e : out.terms) e.coef = e.coef * f;
        return out;
    }
    void append(const ExpSum& o) { terms.insert(terms.end(), o.terms.begin(), o.terms.end()); }
};

enum class Provenance { ZeroSeed, PlaneWaveSeed };

// Eigenvalue with its two eigenfunction components (phi, varphi). Both are
// held as exponential sums in double and in double-double precision so the
// same datum can feed either arithmetic.
struct SpectralDatum {
    cd lambda;
    dd_complex lambda_ext;
    Provenance provenance = Provenance::ZeroSeed;
    cd D1{1.0, 0.0}, D2{1.0, 0.0};
    bool mirrored = false;

    ExpSum<cd> phi, varphi;
    ExpSum<dd_complex> phi_ext, varphi_ext;

    std::pair<cd, cd> operator()(double x, double t) const { return {phi.value(x, t), varphi.value(x, t)}; }
    std::pair<cd, cd> dx(double x, double t) const { return {phi.dx(x, t), varphi.dx(x, t)}; }
    std::pair<cd, cd> dt(double x, double t) const { return {phi.dt(x, t), varphi.dt(x, t)}; }

    template <class C>
    std::pair<C, C> eval(double x, double t) const;

    // Multiply both components by one constant.
    SpectralDatum scaled(cd f) const;
};

template <>
inline std::pair<cd, cd> SpectralDatum::eval<cd>(double x, double t) const {
    return (*this)(x, t);
}
template <>
inline std::pair<dd_complex, dd_complex> SpectralDatum::eval<dd_complex>(double x, double t) const {
    return {phi_ext.value(x, t), varphi_ext.value(x, t)};
}

// phi = exp(-(i/8)(2 lambda^2 x - lambda^4 t)), varphi = 1/phi
SpectralDatum zero_seed_eigenfunction(cd lambda);
SpectralDatum zero_seed_eigenfunction(const dd_complex& lambda);

// Principal-branch s(lambda) for a plane-wave seed.
cd branch_s(cd lambda, const Seed& seed);
dd_complex branch_s(const dd_complex& lambda, const Seed& seed);

// Weighted superposition D1 f1 + D2 f2 + D2 f1*(conj lambda) + D1 f2*(conj lambda),
// components of the starred terms swapped.
SpectralDatum plane_wave_eigenfunction(cd lambda, const Seed& seed, cd D1 = 1.0, cd D2 = 1.0);
SpectralDatum plane_wave_eigenfunction(const dd_complex& lambda, const Seed& seed, const dd_complex& D1,
                                       const dd_complex& D2);

// (phi, varphi) -> (conj varphi, conj phi) at conj lambda
SpectralDatum mirror(const SpectralDatum& d);

// Which reading of the upper-right entry of V is used.
enum class VConjugation { GStar, GIndependent };

struct ConventionVariant {
    int nonlinear_sign = +1;
    VConjugation v_conjugation = VConjugation::GIndependent;

    std::string name() const;
    static std::array<ConventionVariant, 4> all();
    bool operator==(const ConventionVariant& o) const = default;
};

struct LaxPair {
    ComplexMatrix U{2};
    ComplexMatrix V{2};
};

// Q_x for G comes from a central difference with step 1e-4 * max(1, |x|).
LaxPair lax_matrices(const Seed& seed, const PointFunction& Q_field, cd lambda, double x, double t,
                     VConjugation vc = VConjugation::GIndependent);
// Same, from exact derivatives.
LaxPair lax_matrices(const Seed& seed, const QJet& jet, cd lambda, double x, double t,
                     VConjugation vc = VConjugation::GIndependent);

struct ResidualNorm {
    double h = 0.0;
    double max_residual = 0.0;
    double mean_residual = 0.0;
};

struct ResidualReport {
    ConventionVariant variant;
    std::vector<ResidualNorm> norms;
    double estimated_order = 0.0;
    Grid2D interior_window;
    std::size_t excluded_nodes = 0;
};

struct LaxResidualReport {
    ResidualReport x_equation;
    ResidualReport t_equation;
};

// Finite-difference residuals of Phi_x - U Phi and Phi_t - V Phi on the grid
// and on its refinement.
LaxResidualReport check_lax_residual(const SpectralDatum& datum, const Seed& seed, const Grid2D& grid,
                                     VConjugation vc = VConjugation::GIndependent);

// Pointwise residual using the datum's exact derivatives and the seed's jet.
std::pair<double, double> exact_lax_residual(const SpectralDatum& datum, const Seed& seed, double x, double t,
                                             VConjugation vc = VConjugation::GIndependent);

}  // namespace kdnls
