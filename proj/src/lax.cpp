#include "kdnls/lax.hpp"

#include <algorithm>
#include <cmath>

namespace kdnls {

namespace {

const cd I(0.0, 1.0);

template <class C>
C imag_unit() {
    return C(cd(0.0, 1.0));
}

template <class C>
C s_impl(const C& lam, const Seed& seed) {
    const C k(seed.k());
    const C ac2(seed.alpha * seed.c * seed.c);
    const C mu = lam * lam;
    const C u = C(2.0) * k - mu;
    return sqrt(u * u - C(4.0) * ac2 * mu);
}

template <class C>
ExpSum<C> single(const C& coef, const C& kx, const C& kt) {
    ExpSum<C> e;
    e.terms.push_back({coef, kx, kt});
    return e;
}

template <class C>
void zero_seed_sums(const C& lam, ExpSum<C>& phi, ExpSum<C>& varphi) {
    const C i = imag_unit<C>();
    const C l2 = lam * lam;
    const C kx = -i * l2 * C(0.25);
    const C kt = i * l2 * l2 * C(0.125);
    phi = single(C(1.0), kx, kt);
    varphi = single(C(1.0), -kx, -kt);
}

// f1 = [p1 e^{A+B}, e^{-A+B}], f2 = [p2 e^{A-B}, e^{-A-B}]
template <class C>
struct FPair {
    ExpSum<C> f1a, f1b, f2a, f2b;
};

template <class C>
FPair<C> f_vectors(const C& lam, const Seed& seed) {
    const C i = imag_unit<C>();
    const C k(seed.k());
    const C w(seed.omega());
    const C ac2(seed.alpha * seed.c * seed.c);
    const C s = s_impl(lam, seed);
    const C l2 = lam * lam;
    const C den = C(2.0) * lam * C(seed.c * std::sqrt(seed.alpha));
    const C p1 = (C(2.0) * k - l2 - s) / den;
    const C p2 = (C(2.0) * k - l2 + s) / den;

    const C axc = -i * k * C(0.5);
    const C atc = -i * w * C(0.5);
    const C bxc = -i * s * C(0.25);
    const C btc = i * s * (l2 + C(2.0) * k + C(2.0) * ac2) * C(0.125);

    FPair<C> f;
    f.f1a = single(p1, axc + bxc, atc + btc);
    f.f1b = single(C(1.0), -axc + bxc, -atc + btc);
    f.f2a = single(p2, axc - bxc, atc - btc);
    f.f2b = single(C(1.0), -axc - bxc, -atc - btc);
    return f;
}

template <class C>
void plane_wave_sums(const C& lam, const Seed& seed, const C& D1, const C& D2, ExpSum<C>& phi, ExpSum<C>& varphi) {
    const FPair<C> f = f_vectors(lam, seed);
    const FPair<C> g = f_vectors(conj(lam), seed);
    phi = f.f1a.scaled(D1);
    phi.append(f.f2a.scaled(D2));
    phi.append(g.f1b.conjugated().scaled(D2));
    phi.append(g.f2b.conjugated().scaled(D1));
    varphi = f.f1b.scaled(D1);
    varphi.append(f.f2b.scaled(D2));
    varphi.append(g.f1a.conjugated().scaled(D2));
    varphi.append(g.f2a.conjugated().scaled(D1));
}

ExpSum<cd> to_double(const ExpSum<dd_complex>& e) {
    ExpSum<cd> out;
    for (const auto& t : e.terms) out.terms.push_back({to_cd(t.coef), to_cd(t.kx), to_cd(t.kt)});
    return out;
}

void check_plane_wave(const Seed& seed) {
    if (seed.kind != SeedKind::PlaneWave) throw Error(ErrorCode::InvalidConfig, "seed is not a plane wave");
    if (seed.c == 0.0) throw Error(ErrorCode::ZeroAmplitude, "plane-wave eigenfunction divides by 2 lambda c");
}

}  // namespace

cd Seed::Q(double x, double t) const {
    if (kind == SeedKind::Zero) return 0.0;
    return c * std::exp(I * (a * x + b * t));
}

QJet Seed::jet(double x, double t) const {
    if (kind == SeedKind::Zero) return {};
    const cd q = Q(x, t);
    return {q, I * a * q, -a * a * q, I * b * q};
}

Seed make_zero_seed(double alpha, double theta_p, double theta_q) {
    if (alpha == 0.0) throw Error(ErrorCode::ZeroCoupling, "alpha must be nonzero");
    Seed s;
    s.kind = SeedKind::Zero;
    s.alpha = alpha;
    s.theta = {theta_p, theta_q};
    return s;
}

Seed make_plane_wave_seed(double a, double c, double alpha, double theta_p, double theta_q) {
    if (alpha == 0.0) throw Error(ErrorCode::ZeroCoupling, "alpha must be nonzero");
    if (c < 0.0) throw Error(ErrorCode::InvalidConfig, "amplitude c must be non-negative");
    Seed s;
    s.kind = SeedKind::PlaneWave;
    s.a = a;
    s.c = c;
    s.alpha = alpha;
    s.theta = {theta_p, theta_q};
    const double ac2 = alpha * c * c;
    if (theta_p == 1.0 && theta_q == 1.0) {
        s.b = -ac2 * a - 2.0 - a * a - 2.0 * a - ac2;
    } else {
        const double k = a + theta_p;
        s.b = -theta_q - k * k - ac2 * k;
    }
    return s;
}

SpectralDatum SpectralDatum::scaled(cd f) const {
    SpectralDatum d = *this;
    d.phi = phi.scaled(f);
    d.varphi = varphi.scaled(f);
    d.phi_ext = phi_ext.scaled(dd_complex(f));
    d.varphi_ext = varphi_ext.scaled(dd_complex(f));
    return d;
}

SpectralDatum zero_seed_eigenfunction(cd lambda) { return zero_seed_eigenfunction(dd_complex(lambda)); }

SpectralDatum zero_seed_eigenfunction(const dd_complex& lambda) {
    const cd l = to_cd(lambda);
    if (l == cd(0.0, 0.0)) throw Error(ErrorCode::ZeroEigenvalue, "lambda must be nonzero");
    SpectralDatum d;
    d.lambda = l;
    d.lambda_ext = lambda;
    d.provenance = Provenance::ZeroSeed;
    zero_seed_sums(lambda, d.phi_ext, d.varphi_ext);
    d.phi = to_double(d.phi_ext);
    d.varphi = to_double(d.varphi_ext);
    return d;
}

cd branch_s(cd lambda, const Seed& seed) { return s_impl(lambda, seed); }
dd_complex branch_s(const dd_complex& lambda, const Seed& seed) { return s_impl(lambda, seed); }

SpectralDatum plane_wave_eigenfunction(cd lambda, const Seed& seed, cd D1, cd D2) {
    return plane_wave_eigenfunction(dd_complex(lambda), seed, dd_complex(D1), dd_complex(D2));
}

SpectralDatum plane_wave_eigenfunction(const dd_complex& lambda, const Seed& seed, const dd_complex& D1,
                                       const dd_complex& D2) {
    check_plane_wave(seed);
    const cd l = to_cd(lambda);
    if (l == cd(0.0, 0.0)) throw Error(ErrorCode::ZeroEigenvalue, "lambda must be nonzero");
    SpectralDatum d;
    d.lambda = l;
    d.lambda_ext = lambda;
    d.provenance = Provenance::PlaneWaveSeed;
    d.D1 = to_cd(D1);
    d.D2 = to_cd(D2);
    plane_wave_sums(lambda, seed, D1, D2, d.phi_ext, d.varphi_ext);
    d.phi = to_double(d.phi_ext);
    d.varphi = to_double(d.varphi_ext);
    return d;
}

SpectralDatum mirror(const SpectralDatum& src) {
    SpectralDatum d = src;
    d.lambda = std::conj(src.lambda);
    d.lambda_ext = conj(src.lambda_ext);
    d.mirrored = !src.mirrored;
    d.phi = src.varphi.conjugated();
    d.varphi = src.phi.conjugated();
    d.phi_ext = src.varphi_ext.conjugated();
    d.varphi_ext = src.phi_ext.conjugated();
    return d;
}

std::string ConventionVariant::name() const {
    return std::string(nonlinear_sign > 0 ? "sign+1" : "sign-1") + "/" +
           (v_conjugation == VConjugation::GStar ? "GStar" : "GIndependent");
}

std::array<ConventionVariant, 4> ConventionVariant::all() {
    return {ConventionVariant{+1, VConjugation::GStar}, ConventionVariant{+1, VConjugation::GIndependent},
            ConventionVariant{-1, VConjugation::GStar}, ConventionVariant{-1, VConjugation::GIndependent}};
}

LaxPair lax_matrices(const Seed& seed, const QJet& jet, cd lambda, double x, double t, VConjugation vc) {
    const double sa = std::sqrt(seed.alpha);
    const cd eth = std::exp(I * seed.theta.at(x, t));
    const cd q = jet.Q * eth;
    const cd qx = (jet.Qx + I * seed.theta.p * jet.Q) * eth;
    const cd r = -std::conj(q);
    const cd rx = -std::conj(qx);
    const cd l2 = lambda * lambda;

    LaxPair lp;
    lp.U(0, 0) = -I * l2 / 4.0;
    lp.U(1, 1) = I * l2 / 4.0;
    lp.U(0, 1) = I / 2.0 * lambda * sa * r;
    lp.U(1, 0) = I / 2.0 * lambda * sa * q;

    const cd d = I * (l2 * l2 / 8.0 - seed.alpha / 4.0 * l2 * q * r);
    const cd G = lambda / 4.0 * sa * (-l2 * q + 2.0 * I * qx + 2.0 * seed.alpha * q * q * r);
    const cd H = lambda / 4.0 * sa * (-l2 * r - 2.0 * I * rx + 2.0 * seed.alpha * r * r * q);
    lp.V(0, 0) = d;
    lp.V(1, 1) = -d;
    lp.V(1, 0) = I * G;
    lp.V(0, 1) = vc == VConjugation::GStar ? I * std::conj(G) : I * H;
    return lp;
}

LaxPair lax_matrices(const Seed& seed, const PointFunction& Q_field, cd lambda, double x, double t, VConjugation vc) {
    const double h = 1e-4 * std::max(1.0, std::abs(x));
    QJet jet;
    jet.Q = Q_field(x, t);
    jet.Qx = (Q_field(x + h, t) - Q_field(x - h, t)) / (2.0 * h);
    return lax_matrices(seed, jet, lambda, x, t, vc);
}

namespace {

double vec_norm(cd a, cd b) { return std::sqrt(std::norm(a) + std::norm(b)); }

}  // namespace

std::pair<double, double> exact_lax_residual(const SpectralDatum& datum, const Seed& seed, double x, double t,
                                             VConjugation vc) {
    const LaxPair lp = lax_matrices(seed, seed.jet(x, t), datum.lambda, x, t, vc);
    const auto [p, v] = datum(x, t);
    const auto [px, vx] = datum.dx(x, t);
    const auto [pt, vt] = datum.dt(x, t);
    const double scale = std::max(1.0, vec_norm(p, v));
    const double rx = vec_norm(px - (lp.U(0, 0) * p + lp.U(0, 1) * v), vx - (lp.U(1, 0) * p + lp.U(1, 1) * v));
    const double rt = vec_norm(pt - (lp.V(0, 0) * p + lp.V(0, 1) * v), vt - (lp.V(1, 0) * p + lp.V(1, 1) * v));
    return {rx / scale, rt / scale};
}

namespace {

struct LaxLevel {
    ResidualNorm x, t;
};

LaxLevel lax_level(const SpectralDatum& datum, const Seed& seed, const Grid2D& g, VConjugation vc) {
    const ComplexField2D phi = sample([&](double x, double t) { return datum(x, t).first; }, g);
    const ComplexField2D varphi = sample([&](double x, double t) { return datum(x, t).second; }, g);
    const ComplexField2D phx = central_diff(phi, Axis::X, 1), vpx = central_diff(varphi, Axis::X, 1);
    const ComplexField2D pht = central_diff(phi, Axis::T, 1), vpt = central_diff(varphi, Axis::T, 1);
    const PointFunction qf = [&](double x, double t) { return seed.Q(x, t); };

    LaxLevel lv;
    lv.x.h = g.hx();
    lv.t.h = g.ht();
    std::size_t count = 0;
    double sx = 0.0, st = 0.0;
    for (std::size_t j = 1; j + 1 < g.nt; ++j) {
        for (std::size_t i = 1; i + 1 < g.nx; ++i) {
            if (!phx.usable(i, j) || !vpx.usable(i, j) || !pht.usable(i, j) || !vpt.usable(i, j)) continue;
            const double x = g.x(i), t = g.t(j);
            const LaxPair lp = lax_matrices(seed, qf, datum.lambda, x, t, vc);
            const cd p = phi(i, j), v = varphi(i, j);
            const double rx = vec_norm(phx(i, j) - (lp.U(0, 0) * p + lp.U(0, 1) * v),
                                       vpx(i, j) - (lp.U(1, 0) * p + lp.U(1, 1) * v));
            const double rt = vec_norm(pht(i, j) - (lp.V(0, 0) * p + lp.V(0, 1) * v),
                                       vpt(i, j) - (lp.V(1, 0) * p + lp.V(1, 1) * v));
            lv.x.max_residual = std::max(lv.x.max_residual, rx);
            lv.t.max_residual = std::max(lv.t.max_residual, rt);
            sx += rx;
            st += rt;
            ++count;
        }
    }
    if (count == 0) throw Error(ErrorCode::AllNodesExcluded, "no interior node available for the Lax residual");
    lv.x.mean_residual = sx / double(count);
    lv.t.mean_residual = st / double(count);
    return lv;
}

double order_of(const std::vector<ResidualNorm>& n) {
    const auto& a = n[n.size() - 2];
    const auto& b = n.back();
    return std::log2(a.max_residual / b.max_residual) / std::log2(a.h / b.h);
}

}  // namespace

LaxResidualReport check_lax_residual(const SpectralDatum& datum, const Seed& seed, const Grid2D& grid,
                                     VConjugation vc) {
    grid.validate();
    if (grid.nx < 5 || grid.nt < 5) throw Error(ErrorCode::GridTooSmall, "Lax residual needs at least 5x5 nodes");
    LaxResidualReport rep;
    for (const Grid2D& g : {grid, grid.refined()}) {
        const LaxLevel lv = lax_level(datum, seed, g, vc);
        rep.x_equation.norms.push_back(lv.x);
        rep.t_equation.norms.push_back(lv.t);
    }
    for (ResidualReport* r : {&rep.x_equation, &rep.t_equation}) {
        r->variant = ConventionVariant{+1, vc};
        r->estimated_order = order_of(r->norms);
        r->interior_window = grid;
    }
    return rep;
}

}  // namespace kdnls
