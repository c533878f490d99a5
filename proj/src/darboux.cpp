#include "kdnls/darboux.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace kdnls {

namespace {

const cd I(0.0, 1.0);
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <class C>
C lambda_of(const SpectralDatum& d);
template <>
cd lambda_of<cd>(const SpectralDatum& d) {
    return d.lambda;
}
template <>
dd_complex lambda_of<dd_complex>(const SpectralDatum& d) {
    return d.lambda_ext;
}

template <class C>
struct Omegas {
    C o11, o12, o21, o22;
    double pivot_ratio = 0.0;
    bool finite = true;
};

// Rows (lambda^{N-1} varphi, lambda^{N-2} phi, lambda^{N-3} varphi, ..., phi) for
// Omega11; Omega21 swaps phi and varphi; Omega12 / Omega22 replace the first
// column by lambda^N phi / lambda^N varphi.
template <class C>
Omegas<C> omegas(const SpectralSet& set, double x, double t) {
    const std::size_t N = set.data.size();
    Omegas<C> om;
    BasicMatrix<C> m11(N), m12(N), m21(N), m22(N);
    for (std::size_t r = 0; r < N; ++r) {
        const SpectralDatum& d = set.data[r];
        auto [ph, vp] = d.template eval<C>(x, t);
        if (!is_finite(ph) || !is_finite(vp)) {
            om.finite = false;
            return om;
        }
        // rows may be rescaled freely: every ratio below is degree 0 in each row
        const double s = std::max(mag(ph), mag(vp));
        if (s > 0.0) {
            ph = ph * (1.0 / s);
            vp = vp * (1.0 / s);
        }
        const C lam = lambda_of<C>(d);
        std::vector<C> pw(N + 1);
        pw[0] = C(1.0);
        for (std::size_t k = 1; k <= N; ++k) pw[k] = pw[k - 1] * lam;
        for (std::size_t c = 0; c < N; ++c) {
            const C& p = pw[N - 1 - c];
            const bool even = c % 2 == 0;
            m11(r, c) = p * (even ? vp : ph);
            m21(r, c) = p * (even ? ph : vp);
        }
        for (std::size_t c = 0; c < N; ++c) {
            m12(r, c) = m11(r, c);
            m22(r, c) = m21(r, c);
        }
        m12(r, 0) = pw[N] * ph;
        m22(r, 0) = pw[N] * vp;
    }
    auto l11 = det_pivoted(m11);
    om.o11 = l11.value;
    om.pivot_ratio = l11.pivot_ratio;
    om.o21 = det(m21);
    om.o12 = det(m12);
    om.o22 = det(m22);
    om.finite = is_finite(om.o11) && is_finite(om.o12) && is_finite(om.o21) && is_finite(om.o22);
    return om;
}

template <class C>
DTValue nfold_point(const SpectralSet& set, const Seed& seed, double x, double t, double bound) {
    DTValue v;
    v.extended = std::is_same_v<C, dd_complex>;
    const Omegas<C> om = omegas<C>(set, x, t);
    v.condition = om.pivot_ratio;
    if (!om.finite) {
        v.status = DTStatus::NonFinite;
        v.Q = cd(kNaN, kNaN);
        return v;
    }
    if (mag(om.o11) == 0.0 || !std::isfinite(om.pivot_ratio)) {
        v.status = DTStatus::SingularOmega;
        v.Q = cd(kNaN, kNaN);
        return v;
    }
    if (om.pivot_ratio > bound) {
        v.status = DTStatus::ConditionBlowup;
        v.Q = cd(kNaN, kNaN);
        return v;
    }
    const C r = om.o21 / om.o11;
    const C w = om.o22 / om.o11;
    const cd tail = std::exp(-I * seed.theta.at(x, t)) / std::sqrt(seed.alpha);
    const C q = r * r * C(seed.Q(x, t)) + C(tail) * r * w;
    v.Q = to_cd(q);
    if (!is_finite(v.Q)) {
        v.status = DTStatus::NonFinite;
        v.Q = cd(kNaN, kNaN);
    }
    return v;
}

template <class C>
cd nfold_companion(const SpectralSet& set, const Seed& seed, double x, double t) {
    const Omegas<C> om = omegas<C>(set, x, t);
    if (!om.finite || mag(om.o21) == 0.0) return cd(kNaN, kNaN);
    const C r = om.o11 / om.o21;
    const cd R = -std::conj(seed.Q(x, t));
    const cd tail = std::exp(I * seed.theta.at(x, t)) / std::sqrt(seed.alpha);
    return to_cd(r * r * C(R) - C(tail) * r * (om.o12 / om.o21));
}

void check_set(const SpectralSet& set) {
    if (set.data.empty() || set.data.size() % 2 != 0)
        throw Error(ErrorCode::InvalidConfig, "spectral set must hold an even, nonzero number of data");
    for (const auto& d : set.data)
        if (d.lambda == cd(0.0, 0.0)) throw Error(ErrorCode::ZeroEigenvalue, "zero eigenvalue in spectral set");
}

std::string where(double x, double t) {
    std::ostringstream os;
    os << "at (x,t)=(" << x << "," << t << ")";
    return os.str();
}

// roots of s(lambda)^2 = (2k - mu)^2 - 4 alpha c^2 mu with mu = lambda^2
dd_complex critical_eigenvalue_ext(const Seed& seed, cd guess) {
    if (seed.kind != SeedKind::PlaneWave) throw Error(ErrorCode::InvalidConfig, "critical eigenvalue needs a plane wave");
    const double k = seed.k();
    const double ac2 = seed.alpha * seed.c * seed.c;
    const cd B = 2.0 * k + 2.0 * ac2;
    const cd disc = std::sqrt(B * B - 4.0 * k * k);
    cd best = 0.0;
    double bestd = std::numeric_limits<double>::infinity();
    for (cd mu : {B + disc, B - disc}) {
        for (double sg : {1.0, -1.0}) {
            const cd l = sg * std::sqrt(mu);
            if (std::abs(l - guess) < bestd) {
                bestd = std::abs(l - guess);
                best = l;
            }
        }
    }
    if (best == cd(0.0, 0.0)) throw Error(ErrorCode::ZeroEigenvalue, "critical eigenvalue is zero");
    // Newton polish in double-double on P(lambda) = (2k - lambda^2)^2 - 4 alpha c^2 lambda^2
    dd_complex l(best);
    for (int it = 0; it < 8; ++it) {
        const dd_complex l2 = l * l;
        const dd_complex u = dd_complex(2.0 * k) - l2;
        const dd_complex P = u * u - dd_complex(4.0 * ac2) * l2;
        const dd_complex dP = dd_complex(-4.0) * l * u - dd_complex(8.0 * ac2) * l;
        if (mag(dP) < 1e-12) break;
        const dd_complex step = P / dP;
        l -= step;
        if (mag(step) < 1e-32 * mag(l)) break;
    }
    return l;
}

}  // namespace

const char* to_string(Precision p) {
    switch (p) {
        case Precision::Double: return "double";
        case Precision::Extended: return "extended";
        case Precision::Auto: return "auto";
    }
    return "?";
}

Precision parse_precision(const std::string& s) {
    if (s == "double") return Precision::Double;
    if (s == "extended") return Precision::Extended;
    if (s == "auto") return Precision::Auto;
    throw Error(ErrorCode::InvalidConfig, "unknown precision '" + s + "'");
}

const char* to_string(DTStatus s) {
    switch (s) {
        case DTStatus::Ok: return "ok";
        case DTStatus::DenominatorVanishes: return "DenominatorVanishes";
        case DTStatus::SingularOmega: return "SingularOmega";
        case DTStatus::ConditionBlowup: return "ConditionBlowup";
        case DTStatus::NonFinite: return "NonFinite";
    }
    return "?";
}

cd DTOutput::Q_new(double x, double t) const {
    const DTValue v = eval_(x, t);
    return v.status == DTStatus::Ok ? v.Q : cd(kNaN, kNaN);
}

cd DTOutput::at(double x, double t) const {
    const DTValue v = eval_(x, t);
    switch (v.status) {
        case DTStatus::Ok: return v.Q;
        case DTStatus::DenominatorVanishes: throw Error(ErrorCode::DenominatorVanishes, where(x, t));
        case DTStatus::SingularOmega: throw Error(ErrorCode::SingularOmega, where(x, t));
        case DTStatus::ConditionBlowup: throw Error(ErrorCode::ConditionBlowup, where(x, t));
        case DTStatus::NonFinite: throw Error(ErrorCode::NonFinite, where(x, t));
    }
    return v.Q;
}

DTOutput one_fold(const SpectralSet& set, const Seed& seed) {
    check_set(set);
    if (set.data.size() != 2) throw Error(ErrorCode::InvalidConfig, "one_fold needs exactly two data");
    auto parts = [set](double x, double t, cd& a2, cd& b1, cd& c1) -> DTStatus {
        auto [p1, v1] = set.data[0](x, t);
        auto [p2, v2] = set.data[1](x, t);
        if (!is_finite(p1) || !is_finite(v1) || !is_finite(p2) || !is_finite(v2)) return DTStatus::NonFinite;
        const double s1 = std::max(std::abs(p1), std::abs(v1)), s2 = std::max(std::abs(p2), std::abs(v2));
        if (s1 > 0.0) p1 /= s1, v1 /= s1;
        if (s2 > 0.0) p2 /= s2, v2 /= s2;
        const cd l1 = set.data[0].lambda, l2 = set.data[1].lambda;
        const cd dl = l1 * l1 - l2 * l2;
        const cd na = v1 * p2 * l1 - p1 * v2 * l2;
        const cd da = p1 * v2 * l1 - v1 * p2 * l2;
        const double scale = std::abs(p1 * v2 * l1) + std::abs(v1 * p2 * l2);
        if (std::abs(da) <= 1e-14 * scale || std::abs(na) <= 1e-14 * scale) return DTStatus::DenominatorVanishes;
        a2 = na / da;
        b1 = p1 * p2 * dl / (-na);
        c1 = v1 * v2 * dl / (-da);
        return DTStatus::Ok;
    };
    auto q = [parts, seed](double x, double t) {
        DTValue v;
        cd a2, b1, c1;
        v.status = parts(x, t, a2, b1, c1);
        if (v.status != DTStatus::Ok) {
            v.Q = cd(kNaN, kNaN);
            return v;
        }
        const cd d2 = 1.0 / a2;
        // the printed second term lacks a factor d2; without it Q^[1] is off by a
        // position-dependent phase and fails the equation
        v.Q = d2 / a2 * (seed.Q(x, t) - c1 * std::exp(-I * seed.theta.at(x, t)) / std::sqrt(seed.alpha));
        v.condition = std::max(std::abs(a2), 1.0 / std::abs(a2));
        return v;
    };
    auto r = [parts, seed](double x, double t) {
        cd a2, b1, c1;
        if (parts(x, t, a2, b1, c1) != DTStatus::Ok) return cd(kNaN, kNaN);
        const cd d2 = 1.0 / a2;
        const cd R = -std::conj(seed.Q(x, t));
        return a2 / d2 * (R + b1 * std::exp(I * seed.theta.at(x, t)) / std::sqrt(seed.alpha));
    };
    return DTOutput(q, r);
}

DTOutput n_fold(const SpectralSet& set, const Seed& seed, const DTOptions& opt) {
    check_set(set);
    if (set.order() > 3) throw Error(ErrorCode::InvalidConfig, "n_fold supports n <= 3");
    auto q = [set, seed, opt](double x, double t) {
        switch (opt.precision) {
            case Precision::Double: return nfold_point<cd>(set, seed, x, t, opt.condition_bound);
            case Precision::Extended:
                return nfold_point<dd_complex>(set, seed, x, t, opt.extended_condition_bound);
            case Precision::Auto: break;
        }
        DTValue v = nfold_point<cd>(set, seed, x, t, opt.condition_bound);
        if (v.status == DTStatus::Ok) return v;
        return nfold_point<dd_complex>(set, seed, x, t, opt.extended_condition_bound);
    };
    auto r = [set, seed, opt](double x, double t) {
        return opt.precision == Precision::Extended ? nfold_companion<dd_complex>(set, seed, x, t)
                                                    : nfold_companion<cd>(set, seed, x, t);
    };
    return DTOutput(q, r);
}

SpectralSet build_reduced_set(const std::vector<cd>& lambdas, const Seed& seed,
                              const std::vector<std::pair<cd, cd>>& weights) {
    if (!weights.empty() && weights.size() != lambdas.size())
        throw Error(ErrorCode::InvalidConfig, "one weight pair per eigenvalue required");
    SpectralSet set;
    set.reduction = true;
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
        const cd l = lambdas[k];
        if (l.real() == 0.0 || l.imag() == 0.0)
            throw Error(ErrorCode::DegeneratePair, "eigenvalue must have nonzero real and imaginary parts");
        for (std::size_t m = 0; m < k; ++m)
            if (lambdas[m] == l || lambdas[m] == std::conj(l))
                throw Error(ErrorCode::DegeneratePair, "eigenvalues must be distinct");
        SpectralDatum d;
        if (seed.kind == SeedKind::Zero) {
            d = zero_seed_eigenfunction(l);
        } else {
            const cd s = branch_s(l, seed);
            if (std::abs(s) < 1e-8 * std::max(1.0, std::norm(l)))
                throw Error(ErrorCode::DegeneratePair,
                            "s(lambda) vanishes: the eigenfunction pair is linearly dependent at a branch point");
            const auto w = weights.empty() ? std::pair<cd, cd>{1.0, 1.0} : weights[k];
            d = plane_wave_eigenfunction(l, seed, w.first, w.second);
        }
        set.data.push_back(d);
        set.data.push_back(mirror(d));
    }
    return set;
}

cd critical_eigenvalue(const Seed& seed, cd guess) { return to_cd(critical_eigenvalue_ext(seed, guess)); }

SpectralSet degenerate_set(const DegenerationSpec& spec, const Seed& seed) {
    if (spec.n < 1 || spec.n > 3) throw Error(ErrorCode::InvalidDegeneration, "order must be 1, 2 or 3");
    if (!(spec.epsilon > 0.0) || spec.epsilon > 0.1)
        throw Error(ErrorCode::InvalidDegeneration, "epsilon must lie in (0, 0.1]");
    std::vector<cd> offsets = spec.offsets;
    std::vector<dd_complex> roots;
    if (offsets.empty()) {
        // unit roots built exactly (n = 1, 2) or to double-double accuracy (n = 3)
        const dd_real half_sqrt3 = sqrt(dd_real(3.0)) * 0.5;
        roots.push_back(dd_complex(1.0));
        if (spec.n == 2) roots.push_back(dd_complex(-1.0));
        if (spec.n == 3) {
            roots.push_back(dd_complex(dd_real(-0.5), half_sqrt3));
            roots.push_back(dd_complex(dd_real(-0.5), -half_sqrt3));
        }
        for (const dd_complex& r : roots) offsets.push_back(to_cd(r));
    } else {
        for (const cd& o : offsets) roots.push_back(dd_complex(o));
    }
    if (int(offsets.size()) != spec.n) throw Error(ErrorCode::InvalidDegeneration, "need one offset per order");
    for (std::size_t j = 0; j < offsets.size(); ++j) {
        if (std::abs(std::abs(offsets[j]) - 1.0) > 1e-12)
            throw Error(ErrorCode::InvalidDegeneration, "offsets must have unit modulus");
        for (std::size_t m = 0; m < j; ++m)
            if (std::abs(offsets[j] - offsets[m]) < 1e-12)
                throw Error(ErrorCode::InvalidDegeneration, "offsets must be pairwise distinct");
    }

    const dd_complex lc =
        seed.kind == SeedKind::PlaneWave ? critical_eigenvalue_ext(seed, spec.lambda_c) : dd_complex(spec.lambda_c);
    if (mag(lc) == 0.0) throw Error(ErrorCode::ZeroEigenvalue, "critical eigenvalue is zero");

    SpectralSet set;
    set.reduction = true;
    const dd_complex i(cd(0.0, 1.0));
    for (int j = 0; j < spec.n; ++j) {
        const dd_complex& w = roots[j];
        const dd_complex delta = w * spec.epsilon;
        const dd_complex lam = lc * (dd_complex(1.0) + delta);
        SpectralDatum d;
        if (seed.kind == SeedKind::Zero) {
            d = zero_seed_eigenfunction(lam);
        } else {
            const dd_complex s = branch_s(lam, seed);
            const dd_complex S = spec.phases.at(delta);
            const dd_complex D1 = exp(-i * s * S);
            const dd_complex D2 = exp(i * s * S);
            d = plane_wave_eigenfunction(lam, seed, D1, D2);
        }
        set.data.push_back(d);
        set.data.push_back(mirror(d));
    }
    return set;
}

DTOutput degenerate_limit(const DegenerationSpec& spec, const Seed& seed, DTOptions opt) {
    SpectralSet set = degenerate_set(spec, seed);
    if (opt.precision == Precision::Auto && spec.epsilon < 1e-3) opt.precision = Precision::Extended;
    return n_fold(set, seed, opt);
}

}  // namespace kdnls
