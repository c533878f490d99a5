#include "kdnls/catalog.hpp"

#include <cmath>
#include <limits>

namespace kdnls {

namespace {

const cd I(0.0, 1.0);
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kPoleTol = 1e-12;

cd pole() { return {kNaN, kNaN}; }

// num / den, NaN when den is negligible against the numerator scale
cd guarded(cd num, cd den, double num_scale) {
    if (!(std::abs(den) > kPoleTol * num_scale)) return pole();
    return num / den;
}

}  // namespace

const char* to_string(Transcription t) { return t == Transcription::Printed ? "printed" : "corrected"; }

CatalogEntry one_soliton(double m1, double n1, double alpha, double theta_p, double theta_q, Transcription tr) {
    if (n1 == 0.0) throw Error(ErrorCode::DegenerateEigenvalue, "n1 = 0 makes lambda1 = lambda2");
    if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidConfig, "alpha must be positive");
    CatalogEntry e;
    e.name = "soliton1";
    e.params = {{"m1", m1}, {"n1", n1}, {"alpha", alpha}, {"theta_p", theta_p}, {"theta_q", theta_q}};
    e.transcription = tr;
    e.seed = make_zero_seed(alpha, theta_p, theta_q);
    const cd l1(m1, n1), l2(m1, -n1);
    const double sa = std::sqrt(alpha);
    const Gauge g{theta_p, theta_q};
    auto F = [g](cd l, double x, double t) { return -0.25 * (-2.0 * l * l * x + l * l * l * l * t + 4.0 * g.at(x, t)); };
    auto f = [l1, l2](double x, double t) { return (l1 - l2) * (l1 + l2) * (t * l1 * l1 - 2.0 * x + t * l2 * l2) / 8.0; };
    if (tr == Transcription::Printed) {
        e.eval = [=](double x, double t) {
            const cd num = (std::exp(I * F(l1, x, t)) * l1 - std::exp(I * F(l2, x, t)) * l2) * (l1 + l2);
            const cd den = std::exp(-2.0 * I * f(x, t)) * sa * (l1 - l2);
            return guarded(num, den, std::abs(num));
        };
    } else {
        e.eval = [=](double x, double t) {
            const cd ef = std::exp(I * f(x, t));
            const cd num = std::exp(I * (F(l1, x, t) + F(l2, x, t)) / 2.0) * (l1 + l2) * (l1 - l2) *
                           (ef * l1 - l2 / ef);
            const cd d = l1 / ef - ef * l2;
            return guarded(num, sa * d * d, std::abs(num));
        };
    }
    return e;
}

CatalogEntry two_soliton(double m1, double n1, double m2, double n2, double alpha, Transcription tr, double printed_M) {
    if (n1 == 0.0 || n2 == 0.0) throw Error(ErrorCode::DegenerateEigenvalue, "imaginary parts must be nonzero");
    if (m1 == m2 && n1 == n2) throw Error(ErrorCode::DegenerateEigenvalue, "eigenvalue pairs coincide");
    if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidConfig, "alpha must be positive");
    CatalogEntry e;
    e.name = "soliton2";
    e.params = {{"m1", m1}, {"n1", n1}, {"m2", m2}, {"n2", n2}, {"alpha", alpha}};
    e.transcription = tr;
    e.seed = make_zero_seed(alpha);
    const double sa = std::sqrt(alpha);

    if (tr == Transcription::Printed) {
        const cd A(-(m1 + m2), n1 + n2), B(m2 - m1, n1 - n2), C(m2 - m1, n1 + n2), D(-(m1 + m2), n1 - n2);
        const cd E(-m1, n1), F(-m2, n2);
        const double A2 = std::norm(A), B2 = std::norm(B), C2 = std::norm(C), D2 = std::norm(D);
        const cd H1 = -A2 * C2 * E * F, H2 = B2 * D2 * E * std::conj(F);
        const cd H3 = B2 * D2 * std::conj(E) * F, H4 = -A2 * C2 * std::conj(E) * std::conj(F);
        const cd H5 = -m1 * n1 * std::conj(A) * B * std::conj(C) * D * F;
        const cd H6 = m1 * n1 * A * std::conj(B) * C * D * std::conj(F);
        const cd H7 = m2 * n2 * std::conj(A) * std::conj(B) * C * D * E;
        const cd H8 = m1 * n1 * A * B * C * std::conj(D) * std::conj(E);
        const double M = std::isnan(printed_M)
                             ? 8.0 * m1 * n1 * m2 * n2 * (m1 * m1 + n1 * n1 + m2 * m2 + n2 * n2)
                             : printed_M;
        e.params.push_back({"M", M});
        e.eval = [=](double x, double t) {
            const double p1 = (t * std::pow(m1, 4) - t * std::pow(m2, 4) - t * std::pow(n2, 4) + t * std::pow(n1, 4) +
                               6 * t * m2 * m2 * n2 * n2 - 6 * t * m1 * m1 * n1 * n1 - 2 * x * m1 * m1 +
                               2 * x * m2 * m2 + 2 * x * n1 * n1 - 2 * x * n2 * n2) /
                              4.0;
            const double p2 = t * std::pow(m1, 3) * n1 - t * m1 * std::pow(n1, 3) + t * std::pow(m2, 3) * n2 -
                              t * m2 * std::pow(n2, 3) - x * m1 * n1 - x * m2 * n2;
            const double p3 = t * std::pow(m1, 3) * n1 - t * m1 * std::pow(n1, 3) - t * std::pow(m2, 3) * n2 +
                              t * m2 * std::pow(n2, 3) - x * m1 * n1 + x * m2 * n2;
            const double p4 = -t * std::pow(m1, 3) * n1 + t * m1 * std::pow(n1, 3) + t * std::pow(m2, 3) * n2 -
                              t * m2 * std::pow(n2, 3) + x * m1 * n1 - x * m2 * n2;
            const double p5 = -t * std::pow(m1, 3) * n1 + t * m1 * std::pow(n1, 3) - t * std::pow(m2, 3) * n2 +
                              t * m2 * std::pow(n2, 3) + x * m1 * n1 + x * m2 * n2;
            const cd p6 = -I / 4.0 *
                          (t * std::pow(m1, 4) + t * std::pow(n1, 4) + 4.0 * I * t * std::pow(m2, 3) * n2 -
                           4.0 * I * t * m2 * std::pow(n2, 3) - 6 * t * m1 * m1 * n1 * n1 - 2 * x * m1 * m1 +
                           2 * x * n1 * n1 - 4.0 * I * x * m2 * n2);
            const cd p7 = -I / 4.0 *
                          (t * std::pow(m2, 4) + t * std::pow(n2, 4) + 4.0 * I * t * std::pow(m1, 3) * n1 -
                           4.0 * I * t * m1 * std::pow(n1, 3) - 6 * t * m2 * m2 * n2 * n2 + 2 * x * m2 * m2 +
                           2 * x * n2 * n2 - 4.0 * I * x * m1 * n1);
            const cd first = 2.0 * M * std::cos(p1) + H1 * std::exp(p2) + H2 * std::exp(p3) + H3 * std::exp(p4) +
                             H4 * std::exp(p5);
            const cd second = H5 * std::exp(p6) + H6 * std::exp(-std::conj(p6)) + H7 * std::exp(p7) +
                              H8 * std::exp(-std::conj(p7));
            const cd K1 = -4.0 * I * std::exp(-I * (x + t)) * first * second;
            const cd base = 2.0 * M * std::cos(p1) + H4 * std::exp(p2) + H3 * std::exp(p3) + H2 * std::exp(p4) +
                            H1 * std::exp(p5);
            const cd K2 = -sa * base * base;
            return guarded(K1, K2, std::abs(K1));
        };
        return e;
    }

    // Exact expansion of the 4x4 determinants in Y = exp(u(l)), u(l) = (i/8)(2 l^2 x - l^4 t).
    const cd l1(m1, n1), k1(m1, -n1), l2(m2, n2), k2(m2, -n2);
    const cd c11_pp = l1 * l2 * (k1 - k2) * (k1 + k2) * (l1 - l2) * (l1 + l2);
    const cd c11_pm = k2 * l1 * (k1 - l2) * (k1 + l2) * (k2 - l1) * (k2 + l1);
    const cd c11_yw = -k1 * l1 * (k1 - l1) * (k1 + l1) * (k2 - l2) * (k2 + l2);
    const cd c11_zv = -k2 * l2 * (k1 - l1) * (k1 + l1) * (k2 - l2) * (k2 + l2);
    const cd c11_mp = k1 * l2 * (k1 - l2) * (k1 + l2) * (k2 - l1) * (k2 + l1);
    const cd c11_mm = k1 * k2 * (k1 - k2) * (k1 + k2) * (l1 - l2) * (l1 + l2);

    const cd c21_pp = k1 * k2 * (k1 - k2) * (k1 + k2) * (l1 - l2) * (l1 + l2);
    const cd c21_pm = k1 * l2 * (k1 - l2) * (k1 + l2) * (k2 - l1) * (k2 + l1);
    const cd c21_yw = -k2 * l2 * (k1 - l1) * (k1 + l1) * (k2 - l2) * (k2 + l2);
    const cd c21_zv = -k1 * l1 * (k1 - l1) * (k1 + l1) * (k2 - l2) * (k2 + l2);
    const cd c21_mp = k2 * l1 * (k1 - l2) * (k1 + l2) * (k2 - l1) * (k2 + l1);
    const cd c21_mm = l1 * l2 * (k1 - k2) * (k1 + k2) * (l1 - l2) * (l1 + l2);

    const cd c22_yzv = -k1 * (k2 - l1) * (k2 + l1) * (k2 - l2) * (k2 + l2) * (l1 - l2) * (l1 + l2);
    const cd c22_yvw = k2 * (k1 - l1) * (k1 + l1) * (k1 - l2) * (k1 + l2) * (l1 - l2) * (l1 + l2);
    const cd c22_y = l2 * (k1 - k2) * (k1 + k2) * (k1 - l1) * (k1 + l1) * (k2 - l1) * (k2 + l1);
    const cd c22_v = -l1 * (k1 - k2) * (k1 + k2) * (k1 - l2) * (k1 + l2) * (k2 - l2) * (k2 + l2);

    e.eval = [=](double x, double t) {
        auto u = [x, t](cd l) { return I / 8.0 * (2.0 * l * l * x - l * l * l * l * t); };
        const cd u1 = u(l1), u2 = u(l2);
        // Y1^(e0-1) conj(Y1)^(e1-1) Y2^(e2-1) conj(Y2)^(e3-1)
        auto mono = [&](int e0, int e1, int e2, int e3) {
            return std::exp(double(e0 - 1) * u1 + double(e1 - 1) * std::conj(u1) + double(e2 - 1) * u2 +
                            double(e3 - 1) * std::conj(u2));
        };
        const cd o11 = c11_pp * mono(2, 2, 2, 2) + c11_pm * mono(2, 2, 0, 0) + c11_yw * mono(2, 0, 0, 2) +
                       c11_zv * mono(0, 2, 2, 0) + c11_mp * mono(0, 0, 2, 2) + c11_mm * mono(0, 0, 0, 0);
        const cd o21 = c21_pp * mono(2, 2, 2, 2) + c21_pm * mono(2, 2, 0, 0) + c21_yw * mono(2, 0, 0, 2) +
                       c21_zv * mono(0, 2, 2, 0) + c21_mp * mono(0, 0, 2, 2) + c21_mm * mono(0, 0, 0, 0);
        const cd o22 = c22_yzv * mono(2, 2, 2, 0) + c22_yvw * mono(2, 0, 2, 2) + c22_y * mono(2, 0, 0, 0) +
                       c22_v * mono(0, 0, 2, 0);
        const cd num = std::exp(-I * (x + t)) * o21 * o22;
        return guarded(num, sa * o11 * o11, std::abs(num));
    };
    return e;
}

CatalogEntry positon(double re1, double im1, Transcription tr) {
    if (re1 == 0.0 || im1 == 0.0) throw Error(ErrorCode::DegenerateEigenvalue, "re1 * im1 must be nonzero");
    CatalogEntry e;
    e.name = "positon";
    e.params = {{"re1", re1}, {"im1", im1}};
    e.transcription = tr;
    e.seed = make_zero_seed(1.0);
    const double a = re1, b = im1;

    if (tr == Transcription::Printed) {
        // G2 = cos H2 + i sin H2 with H2 read as g2
        e.eval = [=](double x, double t) {
            const double g1 = -x - t * a * a - t * b * b;
            const double g2 = x + t + t * std::pow(b, 4) / 4.0 - 1.5 * t * a * a * b * b + x * b * b / 2.0 +
                              t * std::pow(a, 4) / 4.0 - x * a * a / 2.0;
            const double ch = std::cosh(a * b * g1), sh = std::sinh(a * b * g1);
            const cd G1 = I * std::pow(a, 3) * ch + 2 * std::pow(a, 3) * b * t * ch - std::pow(a, 3) * b * b * x * ch -
                          a * std::pow(b, 4) * x * ch - a * std::pow(b, 6) * t * ch +
                          3 * std::pow(a, 5) * b * b * t * ch - I * std::pow(a, 6) * b * t * sh +
                          2.0 * I * std::pow(a, 4) * std::pow(b, 3) * t * sh + I * std::pow(a, 4) * b * x * sh +
                          I * a * a * std::pow(b, 3) * x * sh + 3.0 * I * a * a * b * b * t * sh - std::pow(b, 3) * sh;
            const cd G2 = std::cos(g2) + I * std::sin(g2);
            const double s2 = std::sinh(2 * a * b * g1), c2 = std::cosh(2 * a * b * g1);
            const cd G3 = 2.0 * I * std::pow(a, 3) * b * s2 + 4.0 * I * a * a * std::pow(b, 6) * t -
                          4.0 * I * std::pow(a, 4) * b * b * x - 24.0 * I * std::pow(a, 4) * std::pow(b, 4) * t +
                          2.0 * I * a * std::pow(b, 3) * s2 + 4.0 * I * std::pow(a, 6) * b * b * t +
                          4.0 * I * a * a * b * b * t + 4.0 * I * a * a * std::pow(b, 4) * x;
            const double G4 =
                std::pow(a, 4) + std::pow(b, 4) - 4 * std::pow(a, 8) * b * b * x * t -
                4 * std::pow(a, 4) * std::pow(b, 6) * x * t - 4 * std::pow(a, 6) * std::pow(b, 4) * x * t +
                4 * a * a * std::pow(b, 8) * x * t + 4 * std::pow(a, 4) * std::pow(b, 4) * x * x +
                8 * std::pow(a, 4) * std::pow(b, 8) * t * t + 2 * std::pow(a, 6) * b * b * x * x +
                2 * std::pow(a, 10) * b * b * t * t + 8 * std::pow(a, 8) * std::pow(b, 4) * t * t +
                12 * std::pow(a, 6) * std::pow(b, 6) * t * t + 2 * a * a * std::pow(b, 6) * x * x +
                2 * a * a * std::pow(b, 10) * t * t - std::pow(b, 4) * c2 + std::pow(a, 4) * c2;
            const cd num = -8.0 * a * b * G1 * G2 * (G3 + G4);
            const cd den = (G3 - G4) * (G3 - G4);
            return guarded(num, den, std::abs(num));
        };
        return e;
    }

    // Limit of the two-soliton determinants with derivative rows at a + i b.
    e.eval = [=](double x, double t) {
        const double a2 = a * a, b2 = b * b;
        const double w4 = 2 * a * b * (-x + (a2 - b2) * t);
        const cd P = 4 * std::pow(a, 10) * b2 * t * t + 16 * std::pow(a, 8) * std::pow(b, 4) * t * t -
                     8 * std::pow(a, 8) * b2 * t * x + 24 * std::pow(a, 6) * std::pow(b, 6) * t * t -
                     8 * std::pow(a, 6) * std::pow(b, 4) * t * x + 8.0 * I * std::pow(a, 6) * b2 * t +
                     4 * std::pow(a, 6) * b2 * x * x + 16 * std::pow(a, 4) * std::pow(b, 8) * t * t +
                     8 * std::pow(a, 4) * std::pow(b, 6) * t * x - 48.0 * I * std::pow(a, 4) * std::pow(b, 4) * t +
                     8 * std::pow(a, 4) * std::pow(b, 4) * x * x - 8.0 * I * std::pow(a, 4) * b2 * x +
                     2 * std::pow(a, 4) + 4 * a2 * std::pow(b, 10) * t * t + 8 * a2 * std::pow(b, 8) * t * x +
                     8.0 * I * a2 * std::pow(b, 6) * t + 4 * a2 * std::pow(b, 6) * x * x +
                     8.0 * I * a2 * std::pow(b, 4) * x + 2 * std::pow(b, 4);
        const cd Dp = P.real() / 2.0 + (std::pow(b, 4) - std::pow(a, 4)) * std::cosh(w4) +
                      I * (P.imag() / 2.0 - 2.0 * (std::pow(a, 3) * b + a * std::pow(b, 3)) * std::sinh(w4));
        const cd Mp = -2 * std::pow(a, 6) * b * t + 4 * std::pow(a, 4) * std::pow(b, 3) * t + 2 * std::pow(a, 4) * b * x +
                      6 * a2 * std::pow(b, 5) * t + 2 * a2 * std::pow(b, 3) * x - 2.0 * I * std::pow(b, 3);
        const cd Mm = 6.0 * I * std::pow(a, 5) * b2 * t + 4.0 * I * std::pow(a, 3) * std::pow(b, 4) * t -
                      2.0 * I * std::pow(a, 3) * b2 * x + 2 * std::pow(a, 3) - 2.0 * I * a * std::pow(b, 6) * t -
                      2.0 * I * a * std::pow(b, 4) * x;
        const double imU = t * (-std::pow(a, 4) / 8 + 3 * a2 * b2 / 4 - std::pow(b, 4) / 8) + x * (a2 / 4 - b2 / 4);
        const cd num = 4.0 * I * a * b * std::exp(I * (2.0 * imU - (x + t))) *
                       (std::cosh(w4 / 2) * Mp + std::sinh(w4 / 2) * Mm) * std::conj(Dp);
        return guarded(num, Dp * Dp, std::abs(num));
    };
    return e;
}

CatalogEntry breather(Transcription tr) {
    CatalogEntry e;
    e.name = "breather";
    e.params = {{"a", -2.0}, {"c", 1.0}, {"re", 0.5}, {"im", 0.5}};
    e.transcription = tr;
    e.seed = make_plane_wave_seed(-2.0, 1.0);
    // the printed instance has e^{-0.968 i x} where e^{+0.968 i x} is required in b1,
    // and a missing factor i on the 563508327 e^{-0.242 t - 2ix - it} term of b2
    const double fix_sign = tr == Transcription::Printed ? -1.0 : 1.0;
    const cd fix_i = tr == Transcription::Printed ? cd(1.0) : I;
    e.eval = [=](double x, double t) {
        const double k = 0.9682458364, g = 0.2420614592;
        const cd ekm = std::exp(-k * I * x), ekp = std::exp(k * I * x);
        const double egp = std::exp(g * t), egm = std::exp(-g * t);
        const cd F = std::exp(-2.0 * I * x - I * t);
        const cd b1 = 63508327.0 * I * ekm + 436491673.0 * egp - 563508327.0 * I * egp - 436491673.0 * egm -
                      563508327.0 * I * egm + 5e8 * I * std::exp(fix_sign * k * I * x);
        const cd b2 = 1309475019.0 * egm * F + 10e8 * I * std::exp(-0.4e-8 * I * (257938541.0 * x + 2.5e8 * t)) -
                      1309475019.0 * egp * F + 563508327.0 * I * egp * F + 563508327.0 * fix_i * egm * F +
                      127016654.0 * I * std::exp(-0.4e-8 * I * (742061459.0 * x + 2.5e8 * t));
        const cd b3 = 5e8 * I * ekm + 63508327.0 * I * ekp - 436491673.0 * egp - 563508327.0 * I * egp +
                      436491673.0 * egm - 563508327.0 * I * egm;
        const cd num = -b1 * b2;
        return guarded(num, 2.0 * b3 * b3, std::abs(num));
    };
    return e;
}

CatalogEntry rogue1(Transcription tr) {
    CatalogEntry e;
    e.name = "rogue1";
    e.params = {{"a", -2.0}, {"c", 1.0}, {"re", 1.0}, {"im", 1.0}};
    e.transcription = tr;
    e.seed = make_plane_wave_seed(-2.0, 1.0);
    // printed v2 carries 8 i t^2 where the exact solution has 8 i t^3
    const int tpow = tr == Transcription::Printed ? 2 : 3;
    e.eval = [=](double x, double t) {
        const double x2 = x * x, t2 = t * t;
        const cd v1 = 3.0 + 8 * x2 + 8.0 * I * t * x2 + 8.0 * I * x * t2 + 8 * x * t - 8 * t2 * x2 - 4 * t2 * t2 -
                      4 * x2 * x2 + 8.0 * I * x2 * x - 4.0 * I * x + 12.0 * I * t + 8.0 * I * t2 * t - 8 * t2;
        const cd v2 = -1.0 + 8.0 * I * std::pow(t, tpow) + 4.0 * I * t + 8.0 * I * t * x2 - 8.0 * I * t2 * x -
                      8 * t * x - 8 * t2 * x2 - 8.0 * I * x2 * x - 4 * t2 * t2 - 4 * x2 * x2 - 4.0 * I * x;
        const cd num = -v1 * std::exp(-I * (2.0 * x + t));
        return guarded(num, v2, std::abs(num));
    };
    return e;
}

CatalogEntry rogue2(Transcription tr) {
    CatalogEntry e;
    e.name = "rogue2";
    e.params = {{"a", -2.0}, {"c", 1.0}, {"re", 1.0}, {"im", 1.0}};
    e.transcription = tr;
    e.seed = make_plane_wave_seed(-2.0, 1.0);
    // printed v4 carries -288 i x^4 t where the exact solution has -288 i x^2 t
    const int xpow = tr == Transcription::Printed ? 4 : 2;
    e.eval = [=](double x, double t) {
        auto p = [](double v, int n) {
            double r = 1.0;
            for (int k = 0; k < n; ++k) r *= v;
            return r;
        };
        const cd v3 = -72 * x * t + 48 * p(x, 3) * t - 216 * x * x * t * t + 24 * x * x * p(t, 4) +
                      24 * p(x, 4) * t * t + 90 * x * x + 666 * t * t - 12 * p(x, 4) + 180 * p(t, 4) + 8 * p(t, 6) +
                      8 * p(x, 6) + 48 * x * p(t, 3) + 9.0 - 48.0 * I * p(x, 3) - 48.0 * I * p(x, 3) * t * t +
                      288.0 * I * x * t * t - 54.0 * I * x - 24.0 * I * x * p(t, 4) + 24.0 * I * p(t, 5) +
                      24.0 * I * p(x, 4) * t + 198.0 * I * t + 336.0 * I * p(t, 3) + 48.0 * I * x * x * p(t, 3) -
                      24.0 * I * p(x, 5);
        const cd v4 = 198 * x * x - 45.0 - 504 * x * t + 144 * p(x, 3) * t + 504 * x * x * t * t + 144 * x * p(t, 3) +
                      486 * t * t + 60 * p(t, 4) + 60 * p(x, 4) - 24 * x * x * p(t, 4) - 8 * p(t, 6) -
                      24 * p(x, 4) * t * t - 8 * p(x, 6) - 48.0 * I * p(x, 3) + 24.0 * I * p(x, 5) +
                      48.0 * I * p(x, 3) * t * t + 24.0 * I * x * p(t, 4) - 288.0 * I * p(x, xpow) * t -
                      576.0 * I * x * t * t + 144.0 * I * x * x * p(t, 3) - 90.0 * I * x - 414.0 * I * t +
                      72.0 * I * p(x, 4) * t + 528.0 * I * p(t, 3) + 72.0 * I * p(t, 5);
        const cd v5 = -48.0 * I * p(x, 3) - 48.0 * I * p(x, 3) * t * t + 288.0 * I * x * t * t - 54.0 * I * x -
                      24.0 * I * x * p(t, 4) + 72 * x * t - 48 * p(x, 3) * t + 216 * x * x * t * t -
                      24 * x * x * p(t, 4) - 24.0 * I * p(x, 5) - 90 * x * x - 666 * t * t + 24.0 * I * p(t, 5) +
                      12 * p(x, 4) - 180 * p(t, 4) - 8 * p(t, 6) - 8 * p(x, 6) - 48 * x * p(t, 3) +
                      24.0 * I * p(x, 4) * t + 198.0 * I * t + 336.0 * I * p(t, 3) - 9.0 +
                      48.0 * I * x * x * p(t, 3) - 24 * p(x, 4) * t * t;
        const cd num = -v3 * v4 * std::exp(-I * (2.0 * x + t));
        return guarded(num, v5 * v5, std::abs(num));
    };
    return e;
}

}  // namespace kdnls
