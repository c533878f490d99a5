#pragma once
// Double-double arithmetic (about 32 significant digits) built on error-free
// transformations, plus a minimal complex type over it.
// Algorithms follow Dekker / Knuth and the QD library of Hida, Li and Bailey.

#include <cmath>
#include <complex>

namespace kdnls {

struct dd_real {
    double hi = 0.0;
    double lo = 0.0;

    constexpr dd_real() = default;
    constexpr dd_real(double h) : hi(h), lo(0.0) {}
    constexpr dd_real(double h, double l) : hi(h), lo(l) {}

    explicit operator double() const { return hi + lo; }
};

namespace dd_detail {

inline dd_real two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double e = (a - (s - bb)) + (b - bb);
    return {s, e};
}

inline dd_real quick_two_sum(double a, double b) {
    double s = a + b;
    double e = b - (s - a);
    return {s, e};
}

inline dd_real two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

}  // namespace dd_detail

inline dd_real operator-(dd_real a) { return {-a.hi, -a.lo}; }

inline dd_real operator+(dd_real a, dd_real b) {
    using namespace dd_detail;
    dd_real s = two_sum(a.hi, b.hi);
    dd_real t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline dd_real operator-(dd_real a, dd_real b) { return a + (-b); }

inline dd_real operator*(dd_real a, dd_real b) {
    using namespace dd_detail;
    dd_real p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline dd_real operator*(dd_real a, double b) {
    using namespace dd_detail;
    dd_real p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return quick_two_sum(p.hi, p.lo);
}

inline dd_real operator/(dd_real a, dd_real b) {
    using namespace dd_detail;
    double q1 = a.hi / b.hi;
    dd_real r = a - b * q1;
    double q2 = r.hi / b.hi;
    r = r - b * q2;
    double q3 = r.hi / b.hi;
    dd_real q = quick_two_sum(q1, q2);
    return q + dd_real(q3);
}

inline dd_real& operator+=(dd_real& a, dd_real b) { return a = a + b; }
inline dd_real& operator-=(dd_real& a, dd_real b) { return a = a - b; }
inline dd_real& operator*=(dd_real& a, dd_real b) { return a = a * b; }
inline dd_real& operator/=(dd_real& a, dd_real b) { return a = a / b; }

inline bool operator<(dd_real a, dd_real b) { return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo); }
inline bool operator>(dd_real a, dd_real b) { return b < a; }
inline bool operator==(dd_real a, dd_real b) { return a.hi == b.hi && a.lo == b.lo; }

inline dd_real ldexp(dd_real a, int e) { return {std::ldexp(a.hi, e), std::ldexp(a.lo, e)}; }
inline dd_real fabs(dd_real a) { return a.hi < 0.0 ? -a : a; }
inline bool isfinite(dd_real a) { return std::isfinite(a.hi) && std::isfinite(a.lo); }

dd_real sqrt(dd_real a);
dd_real exp(dd_real a);
void sincos(dd_real a, dd_real& s, dd_real& c);

namespace dd_const {
inline constexpr dd_real pi{3.141592653589793116e+00, 1.224646799147353207e-16};
inline constexpr dd_real two_pi{6.283185307179586232e+00, 2.449293598294706414e-16};
inline constexpr dd_real half_pi{1.570796326794896558e+00, 6.123233995736766036e-17};
inline constexpr dd_real ln2{6.931471805599452862e-01, 2.319046813846299558e-17};
}  // namespace dd_const

struct dd_complex {
    dd_real re;
    dd_real im;

    constexpr dd_complex() = default;
    constexpr dd_complex(double r) : re(r), im(0.0) {}
    constexpr dd_complex(dd_real r) : re(r), im(0.0) {}
    constexpr dd_complex(dd_real r, dd_real i) : re(r), im(i) {}
    constexpr dd_complex(std::complex<double> z) : re(z.real()), im(z.imag()) {}

    dd_real real() const { return re; }
    dd_real imag() const { return im; }
};

inline dd_complex operator-(const dd_complex& a) { return {-a.re, -a.im}; }
inline dd_complex operator+(const dd_complex& a, const dd_complex& b) { return {a.re + b.re, a.im + b.im}; }
inline dd_complex operator-(const dd_complex& a, const dd_complex& b) { return {a.re - b.re, a.im - b.im}; }
inline dd_complex operator*(const dd_complex& a, const dd_complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline dd_complex operator*(const dd_complex& a, double b) { return {a.re * b, a.im * b}; }
inline dd_complex operator*(double b, const dd_complex& a) { return {a.re * b, a.im * b}; }
inline dd_complex operator/(const dd_complex& a, const dd_complex& b) {
    // scale by the larger component of b to avoid overflow in |b|^2
    dd_real s = fabs(b.re) > fabs(b.im) ? fabs(b.re) : fabs(b.im);
    dd_real br = b.re / s, bi = b.im / s;
    dd_real den = br * br + bi * bi;
    dd_real ar = a.re / s, ai = a.im / s;
    return {(ar * br + ai * bi) / den, (ai * br - ar * bi) / den};
}
inline dd_complex& operator+=(dd_complex& a, const dd_complex& b) { return a = a + b; }
inline dd_complex& operator-=(dd_complex& a, const dd_complex& b) { return a = a - b; }
inline dd_complex& operator*=(dd_complex& a, const dd_complex& b) { return a = a * b; }
inline dd_complex& operator/=(dd_complex& a, const dd_complex& b) { return a = a / b; }

inline dd_real real(const dd_complex& z) { return z.re; }
inline dd_real imag(const dd_complex& z) { return z.im; }
inline dd_complex conj(const dd_complex& z) { return {z.re, -z.im}; }
inline dd_real norm(const dd_complex& z) { return z.re * z.re + z.im * z.im; }
dd_real abs(const dd_complex& z);
dd_complex exp(const dd_complex& z);
dd_complex sqrt(const dd_complex& z);

inline std::complex<double> to_cd(const dd_complex& z) { return {double(z.re), double(z.im)}; }
inline std::complex<double> to_cd(const std::complex<double>& z) { return z; }

// Magnitude in double, good enough for pivot selection and thresholds.
inline double mag(const std::complex<double>& z) { return std::abs(z); }
inline double mag(const dd_complex& z) { return std::hypot(z.re.hi, z.im.hi); }

inline bool is_finite(const std::complex<double>& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }
inline bool is_finite(const dd_complex& z) { return isfinite(z.re) && isfinite(z.im); }

}  // namespace kdnls
