#include "kdnls/ddouble.hpp"

#include <limits>

namespace kdnls {

namespace {

constexpr double kTiny = 1e-34;

dd_real sin_taylor(dd_real r) {
    // |r| <= pi/4
    dd_real r2 = r * r;
    dd_real term = r, sum = r;
    for (int k = 1; k < 40; ++k) {
        term = term * r2 / dd_real(double((2 * k) * (2 * k + 1)));
        term = -term;
        sum += term;
        if (std::fabs(term.hi) < kTiny) break;
    }
    return sum;
}

dd_real cos_taylor(dd_real r) {
    dd_real r2 = r * r;
    dd_real term = 1.0, sum = 1.0;
    for (int k = 1; k < 40; ++k) {
        term = term * r2 / dd_real(double((2 * k - 1) * (2 * k)));
        term = -term;
        sum += term;
        if (std::fabs(term.hi) < kTiny) break;
    }
    return sum;
}

}  // namespace

dd_real sqrt(dd_real a) {
    if (a.hi == 0.0) return 0.0;
    if (a.hi < 0.0) return std::numeric_limits<double>::quiet_NaN();
    double x = 1.0 / std::sqrt(a.hi);
    double ax = a.hi * x;
    dd_real ax2 = dd_detail::two_prod(ax, ax);
    return dd_detail::two_sum(ax, (a - ax2).hi * (x * 0.5));
}

dd_real exp(dd_real a) {
    if (a.hi > 709.0) return std::numeric_limits<double>::infinity();
    if (a.hi < -745.0) return 0.0;
    if (a.hi == 0.0 && a.lo == 0.0) return 1.0;

    double m = std::floor(a.hi / dd_const::ln2.hi + 0.5);
    dd_real r = a - dd_const::ln2 * m;
    r = ldexp(r, -10);

    // expm1 on the reduced argument, then undo the 2^10 scaling
    dd_real term = r, s = r;
    for (int k = 2; k < 30; ++k) {
        term = term * r / dd_real(double(k));
        s += term;
        if (std::fabs(term.hi) < kTiny) break;
    }
    for (int i = 0; i < 10; ++i) s = ldexp(s, 1) + s * s;
    s += 1.0;
    return ldexp(s, int(m));
}

void sincos(dd_real a, dd_real& s, dd_real& c) {
    if (!isfinite(a)) {
        s = c = std::numeric_limits<double>::quiet_NaN();
        return;
    }
    double z = std::nearbyint(a.hi / dd_const::two_pi.hi);
    dd_real r = a - dd_const::two_pi * z;
    double q = std::nearbyint(r.hi / dd_const::half_pi.hi);
    r = r - dd_const::half_pi * q;
    int j = int(q);
    dd_real sr = sin_taylor(r), cr = cos_taylor(r);
    switch (((j % 4) + 4) % 4) {
        case 0: s = sr; c = cr; break;
        case 1: s = cr; c = -sr; break;
        case 2: s = -sr; c = -cr; break;
        default: s = -cr; c = sr; break;
    }
}

dd_real abs(const dd_complex& z) {
    dd_real ar = fabs(z.re), ai = fabs(z.im);
    dd_real big = ar > ai ? ar : ai;
    if (big.hi == 0.0) return 0.0;
    dd_real small = ar > ai ? ai : ar;
    dd_real ratio = small / big;
    return big * sqrt(dd_real(1.0) + ratio * ratio);
}

dd_complex exp(const dd_complex& z) {
    dd_real m = exp(z.re);
    dd_real s, c;
    sincos(z.im, s, c);
    return {m * c, m * s};
}

dd_complex sqrt(const dd_complex& z) {
    // principal branch, cut along the negative real axis
    if (z.re.hi == 0.0 && z.im.hi == 0.0) return dd_complex(0.0);
    dd_real r = abs(z);
    if (z.re.hi >= 0.0) {
        dd_real u = sqrt(ldexp(r + z.re, -1));
        return {u, z.im / ldexp(u, 1)};
    }
    dd_real v = sqrt(ldexp(r - z.re, -1));
    if (std::signbit(z.im.hi)) v = -v;
    return {z.im / ldexp(v, 1), v};
}

}  // namespace kdnls
