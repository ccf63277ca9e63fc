#pragma once

// Double-double arithmetic (~31 significant decimal digits), after Dekker's
// error-free transformations and the QD library. The Slater-series path of
// the Meijer G evaluator needs the extra precision to survive the alternating
// cancellation between residue terms; nothing outside meijer.hpp should need
// this header.

#include <cmath>
#include <limits>

namespace rfso::detail {

struct dd {
    double hi = 0.0;
    double lo = 0.0;
    constexpr dd() = default;
    constexpr dd(double h) : hi(h) {}
    constexpr dd(double h, double l) : hi(h), lo(l) {}
};

inline dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

// requires |a| >= |b| or a == 0
inline dd quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline dd operator-(dd a) { return {-a.hi, -a.lo}; }

inline dd operator+(dd a, dd b) {
    dd s = two_sum(a.hi, b.hi);
    dd t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline dd operator-(dd a, dd b) { return a + (-b); }

inline dd operator*(dd a, dd b) {
    dd p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline dd operator/(dd a, dd b) {
    double q1 = a.hi / b.hi;
    dd r = a - b * dd(q1);
    double q2 = r.hi / b.hi;
    r = r - b * dd(q2);
    double q3 = r.hi / b.hi;
    dd q = quick_two_sum(q1, q2);
    return q + dd(q3);
}

inline dd operator+(dd a, double b) { return a + dd(b); }
inline dd operator-(dd a, double b) { return a - dd(b); }
inline dd operator*(dd a, double b) { return a * dd(b); }
inline dd operator/(dd a, double b) { return a / dd(b); }

inline bool dd_isfinite(dd a) { return std::isfinite(a.hi); }
inline double to_double(dd a) { return a.hi + a.lo; }
inline dd dd_abs(dd a) { return a.hi < 0.0 ? -a : a; }
inline dd dd_ldexp(dd a, int n) { return {std::ldexp(a.hi, n), std::ldexp(a.lo, n)}; }

inline constexpr dd kDdLn2{0.6931471805599453, 2.3190468138462996e-17};
inline constexpr dd kDdHalfLn2Pi{0.9189385332046728, -3.8782941580672414e-17};

inline dd dd_exp(dd a) {
    if (a.hi > 709.0) return {std::numeric_limits<double>::infinity(), 0.0};
    if (a.hi < -709.0) return {0.0, 0.0};
    double m = std::floor(a.hi / kDdLn2.hi + 0.5);
    dd r = dd_ldexp(a - kDdLn2 * dd(m), -9);  // |r| <= ln2 / 1024
    // expm1 Taylor on the reduced argument
    dd p = r * r;
    dd s = r + dd_ldexp(p, -1);
    p = p * r;
    double fac = 6.0;
    dd t = p / dd(fac);
    for (int k = 4; k < 20; ++k) {
        s = s + t;
        p = p * r;
        fac *= k;
        t = p / dd(fac);
        if (std::fabs(t.hi) < 1e-40) break;
    }
    s = s + t;
    // undo the 2^-9 scaling: (1+s)^512 - 1
    for (int k = 0; k < 9; ++k) s = dd_ldexp(s, 1) + s * s;
    return dd_ldexp(s + dd(1.0), static_cast<int>(m));
}

// natural log, a > 0
inline dd dd_log(dd a) {
    dd x{std::log(a.hi), 0.0};
    x = x + a * dd_exp(-x) - dd(1.0);
    x = x + a * dd_exp(-x) - dd(1.0);
    return x;
}

// log gamma for x > 0 via recurrence to x >= 40 plus a Stirling tail.
inline dd dd_log_gamma(dd x) {
    static constexpr dd kStirling[] = {
        {0.08333333333333333, 4.625929269271485e-18},
        {-0.002777777777777778, 1.0601087908747154e-19},
        {0.0007936507936507937, 6.883823317368282e-22},
        {-0.0005952380952380953, 5.36938218754726e-20},
        {0.0008417508417508417, 3.6870174889237694e-20},
        {-0.0019175269175269176, 1.0675702776872475e-19},
        {0.00641025641025641, 2.2240044563805217e-19},
        {-0.029550653594771242, 4.861760957508855e-19},
        {0.17964437236883057, -6.401600482710946e-19},
        {-1.3924322169059011, 1.5837056989230303e-17},
        {13.402864044168393, -6.154114101993966e-16},
        {-156.84828462600203, 9.391823141715389e-15},
        {2193.1033333333335, -1.3339255626002948e-13},
    };
    dd shift{0.0, 0.0};
    while (x.hi < 40.0) {
        shift = shift + dd_log(x);
        x = x + dd(1.0);
    }
    dd inv = dd(1.0) / x;
    dd inv2 = inv * inv;
    dd s = kStirling[12];
    for (int k = 11; k >= 0; --k) s = kStirling[k] + s * inv2;
    s = s * inv;
    return (x - dd(0.5)) * dd_log(x) - x + kDdHalfLn2Pi + s - shift;
}

// ln|Gamma(x)| with sign, for any real x away from the poles.
struct dd_log_signed {
    dd log_abs;
    int sign;  // +1 or -1
};

inline dd_log_signed dd_log_gamma_signed(dd x) {
    if (x.hi >= 0.5) return {dd_log_gamma(x), 1};
    // Gamma(x) = Gamma(x + n) / (x (x+1) ... (x+n-1))
    int n = static_cast<int>(std::ceil(0.5 - x.hi));
    dd logprod{0.0, 0.0};
    int sign = 1;
    for (int i = 0; i < n; ++i) {
        dd f = x + dd(static_cast<double>(i));
        if (f.hi < 0.0) sign = -sign;
        logprod = logprod + dd_log(dd_abs(f));
    }
    return {dd_log_gamma(x + dd(static_cast<double>(n))) - logprod, sign};
}

}  // namespace rfso::detail
