#pragma once

// Scalar special functions used by the channel models and closed forms:
// log-gamma, the modified Bessel function of the second kind K_nu for real
// order, and a complex log-gamma for Mellin-Barnes contours.

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "rfso/errors.hpp"

namespace rfso {

// ln Gamma(x) for x > 0. Lanczos approximation, g = 7, 9 terms.
inline double ln_gamma(double x) {
    if (!std::isfinite(x) || x <= 0.0)
        throw std::domain_error("ln_gamma: argument must be positive and finite");
    static constexpr double kLanczos[9] = {
        0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
    };
    if (x < 0.5) return ln_gamma(x + 1.0) - std::log(x);
    double z = x - 1.0;
    double sum = kLanczos[0];
    for (int i = 1; i < 9; ++i) sum += kLanczos[i] / (z + i);
    double base = z + 7.5;
    return (z + 0.5) * std::log(base) - base + 0.9189385332046728 + std::log(sum);
}

namespace detail {

// 1/Gamma(1+x) = sum a_k x^k
inline constexpr double kRecipGamma[15] = {
    1.0,
    0.5772156649015328606,
    -0.6558780715202538811,
    -0.0420026350340952355,
    0.1665386113822914895,
    -0.0421977345555443367,
    -0.0096219715278769736,
    0.0072189432466630995,
    -0.0011651675918590651,
    -0.0002152416741149510,
    0.0001280502823881162,
    -0.0000201348547807882,
    -0.0000012504934821427,
    0.0000011330272319817,
    -0.0000002056338416978,
};

// Temme's gamma coefficients for |mu| <= 1/2:
//   gam1 = (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu), gam2 = their mean,
//   gampl = 1/Gamma(1+mu), gammi = 1/Gamma(1-mu).
inline void temme_gammas(double mu, double& gam1, double& gam2, double& gampl,
                         double& gammi) {
    gampl = std::exp(-std::lgamma(1.0 + mu));
    gammi = std::exp(-std::lgamma(1.0 - mu));
    if (std::fabs(mu) < 0.015625) {
        // series for the cancels-to-O(mu) difference
        double mu2 = mu * mu;
        double s = 0.0;
        for (int k = 13; k >= 1; k -= 2) s = kRecipGamma[k] + s * mu2;
        gam1 = -s;
    } else {
        gam1 = (gammi - gampl) / (2.0 * mu);
    }
    gam2 = 0.5 * (gammi + gampl);
}

// K_mu and K_{mu+1} for |mu| <= 1/2, 0 < x <= 2. Temme's series.
inline void bessel_k_temme(double mu, double x, double& kmu, double& kmu1) {
    constexpr double kEps = std::numeric_limits<double>::epsilon();
    const double x1 = 0.5 * x;
    const double pimu = 3.141592653589793 * mu;
    const double fact = (std::fabs(pimu) < 1e-15) ? 1.0 : pimu / std::sin(pimu);
    double d = -std::log(x1);
    double e = mu * d;
    const double fact2 = (std::fabs(e) < 1e-15) ? 1.0 : std::sinh(e) / e;
    double gam1, gam2, gampl, gammi;
    temme_gammas(mu, gam1, gam2, gampl, gammi);
    double ff = fact * (gam1 * std::cosh(e) + gam2 * fact2 * d);
    double sum = ff;
    e = std::exp(e);
    double p = 0.5 * e / gampl;
    double q = 0.5 / (e * gammi);
    double c = 1.0;
    d = x1 * x1;
    double sum1 = p;
    const double mu2 = mu * mu;
    for (int i = 1; i <= 1000; ++i) {
        ff = (i * ff + p + q) / (i * i - mu2);
        c *= d / i;
        p /= (i - mu);
        q /= (i + mu);
        double del = c * ff;
        sum += del;
        double del1 = c * (p - i * ff);
        sum1 += del1;
        if (std::fabs(del) < std::fabs(sum) * kEps) break;
    }
    kmu = sum;
    kmu1 = sum1 * (2.0 / x);
}

// e^x K_mu(x) and e^x K_{mu+1}(x) for |mu| <= 1/2, x > 2.
// Steed/Thompson-Barnett continued fraction (CF2).
inline void bessel_k_cf2(double mu, double x, double& kmu, double& kmu1) {
    constexpr double kEps = std::numeric_limits<double>::epsilon();
    const double mu2 = mu * mu;
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    const double a1 = 0.25 - mu2;
    double q = a1, c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 2; i <= 10000; ++i) {
        a -= 2 * (i - 1);
        c = -a * c / i;
        double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        double dels = q * delh;
        s += dels;
        if (std::fabs(dels / s) < kEps) break;
    }
    h = a1 * h;
    kmu = std::sqrt(3.141592653589793 / (2.0 * x)) / s;
    kmu1 = kmu * (mu + x + 0.5 - h) / x;
}

}  // namespace detail

// e^x K_nu(x); finite for all x in (0, ~1e15) unless K itself overflows.
inline double bessel_k_scaled(double nu, double x) {
    if (!std::isfinite(x) || x <= 0.0)
        throw std::domain_error("bessel_k: argument must be positive and finite");
    nu = std::fabs(nu);  // K_{-nu} = K_{nu}
    const int nl = static_cast<int>(nu + 0.5);
    const double mu = nu - nl;
    double kmu, kmu1;
    if (x <= 2.0) {
        detail::bessel_k_temme(mu, x, kmu, kmu1);
        const double ex = std::exp(x);
        kmu *= ex;
        kmu1 *= ex;
    } else {
        detail::bessel_k_cf2(mu, x, kmu, kmu1);
    }
    // upward recurrence K_{v+1} = K_{v-1} + (2v/x) K_v, stable for K
    const double xi2 = 2.0 / x;
    double v = mu;
    for (int i = 0; i < nl; ++i) {
        v += 1.0;
        double knext = kmu + v * xi2 * kmu1;
        kmu = kmu1;
        kmu1 = knext;
        if (!std::isfinite(kmu)) return kmu;
    }
    return kmu;
}

// K_nu(x) for real order and x > 0. Underflows to 0 for x beyond ~745;
// the optional flag reports that case.
inline double bessel_k(double nu, double x, bool* underflow = nullptr) {
    if (underflow) *underflow = false;
    const double scaled = bessel_k_scaled(nu, x);
    if (!std::isfinite(scaled)) return scaled;
    const double r = scaled * std::exp(-x);
    if (r == 0.0 && underflow) *underflow = true;
    return r;
}

namespace detail {

// ln Gamma(z) for Re z > 0: recurrence into Re z >= 16, then Stirling.
inline std::complex<double> log_gamma_complex(std::complex<double> z) {
    static constexpr double kStirling[9] = {
        0.08333333333333333,    -0.002777777777777778, 0.0007936507936507937,
        -0.0005952380952380953, 0.0008417508417508417, -0.0019175269175269176,
        0.00641025641025641,    -0.029550653594771242, 0.17964437236883057,
    };
    std::complex<double> shift{0.0, 0.0};
    while (z.real() < 16.0) {
        shift += std::log(z);
        z += 1.0;
    }
    std::complex<double> w = 1.0 / z;
    std::complex<double> w2 = w * w;
    std::complex<double> s{kStirling[8], 0.0};
    for (int k = 7; k >= 0; --k) s = kStirling[k] + s * w2;
    return (z - 0.5) * std::log(z) - z + 0.9189385332046728 + s * w - shift;
}

}  // namespace detail

}  // namespace rfso
