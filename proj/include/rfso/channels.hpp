#pragma once

// Statistical models of the two hops: the rank-selected RF hop under outdated
// CSI (mixture of exponentials) and the Gamma-Gamma optical hop in the
// electrical-SNR domain. All SNR quantities here are linear scale; dB
// conversion belongs to the CLI boundary.

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rfso/dd.hpp"
#include "rfso/specfun.hpp"

namespace rfso {

// First hop: N relays, selection of the rank-m outdated SNR, correlation rho
// between the outdated and actual CSI, average SNR mu1.
struct RfHopParams {
    int n_relays;
    int rank;
    double rho;
    double mu1;

    static constexpr int kMaxRelays = 64;

    RfHopParams(int n_relays_, int rank_, double rho_, double mu1_)
        : n_relays(n_relays_), rank(rank_), rho(rho_), mu1(mu1_) {
        if (n_relays < 1 || n_relays > kMaxRelays)
            throw std::invalid_argument("RfHopParams: n_relays must be in [1, 64]");
        if (rank < 1 || rank > n_relays)
            throw std::invalid_argument("RfHopParams: rank must be in [1, n_relays]");
        if (!(rho >= 0.0 && rho <= 1.0))
            throw std::invalid_argument("RfHopParams: rho must be in [0, 1]");
        if (!(mu1 > 0.0) || !std::isfinite(mu1))
            throw std::invalid_argument("RfHopParams: mu1 must be positive");
    }
};

// Second hop: Gamma-Gamma turbulence (alpha, beta) and average electrical
// SNR mu2.
struct FsoHopParams {
    double alpha;
    double beta;
    double mu2;

    FsoHopParams(double alpha_, double beta_, double mu2_)
        : alpha(alpha_), beta(beta_), mu2(mu2_) {
        if (!(alpha > 0.0) || !std::isfinite(alpha))
            throw std::invalid_argument("FsoHopParams: alpha must be positive");
        if (!(beta > 0.0) || !std::isfinite(beta))
            throw std::invalid_argument("FsoHopParams: beta must be positive");
        if (!(mu2 > 0.0) || !std::isfinite(mu2))
            throw std::invalid_argument("FsoHopParams: mu2 must be positive");
    }

    static FsoHopParams from_rytov(double sigma_r, double mu2);
};

// Scintillation parameters from the Rytov standard deviation sigma_R
// (squared internally).
inline std::pair<double, double> turbulence_params(double sigma_r) {
    if (!(sigma_r > 0.0) || !std::isfinite(sigma_r))
        throw std::domain_error("turbulence_params: sigma_r must be positive");
    const double s2 = sigma_r * sigma_r;
    const double s125 = std::pow(sigma_r, 2.4);
    const double alpha =
        1.0 / std::expm1(0.49 * s2 / std::pow(1.0 + 1.11 * s125, 7.0 / 6.0));
    const double beta =
        1.0 / std::expm1(0.51 * s2 / std::pow(1.0 + 0.69 * s125, 5.0 / 6.0));
    return {alpha, beta};
}

inline FsoHopParams FsoHopParams::from_rytov(double sigma_r, double mu2) {
    auto [a, b] = turbulence_params(sigma_r);
    return {a, b, mu2};
}

namespace detail {

// Shared pieces of the rank-selection mixture: the n-th term carries weight
// m*C(N,m)*C(m-1,n)*(-1)^n, decay ratio B_n = N-m+n+1 and CSI-age factor
// A_n = (N-m+n)(1-rho)+1.
struct RfTerm {
    double a;      // A_n
    double b;      // B_n
    double ln_w;   // ln of the positive weight magnitude
    int sign;      // (-1)^n
};

inline std::vector<RfTerm> rf_terms(const RfHopParams& p) {
    const int big_n = p.n_relays, m = p.rank;
    std::vector<RfTerm> terms;
    terms.reserve(m);
    const double ln_m_choose =
        std::log(static_cast<double>(m)) + std::lgamma(big_n + 1.0) -
        std::lgamma(m + 1.0) - std::lgamma(big_n - m + 1.0);
    for (int n = 0; n < m; ++n) {
        RfTerm t;
        t.a = (big_n - m + n) * (1.0 - p.rho) + 1.0;
        t.b = big_n - m + n + 1.0;
        t.ln_w = ln_m_choose + std::lgamma(static_cast<double>(m)) -
                 std::lgamma(n + 1.0) - std::lgamma(static_cast<double>(m - n));
        t.sign = (n % 2 == 0) ? 1 : -1;
        terms.push_back(t);
    }
    return terms;
}

// Neumaier-compensated accumulator.
struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
        double t = sum + x;
        if (std::fabs(sum) >= std::fabs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double total() const { return sum + comp; }
};

inline constexpr int kDirectBinomialLimit = 25;

struct MixtureSum {
    double value = 0.0;
    double max_term = 0.0;  // largest per-term magnitude before cancellation
};

// Large relay counts: the alternating binomial weights reach ~1e17 and the
// mixture sums cancel back to O(1), which is beyond double even with
// compensation. Evaluate the weight logs and the per-term exponentials in
// double-double instead. `f` maps a term to the log of its positive factor
// (everything except the weight) as a dd.
template <typename TermLog>
inline MixtureSum rf_mixture_sum_dd(const RfHopParams& p, TermLog&& f) {
    const int big_n = p.n_relays, m = p.rank;
    const dd ln_m_choose = dd_log(dd(static_cast<double>(m))) +
                           dd_log_gamma(dd(big_n + 1.0)) -
                           dd_log_gamma(dd(m + 1.0)) -
                           dd_log_gamma(dd(big_n - m + 1.0));
    auto terms = rf_terms(p);
    dd acc{0.0, 0.0};
    MixtureSum out;
    for (int n = 0; n < m; ++n) {
        dd lnw = ln_m_choose + dd_log_gamma(dd(static_cast<double>(m))) -
                 dd_log_gamma(dd(n + 1.0)) -
                 dd_log_gamma(dd(static_cast<double>(m - n)));
        dd term = dd_exp(lnw + f(terms[n]));
        out.max_term = std::max(out.max_term, std::fabs(term.hi));
        acc = acc + (terms[n].sign > 0 ? term : -term);
    }
    out.value = to_double(acc);
    return out;
}

}  // namespace detail

// Density of the actual SNR of the rank-m selected relay.
inline double rf_pdf(double x, const RfHopParams& p) {
    if (!(x >= 0.0))
        throw std::domain_error("rf_pdf: argument must be nonnegative");
    auto terms = detail::rf_terms(p);
    if (p.n_relays <= detail::kDirectBinomialLimit) {
        detail::KahanSum acc;
        for (const auto& t : terms)
            acc.add(t.sign * std::exp(t.ln_w) / (t.a * p.mu1) *
                    std::exp(-t.b * x / (t.a * p.mu1)));
        return std::max(0.0, acc.total());
    }
    double s = detail::rf_mixture_sum_dd(p, [&](const detail::RfTerm& t) {
        using detail::dd;
        dd scale = dd(t.a) * dd(p.mu1);
        return -detail::dd_log(scale) - dd(t.b) * dd(x) / scale;
    }).value;
    return std::max(0.0, s);
}

// CDF of the same variable; equals the integral of rf_pdf from 0.
inline double rf_cdf(double x, const RfHopParams& p) {
    if (!(x >= 0.0))
        throw std::domain_error("rf_cdf: argument must be nonnegative");
    auto terms = detail::rf_terms(p);
    double s;
    if (p.n_relays <= detail::kDirectBinomialLimit) {
        detail::KahanSum acc;
        for (const auto& t : terms)
            acc.add(t.sign * std::exp(t.ln_w) / t.b *
                    std::exp(-t.b * x / (t.a * p.mu1)));
        s = acc.total();
    } else {
        s = detail::rf_mixture_sum_dd(p, [&](const detail::RfTerm& t) {
            using detail::dd;
            return -detail::dd_log(dd(t.b)) -
                   dd(t.b) * dd(x) / (dd(t.a) * dd(p.mu1));
        }).value;
    }
    double c = 1.0 - s;
    return std::min(1.0, std::max(0.0, c));
}

// E[gamma_1(m)].
inline double rf_mean(const RfHopParams& p) {
    auto terms = detail::rf_terms(p);
    if (p.n_relays <= detail::kDirectBinomialLimit) {
        detail::KahanSum acc;
        for (const auto& t : terms)
            acc.add(t.sign * std::exp(t.ln_w) * t.a * p.mu1 / (t.b * t.b));
        return acc.total();
    }
    return detail::rf_mixture_sum_dd(p, [&](const detail::RfTerm& t) {
        using detail::dd;
        return detail::dd_log(dd(t.a) * dd(p.mu1)) -
               detail::dd_ldexp(detail::dd_log(dd(t.b)), 1);
    }).value;
}

// Gamma-Gamma density of the second-hop electrical SNR. Evaluated in log
// space so weak-turbulence (large alpha, beta) parameters stay finite.
inline double fso_pdf(double x, const FsoHopParams& p) {
    if (!(x > 0.0))
        throw std::domain_error("fso_pdf: argument must be positive");
    const double a = p.alpha, b = p.beta;
    const double h = a + b;
    const double arg = 2.0 * std::sqrt(a * b * std::sqrt(x / p.mu2));
    const double ln_pref = 0.5 * h * std::log(a * b) +
                           (0.25 * h - 1.0) * std::log(x) - ln_gamma(a) -
                           ln_gamma(b) - 0.25 * h * std::log(p.mu2);
    const double ks = bessel_k_scaled(a - b, arg);
    return std::exp(ln_pref - arg + std::log(ks));
}

// E[gamma_2] = (alpha+1)(beta+1) mu2 / (alpha beta).
inline double fso_mean(const FsoHopParams& p) {
    return (p.alpha + 1.0) * (p.beta + 1.0) * p.mu2 / (p.alpha * p.beta);
}

// Average electrical SNR from the mean SNR (inverse of fso_mean).
inline double mu2_from_mean(double mean_snr, double alpha, double beta) {
    if (!(mean_snr > 0.0) || !(alpha > 0.0) || !(beta > 0.0))
        throw std::domain_error("mu2_from_mean: arguments must be positive");
    return alpha * beta * mean_snr / ((alpha + 1.0) * (beta + 1.0));
}

}  // namespace rfso
