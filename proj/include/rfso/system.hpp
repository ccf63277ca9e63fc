#pragma once

// End-to-end SNDR composition with transceiver impairments, the fixed relay
// gain, and the high-SNR ceilings.

#include <cmath>
#include <stdexcept>

#include "rfso/channels.hpp"

namespace rfso {

struct ImpairmentParams {
    double kappa1;
    double kappa2;

    ImpairmentParams(double kappa1_, double kappa2_)
        : kappa1(kappa1_), kappa2(kappa2_) {
        if (!(kappa1 >= 0.0) || !std::isfinite(kappa1) || !(kappa2 >= 0.0) ||
            !std::isfinite(kappa2))
            throw std::invalid_argument("ImpairmentParams: kappa must be >= 0");
    }
};

// delta = k1^2 + k2^2 + k1^2 k2^2; zero iff both impairment levels are zero.
inline double delta(const ImpairmentParams& imp) {
    const double k1 = imp.kappa1 * imp.kappa1;
    const double k2 = imp.kappa2 * imp.kappa2;
    return k1 + k2 + k1 * k2;
}

// C = E[gamma_1(m)] (1 + kappa1^2) + 1.
inline double constant_c(const RfHopParams& rf, double kappa1) {
    return rf_mean(rf) * (1.0 + kappa1 * kappa1) + 1.0;
}

// Fixed relay gain squared, G^2 = P2 / (P1 E[|h_m|^2](1+kappa1^2) + sigma1^2),
// with E[|h_m|^2] taken over the selected relay: E[gamma_1(m)] / mu1.
inline double relay_gain_sq(const RfHopParams& rf, double kappa1, double p1,
                            double p2, double sigma1_sq) {
    if (!(p1 > 0.0) || !(p2 > 0.0) || !(sigma1_sq > 0.0))
        throw std::invalid_argument("relay_gain_sq: powers must be positive");
    const double mean_h_sq = rf_mean(rf) / rf.mu1;
    return p2 / (p1 * mean_h_sq * (1.0 + kappa1 * kappa1) + sigma1_sq);
}

// Instantaneous end-to-end SNDR.
inline double sndr(double gamma1, double gamma2, const ImpairmentParams& imp,
                   double c) {
    if (gamma1 <= 0.0 || gamma2 <= 0.0) return 0.0;
    const double d = delta(imp);
    const double k2 = 1.0 + imp.kappa2 * imp.kappa2;
    return gamma1 * gamma2 / (d * gamma1 * gamma2 + k2 * gamma2 + c);
}

// High-SNR limit; unbounded for ideal hardware. Kept as a distinguished
// state so callers must branch instead of saturating on a large float.
class Ceiling {
  public:
    static Ceiling unbounded() { return Ceiling(true, 0.0); }
    static Ceiling finite(double v) { return Ceiling(false, v); }
    bool is_unbounded() const { return unbounded_; }
    double value() const {
        if (unbounded_)
            throw std::logic_error("Ceiling: value() called on unbounded ceiling");
        return value_;
    }

  private:
    Ceiling(bool u, double v) : unbounded_(u), value_(v) {}
    bool unbounded_;
    double value_;
};

inline Ceiling sndr_ceiling(const ImpairmentParams& imp) {
    const double d = delta(imp);
    if (d == 0.0) return Ceiling::unbounded();
    return Ceiling::finite(1.0 / d);
}

// (1/2) log2(1 + 1/delta) bits per channel use.
inline Ceiling capacity_ceiling(const ImpairmentParams& imp) {
    const Ceiling g = sndr_ceiling(imp);
    if (g.is_unbounded()) return Ceiling::unbounded();
    return Ceiling::finite(0.5 * std::log2(1.0 + g.value()));
}

// Full link description; gamma_th is the outage threshold (linear).
struct LinkConfig {
    RfHopParams rf;
    FsoHopParams fso;
    ImpairmentParams imp;
    double gamma_th;

    LinkConfig(RfHopParams rf_, FsoHopParams fso_, ImpairmentParams imp_,
               double gamma_th_)
        : rf(rf_), fso(fso_), imp(imp_), gamma_th(gamma_th_) {
        if (!(gamma_th > 0.0) || !std::isfinite(gamma_th))
            throw std::invalid_argument("LinkConfig: gamma_th must be positive");
    }

    double delta() const { return rfso::delta(imp); }
    double constant_c() const { return rfso::constant_c(rf, imp.kappa1); }
};

}  // namespace rfso
