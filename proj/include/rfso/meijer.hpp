#pragma once

// Numerical Meijer G-function for real parameter rows and z > 0, restricted
// to the instances this project needs: integrand-dominant orders (2(m+n) > p+q)
// with p < q, plus the small reduction cases used for validation.
//
// Evaluation strategy: Slater residue series in double-double arithmetic when
// the b-row differences are non-integer, with the cancellation tracked so the
// result carries an error estimate; numeric Mellin-Barnes contour integration
// on a vertical line as fallback. Integer-coincident b parameters are handled
// by a symmetric +/-eps perturbation of the row and averaging (eps = 1e-6).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "rfso/dd.hpp"
#include "rfso/errors.hpp"
#include "rfso/quadrature.hpp"
#include "rfso/specfun.hpp"

namespace rfso {

struct MeijerGSpec {
    std::vector<double> a_top;  // first n upper parameters
    std::vector<double> a_rest;
    std::vector<double> b_top;  // first m lower parameters
    std::vector<double> b_rest;

    int m() const { return static_cast<int>(b_top.size()); }
    int n() const { return static_cast<int>(a_top.size()); }
    int p() const { return static_cast<int>(a_top.size() + a_rest.size()); }
    int q() const { return static_cast<int>(b_top.size() + b_rest.size()); }

    // Contour separability: left poles sit at -b_j - k, right poles at
    // 1 - a_i + l, so they coincide exactly when a_i - b_j is a positive
    // integer. b = a is legal (and the capacity-bound instance relies on it).
    void validate() const {
        if (b_top.empty()) throw std::invalid_argument("MeijerGSpec: empty b_top row");
        for (double b : b_top) {
            for (double a : a_top) {
                double d = a - b;
                double r = std::round(d);
                if (d >= 0.5 && std::fabs(d - r) < 1e-9)
                    throw std::invalid_argument(
                        "MeijerGSpec: a_top exceeds a b_top parameter by a "
                        "positive integer (inseparable contour)");
            }
        }
    }

    std::string describe() const {
        auto row = [](const std::vector<double>& v) {
            std::string s;
            char buf[32];
            for (size_t i = 0; i < v.size(); ++i) {
                std::snprintf(buf, sizeof buf, "%.17g", v[i]);
                if (i) s += ",";
                s += buf;
            }
            return s.empty() ? std::string("-") : s;
        };
        return "G^{" + std::to_string(m()) + "," + std::to_string(n()) + "}_{" +
               std::to_string(p()) + "," + std::to_string(q()) + "}(a_top=" +
               row(a_top) + "; a_rest=" + row(a_rest) + "; b_top=" + row(b_top) +
               "; b_rest=" + row(b_rest) + ")";
    }
};

// Sign-and-log representation so callers can fold huge gamma prefactors in
// log space without overflow.
struct ScaledReal {
    double log_abs = -std::numeric_limits<double>::infinity();
    int sign = 0;
    double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
};

namespace detail {

struct MeijerEval {
    ScaledReal val;
    double rel_err = std::numeric_limits<double>::infinity();
    bool ok = false;
};

// Slater expansion: sum over residues at the poles of the b_top gammas.
// Requires pairwise non-integer b differences; `pert` shifts b_j by
// pert*(j+1) to lift exact coincidences.
inline MeijerEval meijer_slater(const MeijerGSpec& s, double z, double pert) {
    MeijerEval out;
    const int m = s.m(), n = s.n(), p = s.p(), q = s.q();
    if (p > q) return out;
    if (p == q && z >= 1.0) return out;

    // All parameter differences are carried in double-double. The residue
    // identity links the gamma prefactors Gamma(b_j - b_h) to the series
    // parameters 1 + b_h - b_j exactly; rounding each difference to double
    // independently breaks that linkage, and the residue cancellation
    // (easily 1e9 for the outage rows) amplifies the mismatch.
    std::vector<dd> bs;
    for (double b : s.b_top) bs.push_back(dd(b));
    for (double b : s.b_rest) bs.push_back(dd(b));
    for (size_t j = 0; j < bs.size(); ++j)
        bs[j] = bs[j] + dd(pert * static_cast<double>(j + 1));
    std::vector<dd> as;
    for (double a : s.a_top) as.push_back(dd(a));
    for (double a : s.a_rest) as.push_back(dd(a));

    const double w = (((p - m - n) % 2) != 0) ? -z : z;
    const dd lnz = dd_log(dd(z));

    // per-residue logs stay in double-double until the final combination;
    // rounding them to double here would defeat the extended precision right
    // where the residues cancel
    std::vector<dd> term_log(m);
    std::vector<int> term_sign(m);
    double max_log = -std::numeric_limits<double>::infinity();

    for (int h = 0; h < m; ++h) {
        dd lnp{0.0, 0.0};
        int sgn = 1;
        for (int j = 0; j < q; ++j) {
            if (j == h) continue;
            if (j < m) {
                auto g = dd_log_gamma_signed(bs[j] - bs[h]);
                lnp = lnp + g.log_abs;
                sgn *= g.sign;
            } else {
                auto g = dd_log_gamma_signed(dd(1.0) + bs[h] - bs[j]);
                lnp = lnp - g.log_abs;
                sgn *= g.sign;
            }
        }
        for (int j = 0; j < p; ++j) {
            if (j < n) {
                auto g = dd_log_gamma_signed(dd(1.0) + bs[h] - as[j]);
                lnp = lnp + g.log_abs;
                sgn *= g.sign;
            } else {
                auto g = dd_log_gamma_signed(as[j] - bs[h]);
                lnp = lnp - g.log_abs;
                sgn *= g.sign;
            }
        }
        lnp = lnp + bs[h] * lnz;

        // hypergeometric pFq-1 at (-1)^{p-m-n} z
        dd term{1.0, 0.0};
        dd sum{1.0, 0.0};
        double maxt = 1.0;
        bool converged = false;
        int small_count = 0;
        for (int k = 0; k < 4000; ++k) {
            for (int j = 0; j < p; ++j)
                term = term * (dd(1.0) + bs[h] - as[j] + dd(static_cast<double>(k)));
            for (int j = 0; j < q; ++j) {
                if (j == h) continue;
                term = term / (dd(1.0) + bs[h] - bs[j] + dd(static_cast<double>(k)));
            }
            term = term * dd(w) / dd(static_cast<double>(k + 1));
            if (!dd_isfinite(term)) return out;
            sum = sum + term;
            maxt = std::max(maxt, std::fabs(term.hi));
            if (std::fabs(term.hi) < 1e-36 * std::max(std::fabs(sum.hi), 1e-300)) {
                if (++small_count >= 2) {
                    converged = true;
                    break;
                }
            } else {
                small_count = 0;
            }
        }
        if (!converged || !dd_isfinite(sum)) return out;

        if (sum.hi == 0.0) {
            term_log[h] = dd(-std::numeric_limits<double>::infinity());
            term_sign[h] = 0;
        } else {
            term_log[h] = lnp + dd_log(dd_abs(sum));
            term_sign[h] = sgn * (sum.hi > 0.0 ? 1 : -1);
            if (term_log[h].hi > 0.95 * 709.0) return out;  // near exp overflow
            max_log = std::max(max_log, term_log[h].hi);
        }
        max_log = std::max(max_log, to_double(lnp) + std::log(maxt));
    }

    double shift = -std::numeric_limits<double>::infinity();
    for (int h = 0; h < m; ++h)
        if (term_sign[h] != 0) shift = std::max(shift, term_log[h].hi);
    if (!std::isfinite(shift)) {  // all residues vanished
        out.val = ScaledReal{-std::numeric_limits<double>::infinity(), 0};
        out.rel_err = 0.0;
        out.ok = true;
        return out;
    }
    dd acc{0.0, 0.0};
    for (int h = 0; h < m; ++h) {
        if (term_sign[h] == 0) continue;
        dd e = dd_exp(term_log[h] - dd(shift));
        acc = acc + (term_sign[h] > 0 ? e : -e);
    }
    if (acc.hi == 0.0) return out;

    out.val.log_abs = shift + to_double(dd_log(dd_abs(acc)));
    out.val.sign = acc.hi > 0.0 ? 1 : -1;
    // cancellation-aware error estimate: dd carries ~1e-31 per operation
    double cancel = std::exp(std::min(700.0, max_log - out.val.log_abs));
    out.rel_err = std::max(cancel * 5e-31, 1e-14);
    out.ok = std::isfinite(out.val.log_abs);
    return out;
}

// Mellin-Barnes integral on a vertical line Re t = c. The integrand decays
// like exp(-(2(m+n)-p-q) pi |tau| / 2), so the line must be Gamma-dominant.
inline MeijerEval meijer_mb(const MeijerGSpec& s, double z) {
    MeijerEval out;
    const int m = s.m(), n = s.n(), p = s.p(), q = s.q();
    if (2 * (m + n) <= p + q) return out;

    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (double b : s.b_top) lo = std::max(lo, -b);
    for (double a : s.a_top) hi = std::min(hi, 1.0 - a);
    for (double a : s.a_rest) lo = std::max(lo, -a);
    for (double b : s.b_rest) hi = std::min(hi, 1.0 - b);
    if (!(lo < hi - 1e-6)) return out;

    const double lnz = std::log(z);
    auto L = [&](std::complex<double> t) {
        std::complex<double> acc = -t * lnz;
        for (double b : s.b_top) acc += detail::log_gamma_complex(b + t);
        for (double a : s.a_top) acc += detail::log_gamma_complex(1.0 - a - t);
        for (double b : s.b_rest) acc -= detail::log_gamma_complex(1.0 - b - t);
        for (double a : s.a_rest) acc -= detail::log_gamma_complex(a + t);
        return acc;
    };

    // Place the line at the on-axis magnitude minimum. Re L(c) is convex in c
    // (sums of log-gamma), and its minimum is the saddle where the phase is
    // stationary, which kills the oscillatory cancellation of the tau
    // integral. Bracket geometrically, then ternary-search.
    auto L0 = [&](double c) { return L(std::complex<double>(c, 0.0)).real(); };
    const double margin = std::min(0.1, 0.2 * (hi - lo));
    double cl = lo + margin;
    double ch;
    if (std::isfinite(hi)) {
        ch = hi - margin;
    } else {
        ch = lo + 1.0;
        double prev = L0(cl);
        while (ch < lo + 1e8) {
            double v = L0(ch);
            if (v > prev) break;
            prev = v;
            ch = lo + (ch - lo) * 2.0;
        }
    }
    for (int it = 0; it < 120 && (ch - cl) > 1e-8 * (1.0 + std::fabs(ch)); ++it) {
        double m1 = cl + (ch - cl) / 3.0;
        double m2 = ch - (ch - cl) / 3.0;
        if (L0(m1) < L0(m2))
            ch = m2;
        else
            cl = m1;
    }
    const double c = 0.5 * (cl + ch);

    const double M = L({c, 0.0}).real();
    auto f = [&](double tau) {
        std::complex<double> e = std::exp(L({c, tau}) - M);
        return e.real();
    };
    auto g = [&](double tau) {
        return std::exp((L({c, tau}) - M).real());
    };

    double total = 0.0, total_abs = 0.0, err = 0.0;
    int quiet = 0;
    const double tau_cap = 400.0;
    for (double t0 = 0.0; t0 < tau_cap; t0 += 1.0) {
        auto part = integrate_adaptive(f, t0, t0 + 1.0, 1e-16, 1e-13, 400);
        auto part_abs = integrate_adaptive(g, t0, t0 + 1.0, 1e-16, 1e-13, 400);
        total += part.value;
        total_abs += part_abs.value;
        err += part.abs_error;
        if (part_abs.value < 1e-17 * std::max(total_abs, 1e-30) && t0 >= 5.0) {
            if (++quiet >= 3) break;
        } else {
            quiet = 0;
        }
    }
    if (total == 0.0 || !std::isfinite(total)) return out;

    out.val.log_abs = M + std::log(std::fabs(total) / 3.141592653589793);
    out.val.sign = total > 0.0 ? 1 : -1;
    out.rel_err = std::max((err + 4e-15 * total_abs) / std::fabs(total), 1e-13);
    out.ok = std::isfinite(out.val.log_abs);
    return out;
}

inline bool b_row_collision(const MeijerGSpec& s) {
    std::vector<double> bs(s.b_top);
    bs.insert(bs.end(), s.b_rest.begin(), s.b_rest.end());
    for (size_t i = 0; i < bs.size(); ++i)
        for (size_t j = i + 1; j < bs.size(); ++j) {
            double d = bs[i] - bs[j];
            if (std::fabs(d - std::round(d)) < 1e-9) return true;
        }
    return false;
}

}  // namespace detail

// G(z | spec) in sign/log form. Throws NumericError (with the parameter rows
// and argument in the message) when no method reaches `rel_tol`.
inline ScaledReal meijer_g_scaled(const MeijerGSpec& spec, double z,
                                  double rel_tol = 1e-9) {
    spec.validate();
    if (!std::isfinite(z) || z <= 0.0)
        throw std::domain_error("meijer_g: argument must be positive and finite");

    detail::MeijerEval best;
    auto consider = [&](const detail::MeijerEval& e) {
        if (e.ok && e.rel_err < best.rel_err) best = e;
    };

    if (!detail::b_row_collision(spec)) {
        consider(detail::meijer_slater(spec, z, 0.0));
    } else {
        constexpr double kEps = 1e-6;
        auto rp = detail::meijer_slater(spec, z, kEps);
        auto rm = detail::meijer_slater(spec, z, -kEps);
        if (rp.ok && rm.ok && rp.val.sign != 0 && rm.val.sign != 0) {
            detail::MeijerEval avg;
            double shift = std::max(rp.val.log_abs, rm.val.log_abs);
            double sum = rp.val.sign * std::exp(rp.val.log_abs - shift) +
                         rm.val.sign * std::exp(rm.val.log_abs - shift);
            if (sum != 0.0) {
                avg.val.log_abs = shift + std::log(0.5 * std::fabs(sum));
                avg.val.sign = sum > 0.0 ? 1 : -1;
                avg.rel_err = std::max({rp.rel_err, rm.rel_err, 3e-10});
                avg.ok = true;
                consider(avg);
            }
        }
    }
    if (!(best.ok && best.rel_err <= rel_tol)) consider(detail::meijer_mb(spec, z));

    if (best.ok && best.rel_err <= rel_tol) return best.val;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", z);
    throw NumericError("meijer_g: accuracy target " + std::to_string(rel_tol) +
                       " not reached (best " +
                       (best.ok ? std::to_string(best.rel_err) : std::string("n/a")) +
                       ") for " + spec.describe() + " at z=" + buf);
}

inline double meijer_g(const MeijerGSpec& spec, double z, double rel_tol = 1e-9) {
    return meijer_g_scaled(spec, z, rel_tol).value();
}

}  // namespace rfso
