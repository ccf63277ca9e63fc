#pragma once

// Parameter sweeps over one axis with optional labeled curve variants (a
// figure is a family of curves sharing axis, points and outputs). Rows are
// produced in (curve, axis) order no matter how the work is scheduled.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "rfso/analytics.hpp"
#include "rfso/montecarlo.hpp"
#include "rfso/system.hpp"

namespace rfso {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

enum class SweepAxis {
    mu1_db,
    mu2_db,
    sigma_r,
    n_relays,
    rank,
    rho,
    kappa_both,
    gamma_th_db,
};

enum class OutputKind {
    outage_cf,
    outage_quad,
    outage_mc,
    cap_approx,
    cap_bound,
    cap_mc,
    ceilings,
};

// Concrete table columns; `ceilings` expands to two of them.
enum class Column {
    outage_cf,
    outage_quad,
    outage_mc,
    cap_approx,
    cap_bound,
    cap_mc,
    sndr_ceiling,
    capacity_ceiling,
};

inline std::vector<Column> columns_for(OutputKind k) {
    switch (k) {
        case OutputKind::outage_cf: return {Column::outage_cf};
        case OutputKind::outage_quad: return {Column::outage_quad};
        case OutputKind::outage_mc: return {Column::outage_mc};
        case OutputKind::cap_approx: return {Column::cap_approx};
        case OutputKind::cap_bound: return {Column::cap_bound};
        case OutputKind::cap_mc: return {Column::cap_mc};
        case OutputKind::ceilings:
            return {Column::sndr_ceiling, Column::capacity_ceiling};
    }
    return {};
}

inline bool column_has_std_error(Column c) {
    return c == Column::outage_mc || c == Column::cap_mc;
}

inline const char* column_name(Column c) {
    switch (c) {
        case Column::outage_cf: return "outage_cf";
        case Column::outage_quad: return "outage_quad";
        case Column::outage_mc: return "outage_mc";
        case Column::cap_approx: return "cap_approx";
        case Column::cap_bound: return "cap_bound";
        case Column::cap_mc: return "cap_mc";
        case Column::sndr_ceiling: return "sndr_ceiling";
        case Column::capacity_ceiling: return "capacity_ceiling";
    }
    return "?";
}

// Per-curve overrides of the base link.
struct CurveVariant {
    std::string label;
    std::optional<double> kappa1, kappa2, rho, sigma_r;
    std::optional<int> n_relays, rank;
    bool rank_best = false;       // rank follows n_relays
    bool mu2_tracks_mu1 = false;  // mu2 follows a mu1_db axis point
};

struct SweepSpec {
    // base link in input units (dB at this boundary, linear inside)
    int n_relays = 1;
    int rank = 1;
    double rho = 1.0;
    double mu1_db = 0.0;
    double mu2_db = 0.0;
    double gamma_th_db = 0.0;
    double kappa1 = 0.0;
    double kappa2 = 0.0;
    std::optional<double> sigma_r;  // exactly one of sigma_r / (alpha, beta)
    std::optional<double> alpha;
    std::optional<double> beta;

    SweepAxis axis = SweepAxis::mu1_db;
    std::vector<double> points;
    std::vector<OutputKind> outputs;
    uint64_t mc_samples = 200000;
    uint64_t seed = 1;
    std::vector<CurveVariant> variants;  // empty: single unlabeled curve

    bool has_mc_output() const {
        for (auto k : outputs)
            if (k == OutputKind::outage_mc || k == OutputKind::cap_mc) return true;
        return false;
    }
};

namespace detail {

inline bool is_integer_axis(SweepAxis a) {
    return a == SweepAxis::n_relays || a == SweepAxis::rank;
}

}  // namespace detail

inline void validate_sweep(const SweepSpec& s) {
    if (s.points.empty())
        throw std::invalid_argument("sweep.points: must be nonempty");
    for (size_t i = 1; i < s.points.size(); ++i)
        if (!(s.points[i] > s.points[i - 1]))
            throw std::invalid_argument("sweep.points: must be strictly increasing");
    if (detail::is_integer_axis(s.axis)) {
        for (double p : s.points)
            if (p != std::floor(p) || p < 1.0)
                throw std::invalid_argument(
                    "sweep.points: integer axis requires positive integer points");
    }
    if (s.outputs.empty())
        throw std::invalid_argument("sweep.outputs: must be nonempty");
    if (s.axis == SweepAxis::rank) {
        int max_n = s.n_relays;
        for (const auto& v : s.variants)
            if (v.n_relays) max_n = std::max(max_n, *v.n_relays);
        for (double p : s.points)
            if (p > max_n)
                throw std::invalid_argument(
                    "sweep.points: rank points must not exceed n_relays");
    }
}

// Resolve one (variant, axis point) into a full link description.
inline LinkConfig resolve_point(const SweepSpec& s, const CurveVariant& v,
                                double x) {
    int n = v.n_relays.value_or(s.n_relays);
    int rank = v.rank.value_or(s.rank);
    double rho = v.rho.value_or(s.rho);
    double k1 = v.kappa1.value_or(s.kappa1);
    double k2 = v.kappa2.value_or(s.kappa2);
    double mu1 = db_to_linear(s.mu1_db);
    double mu2 = db_to_linear(s.mu2_db);
    double gth = db_to_linear(s.gamma_th_db);
    std::optional<double> sig = v.sigma_r ? v.sigma_r : s.sigma_r;
    double alpha, beta;
    if (sig) {
        auto ab = turbulence_params(*sig);
        alpha = ab.first;
        beta = ab.second;
    } else {
        alpha = s.alpha.value();
        beta = s.beta.value();
    }

    switch (s.axis) {
        case SweepAxis::mu1_db:
            mu1 = db_to_linear(x);
            if (v.mu2_tracks_mu1) mu2 = mu1;
            break;
        case SweepAxis::mu2_db: mu2 = db_to_linear(x); break;
        case SweepAxis::sigma_r: {
            auto ab = turbulence_params(x);
            alpha = ab.first;
            beta = ab.second;
            break;
        }
        case SweepAxis::n_relays: n = static_cast<int>(x); break;
        case SweepAxis::rank: rank = static_cast<int>(x); break;
        case SweepAxis::rho: rho = x; break;
        case SweepAxis::kappa_both: k1 = k2 = x; break;
        case SweepAxis::gamma_th_db: gth = db_to_linear(x); break;
    }
    if (v.rank_best) rank = n;
    return LinkConfig(RfHopParams(n, rank, rho, mu1), FsoHopParams(alpha, beta, mu2),
                      ImpairmentParams(k1, k2), gth);
}

struct OutputCell {
    std::optional<double> value;
    std::optional<double> std_error;
    std::optional<std::string> error;
};

struct OutputRow {
    std::string curve;
    double axis_value = 0.0;
    std::map<Column, OutputCell> cells;
};

namespace detail {

inline void fill_row(const SweepSpec& s, const CurveVariant& v, double x,
                     uint64_t task_seed, int mc_jobs, OutputRow& row) {
    LinkConfig cfg = resolve_point(s, v, x);
    auto guarded = [&](Column col, auto&& fn) {
        OutputCell cell;
        try {
            fn(cell);
        } catch (const std::exception& e) {
            cell.value.reset();
            cell.std_error.reset();
            cell.error = e.what();
        }
        row.cells[col] = std::move(cell);
    };
    for (OutputKind k : s.outputs) {
        switch (k) {
            case OutputKind::outage_cf:
                guarded(Column::outage_cf, [&](OutputCell& c) {
                    c.value = outage_closed_form(cfg).probability;
                });
                break;
            case OutputKind::outage_quad:
                guarded(Column::outage_quad, [&](OutputCell& c) {
                    c.value = outage_quadrature(cfg).probability;
                });
                break;
            case OutputKind::outage_mc:
                guarded(Column::outage_mc, [&](OutputCell& c) {
                    Estimate e = estimate_outage(cfg, s.mc_samples, task_seed, mc_jobs);
                    c.value = e.value;
                    c.std_error = e.std_error;
                });
                break;
            case OutputKind::cap_approx:
                guarded(Column::cap_approx,
                        [&](OutputCell& c) { c.value = capacity_approx(cfg); });
                break;
            case OutputKind::cap_bound:
                guarded(Column::cap_bound,
                        [&](OutputCell& c) { c.value = capacity_upper_bound(cfg); });
                break;
            case OutputKind::cap_mc:
                guarded(Column::cap_mc, [&](OutputCell& c) {
                    Estimate e = estimate_capacity(cfg, s.mc_samples, task_seed, mc_jobs);
                    c.value = e.value;
                    c.std_error = e.std_error;
                });
                break;
            case OutputKind::ceilings: {
                Ceiling g = sndr_ceiling(cfg.imp);
                OutputCell sc, cc;
                if (!g.is_unbounded()) {
                    sc.value = g.value();
                    cc.value = capacity_ceiling(cfg.imp).value();
                }
                row.cells[Column::sndr_ceiling] = sc;
                row.cells[Column::capacity_ceiling] = cc;
                break;
            }
        }
    }
}

}  // namespace detail

// One row per (curve, point). Per-point numeric failures become in-row error
// markers and the sweep continues.
inline std::vector<OutputRow> run_sweep(const SweepSpec& s, int jobs = 1) {
    validate_sweep(s);
    std::vector<CurveVariant> variants = s.variants;
    if (variants.empty()) variants.push_back(CurveVariant{});

    const size_t n_tasks = variants.size() * s.points.size();
    std::vector<OutputRow> rows(n_tasks);
    jobs = std::max(1, jobs);
    const int outer = static_cast<int>(
        std::min<size_t>(static_cast<size_t>(jobs), n_tasks));
    const int inner = std::max(1, jobs / outer);

    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            size_t t = next.fetch_add(1);
            if (t >= n_tasks) return;
            size_t vi = t / s.points.size();
            size_t pi = t % s.points.size();
            OutputRow& row = rows[t];
            row.curve = variants[vi].label;
            row.axis_value = s.points[pi];
            uint64_t task_seed = splitmix64(s.seed ^ splitmix64(t + 1));
            detail::fill_row(s, variants[vi], s.points[pi], task_seed, inner, row);
        }
    };
    if (outer == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(outer);
        for (int w = 0; w < outer; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return rows;
}

// Canned sweeps reproducing the shapes of the five reference plots. Values
// the source figures do not pin down (kappa pairs, rho, relay counts,
// turbulence strength, thresholds) are reconstruction defaults, not quoted
// settings; they are documented in the README.
enum class FigureId { fig1, fig2, fig3, fig4, fig5 };

inline FigureId figure_id_from_string(const std::string& name) {
    if (name == "fig1") return FigureId::fig1;
    if (name == "fig2") return FigureId::fig2;
    if (name == "fig3") return FigureId::fig3;
    if (name == "fig4") return FigureId::fig4;
    if (name == "fig5") return FigureId::fig5;
    throw std::invalid_argument("unknown figure preset: " + name);
}

namespace detail {

inline std::vector<double> linear_points(double lo, double hi, int count) {
    std::vector<double> p(count);
    for (int i = 0; i < count; ++i)
        p[i] = lo + (hi - lo) * static_cast<double>(i) / (count - 1);
    return p;
}

}  // namespace detail

inline SweepSpec figure_preset(FigureId id) {
    SweepSpec s;
    s.n_relays = 3;
    s.rank = 2;
    s.rho = 0.7;
    s.mu1_db = 15.0;
    s.mu2_db = 15.0;
    s.gamma_th_db = 0.0;
    s.sigma_r = 0.8;
    s.mc_samples = 200000;
    s.seed = 20240915;
    switch (id) {
        case FigureId::fig1:
            // outage vs mu1; fixed mu2 shows the floor, co-scaled mu2 removes it
            s.mu2_db = 25.0;
            s.axis = SweepAxis::mu1_db;
            s.points = detail::linear_points(0.0, 50.0, 26);
            s.outputs = {OutputKind::outage_cf, OutputKind::outage_quad,
                         OutputKind::outage_mc};
            {
                CurveVariant ideal;
                ideal.label = "ideal_mu2_25db";
                ideal.kappa1 = ideal.kappa2 = 0.0;
                CurveVariant low;
                low.label = "k_0.1_0.1_mu2_25db";
                low.kappa1 = low.kappa2 = 0.1;
                CurveVariant high;
                high.label = "k_0.2_0.3_mu2_25db";
                high.kappa1 = 0.2;
                high.kappa2 = 0.3;
                CurveVariant scaled;
                scaled.label = "k_0.1_0.1_mu2_tracks";
                scaled.kappa1 = scaled.kappa2 = 0.1;
                scaled.mu2_tracks_mu1 = true;
                s.variants = {ideal, low, high, scaled};
            }
            break;
        case FigureId::fig2:
            // outage vs Rytov deviation, best/worst selection, two kappa pairs
            s.mu1_db = s.mu2_db = 20.0;
            s.rho = 0.8;
            s.axis = SweepAxis::sigma_r;
            s.points = detail::linear_points(0.3, 3.0, 19);
            s.outputs = {OutputKind::outage_cf, OutputKind::outage_quad,
                         OutputKind::outage_mc};
            {
                auto curve = [](const char* label, int rank, double k) {
                    CurveVariant v;
                    v.label = label;
                    v.rank = rank;
                    v.kappa1 = v.kappa2 = k;
                    return v;
                };
                s.variants = {curve("best_ideal", 3, 0.0),
                              curve("best_k_0.2", 3, 0.2),
                              curve("worst_ideal", 1, 0.0),
                              curve("worst_k_0.2", 1, 0.2)};
            }
            break;
        case FigureId::fig3:
            // outage vs relay count (best rank), weak vs moderate turbulence
            s.mu1_db = s.mu2_db = 18.0;
            s.rho = 0.8;
            s.axis = SweepAxis::n_relays;
            s.points = {1, 2, 3, 4, 5, 6, 7, 8};
            s.outputs = {OutputKind::outage_cf, OutputKind::outage_quad,
                         OutputKind::outage_mc};
            {
                auto curve = [](const char* label, double sig, double k) {
                    CurveVariant v;
                    v.label = label;
                    v.sigma_r = sig;
                    v.kappa1 = v.kappa2 = k;
                    v.rank_best = true;
                    return v;
                };
                s.variants = {curve("weak_ideal", 0.5, 0.0),
                              curve("weak_k_0.2", 0.5, 0.2),
                              curve("moderate_ideal", 1.2, 0.0),
                              curve("moderate_k_0.2", 1.2, 0.2)};
            }
            break;
        case FigureId::fig4:
            // capacity vs impairment level, best vs worst selection rank
            s.mu1_db = s.mu2_db = 20.0;
            s.rho = 0.8;
            s.axis = SweepAxis::kappa_both;
            s.points = detail::linear_points(0.0, 0.5, 21);
            s.outputs = {OutputKind::cap_approx, OutputKind::cap_mc,
                         OutputKind::ceilings};
            {
                CurveVariant best;
                best.label = "best";
                best.rank_best = true;
                CurveVariant worst;
                worst.label = "worst";
                worst.rank = 1;
                s.variants = {best, worst};
            }
            break;
        case FigureId::fig5:
            // capacity vs co-scaled SNR: impairment ceilings and CSI-age ordering
            s.rank = 3;
            s.axis = SweepAxis::mu1_db;
            s.points = detail::linear_points(0.0, 60.0, 25);
            s.outputs = {OutputKind::cap_approx, OutputKind::cap_mc,
                         OutputKind::ceilings};
            {
                auto curve = [](const char* label, double k, double rho) {
                    CurveVariant v;
                    v.label = label;
                    v.kappa1 = v.kappa2 = k;
                    v.rho = rho;
                    v.mu2_tracks_mu1 = true;
                    return v;
                };
                s.variants = {curve("ideal_rho_1", 0.0, 1.0),
                              curve("k_0.1_rho_1", 0.1, 1.0),
                              curve("k_0.3_rho_1", 0.3, 1.0),
                              curve("k_0.1_rho_0.5", 0.1, 0.5),
                              curve("k_0.1_rho_0", 0.1, 0.0)};
            }
            break;
    }
    return s;
}

}  // namespace rfso
