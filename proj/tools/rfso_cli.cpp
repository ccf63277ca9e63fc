// Command-line front end: single-point evaluations, sweeps, figure presets,
// and the oracle cross-check suite.
//
// Exit codes: 0 success, 1 validation error, 2 numeric failure in all
// requested points, 3 I/O error.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "rfso/rfso.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string output_path;
    std::string format = "csv";
    uint64_t samples = 0;  // 0: keep config/preset value, no MC for point cmds
    bool samples_set = false;
    uint64_t seed = 0;
    bool seed_set = false;
    int jobs = 0;
    bool quiet = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool need_config) {
    auto* cfg = cmd->add_option("--config", o.config_path, "configuration file (JSON)");
    if (need_config) cfg->required();
    cmd->add_option("--output", o.output_path, "output file (default: stdout)");
    cmd->add_option("--format", o.format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--samples", o.samples, "Monte-Carlo sample count (>= 1e4)")
        ->check(CLI::Range(static_cast<uint64_t>(10000),
                           static_cast<uint64_t>(1) << 40))
        ->each([&o](const std::string&) { o.samples_set = true; });
    cmd->add_option("--seed", o.seed, "Monte-Carlo seed")
        ->each([&o](const std::string&) { o.seed_set = true; });
    cmd->add_option("--jobs", o.jobs, "worker threads (default: hardware)");
    cmd->add_flag("--quiet", o.quiet, "suppress progress output");
}

int effective_jobs(const CommonOpts& o) {
    if (o.jobs > 0) return o.jobs;
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

// output sink: file when --output given, stdout otherwise
struct OutputTarget {
    std::ofstream file;
    std::ostream* os = &std::cout;
    explicit OutputTarget(const std::string& path) {
        if (!path.empty()) {
            file.open(path, std::ios::binary);
            if (!file) throw std::ios_base::failure("cannot open output file: " + path);
            os = &file;
        }
    }
};

void apply_overrides(rfso::SweepSpec& spec, const CommonOpts& o) {
    if (o.samples_set) spec.mc_samples = o.samples;
    if (o.seed_set) spec.seed = o.seed;
}

// ---- single-point commands ---------------------------------------------

rfso::LinkConfig point_config(const rfso::SweepSpec& spec) {
    rfso::CurveVariant none;
    // axis value unused when we bypass the axis switch: resolve on the base
    // by passing the base value for whatever the axis is
    double x;
    switch (spec.axis) {
        case rfso::SweepAxis::mu1_db: x = spec.mu1_db; break;
        case rfso::SweepAxis::mu2_db: x = spec.mu2_db; break;
        case rfso::SweepAxis::sigma_r: x = spec.sigma_r.value_or(1.0); break;
        case rfso::SweepAxis::n_relays: x = spec.n_relays; break;
        case rfso::SweepAxis::rank: x = spec.rank; break;
        case rfso::SweepAxis::rho: x = spec.rho; break;
        case rfso::SweepAxis::kappa_both: x = spec.kappa1; break;
        case rfso::SweepAxis::gamma_th_db: x = spec.gamma_th_db; break;
        default: x = spec.mu1_db; break;
    }
    return rfso::resolve_point(spec, none, x);
}

int cmd_outage(const CommonOpts& o) {
    rfso::SweepSpec spec = rfso::parse_config(o.config_path);
    apply_overrides(spec, o);
    rfso::LinkConfig cfg = point_config(spec);
    rfso::OutageResult cf = rfso::outage_closed_form(cfg);
    rfso::OutageResult quad = rfso::outage_quadrature(cfg);
    bool with_mc = o.samples_set;
    rfso::Estimate mc;
    if (with_mc)
        mc = rfso::estimate_outage(cfg, spec.mc_samples, spec.seed, effective_jobs(o));

    OutputTarget out(o.output_path);
    if (o.format == "json") {
        nlohmann::json j;
        j["spec"] = rfso::spec_echo_json(spec);
        j["outage_cf"] = cf.probability;
        j["outage_quad"] = quad.probability;
        j["condition_met"] = cf.condition_met;
        if (with_mc) {
            j["outage_mc"] = mc.value;
            j["outage_mc_se"] = mc.std_error;
            j["outage_mc_samples"] = mc.n_samples;
            j["outage_mc_seed"] = mc.seed;
        }
        *out.os << j.dump(2) << '\n';
    } else {
        *out.os << "outage_cf,outage_quad,condition_met";
        if (with_mc) *out.os << ",outage_mc,outage_mc_se";
        *out.os << '\n'
                << rfso::format_double(cf.probability) << ','
                << rfso::format_double(quad.probability) << ','
                << (cf.condition_met ? 1 : 0);
        if (with_mc)
            *out.os << ',' << rfso::format_double(mc.value) << ','
                    << rfso::format_double(mc.std_error);
        *out.os << '\n';
    }
    return 0;
}

int cmd_capacity(const CommonOpts& o) {
    rfso::SweepSpec spec = rfso::parse_config(o.config_path);
    apply_overrides(spec, o);
    rfso::LinkConfig cfg = point_config(spec);
    double approx = rfso::capacity_approx(cfg);
    double bound = rfso::capacity_upper_bound(cfg);
    rfso::Ceiling ceil = rfso::capacity_ceiling(cfg.imp);
    bool with_mc = o.samples_set;
    rfso::Estimate mc;
    if (with_mc)
        mc = rfso::estimate_capacity(cfg, spec.mc_samples, spec.seed,
                                     effective_jobs(o));

    OutputTarget out(o.output_path);
    if (o.format == "json") {
        nlohmann::json j;
        j["spec"] = rfso::spec_echo_json(spec);
        j["cap_approx"] = approx;
        j["cap_bound"] = bound;
        j["capacity_ceiling"] =
            ceil.is_unbounded() ? nlohmann::json(nullptr) : nlohmann::json(ceil.value());
        if (with_mc) {
            j["cap_mc"] = mc.value;
            j["cap_mc_se"] = mc.std_error;
        }
        *out.os << j.dump(2) << '\n';
    } else {
        *out.os << "cap_approx,cap_bound,capacity_ceiling";
        if (with_mc) *out.os << ",cap_mc,cap_mc_se";
        *out.os << '\n'
                << rfso::format_double(approx) << ',' << rfso::format_double(bound)
                << ',';
        if (!ceil.is_unbounded()) *out.os << rfso::format_double(ceil.value());
        if (with_mc)
            *out.os << ',' << rfso::format_double(mc.value) << ','
                    << rfso::format_double(mc.std_error);
        *out.os << '\n';
    }
    return 0;
}

int cmd_ceiling(const CommonOpts& o) {
    rfso::SweepSpec spec = rfso::parse_config(o.config_path);
    rfso::ImpairmentParams imp(spec.kappa1, spec.kappa2);
    double d = rfso::delta(imp);
    rfso::Ceiling sg = rfso::sndr_ceiling(imp);
    rfso::Ceiling cg = rfso::capacity_ceiling(imp);

    OutputTarget out(o.output_path);
    if (o.format == "json") {
        nlohmann::json j;
        j["delta"] = d;
        j["sndr_ceiling"] =
            sg.is_unbounded() ? nlohmann::json(nullptr) : nlohmann::json(sg.value());
        j["capacity_ceiling"] =
            cg.is_unbounded() ? nlohmann::json(nullptr) : nlohmann::json(cg.value());
        *out.os << j.dump(2) << '\n';
    } else {
        *out.os << "delta,sndr_ceiling,capacity_ceiling\n"
                << rfso::format_double(d) << ',';
        if (!sg.is_unbounded()) *out.os << rfso::format_double(sg.value());
        *out.os << ',';
        if (!cg.is_unbounded()) *out.os << rfso::format_double(cg.value());
        *out.os << '\n';
    }
    return 0;
}

// ---- sweeps and figures --------------------------------------------------

int write_sweep_output(const rfso::SweepSpec& spec,
                       const std::vector<rfso::OutputRow>& rows,
                       const CommonOpts& o) {
    OutputTarget out(o.output_path);
    if (o.format == "json")
        *out.os << rfso::rows_json(spec, rows).dump(2) << '\n';
    else
        rfso::write_rows_csv(*out.os, spec, rows);

    // exit 2 only when every requested cell of every point failed
    bool any_ok = false;
    for (const auto& row : rows)
        for (const auto& [col, cell] : row.cells)
            if (!cell.error) any_ok = true;
    return any_ok ? 0 : 2;
}

int cmd_sweep(const CommonOpts& o) {
    rfso::SweepSpec spec = rfso::parse_config(o.config_path);
    if (spec.points.empty())
        throw rfso::ConfigError("sweep: missing key");
    apply_overrides(spec, o);
    auto rows = rfso::run_sweep(spec, effective_jobs(o));
    return write_sweep_output(spec, rows, o);
}

int cmd_figure(const std::string& name, const CommonOpts& o) {
    rfso::SweepSpec spec = rfso::figure_preset(rfso::figure_id_from_string(name));
    apply_overrides(spec, o);
    if (!o.quiet)
        std::cerr << "figure " << name << ": " << spec.points.size() << " points x "
                  << spec.variants.size() << " curves\n";
    auto rows = rfso::run_sweep(spec, effective_jobs(o));
    return write_sweep_output(spec, rows, o);
}

// ---- oracle cross-check suite -------------------------------------------

// E[Theta] by honest nested quadrature over both hops (the reference route
// for the capacity-bound kernel).
double bound_term_nested_quadrature(const rfso::LinkConfig& cfg) {
    const double c = cfg.constant_c();
    const double k2b = 1.0 + cfg.imp.kappa2 * cfg.imp.kappa2;
    auto outer = [&](double g2) {
        auto inner = [&](double g1) {
            return g1 * g2 / (k2b * g2 + c) * rfso::rf_pdf(g1, cfg.rf);
        };
        auto r = rfso::integrate_zero_to_inf(inner, cfg.rf.mu1, 1e-10, 1e-9);
        return r.value * rfso::fso_pdf(g2, cfg.fso);
    };
    auto r = rfso::integrate_zero_to_inf(outer, rfso::fso_mean(cfg.fso), 1e-9, 1e-7);
    return r.value;
}

int cmd_validate(const CommonOpts& o) {
    const uint64_t samples = o.samples_set ? o.samples : 200000;
    const uint64_t seed = o.seed_set ? o.seed : 99;
    const int jobs = effective_jobs(o);
    int failures = 0;
    auto report = [&](const std::string& name, bool ok, const std::string& detail) {
        if (!ok) ++failures;
        if (ok && o.quiet) return;
        std::cout << (ok ? "PASS " : "FAIL ") << name
                  << (detail.empty() || ok ? "" : ": " + detail) << '\n';
    };

    {
        auto [a, b] = rfso::turbulence_params(1.0);
        bool ok = std::fabs(a / 4.393859025392147 - 1.0) < 1e-12 &&
                  std::fabs(b / 2.563631979503695 - 1.0) < 1e-12;
        report("turbulence_golden", ok, "");
    }
    {
        double worst = 0.0;
        for (int n = 1; n <= 6; ++n)
            for (int m = 1; m <= n; ++m)
                for (double x : {0.1, 1.0, 5.0}) {
                    rfso::RfHopParams p(n, m, 0.0, 2.0);
                    worst = std::max(worst, std::fabs(rfso::rf_cdf(x, p) -
                                                      (1.0 - std::exp(-x / 2.0))));
                }
        report("rf_rho0_collapse", worst < 1e-10, "worst " + std::to_string(worst));
    }
    {
        double worst = 0.0;
        for (int n = 1; n <= 6; ++n)
            for (double x : {0.1, 1.0, 5.0}) {
                rfso::RfHopParams p(n, n, 1.0, 2.0);
                double ref = std::pow(1.0 - std::exp(-x / 2.0), n);
                worst = std::max(worst, std::fabs(rfso::rf_cdf(x, p) - ref));
            }
        report("rf_order_statistics", worst < 1e-10, "worst " + std::to_string(worst));
    }
    {
        rfso::RfHopParams p(3, 3, 1.0, 6.0);
        bool ok = std::fabs(rfso::rf_mean(p) / 11.0 - 1.0) < 1e-12;
        report("rf_mean_harmonic", ok, "");
    }
    {
        rfso::MeijerGSpec g;
        g.b_top = {0.0};
        double worst = 0.0;
        for (double z : {0.01, 0.1, 1.0, 5.0, 10.0})
            worst = std::max(worst,
                             std::fabs(rfso::meijer_g(g, z) / std::exp(-z) - 1.0));
        report("meijer_exp_identity", worst < 1e-9, "worst " + std::to_string(worst));
    }
    {
        double worst = 0.0;
        for (auto [a, b] : {std::pair{0.55, -0.15}, std::pair{0.5, -0.5}}) {
            rfso::MeijerGSpec g;
            g.b_top = {a, b};
            for (double z : {0.25, 4.0, 50.0}) {
                double ref = 2.0 * std::pow(z, 0.5 * (a + b)) *
                             rfso::bessel_k(a - b, 2.0 * std::sqrt(z));
                worst = std::max(worst, std::fabs(rfso::meijer_g(g, z) / ref - 1.0));
            }
        }
        report("meijer_bessel_identity", worst < 1e-9, "worst " + std::to_string(worst));
    }
    double mu = rfso::db_to_linear(15.0);
    {
        double worst = 0.0;
        for (double rho : {0.0, 0.7})
            for (double sig : {0.5, 1.2}) {
                rfso::LinkConfig cfg(rfso::RfHopParams(3, 2, rho, mu),
                                     rfso::FsoHopParams::from_rytov(sig, mu),
                                     rfso::ImpairmentParams(0.1, 0.1), 1.0);
                double cf = rfso::outage_closed_form(cfg).probability;
                double qd = rfso::outage_quadrature(cfg).probability;
                worst = std::max(worst, std::fabs(cf / qd - 1.0));
            }
        report("outage_dual_route", worst < 1e-6, "worst " + std::to_string(worst));
    }
    rfso::LinkConfig base(rfso::RfHopParams(3, 2, 0.7, mu),
                          rfso::FsoHopParams::from_rytov(0.8, mu),
                          rfso::ImpairmentParams(0.1, 0.1), 1.0);
    {
        double cf = rfso::outage_closed_form(base).probability;
        rfso::Estimate mc = rfso::estimate_outage(base, samples, seed, jobs);
        bool ok = std::fabs(cf - mc.value) <= 3.0 * mc.std_error + 1e-12;
        report("outage_mc_agreement", ok,
               "cf " + std::to_string(cf) + " mc " + std::to_string(mc.value) +
                   " se " + std::to_string(mc.std_error));
    }
    {
        double closed = rfso::capacity_bound_term(base);
        double quad = bound_term_nested_quadrature(base);
        bool ok = std::fabs(closed / quad - 1.0) < 1e-5;
        report("capacity_bound_kernel", ok,
               "closed " + std::to_string(closed) + " quad " + std::to_string(quad));
    }
    {
        double hi = rfso::db_to_linear(60.0);
        rfso::LinkConfig cfg(rfso::RfHopParams(3, 2, 0.7, hi),
                             rfso::FsoHopParams::from_rytov(0.8, hi),
                             rfso::ImpairmentParams(0.1, 0.1), 1.0);
        double ceil = rfso::capacity_ceiling(cfg.imp).value();
        rfso::Estimate mc = rfso::estimate_capacity(cfg, samples, seed, jobs);
        bool ok = std::fabs(mc.value - ceil) < 0.01 * ceil;
        report("capacity_ceiling_mc", ok,
               "mc " + std::to_string(mc.value) + " ceiling " + std::to_string(ceil));
    }
    return failures == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dual-hop RF/FSO relay performance (outage, capacity, ceilings)"};
    app.require_subcommand(1);

    CommonOpts outage_o, capacity_o, ceiling_o, sweep_o, figure_o, validate_o;
    std::string figure_name;

    add_common(app.add_subcommand("outage", "outage probability at the configured point"),
               outage_o, true);
    add_common(app.add_subcommand("capacity", "ergodic capacity at the configured point"),
               capacity_o, true);
    add_common(app.add_subcommand("ceiling", "impairment ceilings for the configured point"),
               ceiling_o, true);
    add_common(app.add_subcommand("sweep", "run the sweep described by the config"),
               sweep_o, true);
    auto* fig = app.add_subcommand("figure", "run a canned figure-style sweep");
    fig->add_option("name", figure_name, "fig1..fig5")->required();
    add_common(fig, figure_o, false);
    add_common(app.add_subcommand("validate", "run the oracle cross-check suite"),
               validate_o, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("outage")) return cmd_outage(outage_o);
        if (app.got_subcommand("capacity")) return cmd_capacity(capacity_o);
        if (app.got_subcommand("ceiling")) return cmd_ceiling(ceiling_o);
        if (app.got_subcommand("sweep")) return cmd_sweep(sweep_o);
        if (app.got_subcommand("figure")) return cmd_figure(figure_name, figure_o);
        if (app.got_subcommand("validate")) return cmd_validate(validate_o);
    } catch (const rfso::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const rfso::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return 2;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
