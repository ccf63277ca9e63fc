#pragma once

// JSON configuration with key-path error messages. dB-scaled and sigma_R
// inputs are converted exactly once, here.

#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "rfso/sweep.hpp"

namespace rfso {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline const char* axis_name(SweepAxis a) {
    switch (a) {
        case SweepAxis::mu1_db: return "mu1_db";
        case SweepAxis::mu2_db: return "mu2_db";
        case SweepAxis::sigma_r: return "sigma_r";
        case SweepAxis::n_relays: return "n_relays";
        case SweepAxis::rank: return "rank";
        case SweepAxis::rho: return "rho";
        case SweepAxis::kappa_both: return "kappa_both";
        case SweepAxis::gamma_th_db: return "gamma_th_db";
    }
    return "?";
}

inline SweepAxis axis_from_string(const std::string& s) {
    for (auto a : {SweepAxis::mu1_db, SweepAxis::mu2_db, SweepAxis::sigma_r,
                   SweepAxis::n_relays, SweepAxis::rank, SweepAxis::rho,
                   SweepAxis::kappa_both, SweepAxis::gamma_th_db})
        if (s == axis_name(a)) return a;
    throw ConfigError("sweep.axis: unknown axis '" + s + "'");
}

inline const char* output_kind_name(OutputKind k) {
    switch (k) {
        case OutputKind::outage_cf: return "outage_cf";
        case OutputKind::outage_quad: return "outage_quad";
        case OutputKind::outage_mc: return "outage_mc";
        case OutputKind::cap_approx: return "cap_approx";
        case OutputKind::cap_bound: return "cap_bound";
        case OutputKind::cap_mc: return "cap_mc";
        case OutputKind::ceilings: return "ceilings";
    }
    return "?";
}

inline OutputKind output_kind_from_string(const std::string& s) {
    for (auto k : {OutputKind::outage_cf, OutputKind::outage_quad,
                   OutputKind::outage_mc, OutputKind::cap_approx,
                   OutputKind::cap_bound, OutputKind::cap_mc, OutputKind::ceilings})
        if (s == output_kind_name(k)) return k;
    throw ConfigError("sweep.outputs: unknown output '" + s + "'");
}

namespace detail {

inline const nlohmann::json& require_key(const nlohmann::json& j,
                                         const std::string& key,
                                         const std::string& path) {
    auto it = j.find(key);
    if (it == j.end()) throw ConfigError(path + ": missing key");
    return *it;
}

inline double require_number(const nlohmann::json& j, const std::string& key,
                             const std::string& path) {
    const auto& v = require_key(j, key, path);
    if (!v.is_number()) throw ConfigError(path + ": expected a number");
    return v.get<double>();
}

inline int require_int(const nlohmann::json& j, const std::string& key,
                       const std::string& path) {
    const auto& v = require_key(j, key, path);
    if (!v.is_number_integer()) throw ConfigError(path + ": expected an integer");
    return v.get<int>();
}

inline void check_range(bool ok, const std::string& path, const char* what) {
    if (!ok) throw ConfigError(path + ": " + what);
}

}  // namespace detail

inline SweepSpec parse_config_json(const nlohmann::json& j) {
    SweepSpec s;
    const auto& rf = detail::require_key(j, "rf", "rf");
    s.n_relays = detail::require_int(rf, "n_relays", "rf.n_relays");
    detail::check_range(s.n_relays >= 1 && s.n_relays <= RfHopParams::kMaxRelays,
                        "rf.n_relays", "must be in [1, 64]");
    s.rank = detail::require_int(rf, "rank", "rf.rank");
    detail::check_range(s.rank >= 1 && s.rank <= s.n_relays, "rf.rank",
                        "must be in [1, n_relays]");
    s.rho = detail::require_number(rf, "rho", "rf.rho");
    detail::check_range(s.rho >= 0.0 && s.rho <= 1.0, "rf.rho",
                        "must be in [0, 1]");
    s.mu1_db = detail::require_number(rf, "mu1_db", "rf.mu1_db");

    const auto& fso = detail::require_key(j, "fso", "fso");
    s.mu2_db = detail::require_number(fso, "mu2_db", "fso.mu2_db");
    const bool has_sigma = fso.contains("sigma_r");
    const bool has_ab = fso.contains("alpha") || fso.contains("beta");
    if (has_sigma && has_ab)
        throw ConfigError(
            "fso.sigma_r: mutually exclusive with fso.alpha/fso.beta");
    if (!has_sigma && !has_ab)
        throw ConfigError("fso.sigma_r: either sigma_r or alpha+beta required");
    if (has_sigma) {
        s.sigma_r = detail::require_number(fso, "sigma_r", "fso.sigma_r");
        detail::check_range(*s.sigma_r > 0.0, "fso.sigma_r", "must be positive");
    } else {
        s.alpha = detail::require_number(fso, "alpha", "fso.alpha");
        s.beta = detail::require_number(fso, "beta", "fso.beta");
        detail::check_range(*s.alpha > 0.0 && *s.beta > 0.0, "fso.alpha",
                            "must be positive");
    }

    if (j.contains("impairments")) {
        const auto& imp = j.at("impairments");
        s.kappa1 = detail::require_number(imp, "kappa1", "impairments.kappa1");
        s.kappa2 = detail::require_number(imp, "kappa2", "impairments.kappa2");
        detail::check_range(s.kappa1 >= 0.0 && s.kappa2 >= 0.0,
                            "impairments.kappa1", "must be >= 0");
    }
    s.gamma_th_db = detail::require_number(j, "gamma_th_db", "gamma_th_db");

    if (j.contains("sweep")) {
        const auto& sw = j.at("sweep");
        s.axis = axis_from_string(
            detail::require_key(sw, "axis", "sweep.axis").get<std::string>());
        const auto& pts = detail::require_key(sw, "points", "sweep.points");
        if (!pts.is_array() || pts.empty())
            throw ConfigError("sweep.points: expected a nonempty array");
        s.points.clear();
        for (const auto& p : pts) {
            if (!p.is_number()) throw ConfigError("sweep.points: expected numbers");
            s.points.push_back(p.get<double>());
        }
        const auto& outs = detail::require_key(sw, "outputs", "sweep.outputs");
        if (!outs.is_array() || outs.empty())
            throw ConfigError("sweep.outputs: expected a nonempty array");
        s.outputs.clear();
        for (const auto& o : outs)
            s.outputs.push_back(output_kind_from_string(o.get<std::string>()));
        if (sw.contains("mc_samples")) {
            auto v = sw.at("mc_samples");
            if (!v.is_number_integer() || v.get<int64_t>() < 10000)
                throw ConfigError("sweep.mc_samples: expected an integer >= 10000");
            s.mc_samples = v.get<uint64_t>();
        }
        if (sw.contains("seed")) s.seed = sw.at("seed").get<uint64_t>();
        if (sw.contains("variants")) {
            for (size_t i = 0; i < sw.at("variants").size(); ++i) {
                const auto& vj = sw.at("variants")[i];
                const std::string path = "sweep.variants[" + std::to_string(i) + "]";
                CurveVariant v;
                v.label = detail::require_key(vj, "label", path + ".label")
                              .get<std::string>();
                if (vj.contains("kappa1")) v.kappa1 = vj.at("kappa1").get<double>();
                if (vj.contains("kappa2")) v.kappa2 = vj.at("kappa2").get<double>();
                if (vj.contains("rho")) v.rho = vj.at("rho").get<double>();
                if (vj.contains("sigma_r")) v.sigma_r = vj.at("sigma_r").get<double>();
                if (vj.contains("n_relays"))
                    v.n_relays = vj.at("n_relays").get<int>();
                if (vj.contains("rank")) v.rank = vj.at("rank").get<int>();
                if (vj.contains("rank_best"))
                    v.rank_best = vj.at("rank_best").get<bool>();
                if (vj.contains("mu2_tracks_mu1"))
                    v.mu2_tracks_mu1 = vj.at("mu2_tracks_mu1").get<bool>();
                if (v.rank && v.n_relays && *v.rank > *v.n_relays)
                    throw ConfigError(path + ".rank: must not exceed n_relays");
                s.variants.push_back(std::move(v));
            }
        }
        validate_sweep(s);
    }
    // surface bad base parameters now, with config-level wording
    try {
        CurveVariant none;
        resolve_point(s, none, s.points.empty() ? s.mu1_db : s.points.front());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return s;
}

inline SweepSpec parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config parse error: " + std::string(e.what()));
    }
    return parse_config_json(j);
}

inline nlohmann::json emit_config(const SweepSpec& s) {
    nlohmann::json j;
    j["rf"] = {{"n_relays", s.n_relays},
               {"rank", s.rank},
               {"rho", s.rho},
               {"mu1_db", s.mu1_db}};
    j["fso"]["mu2_db"] = s.mu2_db;
    if (s.sigma_r) {
        j["fso"]["sigma_r"] = *s.sigma_r;
    } else {
        j["fso"]["alpha"] = *s.alpha;
        j["fso"]["beta"] = *s.beta;
    }
    j["impairments"] = {{"kappa1", s.kappa1}, {"kappa2", s.kappa2}};
    j["gamma_th_db"] = s.gamma_th_db;
    if (!s.points.empty()) {
        nlohmann::json sw;
        sw["axis"] = axis_name(s.axis);
        sw["points"] = s.points;
        nlohmann::json outs = nlohmann::json::array();
        for (auto k : s.outputs) outs.push_back(output_kind_name(k));
        sw["outputs"] = outs;
        sw["mc_samples"] = s.mc_samples;
        sw["seed"] = s.seed;
        if (!s.variants.empty()) {
            nlohmann::json vars = nlohmann::json::array();
            for (const auto& v : s.variants) {
                nlohmann::json vj;
                vj["label"] = v.label;
                if (v.kappa1) vj["kappa1"] = *v.kappa1;
                if (v.kappa2) vj["kappa2"] = *v.kappa2;
                if (v.rho) vj["rho"] = *v.rho;
                if (v.sigma_r) vj["sigma_r"] = *v.sigma_r;
                if (v.n_relays) vj["n_relays"] = *v.n_relays;
                if (v.rank) vj["rank"] = *v.rank;
                if (v.rank_best) vj["rank_best"] = true;
                if (v.mu2_tracks_mu1) vj["mu2_tracks_mu1"] = true;
                vars.push_back(vj);
            }
            sw["variants"] = vars;
        }
        j["sweep"] = sw;
    }
    return j;
}

}  // namespace rfso
