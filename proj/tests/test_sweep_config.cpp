#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "rfso/config.hpp"
#include "rfso/io.hpp"
#include "rfso/sweep.hpp"

using Catch::Approx;
using nlohmann::json;

namespace {

json minimal_config() {
    return json{
        {"rf", {{"n_relays", 3}, {"rank", 3}, {"rho", 1.0}, {"mu1_db", 10.0}}},
        {"fso", {{"sigma_r", 0.5}, {"mu2_db", 10.0}}},
        {"gamma_th_db", 0.0},
    };
}

json sweep_config() {
    json j = minimal_config();
    j["impairments"] = {{"kappa1", 0.1}, {"kappa2", 0.1}};
    j["sweep"] = {
        {"axis", "mu1_db"},
        {"points", {0.0, 5.0, 10.0}},
        {"outputs", {"outage_cf", "outage_quad", "outage_mc", "ceilings"}},
        {"mc_samples", 20000},
        {"seed", 77},
    };
    return j;
}

}  // namespace

TEST_CASE("minimal config parses with ideal hardware and unbounded ceilings",
          "[config]") {
    rfso::SweepSpec s = rfso::parse_config_json(minimal_config());
    CHECK(s.n_relays == 3);
    CHECK(s.rank == 3);
    CHECK(s.kappa1 == 0.0);
    CHECK(s.kappa2 == 0.0);
    CHECK(rfso::delta(rfso::ImpairmentParams(s.kappa1, s.kappa2)) == 0.0);
    CHECK(rfso::sndr_ceiling(rfso::ImpairmentParams(s.kappa1, s.kappa2))
              .is_unbounded());
    json echo = rfso::spec_echo_json(s);
    CHECK(echo["resolved"]["sndr_ceiling"].is_null());
    CHECK(echo["resolved"]["capacity_ceiling"].is_null());
    CHECK(echo["resolved"]["alpha"].get<double>() > 0.0);
}

TEST_CASE("config validation errors carry the key path", "[config]") {
    json bad = minimal_config();
    bad["rf"]["rank"] = 4;
    try {
        rfso::parse_config_json(bad);
        FAIL("expected ConfigError");
    } catch (const rfso::ConfigError& e) {
        CHECK(std::string(e.what()).find("rank") != std::string::npos);
    }

    json both = minimal_config();
    both["fso"]["alpha"] = 4.0;
    both["fso"]["beta"] = 2.0;
    try {
        rfso::parse_config_json(both);
        FAIL("expected ConfigError");
    } catch (const rfso::ConfigError& e) {
        CHECK(std::string(e.what()).find("sigma_r") != std::string::npos);
    }

    json missing = minimal_config();
    missing["rf"].erase("mu1_db");
    try {
        rfso::parse_config_json(missing);
        FAIL("expected ConfigError");
    } catch (const rfso::ConfigError& e) {
        CHECK(std::string(e.what()).find("rf.mu1_db") != std::string::npos);
    }

    json neither = minimal_config();
    neither["fso"].erase("sigma_r");
    CHECK_THROWS_AS(rfso::parse_config_json(neither), rfso::ConfigError);
}

TEST_CASE("sweep validation: monotone points, integer axes, rank bounds",
          "[config][sweep]") {
    json j = sweep_config();
    j["sweep"]["points"] = {5.0, 5.0, 10.0};
    CHECK_THROWS_AS(rfso::parse_config_json(j), std::exception);

    j = sweep_config();
    j["sweep"]["axis"] = "n_relays";
    j["sweep"]["points"] = {1.0, 2.5, 3.0};
    CHECK_THROWS_AS(rfso::parse_config_json(j), std::exception);

    j = sweep_config();
    j["sweep"]["axis"] = "rank";
    j["sweep"]["points"] = {1.0, 2.0, 5.0};  // exceeds n_relays = 3
    CHECK_THROWS_AS(rfso::parse_config_json(j), std::exception);

    j = sweep_config();
    j["sweep"]["axis"] = "nonsense";
    CHECK_THROWS_AS(rfso::parse_config_json(j), rfso::ConfigError);

    j = sweep_config();
    j["sweep"]["outputs"] = json::array();
    CHECK_THROWS_AS(rfso::parse_config_json(j), std::exception);
}

TEST_CASE("config round trip preserves everything", "[config]") {
    json j = sweep_config();
    j["sweep"]["variants"] = {{{"label", "best"}, {"rank_best", true}},
                              {{"label", "worst"}, {"rank", 1}, {"kappa1", 0.2}}};
    rfso::SweepSpec s1 = rfso::parse_config_json(j);
    json emitted = rfso::emit_config(s1);
    rfso::SweepSpec s2 = rfso::parse_config_json(emitted);
    CHECK(rfso::emit_config(s2).dump() == emitted.dump());
    // derived quantities identical
    rfso::CurveVariant none;
    rfso::LinkConfig c1 = rfso::resolve_point(s1, none, s1.points.front());
    rfso::LinkConfig c2 = rfso::resolve_point(s2, none, s2.points.front());
    CHECK(c1.rf.mu1 == c2.rf.mu1);
    CHECK(c1.fso.alpha == c2.fso.alpha);
    CHECK(c1.fso.beta == c2.fso.beta);
    CHECK(c1.gamma_th == c2.gamma_th);
}

TEST_CASE("resolve_point applies axis values and variant overrides", "[sweep]") {
    rfso::SweepSpec s = rfso::parse_config_json(sweep_config());
    rfso::CurveVariant v;
    v.mu2_tracks_mu1 = true;
    rfso::LinkConfig cfg = rfso::resolve_point(s, v, 20.0);
    CHECK(cfg.rf.mu1 == Approx(100.0));
    CHECK(cfg.fso.mu2 == Approx(100.0));

    rfso::CurveVariant best;
    best.rank_best = true;
    best.n_relays = 5;
    cfg = rfso::resolve_point(s, best, 0.0);
    CHECK(cfg.rf.n_relays == 5);
    CHECK(cfg.rf.rank == 5);

    rfso::CurveVariant turb;
    turb.sigma_r = 1.5;
    rfso::LinkConfig c2 = rfso::resolve_point(s, turb, 0.0);
    auto ab = rfso::turbulence_params(1.5);
    CHECK(c2.fso.alpha == Approx(ab.first));
}

TEST_CASE("single-point sweep equals direct module calls", "[sweep]") {
    rfso::SweepSpec s = rfso::parse_config_json(sweep_config());
    s.points = {10.0};
    s.outputs = {rfso::OutputKind::outage_cf, rfso::OutputKind::cap_approx};
    auto rows = rfso::run_sweep(s, 1);
    REQUIRE(rows.size() == 1);
    rfso::CurveVariant none;
    rfso::LinkConfig cfg = rfso::resolve_point(s, none, 10.0);
    CHECK(*rows[0].cells.at(rfso::Column::outage_cf).value ==
          rfso::outage_closed_form(cfg).probability);
    CHECK(*rows[0].cells.at(rfso::Column::cap_approx).value ==
          rfso::capacity_approx(cfg));
}

TEST_CASE("sweep output is deterministic across worker counts", "[sweep]") {
    rfso::SweepSpec s = rfso::parse_config_json(sweep_config());
    auto r1 = rfso::run_sweep(s, 1);
    auto r4 = rfso::run_sweep(s, 4);
    std::ostringstream a, b;
    rfso::write_rows_csv(a, s, r1);
    rfso::write_rows_csv(b, s, r4);
    CHECK(a.str() == b.str());
    CHECK(rfso::rows_json(s, r1).dump() == rfso::rows_json(s, r4).dump());
}

TEST_CASE("csv writer: header, std-error suffix, nulls, line endings",
          "[sweep]") {
    rfso::SweepSpec s = rfso::parse_config_json(sweep_config());
    s.points = {0.0};
    auto rows = rfso::run_sweep(s, 1);
    std::ostringstream os;
    rfso::write_rows_csv(os, s, rows);
    std::string text = os.str();
    CHECK(text.find("mu1_db,outage_cf,outage_quad,outage_mc,outage_mc_se,"
                    "sndr_ceiling,capacity_ceiling\n") == 0);
    CHECK(text.find("\r") == std::string::npos);

    // a failed cell becomes an explicit marker, not a zero
    rfso::OutputRow bad;
    bad.axis_value = 1.0;
    rfso::OutputCell err;
    err.error = "boom";
    bad.cells[rfso::Column::outage_cf] = err;
    std::ostringstream os2;
    rfso::write_rows_csv(os2, s, {bad});
    CHECK(os2.str().find("ERROR") != std::string::npos);
}

TEST_CASE("json rows carry spec echo and per-cell errors as nulls", "[sweep]") {
    rfso::SweepSpec s = rfso::parse_config_json(sweep_config());
    s.points = {0.0};
    auto rows = rfso::run_sweep(s, 1);
    json j = rfso::rows_json(s, rows);
    REQUIRE(j.contains("spec"));
    REQUIRE(j.contains("rows"));
    CHECK(j["spec"]["resolved"].contains("delta"));
    CHECK(j["rows"].size() == 1);
    CHECK(j["rows"][0].contains("outage_cf"));
    CHECK(j["rows"][0].contains("outage_mc_se"));
}

TEST_CASE("figure presets produce valid sweeps", "[sweep]") {
    for (auto name : {"fig1", "fig2", "fig3", "fig4", "fig5"}) {
        rfso::SweepSpec s = rfso::figure_preset(rfso::figure_id_from_string(name));
        CHECK_NOTHROW(rfso::validate_sweep(s));
        CHECK(!s.variants.empty());
        // every variant must resolve at every point
        for (const auto& v : s.variants)
            for (double p : s.points) CHECK_NOTHROW(rfso::resolve_point(s, v, p));
    }
    CHECK(rfso::figure_preset(rfso::FigureId::fig2).axis ==
          rfso::SweepAxis::sigma_r);
    CHECK(rfso::figure_preset(rfso::FigureId::fig3).axis ==
          rfso::SweepAxis::n_relays);
    CHECK(rfso::figure_preset(rfso::FigureId::fig4).axis ==
          rfso::SweepAxis::kappa_both);
    CHECK_THROWS_AS(rfso::figure_id_from_string("fig9"), std::invalid_argument);
}

TEST_CASE("shortest round-trip float formatting", "[sweep]") {
    for (double v : {0.1, 1.0 / 3.0, 2.5e-15, 6.02214076e23, 1e-300, 0.0}) {
        std::string s = rfso::format_double(v);
        CHECK(std::stod(s) == v);
    }
}
