#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "rfso/system.hpp"

using Catch::Approx;
using rfso::Ceiling;
using rfso::ImpairmentParams;
using rfso::LinkConfig;
using rfso::RfHopParams;

TEST_CASE("delta arithmetic", "[system]") {
    CHECK(rfso::delta(ImpairmentParams(0.0, 0.0)) == 0.0);
    CHECK(rfso::delta(ImpairmentParams(0.1, 0.2)) == Approx(0.0504).epsilon(1e-14));
    CHECK(rfso::delta(ImpairmentParams(0.3, 0.0)) == Approx(0.09).epsilon(1e-14));
    CHECK(rfso::delta(ImpairmentParams(0.0, 0.3)) == Approx(0.09).epsilon(1e-14));
    CHECK_THROWS_AS(ImpairmentParams(-0.1, 0.0), std::invalid_argument);
}

TEST_CASE("constant_c from the selected-rank mean", "[system]") {
    CHECK(rfso::constant_c(RfHopParams(1, 1, 0.5, 10.0), 0.0) == Approx(11.0));
    // harmonic-number mean: (11/6) * 6 + 1
    CHECK(rfso::constant_c(RfHopParams(3, 3, 1.0, 6.0), 0.0) ==
          Approx(12.0).epsilon(1e-12));
    CHECK(rfso::constant_c(RfHopParams(1, 1, 0.5, 10.0), 0.1) ==
          Approx(11.1).epsilon(1e-14));
}

TEST_CASE("relay gain: unit case, impairment monotonicity, consistency with C",
          "[system]") {
    RfHopParams single(1, 1, 0.5, 1.0);  // P1 = sigma1^2 = 1
    CHECK(rfso::relay_gain_sq(single, 0.0, 1.0, 1.0, 1.0) == Approx(0.5));

    RfHopParams p(3, 2, 0.7, 4.0);
    double g0 = rfso::relay_gain_sq(p, 0.0, 2.0, 3.0, 0.5);
    double g1 = rfso::relay_gain_sq(p, 0.2, 2.0, 3.0, 0.5);
    double g2 = rfso::relay_gain_sq(p, 0.4, 2.0, 3.0, 0.5);
    CHECK(g1 < g0);
    CHECK(g2 < g1);

    // mu1 mu2 sigma2^2 / (P1 G^2) must reproduce C (with eta_o = 1 so that
    // mu2 = P2 / sigma2^2)
    const double p1 = 2.0, p2 = 3.0, s1 = 0.5, s2 = 0.25;
    const double mu1 = p1 / s1, mu2 = p2 / s2;
    RfHopParams rf(3, 2, 0.7, mu1);
    for (double k1 : {0.0, 0.15, 0.3}) {
        double gsq = rfso::relay_gain_sq(rf, k1, p1, p2, s1);
        double c_from_gain = mu1 * mu2 * s2 / (p1 * gsq);
        CHECK(c_from_gain == Approx(rfso::constant_c(rf, k1)).epsilon(1e-14));
    }
    CHECK_THROWS_AS(rfso::relay_gain_sq(rf, 0.0, 0.0, 1.0, 1.0),
                    std::invalid_argument);
}

TEST_CASE("sndr basic values and limits", "[system]") {
    ImpairmentParams ideal(0.0, 0.0);
    ImpairmentParams imp(0.1, 0.2);
    CHECK(rfso::sndr(0.0, 5.0, imp, 11.0) == 0.0);
    CHECK(rfso::sndr(5.0, 0.0, imp, 11.0) == 0.0);
    // ideal case with dominant gamma2 approaches gamma1
    CHECK(rfso::sndr(7.0, 1e13, ideal, 11.0) == Approx(7.0).epsilon(1e-10));
    // impaired case approaches 1/delta from below
    double d = rfso::delta(imp);
    CHECK(rfso::sndr(1e12, 1e12, imp, 11.0) == Approx(1.0 / d).epsilon(1e-9));
}

TEST_CASE("sndr is monotone in both hops and strictly below the ceiling",
          "[system]") {
    ImpairmentParams imp(0.15, 0.25);
    const double d = rfso::delta(imp);
    const double c = 21.0;
    double prev = -1.0;
    for (double g1 = 0.0; g1 < 1e4; g1 = g1 * 3.0 + 0.5) {
        double v = rfso::sndr(g1, 50.0, imp, c);
        CHECK(v >= prev);
        CHECK(v < 1.0 / d);
        prev = v;
    }
    prev = -1.0;
    for (double g2 = 0.0; g2 < 1e4; g2 = g2 * 3.0 + 0.5) {
        double v = rfso::sndr(40.0, g2, imp, c);
        CHECK(v >= prev);
        CHECK(v < 1.0 / d);
        prev = v;
    }
}

TEST_CASE("ideal-hardware sndr equals the reduced expression exactly",
          "[system]") {
    ImpairmentParams ideal(0.0, 0.0);
    for (double g1 : {0.3, 4.0, 900.0})
        for (double g2 : {0.1, 7.0, 3000.0}) {
            double c = 13.5;
            CHECK(rfso::sndr(g1, g2, ideal, c) == g1 * g2 / (g2 + c));
        }
}

TEST_CASE("ceilings: values, unboundedness, monotonicity", "[system]") {
    CHECK(rfso::sndr_ceiling(ImpairmentParams(0.0, 0.0)).is_unbounded());
    CHECK(rfso::capacity_ceiling(ImpairmentParams(0.0, 0.0)).is_unbounded());
    CHECK_THROWS_AS(rfso::sndr_ceiling(ImpairmentParams(0.0, 0.0)).value(),
                    std::logic_error);

    Ceiling g = rfso::sndr_ceiling(ImpairmentParams(0.1, 0.2));
    CHECK_FALSE(g.is_unbounded());
    CHECK(g.value() == Approx(19.841269841269842).epsilon(1e-12));
    CHECK(rfso::sndr_ceiling(ImpairmentParams(0.1, 0.1)).value() ==
          Approx(49.75124378109453).epsilon(1e-12));

    Ceiling c = rfso::capacity_ceiling(ImpairmentParams(0.1, 0.2));
    CHECK(c.value() == Approx(2.1907).epsilon(1e-4));
    // exact relation to the sndr ceiling
    CHECK(c.value() == 0.5 * std::log2(1.0 + g.value()));

    double prev = std::numeric_limits<double>::infinity();
    for (double k : {0.05, 0.1, 0.2, 0.4}) {
        double v = rfso::capacity_ceiling(ImpairmentParams(k, 0.1)).value();
        CHECK(v < prev);
        prev = v;
    }
    prev = std::numeric_limits<double>::infinity();
    for (double k : {0.05, 0.1, 0.2, 0.4}) {
        double v = rfso::capacity_ceiling(ImpairmentParams(0.1, k)).value();
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("link config derived quantities and validation", "[system]") {
    LinkConfig cfg(RfHopParams(3, 2, 0.7, 10.0), rfso::FsoHopParams(5.2, 3.6, 10.0),
                   ImpairmentParams(0.1, 0.2), 2.0);
    CHECK(cfg.delta() == Approx(0.0504).epsilon(1e-14));
    CHECK(cfg.constant_c() ==
          Approx(rfso::rf_mean(cfg.rf) * 1.01 + 1.0).epsilon(1e-14));
    CHECK_THROWS_AS(LinkConfig(cfg.rf, cfg.fso, cfg.imp, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(LinkConfig(cfg.rf, cfg.fso, cfg.imp, -2.0),
                    std::invalid_argument);
}
