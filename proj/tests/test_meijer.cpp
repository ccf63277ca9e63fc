#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "rfso/meijer.hpp"

using Catch::Approx;

TEST_CASE("G^{1,0}_{0,1}(z | -; 0) reduces to exp(-z)", "[meijer]") {
    rfso::MeijerGSpec g;
    g.b_top = {0.0};
    for (double z : {0.01, 0.1, 0.7, 1.0, 3.0, 10.0, 30.0}) {
        INFO("z=" << z);
        CHECK(std::fabs(rfso::meijer_g(g, z) / std::exp(-z) - 1.0) < 1e-9);
    }
}

TEST_CASE("G^{2,0}_{0,2} reduces to the Bessel K form", "[meijer]") {
    // G^{2,0}_{0,2}(z | -; a, b) = 2 z^{(a+b)/2} K_{a-b}(2 sqrt(z))
    for (auto [a, b] : {std::pair{0.55, -0.15}, std::pair{1.3, 0.45},
                        std::pair{2.25, -0.6}}) {
        rfso::MeijerGSpec g;
        g.b_top = {a, b};
        for (double z : {0.04, 0.5, 4.0, 60.0, 400.0}) {
            double ref = 2.0 * std::pow(z, 0.5 * (a + b)) *
                         rfso::bessel_k(a - b, 2.0 * std::sqrt(z));
            INFO("a=" << a << " b=" << b << " z=" << z);
            CHECK(std::fabs(rfso::meijer_g(g, z) / ref - 1.0) < 1e-9);
        }
    }
}

TEST_CASE("integer-coincident b rows go through the perturbation limit",
          "[meijer]") {
    // a - b integer: K_1 and K_0 reductions
    for (auto [a, b] : {std::pair{0.5, -0.5}, std::pair{1.0, 0.0},
                        std::pair{0.0, 0.0}, std::pair{1.5, -0.5}}) {
        rfso::MeijerGSpec g;
        g.b_top = {a, b};
        for (double z : {0.2, 1.0, 9.0}) {
            double ref = 2.0 * std::pow(z, 0.5 * (a + b)) *
                         rfso::bessel_k(a - b, 2.0 * std::sqrt(z));
            INFO("a=" << a << " b=" << b << " z=" << z);
            CHECK(std::fabs(rfso::meijer_g(g, z) / ref - 1.0) < 1e-7);
        }
    }
}

TEST_CASE("G^{1,1}_{1,1} closed form (Mellin-Barnes route)", "[meijer]") {
    // G^{1,1}_{1,1}(z | a; b) = Gamma(1 - a + b) z^b (1+z)^{a-b-1}
    rfso::MeijerGSpec g;
    g.a_top = {0.5};
    g.b_top = {0.0};
    for (double z : {0.1, 0.5, 2.0, 25.0}) {
        double ref = std::exp(rfso::ln_gamma(0.5)) / std::sqrt(1.0 + z);
        INFO("z=" << z);
        CHECK(std::fabs(rfso::meijer_g(g, z) / ref - 1.0) < 1e-9);
    }
}

TEST_CASE("outage-style G^{5,0}_{0,5} rows behave like a survival transform",
          "[meijer]") {
    // positive, strictly decreasing in z, and the log-scaled form matches the
    // plain value where both are representable
    const double alpha = 5.2329724512869234, beta = 3.5851753784068132;
    rfso::MeijerGSpec g;
    g.b_top = {alpha / 2, (alpha + 1) / 2, beta / 2, (beta + 1) / 2, 0.0};
    double prev = std::numeric_limits<double>::infinity();
    for (double z : {0.01, 0.1, 1.0, 10.0, 100.0, 1000.0, 10000.0}) {
        auto s = rfso::meijer_g_scaled(g, z, 1e-8);
        REQUIRE(s.sign == 1);
        double v = s.value();
        CHECK(v > 0.0);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("capacity-bound-style G^{5,1}_{1,5} rows evaluate positive",
          "[meijer]") {
    const double alpha = 23.820180810630668, beta = 21.984544916952637;
    const double s4 = 0.25 * (alpha + beta);
    rfso::MeijerGSpec g;
    g.a_top = {-s4};
    g.b_top = {0.25 * (alpha - beta), 0.25 * (alpha - beta + 2.0),
               0.25 * (beta - alpha), 0.25 * (beta - alpha + 2.0), -s4};
    for (double z : {7.6, 500.0, 16000.0}) {
        auto s = rfso::meijer_g_scaled(g, z, 1e-7);
        INFO("z=" << z);
        CHECK(s.sign == 1);
        CHECK(std::isfinite(s.log_abs));
    }
}

TEST_CASE("spec validation rejects inseparable rows", "[meijer]") {
    rfso::MeijerGSpec g;
    g.b_top = {0.5};
    g.a_top = {1.5};  // a - b = +1: pole lattices collide
    CHECK_THROWS_AS(rfso::meijer_g(g, 1.0), std::invalid_argument);
    g.a_top = {3.5};  // a - b = +3
    CHECK_THROWS_AS(rfso::meijer_g(g, 1.0), std::invalid_argument);
    g.a_top.clear();
    g.b_top.clear();
    CHECK_THROWS_AS(rfso::meijer_g(g, 1.0), std::invalid_argument);

    // coincident a and b is legal: G^{1,1}_{1,1}(z | a; a) = z^a / (1+z)
    rfso::MeijerGSpec same;
    same.a_top = {0.25};
    same.b_top = {0.25};
    for (double z : {0.3, 2.0})
        CHECK(rfso::meijer_g(same, z) ==
              Approx(std::pow(z, 0.25) / (1.0 + z)).epsilon(1e-9));
}

TEST_CASE("argument domain and numeric failure diagnostics", "[meijer]") {
    rfso::MeijerGSpec g;
    g.b_top = {0.0};
    CHECK_THROWS_AS(rfso::meijer_g(g, 0.0), std::domain_error);
    CHECK_THROWS_AS(rfso::meijer_g(g, -1.0), std::domain_error);

    // p == q with z > 1 and a non-dominant contour has no supported route
    rfso::MeijerGSpec bad;
    bad.b_top = {0.0};
    bad.a_rest = {2.0};
    try {
        rfso::meijer_g(bad, 2.0);
        FAIL("expected NumericError");
    } catch (const rfso::NumericError& e) {
        std::string msg = e.what();
        CHECK(msg.find("z=2") != std::string::npos);
        CHECK(msg.find("b_top=0") != std::string::npos);
    }
}
