#include <doctest.h>

#include <cmath>

#include "szego/oscillatory.hpp"

using namespace szego;

TEST_SUITE("oscillatory") {
TEST_CASE("gaussian integral closed form") {
    for (double lam : {0.5, 1.0, 3.0})
        for (double xi : {-2.0, 0.3, 1.0}) {
            Complex a = gaussian_J(lam, xi), b = gaussian_J_quadrature(lam, xi);
            CHECK(std::abs(a - b) < 1e-8 * std::abs(a));
        }
}

TEST_CASE("radial moment") {
    CHECK(radial_moment(2.0) == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(radial_moment(50.0) == doctest::Approx(0.005).epsilon(1e-12));
}

TEST_CASE("cutoff") {
    CHECK(u_cutoff(1.0, 10.0) == 1.0);
    CHECK(u_cutoff(0.5, 10.0) == 1.0);
    CHECK(u_cutoff(0.05, 10.0) == 0.0);
    CHECK(u_cutoff(12.0, 10.0) == 0.0);
    double v = u_cutoff(4.0, 10.0);
    CHECK(v > 0.0);
    CHECK(v < 1.0);
}

TEST_CASE("model pieces at the origin") {
    ModelParams p;
    p.field_norm = 1.3;
    CHECK(s_of_r(0.0) == 0.0);
    CHECK(lambda_tau(p, 0.2, 0.4) == doctest::Approx(1.69));
    CHECK(omega_pairing(p, 0.2, 0.4) == 0.0);
}

TEST_CASE("inner integral approaches its leading term") {
    ModelParams p;
    p.field_norm = std::sqrt(45.0 / 32.0);
    InnerIntegral a = inner_integral_I(100, 1.0, 0.3, 0.0, p);
    InnerIntegral b = inner_integral_I(400, 1.0, 0.3, 0.0, p);
    CHECK_FALSE(a.resolution_flag);
    CHECK(b.deviation < a.deviation);
    CHECK(a.deviation < 0.05);
}

TEST_CASE("assembled chain against the closed form") {
    ModelParams p;
    p.field_norm = std::sqrt(45.0 / 32.0);
    ChainResult c = radial_leading_term(1000.0, p);
    CHECK(std::abs(c.ratio - 1.0) < 2e-3);
    CHECK(c.literal_ratio == doctest::Approx(2.0).epsilon(2e-3));
    CHECK(final_pi_integrand(0.0, 0.0, 1000.0, p) == 0.0);
}
}
