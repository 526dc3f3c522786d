#include <doctest.h>

#include <cmath>

#include "szego/asymptotics.hpp"
#include "szego/calibration.hpp"
#include "szego/hardy.hpp"

using namespace szego;

TEST_SUITE("asymptotics") {
TEST_CASE("k-grid labels") {
    ModelManifold M({1, 2});
    auto g = make_k_grid(M, 1.0, 3, 6);
    REQUIRE(g.size() == 2);
    CHECK(g[0].k == 4);
    CHECK(g[0].n == 8);
    auto h = make_k_grid(M, 0.75, 1, 8);
    for (const auto& e : h) CHECK(e.k % 4 == 0);
    CHECK_THROWS_AS(make_k_grid(M, 0.75, 1, 8, 0.5, false), DomainError);
}

TEST_CASE("power-law fit") {
    std::vector<double> k, v;
    for (int i = 4; i <= 40; i += 4) {
        k.push_back(i);
        v.push_back(3.0 * std::pow(i, 1.5));
    }
    PowerLawFit f = fit_power_law(k, v);
    CHECK(f.exponent == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(f.constant == doctest::Approx(3.0).epsilon(1e-12));
    CHECK_THROWS(fit_power_law({1.0, 2.0}, {1.0, 2.0}));
}

TEST_CASE("decay verdicts") {
    std::vector<double> k, fast, slow;
    for (int i = 2; i <= 30; i += 2) {
        k.push_back(i);
        fast.push_back(std::exp(-0.8 * i));
        slow.push_back(std::pow(i, 1.5));
    }
    DecayReport a = check_decay(k, fast, 3);
    CHECK(a.verdict == DecayVerdict::Superpolynomial);
    CHECK(a.largest_order == 3);
    DecayReport b = check_decay(k, slow, 3);
    CHECK(b.verdict == DecayVerdict::Polynomial);
    CHECK(b.largest_order < 3);
}

TEST_CASE("diagonal prediction") {
    ModelManifold M({1, 2});
    Rng rng(1);
    ManifoldPoint x = point_on_level(M, 1.0, rng);
    double p16 = predict_diagonal(M, 1.0, x, 16);
    CHECK(predict_diagonal(M, 1.0, x, 32) / p16 == doctest::Approx(std::pow(2.0, 1.5)).epsilon(1e-12));
    CHECK(p16 == doctest::Approx(std::sqrt(2.0) / kPi * std::pow(16 / kPi, 1.5) / std::sqrt(45.0 / 32.0)).epsilon(1e-12));
    ManifoldPoint off = point_on_level(M, 1.2, rng);
    CHECK_THROWS(predict_diagonal(M, 1.0, off, 16));
}

TEST_CASE("diagonal kernel approaches the prediction") {
    ModelManifold M({1, 2});
    Rng rng(1);
    ManifoldPoint x = point_on_level(M, 1.0, rng);
    auto g = make_k_grid(M, 1.0, 40, 40);
    double ratio = diagonal_series(M, g, x)[0] / predict_diagonal(M, 1.0, x, 40);
    CHECK(std::abs(ratio - 1.0) < 0.04);
}

TEST_CASE("reduced volumes") {
    ModelManifold M({1, 2});
    ReducedVolume a = reduced_volume(M, 1.0);
    CHECK(a.value == doctest::Approx(1.0).epsilon(1e-10));
    ModelManifold N({1, 1, 3});
    ReducedVolumeOptions o;
    o.strata = 64;
    o.replicas = 4;
    ReducedVolume b = reduced_volume(N, 1.0, o);
    CHECK(b.value == doctest::Approx(kPi / 2).epsilon(0.01));
    CHECK_THROWS(reduced_volume(M, 1.5));
}

TEST_CASE("dimension prediction with the measured normalization") {
    const double C = calibrate_volume_normalization(DimensionReading::Weyl);
    CHECK(C == doctest::Approx(kPi).epsilon(1e-6));
    CHECK(calibrate_volume_normalization(DimensionReading::Actual) == doctest::Approx(2 * kPi / 3).epsilon(1e-6));
    ModelManifold M({1, 2});
    CHECK(predict_dimension(M, 1.0, 8, 1.0, C) == doctest::Approx(16.0).epsilon(1e-9));
}

TEST_CASE("convention calibration") {
    ModelManifold M({1, 2});
    CalibrationResult r = calibrate_convention(M, {{8, 16}, {12, 24}});
    CHECK(r.snapped == 0.5);
    CHECK(r.spread < 0.02);
}
}
