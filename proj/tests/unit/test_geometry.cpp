#include <doctest.h>

#include <cmath>

#include "szego/geometry.hpp"

using namespace szego;

TEST_SUITE("geometry") {
TEST_CASE("moment image and volume") {
    ModelManifold M({1, 2});
    CHECK(M.lambda_min() == doctest::Approx(0.5));
    CHECK(M.lambda_max() == doctest::Approx(1.5));
    CHECK(M.volume() == doctest::Approx(2 * kPi * kPi).epsilon(1e-12));
    ModelManifold N({1, 1, 3});
    CHECK(N.lambda_min() == doctest::Approx(0.5));
    CHECK(N.lambda_max() == doctest::Approx(2.5));
}

TEST_CASE("weights with zero in the moment image are rejected") {
    CHECK_THROWS_AS(ModelManifold({1, 1}), DegenerateInput);
    CHECK_THROWS_AS(ModelManifold({1, 1, 1}), DegenerateInput);
    CHECK_THROWS_AS(ModelManifold({1, 0}), DomainError);
}

TEST_CASE("moment map is equivariant") {
    ModelManifold M({1, 1, 3});
    Rng rng(2);
    for (int i = 0; i < 20; ++i) {
        ManifoldPoint m = ManifoldPoint::random(M, rng);
        GroupElement g = GroupElement::random(rng);
        CHECK((moment_map(M, m.act(g)) - g.rotation() * moment_map(M, m)).norm() < 1e-13);
    }
}

TEST_CASE("hamiltonian relation for the fundamental fields") {
    ModelManifold M({1, 2});
    Rng rng(4);
    ManifoldPoint m = ManifoldPoint::random(M, rng);
    TangentVector v = random_tangent(m, rng);
    const AlgebraElement basis[3] = {AlgebraElement::beta(), AlgebraElement::xi1(), AlgebraElement::xi2()};
    for (int i = 0; i < 3; ++i) {
        double lhs = moment_differential(M, m, v)(i);
        double rhs = symplectic(M, m, hamiltonian_field(M, basis[i], m), v);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("moment differential matches finite differences") {
    ModelManifold M({1, 1, 3});
    Rng rng(8);
    ManifoldPoint m = ManifoldPoint::random(M, rng);
    TangentVector v = random_tangent(m, rng);
    const double h = 1e-6;
    Vec3 fd = (moment_map(M, chart_step(m, v, h)) - moment_map(M, chart_step(m, v, -h))) / (2 * h);
    CHECK((fd - moment_differential(M, m, v)).norm() < 1e-8);
}

TEST_CASE("level set points and the field norm") {
    ModelManifold M({1, 2});
    Rng rng(6);
    ManifoldPoint x = point_on_level(M, 1.0, rng);
    CHECK(lambda_of(M, x) == doctest::Approx(1.0).epsilon(1e-12));
    FieldNorm f = field_norm(M, x);
    CHECK_FALSE(f.singular);
    CHECK(f.value == doctest::Approx(std::sqrt(45.0 / 32.0)).epsilon(1e-12));
}

TEST_CASE("upsilon is normal and outward") {
    ModelManifold M({1, 1, 3});
    Rng rng(12);
    ManifoldPoint m = point_on_level(M, 1.0, rng);
    TangentVector u = upsilon(M, m);
    CHECK(lambda_differential(M, m, u) > 0.0);
    TangentVector a = random_tangent(m, rng), b = random_tangent(m, rng);
    TangentVector t = a * lambda_differential(M, m, b) + b * (-lambda_differential(M, m, a));
    CHECK(std::abs(metric(M, m, u, t)) < 1e-12);
}

TEST_CASE("locus classification") {
    ModelManifold M({1, 2});
    ManifoldPoint n = ManifoldPoint::from_directions({Vec3(0, 0, 1), Vec3(0, 0, 1)});
    CHECK(lambda_of(M, n) == doctest::Approx(1.5));
    CHECK(classify_locus(M, n, 1.0).locus == Locus::Outside);
    ManifoldPoint s = ManifoldPoint::from_directions({Vec3(0, 0, 1), Vec3(0, 0, -1)});
    CHECK(classify_locus(M, s, 1.0).locus == Locus::Inside);
    CHECK(classify_locus(M, s, 0.5).near_critical);
}

TEST_CASE("bending points sit on the level") {
    ModelManifold M({1, 1, 3});
    ManifoldPoint x = bending_point(M, 1.0, 0.98, 0.0);
    CHECK(lambda_of(M, x) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(orbit_gram_determinant(M, x) > 0.0);
}
}
