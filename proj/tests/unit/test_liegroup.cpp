#include <doctest.h>

#include <cmath>

#include "szego/liegroup.hpp"

using namespace szego;

TEST_SUITE("liegroup") {
TEST_CASE("basis is orthonormal for the trace pairing") {
    const AlgebraElement b[3] = {AlgebraElement::beta(), AlgebraElement::xi1(), AlgebraElement::xi2()};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Complex v = -0.5 * (b[i].matrix() * b[j].matrix()).trace();
            CHECK(std::abs(v - (i == j ? 1.0 : 0.0)) < 1e-15);
        }
}

TEST_CASE("character values") {
    CHECK(character(4, 0.0) == doctest::Approx(5.0));
    CHECK(character(3, kPi) == doctest::Approx(-4.0));
    CHECK(character(2, 0.7) == doctest::Approx(std::sin(2.1) / std::sin(0.7)).epsilon(1e-14));
    Rng rng(3);
    GroupElement g = GroupElement::random(rng);
    CHECK(character(5, g) == doctest::Approx(irrep_matrix(5, g).trace().real()).epsilon(1e-12));
}

TEST_CASE("characters are orthonormal under Haar measure") {
    double worst = 0.0;
    for (int m = 0; m <= 10; ++m)
        for (int n = 0; n <= 10; ++n) {
            Complex v = haar_integrate([&](const GroupElement& g) { return Complex(character(m, g) * character(n, g)); },
                                       m + n);
            worst = std::max(worst, std::abs(v - (m == n ? 1.0 : 0.0)));
        }
    CHECK(worst < 1e-10);
}

TEST_CASE("irreducible matrices are homomorphisms") {
    Rng rng(5);
    GroupElement g = GroupElement::random(rng), h = GroupElement::random(rng);
    Eigen::MatrixXcd lhs = irrep_matrix(4, g * h), rhs = irrep_matrix(4, g) * irrep_matrix(4, h);
    CHECK((lhs - rhs).norm() < 1e-12);
}

TEST_CASE("adjoint action preserves the pairing") {
    Rng rng(9);
    GroupElement g = GroupElement::random(rng);
    AlgebraElement X{0.3, -1.2, 0.5}, Y{1.0, 0.4, -0.7};
    CHECK(adjoint(g, X).pair(adjoint(g, Y)) == doctest::Approx(X.pair(Y)).epsilon(1e-13));
}

TEST_CASE("projector rule is idempotent") {
    ProjectionRule P = ProjectionRule::make(3, 8);
    CHECK(P.residual(8) < 1e-8);
}

TEST_CASE("coset constants") {
    CHECK(unit_s3_volume() == doctest::Approx(2 * kPi * kPi).epsilon(1e-12));
    CHECK(std::abs(d_gt() - 1.0 / kPi) < 1e-12);
    CHECK(kappa(0.6) == doctest::Approx(0.8));
    CHECK(coset_density(0.0) == doctest::Approx(1.0 / (4 * kPi)).epsilon(1e-10));
    CHECK(coset_density(0.5) == doctest::Approx(1.0 / (4 * kPi * std::sqrt(0.75))).epsilon(1e-8));
}

TEST_CASE("coset representative lands on its chart value") {
    GroupElement g = coset_representative(0.4, 1.1);
    Complex w = 2.0 * g.a() * std::conj(g.b());
    CHECK(std::abs(w) == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(std::norm(g.a()) - std::norm(g.b()) == doctest::Approx(kappa(0.4)).epsilon(1e-14));
}
}
