#include <doctest.h>

#include <cmath>

#include "szego/quadrature.hpp"

using namespace szego;

TEST_SUITE("quadrature") {
TEST_CASE("gauss-legendre integrates polynomials exactly") {
    Rule r = gauss_legendre(5, 0.0, 1.0);
    double s = 0.0, w = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        s += r.weights[i] * std::pow(r.nodes[i], 9);
        w += r.weights[i];
    }
    CHECK(s == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(w == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("trapezoid is exact for low trigonometric degree") {
    Rule r = periodic_trapezoid(8, 0.3, 2 * kPi);
    double s = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::cos(3 * r.nodes[i]) * std::cos(3 * r.nodes[i]);
    CHECK(s == doctest::Approx(kPi).epsilon(1e-14));
}

TEST_CASE("adaptive integration of a peaked integrand") {
    auto f = [](double x) { return 1.0 / (1e-4 + x * x); };
    auto q = integrate(f, -1.0, 1.0, 1e-12, 1e-13);
    CHECK(q.converged);
    CHECK(q.value == doctest::Approx(2.0 * 100.0 * std::atan(100.0)).epsilon(1e-12));
}

TEST_CASE("adaptive integration of a complex integrand") {
    auto f = [](double x) { return std::exp(Complex(0.0, 20.0 * x)); };
    auto q = integrate(f, 0.0, 1.0, 1e-13);
    Complex exact = (std::exp(Complex(0.0, 20.0)) - 1.0) / Complex(0.0, 20.0);
    CHECK(std::abs(q.value - exact) < 1e-12);
}
}
