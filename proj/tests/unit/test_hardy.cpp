#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "szego/hardy.hpp"

using namespace szego;

TEST_SUITE("hardy") {
TEST_CASE("dimensions and multiplicities of the model (1,2)") {
    ModelManifold M({1, 2});
    SectionSpace S(M, 8);
    CHECK(S.dimension() == 9 * 17);
    for (int n = 8; n <= 24; n += 2) CHECK(multiplicity(M, 8, n) == 1);
    CHECK(multiplicity(M, 8, 6) == 0);
    CHECK(multiplicity(M, 8, 17) == 0);
    CHECK(isotype_dimension(M, 8, 16) == 17);
}

TEST_CASE("multiplicities agree with torus characters") {
    for (int a = 1; a <= 3; ++a)
        for (int b = a; b <= 3; ++b)
            for (int c = b; c <= 3; ++c)
                for (int k = 1; k <= 6; ++k) {
                    std::vector<int> w{a, b, c};
                    auto all = multiplicities(w, k);
                    for (int n = 0; n < static_cast<int>(all.size()); ++n) {
                        CHECK(all[n] == multiplicity_by_weights(w, k, n));
                        CHECK(all[n] == multiplicity_by_characters(w, k, n));
                    }
                }
}

TEST_CASE("multiplicities add up to the full dimension") {
    std::vector<int> w{1, 1, 3};
    const int k = 5;
    auto all = multiplicities(w, k);
    std::uint64_t total = 0;
    for (int n = 0; n < static_cast<int>(all.size()); ++n) total += all[n] * (n + 1);
    CHECK(total == 6u * 6u * 16u);
}

TEST_CASE("gram entries") {
    ModelManifold M({1, 2});
    SectionSpace S(M, 2);
    // N = 2 and N = 4: 1 / ((N + 1) C(N, a))
    auto e = S.exponents(S.index_of({1, 2}));
    CHECK(e[0] == 1);
    CHECK(static_cast<double>(S.gram_entry(S.index_of({1, 2}))) == doctest::Approx(1.0 / 180.0));
}

TEST_CASE("isotype basis has the predicted size") {
    ModelManifold M({1, 1, 3});
    SectionSpace S(M, 4);
    for (int n = 0; n <= 20; ++n) {
        if (multiplicity(M, 4, n) == 0) continue;
        IsotypeBasis B = isotype_basis(S, n);
        CHECK(B.dimension() == isotype_dimension(M, 4, n));
    }
}

TEST_CASE("full kernel on the diagonal") {
    ModelManifold M({1, 2});
    SectionSpace S(M, 3);
    Rng rng(1);
    ManifoldPoint x = ManifoldPoint::random(M, rng);
    CHECK(full_kernel(S, x, x).real() == doctest::Approx(4.0 * 7.0).epsilon(1e-12));
}

TEST_CASE("isotypic kernels sum to the full kernel") {
    ModelManifold M({1, 2});
    const int k = 3;
    SectionSpace S(M, k);
    Rng rng(7);
    ManifoldPoint x = ManifoldPoint::random(M, rng), y = ManifoldPoint::random(M, rng);
    Complex sum = 0.0;
    for (int n = 0; n <= 3 * k; ++n)
        if (multiplicity(M, k, n) > 0) sum += equivariant_kernel(S, isotype_basis(S, n), x, y);
    CHECK(std::abs(sum - full_kernel(S, x, y)) < 1e-10);
}

TEST_CASE("basis and quadrature routes agree") {
    ModelManifold M({1, 1, 3});
    SectionSpace S(M, 3);
    IsotypeBasis B = isotype_basis(S, 6);
    Rng rng(3);
    ManifoldPoint x = ManifoldPoint::random(M, rng), y = ManifoldPoint::random(M, rng);
    KernelRouteCheck r = kernel_route_check(S, B, x, y);
    CHECK_FALSE(r.insufficient);
    CHECK(std::abs(r.basis_value - r.quadrature_value) < 1e-8);
}

TEST_CASE("trace of the isotypic projector equals its dimension") {
    ModelManifold M({1, 2});
    SectionSpace S(M, 4);
    IsotypeBasis B = isotype_basis(S, 8);
    CHECK(isotype_trace(S, B, 24) == doctest::Approx(static_cast<double>(B.dimension())).epsilon(1e-8));
}

TEST_CASE("basis cache round trip") {
    ModelManifold M({1, 2});
    SectionSpace S(M, 4);
    IsotypeBasis B = isotype_basis(S, 8);
    const std::string path = "test_hardy_cache.bin";
    save_isotype_basis(path, S, B);
    IsotypeBasis C;
    REQUIRE(load_isotype_basis(path, S, 8, C));
    CHECK_FALSE(load_isotype_basis(path, S, 10, C));
    std::remove(path.c_str());
}

TEST_CASE("dimension guard") {
    ModelManifold M({1, 1, 3});
    CHECK_THROWS_AS(SectionSpace(M, 400, 1000), ResourceError);
}
}
