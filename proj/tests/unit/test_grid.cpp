#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "svfb/grid.hpp"

using namespace svfb;
using doctest::Approx;

TEST_CASE("make_grid: uniform partition with exact midpoints") {
    const Grid g = make_grid(17);
    CHECK(g.n == 17);
    CHECK(g.h == Approx(1.0 / 16));
    CHECK(g.nodes.front() == 0.0);
    CHECK(g.nodes.back() == 1.0);
    CHECK(g.nodes[4] == Approx(0.25));
    CHECK(g.nodes[8] == Approx(0.5));
    REQUIRE(g.faces.size() == 16);
    CHECK(g.faces[0] == Approx(1.0 / 32));
    for (std::size_t i = 0; i + 1 < g.n; ++i) {
        CHECK(g.nodes[i + 1] > g.nodes[i]);
        CHECK(g.faces[i] == Approx(0.5 * (g.nodes[i] + g.nodes[i + 1])));
    }
    CHECK(std::accumulate(g.weights.begin(), g.weights.end(), 0.0) == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("make_grid: rejects n < 16") {
    CHECK_THROWS_AS(make_grid(5), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(15), std::invalid_argument);
    CHECK_NOTHROW(make_grid(16));
}

TEST_CASE("distance") {
    CHECK(distance(0.25) == Approx(0.25));
    CHECK(distance(0.7) == Approx(0.3));
    CHECK(distance(0.0) == 0.0);
    CHECK(distance(1.0) == 0.0);
    CHECK_THROWS_AS(distance(-0.1), std::domain_error);
    CHECK_THROWS_AS(distance(1.5), std::domain_error);
}

TEST_CASE("weighted_norm examples") {
    const Grid g = make_grid(401);
    const std::vector<double> one(g.n, 1.0);
    CHECK(weighted_norm(g, one, {}, 2.0) == Approx(1.0).epsilon(1e-14));
    const auto d = weight_samples(g, {WeightBase::distance, 1.0});
    CHECK(weighted_norm(g, one, d, 2.0) == Approx(0.5).epsilon(1e-12));
    const auto d2 = weight_samples(g, {WeightBase::distance, 2.0});
    CHECK(weighted_norm(g, one, d2, 2.0) == Approx(0.288675).epsilon(1e-5));
    CHECK(weighted_norm(g, one, d, INFINITY) == Approx(0.5));
}

TEST_CASE("trapezoid is exact for affine integrands") {
    const Grid g = make_grid(33);
    std::vector<double> f(g.n);
    for (std::size_t i = 0; i < g.n; ++i) f[i] = 3.0 - 2.0 * g.nodes[i];
    CHECK(integrate(g, f) == Approx(2.0).epsilon(1e-14));
    CHECK(weighted_norm(g, f, {}, 1.0) == Approx(2.0).epsilon(1e-14));
}

TEST_CASE("weighted_norm refinement consistency is O(h^2)") {
    auto norm = [](std::size_t n) {
        const Grid g = make_grid(n);
        std::vector<double> f(g.n);
        for (std::size_t i = 0; i < g.n; ++i) f[i] = std::exp(g.nodes[i]);
        return weighted_norm(g, f, {}, 2.0);
    };
    const double exact = std::sqrt((std::exp(2.0) - 1.0) / 2.0);
    const double e1 = std::abs(norm(101) - exact), e2 = std::abs(norm(201) - exact);
    CHECK(e1 / e2 == Approx(4.0).epsilon(0.05));
}

TEST_CASE("integrate_singular handles d^beta with beta > -1") {
    const Grid g = make_grid(401);
    const auto w = weight_samples(g, {WeightBase::distance, -0.5});
    // ∫ d^{-1/2} = 2 sqrt(2); the interior trapezoid error decays like h^{1+beta}
    const double exact = 2.0 * std::sqrt(2.0);
    const double e1 = std::abs(integrate_singular(g, w, -0.5) - exact);
    const Grid g4 = make_grid(1601);
    const double e4 = std::abs(integrate_singular(g4, weight_samples(g4, {WeightBase::distance, -0.5}), -0.5) - exact);
    CHECK(e1 < 2e-3 * exact);
    CHECK(e1 / e4 > 1.8);
    CHECK_THROWS(integrate_singular(g, w, -1.0));
}

TEST_CASE("derivative examples") {
    const Grid g = make_grid(101);
    std::vector<double> sq(g.n), s(g.n), c(g.n, 7.0);
    for (std::size_t i = 0; i < g.n; ++i) {
        sq[i] = g.nodes[i] * g.nodes[i];
        s[i] = std::sin(std::numbers::pi * g.nodes[i]);
    }
    const auto d1 = derivative(g, sq, 1);
    for (std::size_t i = 1; i + 1 < g.n; ++i) CHECK(d1[i] == Approx(2.0 * g.nodes[i]).epsilon(1e-12));
    const auto d2 = derivative(g, s, 2);
    const double err101 = std::abs(d2[50] + std::numbers::pi * std::numbers::pi);
    CHECK(err101 < 1e-2);
    const Grid g2 = make_grid(201);
    std::vector<double> s2(g2.n);
    for (std::size_t i = 0; i < g2.n; ++i) s2[i] = std::sin(std::numbers::pi * g2.nodes[i]);
    const double err201 = std::abs(derivative(g2, s2, 2)[100] + std::numbers::pi * std::numbers::pi);
    CHECK(err101 / err201 == Approx(4.0).epsilon(0.05));
    for (int order = 1; order <= 4; ++order)
        for (double v : derivative(g, c, order)) CHECK(std::abs(v) < 1e-8);
    CHECK_THROWS(derivative(g, c, 0));
    CHECK_THROWS(derivative(g, c, 5));
}

TEST_CASE("derivative is second order up to the endpoints") {
    auto err = [](std::size_t n, int order) {
        const Grid g = make_grid(n);
        std::vector<double> f(g.n);
        for (std::size_t i = 0; i < g.n; ++i) f[i] = std::exp(g.nodes[i]);
        const auto d = derivative(g, f, order);
        double e = 0.0;
        for (std::size_t i = 0; i < g.n; ++i) e = std::max(e, std::abs(d[i] - f[i]));
        return e;
    };
    for (int order = 1; order <= 4; ++order) {
        const double ratio = err(101, order) / err(201, order);
        CAPTURE(order);
        CHECK(ratio > 3.5);
    }
}
