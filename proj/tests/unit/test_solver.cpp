#include <doctest.h>

#include <cmath>

#include "svfb/diagnostics.hpp"
#include "svfb/mms.hpp"
#include "svfb/solver.hpp"

using namespace svfb;
using doctest::Approx;

namespace {

InitialData data6(std::size_t n, VelocityKind kind = VelocityKind::zero) {
    ProfileSpec s;
    s.alpha = 1.0;
    s.amplitude = 6.0;
    s.velocity = {kind, {0.5, 0.2, 0.5}};
    return make_initial_data(s, make_grid(n));
}

SolverConfig config(std::size_t n, double dt, double t_end, double theta = 1.0) {
    SolverConfig c;
    c.n = n;
    c.dt = dt;
    c.t_end = t_end;
    c.theta = theta;
    return c;
}

}  // namespace

TEST_CASE("initialize gives the identity map") {
    const auto d = data6(101);
    const auto s = initialize(d, config(101, 1e-3, 1.0));
    CHECK(s.t == 0.0);
    for (std::size_t i = 0; i < d.grid.n; ++i) {
        CHECK(s.eta[i] == d.grid.nodes[i]);
        CHECK(s.eta_x[i] == 1.0);
        CHECK(s.U[i] == 0.0);
    }
    CHECK_THROWS(initialize(d, config(201, 1e-3, 1.0)));
}

TEST_CASE("validate rejects bad configs") {
    CHECK_THROWS(validate(config(101, 0.0, 1.0)));
    CHECK_THROWS(validate(config(101, 1e-3, 1.0, 0.4)));
    CHECK_THROWS(validate(config(101, 1e-3, 1.0, 1.1)));
    auto c = config(101, 1e-3, 1.0);
    c.picard_tol = 0.0;
    CHECK_THROWS(validate(c));
}

TEST_CASE("depth examples") {
    const auto d = data6(101);
    auto s = initialize(d, config(101, 1e-3, 1.0));
    auto H = depth(s, d);
    for (std::size_t i = 0; i < d.grid.n; ++i) CHECK(H[i] == d.rho0[i]);
    CHECK(H.front() == 0.0);
    CHECK(H.back() == 0.0);
    for (auto& v : s.eta_x) v = 2.0;
    H = depth(s, d);
    for (std::size_t i = 0; i < d.grid.n; ++i) CHECK(H[i] == Approx(d.rho0[i] / 2.0));
    s.eta_x[10] = 0.0;
    CHECK_THROWS(depth(s, d));
}

TEST_CASE("face_flux examples") {
    auto d = data6(101);
    const auto s = initialize(d, config(101, 1e-3, 1.0));
    const auto F = face_flux(s, d);
    // interior faces only; the two domain faces carry zero flux implicitly
    REQUIRE(F.size() == d.grid.n - 1);
    for (std::size_t i = 0; i + 1 < d.grid.n; ++i) {
        const double r = 0.5 * (d.rho0[i] + d.rho0[i + 1]);
        CHECK(F[i] == Approx(r * r));
    }
    std::fill(d.rho0.begin(), d.rho0.end(), 0.0);
    for (double f : face_flux(s, d)) CHECK(f == 0.0);
}

TEST_CASE("one step from rest is antisymmetric and conserves momentum") {
    const auto d = data6(201);
    const auto c = config(201, 1e-3, 1.0);
    const auto [s1, rep] = step(initialize(d, c), d, c);
    CHECK(rep.accepted);
    CHECK(rep.final_increment <= c.picard_tol);
    for (std::size_t i = 0; i < d.grid.n; ++i) CHECK(s1.U[i] == Approx(-s1.U[d.grid.n - 1 - i]).epsilon(1e-10));
    CHECK(std::abs(conserved_quantities(s1, d).momentum) < 1e-14);
}

TEST_CASE("one-step difference quotient tends to U_t(0, 0.25) = -6") {
    const auto d = data6(401);
    for (double dt : {1e-4, 1e-5}) {
        const auto c = config(401, dt, 1.0);
        const auto [s1, rep] = step(initialize(d, c), d, c);
        REQUIRE(rep.accepted);
        CAPTURE(dt);
        CHECK(s1.U[100] / dt == Approx(-6.0).epsilon(1e-2));
    }
}

TEST_CASE("run: t_end = 0 and K steps") {
    const auto d = data6(101, VelocityKind::bump);
    int calls = 0;
    const auto s0 = run(d, config(101, 1e-3, 0.0), [&](const FluidState&, const StepReport&) { ++calls; });
    CHECK(calls == 1);
    CHECK(s0.t == 0.0);
    CHECK(s0.U == d.u0);
    calls = 0;
    const auto s = run(d, config(101, 1e-3, 0.02), [&](const FluidState&, const StepReport&) { ++calls; });
    CHECK(calls == 21);
    CHECK(s.t == Approx(0.02));
}

TEST_CASE("run: momentum drift, energy decay and metric positivity") {
    const auto d = data6(201, VelocityKind::bump);
    const double p0 = conserved_quantities(initialize(d, config(201, 1e-3, 0.2)), d).momentum;
    double prev_energy = INFINITY;
    double max_rise = -INFINITY;
    double min_metric = INFINITY;
    const auto s = run(d, config(201, 1e-3, 0.2), [&](const FluidState& st, const StepReport&) {
        const double e = fundamental_energy(st, d).energy;
        if (std::isfinite(prev_energy)) max_rise = std::max(max_rise, e - prev_energy);
        prev_energy = e;
        for (double m : st.eta_x) min_metric = std::min(min_metric, m);
    });
    const double p1 = conserved_quantities(s, d).momentum;
    CHECK(std::abs(p1 - p0) <= 1e-10 * std::max(std::abs(p0), 1.0));
    CHECK(max_rise <= 1e-12);
    CHECK(min_metric > 0.0);
}

TEST_CASE("huge step loses the metric") {
    const auto d = data6(101, VelocityKind::bump);
    CHECK_THROWS_AS(run(d, config(101, 1.0, 1.0)), MetricLoss);
}

TEST_CASE("mms_forcing: static solution leaves only the pressure gradient") {
    const auto d = data6(201);
    const auto g = mms_forcing(zero_manufactured(), d, 0.3);
    for (std::size_t i = 0; i < d.grid.n; ++i) {
        const double x = d.grid.nodes[i];
        // (rho0^2)_x = 2 * 36 x(1-x)(1-2x)
        CHECK(g[i] == Approx(72.0 * x * (1 - x) * (1 - 2 * x)).epsilon(1e-10).scale(1.0));
    }
}

TEST_CASE("mms_forcing matches a central-difference evaluation") {
    const auto d = data6(201);
    const auto ms = sine_manufactured();
    const double t = 0.3, A = 1.0, pi = M_PI;
    auto U = [&](double x) { return A * std::sin(pi * t) * x * x * (1 - x) * (1 - x); };
    auto eta_x = [&](double x) {
        const double q = x * (1 - x);
        return 1.0 + A * (1 - std::cos(pi * t)) / pi * (2 * q * (1 - 2 * x));
    };
    auto rho = [](double x) { return 6 * x * (1 - x); };
    auto flux = [&](double x) {
        const double hh = 1e-5;
        const double Ux = (U(x + hh) - U(x - hh)) / (2 * hh);
        const double m = eta_x(x);
        return rho(x) * rho(x) / (m * m) - rho(x) * Ux / (m * m);
    };
    const auto g = mms_forcing(ms, d, t);
    for (std::size_t i = 10; i + 10 < d.grid.n; i += 10) {
        const double x = d.grid.nodes[i], hh = 1e-4;
        const double Ut = A * pi * std::cos(pi * t) * x * x * (1 - x) * (1 - x);
        const double ref = rho(x) * Ut + (flux(x + hh) - flux(x - hh)) / (2 * hh);
        CAPTURE(x);
        CHECK(std::abs(g[i] - ref) < 1e-6);
    }
}
