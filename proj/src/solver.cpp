#include "svfb/solver.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

#include "svfb/tridiagonal.hpp"

namespace svfb {

void validate(const SolverConfig& c) {
    if (!(c.dt > 0.0)) throw std::invalid_argument("solver: dt must be positive");
    if (!(c.theta >= 0.5 && c.theta <= 1.0)) throw std::invalid_argument("solver: theta must lie in [1/2, 1]");
    if (!(c.picard_tol > 0.0)) throw std::invalid_argument("solver: picard_tol must be positive");
    if (c.picard_max < 1) throw std::invalid_argument("solver: picard_max must be >= 1");
    if (!(c.rho_floor >= 0.0)) throw std::invalid_argument("solver: rho_floor must be nonnegative");
    if (!(c.t_end >= 0.0)) throw std::invalid_argument("solver: t_end must be nonnegative");
}

FluidState initialize(const InitialData& data, const SolverConfig& config) {
    validate(config);
    if (config.n != data.grid.n) throw std::invalid_argument("initialize: grid mismatch between data and config");
    FluidState s;
    s.t = 0.0;
    s.U = data.u0;
    s.eta = data.grid.nodes;
    s.eta_x.assign(data.grid.n, 1.0);
    return s;
}

std::vector<double> depth(const FluidState& state, const InitialData& data) {
    std::vector<double> H(data.grid.n);
    for (std::size_t i = 0; i < H.size(); ++i) {
        if (!(state.eta_x[i] > 0.0)) throw MetricLoss("depth: eta_x <= 0");
        H[i] = data.rho0[i] / state.eta_x[i];
    }
    return H;
}

std::vector<double> face_metric(const Grid& grid, std::span<const double> eta) {
    std::vector<double> m(grid.n - 1);
    for (std::size_t i = 0; i + 1 < grid.n; ++i) m[i] = (eta[i + 1] - eta[i]) / grid.h;
    return m;
}

namespace {

std::vector<double> face_mean(std::span<const double> v) {
    std::vector<double> r(v.size() - 1);
    for (std::size_t i = 0; i + 1 < v.size(); ++i) r[i] = 0.5 * (v[i] + v[i + 1]);
    return r;
}

// Solves for W = U^theta:
//   M_i (W_i - U_i)/(theta dt) + sum_f c_f (W_i - W_nb) = -(p_{i+1/2} - p_{i-1/2}) + w_i g_i
// with c_f = rhobar/(h m_f^2), p_f = rhobar^2/m_f^2 and zero flux through the
// two domain faces.
std::vector<double> solve_theta_system(const Grid& g, std::span<const double> mass,
                                       std::span<const double> rhobar,
                                       std::span<const double> metric,
                                       std::span<const double> U, double theta, double dt,
                                       std::span<const double> forcing, double pressure_scale = 1.0) {
    const std::size_t n = g.n;
    std::vector<double> lo(n, 0.0), di(n, 0.0), up(n, 0.0), rhs(n, 0.0);
    const double inv = 1.0 / (theta * dt);
    for (std::size_t i = 0; i < n; ++i) {
        di[i] = mass[i] * inv;
        rhs[i] = mass[i] * inv * U[i];
        if (!forcing.empty()) rhs[i] += g.weights[i] * forcing[i];
    }
    for (std::size_t f = 0; f + 1 < n; ++f) {
        const double m2 = metric[f] * metric[f];
        const double c = rhobar[f] / (g.h * m2);
        const double p = pressure_scale * rhobar[f] * rhobar[f] / m2;
        di[f] += c;
        di[f + 1] += c;
        up[f] = -c;
        lo[f + 1] = -c;
        rhs[f] -= p;
        rhs[f + 1] += p;
    }
    solve_tridiagonal(lo, di, up, rhs);
    return rhs;
}

std::vector<double> lumped_mass(const InitialData& data, double floor) {
    std::vector<double> M(data.grid.n);
    for (std::size_t i = 0; i < M.size(); ++i) M[i] = data.grid.weights[i] * (data.rho0[i] + floor);
    return M;
}

}  // namespace

std::vector<double> face_flux(const FluidState& state, const InitialData& data) {
    const Grid& g = data.grid;
    const auto rb = face_mean(data.rho0);
    const auto m = face_metric(g, state.eta);
    std::vector<double> F(g.n - 1);
    for (std::size_t f = 0; f + 1 < g.n; ++f) {
        if (!(m[f] > 0.0)) throw MetricLoss("face_flux: non-positive face metric");
        const double Ux = (state.U[f + 1] - state.U[f]) / g.h;
        F[f] = (rb[f] * rb[f] - rb[f] * Ux) / (m[f] * m[f]);
    }
    return F;
}

std::pair<FluidState, StepReport> step(const FluidState& state, const InitialData& data,
                                       const SolverConfig& config,
                                       std::span<const double> forcing) {
    const Grid& g = data.grid;
    const std::size_t n = g.n;
    if (state.U.size() != n || state.eta.size() != n) throw std::invalid_argument("step: grid mismatch");
    if (!forcing.empty() && forcing.size() != n) throw std::invalid_argument("step: forcing size mismatch");
    const double dt = config.dt, th = config.theta;
    const auto M = lumped_mass(data, config.rho_floor);
    const auto rb = face_mean(data.rho0);

    StepReport rep;
    std::vector<double> W = state.U;
    std::vector<double> eta_star(n);
    for (int k = 1; k <= config.picard_max; ++k) {
        for (std::size_t i = 0; i < n; ++i) eta_star[i] = state.eta[i] + th * dt * W[i];
        const auto m = face_metric(g, eta_star);
        for (double v : m)
            if (!(v > 0.0)) throw MetricLoss("step: face metric lost positivity during Picard iteration");
        auto Wn = solve_theta_system(g, M, rb, m, state.U, th, dt, forcing);
        double inc = 0.0;
        for (std::size_t i = 0; i < n; ++i) inc += M[i] * (Wn[i] - W[i]) * (Wn[i] - W[i]);
        inc = std::sqrt(inc);
        W = std::move(Wn);
        rep.picard_iterations = k;
        rep.final_increment = inc;
        if (!std::isfinite(inc)) break;
        if (inc <= config.picard_tol) {
            rep.accepted = true;
            break;
        }
    }
    if (!rep.accepted) return {state, rep};

    FluidState next;
    next.t = state.t + dt;
    next.U.resize(n);
    next.eta.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        next.U[i] = M[i] > 0.0 ? (W[i] - (1.0 - th) * state.U[i]) / th : W[i];
        next.eta[i] = state.eta[i] + dt * W[i];
    }
    for (double v : face_metric(g, next.eta))
        if (!(v > 0.0)) throw MetricLoss("step: eta no longer increasing at t = " + std::to_string(next.t));
    next.eta_x = derivative(g, next.eta, 1);
    const auto [mn, mx] = std::minmax_element(next.eta_x.begin(), next.eta_x.end());
    rep.eta_x_min = *mn;
    rep.eta_x_max = *mx;
    if (!(*mn > 0.0)) throw MetricLoss("step: eta_x <= 0 at t = " + std::to_string(next.t));
    return {std::move(next), rep};
}

FluidState run(const InitialData& data, const SolverConfig& config, const StateSink& sink,
               const ForcingFn& forcing) {
    FluidState s = initialize(data, config);
    if (config.warn_low_alpha && data.alpha <= 1.0 / 3.0)
        std::cerr << "warning: alpha <= 1/3 lies outside the global-in-time regime\n";
    if (sink) {
        StepReport r0;
        r0.accepted = true;
        const auto [mn, mx] = std::minmax_element(s.eta_x.begin(), s.eta_x.end());
        r0.eta_x_min = *mn;
        r0.eta_x_max = *mx;
        sink(s, r0);
    }
    const auto steps = static_cast<long long>(std::ceil(config.t_end / config.dt - 1e-9));
    SolverConfig c = config;
    for (long long k = 0; k < steps; ++k) {
        c.dt = std::min(config.dt, config.t_end - s.t);
        if (k + 1 == steps) c.dt = config.t_end - s.t;
        if (!(c.dt > 0.0)) break;
        std::vector<double> g;
        if (forcing) g = forcing(s.t + c.theta * c.dt);
        auto [next, rep] = step(s, data, c, g);
        if (!rep.accepted) {
            std::ostringstream os;
            os << "Picard iteration did not converge at t = " << s.t << " (increment "
               << rep.final_increment << " after " << rep.picard_iterations << " iterations)";
            throw PicardFailure(os.str());
        }
        if (k + 1 == steps) next.t = config.t_end;
        s = std::move(next);
        if (sink) sink(s, rep);
    }
    return s;
}

std::vector<double> step_frozen_metric(std::span<const double> U, const InitialData& data,
                                       std::span<const double> face_metric_mid, double dt,
                                       double theta, bool pressure) {
    const Grid& g = data.grid;
    const auto M = lumped_mass(data, 0.0);
    const auto rb = face_mean(data.rho0);
    const auto W = solve_theta_system(g, M, rb, face_metric_mid, U, theta, dt, {}, pressure ? 1.0 : 0.0);
    std::vector<double> out(g.n);
    for (std::size_t i = 0; i < g.n; ++i) out[i] = M[i] > 0.0 ? (W[i] - (1.0 - theta) * U[i]) / theta : W[i];
    return out;
}

}  // namespace svfb
