#include "svfb/galerkin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace svfb {

NeumannBasis build_basis(std::size_t n_modes, const Grid& grid) {
    if (n_modes < 1) throw std::invalid_argument("build_basis: need at least one mode");
    if (4 * n_modes > grid.n)
        throw std::invalid_argument("build_basis: n_modes exceeds n/4 (resolution guard)");
    const double pi = std::numbers::pi;
    NeumannBasis b;
    b.n_modes = n_modes;
    b.grid = grid;
    b.E.resize(grid.n, n_modes);
    b.dE.resize(grid.n, n_modes);
    b.lambda.resize(n_modes);
    for (std::size_t j = 0; j < n_modes; ++j) {
        const double k = static_cast<double>(j) * pi;
        b.lambda[j] = 1.0 + k * k;
        for (std::size_t i = 0; i < grid.n; ++i) {
            const double x = grid.nodes[i];
            b.E(i, j) = j == 0 ? 1.0 : std::numbers::sqrt2 * std::cos(k * x);
            b.dE(i, j) = j == 0 ? 0.0 : -std::numbers::sqrt2 * k * std::sin(k * x);
        }
        // sin(j pi) is not exactly zero in floating point
        b.dE(0, j) = 0.0;
        b.dE(grid.n - 1, j) = 0.0;
    }
    return b;
}

FrozenMetric identity_metric() { return {[](double, double) { return 1.0; }, true}; }

GalerkinSystem assemble(const NeumannBasis& basis, const InitialData& d, const FrozenMetric& eta_bar,
                        double t, bool pressure) {
    const Grid& g = basis.grid;
    if (g.n != d.grid.n) throw std::invalid_argument("assemble: basis and data grids differ");
    const std::size_t n = g.n;
    GalerkinSystem s;
    s.t = t;
    s.form = d.alpha <= 1.0 / 3.0 ? GalerkinForm::phi0_squared : GalerkinForm::rho0;
    s.K0 = s.form == GalerkinForm::phi0_squared ? 1.0 / d.alpha - 2.0 : 0.0;
    const double ia = 1.0 / d.alpha;

    Eigen::VectorXd w(n), q(n), cross(n), p1(n), p2(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double m = eta_bar(t, g.nodes[i]);
        if (!(m >= 0.5 && m <= 1.5))
            throw std::domain_error("assemble: frozen metric outside [1/2, 3/2]");
        const double im2 = 1.0 / (m * m);
        const double phi = d.phi0[i], dphi = d.dphi0[1][i], W = g.weights[i];
        if (s.form == GalerkinForm::rho0) {
            w(i) = W * d.rho0[i];
            q(i) = W * d.rho0[i] * im2;
            cross(i) = 0.0;
            p1(i) = W * d.rho0[i] * d.rho0[i] * im2;
            p2(i) = 0.0;
        } else {
            w(i) = W * phi * phi;
            q(i) = W * phi * phi * im2;
            cross(i) = W * phi * dphi * im2;
            const double phia = std::pow(phi, ia);
            p1(i) = W * phi * phi * phia * im2;
            p2(i) = W * phi * phia * dphi * im2;
        }
    }
    const auto& E = basis.E;
    const auto& dE = basis.dE;
    s.A = E.transpose() * w.asDiagonal() * E;
    s.A = 0.5 * (s.A + s.A.transpose());
    // row = test index, column = trial index
    s.B = dE.transpose() * q.asDiagonal() * dE;
    if (s.K0 != 0.0) s.B -= s.K0 * (E.transpose() * cross.asDiagonal() * dE);
    s.C = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis.n_modes));
    if (pressure) {
        s.C = dE.transpose() * p1;
        if (s.K0 != 0.0) s.C -= s.K0 * (E.transpose() * p2);
    }
    return s;
}

ModalProblem make_modal_problem(const NeumannBasis& basis, const InitialData& data,
                                const FrozenMetric& eta_bar, bool pressure) {
    const auto s0 = assemble(basis, data, eta_bar, 0.0, pressure);
    ModalProblem p;
    p.A = s0.A;
    p.stationary = eta_bar.stationary;
    if (eta_bar.stationary) {
        p.operators = [B = s0.B, C = s0.C](double) { return std::make_pair(B, C); };
    } else {
        p.operators = [basis, data, eta_bar, pressure](double t) {
            auto s = assemble(basis, data, eta_bar, t, pressure);
            return std::make_pair(std::move(s.B), std::move(s.C));
        };
    }
    return p;
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

double spectral_radius(const MatrixXd& M) {
    Eigen::EigenSolver<MatrixXd> es(M, false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

double operator_norm(const MatrixXd& M) {
    Eigen::JacobiSVD<MatrixXd> svd(M);
    return svd.singularValues()(0);
}

// Chebyshev-Lobatto nodes on [-1, 1] (increasing) and the integration matrix
// Q with (Q f)_i = int_{-1}^{s_i} p(s) ds for the interpolant p of f.
struct ChebyshevRule {
    std::vector<double> s;
    MatrixXd Q;
    explicit ChebyshevRule(int m) {
        s.resize(m + 1);
        for (int i = 0; i <= m; ++i) s[i] = -std::cos(std::numbers::pi * i / m);
        MatrixXd V(m + 1, m + 1), Vi(m + 1, m + 1);
        auto T = [](int j, double x) { return std::cos(j * std::acos(std::clamp(x, -1.0, 1.0))); };
        // antiderivative of T_j vanishing at -1
        auto intT = [&](int j, double x) {
            auto F = [&](double y) {
                if (j == 0) return y;
                if (j == 1) return 0.5 * y * y;
                return T(j + 1, y) / (2.0 * (j + 1)) - T(j - 1, y) / (2.0 * (j - 1));
            };
            return F(x) - F(-1.0);
        };
        for (int i = 0; i <= m; ++i)
            for (int j = 0; j <= m; ++j) {
                V(i, j) = T(j, s[i]);
                Vi(i, j) = intT(j, s[i]);
            }
        Q = Vi * V.inverse();
    }
};

class Rk4 {
public:
    explicit Rk4(const ModalProblem& p) : p_(p), llt_(p.A) {}
    VectorXd rhs(double t, const VectorXd& mu) const {
        const auto [B, C] = p_.operators(t);
        return llt_.solve(C - B * mu);
    }
    double stable_step(double t) const {
        const auto [B, C] = p_.operators(t);
        const double r = spectral_radius(llt_.solve(B));
        // rho h <= 1/32: local error (rho h)^5/120 keeps trajectories accurate to ~1e-8
        return r > 0.0 ? 1.0 / (32.0 * r) : std::numeric_limits<double>::infinity();
    }
    VectorXd step(double t, const VectorXd& mu, double h) const {
        const VectorXd k1 = rhs(t, mu);
        const VectorXd k2 = rhs(t + 0.5 * h, mu + 0.5 * h * k1);
        const VectorXd k3 = rhs(t + 0.5 * h, mu + 0.5 * h * k2);
        const VectorXd k4 = rhs(t + h, mu + h * k3);
        return mu + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }

private:
    const ModalProblem& p_;
    Eigen::LLT<MatrixXd> llt_;
};

class PicardIntegral {
public:
    explicit PicardIntegral(const ModalProblem& p) : p_(p), llt_(p.A), rule_(12) {}

    double contraction_step(double t) const {
        const auto [B, C] = p_.operators(t);
        const double L = operator_norm(llt_.solve(B));
        return L > 0.0 ? 0.5 / L : std::numeric_limits<double>::infinity();
    }

    // Fixed point mu(t) = mu0 + int_t0^t A^{-1}(C - B mu) on [t0, t0 + tau];
    // returns false if the iteration fails to settle.
    bool interval(double t0, double tau, const VectorXd& mu0, VectorXd& out) const {
        const int m = static_cast<int>(rule_.s.size());
        std::vector<MatrixXd> AB(m);
        std::vector<VectorXd> AC(m);
        for (int i = 0; i < m; ++i) {
            const auto [B, C] = p_.operators(t0 + 0.5 * tau * (rule_.s[i] + 1.0));
            AB[i] = llt_.solve(B);
            AC[i] = llt_.solve(C);
        }
        std::vector<VectorXd> mu(m, mu0), G(m);
        const double scale = 1.0 + mu0.lpNorm<Eigen::Infinity>();
        for (int it = 0; it < 200; ++it) {
            for (int i = 0; i < m; ++i) G[i] = AC[i] - AB[i] * mu[i];
            double inc = 0.0;
            for (int i = 0; i < m; ++i) {
                VectorXd next = mu0;
                for (int l = 0; l < m; ++l) next += 0.5 * tau * rule_.Q(i, l) * G[l];
                inc = std::max(inc, (next - mu[i]).lpNorm<Eigen::Infinity>());
                mu[i] = std::move(next);
            }
            if (!std::isfinite(inc)) return false;
            if (inc <= 1e-14 * scale) {
                out = mu.back();
                return true;
            }
        }
        return false;
    }

private:
    const ModalProblem& p_;
    Eigen::LLT<MatrixXd> llt_;
    ChebyshevRule rule_;
};

}  // namespace

ModalTrajectory solve_modal(const ModalProblem& problem, const VectorXd& mu0, double dt, double t_end,
                            ModalMethod method) {
    if (!(dt > 0.0) || !(t_end >= 0.0)) throw std::invalid_argument("solve_modal: need dt > 0, t_end >= 0");
    if (problem.A.rows() != mu0.size()) throw std::invalid_argument("solve_modal: size mismatch");
    if (problem.A.llt().info() != Eigen::Success)
        throw std::domain_error("solve_modal: mass matrix is not positive definite");
    ModalTrajectory tr;
    tr.t.push_back(0.0);
    tr.mu.push_back(mu0);
    const auto steps = static_cast<long long>(std::ceil(t_end / dt - 1e-9));
    const Rk4 rk(problem);
    const PicardIntegral pi(problem);
    double limit = 0.0;
    if (problem.stationary)
        limit = method == ModalMethod::rk4 ? rk.stable_step(0.0) : pi.contraction_step(0.0);
    VectorXd mu = mu0;
    double t = 0.0;
    for (long long k = 0; k < steps; ++k) {
        const double t1 = k + 1 == steps ? t_end : static_cast<double>(k + 1) * dt;
        const double H = t1 - t;
        if (!problem.stationary) {
            limit = method == ModalMethod::rk4 ? std::min(rk.stable_step(t), rk.stable_step(t1))
                                               : std::min(pi.contraction_step(t), pi.contraction_step(t1));
        }
        auto sub = static_cast<long long>(std::ceil(H / limit - 1e-12));
        sub = std::max<long long>(sub, 1);
        if (method == ModalMethod::rk4) {
            const double h = H / static_cast<double>(sub);
            for (long long j = 0; j < sub; ++j) mu = rk.step(t + static_cast<double>(j) * h, mu, h);
            tr.substeps += static_cast<std::size_t>(sub);
        } else {
            for (int refine = 0;; ++refine) {
                if (refine > 30) throw std::runtime_error("solve_modal: Picard contraction failure");
                const double h = H / static_cast<double>(sub);
                VectorXd m = mu;
                bool ok = true;
                for (long long j = 0; j < sub && ok; ++j) ok = pi.interval(t + static_cast<double>(j) * h, h, m, m);
                if (ok) {
                    mu = std::move(m);
                    tr.substeps += static_cast<std::size_t>(sub);
                    break;
                }
                sub *= 2;
            }
        }
        t = t1;
        tr.t.push_back(t);
        tr.mu.push_back(mu);
    }
    return tr;
}

VectorXd project(const NeumannBasis& basis, const std::vector<double>& f) {
    if (f.size() != basis.grid.n) throw std::invalid_argument("project: size mismatch");
    VectorXd wf(static_cast<Eigen::Index>(f.size()));
    for (std::size_t i = 0; i < f.size(); ++i) wf(static_cast<Eigen::Index>(i)) = basis.grid.weights[i] * f[i];
    return basis.E.transpose() * wf;
}

std::vector<double> reconstruct_field(const NeumannBasis& basis, const VectorXd& mu) {
    if (mu.size() != static_cast<Eigen::Index>(basis.n_modes))
        throw std::invalid_argument("reconstruct_field: coefficient count mismatch");
    const VectorXd X = basis.E * mu;
    return {X.data(), X.data() + X.size()};
}

CrossValidation cross_validate(const InitialData& data, const FrozenMetric& eta_bar, std::size_t n_modes,
                               const SolverConfig& fv, bool pressure) {
    validate(fv);
    const Grid& g = data.grid;
    if (fv.n != g.n) throw std::invalid_argument("cross_validate: grid mismatch between data and config");
    const auto basis = build_basis(n_modes, g);
    const auto problem = make_modal_problem(basis, data, eta_bar, pressure);
    const auto tr = solve_modal(problem, project(basis, data.u0), fv.dt, fv.t_end, ModalMethod::rk4);

    CrossValidation cv;
    std::vector<double> U = data.u0, m(g.n - 1);
    auto record = [&](double t, const VectorXd& mu) {
        const auto X = reconstruct_field(basis, mu);
        double s = 0.0;
        for (std::size_t i = 0; i < g.n; ++i) s += g.weights[i] * data.rho0[i] * (X[i] - U[i]) * (X[i] - U[i]);
        cv.times.push_back(t);
        cv.per_time.push_back(std::sqrt(s));
        cv.discrepancy = std::max(cv.discrepancy, cv.per_time.back());
    };
    record(0.0, tr.mu.front());
    for (std::size_t k = 1; k < tr.t.size(); ++k) {
        const double t0 = tr.t[k - 1], h = tr.t[k] - t0, tm = t0 + fv.theta * h;
        for (std::size_t f = 0; f + 1 < g.n; ++f) {
            const double v = eta_bar(tm, g.faces[f]);
            if (!(v >= 0.5 && v <= 1.5)) throw std::domain_error("cross_validate: frozen metric outside [1/2, 3/2]");
            m[f] = v;
        }
        U = step_frozen_metric(U, data, m, h, fv.theta, pressure);
        record(tr.t[k], tr.mu[k]);
    }
    cv.final_discrepancy = cv.per_time.back();
    return cv;
}

}  // namespace svfb
