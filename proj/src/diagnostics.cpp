#include "svfb/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace svfb {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double rhobar(const InitialData& d, std::size_t f) { return 0.5 * (d.rho0[f] + d.rho0[f + 1]); }

// Σ_f h rhobar² / m_f: the potential part shared by both functionals.
double potential(const FluidState& s, const InitialData& d) {
    const auto m = face_metric(d.grid, s.eta);
    double e = 0.0;
    for (std::size_t f = 0; f < m.size(); ++f) e += d.grid.h * rhobar(d, f) * rhobar(d, f) / m[f];
    return e;
}

// Trapezoid over interior nodes; endpoint samples are ignored.
double interior_integral(const Grid& g, const std::vector<double>& f) {
    double s = 0.0;
    for (std::size_t i = 1; i + 1 < g.n; ++i) s += g.h * f[i];
    return s;
}

double weighted_sq(const InitialData& d, const std::vector<double>& f, double s) {
    std::vector<double> v(d.grid.n, 0.0);
    for (std::size_t i = 1; i + 1 < d.grid.n; ++i) {
        const double w = std::pow(d.phi0[i], s) * f[i];
        v[i] = w * w;
    }
    return interior_integral(d.grid, v);
}

}  // namespace

const std::vector<std::string>& record_columns() {
    static const std::vector<std::string> cols = {
        "t", "mass", "momentum", "kinetic_energy", "fundamental_energy", "fundamental_dissipation",
        "bd_entropy", "bd_dissipation", "eta_x_min", "eta_x_max", "H_max", "neumann_residual",
        "slope_ratio", "V_transport_residual", "V_weighted_sup", "log_eta_weighted",
        "e_tilde_spatial", "bd_divergent"};
    return cols;
}

std::vector<double> record_values(const DiagnosticsRecord& r) {
    return {r.t, r.mass, r.momentum, r.kinetic_energy, r.fundamental_energy,
            r.fundamental_dissipation, r.bd_entropy, r.bd_dissipation, r.eta_x_min, r.eta_x_max,
            r.H_max, r.neumann_residual, r.slope_ratio, r.V_transport_residual, r.V_weighted_sup,
            r.log_eta_weighted, r.e_tilde_spatial, r.bd_divergent ? 1.0 : 0.0};
}

EffectiveVelocityField effective_velocity(const FluidState& s, const InitialData& d, VForm form) {
    const Grid& g = d.grid;
    EffectiveVelocityField out;
    out.form_used = form;
    out.V.assign(g.n, kNaN);
    if (form == VForm::metric_form) {
        const auto exx = derivative(g, s.eta, 2);
        for (std::size_t i = 1; i + 1 < g.n; ++i) {
            const double ex = s.eta_x[i];
            out.V[i] = s.U[i] + d.dphi0[1][i] / (d.alpha * d.phi0[i] * ex) - exx[i] / (ex * ex);
        }
    } else {
        const auto H = depth(s, d);
        const auto Hx = derivative(g, H, 1);
        for (std::size_t i = 1; i + 1 < g.n; ++i) out.V[i] = s.U[i] + Hx[i] / d.rho0[i];
    }
    return out;
}

ConservedQuantities conserved_quantities(const FluidState& s, const InitialData& d) {
    const Grid& g = d.grid;
    ConservedQuantities q{0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < g.n; ++i) {
        const double m = g.weights[i] * d.rho0[i];
        q.mass += m;
        q.momentum += m * s.U[i];
        q.kinetic += 0.5 * m * s.U[i] * s.U[i];
    }
    return q;
}

FundamentalEnergy fundamental_energy(const FluidState& s, const InitialData& d) {
    const Grid& g = d.grid;
    const auto q = conserved_quantities(s, d);
    const double pot = potential(s, d);
    const auto m = face_metric(g, s.eta);
    double diss = 0.0;
    for (std::size_t f = 0; f < m.size(); ++f) {
        const double ux = (s.U[f + 1] - s.U[f]) / g.h;
        diss += g.h * rhobar(d, f) * ux * ux / (m[f] * m[f]);
    }
    return {q.kinetic + pot, 2.0 * q.kinetic + pot, diss};
}

BdEntropy bd_entropy(const FluidState& s, const InitialData& d) {
    const Grid& g = d.grid;
    const auto V = effective_velocity(s, d).V;
    std::vector<double> kin(g.n, 0.0);
    for (std::size_t i = 1; i + 1 < g.n; ++i) kin[i] = d.rho0[i] * V[i] * V[i];
    BdEntropy b{};
    b.divergent = d.alpha >= 1.0;
    // rho0 V² ~ d^(1/alpha - 2) near the boundary
    const double beta = 1.0 / d.alpha - 2.0;
    const double k = beta > -1.0 ? integrate_singular(g, kin, beta) : interior_integral(g, kin);
    const double pot = potential(s, d);
    b.entropy = 0.5 * k + pot;
    b.entropy_unhalved = k + pot;
    const auto H = depth(s, d);
    const auto Hx = derivative(g, H, 1);
    std::vector<double> di(g.n);
    for (std::size_t i = 0; i < g.n; ++i) di[i] = Hx[i] * Hx[i] / s.eta_x[i];
    b.dissipation = integrate(g, di);
    return b;
}

double v_transport_residual(const FluidState& a, const FluidState& b, const InitialData& d) {
    const double dt = b.t - a.t;
    if (!(dt > 0.0)) throw std::invalid_argument("v_transport_residual: states not ordered in time");
    const auto Va = effective_velocity(a, d).V, Vb = effective_velocity(b, d).V;
    const auto Ha = depth(a, d), Hb = depth(b, d);
    double r = 0.0;
    for (std::size_t i = 1; i + 1 < d.grid.n; ++i) {
        const double Hm = 0.5 * (Ha[i] + Hb[i]);
        const double Vm = 0.5 * (Va[i] + Vb[i]);
        const double Um = 0.5 * (a.U[i] + b.U[i]);
        const double res = (Vb[i] - Va[i]) / dt + 2.0 * Hm * (Vm - Um);
        r = std::max(r, d.phi0[i] * std::abs(res));
    }
    return r;
}

double duhamel_deviation(const ProbeSeries& s) {
    const std::size_t k = s.t.size();
    if (k == 0) return 0.0;
    double A = 0.0, I = 0.0, dev = 0.0;
    const double w = s.weight;
    const double wV0 = w * s.V[0];
    for (std::size_t j = 1; j < k; ++j) {
        const double dt = s.t[j] - s.t[j - 1];
        const double Aprev = A;
        A += dt * (s.H[j - 1] + s.H[j]);  // ∫ 2H by trapezoid
        I += 0.5 * dt * (2.0 * w * s.H[j - 1] * s.U[j - 1] * std::exp(Aprev)
                         + 2.0 * w * s.H[j] * s.U[j] * std::exp(A));
        const double rhs = std::exp(-A) * (wV0 + I);
        dev = std::max(dev, std::abs(w * s.V[j] - rhs));
    }
    return dev;
}

DuhamelTracker::DuhamelTracker(const InitialData& data, double r, std::vector<std::size_t> probes)
    : data_(&data), probes_(std::move(probes)) {
    if (probes_.empty()) probes_ = default_probes(data.grid);
    for (std::size_t p : probes_) {
        if (p == 0 || p + 1 >= data.grid.n) throw std::invalid_argument("DuhamelTracker: probe must be interior");
        ProbeSeries s;
        s.weight = std::pow(data.rho0[p], r * data.alpha);
        series_.push_back(s);
    }
}

void DuhamelTracker::record(const FluidState& state) {
    const auto V = effective_velocity(state, *data_).V;
    for (std::size_t k = 0; k < probes_.size(); ++k) {
        const std::size_t p = probes_[k];
        auto& s = series_[k];
        s.t.push_back(state.t);
        s.H.push_back(data_->rho0[p] / state.eta_x[p]);
        s.U.push_back(state.U[p]);
        s.V.push_back(V[p]);
    }
}

double DuhamelTracker::max_deviation() const {
    double m = 0.0;
    for (const auto& s : series_) m = std::max(m, duhamel_deviation(s));
    return m;
}

std::vector<std::size_t> default_probes(const Grid& g) {
    std::vector<std::size_t> p;
    for (double x : {0.1, 0.25, 0.5, 0.75, 0.9}) p.push_back(static_cast<std::size_t>(std::lround(x * (g.n - 1))));
    return p;
}

double v_duhamel_check(const std::vector<FluidState>& traj, const InitialData& d, double r,
                       std::vector<std::size_t> probes) {
    DuhamelTracker tr(d, r, std::move(probes));
    for (const auto& s : traj) tr.record(s);
    return tr.max_deviation();
}

BoundaryMonitors boundary_monitors(const FluidState& s, const InitialData& d) {
    const Grid& g = d.grid;
    const auto Ux = derivative(g, s.U, 1);
    BoundaryMonitors b{std::max(std::abs(Ux.front()), std::abs(Ux.back())), 0.0, 0.0};
    const double e = 0.5 * (d.alpha + 2.0);
    for (std::size_t i = 1; i + 1 < g.n; ++i) {
        b.slope_ratio = std::max(b.slope_ratio, std::abs(Ux[i]) / distance(g.nodes[i]));
        b.log_eta_weighted = std::max(b.log_eta_weighted, std::pow(d.rho0[i], e) * std::abs(std::log(s.eta_x[i])));
    }
    return b;
}

KineticFloorResult kinetic_floor_check(const std::vector<DiagnosticsRecord>& traj, double tol) {
    KineticFloorResult r;
    if (traj.empty()) {
        r.skipped = true;
        r.note = "empty trajectory";
        return r;
    }
    const double p0 = traj.front().momentum, m0 = traj.front().mass;
    if (std::abs(p0) <= 1e-14 * std::max(1.0, m0)) {
        r.skipped = true;
        r.note = "initial momentum is zero; floor check skipped";
        return r;
    }
    r.floor = p0 * p0 / (2.0 * m0);
    r.min_margin = std::numeric_limits<double>::infinity();
    for (const auto& rec : traj) r.min_margin = std::min(r.min_margin, rec.kinetic_energy - r.floor);
    r.passed = r.min_margin >= -tol;
    return r;
}

std::vector<EnergyComponent> weighted_energy_estimate(const std::vector<FluidState>& w,
                                                      const InitialData& d) {
    if (w.size() < 3) throw std::invalid_argument("weighted_energy_estimate: need at least 3 states");
    const Grid& g = d.grid;
    const auto& s0 = w[w.size() - 3];
    const auto& s1 = w[w.size() - 2];
    const auto& s2 = w[w.size() - 1];
    const double dt1 = s2.t - s1.t, dt0 = s1.t - s0.t;
    if (!(dt1 > 0.0 && dt0 > 0.0)) throw std::invalid_argument("weighted_energy_estimate: states not ordered");
    std::vector<double> Ut(g.n), Utt(g.n);
    for (std::size_t i = 0; i < g.n; ++i) {
        Ut[i] = (s2.U[i] - s1.U[i]) / dt1;
        const double Ut0 = (s1.U[i] - s0.U[i]) / dt0;
        Utt[i] = (Ut[i] - Ut0) / (0.5 * (dt0 + dt1));
    }
    const bool low = d.alpha <= 1.0 / 3.0;
    const double slo = low ? 1.0 : 0.5 / d.alpha;
    const double shi = low ? 1.0 : 1.5 - d.epsilon0;
    const auto Ux = derivative(g, s2.U, 1);
    std::vector<EnergyComponent> out = {
        {"U", weighted_sq(d, s2.U, slo)},
        {"U_t", weighted_sq(d, Ut, slo)},
        {"U_tt", weighted_sq(d, Utt, slo)},
        {"U_x", weighted_sq(d, Ux, slo)},
        {"U_tx", weighted_sq(d, derivative(g, Ut, 1), slo)},
        {"U_txx", weighted_sq(d, derivative(g, Ut, 2), shi)},
    };
    for (int k = 2; k <= 4; ++k)
        out.push_back({"U_" + std::string(k, 'x'), weighted_sq(d, derivative(g, s2.U, k), shi)});
    return out;
}

double e_tilde_spatial(const FluidState& s, const InitialData& d) {
    const double shi = d.alpha <= 1.0 / 3.0 ? 1.0 : 1.5 - d.epsilon0;
    double e = 0.0;
    for (int k = 2; k <= 4; ++k) e += weighted_sq(d, derivative(d.grid, s.U, k), shi);
    return e;
}

DiagnosticsRecord make_record(const FluidState& s, const FluidState* prev, const InitialData& d) {
    DiagnosticsRecord r;
    r.t = s.t;
    const auto q = conserved_quantities(s, d);
    r.mass = q.mass;
    r.momentum = q.momentum;
    r.kinetic_energy = q.kinetic;
    const auto fe = fundamental_energy(s, d);
    r.fundamental_energy = fe.energy;
    r.fundamental_dissipation = fe.dissipation;
    const auto bd = bd_entropy(s, d);
    r.bd_entropy = bd.entropy;
    r.bd_dissipation = bd.dissipation;
    r.bd_divergent = bd.divergent;
    const auto [mn, mx] = std::minmax_element(s.eta_x.begin(), s.eta_x.end());
    r.eta_x_min = *mn;
    r.eta_x_max = *mx;
    const auto H = depth(s, d);
    r.H_max = *std::max_element(H.begin(), H.end());
    const auto bm = boundary_monitors(s, d);
    r.neumann_residual = bm.neumann_residual;
    r.slope_ratio = bm.slope_ratio;
    r.log_eta_weighted = bm.log_eta_weighted;
    r.V_transport_residual = prev ? v_transport_residual(*prev, s, d) : kNaN;
    const auto V = effective_velocity(s, d).V;
    for (std::size_t i = 1; i + 1 < d.grid.n; ++i)
        r.V_weighted_sup = std::max(r.V_weighted_sup, std::abs(d.phi0[i] * V[i]));
    r.e_tilde_spatial = e_tilde_spatial(s, d);
    return r;
}

}  // namespace svfb
