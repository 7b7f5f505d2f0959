#include "svfb/mms.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace svfb {

namespace {

Jet6 bubble(double x) {
    const Jet6 X = Jet6::variable(x);
    const Jet6 q = X * (1.0 - X);
    return q * q;
}

}  // namespace

ManufacturedSolution sine_manufactured(double A) {
    const double pi = std::numbers::pi;
    ManufacturedSolution ms;
    ms.U = [A, pi](double t, double x) { return A * std::sin(pi * t) * bubble(x); };
    ms.U_t = [A, pi](double t, double x) { return A * pi * std::cos(pi * t) * bubble(x); };
    ms.eta = [A, pi](double t, double x) {
        return Jet6::variable(x) + A * (1.0 - std::cos(pi * t)) / pi * bubble(x);
    };
    return ms;
}

ManufacturedSolution zero_manufactured() {
    ManufacturedSolution ms;
    ms.U = [](double, double) { return Jet6{}; };
    ms.U_t = [](double, double) { return Jet6{}; };
    ms.eta = [](double, double x) { return Jet6::variable(x); };
    return ms;
}

std::vector<double> mms_forcing(const ManufacturedSolution& ms, const InitialData& data, double t) {
    if (!data.spec) throw std::invalid_argument("mms_forcing: needs profile-built initial data");
    const Profile prof(*data.spec);
    std::vector<double> g(data.grid.n);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double x = data.grid.nodes[i];
        const Jet6 r = prof.rho0(x);
        const Jet6 ex = ms.eta(t, x).dx();
        if (!(ex.value() > 0.0)) throw std::domain_error("mms_forcing: manufactured eta_x <= 0");
        const Jet6 Ux = ms.U(t, x).dx();
        const Jet6 inv2 = reciprocal(ex * ex);
        const Jet6 F = (r * r - r * Ux) * inv2;
        g[i] = r.value() * ms.U_t(t, x).value() + F.dx().value();
    }
    return g;
}

double mms_error(const MmsStudyConfig& cfg, std::size_t n, double dt, double theta) {
    const Grid grid = make_grid(n);
    ProfileSpec spec;
    spec.alpha = cfg.alpha;
    const InitialData data = make_initial_data(spec, grid);
    const ManufacturedSolution exact = cfg.zero_solution ? zero_manufactured() : sine_manufactured();
    const ManufacturedSolution driver = cfg.wrong_forcing ? sine_manufactured(1.5) : exact;
    SolverConfig sc;
    sc.n = n;
    sc.dt = dt;
    sc.t_end = cfg.t_end;
    sc.theta = theta;
    sc.picard_tol = 1e-13;
    sc.warn_low_alpha = false;
    // the initial velocity is U*(0) = 0 for both manufactured families
    const FluidState fin = run(data, sc, {}, [&](double t) { return mms_forcing(driver, data, t); });
    double e = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = fin.U[i] - exact.U(cfg.t_end, grid.nodes[i]).value();
        e += grid.weights[i] * data.rho0[i] * d * d;
    }
    return std::sqrt(e);
}

double fitted_order(const std::vector<double>& steps, const std::vector<double>& errors) {
    const std::size_t k = steps.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < k; ++i) {
        const double x = std::log(steps[i]), y = std::log(std::max(errors[i], 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

MmsStudyResult mms_study(const MmsStudyConfig& cfg) {
    MmsStudyResult r;
    std::vector<double> hs;
    for (double dt : cfg.dts) r.dt_errors.push_back(mms_error(cfg, cfg.n_time, dt, 1.0));
    for (std::size_t n : cfg.ns) {
        r.h_errors.push_back(mms_error(cfg, n, cfg.dt_space, 0.5));
        hs.push_back(1.0 / static_cast<double>(n - 1));
    }
    r.temporal_order = fitted_order(cfg.dts, r.dt_errors);
    r.spatial_order = fitted_order(hs, r.h_errors);
    for (double e : r.dt_errors) r.max_error = std::max(r.max_error, e);
    for (double e : r.h_errors) r.max_error = std::max(r.max_error, e);
    r.converged = r.temporal_order >= 0.9 && r.spatial_order >= 1.8;
    return r;
}

}  // namespace svfb
