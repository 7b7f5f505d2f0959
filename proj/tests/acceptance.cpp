// Acceptance suite: one PASS/FAIL line per criterion, details indented below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "svfb/config.hpp"
#include "svfb/diagnostics.hpp"
#include "svfb/eulerian.hpp"
#include "svfb/galerkin.hpp"
#include "svfb/inequality.hpp"
#include "svfb/initial_data.hpp"
#include "svfb/mms.hpp"
#include "svfb/solver.hpp"

using namespace svfb;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Identity residuals are measured after the initial layer; whole-run values are reported too.
constexpr double kLayer = 0.1;

struct Outcome {
    bool pass = true;
    std::vector<std::string> details;
    void require(bool ok, const std::string& what) {
        pass = pass && ok;
        details.push_back(fmt::format("{} {}", ok ? "ok  " : "FAIL", what));
    }
    void info(const std::string& what) { details.push_back("     " + what); }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string seq(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += fmt::format("{}{:.3e}", i ? " -> " : "", v[i]);
    return s;
}

// Smallest ratio v[i] / v[i+1] over consecutive refinements.
double min_factor(const std::vector<double>& v) {
    double f = kInf;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) f = std::min(f, v[i] / v[i + 1]);
    return f;
}

ProfileSpec bump_profile(double alpha, double amplitude = 0.5) {
    ProfileSpec s;
    s.alpha = alpha;
    s.velocity = {VelocityKind::bump, {0.5, 0.2, amplitude}};
    return s;
}

SolverConfig solver(std::size_t n, double dt, double t_end, double theta = 1.0) {
    SolverConfig c;
    c.n = n;
    c.dt = dt;
    c.t_end = t_end;
    c.theta = theta;
    return c;
}

// Per-run monitors shared by several criteria.
struct RunStats {
    double momentum0 = 0.0, momentum_drift = 0.0;
    double energy_rise = -kInf;
    double fe_identity = 0.0, fe_identity_layer = 0.0;
    double bd_identity = 0.0, bd_identity_layer = 0.0;
    bool bd_divergent = false;
    double vtr = 0.0, vtr_layer = 0.0;
    double duhamel = 0.0;
    double v_sup0 = 0.0, v_sup = 0.0;
    double eta_x_min = kInf, eta_x_max = 0.0;
    double endpoint = 0.0;
    double neumann = 0.0;
    std::vector<double> slope;
    double mass_error = 0.0;
    double kinetic_margin = kInf;
    double seconds = 0.0;
};

RunStats simulate(const InitialData& d, const SolverConfig& c, const std::vector<double>& snapshots = {},
                  double kinetic_floor = 0.0) {
    RunStats r;
    const auto t0 = std::chrono::steady_clock::now();
    const double lag_mass = integrate(d.grid, d.rho0);
    DuhamelTracker duhamel(d, 1.0, {});
    FluidState prev;
    FundamentalEnergy fe_prev{};
    BdEntropy bd_prev{};
    bool has_prev = false;
    std::size_t next_snap = 0;
    run(d, c, [&](const FluidState& s, const StepReport&) {
        const auto q = conserved_quantities(s, d);
        const auto fe = fundamental_energy(s, d);
        const auto bd = bd_entropy(s, d);
        duhamel.record(s);
        if (!has_prev) r.momentum0 = q.momentum;
        r.momentum_drift = std::max(r.momentum_drift, std::abs(q.momentum - r.momentum0));
        r.kinetic_margin = std::min(r.kinetic_margin, q.kinetic - kinetic_floor);
        r.bd_divergent = bd.divergent;
        const auto V = effective_velocity(s, d).V;
        double vs = 0.0;
        for (std::size_t i = 1; i + 1 < d.grid.n; ++i) vs = std::max(vs, std::abs(d.phi0[i] * V[i]));
        if (!has_prev) r.v_sup0 = vs;
        r.v_sup = std::max(r.v_sup, vs);
        for (double m : s.eta_x) {
            r.eta_x_min = std::min(r.eta_x_min, m);
            r.eta_x_max = std::max(r.eta_x_max, m);
        }
        const auto b = boundary_monitors(s, d);
        if (has_prev) {
            const double h = s.t - prev.t;
            const double fe_res = std::abs((fe.energy - fe_prev.energy) / h + 0.5 * (fe.dissipation + fe_prev.dissipation));
            const double bd_res = std::abs((bd.entropy - bd_prev.entropy) / h + (bd.dissipation + bd_prev.dissipation));
            const double vt = v_transport_residual(prev, s, d);
            r.energy_rise = std::max(r.energy_rise, fe.energy - fe_prev.energy);
            r.fe_identity = std::max(r.fe_identity, fe_res);
            r.bd_identity = std::max(r.bd_identity, bd_res);
            r.vtr = std::max(r.vtr, vt);
            if (prev.t >= kLayer) {
                r.fe_identity_layer = std::max(r.fe_identity_layer, fe_res);
                r.bd_identity_layer = std::max(r.bd_identity_layer, bd_res);
                r.vtr_layer = std::max(r.vtr_layer, vt);
            }
            r.neumann = std::max(r.neumann, b.neumann_residual);
        }
        r.slope.push_back(b.slope_ratio);
        r.endpoint = std::max({r.endpoint, std::abs(s.eta_x.front() - 1.0), std::abs(s.eta_x.back() - 1.0)});
        while (next_snap < snapshots.size() && s.t >= snapshots[next_snap] - 0.5 * c.dt) {
            const double em = eulerian_mass(reconstruct(s, d, 2 * d.grid.n - 1));
            r.mass_error = std::max(r.mass_error, std::abs(em - lag_mass) / lag_mass);
            ++next_snap;
        }
        prev = s;
        fe_prev = fe;
        bd_prev = bd;
        has_prev = true;
    });
    r.duhamel = duhamel.max_deviation();
    r.seconds = seconds_since(t0);
    return r;
}

// Mean of the first and last quarter of a series.
std::pair<double, double> quartile_means(const std::vector<double>& v) {
    const std::size_t q = std::max<std::size_t>(1, v.size() / 4);
    double a = 0.0, b = 0.0;
    for (std::size_t i = 0; i < q; ++i) {
        a += v[i];
        b += v[v.size() - 1 - i];
    }
    return {a / q, b / q};
}

}  // namespace

int main() {
    std::vector<std::pair<std::string, Outcome>> results;
    auto report = [&](const std::string& name, Outcome o) {
        fmt::print("{} {}\n", o.pass ? "PASS" : "FAIL", name);
        for (const auto& d : o.details) fmt::print("    {}\n", d);
        std::fflush(stdout);
        results.emplace_back(name, std::move(o));
    };

    // Reference run shared by criteria 1, 2, 4, 5 and 6.
    const auto base = make_initial_data(bump_profile(1.0), make_grid(401));
    const auto ref = simulate(base, solver(401, 1e-4, 1.0), {0.0, 0.25, 0.5, 0.75, 1.0});

    {
        Outcome o;
        const double rel = ref.momentum_drift / std::abs(ref.momentum0);
        o.require(rel <= 1e-10, fmt::format("relative momentum drift {:.3e} <= 1e-10 (p0 = {:.6e})", rel, ref.momentum0));
        o.require(ref.mass_error <= 1e-4, fmt::format("Eulerian vs Lagrangian mass {:.3e} <= 1e-4 at 5 snapshots", ref.mass_error));
        o.require(ref.seconds <= 60.0, fmt::format("runtime {:.2f} s <= 60 s (n = 401, dt = 1e-4, T = 1)", ref.seconds));
        report("#1 conservation", o);
    }

    // theta = 1/2 refinement ladder (dt, h halved together), T = 0.5.
    std::vector<RunStats> ladder05, ladder1;
    for (int k = 0; k < 4; ++k) {
        const std::size_t n = 50 * (1u << k) + 1;
        const double dt = 0.02 / (1 << k);
        ladder1.push_back(simulate(make_initial_data(bump_profile(1.0), make_grid(n)), solver(n, dt, 0.5, 0.5)));
        ladder05.push_back(simulate(make_initial_data(bump_profile(0.5), make_grid(n)), solver(n, dt, 0.5, 0.5)));
    }
    {
        Outcome o;
        o.require(ref.energy_rise <= 1e-12,
                  fmt::format("theta = 1: largest per-step change {:.3e} <= 1e-12", ref.energy_rise));
        std::vector<double> post, whole;
        for (const auto& r : ladder1) {
            post.push_back(r.fe_identity_layer);
            whole.push_back(r.fe_identity);
        }
        o.require(min_factor(post) >= 3.0,
                  fmt::format("theta = 1/2 identity residual, t >= {}: {} (min factor {:.2f} >= 3)", kLayer, seq(post),
                              min_factor(post)));
        o.info(fmt::format("whole run including the initial layer: {} (min factor {:.2f})", seq(whole), min_factor(whole)));
        report("#2 energy dissipation", o);
    }

    {
        Outcome o;
        std::vector<double> post, whole;
        for (const auto& r : ladder05) {
            post.push_back(r.bd_identity_layer);
            whole.push_back(r.bd_identity);
        }
        o.require(min_factor(post) >= 2.0,
                  fmt::format("alpha = 1/2 BD identity residual, t >= {}: {} (min factor {:.2f} >= 2)", kLayer, seq(post),
                              min_factor(post)));
        o.info(fmt::format("whole run including the initial layer: {} (min factor {:.2f})", seq(whole), min_factor(whole)));
        o.require(!ladder05.back().bd_divergent, "alpha = 1/2 entropy finite");
        o.require(ref.bd_divergent, "alpha = 1 flagged divergent and excluded");
        report("#3 BD entropy", o);
    }

    // Grid ladder for endpoint metric and Neumann residual.
    std::vector<RunStats> grids;
    for (std::size_t n : {101u, 201u}) grids.push_back(simulate(make_initial_data(bump_profile(1.0), make_grid(n)), solver(n, 1e-4, 1.0)));
    grids.push_back(ref);
    {
        Outcome o;
        o.require(ref.eta_x_min >= 0.1 && ref.eta_x_max <= 10.0,
                  fmt::format("eta_x in [{:.4f}, {:.4f}] within [0.1, 10]", ref.eta_x_min, ref.eta_x_max));
        std::vector<double> ep;
        for (const auto& g : grids) ep.push_back(g.endpoint);
        o.require(ref.endpoint <= 5e-2, fmt::format("endpoint |eta_x - 1| {:.3e} <= 5e-2 at n = 401", ref.endpoint));
        o.require(min_factor(ep) > 1.0, fmt::format("decreasing under refinement n = 101/201/401: {}", seq(ep)));
        report("#4 metric bounds", o);
    }

    {
        Outcome o;
        std::vector<double> nr;
        for (const auto& g : grids) nr.push_back(g.neumann);
        std::vector<double> hs = {1.0 / 100, 1.0 / 200, 1.0 / 400};
        const double order = fitted_order(hs, nr);
        o.require(ref.neumann <= 1e-2, fmt::format("neumann_residual {:.3e} <= 1e-2 at n = 401", ref.neumann));
        o.require(order >= 0.9, fmt::format("n = 101/201/401: {} (order {:.3f} >= 0.9)", seq(nr), order));
        const auto [first, last] = quartile_means(ref.slope);
        double smax = 0.0;
        for (double s : ref.slope) smax = std::max(smax, s);
        o.require(std::isfinite(smax) && last <= 2.0 * first,
                  fmt::format("slope_ratio max {:.3f}; quartile means {:.3f} -> {:.3f} (ratio {:.3f} <= 2)", smax, first,
                              last, last / first));
        report("#5 boundary behavior", o);
    }

    {
        Outcome o;
        std::vector<double> dts = {4e-3, 2e-3, 1e-3}, vt, vt_whole, du;
        for (double dt : dts) {
            const auto r = simulate(base, solver(401, dt, 1.0));
            vt.push_back(r.vtr_layer);
            vt_whole.push_back(r.vtr);
            du.push_back(r.duhamel);
        }
        const double ov = fitted_order(dts, vt), od = fitted_order(dts, du);
        o.require(ov >= 0.9, fmt::format("V transport residual, t >= {}: {} (order {:.3f} >= 0.9)", kLayer, seq(vt), ov));
        o.info(fmt::format("whole run including the initial layer: {} (order {:.3f})", seq(vt_whole),
                           fitted_order(dts, vt_whole)));
        o.require(od >= 0.9, fmt::format("Duhamel deviation (r = 1, 5 probes): {} (order {:.3f} >= 0.9)", seq(du), od));
        o.require(std::isfinite(ref.v_sup) && ref.v_sup <= 10.0 * ref.v_sup0,
                  fmt::format("sup |rho0^alpha V| = {:.4f} over T = 1 (t = 0: {:.4f})", ref.v_sup, ref.v_sup0));
        report("#6 effective velocity", o);
    }

    {
        Outcome o;
        // Unit mass, bump amplitude scaled so that the initial momentum is 0.1.
        const Grid g = make_grid(201);
        const auto unit = make_initial_data(bump_profile(1.0, 1.0), g);
        std::vector<double> ru(g.n);
        for (std::size_t i = 0; i < g.n; ++i) ru[i] = unit.rho0[i] * unit.u0[i];
        const double amp = 0.1 / integrate(g, ru);
        const auto d = make_initial_data(bump_profile(1.0, amp), g);
        const double floor = 0.1 * 0.1 / 2.0;
        const auto r = simulate(d, solver(201, 1e-3, 10.0), {}, floor);
        o.info(fmt::format("p(0) = {:.6f}, m(0) = {:.6f}, n = 201, dt = 1e-3, T = 10", r.momentum0, integrate(g, d.rho0)));
        o.require(r.kinetic_margin >= -1e-9,
                  fmt::format("min over steps of E_k - 0.005 = {:.3e} >= -1e-9", r.kinetic_margin));
        report("#7 non-decay", o);
    }

    {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        std::vector<double> disc;
        for (std::size_t m : {8u, 16u, 32u})
            disc.push_back(cross_validate(base, identity_metric(), m, solver(401, 1e-4, 0.1, 0.5)).discrepancy);
        const double secs = seconds_since(t0);
        o.require(disc.back() <= 1e-3, fmt::format("32 modes vs n = 401: discrepancy {:.3e} <= 1e-3", disc.back()));
        o.require(min_factor(disc) > 1.0, fmt::format("8/16/32 modes: {} monotone", seq(disc)));
        o.require(secs <= 30.0, fmt::format("runtime {:.2f} s <= 30 s", secs));
        report("#8 oracle equivalence", o);
    }

    {
        Outcome o;
        MmsStudyConfig cfg;
        const auto r = mms_study(cfg);
        o.require(r.temporal_order >= 0.9,
                  fmt::format("temporal order {:.4f} >= 0.9 (theta = 1): {}", r.temporal_order, seq(r.dt_errors)));
        o.require(r.spatial_order >= 1.8,
                  fmt::format("spatial order {:.4f} >= 1.8: {}", r.spatial_order, seq(r.h_errors)));
        cfg.wrong_forcing = true;
        const auto w = mms_study(cfg);
        o.require(!w.converged, fmt::format("wrong forcing detected: orders {:.3f} / {:.3f}, not converged",
                                            w.temporal_order, w.spatial_order));
        report("#9 MMS convergence", o);
    }

    {
        Outcome o;
        std::size_t unstable = 0, total = 0;
        for (double alpha : {1.0, 0.5}) {
            for (const auto& r : run_inequality_suite(401, alpha)) {
                ++total;
                if (!(r.stable && std::isfinite(r.max_ratio))) {
                    ++unstable;
                    o.info(fmt::format("unstable: {} {} n {:.4g} 2n {:.4g}", r.case_id, r.params, r.ratio_at_n, r.ratio_at_2n));
                }
            }
        }
        o.require(unstable == 0, fmt::format("{} cases (alpha = 1 and 1/2), {} unstable or non-finite", total, unstable));

        const Grid g4 = make_grid(401);
        const auto phi = make_initial_data(ProfileSpec{}, g4);
        const std::vector<TestFamily> fam = {polynomial_family(2)};
        const std::vector<std::pair<std::string, std::function<void()>>> gates = {
            {"Gagliardo-Nirenberg k = -1", [&] { gn_check(-1.0, fam, g4); }},
            {"Hardy l2 k = -1.5", [&] { hardy_check(HardyVariant::l2, -1.5, 0.0, fam, g4); }},
            {"Hardy l1 eps = 0", [&] { hardy_check(HardyVariant::l1, 0.0, 0.0, fam, g4); }},
            {"Hardy l1 eps = k + 1", [&] { hardy_check(HardyVariant::l1, 0.0, 1.0, fam, g4); }},
            {"Hardy sup k = 0", [&] { hardy_check(HardyVariant::sup, 0.0, 0.0, fam, g4); }},
            {"embedding s = 0.4", [&] { embedding_check(0.4, 2.0, 1.0, fam, phi); }},
            {"embedding s > (kappa+1)/2", [&] { embedding_check(2.0, 2.0, 2.0, fam, phi); }},
            {"embedding r < s", [&] { embedding_check(1.0, 2.0, 0.8, fam, phi); }},
            {"embedding r > (kappa+1)/2", [&] { embedding_check(1.0, 2.0, 1.6, fam, phi); }},
        };
        std::size_t rejected = 0;
        for (const auto& [name, f] : gates) {
            try {
                f();
                o.info("gate did not reject: " + name);
            } catch (const std::invalid_argument&) {
                ++rejected;
            }
        }
        o.require(rejected == gates.size(), fmt::format("{}/{} out-of-range parameter sets rejected", rejected, gates.size()));

        const Grid g8 = make_grid(801);
        auto member = [](std::function<double(double)> F, std::function<double(double)> Fx) {
            TestFamily t;
            t.kind = TestFamily::Kind::custom;
            t.custom.push_back({"closed_form", std::move(F), std::move(Fx)});
            return std::vector<TestFamily>{t};
        };
        const auto one = member([](double) { return 1.0; }, [](double) { return 0.0; });
        const double pi = std::acos(-1.0);
        const auto sine = member([pi](double x) { return std::sin(2 * pi * x); },
                                 [pi](double x) { return 2 * pi * std::cos(2 * pi * x); });
        const double gn = gn_check(0.0, one, g8).max_ratio;
        const double a7 = hardy_check(HardyVariant::l2, 0.0, 0.0, one, g8).max_ratio;
        const double sb = sobolev_check(sine, g8).max_ratio;
        auto close = [](double v, double e) { return std::abs(v - e) <= 0.01 * e; };
        o.require(close(gn, 2.0), fmt::format("Gagliardo-Nirenberg, F = 1, k = 0: {:.6f} vs 2", gn));
        o.require(close(a7, std::sqrt(12.0)), fmt::format("Hardy l2, F = 1, k = 0: {:.6f} vs {:.6f}", a7, std::sqrt(12.0)));
        o.require(close(sb, 1.0 / (2.0 / pi + 4.0)),
                  fmt::format("Sobolev, F = sin(2 pi x): {:.6f} vs {:.6f}", sb, 1.0 / (2.0 / pi + 4.0)));
        report("#10 inequality suite", o);
    }

    {
        Outcome o;
        std::size_t passed = 0, total = 0;
        for (std::size_t n : {101u, 201u, 401u}) {
            for (double alpha : {1.0, 0.75, 0.5, 0.3}) {
                for (auto kind : {VelocityKind::bump, VelocityKind::integral_plus_bump}) {
                    ProfileSpec s = bump_profile(alpha);
                    s.velocity.kind = kind;
                    const auto rep = check_compatibility(make_initial_data(s, make_grid(n)));
                    ++total;
                    if (rep.passes) ++passed;
                    else o.info(fmt::format("fails: n = {}, alpha = {}, {}", n, alpha, velocity_kind_name(kind)));
                }
            }
        }
        o.require(passed == total, fmt::format("{}/{} profile families pass (n = 101/201/401, alpha = 1, 0.75, 0.5, 0.3)", passed, total));
        ProfileSpec s;
        s.amplitude = 6.0;
        const auto d = make_initial_data(s, make_grid(401));
        const auto c = solver(401, 1e-5, 1.0);
        const auto [s1, rep] = step(initialize(d, c), d, c);
        const double quotient = s1.U[100] / c.dt;
        const double analytic = initial_time_derivatives(d).Ut[100];
        o.require(rep.accepted && std::abs(quotient - analytic) <= 0.01 * std::abs(analytic),
                  fmt::format("one-step (U' - U)/dt at x = 0.25: {:.6f} vs U_t(0, 0.25) = {:.6f}", quotient, analytic));
        report("#11 initial-data layer", o);
    }

    std::size_t failed = 0;
    for (const auto& [name, o] : results) failed += o.pass ? 0 : 1;
    fmt::print("{}/{} criteria passed\n", results.size() - failed, results.size());
    return failed == 0 ? 0 : 1;
}
