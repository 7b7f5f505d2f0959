#include "svfb/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <set>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "svfb/eulerian.hpp"
#include "svfb/galerkin.hpp"
#include "svfb/inequality.hpp"
#include "svfb/output.hpp"

namespace svfb {

namespace fs = std::filesystem;

namespace {

Metadata run_metadata(const RunConfig& c, const InitialData& d) {
    Metadata m;
    m.entries = {{"grid", fmt::format("n={} h={}", d.grid.n, format_number(d.grid.h))},
                 {"solver", fmt::format("dt={} t_end={} theta={} picard_tol={} picard_max={} rho_floor={}",
                                        c.solver.dt, c.solver.t_end, c.solver.theta, c.solver.picard_tol,
                                        c.solver.picard_max, c.solver.rho_floor)},
                 {"profile", fmt::format("alpha={} amplitude={} epsilon0={} C1={} C2={}", d.alpha,
                                         format_number(d.amplitude), d.epsilon0, format_number(d.C1),
                                         format_number(d.C2))},
                 {"velocity", fmt::format("kind={} center={} radius={} amplitude={}",
                                          velocity_kind_name(c.initial.velocity.kind), c.initial.velocity.bump.center,
                                          c.initial.velocity.bump.radius, c.initial.velocity.bump.amplitude)}};
    m.config_echo = c.source.empty() ? render_config(c) : c.source;
    return m;
}

std::string time_tag(double t) { return fmt::format("{:.6f}", t); }

void write_summary(const std::string& path, const Metadata& meta, const std::vector<CheckResult>& checks) {
    CsvWriter w(path, meta, {"check", "value", "threshold", "passed", "note"});
    for (const auto& c : checks) {
        std::string note = c.note;
        std::replace(note.begin(), note.end(), ',', ';');
        w.row(std::vector<std::string>{c.name, format_number(c.value), format_number(c.threshold),
                                       c.passed ? "1" : "0", note});
    }
}

double quartile_mean(const std::vector<double>& v, bool last) {
    const std::size_t q = v.size() / 4;
    double s = 0.0;
    for (std::size_t i = 0; i < q; ++i) s += last ? v[v.size() - 1 - i] : v[i];
    return s / static_cast<double>(q);
}

}  // namespace

SimulationOutcome simulate(const RunConfig& cfg, std::ostream& log) {
    SimulationOutcome out;
    const Grid grid = make_grid(cfg.solver.n);
    InitialData data;
    try {
        data = make_initial_data(cfg.initial, grid);
    } catch (const std::exception& e) {
        out.exit_code = exit_config_error;
        out.message = std::string("initial data rejected: ") + e.what();
        log << "error: " << out.message << '\n';
        return out;
    }
    const auto meta = run_metadata(cfg, data);
    const fs::path dir(cfg.output.dir);
    fs::create_directories(dir);
    auto file = [&](const std::string& name) {
        out.files.push_back((dir / name).string());
        return out.files.back();
    };

    std::vector<double> snaps = cfg.output.snapshot_times;
    std::sort(snaps.begin(), snaps.end());
    snaps.erase(std::unique(snaps.begin(), snaps.end()), snaps.end());
    const double half = 0.5 * cfg.solver.dt;
    for (double t : snaps)
        if (t > cfg.solver.t_end + half) log << "note: snapshot time " << t << " lies beyond t_end, ignored\n";

    CsvWriter diag(file("diagnostics.csv"), meta, record_columns());
    std::optional<FluidState> prev;
    std::vector<BoundarySample> boundary;
    std::size_t next_snap = 0;
    double endpoint_dev = 0.0, mass_dev = 0.0;
    std::size_t snapshots_written = 0;
    bool finite = true;

    auto sink = [&](const FluidState& s, const StepReport&) {
        auto rec = make_record(s, prev ? &*prev : nullptr, data);
        auto vals = record_values(rec);
        for (std::size_t i = 0; i < vals.size(); ++i)
            if (!std::isfinite(vals[i]) && !(prev == std::nullopt && record_columns()[i] == "V_transport_residual"))
                finite = false;
        diag.row(vals);
        out.records.push_back(rec);
        endpoint_dev = std::max({endpoint_dev, std::abs(s.eta_x.front() - 1.0), std::abs(s.eta_x.back() - 1.0)});
        boundary.push_back(boundary_sample(s));
        while (next_snap < snaps.size() && snaps[next_snap] <= s.t + half) {
            const double ts = snaps[next_snap++];
            if (ts < s.t - half) continue;
            CsvWriter lag(file("lagrangian_t" + time_tag(ts) + ".csv"), meta, {"t", "x", "U", "eta", "eta_x", "H"});
            const auto H = depth(s, data);
            for (std::size_t i = 0; i < grid.n; ++i)
                lag.row(std::vector<double>{s.t, grid.nodes[i], s.U[i], s.eta[i], s.eta_x[i], H[i]});
            const auto e = reconstruct(s, data, cfg.output.eulerian_resolution);
            CsvWriter eul(file("eulerian_t" + time_tag(ts) + ".csv"), meta, {"t", "y", "rho", "u", "u_y", "u_yy"});
            for (std::size_t j = 0; j < e.y_nodes.size(); ++j)
                eul.row(std::vector<double>{e.t, e.y_nodes[j], e.rho[j], e.u[j], e.u_y[j], e.u_yy[j]});
            mass_dev = std::max(mass_dev, std::abs(eulerian_mass(e) - rec.mass) / rec.mass);
            ++snapshots_written;
        }
        prev = s;
    };

    try {
        run(data, cfg.solver, sink);
    } catch (const std::exception& e) {
        // metric loss, Picard failure, or a state that can no longer be reconstructed
        diag.flush();
        out.exit_code = exit_solver_abort;
        out.message = std::string("solver abort: ") + e.what();
        log << "error: " << out.message << '\n';
        out.checks.push_back({"solver", 0.0, 0.0, false, e.what()});
        write_summary(file("summary.csv"), meta, out.checks);
        return out;
    }
    diag.flush();

    const auto& R = out.records;
    const auto& k = cfg.checks;
    out.checks.push_back({"finite_diagnostics", finite ? 0.0 : 1.0, 0.0, finite, "every monitored entry finite"});
    for (const auto& name : k.enabled) {
        CheckResult c{name, 0.0, 0.0, false, ""};
        if (name == "momentum") {
            double scale = std::abs(R.front().momentum);
            double abs_mom = 0.0;
            for (std::size_t i = 0; i < grid.n; ++i) abs_mom += grid.weights[i] * data.rho0[i] * std::abs(data.u0[i]);
            scale = std::max(scale, abs_mom);
            if (scale == 0.0) {
                scale = R.front().mass;
                c.note = "zero initial momentum; drift relative to mass";
            }
            for (const auto& r : R) c.value = std::max(c.value, std::abs(r.momentum - R.front().momentum) / scale);
            c.threshold = k.momentum_tol;
            c.passed = c.value <= c.threshold;
        } else if (name == "energy") {
            c.value = R.size() > 1 ? -std::numeric_limits<double>::infinity() : 0.0;
            for (std::size_t i = 1; i < R.size(); ++i)
                c.value = std::max(c.value, R[i].fundamental_energy - R[i - 1].fundamental_energy);
            c.threshold = k.energy_slack;
            c.passed = c.value <= c.threshold;
            c.note = "largest per-step change of the fundamental energy";
        } else if (name == "metric_bounds") {
            double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
            for (const auto& r : R) {
                lo = std::min(lo, r.eta_x_min);
                hi = std::max(hi, r.eta_x_max);
            }
            c.value = lo;
            c.threshold = k.eta_x_lower;
            c.passed = lo >= k.eta_x_lower && hi <= k.eta_x_upper;
            c.note = fmt::format("min eta_x {} / max eta_x {} (upper bound {})", format_number(lo), format_number(hi),
                                 k.eta_x_upper);
        } else if (name == "endpoint_metric") {
            c.value = endpoint_dev;
            c.threshold = k.endpoint_tol;
            c.passed = c.value <= c.threshold;
        } else if (name == "neumann") {
            for (const auto& r : R)
                if (r.t > 0.0 || R.size() == 1) c.value = std::max(c.value, r.neumann_residual);
            c.threshold = k.neumann_tol;
            c.passed = c.value <= c.threshold;
        } else if (name == "slope_ratio") {
            std::vector<double> v;
            for (const auto& r : R)
                if (r.t > 0.0) v.push_back(r.slope_ratio);
            c.threshold = k.slope_growth;
            if (v.size() < 4) {
                c.passed = true;
                c.note = "too few steps for a quartile comparison";
            } else {
                const double first = quartile_mean(v, false), last = quartile_mean(v, true);
                c.value = first > 0.0 ? last / first : (last > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
                c.passed = c.value <= c.threshold;
                c.note = "last-quartile over first-quartile mean";
            }
        } else if (name == "eulerian_mass") {
            c.value = mass_dev;
            c.threshold = k.mass_tol;
            c.passed = c.value <= c.threshold;
            if (snapshots_written == 0) c.note = "no snapshots requested";
        } else if (name == "kinetic_floor") {
            const auto kf = kinetic_floor_check(R, k.kinetic_tol);
            c.value = kf.min_margin;
            c.threshold = -k.kinetic_tol;
            c.passed = kf.skipped || kf.passed;
            c.note = kf.skipped ? "skipped: " + kf.note : fmt::format("floor {}", format_number(kf.floor));
        } else if (name == "v_weighted" || name == "h_max") {
            const bool v = name == "v_weighted";
            const double v0 = v ? R.front().V_weighted_sup : R.front().H_max;
            double mx = 0.0;
            for (const auto& r : R) mx = std::max(mx, v ? r.V_weighted_sup : r.H_max);
            c.threshold = v ? k.v_growth : k.h_growth;
            c.value = v0 > 0.0 ? mx / v0 : mx;
            c.note = v0 > 0.0 ? "run maximum over t = 0 value" : "t = 0 value vanishes; absolute maximum";
            c.passed = std::isfinite(c.value) && c.value <= c.threshold;
        } else if (name == "boundary_kinematics") {
            c.value = boundary.size() > 1 ? boundary_kinematics(boundary) : 0.0;
            c.threshold = k.kinematics_tol;
            c.passed = c.value <= c.threshold;
        }
        out.checks.push_back(c);
    }
    write_summary(file("summary.csv"), meta, out.checks);

    if (cfg.output.plots && !R.empty()) {
        std::vector<double> t;
        for (const auto& r : R) t.push_back(r.t);
        auto series = [&](const std::string& n, double DiagnosticsRecord::*f) {
            PlotSeries s{n, t, {}};
            for (const auto& r : R) s.y.push_back(r.*f);
            return s;
        };
        std::vector<PlotSeries> energy{series("fundamental energy", &DiagnosticsRecord::fundamental_energy),
                                       series("kinetic energy", &DiagnosticsRecord::kinetic_energy)};
        if (!R.front().bd_divergent) energy.push_back(series("BD entropy", &DiagnosticsRecord::bd_entropy));
        write_svg_plot(file("energy.svg"), "Energy functionals", "t", energy);
        write_svg_plot(file("metric.svg"), "Metric bounds", "t",
                       {series("min eta_x", &DiagnosticsRecord::eta_x_min),
                        series("max eta_x", &DiagnosticsRecord::eta_x_max)});
        write_svg_plot(file("boundary.svg"), "Boundary behaviour", "t",
                       {series("neumann residual", &DiagnosticsRecord::neumann_residual),
                        series("slope ratio", &DiagnosticsRecord::slope_ratio)});
        write_svg_plot(file("velocity.svg"), "Effective velocity and depth", "t",
                       {series("sup rho0^alpha V", &DiagnosticsRecord::V_weighted_sup),
                        series("H max", &DiagnosticsRecord::H_max)});
    }

    bool all = true;
    for (const auto& c : out.checks) {
        log << fmt::format("{:<20} {:>10} value={} threshold={} {}\n", c.name, c.passed ? "PASS" : "FAIL",
                           format_number(c.value), format_number(c.threshold), c.note);
        all = all && c.passed;
    }
    out.exit_code = all ? exit_ok : exit_check_failed;
    out.message = all ? "all enabled checks passed" : "check failure";
    return out;
}

SimulationOutcome simulate_file(const std::string& path, std::ostream& log, const std::optional<std::string>& out_dir) {
    RunConfig cfg;
    try {
        cfg = load_config(path);
    } catch (const ConfigError& e) {
        SimulationOutcome o;
        o.exit_code = exit_config_error;
        o.message = e.what();
        log << "error: " << e.what() << '\n';
        return o;
    }
    if (out_dir) cfg.output.dir = *out_dir;
    return simulate(cfg, log);
}

GalerkinOutcome run_galerkin(const GalerkinOptions& o, std::ostream& log) {
    GalerkinOutcome res;
    ProfileSpec ps;
    ps.alpha = o.alpha;
    ps.velocity.kind = o.velocity;
    ps.velocity.bump = o.bump;
    std::vector<std::size_t> modes;
    if (o.study)
        for (std::size_t m = 8; m < o.modes; m *= 2) modes.push_back(m);
    modes.push_back(o.modes);
    FrozenMetric metric = identity_metric();
    if (o.perturbation != 0.0) {
        const double p = o.perturbation;
        metric = {[p](double t, double x) { return 1.0 + p * t * std::sin(std::numbers::pi * x); }, false};
    }
    SolverConfig fv;
    fv.n = o.n;
    fv.dt = o.dt;
    fv.t_end = o.t_end;
    fv.theta = o.theta;
    try {
        const auto data = make_initial_data(ps, make_grid(o.n));
        CrossValidation last;
        for (std::size_t m : modes) {
            last = cross_validate(data, metric, m, fv, o.pressure);
            res.discrepancies.emplace_back(m, last.discrepancy);
            log << fmt::format("modes {:>4}  discrepancy {}  at t_end {}\n", m, format_number(last.discrepancy),
                               format_number(last.final_discrepancy));
        }
        for (std::size_t i = 1; i < res.discrepancies.size(); ++i)
            res.monotone = res.monotone && res.discrepancies[i].second <= res.discrepancies[i - 1].second;
        if (!o.out_dir.empty()) {
            fs::create_directories(o.out_dir);
            Metadata meta;
            meta.entries = {{"galerkin", fmt::format("alpha={} n={} dt={} t_end={} theta={} pressure={} perturbation={}",
                                                     o.alpha, o.n, o.dt, o.t_end, o.theta, o.pressure, o.perturbation)}};
            CsvWriter w((fs::path(o.out_dir) / "galerkin.csv").string(), meta, {"modes", "discrepancy"});
            for (const auto& [m, d] : res.discrepancies) w.row(std::vector<double>{static_cast<double>(m), d});
            CsvWriter tr((fs::path(o.out_dir) / "galerkin_trace.csv").string(), meta, {"t", "discrepancy"});
            for (std::size_t i = 0; i < last.times.size(); ++i) tr.row(std::vector<double>{last.times[i], last.per_time[i]});
        }
    } catch (const std::invalid_argument& e) {
        log << "error: " << e.what() << '\n';
        res.exit_code = exit_config_error;
        return res;
    } catch (const std::domain_error& e) {
        log << "error: " << e.what() << '\n';
        res.exit_code = exit_config_error;
        return res;
    } catch (const SolverError& e) {
        log << "error: " << e.what() << '\n';
        res.exit_code = exit_solver_abort;
        return res;
    }
    const bool ok = res.discrepancies.back().second <= o.tol && (!o.study || res.monotone);
    log << fmt::format("discrepancy {} (tolerance {}), monotone in modes: {}\n",
                       format_number(res.discrepancies.back().second), o.tol, res.monotone ? "yes" : "no");
    res.exit_code = ok ? exit_ok : exit_check_failed;
    return res;
}

int run_bench(const BenchOptions& o, std::ostream& log) {
    std::vector<RatioReport> reports;
    try {
        reports = run_inequality_suite(o.n, o.alpha);
    } catch (const std::invalid_argument& e) {
        log << "error: " << e.what() << '\n';
        return exit_config_error;
    }
    bool all = true;
    for (const auto& r : reports) {
        log << fmt::format("{:<19} {:<36} max_ratio={:<12.6g} argmax={:<22} n->2n-1: {:.6g} -> {:.6g} {}\n", r.case_id,
                           r.params, r.max_ratio, r.argmax, r.ratio_at_n, r.ratio_at_2n,
                           r.stable ? "stable" : "UNSTABLE");
        for (const auto& note : r.notes) log << "      note: " << note << '\n';
        all = all && r.stable;
    }
    if (!o.out.empty()) {
        Metadata meta;
        meta.entries = {{"bench", fmt::format("n={} alpha={}", o.n, o.alpha)}};
        CsvWriter w(o.out, meta, {"case", "params", "max_ratio", "argmax", "stable"});
        for (const auto& r : reports)
            w.row(std::vector<std::string>{r.case_id, r.params, format_number(r.max_ratio), r.argmax,
                                           r.stable ? "1" : "0"});
    }
    log << (all ? "all cases refinement-stable\n" : "some cases are not refinement-stable\n");
    return all ? exit_ok : exit_check_failed;
}

MmsStudyResult run_mms(const MmsOptions& o, std::ostream& log, int& exit_code) {
    MmsStudyResult r;
    try {
        r = mms_study(o.study);
    } catch (const std::invalid_argument& e) {
        log << "error: " << e.what() << '\n';
        exit_code = exit_config_error;
        return r;
    } catch (const SolverError& e) {
        log << "error: " << e.what() << '\n';
        exit_code = exit_solver_abort;
        return r;
    }
    for (std::size_t i = 0; i < r.dt_errors.size(); ++i)
        log << fmt::format("dt {:<10} error {}\n", o.study.dts[i], format_number(r.dt_errors[i]));
    for (std::size_t i = 0; i < r.h_errors.size(); ++i)
        log << fmt::format("n  {:<10} error {}\n", o.study.ns[i], format_number(r.h_errors[i]));
    log << fmt::format("temporal order {:.4f}  spatial order {:.4f}  max error {}\n", r.temporal_order,
                       r.spatial_order, format_number(r.max_error));
    if (o.study.zero_solution) {
        // the static state carries only the O(h^2) pressure consistency error
        exit_code = r.spatial_order >= 1.8 ? exit_ok : exit_check_failed;
    } else {
        exit_code = r.converged ? exit_ok : exit_check_failed;
    }
    log << (exit_code == exit_ok ? "converged\n" : "NOT converged\n");
    if (!o.out.empty()) {
        Metadata meta;
        meta.entries = {{"mms", fmt::format("alpha={} t_end={} zero_solution={} wrong_forcing={}", o.study.alpha,
                                            o.study.t_end, o.study.zero_solution, o.study.wrong_forcing)},
                        {"orders", fmt::format("temporal={} spatial={}", format_number(r.temporal_order),
                                               format_number(r.spatial_order))}};
        CsvWriter w(o.out, meta, {"study", "step", "error"});
        for (std::size_t i = 0; i < r.dt_errors.size(); ++i)
            w.row(std::vector<std::string>{"dt", format_number(o.study.dts[i]), format_number(r.dt_errors[i])});
        for (std::size_t i = 0; i < r.h_errors.size(); ++i)
            w.row(std::vector<std::string>{"h", format_number(1.0 / static_cast<double>(o.study.ns[i] - 1)),
                                           format_number(r.h_errors[i])});
    }
    return r;
}

int run_reconstruct(const ReconstructOptions& o, std::ostream& log) {
    RunConfig cfg;
    CsvTable table;
    try {
        if (!o.config.empty()) cfg = load_config(o.config);
        table = read_csv(o.snapshot);
    } catch (const std::exception& e) {
        log << "error: " << e.what() << '\n';
        return exit_config_error;
    }
    auto col = [&](const std::string& name) -> std::size_t {
        const auto it = std::find(table.columns.begin(), table.columns.end(), name);
        if (it == table.columns.end()) throw ConfigError("reconstruct: snapshot lacks column '" + name + "'");
        return static_cast<std::size_t>(it - table.columns.begin());
    };
    try {
        const std::size_t ct = col("t"), cx = col("x"), cu = col("U"), ce = col("eta"), cex = col("eta_x");
        const Grid grid = make_grid(table.rows.size());
        for (std::size_t i = 0; i < grid.n; ++i)
            if (std::abs(table.rows[i][cx] - grid.nodes[i]) > 1e-9)
                throw ConfigError("reconstruct: snapshot nodes are not a uniform grid on [0, 1]");
        const auto data = make_initial_data(cfg.initial, grid);
        FluidState s;
        s.t = table.rows.front()[ct];
        for (const auto& r : table.rows) {
            s.U.push_back(r[cu]);
            s.eta.push_back(r[ce]);
            s.eta_x.push_back(r[cex]);
        }
        const auto e = reconstruct(s, data, o.m);
        Metadata meta;
        meta.entries = {{"source", o.snapshot}, {"eulerian", fmt::format("m={} gamma=[{}, {}]", o.m,
                                                                         format_number(e.gamma_left),
                                                                         format_number(e.gamma_right))}};
        meta.config_echo = cfg.source.empty() ? render_config(cfg) : cfg.source;
        CsvWriter w(o.out, meta, {"t", "y", "rho", "u", "u_y", "u_yy"});
        for (std::size_t j = 0; j < e.y_nodes.size(); ++j)
            w.row(std::vector<double>{e.t, e.y_nodes[j], e.rho[j], e.u[j], e.u_y[j], e.u_yy[j]});
        log << fmt::format("t={} gamma=[{}, {}] eulerian mass {}\n", format_number(e.t), format_number(e.gamma_left),
                           format_number(e.gamma_right), format_number(eulerian_mass(e)));
    } catch (const SolverError& e) {
        log << "error: " << e.what() << '\n';
        return exit_solver_abort;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << '\n';
        return exit_config_error;
    }
    return exit_ok;
}

}  // namespace svfb
