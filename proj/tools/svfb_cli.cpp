#include <CLI11.hpp>
#include <iostream>
#include <map>

#include "svfb/commands.hpp"
#include "svfb/output.hpp"

int main(int argc, char** argv) {
    using namespace svfb;
    CLI::App app{"Lagrangian vacuum free-boundary shallow-water solver and verification suite"};
    app.set_version_flag("--version", version_string());
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    auto* sim = app.add_subcommand("simulate", "Run a configured simulation and its checks");
    sim->add_option("config", config_path, "Run configuration file")->required();
    sim->add_option("-o,--out", out_dir, "Override [output] dir");

    GalerkinOptions g;
    std::string velocity = "bump";
    bool no_pressure = false, no_study = false;
    auto* gal = app.add_subcommand("galerkin", "Cross-validate the solver against the spectral Galerkin oracle");
    gal->add_option("--alpha", g.alpha, "Profile exponent")->capture_default_str();
    gal->add_option("--modes", g.modes, "Number of cosine modes")->capture_default_str();
    gal->add_option("--n", g.n, "Finite-volume grid nodes")->capture_default_str();
    gal->add_option("--dt", g.dt, "Time step (also the sampling interval)")->capture_default_str();
    gal->add_option("--t-end", g.t_end, "Final time")->capture_default_str();
    gal->add_option("--theta", g.theta, "Finite-volume theta")->capture_default_str();
    gal->add_option("--tol", g.tol, "Discrepancy tolerance")->capture_default_str();
    gal->add_option("--velocity", velocity, "zero, bump or integral_plus_bump")->capture_default_str();
    gal->add_option("--perturbation", g.perturbation, "Frozen metric 1 + p t sin(pi x)")->capture_default_str();
    gal->add_flag("--no-pressure", no_pressure, "Drop the pressure load (synthetic problem)");
    gal->add_flag("--no-study", no_study, "Skip the 8/16/... mode refinement study");
    gal->add_option("-o,--out", g.out_dir, "Directory for galerkin.csv");

    BenchOptions b;
    auto* bench = app.add_subcommand("bench-inequalities", "Run the weighted inequality suite");
    bench->add_option("--n", b.n, "Grid nodes")->capture_default_str();
    bench->add_option("--alpha", b.alpha, "Exponent of the phi0 weight")->capture_default_str();
    bench->add_option("-o,--out", b.out, "Report CSV path");

    MmsOptions m;
    auto* mms = app.add_subcommand("mms", "Manufactured-solution convergence study");
    mms->add_option("--alpha", m.study.alpha, "Profile exponent")->capture_default_str();
    mms->add_option("--t-end", m.study.t_end, "Final time")->capture_default_str();
    mms->add_flag("--zero", m.study.zero_solution, "Use the static solution U = 0");
    mms->add_flag("--wrong-forcing", m.study.wrong_forcing, "Negative control: mismatched forcing");
    mms->add_option("-o,--out", m.out, "Error table CSV path");

    ReconstructOptions r;
    auto* rec = app.add_subcommand("reconstruct", "Eulerian view of a Lagrangian snapshot");
    rec->add_option("snapshot", r.snapshot, "Lagrangian snapshot CSV from simulate")->required();
    rec->add_option("-c,--config", r.config, "Config with the matching [initial] section");
    rec->add_option("-m", r.m, "Eulerian resolution")->capture_default_str();
    rec->add_option("-o,--out", r.out, "Output CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_config_error;
    }

    if (*sim) {
        const auto o = simulate_file(config_path, std::cout,
                                     out_dir.empty() ? std::nullopt : std::optional<std::string>(out_dir));
        return o.exit_code;
    }
    if (*gal) {
        static const std::map<std::string, VelocityKind> kinds = {
            {"zero", VelocityKind::zero}, {"bump", VelocityKind::bump},
            {"integral_plus_bump", VelocityKind::integral_plus_bump}};
        const auto it = kinds.find(velocity);
        if (it == kinds.end()) {
            std::cerr << "error: unknown velocity kind '" << velocity << "'\n";
            return exit_config_error;
        }
        g.velocity = it->second;
        g.pressure = !no_pressure;
        g.study = !no_study;
        return run_galerkin(g, std::cout).exit_code;
    }
    if (*bench) return run_bench(b, std::cout);
    if (*mms) {
        int code = exit_ok;
        run_mms(m, std::cout, code);
        return code;
    }
    if (*rec) return run_reconstruct(r, std::cout);
    return exit_config_error;
}
