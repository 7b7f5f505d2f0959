#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "svfb/config.hpp"
#include "svfb/diagnostics.hpp"
#include "svfb/mms.hpp"

namespace svfb {

enum ExitCode : int { exit_ok = 0, exit_check_failed = 1, exit_config_error = 2, exit_solver_abort = 3 };

struct CheckResult {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool passed = false;
    std::string note;
};

struct SimulationOutcome {
    int exit_code = exit_ok;
    std::string message;
    std::vector<CheckResult> checks;
    std::vector<DiagnosticsRecord> records;
    std::vector<std::string> files;  // written outputs, in creation order
};

// Runs the configured simulation and writes diagnostics.csv, summary.csv,
// snapshot CSVs and (optionally) SVG plots into config.output.dir.
SimulationOutcome simulate(const RunConfig& config, std::ostream& log);
// Loads the config file first; a load failure gives exit code 2.
SimulationOutcome simulate_file(const std::string& config_path, std::ostream& log,
                                const std::optional<std::string>& out_dir = {});

struct GalerkinOptions {
    double alpha = 1.0;
    std::size_t modes = 32;
    std::size_t n = 401;
    double dt = 1e-4;
    double t_end = 0.1;
    double theta = 0.5;
    double tol = 1e-3;
    VelocityKind velocity = VelocityKind::bump;
    BumpSpec bump{0.5, 0.2, 0.5};
    bool pressure = true;
    // eta_bar_x = 1 + perturbation * t * sin(pi x); zero gives the identity.
    double perturbation = 0.0;
    // also run 8, 16, ... modes up to `modes` and require monotone decrease
    bool study = true;
    std::string out_dir;  // empty: no files
};

struct GalerkinOutcome {
    int exit_code = exit_ok;
    std::vector<std::pair<std::size_t, double>> discrepancies;  // (modes, discrepancy)
    bool monotone = true;
};
GalerkinOutcome run_galerkin(const GalerkinOptions& options, std::ostream& log);

struct BenchOptions {
    std::size_t n = 401;
    double alpha = 1.0;
    std::string out;  // report CSV path; empty: none
};
int run_bench(const BenchOptions& options, std::ostream& log);

struct MmsOptions {
    MmsStudyConfig study;
    std::string out;  // errors CSV path; empty: none
};
MmsStudyResult run_mms(const MmsOptions& options, std::ostream& log, int& exit_code);

struct ReconstructOptions {
    std::string snapshot;  // Lagrangian snapshot CSV written by simulate
    std::string config;    // config with the matching [initial] section; empty: defaults
    std::size_t m = 401;
    std::string out;       // Eulerian snapshot CSV
};
int run_reconstruct(const ReconstructOptions& options, std::ostream& log);

}  // namespace svfb
