#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "svfb/initial_data.hpp"
#include "svfb/solver.hpp"

namespace svfb {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct OutputConfig {
    std::string dir = "svfb_out";
    std::vector<double> snapshot_times = {0.0, 0.5, 1.0};
    std::size_t eulerian_resolution = 401;
    bool plots = true;
};

// Every check compares one scalar against one threshold; see simulate().
struct ChecksConfig {
    std::vector<std::string> enabled = {"momentum",   "energy",       "metric_bounds", "endpoint_metric",
                                        "neumann",    "slope_ratio",  "eulerian_mass", "kinetic_floor",
                                        "v_weighted", "h_max"};
    double momentum_tol = 1e-10;       // relative momentum drift
    double energy_slack = 1e-12;       // allowed per-step increase of the fundamental energy
    double eta_x_lower = 0.1;
    double eta_x_upper = 10.0;
    double endpoint_tol = 5e-2;        // |eta_x - 1| at both endpoints
    double neumann_tol = 1e-2;         // max |U_x| at the endpoints for t > 0
    double slope_growth = 2.0;         // last-quartile over first-quartile mean of slope_ratio
    double mass_tol = 1e-4;            // Eulerian vs Lagrangian mass at snapshots
    double kinetic_tol = 1e-9;
    double v_growth = 10.0;            // sup |rho0^alpha V| relative to t = 0
    double h_growth = 10.0;            // H_max relative to t = 0
    double kinematics_tol = 1e-2;      // boundary speed vs endpoint velocity
};

const std::vector<std::string>& known_checks();

struct RunConfig {
    ProfileSpec initial;
    SolverConfig solver;
    OutputConfig output;
    ChecksConfig checks;
    std::string source;  // text the config was parsed from (echoed into outputs)
};

// key = value lines under [initial], [solver], [output], [checks]; '#' and
// ';' start comments. Missing keys take defaults; unknown sections or keys,
// malformed values and out-of-range parameters raise ConfigError.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

// Canonical text of a configuration (used as the echo when no file was read).
std::string render_config(const RunConfig& config);

std::string velocity_kind_name(VelocityKind kind);

}  // namespace svfb
