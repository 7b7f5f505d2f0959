#pragma once

#include <functional>
#include <vector>

#include "svfb/initial_data.hpp"
#include "svfb/solver.hpp"

namespace svfb {

// Manufactured fields as x-jets at time t. eta must satisfy eta_t = U.
struct ManufacturedSolution {
    std::function<Jet6(double t, double x)> U;
    std::function<Jet6(double t, double x)> U_t;
    std::function<Jet6(double t, double x)> eta;
};

// U* = A sin(pi t) x^2 (1-x)^2, eta* = x + A (1 - cos(pi t))/pi x^2 (1-x)^2.
ManufacturedSolution sine_manufactured(double amplitude = 1.0);
// U* = 0, eta* = id.
ManufacturedSolution zero_manufactured();

// g = rho0 U*_t + (rho0^2/eta*_x^2)_x - (rho0 U*_x/eta*_x^2)_x at the nodes.
// Needs data built from a profile (analytic rho0).
std::vector<double> mms_forcing(const ManufacturedSolution& ms, const InitialData& data, double t);

struct MmsStudyConfig {
    double alpha = 1.0;
    double t_end = 0.5;
    // temporal study: theta = 1, fixed fine grid
    std::size_t n_time = 801;
    std::vector<double> dts = {0.04, 0.02, 0.01, 0.005};
    // spatial study: theta = 1/2, fixed small step
    std::vector<std::size_t> ns = {21, 41, 81, 161};
    double dt_space = 5e-4;
    bool zero_solution = false;
    // negative control: forcing built from a different manufactured solution
    bool wrong_forcing = false;
};

struct MmsStudyResult {
    std::vector<double> dt_errors;
    std::vector<double> h_errors;
    double temporal_order = 0.0;  // least-squares slope of log error vs log dt
    double spatial_order = 0.0;
    double max_error = 0.0;
    bool converged = false;       // both orders reach (0.9, 1.8)
};

// rho0-weighted L2 error of U against U* at t_end.
double mms_error(const MmsStudyConfig& cfg, std::size_t n, double dt, double theta);
MmsStudyResult mms_study(const MmsStudyConfig& cfg);

double fitted_order(const std::vector<double>& steps, const std::vector<double>& errors);

}  // namespace svfb
