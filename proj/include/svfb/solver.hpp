#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "svfb/initial_data.hpp"

namespace svfb {

struct FluidState {
    double t = 0.0;
    std::vector<double> U;
    std::vector<double> eta;
    std::vector<double> eta_x;
};

struct SolverConfig {
    std::size_t n = 401;
    double dt = 1e-4;
    double t_end = 1.0;
    double theta = 1.0;
    double picard_tol = 1e-12;
    int picard_max = 50;
    double rho_floor = 0.0;
    bool warn_low_alpha = true;
};

struct StepReport {
    int picard_iterations = 0;
    double final_increment = 0.0;
    double eta_x_min = 0.0;
    double eta_x_max = 0.0;
    bool accepted = false;
};

class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class MetricLoss : public SolverError {
public:
    using SolverError::SolverError;
};
class PicardFailure : public SolverError {
public:
    using SolverError::SolverError;
};

void validate(const SolverConfig& config);

FluidState initialize(const InitialData& data, const SolverConfig& config);

// H = rho0 / eta_x.
std::vector<double> depth(const FluidState& state, const InitialData& data);

// Face metric (eta_{i+1} - eta_i) / h.
std::vector<double> face_metric(const Grid& grid, std::span<const double> eta);

// F = rho0^2/eta_x^2 - rho0 U_x/eta_x^2 at the n-1 interior faces, using the
// face-mean rho0 and the face metric. The two domain faces carry F = 0.
std::vector<double> face_flux(const FluidState& state, const InitialData& data);

// One theta-step. forcing (optional) holds g at the nodes at t + theta dt.
// A non-converged Picard loop returns accepted = false and the input state.
// Metric loss throws MetricLoss.
std::pair<FluidState, StepReport> step(const FluidState& state, const InitialData& data,
                                       const SolverConfig& config,
                                       std::span<const double> forcing = {});

using StateSink = std::function<void(const FluidState&, const StepReport&)>;
using ForcingFn = std::function<std::vector<double>(double t)>;

// Steps to t_end (the last step is shortened to land on t_end). The sink sees
// the initial state and every accepted state. A rejected step throws
// PicardFailure.
FluidState run(const InitialData& data, const SolverConfig& config, const StateSink& sink = {},
               const ForcingFn& forcing = {});

// Linear theta-step of rho0 U_t + (rho0^2/m^2)_x - (rho0 U_x/m^2)_x = 0 with a
// prescribed face metric m (frozen, no Picard). Used for the Galerkin oracle.
std::vector<double> step_frozen_metric(std::span<const double> U, const InitialData& data,
                                       std::span<const double> face_metric_mid, double dt,
                                       double theta, bool pressure = true);

}  // namespace svfb
