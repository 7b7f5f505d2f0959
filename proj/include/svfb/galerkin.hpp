#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "svfb/initial_data.hpp"
#include "svfb/solver.hpp"

namespace svfb {

// e_0 = 1, e_j = sqrt(2) cos(j pi x); eigenpairs of -e'' + e = lambda e with
// Neumann ends.
struct NeumannBasis {
    std::size_t n_modes = 0;
    Grid grid;
    Eigen::MatrixXd E;   // n x n_modes samples
    Eigen::MatrixXd dE;  // derivatives
    std::vector<double> lambda;
};

NeumannBasis build_basis(std::size_t n_modes, const Grid& grid);

// Frozen metric eta_bar_x(t, x); must stay within [1/2, 3/2]. Stationary
// metrics let the modal solvers assemble once.
struct FrozenMetric {
    std::function<double(double t, double x)> eta_x;
    bool stationary = false;
    double operator()(double t, double x) const { return eta_x(t, x); }
};
FrozenMetric identity_metric();

enum class GalerkinForm {
    phi0_squared,  // weight phi0^2, K0 = 1/alpha - 2 (alpha <= 1/3)
    rho0           // weight phi0^(1/alpha) = rho0, K0 = 0
};

struct GalerkinSystem {
    Eigen::MatrixXd A, B;
    Eigen::VectorXd C;
    GalerkinForm form = GalerkinForm::rho0;
    double K0 = 0.0;
    double t = 0.0;
};

// pressure = false drops the load C (synthetic zero-load problems).
GalerkinSystem assemble(const NeumannBasis& basis, const InitialData& data,
                        const FrozenMetric& eta_bar, double t, bool pressure = true);

// A mu' + B(t) mu = C(t).
struct ModalProblem {
    Eigen::MatrixXd A;
    std::function<std::pair<Eigen::MatrixXd, Eigen::VectorXd>(double t)> operators;
    bool stationary = false;
};

ModalProblem make_modal_problem(const NeumannBasis& basis, const InitialData& data,
                                const FrozenMetric& eta_bar, bool pressure = true);

enum class ModalMethod { rk4, picard_integral };

struct ModalTrajectory {
    std::vector<double> t;
    std::vector<Eigen::VectorXd> mu;
    std::size_t substeps = 0;
};

// Output every dt up to t_end; internal steps are refined for RK4 stability or
// for Picard contraction on each subinterval.
ModalTrajectory solve_modal(const ModalProblem& problem, const Eigen::VectorXd& mu0, double dt,
                            double t_end, ModalMethod method);

Eigen::VectorXd project(const NeumannBasis& basis, const std::vector<double>& f);
std::vector<double> reconstruct_field(const NeumannBasis& basis, const Eigen::VectorXd& mu);

struct CrossValidation {
    double discrepancy = 0.0;  // sup over sampled times of |rho0^(1/2)(X - U_fv)|_2
    double final_discrepancy = 0.0;  // at t_end
    std::vector<double> times;
    std::vector<double> per_time;
};

// Same frozen-metric problem solved by Galerkin (RK4) and by the finite-volume
// theta-scheme on data.grid; fv.dt sets both the FV step and the sampling.
CrossValidation cross_validate(const InitialData& data, const FrozenMetric& eta_bar,
                               std::size_t n_modes, const SolverConfig& fv, bool pressure = true);

}  // namespace svfb
