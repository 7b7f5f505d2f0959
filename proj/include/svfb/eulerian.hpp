#pragma once

#include <vector>

#include "svfb/initial_data.hpp"
#include "svfb/interp.hpp"
#include "svfb/solver.hpp"

namespace svfb {

struct EulerianSnapshot {
    double t = 0.0;
    double gamma_left = 0.0, gamma_right = 1.0;
    std::vector<double> y_nodes, rho, u, u_y, u_yy;
};

// Monotone cubic inverse of the flow map through (eta_i, x_i).
class FlowMapInverse {
public:
    explicit FlowMapInverse(const FluidState& state);
    // throws std::out_of_range outside [gamma_left, gamma_right]
    double operator()(double y) const;
    double gamma_left() const { return lo_; }
    double gamma_right() const { return hi_; }

private:
    CubicHermite map_;
    double lo_, hi_;
};

double invert_flow_map(const FluidState& state, double y);

EulerianSnapshot reconstruct(const FluidState& state, const InitialData& data, std::size_t m);

double eulerian_mass(const EulerianSnapshot& snap);

struct BoundarySample {
    double t, gamma_left, gamma_right, U_left, U_right;
};
BoundarySample boundary_sample(const FluidState& state);

// max_k |(Gamma(t_{k+1}) - Gamma(t_k))/dt - U(t_k, endpoint)| over both ends.
double boundary_kinematics(const std::vector<BoundarySample>& trajectory);

// max |rho_t + (rho u)_y| on the common Eulerian interval of two consecutive
// states, centered in time, skipping `margin` points at each end.
double continuity_residual(const FluidState& a, const FluidState& b, const InitialData& data,
                           std::size_t m, std::size_t margin = 4);

}  // namespace svfb
