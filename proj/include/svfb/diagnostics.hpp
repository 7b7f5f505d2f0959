#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "svfb/initial_data.hpp"
#include "svfb/solver.hpp"

namespace svfb {

struct DiagnosticsRecord {
    double t = 0.0;
    double mass = 0.0;
    double momentum = 0.0;
    double kinetic_energy = 0.0;
    double fundamental_energy = 0.0;       // ∫(½ rho0 U² + rho0²/eta_x)
    double fundamental_dissipation = 0.0;  // ∫ rho0 U_x²/eta_x²
    double bd_entropy = 0.0;               // ∫(½ rho0 V² + rho0²/eta_x)
    double bd_dissipation = 0.0;           // ∫ H_x²/eta_x
    double eta_x_min = 0.0;
    double eta_x_max = 0.0;
    double H_max = 0.0;
    double neumann_residual = 0.0;
    double slope_ratio = 0.0;
    double V_transport_residual = 0.0;     // NaN on the first row
    double V_weighted_sup = 0.0;
    double log_eta_weighted = 0.0;
    double e_tilde_spatial = 0.0;
    bool bd_divergent = false;
};

// Column names in CSV order (bd_divergent is written as 0/1).
const std::vector<std::string>& record_columns();
std::vector<double> record_values(const DiagnosticsRecord& r);

enum class VForm { hx_form, metric_form };

struct EffectiveVelocityField {
    std::vector<double> V;  // NaN at the endpoints
    VForm form_used = VForm::metric_form;
};

EffectiveVelocityField effective_velocity(const FluidState& state, const InitialData& data,
                                          VForm form = VForm::metric_form);

struct ConservedQuantities {
    double mass, momentum, kinetic;
};
ConservedQuantities conserved_quantities(const FluidState& state, const InitialData& data);

struct FundamentalEnergy {
    double energy;        // ½-weighted kinetic part: the dissipated functional
    double energy_unhalved;  // ∫(rho0 U² + rho0²/eta_x), no ½
    double dissipation;
};
FundamentalEnergy fundamental_energy(const FluidState& state, const InitialData& data);

struct BdEntropy {
    double entropy;      // ∫(½ rho0 V² + rho0²/eta_x)
    double entropy_unhalved;// ∫(rho0 V² + rho0²/eta_x)
    double dissipation;  // ∫ H_x²/eta_x
    bool divergent;      // alpha = 1: the continuum functional is infinite
};
BdEntropy bd_entropy(const FluidState& state, const InitialData& data);

// max_i rho0^alpha |(V'-V)/dt + 2 Hbar (Vbar - Ubar)| over interior nodes.
double v_transport_residual(const FluidState& prev, const FluidState& next, const InitialData& data);

// Time series at one probe node; weight = rho0^(r alpha) there.
struct ProbeSeries {
    double weight = 1.0;
    std::vector<double> t, H, U, V;
};
// max_k |w V(t_k) - e^{-A_k}(w V(0) + ∫ 2 w H U e^{A} dτ)|, A = ∫ 2H, trapezoid in time.
double duhamel_deviation(const ProbeSeries& s);

class DuhamelTracker {
public:
    DuhamelTracker(const InitialData& data, double r, std::vector<std::size_t> probes);
    void record(const FluidState& state);
    double max_deviation() const;
    const std::vector<ProbeSeries>& series() const { return series_; }

private:
    const InitialData* data_;
    std::vector<std::size_t> probes_;
    std::vector<ProbeSeries> series_;
};

std::vector<std::size_t> default_probes(const Grid& grid);
double v_duhamel_check(const std::vector<FluidState>& trajectory, const InitialData& data, double r,
                       std::vector<std::size_t> probes = {});

struct BoundaryMonitors {
    double neumann_residual, slope_ratio, log_eta_weighted;
};
BoundaryMonitors boundary_monitors(const FluidState& state, const InitialData& data);

struct KineticFloorResult {
    bool skipped = false;
    bool passed = false;
    double floor = 0.0;
    double min_margin = 0.0;
    std::string note;
};
KineticFloorResult kinetic_floor_check(const std::vector<DiagnosticsRecord>& trajectory,
                                       double tol = 1e-9);

struct EnergyComponent {
    std::string name;
    double value;  // squared weighted norm
};
// window: >= 3 consecutive states, oldest first; evaluated at the newest.
std::vector<EnergyComponent> weighted_energy_estimate(const std::vector<FluidState>& window,
                                                      const InitialData& data);
// Σ_{k=2..4} |phi0^{3/2-eps0} ∂_x^k U|² (phi0 weight when alpha <= 1/3).
double e_tilde_spatial(const FluidState& state, const InitialData& data);

// One row for an accepted state; prev enables the V transport residual.
DiagnosticsRecord make_record(const FluidState& state, const FluidState* prev, const InitialData& data);

}  // namespace svfb
