#pragma once

#include <optional>
#include <string>
#include <vector>

#include "svfb/grid.hpp"
#include "svfb/jet.hpp"

namespace svfb {

enum class VelocityKind { zero, bump, integral_plus_bump };

struct BumpSpec {
    double center = 0.5;
    double radius = 0.2;
    double amplitude = 0.5;
};

struct VelocitySpec {
    VelocityKind kind = VelocityKind::zero;
    BumpSpec bump;
};

// rho0 = C (x(1-x))^(1/alpha); a non-positive amplitude selects the unit-mass C.
struct ProfileSpec {
    double alpha = 1.0;
    double amplitude = 0.0;
    VelocitySpec velocity;
};

using Jet6 = Jet<6>;

// Pointwise analytic evaluation of a polynomial-type profile.
class Profile {
public:
    explicit Profile(const ProfileSpec& spec);

    double alpha() const { return alpha_; }
    double amplitude() const { return amp_; }
    const ProfileSpec& spec() const { return spec_; }

    Jet6 phi0(double x) const;
    Jet6 rho0(double x) const;
    Jet6 u0(double x) const;
    Jet6 bump(double x) const;
    // ∫_0^x rho0, exact (regularized incomplete beta).
    double mass_below(double x) const;

private:
    ProfileSpec spec_;
    double alpha_;
    double amp_;
};

double unit_mass_amplitude(double alpha);

struct InitialData {
    Grid grid;
    double alpha = 1.0;
    double amplitude = 1.0;
    double epsilon0 = 0.5;
    std::vector<double> rho0, phi0, u0;
    std::vector<std::vector<double>> drho0;  // orders 0..1
    std::vector<std::vector<double>> dphi0;  // orders 0..3
    std::vector<std::vector<double>> du0;    // orders 0..4
    double C1 = 0.0, C2 = 0.0;
    std::optional<ProfileSpec> spec;         // absent for sample-built data
};

std::vector<double> polynomial_profile(double alpha, double C, const Grid& grid);
std::vector<double> velocity_profile(const VelocitySpec& v, double alpha, double C, const Grid& grid);

// Builds samples and analytic derivatives; validates C1 d <= phi0 <= C2 d.
InitialData make_initial_data(const ProfileSpec& spec, const Grid& grid);
// Builds from arbitrary samples; derivatives by finite differences.
InitialData make_initial_data(const Grid& grid, double alpha, std::vector<double> rho0,
                              std::vector<double> u0);

double default_epsilon0(double alpha);

struct EquivalenceConstants {
    double C1, C2;
};
EquivalenceConstants equivalence_constants(const InitialData& data);
// min / max of phi0/d over interior nodes together with the endpoint limits
// |phi0_x(0)|, |phi0_x(1)|.
EquivalenceConstants equivalence_constants(const Grid& grid, const std::vector<double>& phi0,
                                           double slope_left, double slope_right);

struct TimeDerivatives {
    std::vector<double> Ut, Utx, Utxx, Utt;  // NaN at the two endpoints
};
TimeDerivatives initial_time_derivatives(const InitialData& data);

struct NormEntry {
    std::string name;
    double value = 0.0;          // at the data resolution
    double value_refined = 0.0;  // after one doubling
    bool finite = false;         // refinement ratio < 2
};

struct CompatibilityReport {
    double neumann_residual = 0.0;
    std::vector<NormEntry> finite_norm_table;
    double epsilon0 = 0.0;
    std::string condition;  // "B.2", "B.3" or "B.4"
    bool passes = false;
};
CompatibilityReport check_compatibility(const InitialData& data, double tol = 1e-10);

struct InitialEnergy {
    std::vector<NormEntry> components;  // squared weighted norms
    double total = 0.0;
    bool finite = false;
};
InitialEnergy initial_energy(const InitialData& data);

}  // namespace svfb
