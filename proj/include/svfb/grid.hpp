#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace svfb {

// Vertex-centered uniform grid on the reference interval [0, 1].
struct Grid {
    std::size_t n = 0;
    double h = 0.0;
    std::vector<double> nodes;    // x_i = i h
    std::vector<double> faces;    // x_{i+1/2}
    std::vector<double> weights;  // composite trapezoid weights, sum to 1
};

Grid make_grid(std::size_t n);

// d(x) = min(x, 1 - x); throws std::domain_error outside [0, 1].
double distance(double x);

std::vector<double> distance_samples(const Grid& grid);

enum class WeightBase { distance, phi0, rho0 };

struct WeightSpec {
    WeightBase base = WeightBase::distance;
    double exponent = 0.0;
};

// Samples base(x_i)^exponent. phi0/rho0 samples are only read for their base.
// Non-finite values (0 raised to a negative power) are returned as +inf and
// are dropped by the integration routines below.
std::vector<double> weight_samples(const Grid& grid, const WeightSpec& spec,
                                   std::span<const double> phi0 = {},
                                   std::span<const double> rho0 = {});

// Composite trapezoid of node samples; non-finite endpoint values are dropped.
double integrate(const Grid& grid, std::span<const double> f);

// Trapezoid in the interior, with the two endpoint cells replaced by the exact
// integral of a local fit f ~ x^beta (a + b x) through the first two interior
// nodes (mirrored at x = 1). Needs beta > -1.
double integrate_singular(const Grid& grid, std::span<const double> f, double beta);

// (∫ w |f|^p)^(1/p) with w carrying the whole weight; p = inf gives max |w f|,
// or max |f| when w is empty. An empty w means w ≡ 1.
double weighted_norm(const Grid& grid, std::span<const double> f,
                     std::span<const double> w, double p);

// Second-order finite differences: centered in the interior, one-sided at and
// near the endpoints. order in 1..4.
std::vector<double> derivative(const Grid& grid, std::span<const double> f, int order);

// Fornberg weights for the derivative of order m at x0 on the given stencil.
std::vector<double> fd_weights(double x0, std::span<const double> xs, int m);

}  // namespace svfb
