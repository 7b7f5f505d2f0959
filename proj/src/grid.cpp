#include "svfb/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>

namespace svfb {

Grid make_grid(std::size_t n) {
    if (n < 16) throw std::invalid_argument("make_grid: need n >= 16, got " + std::to_string(n));
    Grid g;
    g.n = n;
    g.h = 1.0 / static_cast<double>(n - 1);
    g.nodes.resize(n);
    g.weights.assign(n, g.h);
    for (std::size_t i = 0; i < n; ++i) g.nodes[i] = static_cast<double>(i) * g.h;
    g.nodes.back() = 1.0;
    g.weights.front() = g.weights.back() = 0.5 * g.h;
    g.faces.resize(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) g.faces[i] = 0.5 * (g.nodes[i] + g.nodes[i + 1]);
    return g;
}

double distance(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("distance: coordinate outside [0, 1]");
    return std::min(x, 1.0 - x);
}

std::vector<double> distance_samples(const Grid& grid) {
    std::vector<double> d(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) d[i] = distance(grid.nodes[i]);
    return d;
}

std::vector<double> weight_samples(const Grid& grid, const WeightSpec& spec,
                                   std::span<const double> phi0,
                                   std::span<const double> rho0) {
    std::vector<double> w(grid.n);
    std::span<const double> base;
    std::vector<double> d;
    switch (spec.base) {
        case WeightBase::distance:
            d = distance_samples(grid);
            base = d;
            break;
        case WeightBase::phi0: base = phi0; break;
        case WeightBase::rho0: base = rho0; break;
    }
    if (base.size() != grid.n) throw std::invalid_argument("weight_samples: base has wrong size");
    for (std::size_t i = 0; i < grid.n; ++i) {
        if (base[i] == 0.0 && spec.exponent < 0.0)
            w[i] = std::numeric_limits<double>::infinity();
        else
            w[i] = std::pow(base[i], spec.exponent);
    }
    return w;
}

double integrate(const Grid& grid, std::span<const double> f) {
    if (f.size() != grid.n) throw std::invalid_argument("integrate: sample count mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < grid.n; ++i) {
        if ((i == 0 || i + 1 == grid.n) && !std::isfinite(f[i])) continue;
        s += grid.weights[i] * f[i];
    }
    return s;
}

namespace {

// ∫_0^h x^beta (a + b x) dx with the fit through (h, f1), (2h, f2).
double power_law_cell(double h, double f1, double f2, double beta) {
    // f(x) = x^beta (a + b x): f1 = h^beta (a + b h), f2 = (2h)^beta (a + 2 b h)
    const double g1 = f1 / std::pow(h, beta);
    const double g2 = f2 / std::pow(2.0 * h, beta);
    const double b = (g2 - g1) / h;
    const double a = g1 - b * h;
    return a * std::pow(h, beta + 1.0) / (beta + 1.0) + b * std::pow(h, beta + 2.0) / (beta + 2.0);
}

}  // namespace

double integrate_singular(const Grid& grid, std::span<const double> f, double beta) {
    if (f.size() != grid.n) throw std::invalid_argument("integrate_singular: sample count mismatch");
    if (!(beta > -1.0)) throw std::invalid_argument("integrate_singular: need beta > -1");
    const std::size_t n = grid.n;
    const double h = grid.h;
    double s = 0.0;
    // interior cells [x_1, x_{n-2}] by trapezoid
    for (std::size_t i = 1; i + 2 < n; ++i) s += 0.5 * h * (f[i] + f[i + 1]);
    s += power_law_cell(h, f[1], f[2], beta);
    s += power_law_cell(h, f[n - 2], f[n - 3], beta);
    return s;
}

double weighted_norm(const Grid& grid, std::span<const double> f,
                     std::span<const double> w, double p) {
    if (f.size() != grid.n) throw std::invalid_argument("weighted_norm: sample count mismatch");
    if (!w.empty() && w.size() != grid.n) throw std::invalid_argument("weighted_norm: weight size mismatch");
    if (!(p >= 1.0)) throw std::invalid_argument("weighted_norm: need p >= 1");
    if (std::isinf(p)) {
        double m = 0.0;
        for (std::size_t i = 0; i < grid.n; ++i) {
            const double wi = w.empty() ? 1.0 : w[i];
            if (!std::isfinite(wi)) continue;
            m = std::max(m, std::abs(wi * f[i]));
        }
        return m;
    }
    std::vector<double> g(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double wi = w.empty() ? 1.0 : w[i];
        g[i] = std::isfinite(wi) ? wi * std::pow(std::abs(f[i]), p)
                                 : std::numeric_limits<double>::infinity();
    }
    return std::pow(integrate(grid, g), 1.0 / p);
}

std::vector<double> fd_weights(double x0, std::span<const double> xs, int m) {
    // Fornberg (1988) recursion; returns weights of the m-th derivative.
    const int np = static_cast<int>(xs.size());
    std::vector<std::vector<double>> c(np, std::vector<double>(m + 1, 0.0));
    double c1 = 1.0;
    double c4 = xs[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i < np; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = xs[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = xs[i] - xs[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> out(np);
    for (int i = 0; i < np; ++i) out[i] = c[i][m];
    return out;
}

namespace {

// Stencils on unit spacing keyed by (order, start offset, width).
const std::vector<double>& unit_weights(int order, int start, int width) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, int>, std::vector<double>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(order, start, width);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<double> xs(width);
    for (int k = 0; k < width; ++k) xs[k] = static_cast<double>(start + k);
    return cache.emplace(key, fd_weights(0.0, xs, order)).first->second;
}

}  // namespace

std::vector<double> derivative(const Grid& grid, std::span<const double> f, int order) {
    if (order < 1 || order > 4) throw std::invalid_argument("derivative: order must be in 1..4");
    const int n = static_cast<int>(grid.n);
    if (static_cast<int>(f.size()) != n) throw std::invalid_argument("derivative: sample count mismatch");
    if (n < order + 3) throw std::invalid_argument("derivative: grid too coarse for stencil");
    const int p = (order + 1) / 2;   // centered half-width
    const int one_sided = order + 2; // width of one-sided second-order stencils
    const double scale = std::pow(grid.h, -order);
    std::vector<double> out(n);
    const auto& centered = unit_weights(order, -p, 2 * p + 1);
    for (int i = 0; i < n; ++i) {
        int start = -p, width = 2 * p + 1;
        const std::vector<double>* wp = &centered;
        if (i - p < 0 || i + p > n - 1) {
            width = one_sided;
            start = std::clamp(i - p, 0, n - width) - i;
            wp = &unit_weights(order, start, width);
        }
        const auto& w = *wp;
        double s = 0.0;
        for (int k = 0; k < width; ++k) s += w[k] * f[i + start + k];
        out[i] = s * scale;
    }
    return out;
}

}  // namespace svfb
