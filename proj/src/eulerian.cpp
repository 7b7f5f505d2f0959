#include "svfb/eulerian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace svfb {

CubicHermite::CubicHermite(std::vector<double> x, std::vector<double> y, std::vector<double> dy)
    : x_(std::move(x)), y_(std::move(y)), d_(std::move(dy)) {
    if (x_.size() < 2 || y_.size() != x_.size() || d_.size() != x_.size())
        throw std::invalid_argument("CubicHermite: inconsistent sizes");
    for (std::size_t i = 0; i + 1 < x_.size(); ++i)
        if (!(x_[i + 1] > x_[i])) throw std::invalid_argument("CubicHermite: knots must increase strictly");
}

std::size_t CubicHermite::cell(double x) const {
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t k = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - x_.begin() - 1, 0));
    return std::min(k, x_.size() - 2);
}

double CubicHermite::operator()(double x) const {
    const std::size_t k = cell(x);
    const double h = x_[k + 1] - x_[k];
    const double t = (x - x_[k]) / h;
    if (t == 0.0) return y_[k];
    if (t == 1.0) return y_[k + 1];
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y_[k] + (t3 - 2 * t2 + t) * h * d_[k]
           + (-2 * t3 + 3 * t2) * y_[k + 1] + (t3 - t2) * h * d_[k + 1];
}

std::vector<double> pchip_slopes(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    std::vector<double> h(n - 1), del(n - 1), d(n, 0.0);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        h[k] = x[k + 1] - x[k];
        del[k] = (y[k + 1] - y[k]) / h[k];
    }
    if (n == 2) {
        d[0] = d[1] = del[0];
        return d;
    }
    for (std::size_t k = 1; k + 1 < n; ++k) {
        if (del[k - 1] * del[k] > 0.0) {
            const double w1 = 2 * h[k] + h[k - 1], w2 = h[k] + 2 * h[k - 1];
            d[k] = (w1 + w2) / (w1 / del[k - 1] + w2 / del[k]);
        }
    }
    auto end_slope = [](double h0, double h1, double m0, double m1) {
        double s = ((2 * h0 + h1) * m0 - h0 * m1) / (h0 + h1);
        if (s * m0 <= 0.0) s = 0.0;
        else if (m0 * m1 <= 0.0 && std::abs(s) > std::abs(3 * m0)) s = 3 * m0;
        return s;
    };
    d[0] = end_slope(h[0], h[1], del[0], del[1]);
    d[n - 1] = end_slope(h[n - 2], h[n - 3], del[n - 2], del[n - 3]);
    return d;
}

FlowMapInverse::FlowMapInverse(const FluidState& s)
    : map_([&] {
          std::vector<double> x(s.eta.size());
          const double h = 1.0 / static_cast<double>(x.size() - 1);
          for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<double>(i) * h;
          x.back() = 1.0;
          return make_pchip(s.eta, x);
      }()),
      lo_(s.eta.front()),
      hi_(s.eta.back()) {}

double FlowMapInverse::operator()(double y) const {
    if (y < lo_ || y > hi_) throw std::out_of_range("invert_flow_map: y outside [gamma_left, gamma_right]");
    if (y == lo_) return 0.0;
    if (y == hi_) return 1.0;
    return std::clamp(map_(y), 0.0, 1.0);
}

double invert_flow_map(const FluidState& s, double y) { return FlowMapInverse(s)(y); }

EulerianSnapshot reconstruct(const FluidState& s, const InitialData& d, std::size_t m) {
    if (m < 2) throw std::invalid_argument("reconstruct: need m >= 2");
    const Grid& g = d.grid;
    for (double v : s.eta_x)
        if (!(v > 0.0)) throw MetricLoss("reconstruct: eta_x <= 0");
    const FlowMapInverse inv(s);
    const auto Ux = derivative(g, s.U, 1);
    const auto Uxx = derivative(g, s.U, 2);
    const auto Uxxx = derivative(g, s.U, 3);
    const auto exx = derivative(g, s.eta, 2);
    const auto exxx = derivative(g, s.eta, 3);
    const CubicHermite rho0 = make_pchip(g.nodes, d.rho0);
    const CubicHermite U(g.nodes, s.U, Ux), UX(g.nodes, Ux, Uxx), UXX(g.nodes, Uxx, Uxxx);
    const CubicHermite EX(g.nodes, s.eta_x, exx), EXX(g.nodes, exx, exxx);

    EulerianSnapshot e;
    e.t = s.t;
    e.gamma_left = inv.gamma_left();
    e.gamma_right = inv.gamma_right();
    e.y_nodes.resize(m);
    e.rho.resize(m);
    e.u.resize(m);
    e.u_y.resize(m);
    e.u_yy.resize(m);
    const double dy = (e.gamma_right - e.gamma_left) / static_cast<double>(m - 1);
    for (std::size_t j = 0; j < m; ++j) {
        const double y = j + 1 == m ? e.gamma_right : e.gamma_left + dy * static_cast<double>(j);
        const double x = inv(y);
        const double ex = EX(x), exx_v = EXX(x), ux = UX(x);
        e.y_nodes[j] = y;
        e.rho[j] = std::max(0.0, rho0(x)) / ex;
        e.u[j] = U(x);
        e.u_y[j] = ux / ex;
        e.u_yy[j] = UXX(x) / (ex * ex) - ux * exx_v / (ex * ex * ex);
    }
    e.rho.front() = 0.0;
    e.rho.back() = 0.0;
    return e;
}

double eulerian_mass(const EulerianSnapshot& e) {
    double s = 0.0;
    for (std::size_t j = 0; j + 1 < e.y_nodes.size(); ++j)
        s += 0.5 * (e.y_nodes[j + 1] - e.y_nodes[j]) * (e.rho[j] + e.rho[j + 1]);
    return s;
}

BoundarySample boundary_sample(const FluidState& s) {
    return {s.t, s.eta.front(), s.eta.back(), s.U.front(), s.U.back()};
}

double boundary_kinematics(const std::vector<BoundarySample>& tr) {
    double r = 0.0;
    for (std::size_t k = 0; k + 1 < tr.size(); ++k) {
        const double dt = tr[k + 1].t - tr[k].t;
        if (!(dt > 0.0)) throw std::invalid_argument("boundary_kinematics: times must increase");
        r = std::max(r, std::abs((tr[k + 1].gamma_left - tr[k].gamma_left) / dt - tr[k].U_left));
        r = std::max(r, std::abs((tr[k + 1].gamma_right - tr[k].gamma_right) / dt - tr[k].U_right));
    }
    return r;
}

double continuity_residual(const FluidState& a, const FluidState& b, const InitialData& d,
                           std::size_t m, std::size_t margin) {
    const double dt = b.t - a.t;
    if (!(dt > 0.0)) throw std::invalid_argument("continuity_residual: states not ordered in time");
    const auto ea = reconstruct(a, d, m), eb = reconstruct(b, d, m);
    const double lo = std::max(ea.gamma_left, eb.gamma_left);
    const double hi = std::min(ea.gamma_right, eb.gamma_right);
    // linear resampling of each snapshot on a common uniform y grid
    auto sample = [](const EulerianSnapshot& e, const std::vector<double>& f, double y) {
        auto it = std::upper_bound(e.y_nodes.begin(), e.y_nodes.end(), y);
        std::size_t k = std::clamp<std::ptrdiff_t>(it - e.y_nodes.begin() - 1, 0,
                                                   static_cast<std::ptrdiff_t>(e.y_nodes.size()) - 2);
        const double t = (y - e.y_nodes[k]) / (e.y_nodes[k + 1] - e.y_nodes[k]);
        return (1 - t) * f[k] + t * f[k + 1];
    };
    std::vector<double> ra(m), rb(m), fa(m), fb(m), y(m);
    std::vector<double> qa(ea.rho.size()), qb(eb.rho.size());
    for (std::size_t j = 0; j < qa.size(); ++j) qa[j] = ea.rho[j] * ea.u[j];
    for (std::size_t j = 0; j < qb.size(); ++j) qb[j] = eb.rho[j] * eb.u[j];
    const double dy = (hi - lo) / static_cast<double>(m - 1);
    for (std::size_t j = 0; j < m; ++j) {
        y[j] = lo + dy * static_cast<double>(j);
        ra[j] = sample(ea, ea.rho, y[j]);
        rb[j] = sample(eb, eb.rho, y[j]);
        fa[j] = sample(ea, qa, y[j]);
        fb[j] = sample(eb, qb, y[j]);
    }
    double r = 0.0;
    for (std::size_t j = std::max<std::size_t>(margin, 1); j + std::max<std::size_t>(margin, 1) < m; ++j) {
        const double rt = (rb[j] - ra[j]) / dt;
        const double fy = 0.5 * ((fa[j + 1] - fa[j - 1]) + (fb[j + 1] - fb[j - 1])) / (2 * dy);
        r = std::max(r, std::abs(rt + fy));
    }
    return r;
}

}  // namespace svfb
