#include "svfb/initial_data.hpp"

#include <algorithm>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace svfb {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void validate_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("alpha must lie in (0, 1]");
}

void validate_bump(const BumpSpec& b) {
    if (!(b.radius > 0.0) || b.center - b.radius <= 0.0 || b.center + b.radius >= 1.0)
        throw std::invalid_argument("bump support must lie strictly inside (0, 1)");
}

}  // namespace

double unit_mass_amplitude(double alpha) {
    validate_alpha(alpha);
    const double a = 1.0 / alpha + 1.0;
    return 1.0 / boost::math::beta(a, a);
}

double default_epsilon0(double alpha) {
    validate_alpha(alpha);
    if (alpha <= 1.0 / 3.0) return 0.0;  // unused: E(t,U) carries no epsilon
    if (alpha == 1.0) return 0.5;
    return 0.5 * std::min((3.0 * alpha - 1.0) / (2.0 * alpha), 1.0 / alpha - 1.0);
}

Profile::Profile(const ProfileSpec& spec) : spec_(spec), alpha_(spec.alpha) {
    validate_alpha(alpha_);
    amp_ = spec.amplitude > 0.0 ? spec.amplitude : unit_mass_amplitude(alpha_);
    if (spec.velocity.kind != VelocityKind::zero) validate_bump(spec.velocity.bump);
}

Jet6 Profile::phi0(double x) const {
    const Jet6 X = Jet6::variable(x);
    return std::pow(amp_, alpha_) * (X * (1.0 - X));
}

Jet6 Profile::rho0(double x) const {
    const Jet6 X = Jet6::variable(x);
    return amp_ * pow(X * (1.0 - X), 1.0 / alpha_);
}

Jet6 Profile::bump(double x) const {
    const auto& b = spec_.velocity.bump;
    const double s0 = (x - b.center) / b.radius;
    if (std::abs(s0) >= 1.0) return Jet6{};
    const Jet6 s = (Jet6::variable(x) - b.center) / b.radius;
    const Jet6 q = 1.0 - s * s;
    return b.amplitude * exp(-1.0 / q);
}

double Profile::mass_below(double x) const {
    if (x <= 0.0) return 0.0;
    const double a = 1.0 / alpha_ + 1.0;
    // non-normalised incomplete beta B_x(a, a) = ∫_0^x z^(a-1) (1-z)^(a-1) dz
    return amp_ * boost::math::beta(a, a, std::min(x, 1.0));
}

Jet6 Profile::u0(double x) const {
    switch (spec_.velocity.kind) {
        case VelocityKind::zero: return Jet6{};
        case VelocityKind::bump: return bump(x);
        case VelocityKind::integral_plus_bump: {
            const Jet6 r = rho0(x);
            Jet6 I;
            I.c[0] = mass_below(x);
            for (int k = 1; k <= 6; ++k) I.c[k] = r.c[k - 1] / k;
            return I + bump(x);
        }
    }
    return Jet6{};
}

std::vector<double> polynomial_profile(double alpha, double C, const Grid& grid) {
    validate_alpha(alpha);
    if (!(C > 0.0)) throw std::invalid_argument("amplitude C must be positive");
    std::vector<double> r(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double x = grid.nodes[i];
        r[i] = C * std::pow(x * (1.0 - x), 1.0 / alpha);
    }
    r.front() = r.back() = 0.0;
    return r;
}

std::vector<double> velocity_profile(const VelocitySpec& v, double alpha, double C, const Grid& grid) {
    ProfileSpec spec{alpha, C, v};
    const Profile prof(spec);
    std::vector<double> u(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) u[i] = prof.u0(grid.nodes[i]).value();
    return u;
}

EquivalenceConstants equivalence_constants(const Grid& grid, const std::vector<double>& phi0,
                                           double slope_left, double slope_right) {
    double lo = std::min(std::abs(slope_left), std::abs(slope_right));
    double hi = std::max(std::abs(slope_left), std::abs(slope_right));
    for (std::size_t i = 1; i + 1 < grid.n; ++i) {
        const double r = phi0[i] / distance(grid.nodes[i]);
        if (!(r > 0.0) || !std::isfinite(r))
            throw std::domain_error("equivalence_constants: phi0 vanishes at an interior node");
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    if (!(lo > 0.0) || !std::isfinite(hi))
        throw std::domain_error("equivalence_constants: degenerate ratio");
    return {lo, hi};
}

EquivalenceConstants equivalence_constants(const InitialData& data) {
    const auto& d1 = data.dphi0[1];
    return equivalence_constants(data.grid, data.phi0, d1.front(), d1.back());
}

namespace {

void finish(InitialData& d) {
    d.epsilon0 = default_epsilon0(d.alpha);
    const auto eq = equivalence_constants(d);
    d.C1 = eq.C1;
    d.C2 = eq.C2;
}

}  // namespace

InitialData make_initial_data(const ProfileSpec& spec, const Grid& grid) {
    const Profile prof(spec);
    InitialData d;
    d.grid = grid;
    d.alpha = prof.alpha();
    d.amplitude = prof.amplitude();
    d.spec = spec;
    d.spec->amplitude = prof.amplitude();
    const std::size_t n = grid.n;
    d.drho0.assign(2, std::vector<double>(n));
    d.dphi0.assign(4, std::vector<double>(n));
    d.du0.assign(5, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const double x = grid.nodes[i];
        const Jet6 r = prof.rho0(x), p = prof.phi0(x), u = prof.u0(x);
        for (int k = 0; k < 2; ++k) d.drho0[k][i] = r.deriv(k);
        for (int k = 0; k < 4; ++k) d.dphi0[k][i] = p.deriv(k);
        for (int k = 0; k < 5; ++k) d.du0[k][i] = u.deriv(k);
    }
    d.drho0[0].front() = d.drho0[0].back() = 0.0;
    d.dphi0[0].front() = d.dphi0[0].back() = 0.0;
    d.rho0 = d.drho0[0];
    d.phi0 = d.dphi0[0];
    d.u0 = d.du0[0];
    finish(d);
    return d;
}

InitialData make_initial_data(const Grid& grid, double alpha, std::vector<double> rho0,
                              std::vector<double> u0) {
    validate_alpha(alpha);
    const std::size_t n = grid.n;
    if (rho0.size() != n || u0.size() != n) throw std::invalid_argument("initial data: sample count mismatch");
    if (rho0.front() != 0.0 || rho0.back() != 0.0)
        throw std::invalid_argument("initial data: rho0 must vanish at both endpoints");
    for (std::size_t i = 1; i + 1 < n; ++i)
        if (!(rho0[i] > 0.0)) throw std::invalid_argument("initial data: rho0 must be positive inside");
    InitialData d;
    d.grid = grid;
    d.alpha = alpha;
    d.amplitude = 1.0;
    std::vector<double> phi0(n);
    for (std::size_t i = 0; i < n; ++i) phi0[i] = std::pow(rho0[i], alpha);
    d.drho0 = {rho0, derivative(grid, rho0, 1)};
    d.dphi0 = {phi0};
    for (int k = 1; k < 4; ++k) d.dphi0.push_back(derivative(grid, phi0, k));
    d.du0 = {u0};
    for (int k = 1; k < 5; ++k) d.du0.push_back(derivative(grid, u0, k));
    d.rho0 = std::move(rho0);
    d.phi0 = std::move(phi0);
    d.u0 = std::move(u0);
    finish(d);
    return d;
}

TimeDerivatives initial_time_derivatives(const InitialData& data) {
    const std::size_t n = data.grid.n;
    const double ia = 1.0 / data.alpha;
    TimeDerivatives td;
    td.Ut.assign(n, kNaN);
    td.Utx.assign(n, kNaN);
    td.Utxx.assign(n, kNaN);
    td.Utt.assign(n, kNaN);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double p = data.dphi0[0][i], p1 = data.dphi0[1][i], p2 = data.dphi0[2][i],
                     p3 = data.dphi0[3][i];
        const double u1 = data.du0[1][i], u2 = data.du0[2][i], u3 = data.du0[3][i],
                     u4 = data.du0[4][i];
        const double g = p1 / p;  // phi0_x / phi0
        const double pa = std::pow(p, ia);
        const double R0 = -2.0 * ia * pa / p * p1;
        const double R0x = -2.0 * ia * (ia - 1.0) * pa / (p * p) * p1 * p1 - 2.0 * ia * pa / p * p2;
        const double R0xx = -2.0 * ia * (ia - 1.0) * (ia - 2.0) * pa / (p * p * p) * p1 * p1 * p1
                            - 6.0 * ia * (ia - 1.0) * pa / (p * p) * p1 * p2
                            - 2.0 * ia * pa / p * p3;
        const double Ut = u2 + ia * g * u1 + R0;
        // includes the (1/alpha) phi0_xx u0_x / phi0 term of d/dx U_t
        const double Utx = u3 + ia * g * u2 + ia * (p2 / p) * u1 - ia * g * g * u1 + R0x;
        const double Utxx = u4 + ia * (p3 / p) * u1 + 2.0 * ia * (p2 / p) * u2 + ia * g * u3
                            - 2.0 * ia * g * g * u2 - 3.0 * ia * g * (p2 / p) * u1
                            + 2.0 * ia * g * g * g * u1 + R0xx;
        // coefficient of u0_x^2 is -(2/alpha): d/dt of -(rho0 U_x^2)_x / rho0
        const double Utt = Utxx + ia * g * Utx - 4.0 * u1 * u2 - 2.0 * ia * g * u1 * u1
                           + 4.0 * ia * pa / p * p1 * u1 + 2.0 * pa * u2;
        td.Ut[i] = Ut;
        td.Utx[i] = Utx;
        td.Utxx[i] = Utxx;
        td.Utt[i] = Utt;
    }
    return td;
}

namespace {

// Coarse companion used to judge refinement stability.
InitialData companion(const InitialData& d) {
    if (d.spec) return make_initial_data(*d.spec, make_grid(2 * d.grid.n - 1));
    if (d.grid.n % 2 == 1 && (d.grid.n + 1) / 2 >= 16) {
        const Grid g = make_grid((d.grid.n + 1) / 2);
        std::vector<double> r(g.n), u(g.n);
        for (std::size_t i = 0; i < g.n; ++i) {
            r[i] = d.rho0[2 * i];
            u[i] = d.u0[2 * i];
        }
        return make_initial_data(g, d.alpha, std::move(r), std::move(u));
    }
    throw std::invalid_argument("refinement check needs a profile spec or an odd node count");
}

// Squared interior-trapezoid norm of w * f (endpoints dropped).
double sq_norm(const Grid& g, const std::vector<double>& f) {
    double s = 0.0;
    for (std::size_t i = 1; i + 1 < g.n; ++i) s += g.h * f[i] * f[i];
    return s;
}

struct NamedIntegrand {
    std::string name;
    std::function<std::vector<double>(const InitialData&)> fn;
};

std::vector<NormEntry> tabulate(const InitialData& d, const std::vector<NamedIntegrand>& items,
                                bool squared) {
    const InitialData fine_or_coarse = companion(d);
    const bool refined = fine_or_coarse.grid.n > d.grid.n;
    std::vector<NormEntry> out;
    for (const auto& it : items) {
        const double a = sq_norm(d.grid, it.fn(d));
        const double b = sq_norm(fine_or_coarse.grid, it.fn(fine_or_coarse));
        NormEntry e;
        e.name = it.name;
        e.value = squared ? a : std::sqrt(a);
        const double other = squared ? b : std::sqrt(b);
        e.value_refined = refined ? other : e.value;
        // stability is judged on the norms themselves, not their squares
        const double coarse = std::sqrt(refined ? a : b);
        const double fine = std::sqrt(refined ? b : a);
        e.finite = std::isfinite(fine) && std::isfinite(coarse) &&
                   (coarse == 0.0 ? fine <= 1e-12 : fine / coarse < 2.0);
        out.push_back(e);
    }
    return out;
}

std::vector<double> weighted(const InitialData& d, const std::vector<double>& f, double s) {
    std::vector<double> r(d.grid.n, kNaN);
    for (std::size_t i = 1; i + 1 < d.grid.n; ++i) r[i] = std::pow(d.phi0[i], s) * f[i];
    return r;
}

}  // namespace

CompatibilityReport check_compatibility(const InitialData& data, double tol) {
    CompatibilityReport rep;
    const double a = data.alpha;
    rep.epsilon0 = data.epsilon0;
    rep.neumann_residual = std::max(std::abs(data.du0[1].front()), std::abs(data.du0[1].back()));

    std::vector<NamedIntegrand> items;
    double s;
    if (a <= 1.0 / 3.0) {
        rep.condition = "B.2";
        s = 1.0;
    } else {
        rep.condition = (a < 0.6 || a == 1.0) ? "B.3" : "B.4";
        s = 1.5 - data.epsilon0;
    }
    for (int j = 0; j <= 4; ++j) {
        items.push_back({"phi0^" + std::to_string(s) + " d^" + std::to_string(j) + " u0",
                         [s, j](const InitialData& d) { return weighted(d, d.du0[j], s); }});
    }
    if (a > 1.0 / 3.0) {
        const bool b4 = rep.condition == "B.4";
        items.push_back({b4 ? "B.4 combination" : "B.3 combination", [b4](const InitialData& d) {
            const double al = d.alpha, ia = 1.0 / al, h = 0.5 * ia;
            std::vector<double> r(d.grid.n, kNaN);
            for (std::size_t i = 1; i + 1 < d.grid.n; ++i) {
                const double p = d.phi0[i], p1 = d.dphi0[1][i];
                const double u1 = d.du0[1][i], u2 = d.du0[2][i], u3 = d.du0[3][i], u4 = d.du0[4][i];
                const double q = u2 / p - p1 * u1 / (p * p);  // (phi0^{-1} u0_x)_x
                double v = std::pow(p, h) * u4 + 2.0 * ia * std::pow(p, h - 1.0) * p1 * u3
                           + (1.0 - 2.0 * al) / (al * al) * std::pow(p, h - 1.0) * p1 * p1 * q;
                if (b4) v -= 4.0 * ia * (ia - 1.0) * (ia - 1.0) * std::pow(p, 3.0 * h - 3.0) * p1 * p1 * p1;
                r[i] = v;
            }
            return r;
        }});
    }
    rep.finite_norm_table = tabulate(data, items, false);
    rep.passes = rep.neumann_residual <= tol;
    for (const auto& e : rep.finite_norm_table) rep.passes = rep.passes && e.finite;
    return rep;
}

InitialEnergy initial_energy(const InitialData& data) {
    const bool low = data.alpha <= 1.0 / 3.0;
    const double s_lo = low ? 1.0 : 0.5 / data.alpha;
    const double s_hi = low ? 1.0 : 1.5 - data.epsilon0;
    auto td_item = [](const std::string& name, double s, std::vector<double> TimeDerivatives::*m) {
        return NamedIntegrand{name, [s, m](const InitialData& d) {
                                  return weighted(d, initial_time_derivatives(d).*m, s);
                              }};
    };
    auto du_item = [](const std::string& name, double s, int k) {
        return NamedIntegrand{name, [s, k](const InitialData& d) { return weighted(d, d.du0[k], s); }};
    };
    std::vector<NamedIntegrand> items = {
        du_item("U", s_lo, 0),
        td_item("U_t", s_lo, &TimeDerivatives::Ut),
        td_item("U_tt", s_lo, &TimeDerivatives::Utt),
        du_item("U_x", s_lo, 1),
        td_item("U_tx", s_lo, &TimeDerivatives::Utx),
        td_item("U_txx", s_hi, &TimeDerivatives::Utxx),
        du_item("U_xx", s_hi, 2),
        du_item("U_xxx", s_hi, 3),
        du_item("U_xxxx", s_hi, 4),
    };
    InitialEnergy e;
    e.components = tabulate(data, items, true);
    e.finite = true;
    for (const auto& c : e.components) {
        e.total += c.value;
        e.finite = e.finite && c.finite;
    }
    return e;
}

}  // namespace svfb
