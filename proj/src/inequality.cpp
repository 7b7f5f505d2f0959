#include "svfb/inequality.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace svfb {

namespace {

std::string fmt_param(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

std::vector<FamilyMember> TestFamily::members() const {
    std::vector<FamilyMember> out;
    const double pi = std::numbers::pi;
    switch (kind) {
        case Kind::polynomial:
            for (int k = 0; k <= max_degree; ++k)
                out.push_back({"x^" + std::to_string(k), [k](double x) { return std::pow(x, k); },
                               [k](double x) { return k == 0 ? 0.0 : k * std::pow(x, k - 1); }});
            break;
        case Kind::trig:
            for (int j = 0; j <= max_freq; ++j) {
                const double w = j * pi;
                out.push_back({"cos(" + std::to_string(j) + "pi x)", [w](double x) { return std::cos(w * x); },
                               [w](double x) { return -w * std::sin(w * x); }});
                if (j > 0)
                    out.push_back({"sin(" + std::to_string(j) + "pi x)", [w](double x) { return std::sin(w * x); },
                                   [w](double x) { return w * std::cos(w * x); }});
            }
            break;
        case Kind::bump:
            for (const auto& b : bumps) {
                const double c = b.center, r = b.radius;
                auto F = [c, r](double x) {
                    const double z = (x - c) / r;
                    return std::abs(z) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - z * z)) : 0.0;
                };
                auto Fx = [c, r](double x) {
                    const double z = (x - c) / r;
                    if (!(std::abs(z) < 1.0)) return 0.0;
                    const double q = 1.0 - z * z;
                    return std::exp(1.0 - 1.0 / q) * (-2.0 * z / (q * q)) / r;
                };
                out.push_back({"bump(" + fmt_param(c) + "," + fmt_param(r) + ")", F, Fx});
            }
            break;
        case Kind::random_smooth: {
            std::mt19937_64 rng(seed);
            std::normal_distribution<double> nd(0.0, 1.0);
            constexpr int modes = 6;
            for (int m = 0; m < count; ++m) {
                std::vector<double> a(modes), b(modes);
                for (int j = 0; j < modes; ++j) {
                    const double s = 1.0 / (1.0 + j * j);
                    a[j] = s * nd(rng);
                    b[j] = s * nd(rng);
                }
                auto F = [a, b, pi](double x) {
                    double v = 0.0;
                    for (int j = 0; j < modes; ++j) v += a[j] * std::cos(j * pi * x) + b[j] * std::sin(j * pi * x);
                    return v;
                };
                auto Fx = [a, b, pi](double x) {
                    double v = 0.0;
                    for (int j = 0; j < modes; ++j)
                        v += j * pi * (-a[j] * std::sin(j * pi * x) + b[j] * std::cos(j * pi * x));
                    return v;
                };
                out.push_back({"random[" + std::to_string(seed) + "#" + std::to_string(m) + "]", F, Fx});
            }
            break;
        }
        case Kind::custom:
            out = custom;
            break;
    }
    return out;
}

TestFamily polynomial_family(int max_degree) {
    TestFamily f;
    f.kind = TestFamily::Kind::polynomial;
    f.max_degree = max_degree;
    return f;
}

TestFamily trig_family(int max_freq) {
    TestFamily f;
    f.kind = TestFamily::Kind::trig;
    f.max_freq = max_freq;
    return f;
}

TestFamily bump_family(std::vector<BumpParams> params) {
    TestFamily f;
    f.kind = TestFamily::Kind::bump;
    f.bumps = std::move(params);
    return f;
}

TestFamily random_smooth_family(std::uint64_t seed, int count) {
    TestFamily f;
    f.kind = TestFamily::Kind::random_smooth;
    f.seed = seed;
    f.count = count;
    return f;
}

std::vector<TestFamily> default_families() {
    return {polynomial_family(6), trig_family(6),
            bump_family({{0.5, 0.25}, {0.2, 0.15}, {0.8, 0.15}, {0.5, 0.45}}),
            random_smooth_family(42, 8)};
}

namespace {

struct Sampled {
    std::vector<double> F, Fx;
};

Sampled sample(const FamilyMember& m, const Grid& g) {
    Sampled s{std::vector<double>(g.n), std::vector<double>(g.n)};
    for (std::size_t i = 0; i < g.n; ++i) {
        s.F[i] = m.F(g.nodes[i]);
        s.Fx[i] = m.Fx(g.nodes[i]);
    }
    return s;
}

// (∫ b^e |f|^p)^(1/p); negative exponents use the endpoint power-law rule.
double weighted_lp(const Grid& g, const std::vector<double>& base, double e, const std::vector<double>& f,
                   double p) {
    std::vector<double> v(g.n);
    for (std::size_t i = 0; i < g.n; ++i) {
        const double w = e == 0.0 ? 1.0 : std::pow(base[i], e);
        v[i] = w * std::pow(std::abs(f[i]), p);
    }
    const double I = e < 0.0 ? integrate_singular(g, v, e) : integrate(g, v);
    return std::pow(I, 1.0 / p);
}

double weighted_sup(const std::vector<double>& base, double e, const std::vector<double>& f) {
    double m = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double w = e == 0.0 ? 1.0 : std::pow(base[i], e);
        if (std::isfinite(w)) m = std::max(m, std::abs(w * f[i]));
    }
    return m;
}

std::vector<double> base_samples(const Grid& g, const BenchWeight& w) {
    if (w.base == WeightBase::distance) return distance_samples(g);
    if (w.base != WeightBase::phi0) throw std::invalid_argument("inequality bench: weight must be distance or phi0");
    if (!(w.alpha > 0.0)) throw std::invalid_argument("inequality bench: alpha must be positive");
    const double Ca = std::pow(unit_mass_amplitude(w.alpha), w.alpha);
    std::vector<double> b(g.n);
    for (std::size_t i = 0; i < g.n; ++i) b[i] = Ca * g.nodes[i] * (1.0 - g.nodes[i]);
    return b;
}

std::string weight_name(const BenchWeight& w) {
    return w.base == WeightBase::distance ? "d" : "phi0(alpha=" + fmt_param(w.alpha) + ")";
}

struct Fraction {
    double num, den;
};

// Evaluates one grid: returns max ratio, argmax, and appends skip notes.
struct Pass {
    double max_ratio = 0.0;
    std::string argmax;
    std::size_t evaluated = 0;
};

template <class Eval>
Pass sweep(const std::vector<TestFamily>& families, const Grid& g, Eval&& eval, std::vector<std::string>* notes) {
    Pass p;
    for (const auto& fam : families)
        for (const auto& m : fam.members()) {
            const auto s = sample(m, g);
            const Fraction fr = eval(s);
            if (fr.num == 0.0 && fr.den == 0.0) {
                if (notes) notes->push_back(m.id + ": skipped, both sides vanish");
                continue;
            }
            if (!(fr.den > 1e-12 * fr.num) || !std::isfinite(fr.num)) {
                if (notes) notes->push_back(m.id + ": skipped, right side vanishes (ratio unbounded)");
                continue;
            }
            const double r = fr.num / fr.den;
            ++p.evaluated;
            if (p.argmax.empty() || r > p.max_ratio) {
                p.max_ratio = r;
                p.argmax = m.id;
            }
        }
    return p;
}

RatioReport finish(std::string id, std::string params, const Pass& a, const Pass& b,
                   std::vector<std::string> notes) {
    RatioReport r;
    r.case_id = std::move(id);
    r.params = std::move(params);
    r.max_ratio = a.max_ratio;
    r.argmax = a.argmax;
    r.ratio_at_n = a.max_ratio;
    r.ratio_at_2n = b.max_ratio;
    r.evaluated = a.evaluated;
    r.notes = std::move(notes);
    const double scale = std::max(std::abs(a.max_ratio), std::abs(b.max_ratio));
    r.stable = std::isfinite(a.max_ratio) && std::isfinite(b.max_ratio)
               && (scale == 0.0 || std::abs(b.max_ratio - a.max_ratio) < 0.1 * scale);
    return r;
}

template <class MakeEval>
RatioReport run_case(std::string id, std::string params, const std::vector<TestFamily>& families,
                     const Grid& g, MakeEval&& make_eval) {
    const Grid g2 = make_grid(2 * g.n - 1);
    std::vector<std::string> notes;
    const Pass a = sweep(families, g, make_eval(g), &notes);
    const Pass b = sweep(families, g2, make_eval(g2), nullptr);
    return finish(std::move(id), std::move(params), a, b, std::move(notes));
}

}  // namespace

RatioReport gn_check(double k, const std::vector<TestFamily>& families, const Grid& grid,
                     const BenchWeight& weight) {
    if (!(k > -1.0)) throw std::invalid_argument("gn_check: need k > -1");
    return run_case("gagliardo_nirenberg", "k=" + fmt_param(k) + ";weight=" + weight_name(weight), families, grid,
                    [&](const Grid& g) {
                        auto base = base_samples(g, weight);
                        return [g, base, k](const Sampled& s) {
                            const double lhs = weighted_lp(g, base, k, s.F, 2.0);
                            const double a = weighted_lp(g, base, k + 1.0, s.F, 2.0);
                            const double b = weighted_lp(g, base, k + 1.0, s.Fx, 2.0);
                            return Fraction{lhs, a + std::sqrt(a * b)};
                        };
                    });
}

RatioReport hardy_check(HardyVariant variant, double k, double eps, const std::vector<TestFamily>& families,
                        const Grid& grid, const BenchWeight& weight) {
    std::string id;
    std::string params = "k=" + fmt_param(k);
    switch (variant) {
        case HardyVariant::l2:
            if (!(k > -1.0)) throw std::invalid_argument("hardy_check l2: need k > -1");
            id = "hardy_l2";
            break;
        case HardyVariant::l1:
            if (!(eps > 0.0 && k + 1.0 > eps)) throw std::invalid_argument("hardy_check l1: need k + 1 > eps > 0");
            id = "hardy_l1";
            params += ";eps=" + fmt_param(eps);
            break;
        case HardyVariant::sup:
            if (!(k > 0.0)) throw std::invalid_argument("hardy_check sup: need k > 0");
            id = "hardy_sup";
            break;
    }
    params += ";weight=" + weight_name(weight);
    return run_case(id, params, families, grid, [&](const Grid& g) {
        auto base = base_samples(g, weight);
        return [g, base, k, eps, variant](const Sampled& s) {
            std::vector<double> sum(g.n);
            for (std::size_t i = 0; i < g.n; ++i) sum[i] = s.F[i] + s.Fx[i];
            switch (variant) {
                case HardyVariant::l2:
                    return Fraction{weighted_lp(g, base, k, s.F, 2.0), weighted_lp(g, base, k + 2.0, sum, 2.0)};
                case HardyVariant::l1:
                    return Fraction{weighted_lp(g, base, k, s.F, 1.0),
                                    weighted_lp(g, base, 2.0 * k + 3.0 - 2.0 * eps, sum, 2.0)};
                case HardyVariant::sup:
                default:
                    return Fraction{weighted_sup(base, k, s.F), weighted_lp(g, base, 2.0 * k + 1.0, sum, 2.0)};
            }
        };
    });
}

RatioReport embedding_check(double s, double kappa, double r, const std::vector<TestFamily>& families,
                            const InitialData& data) {
    if (!(kappa > 0.0 && s > 0.5 && s <= 0.5 * (kappa + 1.0)))
        throw std::invalid_argument("embedding_check: need kappa > 0 and 1/2 < s <= (kappa+1)/2");
    if (!(r >= s && r <= 0.5 * (kappa + 1.0)))
        throw std::invalid_argument("embedding_check: need s <= r <= (kappa+1)/2");
    if (!data.spec) throw std::invalid_argument("embedding_check: refinement needs data built from a profile spec");
    auto make_eval = [s, kappa](const InitialData& d) {
        const Grid& g = d.grid;
        double dd = 0.0;
        for (double v : d.dphi0[2]) dd = std::max(dd, std::abs(v));
        return [g, phi = d.phi0, dphi = d.dphi0[1], dd, s, kappa](const Sampled& f) {
            std::vector<double> cross(g.n);
            for (std::size_t i = 0; i < g.n; ++i) cross[i] = phi[i] * f.Fx[i] + kappa * dphi[i] * f.F[i];
            const double lhs = weighted_lp(g, phi, 2.0 * s, f.Fx, 2.0);
            const double c = weighted_lp(g, phi, 2.0 * s - 2.0, cross, 2.0);
            return Fraction{lhs, c + dd * weighted_lp(g, phi, 2.0 * s, f.F, 2.0)};
        };
    };
    const auto fine = make_initial_data(*data.spec, make_grid(2 * data.grid.n - 1));
    std::vector<std::string> notes;
    const Pass a = sweep(families, data.grid, make_eval(data), &notes);
    const Pass b = sweep(families, fine.grid, make_eval(fine), nullptr);
    return finish("embedding", "s=" + fmt_param(s) + ";kappa=" + fmt_param(kappa) + ";r=" + fmt_param(r) + ";alpha="
                            + fmt_param(data.alpha),
                  a, b, std::move(notes));
}

RatioReport sobolev_check(const std::vector<TestFamily>& families, const Grid& grid) {
    return run_case("sobolev", "p=1", families, grid, [](const Grid& g) {
        return [g](const Sampled& s) {
            const std::vector<double> none;
            return Fraction{weighted_sup(none, 0.0, s.F),
                            weighted_lp(g, none, 0.0, s.F, 1.0) + weighted_lp(g, none, 0.0, s.Fx, 1.0)};
        };
    });
}

std::vector<RatioReport> run_inequality_suite(std::size_t n, double alpha) {
    const Grid g = make_grid(n);
    const auto fam = default_families();
    std::vector<RatioReport> out;
    for (const BenchWeight w : {BenchWeight{WeightBase::distance, alpha}, BenchWeight{WeightBase::phi0, alpha}}) {
        for (double k : {-0.5, 0.0, 1.0}) out.push_back(gn_check(k, fam, g, w));
        for (double k : {-0.5, 0.0, 1.0}) out.push_back(hardy_check(HardyVariant::l2, k, 0.0, fam, g, w));
        out.push_back(hardy_check(HardyVariant::l1, 0.0, 0.5, fam, g, w));
        out.push_back(hardy_check(HardyVariant::l1, -0.25, 0.5, fam, g, w));
        for (double k : {0.5, 1.0}) out.push_back(hardy_check(HardyVariant::sup, k, 0.0, fam, g, w));
    }
    ProfileSpec ps;
    ps.alpha = alpha;
    const auto data = make_initial_data(ps, g);
    out.push_back(embedding_check(1.0, 2.0, 1.0, fam, data));
    out.push_back(embedding_check(0.75, 1.0, 1.0, fam, data));
    out.push_back(embedding_check(1.5, 3.0, 2.0, fam, data));
    out.push_back(sobolev_check(fam, g));
    return out;
}

}  // namespace svfb
