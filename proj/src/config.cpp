#include "svfb/config.hpp"

#include <algorithm>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace svfb {

const std::vector<std::string>& known_checks() {
    static const std::vector<std::string> names = {
        "momentum",      "energy",        "metric_bounds", "endpoint_metric", "neumann",           "slope_ratio",
        "eulerian_mass", "kinetic_floor", "v_weighted",    "h_max",           "boundary_kinematics"};
    return names;
}

std::string velocity_kind_name(VelocityKind kind) {
    switch (kind) {
        case VelocityKind::zero: return "zero";
        case VelocityKind::bump: return "bump";
        case VelocityKind::integral_plus_bump: return "integral_plus_bump";
    }
    return "zero";
}

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(v);
    while (std::getline(is, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double to_double(const std::string& key, const std::string& v) {
    double x = 0.0;
    const auto s = trim(v);
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc() || p != s.data() + s.size())
        throw ConfigError("config: '" + key + "' expects a number, got '" + v + "'");
    return x;
}

long long to_int(const std::string& key, const std::string& v) {
    long long x = 0;
    const auto s = trim(v);
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc() || p != s.data() + s.size())
        throw ConfigError("config: '" + key + "' expects an integer, got '" + v + "'");
    return x;
}

bool to_bool(const std::string& key, const std::string& v) {
    std::string s = trim(v);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
    if (s == "false" || s == "0" || s == "no" || s == "off") return false;
    throw ConfigError("config: '" + key + "' expects a boolean, got '" + v + "'");
}

using Section = std::map<std::string, std::string>;

void check_keys(const std::string& name, const Section& sec, const std::set<std::string>& allowed) {
    for (const auto& [k, v] : sec)
        if (!allowed.count(k)) throw ConfigError("config: unknown key '" + k + "' in [" + name + "]");
}

void validate(const RunConfig& c) {
    const auto& p = c.initial;
    if (!(p.alpha > 0.0 && p.alpha <= 1.0)) throw ConfigError("config: initial.alpha must lie in (0, 1]");
    if (p.velocity.kind != VelocityKind::zero) {
        const auto& b = p.velocity.bump;
        if (!(b.radius > 0.0) || b.center - b.radius <= 0.0 || b.center + b.radius >= 1.0)
            throw ConfigError("config: velocity bump support must lie strictly inside (0, 1)");
    }
    if (c.solver.n < 16) throw ConfigError("config: solver.n must be at least 16");
    try {
        svfb::validate(c.solver);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (c.output.eulerian_resolution < 2) throw ConfigError("config: output.eulerian_resolution must be >= 2");
    for (double t : c.output.snapshot_times)
        if (!(t >= 0.0)) throw ConfigError("config: snapshot times must be nonnegative");
    for (const auto& name : c.checks.enabled)
        if (std::find(known_checks().begin(), known_checks().end(), name) == known_checks().end())
            throw ConfigError("config: unknown check '" + name + "'");
}

}  // namespace

RunConfig parse_config(std::string_view text) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    std::istringstream is{std::string(text)};
    try {
        pt::read_ini(is, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    std::map<std::string, Section> sections;
    for (const auto& [name, node] : tree) {
        if (node.empty() && !node.data().empty())
            throw ConfigError("config: key '" + name + "' outside of a section");
        if (!std::set<std::string>{"initial", "solver", "output", "checks"}.count(name))
            throw ConfigError("config: unknown section [" + name + "]");
        for (const auto& [k, v] : node) sections[name][k] = v.data();
    }

    RunConfig c;
    c.source = std::string(text);
    auto& ini = sections["initial"];
    check_keys("initial", ini,
               {"alpha", "amplitude", "velocity.kind", "velocity.center", "velocity.radius", "velocity.amplitude"});
    for (const auto& [k, v] : ini) {
        if (k == "alpha") c.initial.alpha = to_double(k, v);
        else if (k == "amplitude") c.initial.amplitude = to_double(k, v);
        else if (k == "velocity.kind") {
            const auto s = trim(v);
            if (s == "zero") c.initial.velocity.kind = VelocityKind::zero;
            else if (s == "bump") c.initial.velocity.kind = VelocityKind::bump;
            else if (s == "integral_plus_bump") c.initial.velocity.kind = VelocityKind::integral_plus_bump;
            else throw ConfigError("config: velocity.kind must be zero, bump or integral_plus_bump");
        } else if (k == "velocity.center") c.initial.velocity.bump.center = to_double(k, v);
        else if (k == "velocity.radius") c.initial.velocity.bump.radius = to_double(k, v);
        else if (k == "velocity.amplitude") c.initial.velocity.bump.amplitude = to_double(k, v);
    }
    auto& so = sections["solver"];
    check_keys("solver", so, {"n", "dt", "t_end", "theta", "picard_tol", "picard_max", "rho_floor"});
    for (const auto& [k, v] : so) {
        if (k == "n") {
            const auto n = to_int(k, v);
            if (n < 16) throw ConfigError("config: solver.n must be at least 16");
            c.solver.n = static_cast<std::size_t>(n);
        } else if (k == "dt") c.solver.dt = to_double(k, v);
        else if (k == "t_end") c.solver.t_end = to_double(k, v);
        else if (k == "theta") c.solver.theta = to_double(k, v);
        else if (k == "picard_tol") c.solver.picard_tol = to_double(k, v);
        else if (k == "picard_max") c.solver.picard_max = static_cast<int>(to_int(k, v));
        else if (k == "rho_floor") c.solver.rho_floor = to_double(k, v);
    }
    auto& out = sections["output"];
    check_keys("output", out, {"dir", "snapshot_times", "eulerian_resolution", "plots"});
    for (const auto& [k, v] : out) {
        if (k == "dir") c.output.dir = trim(v);
        else if (k == "snapshot_times") {
            c.output.snapshot_times.clear();
            for (const auto& item : split_list(v)) c.output.snapshot_times.push_back(to_double(k, item));
        } else if (k == "eulerian_resolution") {
            const auto m = to_int(k, v);
            if (m < 2) throw ConfigError("config: output.eulerian_resolution must be >= 2");
            c.output.eulerian_resolution = static_cast<std::size_t>(m);
        } else if (k == "plots") c.output.plots = to_bool(k, v);
    }
    auto& ch = sections["checks"];
    check_keys("checks", ch,
               {"enabled", "momentum_tol", "energy_slack", "eta_x_lower", "eta_x_upper", "endpoint_tol",
                "neumann_tol", "slope_growth", "mass_tol", "kinetic_tol", "v_growth", "h_growth",
                "kinematics_tol"});
    auto& k = c.checks;
    const std::map<std::string, double*> tol = {
        {"momentum_tol", &k.momentum_tol}, {"energy_slack", &k.energy_slack}, {"eta_x_lower", &k.eta_x_lower},
        {"eta_x_upper", &k.eta_x_upper},   {"endpoint_tol", &k.endpoint_tol}, {"neumann_tol", &k.neumann_tol},
        {"slope_growth", &k.slope_growth}, {"mass_tol", &k.mass_tol},         {"kinetic_tol", &k.kinetic_tol},
        {"v_growth", &k.v_growth},         {"h_growth", &k.h_growth},         {"kinematics_tol", &k.kinematics_tol}};
    for (const auto& [key, v] : ch) {
        if (key == "enabled") k.enabled = split_list(v);
        else *tol.at(key) = to_double(key, v);
    }
    validate(c);
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string render_config(const RunConfig& c) {
    const auto& p = c.initial;
    const auto& s = c.solver;
    const auto& o = c.output;
    const auto& k = c.checks;
    std::string r;
    r += "[initial]\n";
    r += fmt::format("alpha = {}\namplitude = {}\nvelocity.kind = {}\n", p.alpha, p.amplitude,
                     velocity_kind_name(p.velocity.kind));
    r += fmt::format("velocity.center = {}\nvelocity.radius = {}\nvelocity.amplitude = {}\n", p.velocity.bump.center,
                     p.velocity.bump.radius, p.velocity.bump.amplitude);
    r += "\n[solver]\n";
    r += fmt::format("n = {}\ndt = {}\nt_end = {}\ntheta = {}\npicard_tol = {}\npicard_max = {}\nrho_floor = {}\n", s.n,
                     s.dt, s.t_end, s.theta, s.picard_tol, s.picard_max, s.rho_floor);
    r += "\n[output]\n";
    r += fmt::format("dir = {}\nsnapshot_times = {}\neulerian_resolution = {}\nplots = {}\n", o.dir,
                     fmt::join(o.snapshot_times, ", "), o.eulerian_resolution, o.plots ? "true" : "false");
    r += "\n[checks]\n";
    r += fmt::format("enabled = {}\n", fmt::join(k.enabled, ", "));
    r += fmt::format("momentum_tol = {}\nenergy_slack = {}\neta_x_lower = {}\neta_x_upper = {}\n", k.momentum_tol,
                     k.energy_slack, k.eta_x_lower, k.eta_x_upper);
    r += fmt::format("endpoint_tol = {}\nneumann_tol = {}\nslope_growth = {}\nmass_tol = {}\n", k.endpoint_tol,
                     k.neumann_tol, k.slope_growth, k.mass_tol);
    r += fmt::format("kinetic_tol = {}\nv_growth = {}\nh_growth = {}\nkinematics_tol = {}\n", k.kinetic_tol,
                     k.v_growth, k.h_growth, k.kinematics_tol);
    return r;
}

}  // namespace svfb
