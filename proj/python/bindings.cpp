#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <stdexcept>

#include "svfb/commands.hpp"
#include "svfb/config.hpp"
#include "svfb/diagnostics.hpp"
#include "svfb/galerkin.hpp"
#include "svfb/inequality.hpp"
#include "svfb/initial_data.hpp"
#include "svfb/mms.hpp"
#include "svfb/output.hpp"
#include "svfb/solver.hpp"

namespace py = pybind11;
using namespace svfb;

namespace {

py::array_t<double> array(const std::vector<double>& v) { return py::array_t<double>(v.size(), v.data()); }

VelocityKind velocity_kind(const std::string& name) {
    if (name == "zero") return VelocityKind::zero;
    if (name == "bump") return VelocityKind::bump;
    if (name == "integral_plus_bump") return VelocityKind::integral_plus_bump;
    throw py::value_error("velocity must be zero, bump or integral_plus_bump");
}

InitialData initial_data(std::size_t n, double alpha, double amplitude, const std::string& velocity, double center,
                         double radius, double bump_amplitude) {
    ProfileSpec s;
    s.alpha = alpha;
    s.amplitude = amplitude;
    s.velocity = {velocity_kind(velocity), {center, radius, bump_amplitude}};
    return make_initial_data(s, make_grid(n));
}

SolverConfig solver_config(const InitialData& d, double dt, double t_end, double theta) {
    SolverConfig c;
    c.n = d.grid.n;
    c.dt = dt;
    c.t_end = t_end;
    c.theta = theta;
    return c;
}

py::dict state_dict(const FluidState& s) {
    py::dict r;
    r["t"] = s.t;
    r["U"] = array(s.U);
    r["eta"] = array(s.eta);
    r["eta_x"] = array(s.eta_x);
    return r;
}

py::dict solve(const InitialData& d, double dt, double t_end, double theta) {
    std::vector<DiagnosticsRecord> records;
    FluidState prev;
    bool has_prev = false;
    const auto final_state = run(d, solver_config(d, dt, t_end, theta), [&](const FluidState& s, const StepReport&) {
        records.push_back(make_record(s, has_prev ? &prev : nullptr, d));
        prev = s;
        has_prev = true;
    });
    py::dict diag;
    const auto& cols = record_columns();
    for (std::size_t c = 0; c < cols.size(); ++c) {
        std::vector<double> col;
        col.reserve(records.size());
        for (const auto& r : records) col.push_back(record_values(r)[c]);
        diag[py::str(cols[c])] = array(col);
    }
    py::dict out = state_dict(final_state);
    out["diagnostics"] = diag;
    return out;
}

py::dict simulate_config(const std::string& text, const std::string& out_dir) {
    RunConfig cfg = parse_config(text);
    cfg.source = text;
    if (!out_dir.empty()) cfg.output.dir = out_dir;
    std::ostringstream log;
    const auto o = simulate(cfg, log);
    py::list checks;
    for (const auto& c : o.checks) {
        py::dict d;
        d["name"] = c.name;
        d["value"] = c.value;
        d["threshold"] = c.threshold;
        d["passed"] = c.passed;
        d["note"] = c.note;
        checks.append(d);
    }
    py::dict r;
    r["exit_code"] = o.exit_code;
    r["message"] = o.message;
    r["checks"] = checks;
    r["files"] = o.files;
    r["log"] = log.str();
    return r;
}

}  // namespace

PYBIND11_MODULE(_svfb, m) {
    m.doc() = "Lagrangian vacuum free-boundary solver and verification suite";
    m.def("version", &version_string);

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

    py::class_<Grid>(m, "Grid")
        .def_readonly("n", &Grid::n)
        .def_readonly("h", &Grid::h)
        .def_property_readonly("nodes", [](const Grid& g) { return array(g.nodes); })
        .def_property_readonly("faces", [](const Grid& g) { return array(g.faces); })
        .def_property_readonly("weights", [](const Grid& g) { return array(g.weights); });
    m.def("make_grid", &make_grid, py::arg("n"));
    m.def("distance", &distance, py::arg("x"));

    py::class_<InitialData>(m, "InitialData")
        .def_property_readonly("grid", [](const InitialData& d) { return d.grid; })
        .def_readonly("alpha", &InitialData::alpha)
        .def_readonly("amplitude", &InitialData::amplitude)
        .def_readonly("epsilon0", &InitialData::epsilon0)
        .def_readonly("C1", &InitialData::C1)
        .def_readonly("C2", &InitialData::C2)
        .def_property_readonly("rho0", [](const InitialData& d) { return array(d.rho0); })
        .def_property_readonly("phi0", [](const InitialData& d) { return array(d.phi0); })
        .def_property_readonly("u0", [](const InitialData& d) { return array(d.u0); })
        .def_property_readonly("U_t", [](const InitialData& d) { return array(initial_time_derivatives(d).Ut); });
    m.def("initial_data", &initial_data, py::arg("n") = 401, py::arg("alpha") = 1.0, py::arg("amplitude") = 0.0,
          py::arg("velocity") = "zero", py::arg("center") = 0.5, py::arg("radius") = 0.2,
          py::arg("bump_amplitude") = 0.5, "Profile rho0 = C (x(1-x))^(1/alpha); amplitude <= 0 selects unit mass.");
    m.def(
        "check_compatibility",
        [](const InitialData& d) {
            const auto r = check_compatibility(d);
            py::dict out;
            out["passes"] = r.passes;
            out["neumann_residual"] = r.neumann_residual;
            out["condition"] = r.condition;
            out["epsilon0"] = r.epsilon0;
            return out;
        },
        py::arg("data"));

    m.def("solve", &solve, py::arg("data"), py::arg("dt") = 1e-4, py::arg("t_end") = 1.0, py::arg("theta") = 1.0,
          "Runs the solver; returns the final state and per-step diagnostics columns.");
    m.def("simulate", &simulate_config, py::arg("config_text"), py::arg("out_dir") = "",
          "Runs a configuration given as INI text; returns exit code and checks.");

    m.def(
        "cross_validate",
        [](const InitialData& d, std::size_t modes, double dt, double t_end, double theta, bool pressure) {
            const auto cv = cross_validate(d, identity_metric(), modes, solver_config(d, dt, t_end, theta), pressure);
            py::dict out;
            out["discrepancy"] = cv.discrepancy;
            out["final_discrepancy"] = cv.final_discrepancy;
            out["times"] = array(cv.times);
            out["per_time"] = array(cv.per_time);
            return out;
        },
        py::arg("data"), py::arg("modes") = 32, py::arg("dt") = 1e-4, py::arg("t_end") = 0.1, py::arg("theta") = 0.5,
        py::arg("pressure") = true);

    m.def(
        "inequality_suite",
        [](std::size_t n, double alpha) {
            py::list out;
            for (const auto& r : run_inequality_suite(n, alpha)) {
                py::dict d;
                d["case"] = r.case_id;
                d["params"] = r.params;
                d["max_ratio"] = r.max_ratio;
                d["argmax"] = r.argmax;
                d["ratio_at_2n"] = r.ratio_at_2n;
                d["stable"] = r.stable;
                d["notes"] = r.notes;
                out.append(d);
            }
            return out;
        },
        py::arg("n") = 401, py::arg("alpha") = 1.0);

    m.def(
        "mms_study",
        [](double alpha, double t_end, bool zero, bool wrong_forcing) {
            MmsStudyConfig c;
            c.alpha = alpha;
            c.t_end = t_end;
            c.zero_solution = zero;
            c.wrong_forcing = wrong_forcing;
            const auto r = mms_study(c);
            py::dict out;
            out["dt_errors"] = array(r.dt_errors);
            out["h_errors"] = array(r.h_errors);
            out["temporal_order"] = r.temporal_order;
            out["spatial_order"] = r.spatial_order;
            out["converged"] = r.converged;
            return out;
        },
        py::arg("alpha") = 1.0, py::arg("t_end") = 0.5, py::arg("zero") = false, py::arg("wrong_forcing") = false);
}
