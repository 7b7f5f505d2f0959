#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "svfb/commands.hpp"
#include "svfb/output.hpp"

using namespace svfb;
namespace fs = std::filesystem;

namespace {

RunConfig small(const std::string& dir) {
    auto c = parse_config(R"(
[initial]
velocity.kind = bump
[solver]
n = 101
dt = 1e-3
t_end = 0.05
[output]
snapshot_times = 0, 0.05
eulerian_resolution = 101
[checks]
# the endpoint |U_x| is O(h); n = 101 needs a coarser bound than the default
neumann_tol = 5e-2
)");
    c.output.dir = dir;
    return c;
}

}  // namespace

TEST_CASE("simulate writes outputs and passes its checks") {
    const fs::path dir = fs::temp_directory_path() / "svfb_unit_sim";
    fs::remove_all(dir);
    std::ostringstream log;
    const auto o = simulate(small(dir.string()), log);
    CHECK(o.exit_code == exit_ok);
    CHECK(fs::exists(dir / "diagnostics.csv"));
    CHECK(fs::exists(dir / "summary.csv"));
    CHECK(fs::exists(dir / "energy.svg"));
    const auto t = read_csv((dir / "diagnostics.csv").string());
    CHECK(t.rows.size() == 51);
    CHECK(t.columns == record_columns());
    for (const auto& c : o.checks) {
        CAPTURE(c.name);
        CHECK(c.passed);
    }
    fs::remove_all(dir);
}

TEST_CASE("simulate with t_end = 0 writes one row") {
    const fs::path dir = fs::temp_directory_path() / "svfb_unit_sim0";
    auto c = small(dir.string());
    c.solver.t_end = 0.0;
    c.output.snapshot_times = {0.0};
    std::ostringstream log;
    const auto o = simulate(c, log);
    CHECK(o.exit_code == exit_ok);
    CHECK(read_csv((dir / "diagnostics.csv").string()).rows.size() == 1);
    fs::remove_all(dir);
}

TEST_CASE("simulate never silently succeeds with a huge step") {
    const fs::path dir = fs::temp_directory_path() / "svfb_unit_simbig";
    for (double theta : {1.0, 0.5}) {
        auto c = small(dir.string());
        c.solver.dt = 1.0;
        c.solver.t_end = 1.0;
        c.solver.theta = theta;
        c.output.snapshot_times = {0.0};
        std::ostringstream log;
        const auto o = simulate(c, log);
        CAPTURE(theta);
        CHECK((o.exit_code == exit_check_failed || o.exit_code == exit_solver_abort));
        CHECK(fs::exists(dir / "summary.csv"));
    }
    fs::remove_all(dir);
}

TEST_CASE("simulate_file maps config errors to exit 2") {
    std::ostringstream log;
    CHECK(simulate_file("/nonexistent/x.ini", log).exit_code == exit_config_error);
}

TEST_CASE("run_galerkin") {
    GalerkinOptions g;
    g.t_end = 0.02;
    std::ostringstream log;
    const auto o = run_galerkin(g, log);
    CHECK(o.exit_code == exit_ok);
    CHECK(o.monotone);
    REQUIRE(o.discrepancies.size() == 3);
    CHECK(o.discrepancies.back().second <= 1e-3);
    g.tol = 1e-12;
    CHECK(run_galerkin(g, log).exit_code == exit_check_failed);
}

TEST_CASE("run_mms exit codes") {
    std::ostringstream log;
    MmsOptions m;
    m.study.t_end = 0.2;
    int code = -1;
    run_mms(m, log, code);
    CHECK(code == exit_ok);
    m.study.wrong_forcing = true;
    run_mms(m, log, code);
    CHECK(code == exit_check_failed);
}
