#include "wgshift/errors.hpp"
#include "wgshift/sweep.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace wgshift;

namespace {

std::string csv_of(const SimulationConfig& cfg, const SweepSpec& spec)
{
    const SweepResult r = run_shift_sweep(cfg, spec);
    std::ostringstream out;
    RunManifest m = RunManifest::for_config("lightshift-sweep", cfg);
    m.status = r.status;
    m.write(out);
    write_sweep_csv(out, r);
    return out.str();
}

}  // namespace

TEST_SUITE("sweep") {

TEST_CASE("sweep range validation")
{
    SweepSpec s;
    CHECK_NOTHROW(s.validate());
    s.count = 1;
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s = SweepSpec{};
    s.min = 1.1;
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s = SweepSpec{};
    s.key = "lambda_p";
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s = SweepSpec{};
    CHECK(s.value_at(0) == 0.98);
    CHECK(s.value_at(20) == 1.02);
    CHECK(s.value_at(10) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("a sweep point matches a standalone evaluation bit for bit")
{
    SweepSpec s;
    s.min = 1.0;
    s.max = 1.01;
    s.count = 2;
    const SweepResult r = run_shift_sweep(default_config(), s);
    REQUIRE(r.rows.size() == 4);
    const PointResult p = evaluate_point(default_config());
    CHECK(r.rows[0].method == ShiftMethod::numeric);
    CHECK(r.rows[0].L0 == p.numeric[0].value);
    CHECK(r.rows[0].L1 == p.numeric[1].value);
    CHECK(r.rows[1].method == ShiftMethod::analytic);
    CHECK(r.rows[1].L1 == p.analytic[1].value);
    CHECK(r.rows[0].Dy == default_config().geometry.Dy);
}

TEST_CASE("output is independent of the worker count")
{
    SweepSpec s;
    s.count = 9;
    s.jobs = 1;
    const std::string one = csv_body(csv_of(default_config(), s));
    s.jobs = 4;
    const std::string four = csv_body(csv_of(default_config(), s));
    CHECK(one == four);
    CHECK(one.rfind("omega_th_over_omegap,Dy_over_lambdap,ReL0_over_Gamma,ImL0_over_Gamma,ReL1_over_Gamma,"
                    "ImL1_over_Gamma,method\n",
                    0) == 0);
}

TEST_CASE("the manifest header alone reproduces the run")
{
    const SimulationConfig cfg = resolve_config({{"n0", "1.6"}, {"kappa", "2e-4"}, {"atom_x", "0.4"}});
    SweepSpec s;
    s.count = 5;
    const std::string first = csv_of(cfg, s);
    const SimulationConfig again = resolve_config(parse_config_text(first));
    CHECK(again.entries == cfg.entries);
    CHECK(csv_body(csv_of(again, s)) == csv_body(first));
}

TEST_CASE("failed points are recorded and the run continues")
{
    SweepSpec s;
    s.key = "kappa";
    s.min = -1e-3;
    s.max = 1e-3;
    s.count = 2;
    const SweepResult r = run_shift_sweep(default_config(), s);
    REQUIRE(r.status.size() == 2);
    CHECK_FALSE(r.status[0].ok);
    CHECK(r.status[0].message.find("kappa") != std::string::npos);
    CHECK(r.status[1].ok);
    CHECK(std::isnan(r.rows[0].L0.real()));
    CHECK(std::isfinite(r.rows[2].L0.real()));
    std::ostringstream out;
    write_sweep_csv(out, r);
    CHECK(out.str().rfind("kappa,omega_th_over_omegap", 0) == 0);
}

}
