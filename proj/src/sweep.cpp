#include "wgshift/sweep.hpp"

#include "wgshift/errors.hpp"
#include "wgshift/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>
#include <ostream>
#include <sstream>

namespace wgshift {

const std::vector<std::string>& sweepable_keys()
{
    static const std::vector<std::string> keys = {"omega_th", "kappa", "atom_x", "atom_y", "Dy", "n0"};
    return keys;
}

void SweepSpec::validate() const
{
    const auto& keys = sweepable_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
        throw ConfigError(key, "not a sweepable key");
    if (count < 2)
        throw ConfigError("points", "a sweep needs at least 2 points");
    if (!(min < max))
        throw ConfigError("range", "range minimum must be below its maximum");
    if (jobs < 1)
        throw ConfigError("jobs", "must be at least 1");
}

double SweepSpec::value_at(int i) const noexcept
{
    const double t = static_cast<double>(i) / static_cast<double>(count - 1);
    return min * (1.0 - t) + max * t;
}

RunManifest RunManifest::for_config(const std::string& command, const SimulationConfig& cfg)
{
    RunManifest m;
    m.command = command;
    m.inputs = cfg.entries;
    m.resolved = cfg.resolved();
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[64];
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    m.timestamp = buf;
    return m;
}

void RunManifest::write(std::ostream& out) const
{
    out << "# wgshift " << kToolVersion << " " << command << "\n";
    out << "# timestamp: " << timestamp << "\n";
    for (const auto& [k, v] : inputs)
        out << "# config: " << k << " = " << v << "\n";
    for (const auto& [k, v] : resolved)
        out << "# resolved: " << k << " = " << v << "\n";
    for (const std::string& e : extra)
        out << "# " << e << "\n";
    for (const PointStatus& s : status)
        out << "# status: " << s.index << " " << (s.ok ? "ok" : "failed: " + s.message) << "\n";
}

PointResult evaluate_point(const SimulationConfig& cfg, PointMethods methods)
{
    PointResult p;
    p.omega_th = cfg.omega_th;
    p.Dy = cfg.geometry.Dy;
    p.branches = enumerate_branches(cfg.geometry);
    const double coupling = cfg.atom.coupling_over_gamma();
    const NumericOptions opts = cfg.numeric_options();
    for (const GuidedBranch& b : p.branches) {
        if (methods.numeric)
            p.numeric.push_back(lightshift_numeric(b, cfg.atom.position, cfg.geometry.kappa, coupling, opts));
        if (methods.analytic)
            p.analytic.push_back(lightshift_analytic(b, cfg.atom.position, cfg.geometry.kappa, coupling,
                                                     AnalyticForm::contour, cfg.s_convention, cfg.units));
    }
    return p;
}

SweepResult run_shift_sweep(const SimulationConfig& base, const SweepSpec& spec, PointMethods methods)
{
    spec.validate();
    SweepResult result;
    result.spec = spec;
    const auto n = static_cast<std::size_t>(spec.count);
    std::vector<PointResult> points(n);
    result.status.resize(n);

    ConfigEntries entries = base.entries;
    if (spec.key == "omega_th")
        entries = without_entry(entries, "Dy");
    else if (spec.key == "Dy")
        entries = without_entry(entries, "omega_th");

    parallel_for(n, spec.jobs, [&](std::size_t i) {
        PointStatus& st = result.status[i];
        st.index = i;
        try {
            const double v = spec.value_at(static_cast<int>(i));
            const SimulationConfig cfg = resolve_config(with_entry(entries, spec.key, format_double(v)));
            points[i] = evaluate_point(cfg, methods);
        } catch (const std::exception& e) {
            st.ok = false;
            st.message = e.what();
        }
    });

    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < n; ++i) {
        const PointResult& p = points[i];
        auto emit = [&](const std::vector<ComplexShift>& shifts, ShiftMethod method) {
            SweepRow row;
            row.swept = spec.value_at(static_cast<int>(i));
            row.method = method;
            if (!result.status[i].ok) {
                row.omega_th = row.Dy = nan;
                row.L0 = row.L1 = cplx(nan, nan);
            } else {
                row.omega_th = p.omega_th;
                row.Dy = p.Dy;
                row.L0 = shifts.size() > 0 ? shifts[0].value : cplx(nan, nan);
                row.L1 = shifts.size() > 1 ? shifts[1].value : cplx(nan, nan);
            }
            result.rows.push_back(row);
        };
        if (methods.numeric)
            emit(p.numeric, ShiftMethod::numeric);
        if (methods.analytic)
            emit(p.analytic, ShiftMethod::analytic);
    }
    return result;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result)
{
    const bool extra = result.spec.key != "omega_th";
    if (extra)
        out << result.spec.key << ",";
    out << "omega_th_over_omegap,Dy_over_lambdap,ReL0_over_Gamma,ImL0_over_Gamma,ReL1_over_Gamma,ImL1_over_Gamma,method\n";
    for (const SweepRow& r : result.rows) {
        if (extra)
            out << format_double(r.swept) << ",";
        out << format_double(r.omega_th) << "," << format_double(UnitSystem::to_lambda_p(r.Dy)) << ","
            << format_double(r.L0.real()) << "," << format_double(r.L0.imag()) << "," << format_double(r.L1.real())
            << "," << format_double(r.L1.imag()) << "," << to_string(r.method) << "\n";
    }
}

std::string csv_body(const std::string& text)
{
    std::istringstream in(text);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line))
        if (line.empty() || line[0] != '#')
            out << line << "\n";
    return out.str();
}

}  // namespace wgshift
