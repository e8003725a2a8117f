#include "wgshift/config.hpp"
#include "wgshift/errors.hpp"
#include "wgshift/field.hpp"
#include "wgshift/lightshift.hpp"
#include "wgshift/modesolver.hpp"
#include "wgshift/parallel.hpp"
#include "wgshift/sweep.hpp"
#include "wgshift/validate.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace wgshift;

namespace {

enum Exit { kOk = 0, kValidationFailed = 1, kUsage = 2, kNumeric = 3 };

struct Common {
    std::string config_path;
    std::vector<std::string> overrides;  // key=value
    std::string out_path;
    int jobs = 0;
    std::optional<int> points;
    std::string range;
};

class UsageError : public Error {
public:
    using Error::Error;
};

std::pair<double, double> parse_range(const std::string& text)
{
    const auto colon = text.find(':', 1);  // skip a leading sign
    if (colon == std::string::npos)
        throw UsageError("--range expects MIN:MAX, got '" + text + "'");
    auto num = [&](const std::string& s) {
        char* end = nullptr;
        const double v = std::strtod(s.c_str(), &end);
        if (s.empty() || *end != '\0' || !std::isfinite(v))
            throw UsageError("--range: not a number: '" + s + "'");
        return v;
    };
    const double lo = num(text.substr(0, colon));
    const double hi = num(text.substr(colon + 1));
    if (!(lo < hi))
        throw UsageError("--range: MIN must be below MAX");
    return {lo, hi};
}

SimulationConfig load(const Common& c)
{
    ConfigEntries entries;
    std::string path = c.config_path;
    if (path.empty())
        if (const char* env = std::getenv(kConfigEnvVar))
            path = env;
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in)
            throw ConfigError("config", "cannot open '" + path + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        entries = parse_config_text(ss.str());
    }
    for (const std::string& o : c.overrides) {
        const auto eq = o.find('=');
        if (eq == std::string::npos)
            throw UsageError("--set expects key=value, got '" + o + "'");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        const std::string key = trim(o.substr(0, eq));
        std::string value = trim(o.substr(eq + 1));
        // An override of one threshold specification replaces the other.
        if (key == "Dy")
            entries = without_entry(entries, "omega_th");
        if (key == "omega_th")
            entries = without_entry(entries, "Dy");
        entries = with_entry(entries, key, value);
    }
    return resolve_config(entries);
}

void emit(const Common& c, const std::string& text)
{
    if (c.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(c.out_path, std::ios::binary);
    if (!out)
        throw UsageError("cannot write '" + c.out_path + "'");
    out << text;
}

std::string fmt(double v) { return format_double(v); }

int cmd_dispersion(const Common& c)
{
    const SimulationConfig cfg = load(c);
    const int n = c.points.value_or(301);
    if (n < 2)
        throw UsageError("--points must be at least 2 for a k grid");
    const auto [lo, hi] = c.range.empty() ? std::pair{0.0, 3.0 * cfg.geometry.n0} : parse_range(c.range);
    std::vector<double> ks(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / (n - 1);
        ks[static_cast<std::size_t>(i)] = lo * (1.0 - t) + hi * t;  // k_p = omega_p/c = 1
    }

    const auto branches = enumerate_branches(cfg.geometry);
    const DispersionModel models[] = {DispersionModel::constant_q, DispersionModel::exact};
    std::vector<DispersionCurve> curves(branches.size() * 2);
    parallel_for(curves.size(), c.jobs, [&](std::size_t i) {
        curves[i] = dispersion_curve(branches[i / 2], ks, models[i % 2]);
    });

    std::ostringstream out;
    RunManifest m = RunManifest::for_config("dispersion --points " + std::to_string(n) + " --range " + fmt(lo) +
                                                ":" + fmt(hi),
                                            cfg);
    m.extra.push_back("branches: " + std::to_string(branches.size()));
    m.write(out);
    out << "k_over_kp,omega_over_omegap,branch,model\n";
    for (const DispersionCurve& curve : curves)
        for (const auto& [k, w] : curve.points)
            out << fmt(k) << "," << fmt(w) << "," << curve.branch << "," << to_string(curve.model) << "\n";
    emit(c, out.str());
    return kOk;
}

int cmd_sweep(const Common& c, const std::string& key)
{
    const SimulationConfig cfg = load(c);
    SweepSpec spec;
    spec.key = key;
    spec.count = c.points.value_or(21);
    spec.jobs = c.jobs;
    if (!c.range.empty())
        std::tie(spec.min, spec.max) = parse_range(c.range);
    else if (key != "omega_th")
        throw UsageError("--range is required when sweeping '" + key + "'");
    spec.validate();

    const SweepResult r = run_shift_sweep(cfg, spec);
    std::ostringstream out;
    RunManifest m = RunManifest::for_config("lightshift-sweep --key " + key + " --points " +
                                                std::to_string(spec.count) + " --range " + fmt(spec.min) + ":" +
                                                fmt(spec.max),
                                            cfg);
    m.status = r.status;
    m.write(out);
    write_sweep_csv(out, r);
    emit(c, out.str());

    int failed = 0;
    for (const PointStatus& s : r.status)
        if (!s.ok) {
            ++failed;
            std::cerr << "wgshift: point " << s.index << " failed: " << s.message << "\n";
        }
    return failed ? kNumeric : kOk;
}

int cmd_field_map(const Common& c)
{
    SimulationConfig cfg = load(c);
    if (c.points)
        cfg.field.samples = static_cast<std::size_t>(*c.points);
    if (!c.range.empty()) {
        const auto [lo, hi] = parse_range(c.range);
        cfg.field.z_min = UnitSystem::from_lambda_p(lo);
        cfg.field.z_max = UnitSystem::from_lambda_p(hi);
    }

    const auto branches = enumerate_branches(cfg.geometry);
    std::vector<cplx> shifts;
    for (const GuidedBranch& b : branches)
        shifts.push_back(lightshift_analytic(b, cfg.atom.position, cfg.geometry.kappa, cfg.atom.coupling_over_gamma(),
                                             AnalyticForm::contour, cfg.s_convention, cfg.units)
                             .value);
    const ScatteringModel model = make_scattering_model(branches, shifts, cfg.geometry.kappa, cfg.atom.delta_a,
                                                        cfg.atom.position, cfg.s_convention, cfg.units);

    const Geometry& g = cfg.geometry;
    const double xs[2] = {0.0, 0.5 * g.Dx};
    std::vector<FieldLine> lines;
    for (double x : xs)
        lines.push_back(intensity_line(model, x, 0.5 * g.Dy, cfg.field.z_min, cfg.field.z_max, cfg.field.samples));

    std::ostringstream out;
    RunManifest m = RunManifest::for_config(
        "field-map --points " + std::to_string(cfg.field.samples) + " --range " +
            fmt(UnitSystem::to_lambda_p(cfg.field.z_min)) + ":" + fmt(UnitSystem::to_lambda_p(cfg.field.z_max)),
        cfg);
    for (std::size_t n = 0; n < shifts.size(); ++n)
        m.extra.push_back("L" + std::to_string(n) + "_over_Gamma: " + fmt(shifts[n].real()) + " " +
                          fmt(shifts[n].imag()) + "i");
    m.write(out);
    out << "z_over_lambdap,intensity,x_over_Dx,y_over_Dy\n";
    for (const FieldLine& line : lines)
        for (std::size_t i = 0; i < line.z.size(); ++i)
            out << fmt(UnitSystem::to_lambda_p(line.z[i])) << "," << fmt(line.intensity[i]) << ","
                << fmt(line.x / g.Dx) << "," << fmt(line.y / g.Dy) << "\n";

    // Analysis footer: line a is on axis (x = 0), line b at the surface (x = Dx/2).
    auto length = [&](const FieldLine& line, DecaySelector sel) -> std::string {
        try {
            return fmt(UnitSystem::to_lambda_p(fit_decay_length(line, sel)));
        } catch (const Error& e) {
            return std::string("nan (") + e.what() + ")";
        }
    };
    const double d0 = 1.0 / (g.n0 * g.kappa);
    const double d1 = 1.0 / (g.n0 * std::sqrt(g.kappa));
    out << "# analysis:\n";
    out << "# line_a decay_length_over_lambdap = " << length(lines[0], DecaySelector::slowest) << "\n";
    out << "# line_a expected_c_over_n0_kappa_over_lambdap = " << fmt(UnitSystem::to_lambda_p(d0)) << "\n";
    out << "# line_b decay_length_over_lambdap = " << length(lines[1], DecaySelector::fastest) << "\n";
    out << "# line_b expected_c_over_n0_sqrt_kappa_omegap_over_lambdap = " << fmt(UnitSystem::to_lambda_p(d1))
        << "\n";
    const char* names[2] = {"line_a", "line_b"};
    for (std::size_t i = 0; i < lines.size(); ++i) {
        try {
            const Visibility v = fringe_visibility(lines[i]);
            out << "# " << names[i] << " visibility_upstream = " << fmt(v.upstream) << "\n";
            out << "# " << names[i] << " visibility_downstream = " << fmt(v.downstream) << "\n";
        } catch (const Error& e) {
            out << "# " << names[i] << " visibility = nan (" << e.what() << ")\n";
        }
    }
    emit(c, out.str());
    return kOk;
}

int cmd_validate(const Common& c)
{
    const SimulationConfig cfg = load(c);
    const ValidationReport rep = run_validation(cfg, c.jobs);
    std::ostringstream out;
    rep.print(out);
    emit(c, out.str());
    return rep.passed() ? kOk : kValidationFailed;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Light shifts of an atom in a metal-coated dielectric waveguide near a mode threshold"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    Common common;
    common.jobs = default_jobs();
    auto add_common = [&](CLI::App* sub, bool with_grid) {
        sub->add_option("--config", common.config_path,
                        std::string("Config file (key = value); defaults to $") + kConfigEnvVar);
        sub->add_option("--set", common.overrides, "Override a config entry, key=value (repeatable)");
        sub->add_option("--out", common.out_path, "Output path (default: stdout)");
        sub->add_option("--jobs", common.jobs, "Worker threads")->check(CLI::PositiveNumber);
        if (with_grid) {
            sub->add_option("--points", common.points, "Number of grid points");
            sub->add_option("--range", common.range, "Grid range MIN:MAX");
        }
    };

    auto* disp = app.add_subcommand("dispersion", "Branch dispersion, both models (k in omega_p/c)");
    add_common(disp, true);
    std::string key = "omega_th";
    auto* sweep = app.add_subcommand("lightshift-sweep", "L0 and L1 over a parameter sweep, both methods");
    add_common(sweep, true);
    sweep->add_option("--key", key, "Swept config key")->check(CLI::IsMember(sweepable_keys()));
    auto* field = app.add_subcommand("field-map", "Intensity along z on axis and at the surface (z in lambda_p)");
    add_common(field, true);
    auto* val = app.add_subcommand("validate", "Cross-check analytic and numeric shifts and scaling laws");
    add_common(val, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*disp)
            return cmd_dispersion(common);
        if (*sweep)
            return cmd_sweep(common, key);
        if (*field)
            return cmd_field_map(common);
        return cmd_validate(common);
    } catch (const UsageError& e) {
        std::cerr << "wgshift: usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const ConfigError& e) {
        std::cerr << "wgshift: config error [" << e.key() << "]: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "wgshift: numeric failure: " << e.what() << "\n";
        return kNumeric;
    }
}
