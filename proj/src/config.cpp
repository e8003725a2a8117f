#include "wgshift/config.hpp"

#include "wgshift/errors.hpp"
#include "wgshift/modesolver.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace wgshift {

namespace {

std::string trim(const std::string& s)
{
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
        ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
        --b;
    return s.substr(a, b - a);
}

struct Quantity {
    double number;
    std::string suffix;
};

Quantity split_quantity(const std::string& key, const std::string& text)
{
    const std::string t = trim(text);
    if (t.empty())
        throw ConfigError(key, "empty value");
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end == t.c_str())
        throw ConfigError(key, "'" + t + "' is not a number");
    const std::string suffix = trim(std::string(end));
    if (!std::isfinite(v))
        throw ConfigError(key, "value must be finite");
    return {v, suffix};
}

double parse_plain(const std::string& key, const std::string& text)
{
    const Quantity q = split_quantity(key, text);
    if (!q.suffix.empty())
        throw ConfigError(key, "unexpected unit suffix '" + q.suffix + "'");
    return q.number;
}

long parse_integer(const std::string& key, const std::string& text)
{
    const std::string t = trim(text);
    char* end = nullptr;
    const long v = std::strtol(t.c_str(), &end, 10);
    if (end == t.c_str() || !trim(std::string(end)).empty())
        throw ConfigError(key, "'" + t + "' is not an integer");
    return v;
}

std::optional<double> metres_per(const std::string& suffix)
{
    if (suffix == "m")
        return 1.0;
    if (suffix == "mm")
        return 1e-3;
    if (suffix == "um")
        return 1e-6;
    if (suffix == "nm")
        return 1e-9;
    return std::nullopt;
}

// Suffixes denote cyclic frequency (converted to angular) or rad/s.
std::optional<double> rad_per_s_per(const std::string& suffix)
{
    if (suffix == "rad/s")
        return 1.0;
    if (suffix == "Hz")
        return kTwoPi;
    if (suffix == "kHz")
        return kTwoPi * 1e3;
    if (suffix == "MHz")
        return kTwoPi * 1e6;
    if (suffix == "GHz")
        return kTwoPi * 1e9;
    if (suffix == "THz")
        return kTwoPi * 1e12;
    return std::nullopt;
}

// Plain numbers are in units of lambda_p; SI suffixes are converted.
double parse_length(const std::string& key, const std::string& text, const UnitSystem& units)
{
    const Quantity q = split_quantity(key, text);
    if (q.suffix.empty())
        return UnitSystem::from_lambda_p(q.number);
    if (auto m = metres_per(q.suffix))
        return units.length_to_internal(q.number * *m);
    throw ConfigError(key, "unknown length unit '" + q.suffix + "'");
}

// Plain numbers are in units of `plain_unit` (omega_p = 1 internally).
double parse_rate(const std::string& key, const std::string& text, const UnitSystem& units, double plain_unit = 1.0)
{
    const Quantity q = split_quantity(key, text);
    if (q.suffix.empty())
        return q.number * plain_unit;
    if (auto w = rad_per_s_per(q.suffix))
        return units.rate_to_internal(q.number * *w);
    throw ConfigError(key, "unknown frequency unit '" + q.suffix + "'");
}

}  // namespace

std::string format_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

const std::vector<std::string>& config_keys()
{
    static const std::vector<std::string> keys = {
        "lambda_p", "n0",      "Dx",     "Dy",           "omega_th",   "threshold_branch", "kappa",
        "Gamma",    "gamma_convention",  "delta_a",      "atom_x",     "atom_y",           "atom_z",
        "cutoff",   "quad_abs_tol",      "z_min",        "z_max",      "z_samples",        "s_convention",
    };
    return keys;
}

ConfigEntries parse_config_text(const std::string& text)
{
    static const std::string manifest_prefix = "# config:";
    const bool manifest = text.find("\n" + manifest_prefix) != std::string::npos || text.rfind(manifest_prefix, 0) == 0;

    ConfigEntries out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (manifest) {
            if (line.rfind(manifest_prefix, 0) != 0)
                continue;
            line = line.substr(manifest_prefix.size());
        } else if (const auto hash = line.find('#'); hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno), "expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("line " + std::to_string(lineno), "missing key");
        for (const auto& [k, v] : out)
            if (k == key)
                throw ConfigError(key, "set more than once");
        out.emplace_back(std::move(key), std::move(value));
    }
    return out;
}

ConfigEntries with_entry(ConfigEntries entries, const std::string& key, const std::string& value)
{
    for (auto& [k, v] : entries) {
        if (k == key) {
            v = value;
            return entries;
        }
    }
    entries.emplace_back(key, value);
    return entries;
}

ConfigEntries without_entry(ConfigEntries entries, const std::string& key)
{
    entries.erase(std::remove_if(entries.begin(), entries.end(), [&](const auto& e) { return e.first == key; }),
                  entries.end());
    return entries;
}

SimulationConfig resolve_config(const ConfigEntries& entries)
{
    const auto& known = config_keys();
    std::map<std::string, std::string> kv;
    for (const auto& [k, v] : entries) {
        if (std::find(known.begin(), known.end(), k) == known.end())
            throw ConfigError(k, "unknown key");
        kv[k] = v;
    }
    auto has = [&](const char* k) { return kv.count(k) != 0; };

    SimulationConfig cfg;
    cfg.entries = entries;

    if (has("lambda_p")) {
        const Quantity q = split_quantity("lambda_p", kv["lambda_p"]);
        const auto m = q.suffix.empty() ? std::optional<double>(1.0) : metres_per(q.suffix);
        if (!m)
            throw ConfigError("lambda_p", "unknown length unit '" + q.suffix + "'");
        if (!(q.number > 0.0))
            throw ConfigError("lambda_p", "must be positive");
        cfg.units = UnitSystem(q.number * *m);
    }
    const UnitSystem& units = cfg.units;

    Geometry& g = cfg.geometry;
    if (has("n0"))
        g.n0 = parse_plain("n0", kv["n0"]);
    if (!(g.n0 > 1.0))
        throw ConfigError("n0", "must exceed 1 (guiding needs index contrast), got " + format_double(g.n0));

    g.Dx = has("Dx") ? parse_length("Dx", kv["Dx"], units) : kLambdaP / std::sqrt(g.n0 * g.n0 - 1.0);
    if (!(g.Dx > 0.0))
        throw ConfigError("Dx", "must be positive");

    if (has("kappa"))
        g.kappa = parse_rate("kappa", kv["kappa"], units);
    if (!(g.kappa > 0.0))
        throw ConfigError("kappa", "must be positive");

    if (has("threshold_branch")) {
        const long t = parse_integer("threshold_branch", kv["threshold_branch"]);
        if (t < 0)
            throw ConfigError("threshold_branch", "must be non-negative");
        cfg.threshold_order = static_cast<int>(t);
    }

    if (has("Dy") && has("omega_th"))
        throw ConfigError("Dy", "conflicts with omega_th; set only one of them");
    if (has("Dy")) {
        g.Dy = parse_length("Dy", kv["Dy"], units);
        if (!(g.Dy > 0.0))
            throw ConfigError("Dy", "must be positive");
        cfg.dy_explicit = true;
        try {
            cfg.omega_th = exact_threshold(cfg.threshold_order, kPi / g.Dy, g.slab());
        } catch (const Error& e) {
            throw ConfigError("Dy", std::string("threshold branch not guided: ") + e.what());
        }
    } else {
        if (has("omega_th"))
            cfg.omega_th = parse_rate("omega_th", kv["omega_th"], units);
        if (!(cfg.omega_th > 0.0))
            throw ConfigError("omega_th", "must be positive");
        try {
            g.Dy = dy_for_threshold(cfg.omega_th, cfg.threshold_order, g.slab());
        } catch (const Error& e) {
            throw ConfigError("omega_th", std::string("threshold branch not guided there: ") + e.what());
        }
    }

    if (has("gamma_convention")) {
        const std::string c = kv["gamma_convention"];
        if (c == "dipole")
            cfg.gamma_convention = GammaConvention::dipole;
        else if (c == "population")
            cfg.gamma_convention = GammaConvention::population;
        else
            throw ConfigError("gamma_convention", "expected 'dipole' or 'population'");
    }
    // Rb D2: dipole decay rate 2 pi x 3.03 MHz.
    double gamma = has("Gamma") ? parse_rate("Gamma", kv["Gamma"], units) : units.rate_to_internal(kTwoPi * 3.03e6);
    if (!(gamma > 0.0))
        throw ConfigError("Gamma", "must be positive");
    if (cfg.gamma_convention == GammaConvention::population)
        gamma *= 0.5;

    AtomParams& atom = cfg.atom;
    atom.gamma = gamma;
    atom.g_squared = derive_coupling(gamma, 1.0, g.cross_section());
    atom.delta_a = has("delta_a") ? parse_rate("delta_a", kv["delta_a"], units, gamma) / gamma : 10.0;

    const double ax = has("atom_x") ? parse_plain("atom_x", kv["atom_x"]) : 0.5;
    const double ay = has("atom_y") ? parse_plain("atom_y", kv["atom_y"]) : 0.5;
    if (!(ay >= 0.0 && ay <= 1.0))
        throw ConfigError("atom_y", "must lie between the plates (0..1 of Dy)");
    atom.position.x = ax * g.Dx;
    atom.position.y = ay * g.Dy;
    atom.position.z = has("atom_z") ? parse_length("atom_z", kv["atom_z"], units) : 0.0;

    if (has("cutoff"))
        cfg.solver.cutoff = parse_rate("cutoff", kv["cutoff"], units);
    if (!(cfg.solver.cutoff > 10.0))
        throw ConfigError("cutoff", "must exceed 10 omega_p");
    if (has("quad_abs_tol"))
        cfg.solver.quad_abs_tol = parse_plain("quad_abs_tol", kv["quad_abs_tol"]);
    if (!(cfg.solver.quad_abs_tol > 0.0))
        throw ConfigError("quad_abs_tol", "must be positive");

    if (has("z_min"))
        cfg.field.z_min = parse_length("z_min", kv["z_min"], units);
    if (has("z_max"))
        cfg.field.z_max = parse_length("z_max", kv["z_max"], units);
    if (!(cfg.field.z_max > cfg.field.z_min))
        throw ConfigError("z_max", "must exceed z_min");
    if (has("z_samples")) {
        const long n = parse_integer("z_samples", kv["z_samples"]);
        if (n < 2)
            throw ConfigError("z_samples", "need at least 2 samples");
        cfg.field.samples = static_cast<std::size_t>(n);
    }

    if (has("s_convention")) {
        const std::string c = kv["s_convention"];
        if (c == "corrected")
            cfg.s_convention = PoleConvention::corrected;
        else if (c == "printed")
            cfg.s_convention = PoleConvention::printed;
        else
            throw ConfigError("s_convention", "expected 'corrected' or 'printed'");
    }

    try {
        const auto branches = enumerate_branches(g);
        if (!branches.empty() && branches.front().qn < 1.0)
            cfg.pump = make_pump(branches.front());
    } catch (const Error&) {
        cfg.pump.reset();
    }
    return cfg;
}

ConfigEntries SimulationConfig::resolved() const
{
    auto lam = [](double internal) { return format_double(UnitSystem::to_lambda_p(internal)); };
    const double gamma_in = gamma_convention == GammaConvention::population ? 2.0 * atom.gamma : atom.gamma;
    return {
        {"lambda_p", format_double(units.lambda_p_m())},
        {"n0", format_double(geometry.n0)},
        {"Dx", lam(geometry.Dx)},
        {"Dy", lam(geometry.Dy)},
        {"omega_th", format_double(omega_th)},
        {"threshold_branch", std::to_string(threshold_order)},
        {"kappa", format_double(geometry.kappa)},
        {"Gamma", format_double(gamma_in)},
        {"gamma_convention", gamma_convention == GammaConvention::dipole ? "dipole" : "population"},
        {"delta_a", format_double(atom.delta_a)},
        {"atom_x", format_double(atom.position.x / geometry.Dx)},
        {"atom_y", format_double(atom.position.y / geometry.Dy)},
        {"atom_z", lam(atom.position.z)},
        {"cutoff", format_double(solver.cutoff)},
        {"quad_abs_tol", format_double(solver.quad_abs_tol)},
        {"z_min", lam(field.z_min)},
        {"z_max", lam(field.z_max)},
        {"z_samples", std::to_string(field.samples)},
        {"s_convention", s_convention == PoleConvention::corrected ? "corrected" : "printed"},
    };
}

NumericOptions SimulationConfig::numeric_options() const
{
    NumericOptions o;
    o.cutoff = solver.cutoff;
    o.extrapolation_cutoffs = {0.5 * solver.cutoff, solver.cutoff, 2.0 * solver.cutoff};
    o.abs_tol = solver.quad_abs_tol;
    return o;
}

SimulationConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config", "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return resolve_config(parse_config_text(ss.str()));
}

SimulationConfig default_config() { return resolve_config({}); }

}  // namespace wgshift
