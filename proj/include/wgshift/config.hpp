#pragma once

#include "wgshift/lightshift.hpp"
#include "wgshift/units.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace wgshift {

enum class GammaConvention { dipole, population };

struct SolverSettings {
    double cutoff = 100.0;        // Omega_c / omega_p
    double quad_abs_tol = 1e-7;   // Gamma
};

struct FieldSettings {
    double z_min = -40.0 * kLambdaP;
    double z_max = 40.0 * kLambdaP;
    std::size_t samples = 8001;
};

/// Raw key = value entries in file order.
using ConfigEntries = std::vector<std::pair<std::string, std::string>>;

/// Fully resolved, validated configuration. Immutable once built.
struct SimulationConfig {
    ConfigEntries entries;  // what the user set, verbatim
    UnitSystem units;
    Geometry geometry;
    AtomParams atom;
    std::optional<PumpParams> pump;  // empty if branch 0 has no travelling wave at omega_p
    SolverSettings solver;
    FieldSettings field;
    double omega_th = 1.0;       // exact cutoff of `threshold_order`
    int threshold_order = 1;
    bool dy_explicit = false;
    GammaConvention gamma_convention = GammaConvention::dipole;
    PoleConvention s_convention = PoleConvention::corrected;

    /// Every key with its resolved value in plain (native-unit) form.
    ConfigEntries resolved() const;
    NumericOptions numeric_options() const;
};

/// Keys the loader accepts, in canonical order.
const std::vector<std::string>& config_keys();

/// Parse flat key = value text; '#' starts a comment. If the text is a CSV
/// manifest (lines starting "# config:"), only those lines are read.
ConfigEntries parse_config_text(const std::string& text);

/// Validate and resolve entries, filling documented defaults.
SimulationConfig resolve_config(const ConfigEntries& entries);

/// Read and resolve a config file. Throws ConfigError on any failure.
SimulationConfig load_config(const std::string& path);

/// Resolved defaults (the empty configuration).
SimulationConfig default_config();

/// Copy of `entries` with `key` set to `value` (replacing an existing entry).
ConfigEntries with_entry(ConfigEntries entries, const std::string& key, const std::string& value);
ConfigEntries without_entry(ConfigEntries entries, const std::string& key);

/// Environment variable naming a default config path.
inline constexpr const char* kConfigEnvVar = "WGSHIFT_CONFIG";

std::string format_double(double v);

}  // namespace wgshift
