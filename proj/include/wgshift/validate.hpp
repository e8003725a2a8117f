#pragma once

#include "wgshift/config.hpp"

#include <iosfwd>
#include <random>
#include <string>
#include <vector>

namespace wgshift {

struct CheckResult {
    std::string name;
    bool passed = false;
    bool engaged = true;  // false: check not applicable to this configuration
    double worst = 0.0;   // worst deviation found
    double tolerance = 0.0;
    std::string detail;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool passed() const;
    void print(std::ostream& out) const;
};

/// Analytic-vs-numeric equivalence over a threshold sweep, asymptote and
/// scaling laws, pole decay length against the group velocity, passivity and
/// the steady-state identity. Every check uses the configuration's conventions.
ValidationReport run_validation(const SimulationConfig& cfg, int jobs = 1);

/// Relative deviations used by the oracle-equivalence check.
struct EquivalenceStats {
    double worst_re = 0.0;
    double worst_im = 0.0;
    int compared_re = 0;
    int compared_im = 0;
    std::string worst_re_at, worst_im_at;
};

/// Compare numeric and analytic shifts for every branch at `points` values of
/// omega_th in [lo, hi]; components with |value| <= gate (Gamma) are skipped.
EquivalenceStats oracle_equivalence(const SimulationConfig& base, double lo, double hi, int points, int jobs,
                                    double gate = 0.1);

/// Random valid configuration entries for property tests.
ConfigEntries random_valid_entries(std::mt19937_64& rng);

}  // namespace wgshift
