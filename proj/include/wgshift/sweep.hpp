#pragma once

#include "wgshift/config.hpp"
#include "wgshift/lightshift.hpp"
#include "wgshift/modesolver.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace wgshift {

inline constexpr const char* kToolVersion = "1.0.0";

struct SweepSpec {
    std::string key = "omega_th";
    double min = 0.98;
    double max = 1.02;
    int count = 21;
    int jobs = 1;

    /// Throws ConfigError when count < 2, min >= max or the key is not sweepable.
    void validate() const;
    double value_at(int i) const noexcept;
};

/// Keys a light-shift sweep may vary.
const std::vector<std::string>& sweepable_keys();

struct PointStatus {
    std::size_t index = 0;
    bool ok = true;
    std::string message;
};

/// Header block written as '#' lines ahead of every CSV.
struct RunManifest {
    std::string command;
    ConfigEntries inputs;    // re-runnable
    ConfigEntries resolved;  // informational
    std::vector<std::string> extra;  // free-form "key: value" lines
    std::vector<PointStatus> status;
    std::string timestamp;

    static RunManifest for_config(const std::string& command, const SimulationConfig& cfg);
    void write(std::ostream& out) const;
};

/// Branches and per-branch light shifts at one configuration.
struct PointResult {
    double omega_th = 0.0;
    double Dy = 0.0;
    std::vector<GuidedBranch> branches;
    std::vector<ComplexShift> numeric;
    std::vector<ComplexShift> analytic;
};

struct PointMethods {
    bool numeric = true;
    bool analytic = true;
};

PointResult evaluate_point(const SimulationConfig& cfg, PointMethods methods = {});

struct SweepRow {
    double swept = 0.0;
    double omega_th = 0.0;
    double Dy = 0.0;
    cplx L0, L1;
    ShiftMethod method = ShiftMethod::numeric;
};

struct SweepResult {
    SweepSpec spec;
    std::vector<SweepRow> rows;  // ordered by point index, then method
    std::vector<PointStatus> status;
};

/// Evaluate L0 and L1 at every sweep point by both methods. Points run in
/// parallel; failures are recorded in `status` and leave NaN rows.
SweepResult run_shift_sweep(const SimulationConfig& base, const SweepSpec& spec, PointMethods methods = {});

/// CSV body: column header plus rows, 17 significant digits.
void write_sweep_csv(std::ostream& out, const SweepResult& result);

/// Lines of `text` that do not start with '#'.
std::string csv_body(const std::string& text);

}  // namespace wgshift
