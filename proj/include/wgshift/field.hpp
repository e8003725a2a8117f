#pragma once

#include "wgshift/lightshift.hpp"
#include "wgshift/modesolver.hpp"

#include <complex>
#include <vector>

namespace wgshift {

/// Everything needed to evaluate the stationary field around one atom: the
/// pumped travelling wave of branch 0 plus one scattered wave per branch,
/// emitted from the atom with the complex wavenumber n0 (r_n + i s_n).
struct ScatteringModel {
    std::vector<GuidedBranch> branches;
    std::vector<cplx> shifts;          // L_n in Gamma
    std::vector<PoleParams> poles;
    cplx total_shift;                  // L, shared denominator
    double delta_a = 0.0;              // Gamma
    Position atom;
    double k0 = 0.0;                   // pumped wavenumber
    double n0 = 1.5;

    /// i Delta_a - Gamma + L, in Gamma.
    cplx denominator() const noexcept { return {-1.0 + total_shift.real(), delta_a + total_shift.imag()}; }
};

ScatteringModel make_scattering_model(std::vector<GuidedBranch> branches, std::vector<cplx> shifts, double kappa,
                                      double delta_a, const Position& atom,
                                      PoleConvention convention = PoleConvention::corrected,
                                      const UnitSystem& units = UnitSystem{});

/// Complex field amplitude at p relative to a unit pump.
///
/// E = e^{i k0 z} f0(x,y) - sum_n L_n/D e^{n0(i r_n - s_n)|z - z_a|} f0(x_a,y_a)/fn(x_a,y_a) fn(x,y).
/// A branch with fn(x_a,y_a) = 0 contributes nothing if L_n = 0 and throws
/// SingularConfiguration otherwise.
cplx stationary_field(const ScatteringModel& model, const Position& p);

struct FieldLine {
    double x = 0.0;
    double y = 0.0;
    double z_atom = 0.0;
    std::vector<double> z;
    std::vector<cplx> amplitude;
    std::vector<double> intensity;
    double asymptote = 0.0;          // |f0(x, y)|^2, the |z| -> inf intensity
    double fringe_wavenumber = 0.0;  // 2 k0, the pump/back-scatter standing wave
};

/// Highest wavenumber present in |E|^2 along z for this model.
double max_intensity_wavenumber(const ScatteringModel& model);

/// |E|^2 sampled uniformly on [z_min, z_max]. Requires at least 16 samples per
/// shortest oscillation period; throws UndersampledLine naming the minimum.
FieldLine intensity_line(const ScatteringModel& model, double x, double y, double z_min, double z_max,
                         std::size_t samples);

enum class DecaySelector {
    slowest,  // fit the far part of the upstream side
    fastest,  // fit the near-atom part until the envelope drops by e^3
};

/// Envelope decay length of |E|^2 - asymptote on the upstream side (z < z_atom).
/// Oscillating lines use half the peak-to-trough distance between the upper and
/// lower extremum envelopes; lines without fringes use |I - asymptote| directly.
double fit_decay_length(const FieldLine& line, DecaySelector selector = DecaySelector::slowest);

struct Visibility {
    double upstream = 0.0;
    double downstream = 0.0;
};

/// (Imax - Imin)/(Imax + Imin) from local extrema within three fringe periods
/// (2 pi / fringe_wavenumber) on either side of the atom; 0 when no fringe forms.
Visibility fringe_visibility(const FieldLine& line);

/// Normalized Fourier amplitude 2|sum (I - mean) e^{-i K z}| / (N mean) over the
/// samples with z in [z_lo, z_hi]; for I = I0 (1 + v cos(K z)) this returns v.
double fourier_visibility(const FieldLine& line, double wavenumber, double z_lo, double z_hi);

}  // namespace wgshift
