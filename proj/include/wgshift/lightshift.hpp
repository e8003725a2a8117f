#pragma once

#include "wgshift/modesolver.hpp"
#include "wgshift/units.hpp"

#include <array>
#include <complex>
#include <optional>
#include <span>
#include <vector>

namespace wgshift {

using cplx = std::complex<double>;

/// How s is obtained from r. `corrected` uses s = kappa omega_p / (c^2 r), which
/// makes (r + i s)^2 = ((omega_p + i kappa)^2 - c^2 q^2)/c^2. `printed` uses
/// s = kappa omega_p / (c r); it only differs when c != 1, so the light-shift
/// code evaluates it in SI units to expose the unit error.
enum class PoleConvention { corrected, printed };

struct PoleParams {
    double r = 0.0;  // real part of the resonant longitudinal wavenumber / n0
    double s = 0.0;  // imaginary part
    double u = 0.0;  // (c^2 q^2 + kappa^2 - omega_p^2) / 2
};

PoleParams pole_params(double qn, double kappa, double omega_p = 1.0, double c = 1.0,
                       PoleConvention convention = PoleConvention::corrected);

/// Pole parameters of a branch in internal units. The printed convention is
/// evaluated in SI (using `units`) and converted back.
PoleParams pole_params(const GuidedBranch& branch, double kappa, PoleConvention convention = PoleConvention::corrected,
                       const UnitSystem& units = UnitSystem{});

enum class ShiftMethod { numeric, analytic, asymptote };

const char* to_string(ShiftMethod method) noexcept;

/// Diagnostics from the cutoff study behind a numeric light shift.
struct CutoffStudy {
    std::vector<double> cutoffs;          // Omega_c / omega_p
    std::vector<cplx> raw;                // direct integral at each cutoff (Gamma)
    std::vector<cplx> renormalized;       // raw minus the anti-resonant vacuum term
    double extrapolated_im = 0.0;         // Omega_c -> infinity limit of Im(renormalized)
    double im_uncertainty = 0.0;
    double log_slope = 0.0;               // d Im(raw) / d ln Omega_c
    double quadrature_error = 0.0;        // largest estimate over all integrals (Gamma)
};

struct ComplexShift {
    cplx value;  // units of Gamma
    int branch = 0;
    ShiftMethod method = ShiftMethod::numeric;
    std::optional<CutoffStudy> cutoff;
};

struct NumericOptions {
    double cutoff = 100.0;  // nominal Omega_c for the reported Re part
    std::array<double, 3> extrapolation_cutoffs{50.0, 100.0, 200.0};
    bool extrapolate = true;  // false: single cutoff, Im renormalized but not extrapolated
    double abs_tol = 1e-7;    // absolute quadrature tolerance, units of Gamma
};

/// Integrand of the light-shift k-integral per unit g^2 |f|^2, with the
/// exponential convergence factor exp(-|omega(k) - omega_p| / cutoff).
cplx shift_integrand(double qn, double n0, double kappa, double k, double cutoff);

/// The anti-resonant part i/(omega_p + i kappa + omega(k)) with the same
/// convergence factor; it carries the entire logarithmic divergence.
cplx vacuum_integrand(double qn, double n0, double kappa, double k, double cutoff);

/// Direct quadrature of the light-shift integral over k in (-inf, inf) using
/// the constant-q dispersion. `coupling_over_gamma` is g^2 / Gamma.
///
/// The real part is taken raw at the nominal cutoff. The imaginary part has a
/// logarithmic cutoff dependence from the anti-resonant term; that term is
/// integrated separately with the same convergence factor and subtracted, and
/// the remainder is extrapolated in Omega_c using the model a + (b + c ln x)/x.
ComplexShift lightshift_numeric(const GuidedBranch& branch, const Position& atom, double kappa,
                                double coupling_over_gamma, const NumericOptions& opts = {});

/// Which closed form to evaluate. `contour` is -P sqrt(1 + (q/(r+is))^2),
/// which on the principal branch equals -P (omega_p + i kappa)/(c (r + i s)).
/// `as_printed` flips the sign under the root and is kept only for comparison.
enum class AnalyticForm { contour, as_printed };

ComplexShift lightshift_analytic(const GuidedBranch& branch, const Position& atom, double kappa,
                                 double coupling_over_gamma, AnalyticForm form = AnalyticForm::contour,
                                 PoleConvention convention = PoleConvention::corrected,
                                 const UnitSystem& units = UnitSystem{});

/// Near-threshold limit P (i - 1)/2 sqrt(omega_p / kappa); valid for c q = omega_p, kappa << omega_p.
ComplexShift threshold_asymptote(const GuidedBranch& branch, const Position& atom, double kappa,
                                 double coupling_over_gamma);

/// 2 pi n0 / c * g^2/Gamma * |f^T(x_a, y_a)|^2, the common scale of all closed forms.
double shift_prefactor(const GuidedBranch& branch, const Position& atom, double coupling_over_gamma);

ComplexShift total_lightshift(std::span<const ComplexShift> per_branch);

struct DipoleState {
    cplx chi;       // units of Gamma, relative to a unit pump
    cplx sigma_ss;  // steady-state dipole
};

/// Pump a single resonant travelling wave of `branch` at omega_p (constant-q).
/// Throws DomainError when the branch has no real k at omega_p.
PumpParams make_pump(const GuidedBranch& branch, double omega_p = 1.0);

/// chi = -g f_0(k0, x_a) / kappa, sigma_ss = chi / (i Delta_a - Gamma + L).
DipoleState drive_and_dipole(const PumpParams& pump, const GuidedBranch& branch0, const AtomParams& atom, cplx total_L);

}  // namespace wgshift
