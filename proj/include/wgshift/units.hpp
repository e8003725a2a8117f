#pragma once

// Internal unit system: c = 1 and omega_p = 1. Lengths are therefore measured
// in c/omega_p (the pump wavelength is 2*pi), rates in omega_p. Light shifts
// are carried in units of the atomic dipole decay rate Gamma.

#include <numbers>

namespace wgshift {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kLambdaP = kTwoPi;  // pump wavelength, internal units

namespace si {
inline constexpr double c = 299792458.0;
inline constexpr double hbar = 1.054571817e-34;
inline constexpr double eps0 = 8.8541878128e-12;
}  // namespace si

/// Conversion between SI and internal units, anchored at the pump wavelength.
class UnitSystem {
public:
    explicit UnitSystem(double lambda_p_m = 780e-9);

    double lambda_p_m() const noexcept { return lambda_p_; }
    double omega_p_si() const noexcept { return omega_p_; }  // rad/s

    double length_to_internal(double metres) const noexcept;
    double length_to_si(double internal) const noexcept;
    double rate_to_internal(double rad_per_s) const noexcept;
    double rate_to_si(double internal) const noexcept;

    static double to_lambda_p(double internal_length) noexcept { return internal_length / kLambdaP; }
    static double from_lambda_p(double lambdas) noexcept { return lambdas * kLambdaP; }

private:
    double lambda_p_;
    double omega_p_;
};

struct Slab {
    double n0 = 1.5;
    double Dx = 0.0;
};

struct Geometry {
    double n0 = 1.5;
    double Dx = 0.0;
    double Dy = 0.0;
    double kappa = 1e-3;  // field amplitude loss rate; photons are lost at 2*kappa

    double cross_section() const noexcept { return Dx * Dy; }
    Slab slab() const noexcept { return {n0, Dx}; }
    /// Throws DomainError when an invariant is violated.
    void validate() const;
};

struct Position {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

struct AtomParams {
    double gamma = 0.0;    // dipole decay rate, units of omega_p
    double delta_a = 0.0;  // omega_p - omega_a, units of Gamma
    Position position;
    double g_squared = 0.0;  // internal units

    /// g^2 / Gamma, the factor that turns the bare k-integral into a shift in Gamma.
    double coupling_over_gamma() const noexcept { return gamma > 0.0 ? g_squared / gamma : 0.0; }
};

struct PumpParams {
    int branch = 0;
    double omega_p = 1.0;
    double k0 = 0.0;
    double amplitude = 1.0;
};

/// Atom-field coupling g^2 for a continuum of guided modes with
/// [a(k), a^dag(k')] = delta(k - k'), from the free-space dipole decay rate.
///
/// Eliminating the dipole moment between g = mu*E0/hbar with
/// E0^2 = hbar*omega/(4*pi*eps0*A) and Gamma = mu^2 omega^3/(6*pi*eps0*hbar*c^3)
/// gives g^2 = 3 c^3 Gamma / (2 omega_p^2 A). Works in any consistent unit
/// system; pass c explicitly for SI.
double derive_coupling(double gamma, double omega_p, double area, double c = 1.0);

}  // namespace wgshift
