#include "wgshift/units.hpp"

#include "wgshift/errors.hpp"

#include <cmath>
#include <string>

namespace wgshift {

UnitSystem::UnitSystem(double lambda_p_m)
    : lambda_p_(lambda_p_m), omega_p_(kTwoPi * si::c / lambda_p_m)
{
    if (!(lambda_p_m > 0.0) || !std::isfinite(lambda_p_m))
        throw DomainError("pump wavelength must be positive");
}

double UnitSystem::length_to_internal(double metres) const noexcept { return metres * omega_p_ / si::c; }
double UnitSystem::length_to_si(double internal) const noexcept { return internal * si::c / omega_p_; }
double UnitSystem::rate_to_internal(double rad_per_s) const noexcept { return rad_per_s / omega_p_; }
double UnitSystem::rate_to_si(double internal) const noexcept { return internal * omega_p_; }

void Geometry::validate() const
{
    if (!(n0 > 1.0))
        throw DomainError("n0 must exceed 1 (got " + std::to_string(n0) + ")");
    if (!(Dx > 0.0))
        throw DomainError("Dx must be positive");
    if (!(Dy > 0.0))
        throw DomainError("Dy must be positive");
    if (!(kappa > 0.0))
        throw DomainError("kappa must be positive");
}

double derive_coupling(double gamma, double omega_p, double area, double c)
{
    if (!(gamma > 0.0) || !(omega_p > 0.0) || !(area > 0.0) || !(c > 0.0))
        throw DomainError("derive_coupling: Gamma, omega_p, A and c must be positive");
    return 3.0 * c * c * c * gamma / (2.0 * omega_p * omega_p * area);
}

}  // namespace wgshift
