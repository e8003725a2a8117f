#pragma once

#include "wgshift/units.hpp"

#include <span>
#include <utility>
#include <vector>

namespace wgshift {

enum class Parity { even = 0, odd = 1 };

/// Transverse order of a symmetric-slab mode: order 0 is the even fundamental,
/// order 1 the first odd mode, and so on. Parity alternates with order.
constexpr Parity parity_of(int order) noexcept { return order % 2 == 0 ? Parity::even : Parity::odd; }

struct SlabRoot {
    double kx = 0.0;      // transverse wavenumber inside the slab
    double gamma_x = 0.0; // evanescent decay constant outside
};

/// V = (Dx/2) sqrt(n0^2 - 1) omega / c. Order m is guided iff V > m*pi/2.
double guidance_parameter(const Slab& slab, double omega);

/// Number of guided slab orders for a given V (strict cutoff inequality).
int guided_order_count(double V);

/// Solve the symmetric-slab matching condition for the given order:
///   even: kx tan(kx Dx/2) = gammaX,   odd: -kx cot(kx Dx/2) = gammaX,
/// with gammaX = sqrt((n0^2 - 1) omega^2 - kx^2).
/// Throws NoGuidedMode below cutoff and DegenerateMode exactly at it.
SlabRoot solve_kx(int order, double omega, const Slab& slab);

/// Residual of the matching condition in natural units (1/length).
double slab_residual(int order, double kx, double omega, const Slab& slab);

/// One transverse mode family of the coated waveguide. The x-profile is taken
/// at the pump frequency and held fixed along the branch (constant-q model).
struct GuidedBranch {
    int order = 0;
    Parity parity = Parity::even;
    double kx = 0.0;
    double gamma_x = 0.0;
    double ky = 0.0;        // pi / Dy
    double qn = 0.0;        // sqrt(kx^2 + ky^2) / n0
    double omega_th = 0.0;  // c * qn
    double norm = 0.0;      // profile scale factor
    Geometry geometry;

    /// X(x): cos/sin inside the slab, matched exponential tails outside.
    double profile_x(double x) const noexcept;
    /// f^T(x, y) without the range check (y outside the plates gives garbage).
    double profile_unchecked(double x, double y) const noexcept;
};

/// Build the branch of the given order from the slab root at `omega`.
GuidedBranch make_branch(int order, const Geometry& geometry, double omega = 1.0);

/// All guided orders at omega_p, sorted by qn ascending.
std::vector<GuidedBranch> enumerate_branches(const Geometry& geometry, double omega_p = 1.0);

/// Plate separation that puts the exact k = 0 cutoff of `order` at omega_th:
/// Dy = pi / sqrt(n0^2 omega_th^2 - kx(omega_th)^2).
double dy_for_threshold(double omega_th, int order, const Slab& slab);

/// Exact-model cutoff frequency (k = 0) of `order` for plate wavenumber ky.
double exact_threshold(int order, double ky, const Slab& slab);

/// Normalized transverse profile; y must lie within [0, Dy] (DomainError otherwise).
double transverse_profile(const GuidedBranch& branch, double x, double y);

/// The weighted overlap n0^2 * integral_inside |f|^2 + integral_outside |f|^2,
/// evaluated in closed form. Equals the cross section for a normalized branch.
double normalization_integral(const GuidedBranch& branch);

enum class DispersionModel { constant_q, exact };

const char* to_string(DispersionModel model) noexcept;

/// omega_n(k). constant-q: c sqrt(k^2/n0^2 + qn^2). exact: solves
/// n0^2 omega^2 = kx(omega)^2 + ky^2 + k^2 with kx re-solved at each omega.
double dispersion(const GuidedBranch& branch, double k, DispersionModel model);

struct DispersionCurve {
    int branch = 0;
    DispersionModel model = DispersionModel::constant_q;
    std::vector<std::pair<double, double>> points;  // (k, omega)
};

DispersionCurve dispersion_curve(const GuidedBranch& branch, std::span<const double> ks, DispersionModel model);

}  // namespace wgshift
