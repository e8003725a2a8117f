#include "wgshift/modesolver.hpp"

#include "wgshift/errors.hpp"
#include "wgshift/roots.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace wgshift {

namespace {

constexpr double kCutoffTol = 1e-12;
constexpr int kScanSamples = 64;

double matching(int order, double u, double V)
{
    const double w = std::sqrt(std::max(V * V - u * u, 0.0));
    if (parity_of(order) == Parity::even)
        return u * std::tan(u) - w;
    return -u / std::tan(u) - w;
}

double matching_derivative(int order, double u, double V)
{
    const double w = std::sqrt(std::max(V * V - u * u, 0.0));
    const double dw = w > 0.0 ? -u / w : 0.0;
    if (parity_of(order) == Parity::even) {
        const double c = std::cos(u);
        return std::tan(u) + u / (c * c) - dw;
    }
    const double s = std::sin(u);
    return -1.0 / std::tan(u) + u / (s * s) - dw;
}

double cutoff_frequency(int order, const Slab& slab)
{
    return order * (kPi / 2.0) / (0.5 * slab.Dx * std::sqrt(slab.n0 * slab.n0 - 1.0));
}

// Solves n0^2 omega^2 - kx(omega)^2 = ky^2 + k^2 for omega.
double exact_frequency(int order, double ky, double k, const Slab& slab)
{
    const double target = ky * ky + k * k;
    const double n2 = slab.n0 * slab.n0;
    auto g = [&](double omega) {
        double kx;
        try {
            kx = solve_kx(order, omega, slab).kx;
        } catch (const DegenerateMode&) {
            kx = std::sqrt(n2 - 1.0) * omega;
        }
        return n2 * omega * omega - kx * kx - target;
    };

    const double hi = std::sqrt(target);
    double lo = hi / slab.n0;
    const double w_cut = cutoff_frequency(order, slab);
    if (lo <= w_cut)
        lo = w_cut * (1.0 + 1e-12);
    if (!(lo < hi) || g(lo) > 0.0)
        throw NoGuidedMode("order " + std::to_string(order) + " is cut off for ky=" + std::to_string(ky) +
                           ", k=" + std::to_string(k));
    return roots::bisect(g, lo, hi, 1e-16);
}

}  // namespace

double guidance_parameter(const Slab& slab, double omega)
{
    if (!(slab.n0 > 1.0))
        return 0.0;
    return 0.5 * slab.Dx * std::sqrt(slab.n0 * slab.n0 - 1.0) * omega;
}

int guided_order_count(double V)
{
    if (!(V > 0.0))
        return 0;
    // Orders m with m*pi/2 < V strictly.
    const double m = V / (kPi / 2.0);
    int count = static_cast<int>(std::ceil(m));
    if (std::abs(m - std::round(m)) <= kCutoffTol * std::max(1.0, m))
        count = static_cast<int>(std::round(m));
    return count;
}

SlabRoot solve_kx(int order, double omega, const Slab& slab)
{
    if (order < 0)
        throw DomainError("transverse order must be non-negative");
    if (!(omega > 0.0))
        throw DomainError("solve_kx: omega must be positive");
    if (!(slab.Dx > 0.0))
        throw DomainError("solve_kx: Dx must be positive");

    const double V = guidance_parameter(slab, omega);
    const double cutoff = order * (kPi / 2.0);
    if (!(V > 0.0))
        throw NoGuidedMode("no index contrast: no guided mode");
    if (std::abs(V - cutoff) <= kCutoffTol * std::max(1.0, V) && order > 0)
        throw DegenerateMode("order " + std::to_string(order) + " sits exactly at cutoff (V=" +
                             std::to_string(V) + ")");
    if (V < cutoff)
        throw NoGuidedMode("order " + std::to_string(order) + " below cutoff (V=" + std::to_string(V) + ")");

    const double upper = std::min(cutoff + kPi / 2.0, V);
    const double eps = 1e-15 * std::max(1.0, upper);
    const double lo = cutoff + eps;
    const double hi = upper - eps;
    auto f = [&](double u) { return matching(order, u, V); };
    auto df = [&](double u) { return matching_derivative(order, u, V); };

    std::pair<double, double> bracket;
    if (!roots::scan_bracket(f, lo, hi, kScanSamples, bracket))
        throw NoGuidedMode("order " + std::to_string(order) + ": no sign change in matching residual");
    const double u = bracket.first == bracket.second ? bracket.first
                                                     : roots::bracketed_root(f, df, bracket.first, bracket.second);

    const double a = 0.5 * slab.Dx;
    SlabRoot root;
    root.kx = u / a;
    root.gamma_x = std::sqrt(std::max((slab.n0 * slab.n0 - 1.0) * omega * omega - root.kx * root.kx, 0.0));
    if (!(root.gamma_x > kCutoffTol * omega))
        throw DegenerateMode("order " + std::to_string(order) + " root at gammaX = 0");
    return root;
}

double slab_residual(int order, double kx, double omega, const Slab& slab)
{
    const double a = 0.5 * slab.Dx;
    const double V = guidance_parameter(slab, omega);
    return matching(order, kx * a, V) / a;
}

double GuidedBranch::profile_x(double x) const noexcept
{
    const double a = 0.5 * geometry.Dx;
    const bool even = parity == Parity::even;
    if (std::abs(x) <= a)
        return even ? std::cos(kx * x) : std::sin(kx * x);
    const double edge = std::copysign(a, x);
    const double at_edge = even ? std::cos(kx * edge) : std::sin(kx * edge);
    return at_edge * std::exp(-gamma_x * (std::abs(x) - a));
}

double GuidedBranch::profile_unchecked(double x, double y) const noexcept
{
    // Folding y keeps both plates exact nodes.
    const double yy = std::min(y, geometry.Dy - y);
    return norm * profile_x(x) * std::sin(kPi * yy / geometry.Dy);
}

double normalization_integral(const GuidedBranch& b)
{
    const double a = 0.5 * b.geometry.Dx;
    const double sign = b.parity == Parity::even ? 1.0 : -1.0;
    const double inside = a + sign * std::sin(2.0 * b.kx * a) / (2.0 * b.kx);
    const double edge = b.profile_x(a);
    const double outside = edge * edge / b.gamma_x;
    return b.norm * b.norm * 0.5 * b.geometry.Dy * (b.geometry.n0 * b.geometry.n0 * inside + outside);
}

GuidedBranch make_branch(int order, const Geometry& geometry, double omega)
{
    geometry.validate();
    const SlabRoot root = solve_kx(order, omega, geometry.slab());
    GuidedBranch b;
    b.order = order;
    b.parity = parity_of(order);
    b.kx = root.kx;
    b.gamma_x = root.gamma_x;
    b.ky = kPi / geometry.Dy;
    b.qn = std::sqrt(b.kx * b.kx + b.ky * b.ky) / geometry.n0;
    b.omega_th = b.qn;
    b.geometry = geometry;
    b.norm = 1.0;
    b.norm = std::sqrt(geometry.cross_section() / normalization_integral(b));
    return b;
}

std::vector<GuidedBranch> enumerate_branches(const Geometry& geometry, double omega_p)
{
    geometry.validate();
    const int count = guided_order_count(guidance_parameter(geometry.slab(), omega_p));
    std::vector<GuidedBranch> out;
    for (int order = 0; order < count; ++order) {
        try {
            out.push_back(make_branch(order, geometry, omega_p));
        } catch (const DegenerateMode&) {
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const GuidedBranch& l, const GuidedBranch& r) { return l.qn < r.qn; });
    return out;
}

double dy_for_threshold(double omega_th, int order, const Slab& slab)
{
    if (!(omega_th > 0.0))
        throw DomainError("dy_for_threshold: omega_th must be positive");
    const double kx = solve_kx(order, omega_th, slab).kx;
    const double ky2 = slab.n0 * slab.n0 * omega_th * omega_th - kx * kx;
    return kPi / std::sqrt(ky2);
}

double exact_threshold(int order, double ky, const Slab& slab)
{
    return exact_frequency(order, ky, 0.0, slab);
}

double transverse_profile(const GuidedBranch& branch, double x, double y)
{
    if (!(y >= 0.0 && y <= branch.geometry.Dy))
        throw DomainError("transverse_profile: y outside the plates");
    return branch.profile_unchecked(x, y);
}

const char* to_string(DispersionModel model) noexcept
{
    return model == DispersionModel::constant_q ? "constant-q" : "exact";
}

double dispersion(const GuidedBranch& branch, double k, DispersionModel model)
{
    if (model == DispersionModel::constant_q) {
        const double n0 = branch.geometry.n0;
        return std::sqrt(k * k / (n0 * n0) + branch.qn * branch.qn);
    }
    return exact_frequency(branch.order, branch.ky, k, branch.geometry.slab());
}

DispersionCurve dispersion_curve(const GuidedBranch& branch, std::span<const double> ks, DispersionModel model)
{
    DispersionCurve curve;
    curve.branch = branch.order;
    curve.model = model;
    curve.points.reserve(ks.size());
    for (double k : ks)
        curve.points.emplace_back(k, dispersion(branch, k, model));
    return curve;
}

}  // namespace wgshift
