#include "wgshift/lightshift.hpp"

#include "wgshift/errors.hpp"
#include "wgshift/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace wgshift {

namespace {

constexpr cplx kI{0.0, 1.0};

double constant_q_omega(double qn, double n0, double k) { return std::sqrt(k * k / (n0 * n0) + qn * qn); }

// k >= 0 at which the constant-q branch reaches omega (omega >= qn).
double k_at(double qn, double n0, double omega) { return n0 * std::sqrt(std::max(omega * omega - qn * qn, 0.0)); }

std::vector<double> panel_breaks(double qn, double n0, double kappa, double cutoff, double kmax)
{
    std::vector<double> omegas;
    const double widths[] = {1.0, 3.0, 10.0, 30.0, 100.0, 300.0, 1000.0};
    const double omega_p = 1.0;
    if (omega_p > qn) {
        omegas.push_back(omega_p);
        for (double m : widths) {
            omegas.push_back(omega_p + m * kappa);
            omegas.push_back(omega_p - m * kappa);
        }
    }
    for (double m : widths)
        omegas.push_back(qn + m * kappa);
    for (double w : {2.0, 5.0, 10.0, 30.0, 100.0, 300.0})
        omegas.push_back(w * omega_p);
    for (double w : {1.0, 3.0, 10.0})
        omegas.push_back(w * cutoff);

    std::vector<double> ks{0.0, kmax};
    for (double w : omegas) {
        if (w > qn) {
            const double k = k_at(qn, n0, w);
            if (k > 0.0 && k < kmax)
                ks.push_back(k);
        }
    }
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    return ks;
}

// Returns 2 * integral_0^kmax of the integrand (even in k).
quad::Result integrate_branch(const quad::Integrand& f, double qn, double n0, double kappa, double cutoff,
                              double abs_tol)
{
    const double omega_max = 20.0 * cutoff + 1.0;
    const double kmax = k_at(qn, n0, std::max(omega_max, 2.0 * qn));
    const std::vector<double> breaks = panel_breaks(qn, n0, kappa, cutoff, kmax);
    quad::Options opts;
    opts.abs_tol = 0.5 * abs_tol;
    opts.rel_tol = 1e-12;
    opts.max_intervals = 50000;
    quad::Result r = quad::integrate(f, std::span<const double>(breaks), opts);
    r.value *= 2.0;
    r.error *= 2.0;
    return r;
}

// Limit of a + (b + c ln x)/x from three samples.
double extrapolate_log_model(const std::array<double, 3>& x, const std::array<double, 3>& y)
{
    // Solve the 3x3 system by Cramer's rule.
    double m[3][3];
    for (int i = 0; i < 3; ++i) {
        m[i][0] = 1.0;
        m[i][1] = 1.0 / x[i];
        m[i][2] = std::log(x[i]) / x[i];
    }
    auto det3 = [](const double a[3][3]) {
        return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
               a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    };
    const double d = det3(m);
    double ma[3][3];
    for (int i = 0; i < 3; ++i) {
        ma[i][0] = y[i];
        ma[i][1] = m[i][1];
        ma[i][2] = m[i][2];
    }
    return det3(ma) / d;
}

}  // namespace

PoleParams pole_params(double qn, double kappa, double omega_p, double c, PoleConvention convention)
{
    if (!(kappa > 0.0))
        throw DomainError("pole_params: kappa must be positive");
    PoleParams p;
    p.u = 0.5 * (c * c * qn * qn + kappa * kappa - omega_p * omega_p);
    const double b = kappa * omega_p;
    const double root = std::sqrt(p.u * p.u + b * b);
    // -u + sqrt(u^2 + b^2) without cancellation for u > 0.
    const double inner = p.u > 0.0 ? b * b / (p.u + root) : root - p.u;
    p.r = std::sqrt(inner) / c;
    p.s = convention == PoleConvention::corrected ? kappa * omega_p / (c * c * p.r) : kappa * omega_p / (c * p.r);
    return p;
}

PoleParams pole_params(const GuidedBranch& branch, double kappa, PoleConvention convention, const UnitSystem& units)
{
    if (convention == PoleConvention::corrected)
        return pole_params(branch.qn, kappa, 1.0, 1.0, convention);
    // Evaluate in SI so that the explicit factors of c are not unity.
    const double w = units.omega_p_si();
    const double to_per_metre = w / si::c;
    PoleParams p = pole_params(branch.qn * to_per_metre, kappa * w, w, si::c, convention);
    p.r /= to_per_metre;
    p.s /= to_per_metre;
    p.u /= w * w;
    return p;
}

const char* to_string(ShiftMethod method) noexcept
{
    switch (method) {
    case ShiftMethod::numeric:
        return "numeric";
    case ShiftMethod::analytic:
        return "analytic";
    case ShiftMethod::asymptote:
        return "asymptote";
    }
    return "?";
}

cplx shift_integrand(double qn, double n0, double kappa, double k, double cutoff)
{
    const double omega = constant_q_omega(qn, n0, k);
    const double detuning = 1.0 - omega;
    return std::exp(-std::abs(detuning) / cutoff) / cplx(-kappa, detuning);
}

cplx vacuum_integrand(double qn, double n0, double kappa, double k, double cutoff)
{
    const double omega = constant_q_omega(qn, n0, k);
    return kI * std::exp(-std::abs(1.0 - omega) / cutoff) / cplx(1.0 + omega, kappa);
}

double shift_prefactor(const GuidedBranch& branch, const Position& atom, double coupling_over_gamma)
{
    const double f = transverse_profile(branch, atom.x, atom.y);
    return kTwoPi * branch.geometry.n0 * coupling_over_gamma * f * f;
}

ComplexShift lightshift_numeric(const GuidedBranch& branch, const Position& atom, double kappa,
                                double coupling_over_gamma, const NumericOptions& opts)
{
    if (!(kappa > 0.0))
        throw DomainError("lightshift_numeric: kappa must be positive");
    for (double c : opts.extrapolation_cutoffs)
        if (!(c > 10.0))
            throw DomainError("lightshift_numeric: cutoff must exceed 10 omega_p");
    if (!(opts.cutoff > 10.0))
        throw DomainError("lightshift_numeric: cutoff must exceed 10 omega_p");

    const double f = transverse_profile(branch, atom.x, atom.y);
    const double scale = coupling_over_gamma * f * f;

    ComplexShift out;
    out.branch = branch.order;
    out.method = ShiftMethod::numeric;
    CutoffStudy study;

    if (scale == 0.0) {
        out.value = 0.0;
        out.cutoff = study;
        return out;
    }

    const double n0 = branch.geometry.n0;
    const double qn = branch.qn;
    const double abs_tol = opts.abs_tol / scale;

    auto run = [&](double cutoff) {
        auto full = [&](double k) { return shift_integrand(qn, n0, kappa, k, cutoff); };
        auto renorm = [&](double k) {
            return shift_integrand(qn, n0, kappa, k, cutoff) - vacuum_integrand(qn, n0, kappa, k, cutoff);
        };
        const quad::Result raw = integrate_branch(full, qn, n0, kappa, cutoff, abs_tol);
        const quad::Result ren = integrate_branch(renorm, qn, n0, kappa, cutoff, abs_tol);
        study.cutoffs.push_back(cutoff);
        study.raw.push_back(raw.value * scale);
        study.renormalized.push_back(ren.value * scale);
        study.quadrature_error = std::max({study.quadrature_error, raw.error * scale, ren.error * scale});
    };

    if (opts.extrapolate) {
        for (double c : opts.extrapolation_cutoffs)
            run(c);
        std::array<double, 3> y{};
        for (int i = 0; i < 3; ++i)
            y[i] = study.renormalized[i].imag();
        study.extrapolated_im = extrapolate_log_model(opts.extrapolation_cutoffs, y);
        // Compare against a plain 1/x Richardson step on the two largest cutoffs.
        const double x1 = opts.extrapolation_cutoffs[1], x2 = opts.extrapolation_cutoffs[2];
        const double richardson = (x2 * y[2] - x1 * y[1]) / (x2 - x1);
        study.im_uncertainty = std::abs(study.extrapolated_im - richardson);
        study.log_slope = (study.raw[2].imag() - study.raw[0].imag()) /
                          std::log(opts.extrapolation_cutoffs[2] / opts.extrapolation_cutoffs[0]);

        const auto& cs = opts.extrapolation_cutoffs;
        const auto it = std::find(cs.begin(), cs.end(), opts.cutoff);
        double re;
        if (it != cs.end()) {
            re = study.raw[static_cast<std::size_t>(it - cs.begin())].real();
        } else {
            run(opts.cutoff);
            re = study.raw.back().real();
        }
        out.value = cplx(re, study.extrapolated_im);
    } else {
        run(opts.cutoff);
        study.extrapolated_im = study.renormalized[0].imag();
        out.value = cplx(study.raw[0].real(), study.renormalized[0].imag());
    }
    out.cutoff = std::move(study);
    return out;
}

ComplexShift lightshift_analytic(const GuidedBranch& branch, const Position& atom, double kappa,
                                 double coupling_over_gamma, AnalyticForm form, PoleConvention convention,
                                 const UnitSystem& units)
{
    const double prefactor = shift_prefactor(branch, atom, coupling_over_gamma);
    const PoleParams p = pole_params(branch, kappa, convention, units);
    const cplx ratio = branch.qn / cplx(p.r, p.s);
    const double sign = form == AnalyticForm::contour ? 1.0 : -1.0;
    const cplx root = std::sqrt(1.0 + sign * ratio * ratio);  // principal branch, Re >= 0
    ComplexShift out;
    out.value = -prefactor * root;
    out.branch = branch.order;
    out.method = ShiftMethod::analytic;
    return out;
}

ComplexShift threshold_asymptote(const GuidedBranch& branch, const Position& atom, double kappa,
                                 double coupling_over_gamma)
{
    if (!(kappa > 0.0))
        throw DomainError("threshold_asymptote: kappa must be positive");
    const double prefactor = shift_prefactor(branch, atom, coupling_over_gamma);
    ComplexShift out;
    out.value = prefactor * cplx(-1.0, 1.0) * 0.5 * std::sqrt(1.0 / kappa);
    out.branch = branch.order;
    out.method = ShiftMethod::asymptote;
    return out;
}

ComplexShift total_lightshift(std::span<const ComplexShift> per_branch)
{
    ComplexShift out;
    out.branch = -1;
    if (!per_branch.empty())
        out.method = per_branch.front().method;
    for (const ComplexShift& s : per_branch)
        out.value += s.value;
    return out;
}

PumpParams make_pump(const GuidedBranch& branch, double omega_p)
{
    if (!(branch.qn < omega_p))
        throw DomainError("pumped branch has no travelling solution at omega_p (threshold above pump)");
    PumpParams pump;
    pump.branch = branch.order;
    pump.omega_p = omega_p;
    pump.k0 = k_at(branch.qn, branch.geometry.n0, omega_p);
    pump.amplitude = 1.0;
    return pump;
}

DipoleState drive_and_dipole(const PumpParams& pump, const GuidedBranch& branch0, const AtomParams& atom, cplx total_L)
{
    if (!(branch0.qn < pump.omega_p))
        throw DomainError("drive_and_dipole: pumped mode is below threshold");
    const double detuning = dispersion(branch0, pump.k0, DispersionModel::constant_q) - pump.omega_p;
    if (std::abs(detuning) > 1e-12)
        throw DomainError("drive_and_dipole: pump is not resonant with the pumped branch");
    if (!(atom.gamma > 0.0))
        throw DomainError("drive_and_dipole: Gamma must be positive");

    const double kappa = branch0.geometry.kappa;
    const double g_over_gamma = std::sqrt(atom.g_squared) / atom.gamma;
    const double f0 = transverse_profile(branch0, atom.position.x, atom.position.y);
    const cplx mode = std::polar(f0, pump.k0 * atom.position.z);

    DipoleState st;
    st.chi = -g_over_gamma * mode * pump.amplitude / kappa;
    st.sigma_ss = st.chi / cplx(-1.0 + total_L.real(), atom.delta_a + total_L.imag());
    return st;
}

}  // namespace wgshift
