#include "wgshift/config.hpp"
#include "wgshift/errors.hpp"
#include "wgshift/lightshift.hpp"
#include "wgshift/modesolver.hpp"
#include "wgshift/validate.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace wgshift;

namespace {

struct Setup {
    SimulationConfig cfg;
    std::vector<GuidedBranch> branches;
    double coupling;
};

Setup setup(const ConfigEntries& e = {})
{
    Setup s{resolve_config(e), {}, 0.0};
    s.branches = enumerate_branches(s.cfg.geometry);
    s.coupling = s.cfg.atom.coupling_over_gamma();
    return s;
}

}  // namespace

TEST_SUITE("lightshift") {

TEST_CASE("pole parameters satisfy the pole equations")
{
    for (double q : {0.5, 0.88, 0.999, 1.0, 1.001, 1.3})
        for (double kappa : {1e-6, 1e-3, 0.1}) {
            const PoleParams p = pole_params(q, kappa);
            CAPTURE(q);
            CAPTURE(kappa);
            CHECK(p.r > 0.0);
            CHECK(p.s > 0.0);
            CHECK(p.r * p.r - p.s * p.s == doctest::Approx(-2.0 * p.u).epsilon(1e-12).scale(kappa));
            CHECK(p.r * p.s == doctest::Approx(kappa).epsilon(1e-12));
            // (r + i s)^2 = (omega_p + i kappa)^2 - q^2
            const cplx z = cplx(p.r, p.s) * cplx(p.r, p.s);
            const cplx w = cplx(1.0, kappa) * cplx(1.0, kappa) - q * q;
            CHECK(std::abs(z - w) < 1e-12 * std::max(1.0, std::abs(w)));
        }
}

TEST_CASE("off-threshold limit: pole decay length equals group velocity over kappa")
{
    const double q = 0.88182096434, kappa = 1e-4, n0 = 1.5;
    const PoleParams p = pole_params(q, kappa);
    const double k0 = n0 * std::sqrt(1.0 - q * q);
    const double vg = k0 / (n0 * n0);  // d omega/dk of the constant-q branch at omega = 1
    CHECK(1.0 / (n0 * p.s) == doctest::Approx(vg / kappa).epsilon(1e-6));
}

TEST_CASE("the printed pole convention gives a different decay constant")
{
    const Setup s = setup();
    const PoleParams a = pole_params(s.branches[0], 1e-3, PoleConvention::corrected, s.cfg.units);
    const PoleParams b = pole_params(s.branches[0], 1e-3, PoleConvention::printed, s.cfg.units);
    CHECK(a.r == doctest::Approx(b.r));
    CHECK(std::abs(b.s / a.s - 1.0) > 1.0);
}

TEST_CASE("integrand definition")
{
    const double qn = 0.9, n0 = 1.5, kappa = 1e-3, k = 0.7, cut = 100.0;
    const double w = std::sqrt(k * k / (n0 * n0) + qn * qn);
    const cplx expected = std::exp(-std::abs(w - 1.0) / cut) / cplx(-kappa, 1.0 - w);
    CHECK(std::abs(shift_integrand(qn, n0, kappa, k, cut) - expected) < 1e-15 * std::abs(expected));
    const cplx vac = cplx(0.0, 1.0) * std::exp(-std::abs(w - 1.0) / cut) / cplx(1.0 + w, kappa);
    CHECK(std::abs(vacuum_integrand(qn, n0, kappa, k, cut) - vac) < 1e-15);
}

TEST_CASE("golden-rule limit of the off-threshold branch")
{
    // Re L0 -> -(3/4pi) n0 (lambda^2/A) |f0|^2 / sqrt(1 - q0^2) as kappa -> 0, with
    // A, |f0|^2 and q0 taken from an independent numerical computation.
    const double A = 0.356689512399 * kLambdaP * kLambdaP;
    const double f2 = 0.191890180428, q0 = 0.88182096434, n0 = 1.5;
    const double golden = -3.0 / (4.0 * kPi) * n0 * kLambdaP * kLambdaP / A * f2 / std::sqrt(1.0 - q0 * q0);
    CHECK(golden == doctest::Approx(-0.408512818606).epsilon(1e-10));

    const Setup s = setup({{"kappa", "1e-7"}});
    const ComplexShift a = lightshift_analytic(s.branches[0], s.cfg.atom.position, 1e-7, s.coupling);
    CHECK(a.value.real() == doctest::Approx(golden).epsilon(1e-6));

    const Setup d = setup();
    const ComplexShift n = lightshift_numeric(d.branches[0], d.cfg.atom.position, 1e-3, d.coupling);
    CHECK(n.value.real() == doctest::Approx(golden).epsilon(1e-3));
}

TEST_CASE("numeric and analytic agree at the default point")
{
    const Setup s = setup();
    for (const GuidedBranch& b : s.branches) {
        const ComplexShift n = lightshift_numeric(b, s.cfg.atom.position, 1e-3, s.coupling, s.cfg.numeric_options());
        const ComplexShift a = lightshift_analytic(b, s.cfg.atom.position, 1e-3, s.coupling);
        CAPTURE(b.order);
        CHECK(n.method == ShiftMethod::numeric);
        CHECK(a.method == ShiftMethod::analytic);
        CHECK(n.value.real() == doctest::Approx(a.value.real()).epsilon(1e-3));
        if (std::abs(a.value.imag()) > 0.1)
            CHECK(n.value.imag() == doctest::Approx(a.value.imag()).epsilon(1e-2));
        REQUIRE(n.cutoff);
        CHECK(n.cutoff->quadrature_error < 1e-6);
        CHECK(n.cutoff->cutoffs.size() == 3);
    }
}

TEST_CASE("raw imaginary part diverges logarithmically with the cutoff")
{
    const Setup s = setup();
    const GuidedBranch& b = s.branches[1];
    const ComplexShift n = lightshift_numeric(b, s.cfg.atom.position, 1e-3, s.coupling);
    const double f = transverse_profile(b, s.cfg.atom.position.x, s.cfg.atom.position.y);
    CHECK(n.cutoff->log_slope == doctest::Approx(2.0 * 1.5 * s.coupling * f * f).epsilon(0.02));
    // renormalized values barely move with the cutoff
    const auto& r = n.cutoff->renormalized;
    CHECK(std::abs(r[2].imag() - r[0].imag()) < 0.02 * std::abs(r[1].imag()));
}

TEST_CASE("threshold behaviour")
{
    const Setup s = setup();
    const double coupling = s.coupling;
    const Position& at = s.cfg.atom.position;
    const GuidedBranch& b1 = s.branches[1];

    const ComplexShift l = lightshift_analytic(b1, at, 1e-3, coupling);
    CHECK(std::abs(l.value) > 10.0);
    CHECK(std::abs(lightshift_analytic(s.branches[0], at, 1e-3, coupling).value) < 1.0);

    // |L| sqrt(kappa) is constant and the asymptote takes over for small kappa
    const double ref = std::abs(lightshift_analytic(b1, at, 1e-5, coupling).value) * std::sqrt(1e-5);
    for (double kappa : {1e-6, 1e-4, 1e-3})
        CHECK(std::abs(lightshift_analytic(b1, at, kappa, coupling).value) * std::sqrt(kappa) ==
              doctest::Approx(ref).epsilon(1e-3));
    const cplx asym = threshold_asymptote(b1, at, 1e-6, coupling).value;
    const cplx full = lightshift_analytic(b1, at, 1e-6, coupling).value;
    CHECK(std::abs(asym - full) < 1e-3 * std::abs(full));
    // equal real and imaginary magnitudes at threshold
    CHECK(asym.real() == doctest::Approx(-asym.imag()));
    CHECK(asym.real() < 0.0);
}

TEST_CASE("the sign-flipped closed form disagrees with quadrature")
{
    const Setup s = setup();
    const GuidedBranch& b = s.branches[0];
    const cplx good = lightshift_analytic(b, s.cfg.atom.position, 1e-3, s.coupling).value;
    const cplx bad = lightshift_analytic(b, s.cfg.atom.position, 1e-3, s.coupling, AnalyticForm::as_printed).value;
    CHECK(std::abs(bad - good) > 0.1 * std::abs(good));
}

TEST_CASE("atom on a node of the branch feels no shift from it")
{
    const Setup s = setup({{"atom_x", "0"}});
    const ComplexShift a = lightshift_analytic(s.branches[1], s.cfg.atom.position, 1e-3, s.coupling);
    const ComplexShift n = lightshift_numeric(s.branches[1], s.cfg.atom.position, 1e-3, s.coupling);
    CHECK(a.value == cplx(0.0, 0.0));
    CHECK(n.value == cplx(0.0, 0.0));
}

TEST_CASE("passivity on random configurations")
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < 40; ++i) {
        const Setup s = setup(random_valid_entries(rng));
        for (const GuidedBranch& b : s.branches) {
            CHECK(lightshift_analytic(b, s.cfg.atom.position, s.cfg.geometry.kappa, s.coupling).value.real() <= 0.0);
        }
    }
}

TEST_CASE("total shift and steady state")
{
    const Setup s = setup();
    std::vector<ComplexShift> per;
    for (const GuidedBranch& b : s.branches)
        per.push_back(lightshift_analytic(b, s.cfg.atom.position, 1e-3, s.coupling));
    const ComplexShift L = total_lightshift(per);
    CHECK(L.value == per[0].value + per[1].value);

    const PumpParams pump = make_pump(s.branches[0]);
    CHECK(pump.k0 == doctest::Approx(1.5 * std::sqrt(1.0 - std::pow(s.branches[0].qn, 2))));
    CHECK_THROWS_AS(make_pump(s.branches[1], 0.99), DomainError);
    const DipoleState st = drive_and_dipole(pump, s.branches[0], s.cfg.atom, L.value);
    const cplx D(-1.0 + L.value.real(), s.cfg.atom.delta_a + L.value.imag());
    CHECK(std::abs(st.sigma_ss * D - st.chi) < 1e-14 * std::abs(st.chi));
    const double f0 = transverse_profile(s.branches[0], s.cfg.atom.position.x, s.cfg.atom.position.y);
    CHECK(std::abs(st.chi) == doctest::Approx(std::sqrt(s.cfg.atom.g_squared) / s.cfg.atom.gamma * f0 / 1e-3));
}

}
