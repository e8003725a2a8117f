#include "wgshift/config.hpp"
#include "wgshift/errors.hpp"
#include "wgshift/field.hpp"

#include <doctest.h>

#include <cmath>

using namespace wgshift;

namespace {

struct Fixture {
    SimulationConfig cfg = default_config();
    std::vector<GuidedBranch> branches = enumerate_branches(cfg.geometry);

    std::vector<cplx> shifts() const
    {
        std::vector<cplx> out;
        for (const GuidedBranch& b : branches)
            out.push_back(lightshift_analytic(b, cfg.atom.position, cfg.geometry.kappa,
                                              cfg.atom.coupling_over_gamma())
                              .value);
        return out;
    }
    ScatteringModel model(std::vector<cplx> s, Position atom) const
    {
        return make_scattering_model(branches, std::move(s), cfg.geometry.kappa, cfg.atom.delta_a, atom);
    }
    ScatteringModel model() const { return model(shifts(), cfg.atom.position); }
};

FieldLine synthetic(double z_lo, double z_hi, std::size_t n)
{
    FieldLine line;
    for (std::size_t i = 0; i < n; ++i)
        line.z.push_back(z_lo + (z_hi - z_lo) * static_cast<double>(i) / static_cast<double>(n - 1));
    line.intensity.resize(n);
    line.amplitude.resize(n);
    return line;
}

}  // namespace

TEST_SUITE("field") {

TEST_CASE("no atom: pump plane wave with constant intensity")
{
    const Fixture fx;
    const ScatteringModel m = fx.model({0.0, 0.0}, fx.cfg.atom.position);
    const double x = 0.1, y = 0.3 * fx.cfg.geometry.Dy;
    const FieldLine line = intensity_line(m, x, y, -40.0 * kLambdaP, 40.0 * kLambdaP, 8001);
    for (double v : line.intensity)
        CHECK(v == doctest::Approx(line.asymptote).epsilon(1e-14));
    const Visibility vis = fringe_visibility(line);
    CHECK(vis.upstream < 1e-12);
    CHECK(vis.downstream < 1e-12);
    CHECK_THROWS_AS(fit_decay_length(line), InsufficientSignal);
}

TEST_CASE("odd branch vanishes on the centre plane")
{
    const Fixture fx;
    auto s = fx.shifts();
    const ScatteringModel full = fx.model(s, fx.cfg.atom.position);
    s[1] = 0.0;
    const ScatteringModel without = fx.model(s, fx.cfg.atom.position);
    // the denominator still carries the full L; only the branch-1 term is dropped
    ScatteringModel probe = without;
    probe.total_shift = full.total_shift;
    for (double z : {-3.0, 0.0, 0.7, 25.0}) {
        const Position p{0.0, 0.5 * fx.cfg.geometry.Dy, z};
        CHECK(stationary_field(full, p) == stationary_field(probe, p));
    }
}

TEST_CASE("atom on the odd node")
{
    const Fixture fx;
    Position at = fx.cfg.atom.position;
    at.x = 0.0;
    CHECK_THROWS_AS(stationary_field(fx.model({-0.1, -1.0}, at), {0.3, 0.1, 1.0}), SingularConfiguration);
    CHECK_NOTHROW(stationary_field(fx.model({-0.1, 0.0}, at), {0.3, 0.1, 1.0}));
}

TEST_CASE("continuity at the atom and recovery far away")
{
    const Fixture fx;
    const ScatteringModel m = fx.model();
    const double y = 0.5 * fx.cfg.geometry.Dy;
    for (double x : {0.0, 0.5 * fx.cfg.geometry.Dx}) {
        const cplx l = stationary_field(m, {x, y, -1e-12});
        const cplx r = stationary_field(m, {x, y, 1e-12});
        CHECK(std::abs(l - r) < 1e-10);
        const double f0 = transverse_profile(fx.branches[0], x, y);
        const double far = 5000.0 * kLambdaP;
        CHECK(std::norm(stationary_field(m, {x, y, far})) == doctest::Approx(f0 * f0).epsilon(1e-8));
        CHECK(std::norm(stationary_field(m, {x, y, -far})) == doctest::Approx(f0 * f0).epsilon(1e-8));
    }
}

TEST_CASE("Nyquist guard names the required sample count")
{
    const Fixture fx;
    const ScatteringModel m = fx.model();
    try {
        intensity_line(m, 0.0, 0.5 * fx.cfg.geometry.Dy, -40.0 * kLambdaP, 40.0 * kLambdaP, 100);
        FAIL("expected UndersampledLine");
    } catch (const UndersampledLine& e) {
        CHECK(e.required_samples() > 100);
        const FieldLine ok = intensity_line(m, 0.0, 0.5 * fx.cfg.geometry.Dy, -40.0 * kLambdaP,
                                            40.0 * kLambdaP, e.required_samples());
        CHECK(ok.z.size() == e.required_samples());
        for (double v : ok.intensity)
            CHECK(v >= 0.0);
    }
}

TEST_CASE("synthetic pure exponential is recovered exactly")
{
    FieldLine line = synthetic(-30.0, 30.0, 3001);
    line.asymptote = 2.0;
    for (std::size_t i = 0; i < line.z.size(); ++i)
        line.intensity[i] = 2.0 + 0.5 * std::exp(-std::abs(line.z[i]) / 4.25);
    CHECK(fit_decay_length(line, DecaySelector::slowest) == doctest::Approx(4.25).epsilon(1e-10));
    CHECK(fit_decay_length(line, DecaySelector::fastest) == doctest::Approx(4.25).epsilon(1e-10));
}

TEST_CASE("decaying fringes: envelope fit")
{
    FieldLine line = synthetic(-60.0, 10.0, 20001);
    line.asymptote = 1.0;
    for (std::size_t i = 0; i < line.z.size(); ++i) {
        const double z = line.z[i];
        line.intensity[i] = 1.0 + (z < 0 ? 0.3 * std::exp(z / 12.0) * std::cos(5.0 * z) : 0.0);
    }
    CHECK(fit_decay_length(line) == doctest::Approx(12.0).epsilon(1e-3));
}

TEST_CASE("visibility limits")
{
    const double K = 4.0;
    FieldLine line = synthetic(-20.0, 20.0, 8001);
    line.fringe_wavenumber = K;
    for (std::size_t i = 0; i < line.z.size(); ++i) {
        const double z = line.z[i];
        // pump plus an equal-amplitude counter-propagating wave upstream only
        line.intensity[i] = z < 0.0 ? std::norm(std::polar(1.0, 0.5 * K * z) + std::polar(1.0, -0.5 * K * z)) : 1.0;
    }
    const Visibility v = fringe_visibility(line);
    CHECK(v.upstream == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(v.downstream == 0.0);

    FieldLine narrow = synthetic(-2.0, 2.0, 101);
    narrow.fringe_wavenumber = K;
    CHECK_THROWS_AS(fringe_visibility(narrow), InsufficientSignal);
}

TEST_CASE("Fourier visibility of a pure cosine")
{
    const double K = 3.0;
    FieldLine line = synthetic(0.0, 20.0 * kTwoPi / K, 20001);
    for (std::size_t i = 0; i < line.z.size(); ++i)
        line.intensity[i] = 2.0 * (1.0 + 0.25 * std::cos(K * line.z[i]));
    // drop the duplicated endpoint of the last period
    line.z.pop_back();
    line.intensity.pop_back();
    CHECK(fourier_visibility(line, K, line.z.front(), line.z.back()) == doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("surface line is dominated by the threshold branch")
{
    const Fixture fx;
    const ScatteringModel m = fx.model();
    const double y = 0.5 * fx.cfg.geometry.Dy;
    const FieldLine a = intensity_line(m, 0.0, y, -40.0 * kLambdaP, 40.0 * kLambdaP, 8001);
    const FieldLine b = intensity_line(m, 0.5 * fx.cfg.geometry.Dx, y, -40.0 * kLambdaP, 40.0 * kLambdaP, 8001);
    auto swing = [](const FieldLine& l) {
        double lo = 1e300, hi = -1e300;
        for (double v : l.intensity) {
            lo = std::min(lo, v / l.asymptote);
            hi = std::max(hi, v / l.asymptote);
        }
        return hi - lo;
    };
    CHECK(swing(b) > 10.0 * swing(a));
}

}
