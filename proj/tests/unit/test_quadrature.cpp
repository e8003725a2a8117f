#include "wgshift/errors.hpp"
#include "wgshift/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace wgshift;
using cd = std::complex<double>;

TEST_SUITE("quadrature") {

TEST_CASE("smooth integrals to near machine precision")
{
    const auto r = quad::integrate([](double x) { return cd(std::sin(x), 0.0); }, 0.0, M_PI);
    CHECK(r.value.real() == doctest::Approx(2.0).epsilon(1e-13));
    const auto e = quad::integrate([](double x) { return std::exp(cd(0.0, x)); }, 0.0, 1.0);
    CHECK(std::abs(e.value - cd(std::sin(1.0), 1.0 - std::cos(1.0))) < 1e-14);
}

TEST_CASE("integrable endpoint singularity")
{
    const auto r = quad::integrate([](double x) { return cd(1.0 / std::sqrt(x), 0.0); }, 0.0, 1.0,
                                   {1e-10, 1e-10, 20000});
    CHECK(r.value.real() == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("narrow Lorentzian resolved through breakpoints")
{
    const double k = 1e-6;
    auto f = [k](double x) { return cd(0.0, 0.0) + 1.0 / cd(-k, 1.0 - x); };
    const std::vector<double> bp = {0.0, 1.0 - 100 * k, 1.0 - k, 1.0, 1.0 + k, 1.0 + 100 * k, 2.0};
    const auto r = quad::integrate(f, bp);
    // with t = 1 - x the integral is int_{-1}^{1} dt / (-k + i t) = -2 atan(1/k)
    CHECK(r.value.real() == doctest::Approx(-2.0 * std::atan(1.0 / k)).epsilon(1e-9));
    CHECK(std::abs(r.value.imag()) < 1e-9);
}

TEST_CASE("exhausted interval budget names the worst subinterval")
{
    auto f = [](double x) { return cd(std::sin(1.0 / (x + 1e-9)), 0.0); };
    try {
        quad::integrate(f, 0.0, 1.0, {1e-14, 1e-14, 8});
        FAIL("expected QuadratureError");
    } catch (const QuadratureError& e) {
        CHECK(e.worst_lo() < e.worst_hi());
        CHECK(e.worst_error() > 0.0);
    }
}

}
