#pragma once

#include <complex>
#include <functional>
#include <span>

namespace wgshift::quad {

using Integrand = std::function<std::complex<double>(double)>;

struct Options {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_intervals = 20000;
};

struct Result {
    std::complex<double> value;
    double error = 0.0;
    int evaluations = 0;
    int intervals = 0;
};

/// Globally adaptive Gauss-Kronrod (7/15) integration of a complex integrand.
///
/// `breakpoints` must be sorted and hold at least two entries; every entry is
/// kept as a panel boundary, so narrow features placed on a breakpoint are
/// never straddled by a single coarse panel. The interval with the largest
/// error estimate is bisected until the summed estimate meets
/// max(abs_tol, rel_tol * |I|). Throws QuadratureError naming the worst
/// subinterval when max_intervals is exhausted.
Result integrate(const Integrand& f, std::span<const double> breakpoints, const Options& opts = {});

/// Convenience overload for a single interval [a, b].
Result integrate(const Integrand& f, double a, double b, const Options& opts = {});

}  // namespace wgshift::quad
