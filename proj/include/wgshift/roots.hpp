#pragma once

#include <cmath>
#include <utility>

namespace wgshift::roots {

/// Bisection on a bracket with f(lo), f(hi) of opposite sign. Stops when the
/// bracket is narrower than xtol relative to its position (or absolutely).
template <class F>
double bisect(F&& f, double lo, double hi, double xtol = 1e-14, int max_iter = 400)
{
    double flo = f(lo);
    for (int i = 0; i < max_iter; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= xtol * std::max(1.0, std::abs(mid)))
            return mid;
        const double fmid = f(mid);
        if (fmid == 0.0)
            return mid;
        if ((fmid < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Scan [lo, hi] with `samples` points for the first sign change of f.
/// Returns false if none is found.
template <class F>
bool scan_bracket(F&& f, double lo, double hi, int samples, std::pair<double, double>& out)
{
    double x0 = lo;
    double f0 = f(x0);
    for (int i = 1; i <= samples; ++i) {
        const double x1 = lo + (hi - lo) * static_cast<double>(i) / samples;
        const double f1 = f(x1);
        if (f0 == 0.0) {
            out = {x0, x0};
            return true;
        }
        if ((f0 < 0.0) != (f1 < 0.0)) {
            out = {x0, x1};
            return true;
        }
        x0 = x1;
        f0 = f1;
    }
    return false;
}

/// Bisection to 1e-14 followed by one Newton polish step, kept only if it
/// stays in the bracket and lowers |f|.
template <class F, class DF>
double bracketed_root(F&& f, DF&& df, double lo, double hi)
{
    double x = bisect(f, lo, hi, 1e-14);
    const double fx = f(x);
    const double d = df(x);
    if (d != 0.0 && std::isfinite(d)) {
        const double xn = x - fx / d;
        if (xn >= lo && xn <= hi && std::abs(f(xn)) < std::abs(fx))
            x = xn;
    }
    return x;
}

}  // namespace wgshift::roots
