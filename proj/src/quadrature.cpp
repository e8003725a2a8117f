#include "wgshift/quadrature.hpp"

#include "wgshift/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <queue>
#include <vector>

namespace wgshift::quad {

namespace {

// Kronrod nodes on [0, 1] (the rule is symmetric); odd indices are the Gauss points.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Panel {
    double a, b;
    std::complex<double> value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gauss_kronrod(const Integrand& f, double a, double b)
{
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const std::complex<double> fc = f(center);
    std::complex<double> kronrod = fc * kKronrodWeights[7];
    std::complex<double> gauss = fc * kGaussWeights[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kNodes[j];
        const std::complex<double> sum = f(center - dx) + f(center + dx);
        kronrod += kKronrodWeights[j] * sum;
        if (j % 2 == 1)
            gauss += kGaussWeights[j / 2] * sum;
    }
    kronrod *= half;
    gauss *= half;
    return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

Result integrate(const Integrand& f, std::span<const double> breakpoints, const Options& opts)
{
    if (breakpoints.size() < 2)
        throw DomainError("quadrature needs at least two breakpoints");

    std::priority_queue<Panel> panels;
    Result res;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        const double a = breakpoints[i], b = breakpoints[i + 1];
        if (!(b > a))
            continue;
        Panel p = gauss_kronrod(f, a, b);
        res.evaluations += 15;
        res.value += p.value;
        res.error += p.error;
        panels.push(p);
    }

    while (!panels.empty()) {
        const double target = std::max(opts.abs_tol, opts.rel_tol * std::abs(res.value));
        if (res.error <= target)
            break;
        if (static_cast<int>(panels.size()) >= opts.max_intervals) {
            const Panel& w = panels.top();
            char buf[256];
            std::snprintf(buf, sizeof buf,
                          "adaptive quadrature did not converge: error %.3e > %.3e after %d panels; "
                          "worst subinterval [%.17g, %.17g] (error %.3e)",
                          res.error, target, static_cast<int>(panels.size()), w.a, w.b, w.error);
            throw QuadratureError(buf, w.a, w.b, w.error);
        }
        const Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            throw QuadratureError("adaptive quadrature: subinterval below floating-point resolution", worst.a,
                                  worst.b, worst.error);
        }
        const Panel left = gauss_kronrod(f, worst.a, mid);
        const Panel right = gauss_kronrod(f, mid, worst.b);
        res.evaluations += 30;
        res.value += left.value + right.value - worst.value;
        res.error += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
    }

    // Re-sum to shed the drift of the running updates.
    res.value = 0.0;
    res.error = 0.0;
    std::vector<Panel> all;
    all.reserve(panels.size());
    while (!panels.empty()) {
        all.push_back(panels.top());
        panels.pop();
    }
    std::sort(all.begin(), all.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
    for (const Panel& p : all) {
        res.value += p.value;
        res.error += p.error;
    }
    res.intervals = static_cast<int>(all.size());
    return res;
}

Result integrate(const Integrand& f, double a, double b, const Options& opts)
{
    if (a == b)
        return {};
    if (a > b) {
        Result r = integrate(f, b, a, opts);
        r.value = -r.value;
        return r;
    }
    const std::array<double, 2> bp{a, b};
    return integrate(f, std::span<const double>(bp), opts);
}

}  // namespace wgshift::quad
