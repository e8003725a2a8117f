#include "wgshift/field.hpp"

#include "wgshift/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace wgshift {

namespace {

struct Extremum {
    double z;
    double value;
};

// Interior local extrema of v, refined by a parabola through three samples.
void local_extrema(const std::vector<double>& z, const std::vector<double>& v, std::size_t lo, std::size_t hi,
                   std::vector<Extremum>& maxima, std::vector<Extremum>& minima)
{
    for (std::size_t i = lo + 1; i + 1 < hi; ++i) {
        const double a = v[i - 1], b = v[i], c = v[i + 1];
        const bool is_max = b > a && b >= c;
        const bool is_min = b < a && b <= c;
        if (!is_max && !is_min)
            continue;
        const double denom = a - 2.0 * b + c;
        double shift = 0.0, value = b;
        if (denom != 0.0) {
            shift = 0.5 * (a - c) / denom;
            value = b - 0.25 * (a - c) * shift;
        }
        const double zz = z[i] + shift * (z[i + 1] - z[i]);
        (is_max ? maxima : minima).push_back({zz, value});
    }
}

double interpolate(const std::vector<Extremum>& pts, double z)
{
    if (pts.size() == 1 || z <= pts.front().z)
        return pts.front().value;
    if (z >= pts.back().z)
        return pts.back().value;
    auto it = std::lower_bound(pts.begin(), pts.end(), z, [](const Extremum& e, double v) { return e.z < v; });
    const Extremum& b = *it;
    const Extremum& a = *(it - 1);
    return a.value + (b.value - a.value) * (z - a.z) / (b.z - a.z);
}

// Least-squares slope of log(y) against d; returns -1/slope.
double log_linear_length(const std::vector<double>& d, const std::vector<double>& y)
{
    const std::size_t n = d.size();
    double sd = 0, sl = 0, sdd = 0, sdl = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double l = std::log(y[i]);
        sd += d[i];
        sl += l;
        sdd += d[i] * d[i];
        sdl += d[i] * l;
    }
    const double slope = (n * sdl - sd * sl) / (n * sdd - sd * sd);
    if (!(slope < 0.0))
        throw InsufficientSignal("modulation does not decay away from the atom");
    return -1.0 / slope;
}

}  // namespace

ScatteringModel make_scattering_model(std::vector<GuidedBranch> branches, std::vector<cplx> shifts, double kappa,
                                      double delta_a, const Position& atom, PoleConvention convention,
                                      const UnitSystem& units)
{
    if (branches.empty())
        throw DomainError("scattering model needs at least the pumped branch");
    if (branches.size() != shifts.size())
        throw DomainError("one light shift per branch required");
    ScatteringModel m;
    m.n0 = branches.front().geometry.n0;
    m.k0 = make_pump(branches.front()).k0;
    m.delta_a = delta_a;
    m.atom = atom;
    for (const GuidedBranch& b : branches)
        m.poles.push_back(pole_params(b, kappa, convention, units));
    for (const cplx& s : shifts)
        m.total_shift += s;
    m.branches = std::move(branches);
    m.shifts = std::move(shifts);
    return m;
}

cplx stationary_field(const ScatteringModel& m, const Position& p)
{
    const GuidedBranch& pumped = m.branches.front();
    const double f0 = pumped.profile_unchecked(p.x, p.y);
    const double f0_atom = pumped.profile_unchecked(m.atom.x, m.atom.y);
    const double dz = std::abs(p.z - m.atom.z);
    const cplx denom = m.denominator();

    cplx field = std::polar(f0, m.k0 * p.z);
    for (std::size_t n = 0; n < m.branches.size(); ++n) {
        const GuidedBranch& b = m.branches[n];
        const double fn_atom = b.profile_unchecked(m.atom.x, m.atom.y);
        if (fn_atom == 0.0) {
            if (m.shifts[n] == cplx(0.0))
                continue;
            throw SingularConfiguration("atom sits on a node of branch " + std::to_string(b.order) +
                                        " but its light shift is nonzero");
        }
        const double fn = n == 0 ? f0 : b.profile_unchecked(p.x, p.y);
        if (fn == 0.0)
            continue;
        const cplx wave = std::exp(m.n0 * cplx(-m.poles[n].s, m.poles[n].r) * dz);
        field -= m.shifts[n] / denom * wave * (f0_atom / fn_atom) * fn;
    }
    return field;
}

double max_intensity_wavenumber(const ScatteringModel& m)
{
    double kmax = 2.0 * m.k0;
    for (std::size_t n = 0; n < m.poles.size(); ++n) {
        const double kn = m.n0 * m.poles[n].r;
        kmax = std::max({kmax, m.k0 + kn, 2.0 * kn});
        for (std::size_t j = 0; j < n; ++j)
            kmax = std::max(kmax, kn + m.n0 * m.poles[j].r);
    }
    return kmax;
}

FieldLine intensity_line(const ScatteringModel& m, double x, double y, double z_min, double z_max,
                         std::size_t samples)
{
    if (!(z_max > z_min))
        throw DomainError("intensity_line: empty z range");
    const GuidedBranch& pumped = m.branches.front();
    if (!(y >= 0.0 && y <= pumped.geometry.Dy))
        throw DomainError("intensity_line: y outside the plates");

    const double period = kTwoPi / max_intensity_wavenumber(m);
    const auto required = static_cast<std::size_t>(std::ceil(16.0 * (z_max - z_min) / period)) + 1;
    if (samples < required)
        throw UndersampledLine("intensity_line: " + std::to_string(samples) + " samples undersample the fringes; need at least " +
                                   std::to_string(required),
                               required);

    FieldLine line;
    line.x = x;
    line.y = y;
    line.z_atom = m.atom.z;
    const double f0 = pumped.profile_unchecked(x, y);
    line.asymptote = f0 * f0;
    line.fringe_wavenumber = 2.0 * m.k0;
    line.z.resize(samples);
    line.amplitude.resize(samples);
    line.intensity.resize(samples);
    const double step = (z_max - z_min) / static_cast<double>(samples - 1);
    for (std::size_t i = 0; i < samples; ++i) {
        const double z = z_min + step * static_cast<double>(i);
        line.z[i] = z;
        line.amplitude[i] = stationary_field(m, {x, y, z});
        line.intensity[i] = std::norm(line.amplitude[i]);
    }
    return line;
}

double fit_decay_length(const FieldLine& line, DecaySelector selector)
{
    // Upstream samples, ordered by increasing distance from the atom.
    std::vector<double> dist, delta;
    for (std::size_t i = line.z.size(); i-- > 0;) {
        if (line.z[i] < line.z_atom) {
            dist.push_back(line.z_atom - line.z[i]);
            delta.push_back(line.intensity[i] - line.asymptote);
        }
    }
    if (dist.size() < 8)
        throw InsufficientSignal("fit_decay_length: fewer than 8 upstream samples");

    double peak = 0.0;
    for (double v : delta)
        peak = std::max(peak, std::abs(v));
    if (!(peak > 1e-9 * std::abs(line.asymptote)) || peak == 0.0)
        throw InsufficientSignal("fit_decay_length: modulation below 1e-9 of the asymptote");

    std::vector<Extremum> maxima, minima;
    local_extrema(dist, delta, 0, dist.size(), maxima, minima);

    std::vector<double> d, env;
    if (maxima.size() >= 3 && minima.size() >= 3) {
        for (const Extremum& e : maxima) {
            if (e.z < minima.front().z || e.z > minima.back().z)
                continue;
            const double half = 0.5 * (e.value - interpolate(minima, e.z));
            if (half > 0.0) {
                d.push_back(e.z);
                env.push_back(half);
            }
        }
    } else {
        for (std::size_t i = 0; i < dist.size(); ++i) {
            if (dist[i] > 0.0 && delta[i] != 0.0) {
                d.push_back(dist[i]);
                env.push_back(std::abs(delta[i]));
            }
        }
    }
    if (d.size() < 3)
        throw InsufficientSignal("fit_decay_length: envelope has fewer than 3 points");

    std::vector<double> fd, fe;
    if (selector == DecaySelector::slowest) {
        const double span = d.back();
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (d[i] >= 0.25 * span) {
                fd.push_back(d[i]);
                fe.push_back(env[i]);
            }
        }
    } else {
        const double stop = env.front() * std::exp(-3.0);
        for (std::size_t i = 0; i < d.size() && env[i] >= stop; ++i) {
            fd.push_back(d[i]);
            fe.push_back(env[i]);
        }
    }
    if (fd.size() < 3)
        throw InsufficientSignal("fit_decay_length: fit window holds fewer than 3 envelope points");
    return log_linear_length(fd, fe);
}

Visibility fringe_visibility(const FieldLine& line)
{
    if (!(line.fringe_wavenumber > 0.0))
        throw DomainError("fringe_visibility: line has no fringe wavenumber");
    const double period = kTwoPi / line.fringe_wavenumber;
    if (line.z.empty() || line.z.front() > line.z_atom - 5.0 * period || line.z.back() < line.z_atom + 5.0 * period)
        throw InsufficientSignal("fringe_visibility: line must span at least 5 periods each side of the atom");

    auto side = [&](double lo, double hi) {
        std::size_t a = 0, b = line.z.size();
        while (a < b && line.z[a] < lo)
            ++a;
        std::size_t e = a;
        while (e < b && line.z[e] <= hi)
            ++e;
        std::vector<Extremum> maxima, minima;
        local_extrema(line.z, line.intensity, a, e, maxima, minima);
        if (maxima.empty() || minima.empty())
            return 0.0;
        double imax = maxima.front().value, imin = minima.front().value;
        for (const Extremum& x : maxima)
            imax = std::max(imax, x.value);
        for (const Extremum& x : minima)
            imin = std::min(imin, x.value);
        return (imax - imin) / (imax + imin);
    };

    Visibility v;
    v.upstream = side(line.z_atom - 3.0 * period, line.z_atom);
    v.downstream = side(line.z_atom, line.z_atom + 3.0 * period);
    return v;
}

double fourier_visibility(const FieldLine& line, double wavenumber, double z_lo, double z_hi)
{
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < line.z.size(); ++i)
        if (line.z[i] >= z_lo && line.z[i] <= z_hi)
            idx.push_back(i);
    if (idx.size() < 2)
        throw InsufficientSignal("fourier_visibility: window holds fewer than 2 samples");
    double mean = 0.0;
    for (std::size_t i : idx)
        mean += line.intensity[i];
    mean /= static_cast<double>(idx.size());
    cplx acc = 0.0;
    for (std::size_t i : idx)
        acc += (line.intensity[i] - mean) * std::polar(1.0, -wavenumber * line.z[i]);
    return 2.0 * std::abs(acc) / (static_cast<double>(idx.size()) * mean);
}

}  // namespace wgshift
