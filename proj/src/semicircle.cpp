#include "skewspec/semicircle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "skewspec/errors.hpp"

namespace skewspec::semicircle
{
double pdf(double x)
{
    if (!(std::abs(x) <= 2.0))
        return 0.0;
    return std::sqrt(std::max(0.0, 4.0 - x * x)) / (2.0 * std::numbers::pi);
}

double cdf(double x)
{
    if (x <= -2.0)
        return 0.0;
    if (x >= 2.0)
        return 1.0;
    double const v = 0.5 + x * std::sqrt(4.0 - x * x) / (4.0 * std::numbers::pi)
                     + std::asin(x / 2.0) / std::numbers::pi;
    return std::clamp(v, 0.0, 1.0);
}

std::uint64_t catalan(unsigned t)
{
    if (t > 33)
        throw EnumerationBoundExceeded("Catalan number exceeds 64 bits");
    // C_{j+1} = C_j * 2(2j+1) / (j+2), exact at every step
    unsigned __int128 c = 1;
    for (unsigned j = 0; j < t; ++j)
        c = c * (2 * (2 * j + 1)) / (j + 2);
    return static_cast<std::uint64_t>(c);
}

double moment(unsigned k)
{
    if (k % 2 == 1)
        return 0.0;
    return static_cast<double>(catalan(k / 2));
}

double ks_distance(ESD const& e)
{
    auto const pts = e.points();
    if (pts.empty())
        throw InvalidParams("KS distance of an empty ESD");
    double const n = static_cast<double>(pts.size());
    double worst = 0.0;
    std::size_t i = 0;
    while (i < pts.size())
    {
        std::size_t j = i;
        while (j < pts.size() && pts[j] == pts[i])
            ++j;
        double const f = cdf(pts[i]);
        double const left = static_cast<double>(i) / n;
        double const right = static_cast<double>(j) / n;
        worst = std::max({worst, std::abs(left - f), std::abs(right - f)});
        i = j;
    }
    return worst;
}

double empirical_moment(ESD const& e, unsigned k)
{
    auto const pts = e.points();
    if (pts.empty())
        throw InvalidParams("moment of an empty ESD");
    double acc = 0.0;
    for (double x : pts)
    {
        double term = 1.0;
        for (unsigned j = 0; j < k; ++j)
            term *= x;
        acc += term;
    }
    return acc / static_cast<double>(pts.size());
}

double quadrature_moment(unsigned k, unsigned nodes)
{
    // x = 2 cos(theta): integral = (2/pi) int_0^pi (2 cos theta)^k sin^2 theta dtheta
    double acc = 0.0;
    double const np1 = static_cast<double>(nodes) + 1.0;
    for (unsigned j = 1; j <= nodes; ++j)
    {
        double const theta = std::numbers::pi * j / np1;
        double const s = std::sin(theta);
        acc += std::pow(2.0 * std::cos(theta), static_cast<double>(k)) * s * s;
    }
    return 2.0 * acc / np1;
}

double quantile(double u)
{
    if (u <= 0.0)
        return -2.0;
    if (u >= 1.0)
        return 2.0;
    double lo = -2.0, hi = 2.0;
    double x = 0.0;
    for (int it = 0; it < 200; ++it)
    {
        double const f = cdf(x) - u;
        if (f > 0)
            hi = x;
        else
            lo = x;
        double const d = pdf(x);
        double next = (d > 0) ? x - f / d : 0.5 * (lo + hi);
        if (!(next > lo && next < hi))
            next = 0.5 * (lo + hi);
        if (std::abs(next - x) <= 1e-15 || hi - lo <= 1e-15)
            return next;
        x = next;
    }
    return x;
}

}  // namespace skewspec::semicircle
