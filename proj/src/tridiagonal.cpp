#include "skewspec/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace skewspec
{
namespace
{
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxIterPerEigenvalue = 60;

double infinity_norm(SymTridiagonal const& t)
{
    std::size_t const n = t.size();
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
        double row = std::abs(t.diag[i]);
        if (i > 0)
            row += std::abs(t.offdiag[i - 1]);
        if (i + 1 < n)
            row += std::abs(t.offdiag[i]);
        norm = std::max(norm, row);
    }
    return norm;
}

std::pair<double, double> sym2x2_eigenvalues(double a, double b, double c)
{
    double const sm = a + c;
    double const adf = std::abs(a - c);
    double const ab = std::abs(2.0 * b);
    double const acmx = std::abs(a) > std::abs(c) ? a : c;
    double const acmn = std::abs(a) > std::abs(c) ? c : a;
    double rt;
    if (adf > ab)
        rt = adf * std::sqrt(1.0 + (ab / adf) * (ab / adf));
    else if (adf < ab)
        rt = ab * std::sqrt(1.0 + (adf / ab) * (adf / ab));
    else
        rt = ab * std::sqrt(2.0);
    if (sm == 0.0)
        return {0.5 * rt, -0.5 * rt};
    // The smaller-magnitude root from the determinant avoids cancellation
    double const rt1 = sm < 0.0 ? 0.5 * (sm - rt) : 0.5 * (sm + rt);
    return {rt1, (acmx / rt1) * acmn - (b / rt1) * b};
}
}  // namespace

std::size_t sturm_count(SymTridiagonal const& t, double x)
{
    std::size_t const n = t.size();
    if (n == 0)
        return 0;
    double pivmin = std::numeric_limits<double>::min();
    for (double e : t.offdiag)
        pivmin = std::max(pivmin, e * e * std::numeric_limits<double>::min());

    std::size_t count = 0;
    double d = t.diag[0] - x;
    for (std::size_t i = 0;; ++i)
    {
        if (std::abs(d) < pivmin)
            d = -pivmin;
        if (d < 0)
            ++count;
        if (i + 1 == n)
            break;
        double const e = t.offdiag[i];
        d = t.diag[i + 1] - x - e * e / d;
    }
    return count;
}

std::optional<std::vector<double>> eigenvalues_implicit_ql(SymTridiagonal t)
{
    int const n = static_cast<int>(t.size());
    std::vector<double>& d = t.diag;
    std::vector<double> e(t.offdiag);
    e.resize(static_cast<std::size_t>(std::max(n, 1)), 0.0);
    double const tol = kEps * infinity_norm(t);

    for (int l = 0; l < n; ++l)
    {
        int iter = 0;
        int m;
        do
        {
            for (m = l; m < n - 1; ++m)
            {
                if (std::abs(e[m]) <= tol)
                    break;
            }
            if (m == l + 1)
            {
                // Isolated 2x2 block: closed form as in LAPACK dlae2
                auto const [rt1, rt2] = sym2x2_eigenvalues(d[l], e[l], d[l + 1]);
                d[l] = rt1;
                d[l + 1] = rt2;
                e[l] = 0.0;
                m = l;
            }
            else if (m != l)
            {
                if (iter++ == kMaxIterPerEigenvalue)
                    return std::nullopt;
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int i;
                for (i = m - 1; i >= l; --i)
                {
                    double const f = s * e[i];
                    double const b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0)
                    {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if (r == 0.0 && i >= l)
                    continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    std::sort(d.begin(), d.end());
    return std::move(d);
}

std::vector<double> eigenvalues_bisection(SymTridiagonal const& t)
{
    std::size_t const n = t.size();
    std::vector<double> out(n);
    if (n == 0)
        return out;

    // Gershgorin enclosure
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < n; ++i)
    {
        double radius = 0.0;
        if (i > 0)
            radius += std::abs(t.offdiag[i - 1]);
        if (i + 1 < n)
            radius += std::abs(t.offdiag[i]);
        lo = std::min(lo, t.diag[i] - radius);
        hi = std::max(hi, t.diag[i] + radius);
    }
    double const scale = std::max({std::abs(lo), std::abs(hi), std::numeric_limits<double>::min()});
    lo -= 2 * kEps * scale;
    hi += 2 * kEps * scale;
    double const abstol = 2 * kEps * scale;

    for (std::size_t k = 0; k < n; ++k)
    {
        // k-th smallest: largest x with count(x) <= k
        double a = (k > 0) ? std::max(lo, out[k - 1] - abstol) : lo;
        double b = hi;
        while (b - a > abstol)
        {
            double const mid = a + 0.5 * (b - a);
            if (mid <= a || mid >= b)
                break;
            if (sturm_count(t, mid) <= k)
                a = mid;
            else
                b = mid;
        }
        out[k] = a + 0.5 * (b - a);
    }
    return out;
}

std::vector<double> tridiagonal_eigenvalues(SymTridiagonal const& t, TridiagonalMethod method)
{
    if (method == TridiagonalMethod::implicit_ql)
    {
        if (auto vals = eigenvalues_implicit_ql(t))
            return std::move(*vals);
    }
    return eigenvalues_bisection(t);
}

}  // namespace skewspec
