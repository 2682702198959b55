#include "skewspec/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "skewspec/errors.hpp"
#include "skewspec/format.hpp"

namespace skewspec
{
//---------------------------------------------------------------------------//
// Spectrum / ESD
//---------------------------------------------------------------------------//
Spectrum::Spectrum(std::vector<double> lambdas) : lambdas_(std::move(lambdas))
{
    std::sort(lambdas_.begin(), lambdas_.end());
}

Spectrum Spectrum::scaled(double factor) const
{
    std::vector<double> v(lambdas_);
    for (double& x : v)
        x *= factor;
    return Spectrum(std::move(v));
}

bool Spectrum::is_symmetric(double tol) const
{
    std::size_t const n = lambdas_.size();
    if (n == 0)
        return true;
    double const big = std::max({1.0, std::abs(lambdas_.front()), std::abs(lambdas_.back())});
    for (std::size_t i = 0; i < n; ++i)
    {
        if (std::abs(lambdas_[i] + lambdas_[n - 1 - i]) > tol * big)
            return false;
    }
    if (n % 2 == 1 && std::abs(lambdas_[n / 2]) > tol)
        return false;
    return true;
}

ESD::ESD(std::vector<double> points) : points_(std::move(points))
{
    std::sort(points_.begin(), points_.end());
}

std::size_t ESD::count_le(double x) const
{
    return static_cast<std::size_t>(std::upper_bound(points_.begin(), points_.end(), x) - points_.begin());
}

std::size_t ESD::count_lt(double x) const
{
    return static_cast<std::size_t>(std::lower_bound(points_.begin(), points_.end(), x) - points_.begin());
}

double ESD::operator()(double x) const
{
    if (points_.empty())
        return 0.0;
    return static_cast<double>(count_le(x)) / static_cast<double>(points_.size());
}

//---------------------------------------------------------------------------//
// Skew Householder tridiagonalization
//---------------------------------------------------------------------------//
namespace
{
constexpr std::size_t kPanelWidth = 32;

double dot(double const* a, double const* b, std::size_t begin, std::size_t end)
{
    double s = 0.0;
#pragma omp simd reduction(+ : s)
    for (std::size_t j = begin; j < end; ++j)
        s += a[j] * b[j];
    return s;
}
// p[begin:n] += A[begin:n, begin:n] u for skew A given by its strict lower
// triangle. Two rows per sweep share the loads and stores of p.
void skew_lower_matvec(DenseMatrix const& a, std::size_t begin, double const* u, double* p)
{
    std::size_t const n = a.size();
    std::size_t i = begin;
    for (; i + 1 < n; i += 2)
    {
        double const* r0 = a.row(i).data();
        double const* r1 = a.row(i + 1).data();
        double const u0 = u[i], u1 = u[i + 1];
        double s0 = 0.0, s1 = 0.0;
#pragma omp simd reduction(+ : s0, s1)
        for (std::size_t j = begin; j < i; ++j)
        {
            double const x0 = r0[j], x1 = r1[j];
            s0 += x0 * u[j];
            s1 += x1 * u[j];
            p[j] -= x0 * u0 + x1 * u1;
        }
        s1 += r1[i] * u[i];
        p[i] += s0 - r1[i] * u1;
        p[i + 1] += s1;
    }
    for (; i < n; ++i)
    {
        double const* row = a.row(i).data();
        double const ui = u[i];
        double s = 0.0;
#pragma omp simd reduction(+ : s)
        for (std::size_t j = begin; j < i; ++j)
        {
            s += row[j] * u[j];
            p[j] -= row[j] * ui;
        }
        p[i] += s;
    }
}
}  // namespace

SkewTridiagonalization skew_tridiagonalize(DenseMatrix a, bool accumulate_q)
{
    std::size_t const n = a.size();
    SkewTridiagonalization out;
    out.subdiag.assign(n > 0 ? n - 1 : 0, 0.0);

    std::vector<std::vector<double>> reflectors;
    std::vector<double> taus;

    if (n >= 2)
    {
        std::size_t const nb = kPanelWidth;
        // Column l of the panel's U and P lives at [l * n, (l + 1) * n)
        std::vector<double> U(nb * n), P(nb * n);
        std::vector<double> x(n), u(n), p(n);

        for (std::size_t k0 = 0; k0 + 1 < n; k0 += nb)
        {
            std::size_t const k1 = std::min(k0 + nb, n - 1);
            for (std::size_t k = k0; k < k1; ++k)
            {
                std::size_t const l = k - k0;

                // Current column k below the diagonal, with the panel's
                // pending updates folded in
                for (std::size_t i = k + 1; i < n; ++i)
                    x[i] = a(i, k);
                for (std::size_t lp = 0; lp < l; ++lp)
                {
                    double const* ul = &U[lp * n];
                    double const* pl = &P[lp * n];
                    double const pk = pl[k], uk = ul[k];
                    for (std::size_t i = k + 1; i < n; ++i)
                        x[i] += ul[i] * pk - pl[i] * uk;
                }

                double const alpha = x[k + 1];
                double const xnorm = std::sqrt(dot(x.data(), x.data(), k + 2, n));
                double tau = 0.0;
                double beta = alpha;
                double* ucol = &U[l * n];
                double* pcol = &P[l * n];
                std::fill(ucol, ucol + n, 0.0);
                std::fill(pcol, pcol + n, 0.0);
                if (xnorm != 0.0)
                {
                    beta = -std::copysign(std::hypot(alpha, xnorm), alpha);
                    tau = (beta - alpha) / beta;
                    double const scal = 1.0 / (alpha - beta);
                    u[k + 1] = 1.0;
                    for (std::size_t i = k + 2; i < n; ++i)
                        u[i] = x[i] * scal;
                }
                out.subdiag[k] = beta;
                if (accumulate_q)
                {
                    std::vector<double> full(n, 0.0);
                    if (tau != 0.0)
                        std::copy(u.begin() + static_cast<std::ptrdiff_t>(k + 1), u.end(),
                                  full.begin() + static_cast<std::ptrdiff_t>(k + 1));
                    reflectors.push_back(std::move(full));
                    taus.push_back(tau);
                }
                if (tau == 0.0)
                    continue;

                // p = A22 u over the stale lower triangle
                std::fill(p.begin() + static_cast<std::ptrdiff_t>(k + 1), p.end(), 0.0);
                double* pp = p.data();
                double const* uu = u.data();
                skew_lower_matvec(a, k + 1, uu, pp);
                // (u_l p_l^T - p_l u_l^T) u for the pending reflectors
                for (std::size_t lp = 0; lp < l; ++lp)
                {
                    double const* ul = &U[lp * n];
                    double const* pl = &P[lp * n];
                    double const pu = dot(pl, uu, k + 1, n);
                    double const uu_l = dot(ul, uu, k + 1, n);
#pragma omp simd
                    for (std::size_t i = k + 1; i < n; ++i)
                        pp[i] += ul[i] * pu - pl[i] * uu_l;
                }
                for (std::size_t i = k + 1; i < n; ++i)
                {
                    ucol[i] = uu[i];
                    pcol[i] = tau * pp[i];
                }
            }

            // Apply the panel's rank-2 updates to the trailing lower triangle
            std::size_t const nl = k1 - k0;
            for (std::size_t i = k1 + 1; i < n; ++i)
            {
                double* row = a.row(i).data();
                std::size_t l = 0;
                for (; l + 1 < nl; l += 2)
                {
                    double const* u0 = &U[l * n];
                    double const* p0 = &P[l * n];
                    double const* u1 = u0 + n;
                    double const* p1 = p0 + n;
                    double const a0 = u0[i], b0 = p0[i], a1 = u1[i], b1 = p1[i];
#pragma omp simd
                    for (std::size_t j = k1; j < i; ++j)
                        row[j] += (a0 * p0[j] - b0 * u0[j]) + (a1 * p1[j] - b1 * u1[j]);
                }
                for (; l < nl; ++l)
                {
                    double const* ul = &U[l * n];
                    double const* pl = &P[l * n];
                    double const ui = ul[i], pi = pl[i];
#pragma omp simd
                    for (std::size_t j = k1; j < i; ++j)
                        row[j] += ui * pl[j] - pi * ul[j];
                }
            }
        }
    }

    if (accumulate_q)
    {
        DenseMatrix q(n);
        for (std::size_t i = 0; i < n; ++i)
            q(i, i) = 1.0;
        // Q = H_0 H_1 ... H_{n-2}, applied right to left
        std::vector<double> w(n);
        for (std::size_t idx = reflectors.size(); idx-- > 0;)
        {
            double const tau = taus[idx];
            if (tau == 0.0)
                continue;
            auto const& v = reflectors[idx];
            std::fill(w.begin(), w.end(), 0.0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    w[j] += v[i] * q(i, j);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    q(i, j) -= tau * v[i] * w[j];
        }
        out.q = std::move(q);
    }
    return out;
}

SymTridiagonal hermitian_tridiagonal(SkewTridiagonalization const& red)
{
    SymTridiagonal t;
    t.diag.assign(red.subdiag.size() + 1, 0.0);
    t.offdiag.resize(red.subdiag.size());
    for (std::size_t k = 0; k < red.subdiag.size(); ++k)
        t.offdiag[k] = std::abs(red.subdiag[k]);
    return t;
}

double skew_defect(DenseMatrix const& m)
{
    std::size_t const n = m.size();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            worst = std::max(worst, std::abs(m(i, j) + m(j, i)));
    return worst;
}

Spectrum eig_skew(DenseMatrix const& m, TridiagonalMethod method)
{
    if (skew_defect(m) > 1e-12)
        throw NotSkewSymmetric("matrix is not skew-symmetric within 1e-12");
    if (m.size() == 0)
        return Spectrum{};
    auto const red = skew_tridiagonalize(m);
    return Spectrum(tridiagonal_eigenvalues(hermitian_tridiagonal(red), method));
}

Spectrum y_spectrum_closed_form(std::size_t n)
{
    std::vector<double> v(n);
    double const dn = static_cast<double>(n);
    for (std::size_t i = 1; i <= n; ++i)
    {
        double const theta = std::numbers::pi * static_cast<double>(2 * i - 1) / (2.0 * dn);
        v[i - 1] = std::cos(theta) / std::sin(theta);
    }
    return Spectrum(std::move(v));
}

ESD esd(Spectrum const& spec, double scale)
{
    if (!(scale > 0.0))
        throw InvalidParams("ESD scale must be positive");
    std::vector<double> pts(spec.ascending().begin(), spec.ascending().end());
    for (double& x : pts)
        x /= scale;
    return ESD(std::move(pts));
}

double spectral_radius(Spectrum const& spec)
{
    if (spec.empty())
        throw InvalidParams("spectral radius of an empty spectrum");
    return std::max(std::abs(spec.ascending().front()), std::abs(spec.ascending().back()));
}

//---------------------------------------------------------------------------//
// Weyl sandwich
//---------------------------------------------------------------------------//
double weyl_shift_cot(std::size_t i, std::size_t n, double q)
{
    double const dn = static_cast<double>(n);
    double const num = (q >= 0.5) ? static_cast<double>(2 * i - 1) : static_cast<double>(2 * n - 2 * i + 1);
    double const theta = std::numbers::pi * num / (2.0 * dn);
    return std::cos(theta) / std::sin(theta);
}

WeylReport weyl_bounds(Spectrum const& spec, NormalizationContext const& ctx, std::size_t n,
                       double epsilon, WeylForm form)
{
    if (spec.size() != n)
        throw InvalidParams("spectrum length differs from n");
    if (!(epsilon >= 0.0))
        throw InvalidParams("epsilon must be non-negative");

    double const scale = ctx.r() * std::sqrt(static_cast<double>(n));
    double const slope = ctx.p() * (2.0 * ctx.q() - 1.0);

    WeylReport report;
    report.epsilon = epsilon;
    report.form = form;
    report.indices.reserve(n);
    for (std::size_t i = 1; i <= n; ++i)
    {
        double const shift = slope == 0.0 ? 0.0 : slope * weyl_shift_cot(i, n, ctx.q());
        WeylIndexResult res{};
        if (form == WeylForm::weyl)
        {
            res.lower = scale * (-2.0 - epsilon) + shift;
            res.upper = scale * (2.0 + epsilon) + shift;
        }
        else
        {
            res.lower = scale * (-2.0 + shift - epsilon);
            res.upper = scale * (2.0 + shift + epsilon);
        }
        res.value = spec.descending(i - 1);
        res.pass = res.lower <= res.value && res.value <= res.upper;
        if (!res.pass)
            ++report.violations;
        report.indices.push_back(res);
    }
    return report;
}

void write_spectrum_csv(std::ostream& os, Spectrum const& spec)
{
    os << "index,lambda\n";
    for (std::size_t i = 0; i < spec.size(); ++i)
        os << (i + 1) << ',' << format_double(spec[i]) << '\n';
}

}  // namespace skewspec
