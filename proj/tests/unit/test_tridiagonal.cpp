#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "skewspec/tridiagonal.hpp"

using namespace skewspec;

namespace
{
// 1-D Laplacian tridiag(-1, 2, -1): eigenvalues 2 - 2cos(k pi / (n + 1))
SymTridiagonal laplacian(std::size_t n)
{
    return {std::vector<double>(n, 2.0), std::vector<double>(n > 0 ? n - 1 : 0, -1.0)};
}

std::vector<double> laplacian_eigs(std::size_t n)
{
    std::vector<double> out;
    for (std::size_t k = 1; k <= n; ++k)
        out.push_back(2.0 - 2.0 * std::cos(k * std::numbers::pi / (n + 1)));
    std::sort(out.begin(), out.end());
    return out;
}

void check_close(std::vector<double> a, std::vector<double> b, double tol)
{
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK_MESSAGE(std::abs(a[i] - b[i]) <= tol, "index " << i << ": " << a[i] << " vs " << b[i]);
}
}  // namespace

TEST_CASE("trivial sizes")
{
    CHECK(tridiagonal_eigenvalues({}).empty());
    CHECK(tridiagonal_eigenvalues({{3.5}, {}}) == std::vector<double>{3.5});
    check_close(tridiagonal_eigenvalues({{0.0, 0.0}, {1.0}}), {-1.0, 1.0}, 0.0);
    check_close(eigenvalues_bisection({{0.0, 0.0}, {1.0}}), {-1.0, 1.0}, 1e-15);
}

TEST_CASE("2x2 blocks in closed form")
{
    // [[a, b], [b, c]] has eigenvalues (a + c)/2 +- sqrt(((a - c)/2)^2 + b^2)
    double const cases[][3] = {{2.0, 1.0, 2.0}, {1e-8, 1.0, -3.0}, {5.0, 1e-9, 5.0}, {-4.0, 2.0, 1.0}};
    for (auto const& k : cases)
    {
        double const mid = 0.5 * (k[0] + k[2]);
        double const rad = std::hypot(0.5 * (k[0] - k[2]), k[1]);
        check_close(tridiagonal_eigenvalues({{k[0], k[2]}, {k[1]}}), {mid - rad, mid + rad}, 1e-15 * (1 + rad));
    }
    check_close(tridiagonal_eigenvalues({{3.0, 3.0}, {4.0}}), {-1.0, 7.0}, 0.0);
}

TEST_CASE("laplacian closed form")
{
    for (std::size_t n : {3u, 10u, 100u, 500u})
    {
        auto const t = laplacian(n);
        check_close(tridiagonal_eigenvalues(t, TridiagonalMethod::implicit_ql), laplacian_eigs(n), 1e-12);
        check_close(tridiagonal_eigenvalues(t, TridiagonalMethod::bisection), laplacian_eigs(n), 1e-12);
    }
}

TEST_CASE("sturm count")
{
    auto const t = laplacian(20);
    auto const eig = laplacian_eigs(20);
    CHECK(sturm_count(t, -1.0) == 0);
    CHECK(sturm_count(t, 5.0) == 20);
    for (std::size_t k = 0; k + 1 < eig.size(); ++k)
        CHECK(sturm_count(t, 0.5 * (eig[k] + eig[k + 1])) == k + 1);
}

TEST_CASE("decoupled blocks and zero off-diagonals")
{
    SymTridiagonal t{{1.0, 2.0, 3.0, 4.0}, {0.0, 0.0, 0.0}};
    check_close(tridiagonal_eigenvalues(t), {1.0, 2.0, 3.0, 4.0}, 0.0);
    SymTridiagonal z{std::vector<double>(7, 0.0), std::vector<double>(6, 0.0)};
    check_close(tridiagonal_eigenvalues(z), std::vector<double>(7, 0.0), 0.0);
}

TEST_CASE("property: QL and bisection agree on random tridiagonals")
{
    std::mt19937_64 rng(77);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 60; ++trial)
    {
        std::size_t const n = 1 + rng() % 120;
        SymTridiagonal t;
        bool const zero_diag = trial % 2 == 0;
        for (std::size_t i = 0; i < n; ++i)
            t.diag.push_back(zero_diag ? 0.0 : normal(rng));
        for (std::size_t i = 0; i + 1 < n; ++i)
            t.offdiag.push_back(trial % 5 == 0 && i % 7 == 3 ? 0.0 : normal(rng));
        auto const ql = eigenvalues_implicit_ql(t);
        REQUIRE(ql.has_value());
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            norm = std::max(norm, std::abs(t.diag[i]) + (i > 0 ? std::abs(t.offdiag[i - 1]) : 0.0)
                                      + (i + 1 < n ? std::abs(t.offdiag[i]) : 0.0));
        check_close(*ql, eigenvalues_bisection(t), 1e-12 * std::max(1.0, norm) * n);

        double trace = 0.0, sum = 0.0;
        for (double d : t.diag)
            trace += d;
        for (double l : *ql)
            sum += l;
        CHECK(std::abs(trace - sum) <= 1e-11 * std::max(1.0, norm) * n);
    }
}
