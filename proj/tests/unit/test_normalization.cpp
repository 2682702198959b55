#include <cmath>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "doctest.h"
#include "skewspec/errors.hpp"
#include "skewspec/normalization.hpp"

using namespace skewspec;
using Big = boost::multiprecision::cpp_bin_float_50;

namespace
{
// r^2 straight from the defining display, in 50-digit arithmetic
Big big_r2(double p_in, double q_in)
{
    Big const p(p_in), q(q_in);
    Big const c = p * (1 - 2 * q);
    return (1 + c) * (1 + c) * p * q + (1 - c) * (1 - c) * p * (1 - q);
}

double grid(int i, int steps) { return static_cast<double>(i) / steps; }
}  // namespace

TEST_CASE("context examples")
{
    auto const a = compute_context(0.1, 0.5);
    CHECK(a.c() == 0.0);
    CHECK(a.r() == doctest::Approx(std::sqrt(0.1)).epsilon(1e-15));
    CHECK(a.r() == doctest::Approx(0.3162277660).epsilon(1e-10));

    auto const b = compute_context(0.5, 0.0);
    CHECK(b.c() == 0.5);
    CHECK(b.r() == doctest::Approx(0.3535533906).epsilon(1e-10));
    CHECK(b.r_squared() == doctest::Approx(0.125).epsilon(1e-15));

    CHECK_THROWS_AS(compute_context(1.0, 1.0), DegenerateNormalization);
    CHECK_THROWS_AS(compute_context(1.0, 0.0), DegenerateNormalization);
    CHECK_THROWS_AS(compute_context(0.0, 0.3), DegenerateNormalization);
    CHECK_THROWS_AS(compute_context(1.5, 0.3), InvalidParams);
    CHECK_THROWS_AS(compute_context(0.5, -0.1), InvalidParams);
}

TEST_CASE("r^2 against 50-digit evaluation")
{
    for (int i = 1; i <= 20; ++i)
    {
        for (int j = 0; j <= 20; ++j)
        {
            double const p = grid(i, 20), q = grid(j, 20);
            Big const exact = big_r2(p, q);
            if (exact == 0)
            {
                CHECK_THROWS_AS(compute_context(p, q), DegenerateNormalization);
                continue;
            }
            auto const ctx = compute_context(p, q);
            double const rel = static_cast<double>(abs((Big(ctx.r_squared()) - exact) / exact));
            CHECK_MESSAGE(rel <= 1e-12, "p=" << p << " q=" << q);
        }
    }
}

TEST_CASE("r(p, 1/2) = sqrt(p) and r symmetric in q")
{
    for (int i = 1; i <= 100; ++i)
    {
        double const p = grid(i, 100);
        CHECK(std::abs(compute_context(p, 0.5).r() - std::sqrt(p)) <= 1e-14);
        for (int j = 0; j <= 20; ++j)
        {
            double const q = grid(j, 20);
            if (p == 1.0 && (j == 0 || j == 20))
                continue;
            auto const a = compute_context(p, q);
            auto const b = compute_context(p, 1.0 - q);
            CHECK(std::abs(a.r() - b.r()) <= 1e-14);
            CHECK(std::abs(a.c() + b.c()) <= 1e-15);
        }
    }
}

TEST_CASE("shift matrix")
{
    ShiftMatrix const y(4);
    auto const m = y.materialize();
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(m(i, j) == y(i, j));
    CHECK(m(0, 3) == 1.0);
    CHECK(m(3, 0) == -1.0);
    CHECK(m(2, 2) == 0.0);
}

TEST_CASE("shifted skew matrix examples")
{
    SkewMatrix s(3);
    s.set_pair(0, 1, 1);
    s.set_pair(2, 1, 1);
    auto const m = shifted_skew_matrix(s, compute_context(0.3, 0.5));
    CHECK(m == to_dense(s));

    // S = 0, n = 2, c = 0.25: p(1 - 2q) = 0.25 at p = 0.5, q = 0.25
    auto const pure = shifted_skew_matrix(SkewMatrix(2), compute_context(0.5, 0.25));
    CHECK(pure(0, 1) == 0.25);
    CHECK(pure(1, 0) == -0.25);
    CHECK(pure(0, 0) == 0.0);

    // S = Y_3 with c = -0.5 (p = 0.5, q = 1)
    SkewMatrix y3(3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j)
            y3.set_pair(i, j, 1);
    auto const half = shifted_skew_matrix(y3, compute_context(0.5, 1.0));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j)
            CHECK(half(i, j) == 0.5);
}

TEST_CASE("property: shifted matrix is exactly skew-symmetric")
{
    std::uint64_t state = 12345;
    auto next = [&] {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return state >> 33;
    };
    for (int trial = 0; trial < 50; ++trial)
    {
        std::size_t const n = 1 + next() % 20;
        SkewMatrix s(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                s.set_pair(i, j, static_cast<std::int8_t>(static_cast<int>(next() % 3) - 1));
        double const p = 0.05 + 0.9 * (next() % 1000) / 1000.0;
        double const q = (next() % 1001) / 1000.0;
        auto const m = shifted_skew_matrix(s, compute_context(p, q));
        for (std::size_t i = 0; i < n; ++i)
        {
            CHECK(m(i, i) == 0.0);
            for (std::size_t j = 0; j < n; ++j)
                REQUIRE(m(i, j) == -m(j, i));
        }
    }
}

TEST_CASE("entry distribution")
{
    auto const d = entry_distribution(compute_context(0.1, 0.5));
    double const r = std::sqrt(0.1);
    CHECK(d.support[0].real() == 0.0);
    CHECK(d.support[0].imag() == doctest::Approx(-1.0 / r).epsilon(1e-15));
    CHECK(d.support[1].imag() == doctest::Approx(1.0 / r).epsilon(1e-15));
    CHECK(d.support[2] == std::complex<double>(0.0, 0.0));
    CHECK(d.probability[0] == doctest::Approx(0.05));
    CHECK(d.probability[1] == doctest::Approx(0.05));
    CHECK(d.probability[2] == doctest::Approx(0.9));
    CHECK(std::abs(d.mean()) <= 1e-14);
    CHECK(d.second_abs_moment() == doctest::Approx(1.0).epsilon(1e-14));

    auto const e = entry_distribution(compute_context(0.5, 0.3));
    CHECK(e.second_abs_moment() == doctest::Approx(1.0 + 0.04 * 0.5 / 0.44).epsilon(1e-13));
    CHECK(e.second_abs_moment() == doctest::Approx(1.0454545454545454).epsilon(1e-13));
}

TEST_CASE("property: entry mean vanishes and E|x|^2 matches the closed form")
{
    for (int i = 1; i <= 20; ++i)
    {
        for (int j = 0; j < 20; ++j)
        {
            double const p = grid(i, 20), q = grid(j, 19);
            if (big_r2(p, q) == 0)
                continue;
            auto const ctx = compute_context(p, q);
            auto const d = entry_distribution(ctx);
            CHECK(std::abs(d.mean()) <= 1e-14 * std::max(1.0, 1.0 / ctx.r()));

            Big const c = Big(p) * (1 - 2 * Big(q));
            Big const r2 = big_r2(p, q);
            double const expect = static_cast<double>(1 + c * c * (1 - Big(p)) / r2);
            CHECK(d.second_abs_moment() == doctest::Approx(expect).epsilon(1e-12));
        }
    }
}
